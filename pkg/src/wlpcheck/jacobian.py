"""Jacobian ideals of hypersurfaces: smoothness and the degree-d Lefschetz map.

A hypersurface f = 0 in P^n is smooth exactly when its n+1 partial
derivatives form a regular sequence, i.e. R/J(f) is an Artinian complete
intersection.  That is certified with the same Hilbert-function comparison
used for any complete intersection.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .bundle_bounds import IntRange, jacobian_range, jacobian_threshold, registry_entries
from .exactfield import QQ
from .lefschetz import (
    ESCALATION_COLUMNS,
    QuotientAlgebra,
    WlpVerdict,
    certify_complete_intersection,
    wlp_in_degree,
    DEFAULT_TRIALS,
)
from .polyring import CiSpec, GradedForm, count_monomials, render

# The claimed coverage for hypersurfaces in P^4 starts at this degree.
ABSTRACT_CLAIM_AMBIENT = 4
ABSTRACT_CLAIM_DEGREE = 7


def jacobian_ideal(f: GradedForm, seed: int | None = None) -> CiSpec:
    if f.degree < 2:
        raise ValueError("need a form of degree at least 2")
    return CiSpec.from_forms([f.derivative(i) for i in range(f.num_vars)], seed=seed)


@dataclass
class SmoothnessResult:
    smooth: bool
    hilbert: tuple
    field: str
    note: str = ""


def certify_smooth(f: GradedForm, algebra: QuotientAlgebra | None = None) -> SmoothnessResult:
    """True when R/J(f) is certified Artinian; over GF(p) this certifies smoothness over QQ too."""
    spec = jacobian_ideal(f)
    if f.field.is_prime and f.degree % f.field.p == 0:
        return SmoothnessResult(False, (), f.field.name, "the characteristic divides the degree")
    alg = algebra or QuotientAlgebra(spec)
    cert = certify_complete_intersection(spec, alg)
    if cert.certified:
        return SmoothnessResult(True, cert.linear_algebra, f.field.name)
    note = cert.reason or "Jacobian ideal is not Artinian"
    if f.field.is_prime:
        e = sum(d - 1 for d in spec.degrees)
        if count_monomials(spec.num_vars, e + 1) <= ESCALATION_COLUMNS:
            qcert = certify_complete_intersection(spec.over(QQ), QuotientAlgebra(spec.over(QQ), use_tower=False))
            if qcert.certified:
                return SmoothnessResult(True, qcert.linear_algebra, "QQ", "failure mod p was a reduction artifact")
            note += "; confirmed over QQ"
        else:
            note += " mod p (not rechecked over QQ)"
    return SmoothnessResult(False, cert.linear_algebra, f.field.name, note)


@dataclass
class JacobianReport:
    form: str
    num_vars: int
    degree: int
    ambient_dim: int
    smooth: SmoothnessResult
    wlp_guaranteed_range: IntRange
    degree_d_guaranteed: bool
    verdict: WlpVerdict | None
    maximal_variation: bool
    abstract_claim_covered: bool
    substituted_threshold: int
    registry: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "kind": "jacobian",
            "form": self.form,
            "num_vars": self.num_vars,
            "degree": self.degree,
            "ambient_dim": self.ambient_dim,
            "smooth": self.smooth.smooth,
            "smooth_certified": self.smooth.smooth,
            "smooth_note": self.smooth.note,
            "hilbert": list(self.smooth.hilbert[:-1]) if self.smooth.smooth else list(self.smooth.hilbert),
            "wlp_guaranteed_range": self.wlp_guaranteed_range.to_dict(),
            "degree_d_guaranteed": self.degree_d_guaranteed,
            "beauville_degree_d": self.verdict.to_dict() if self.verdict else None,
            "maximal_variation": self.maximal_variation,
            "abstract_claim_covered": self.abstract_claim_covered,
            "abstract_claim_threshold": ABSTRACT_CLAIM_DEGREE if self.ambient_dim == ABSTRACT_CLAIM_AMBIENT else None,
            "substituted_threshold": self.substituted_threshold,
            "registry": self.registry,
        }


def beauville_check(f: GradedForm, trials: int = DEFAULT_TRIALS, seed: int | None = None) -> JacobianReport:
    """Smoothness, the guaranteed range for J(f), and the empirical verdict in degree d.

    WLP of R/J(f) in degree d (the map from degree d-1 to d) is what makes the
    infinitesimal variation of Hodge structure injective.
    """
    n = f.num_vars - 1
    d = f.degree
    spec = jacobian_ideal(f, seed=seed)
    alg = QuotientAlgebra(spec)
    smooth = certify_smooth(f, alg)
    guaranteed = jacobian_range(n, d)
    verdict = wlp_in_degree(alg, d, trials) if smooth.smooth else None
    return JacobianReport(
        form=render(f), num_vars=f.num_vars, degree=d, ambient_dim=n, smooth=smooth,
        wlp_guaranteed_range=guaranteed, degree_d_guaranteed=d in guaranteed, verdict=verdict,
        maximal_variation=smooth.smooth and n - 1 >= 2 and d >= n + 2,
        abstract_claim_covered=smooth.smooth and n == ABSTRACT_CLAIM_AMBIENT and d >= ABSTRACT_CLAIM_DEGREE,
        substituted_threshold=jacobian_threshold(n),
        registry=registry_entries("jacobian", n, d),
    )

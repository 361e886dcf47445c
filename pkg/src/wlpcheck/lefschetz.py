"""Hilbert functions and weak Lefschetz verdicts for Artinian quotients A = R/I.

Two independent Hilbert-function routes:

* linear algebra: h_t = dim R_t - rank of the degree-t Macaulay matrix, with
  high degrees handled by `_LinearFormTower` below;
* the closed product formula prod (1 - q^{d_i}) / (1 - q)^N for N forms.

Weak Lefschetz verdicts are computed over GF(p).  Since reduction mod p can
only lower ranks of integer matrices, maximal rank mod p certifies maximal
rank over QQ.  A deficiency mod p is only a suspicion until it has been
recomputed exactly over QQ.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactfield import QQ
from .graded_linalg import (
    mul_map,
    mul_map_matrix,
    ops_for,
    quotient_basis,
    macaulay_piece,
    rref_exact,
    variable_matrix,
)
from .polyring import CiSpec, count_monomials
from .seeding import TAG_LINEAR_FORM, TAG_TOWER, derive_seed

log = logging.getLogger(__name__)

CERTIFIED = "certified-holds"
SUSPECTED = "suspected-failure"
CERTIFIED_FAILURE = "certified-failure-over-rationals"

DEFAULT_TRIALS = 5
ESCALATION_LIMIT = 200
# Exact rational Macaulay matrices wider than this are not attempted.
ESCALATION_COLUMNS = 600
# Grid points allowed when confirming a rank drop for the generic linear form.
GENERIC_GRID_BUDGET = 4096


class NotArtinianError(ValueError):
    def __init__(self, values, degree, stationary=False):
        self.values = tuple(values)
        self.degree = degree
        self.stationary = stationary
        if stationary:
            msg = f"not Artinian: Hilbert function is constant {values[-1]} from degree {degree} on"
        else:
            msg = f"not Artinian up to degree {degree}"
        super().__init__(msg)


@dataclass(frozen=True)
class HilbertFunction:
    """h_0, ..., h_e followed by the terminating 0."""

    values: tuple

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 2

    @property
    def nonzero(self) -> tuple:
        return self.values[:-1]

    def __getitem__(self, t: int) -> int:
        if t < 0:
            return 0
        return self.values[t] if t < len(self.values) else 0

    def is_symmetric(self) -> bool:
        h = self.nonzero
        return h == h[::-1]


def default_cap(spec: CiSpec) -> int:
    if spec.is_square:
        return sum(d - 1 for d in spec.degrees) + 1
    return 2 * max(spec.degrees) * spec.num_vars


def hilbert_by_product_formula(degrees, num_vars: int) -> HilbertFunction:
    """Coefficients of prod_i (1 + q + ... + q^{d_i - 1}); needs one form per variable."""
    degrees = [int(d) for d in degrees]
    if len(degrees) != num_vars:
        raise ValueError(f"product formula needs {num_vars} degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    poly = [1]
    for d in degrees:
        out = [0] * (len(poly) + d - 1)
        for i, c in enumerate(poly):
            for j in range(d):
                out[i + j] += c
        poly = out
    return HilbertFunction(tuple(poly) + (0,))


def all_ones(num_vars):
    return (1,) * num_vars


def trial_form(spec: CiSpec, degree: int, trial: int):
    """Trial 0 is x0 + ... + x_{N-1}; later trials are seeded random forms."""
    if trial == 0:
        return all_ones(spec.num_vars)
    rng = np.random.default_rng(derive_seed(spec.seed or 0, TAG_LINEAR_FORM, degree, trial))
    if spec.field.is_prime:
        return tuple(int(x) for x in rng.integers(0, spec.field.p, size=spec.num_vars, dtype=np.uint64))
    return tuple(int(x) for x in rng.integers(-100, 101, size=spec.num_vars))


class _LinearFormTower:
    """Hilbert function above a degree where a linear form is surjective.

    If ell: A_tau -> A_{tau+1} is onto, it is onto in every higher degree,
    so A_s = A_tau / N_s for s >= tau via a -> ell^{s-tau} a.  With
    tau + 1 >= max generator degree, A_s is generated by A_{s-1} modulo
    only the Koszul relations, which gives

        N_{tau+2} = N_{tau+1} + sum_j T_j N_{tau+1} + sum_{j<k} [T_j, T_k] A_tau
        N_s       = N_{s-1} + sum_j T_j N_{s-1}              (s > tau + 2)

    where N_{tau+1} = ker ell and T_j solves ell * T_j(a) = x_j * a in A_{tau+1}
    for the variables x_j other than one replaced by ell.  All work happens
    in A_tau, which is far smaller than the Macaulay matrices of high degree.
    """

    def __init__(self, source, target, ell, ops):
        self.ops = ops
        self.h0 = source.dim
        self.h1 = target.dim
        ell = [ops.field.reduce(c) for c in ell]
        nv = source.num_vars
        mats = [variable_matrix(source, target, k) for k in range(nv)]
        M = mul_map_matrix(source, target, ell)
        aug = np.hstack([M, ops.eye(self.h1)])
        E, piv = ops.rref(aug)
        self.surjective = len(piv) == self.h1 and (len(piv) == 0 or piv[-1] < self.h0)
        if not self.surjective:
            return
        h0, h1 = self.h0, self.h1
        G = E[:, h0:]
        J = piv
        jstar = next(k for k, c in enumerate(ell) if not ops.field.is_zero(c))
        self.T = []
        for k in range(nv):
            if k == jstar:
                continue
            Tk = ops.zeros((h0, h0))
            if h1:
                Tk[J] = ops.matmul(G, mats[k])
            self.T.append(Tk)
        mask = np.ones(h0, dtype=bool)
        mask[J] = False
        Q = np.flatnonzero(mask)
        V = ops.zeros((len(Q), h0))
        if len(Q):
            V[np.arange(len(Q)), Q] = ops.eye(1)[0, 0]
            if h1:
                V[:, J] = ops.neg(E[:, Q].T)
        self.N, self.NP = ops.rref(V)
        self.J = J

    def _images(self, rows):
        ops = self.ops
        return [ops.matmul(rows, np.ascontiguousarray(Tk.T)) for Tk in self.T]

    def _commutator_rows(self):
        ops = self.ops
        J = self.J
        out = []
        for a, b in itertools.combinations(range(len(self.T)), 2):
            Ta, Tb = self.T[a], self.T[b]
            C = ops.sub(ops.matmul(Ta[:, J], Tb[J]), ops.matmul(Tb[:, J], Ta[J]))
            out.append(np.ascontiguousarray(C.T))
        return out

    def run(self, first_degree: int, cap: int):
        """Values h_s for s = first_degree (= tau + 1), ... until 0, stationarity or cap."""
        ops = self.ops
        values = [self.h0 - len(self.NP)]
        if values[0] != self.h1:
            raise AssertionError("tower kernel does not match the target dimension")
        if values[0] == 0:
            return values, "artinian"
        N, NP = self.N, self.NP
        delta = N
        s = first_degree + 1
        first = True
        while s <= cap:
            cands = self._images(delta) if len(delta) else []
            if first:
                cands += self._commutator_rows()
            if cands:
                X = np.vstack(cands)
                X = ops.reduce_against(X, N, NP)
                X = X[np.any(X != 0, axis=1)] if X.dtype != object else X[[any(v != 0 for v in r) for r in X]]
                D, DP = ops.rref(X)
            else:
                D, DP = ops.zeros((0, self.h0)), np.zeros(0, dtype=np.int64)
            N, NP = ops.merge(N, NP, D, DP)
            values.append(self.h0 - len(NP))
            if values[-1] == 0:
                return values, "artinian"
            if len(DP) == 0:
                return values, "stationary"
            delta = D
            first = False
            s += 1
        return values, "cap"


class QuotientAlgebra:
    """A = R/I for the generators of `spec`, with per-degree caches."""

    def __init__(self, spec: CiSpec, use_tower: bool = True):
        self.spec = spec
        self.field = spec.field
        self.ops = ops_for(spec.field)
        self.use_tower = use_tower
        self._bases = {}
        self._hilbert = None
        self.tower_degree = None

    def basis(self, t: int):
        b = self._bases.get(t)
        if b is None:
            b = quotient_basis(macaulay_piece(self.spec, t, self.ops))
            self._bases[t] = b
        return b

    def dim(self, t: int) -> int:
        if self._hilbert is not None and t < len(self._hilbert[0]):
            return self._hilbert[0][t]
        return self.basis(t).dim

    def _tower_forms(self, tau):
        yield all_ones(self.spec.num_vars)
        rng = np.random.default_rng(derive_seed(self.spec.seed or 0, TAG_TOWER, tau))
        if self.field.is_prime:
            yield tuple(int(x) for x in rng.integers(1, self.field.p, size=self.spec.num_vars, dtype=np.uint64))

    def hilbert_values(self, cap: int):
        """(values h_0.., outcome) with outcome in {'artinian', 'stationary', 'cap'}."""
        if self._hilbert is not None and (self._hilbert[1] != "cap" or self._hilbert[2] >= cap):
            vals, outcome, _ = self._hilbert
            if outcome == "cap":
                vals = vals[:cap + 1]
            return list(vals), outcome
        maxdeg = max(self.spec.degrees)
        values = []
        outcome = "cap"
        t = 0
        while t <= cap:
            h = self.basis(t).dim
            values.append(h)
            if h == 0:
                outcome = "artinian"
                break
            if (self.use_tower and t >= 1 and t - 1 >= maxdeg - 1 and h <= values[t - 1]):
                done = False
                for ell in self._tower_forms(t - 1):
                    tower = _LinearFormTower(self.basis(t - 1), self.basis(t), ell, self.ops)
                    if tower.surjective:
                        more, outcome = tower.run(t, cap)
                        values = values[:t] + more
                        self.tower_degree = t - 1
                        log.debug("tower from degree %d with %s", t - 1, ell)
                        done = True
                        break
                if done:
                    break
            t += 1
        self._hilbert = (tuple(values), outcome, cap)
        return values, outcome

    def hilbert(self, cap: int | None = None) -> HilbertFunction:
        cap = default_cap(self.spec) if cap is None else cap
        values, outcome = self.hilbert_values(cap)
        if outcome == "artinian":
            return HilbertFunction(tuple(values))
        if outcome == "stationary":
            raise NotArtinianError(values, len(values) - 1, stationary=True)
        raise NotArtinianError(values, cap)

    def wlp_in_degree(self, t: int, trials: int = DEFAULT_TRIALS, escalate: bool = True,
                      escalation_limit: int = ESCALATION_LIMIT) -> WlpVerdict:
        return wlp_in_degree(self, t, trials, escalate, escalation_limit)


def hilbert_by_linear_algebra(spec: CiSpec, cap: int | None = None, algebra: QuotientAlgebra | None = None) -> HilbertFunction:
    return (algebra or QuotientAlgebra(spec)).hilbert(cap)


@dataclass
class CiCertificate:
    certified: bool
    linear_algebra: tuple
    product_formula: tuple | None
    reason: str = ""


def certify_complete_intersection(spec: CiSpec, algebra: QuotientAlgebra | None = None) -> CiCertificate:
    """True iff the linear-algebra Hilbert function equals the product formula through degree e+1.

    Over any field h_t(R/I) is at least the product-formula value, with
    equality through e + 1 exactly when the forms are a regular sequence.
    """
    if not spec.is_square:
        return CiCertificate(False, (), None, "number of forms differs from number of variables")
    if any(g.is_zero() for g in spec.generators):
        return CiCertificate(False, (), None, "a generator is zero")
    expected = hilbert_by_product_formula(spec.degrees, spec.num_vars)
    e = expected.socle_degree
    alg = algebra or QuotientAlgebra(spec)
    values, _ = alg.hilbert_values(e + 1)
    got = tuple(values[:e + 2])
    ok = got == expected.values
    reason = "" if ok else "Hilbert function differs from the product formula"
    return CiCertificate(ok, got, expected.values, reason)


@dataclass
class WlpVerdict:
    degree: int
    dim_source: int
    dim_target: int
    rank: int
    maximal: bool
    status: str
    ell: tuple
    trials_used: int
    field: str
    note: str = ""

    def to_dict(self):
        return {
            "degree": self.degree,
            "dim_source": self.dim_source,
            "dim_target": self.dim_target,
            "rank": self.rank,
            "maximal": self.maximal,
            "status": self.status,
            "ell": [str(c) for c in self.ell],
            "trials_used": self.trials_used,
            "field": self.field,
            "note": self.note,
        }


def _as_algebra(obj) -> QuotientAlgebra:
    return obj if isinstance(obj, QuotientAlgebra) else QuotientAlgebra(obj)


def wlp_in_degree(obj, t: int, trials: int = DEFAULT_TRIALS, escalate: bool = True,
                  escalation_limit: int = ESCALATION_LIMIT) -> WlpVerdict:
    """Does x ell: A_{t-1} -> A_t have maximal rank for a general linear form ell?"""
    alg = _as_algebra(obj)
    if t < 1:
        raise ValueError("degree must be at least 1")
    if trials < 1:
        raise ValueError("need at least one trial")
    spec = alg.spec
    src, tgt = alg.basis(t - 1), alg.basis(t)
    target_rank = min(src.dim, tgt.dim)
    if target_rank == 0:
        return WlpVerdict(t, src.dim, tgt.dim, 0, True, CERTIFIED, all_ones(spec.num_vars), 0, alg.field.name,
                          "zero map between a zero space and its neighbour")
    best = None
    for j in range(trials):
        ell = trial_form(spec, t, j)
        mm = mul_map(src, tgt, ell)
        if best is None or mm.rank > best[0]:
            best = (mm.rank, ell)
        if mm.maximal:
            return WlpVerdict(t, src.dim, tgt.dim, mm.rank, True, CERTIFIED, ell, j + 1, alg.field.name)
    rank, ell = best
    verdict = WlpVerdict(t, src.dim, tgt.dim, rank, False, SUSPECTED, ell, trials, alg.field.name,
                         f"rank {rank} < {target_rank} for every trial form")
    if not escalate:
        return verdict
    if max(src.dim, tgt.dim) > escalation_limit:
        verdict.note += f"; dimensions exceed the escalation limit {escalation_limit}"
        return verdict
    return _escalate(alg, t, trials, verdict)


def _rational_algebra(alg: QuotientAlgebra) -> QuotientAlgebra:
    if alg.field == QQ:
        return alg
    return QuotientAlgebra(alg.spec.over(QQ), use_tower=False)


def _escalate(alg, t, trials, verdict):
    """Redo a suspected failure exactly over QQ on the integer lift of the generators."""
    nv = alg.spec.num_vars
    if count_monomials(nv, t) > ESCALATION_COLUMNS:
        verdict.note += f"; exact recomputation skipped (more than {ESCALATION_COLUMNS} monomials in degree {t})"
        return verdict
    qalg = _rational_algebra(alg)
    src, tgt = qalg.basis(t - 1), qalg.basis(t)
    if qalg is not alg:
        for j in range(trials):
            ell = trial_form(alg.spec, t, j)
            ell = tuple(alg.field.to_signed(alg.field.reduce(c)) for c in ell)
            mm = mul_map(src, tgt, ell)
            if mm.maximal:
                return WlpVerdict(t, src.dim, tgt.dim, mm.rank, True, CERTIFIED, ell, j + 1, "QQ",
                                  "rank drop was an artifact of reduction mod p")
    outcome = generic_rank_is_deficient(src, tgt)
    if outcome is None:
        verdict.note += "; generic-form confirmation over QQ exceeds the grid budget"
        return verdict
    deficient, point = outcome
    if deficient:
        return WlpVerdict(t, src.dim, tgt.dim, verdict.rank, False, CERTIFIED_FAILURE, verdict.ell, trials, "QQ",
                          "every maximal minor of the generic multiplication map vanishes identically")
    mm = mul_map(src, tgt, point)
    return WlpVerdict(t, src.dim, tgt.dim, mm.rank, True, CERTIFIED, point, trials, "QQ",
                      "maximal rank found on the exact search grid")


def generic_rank_is_deficient(src, tgt, budget: int = GENERIC_GRID_BUDGET):
    """Decide exactly whether the generic linear form fails maximal rank from src to tgt.

    A maximal minor of sum_k u_k M_k is homogeneous of degree r = min(dims)
    in the u's.  Setting u_0 = 1, it vanishes identically iff it vanishes on
    the grid {0..r}^(N-1).  Returns (True, None) if the rank drops at every
    grid point, (False, point) at the first point of maximal rank, or None
    when the grid is larger than `budget`.
    """
    ops = src.ops
    nv = src.num_vars
    r = min(src.dim, tgt.dim)
    if (r + 1) ** (nv - 1) > budget:
        return None
    mats = [ops.to_python(variable_matrix(src, tgt, k)) for k in range(nv)]
    field = ops.field
    for rest in itertools.product(range(r + 1), repeat=nv - 1):
        u = (1,) + rest
        M = [[field.reduce(0)] * src.dim for _ in range(tgt.dim)]
        for k, c in enumerate(u):
            if c:
                Mk = mats[k]
                for i in range(tgt.dim):
                    row = M[i]
                    for j, v in enumerate(Mk[i]):
                        if v:
                            row[j] = field.add(row[j], field.mul(v, c))
        if len(rref_exact(M, field)[1]) == r:
            return False, u
    return True, None


@dataclass
class FullWlpReport:
    overall: bool
    status: str
    hilbert: HilbertFunction
    verdicts: list
    shortcut_used: bool
    certified_ci: bool
    degrees_checked: list = dc_field(default_factory=list)


def _combine_status(verdicts):
    statuses = {v.status for v in verdicts}
    if CERTIFIED_FAILURE in statuses:
        return CERTIFIED_FAILURE
    if SUSPECTED in statuses:
        return SUSPECTED
    return CERTIFIED


def middle_degrees(e: int):
    """Degrees t of the maps A_{t-1} -> A_t that decide WLP for a Gorenstein algebra."""
    inj = (e - 1) // 2 + 1
    surj = e // 2 + 1
    return [t for t in sorted({inj, surj}) if t >= 1]


def full_wlp(obj, use_shortcut: bool = True, trials: int = DEFAULT_TRIALS, escalate: bool = True) -> FullWlpReport:
    """WLP in every degree.

    With the shortcut (complete intersections only) it is enough that the
    map into degree floor((e-1)/2)+1 is injective and the map into degree
    floor(e/2)+1 is surjective; otherwise every degree 1..e is checked.
    """
    alg = _as_algebra(obj)
    cert = certify_complete_intersection(alg.spec, alg) if alg.spec.is_square else None
    certified = bool(cert and cert.certified)
    if use_shortcut and not certified:
        raise ValueError("the middle-degree shortcut needs a certified complete intersection")
    hf = hilbert_by_linear_algebra(alg.spec, algebra=alg)
    e = hf.socle_degree
    if use_shortcut:
        degrees = middle_degrees(e)
    else:
        degrees = list(range(1, e + 1))
    verdicts = [wlp_in_degree(alg, t, trials, escalate) for t in degrees]
    if use_shortcut:
        for v in verdicts:
            want_inj = hf[v.degree - 1] <= hf[v.degree]
            if v.maximal and want_inj and v.rank != v.dim_source:
                raise AssertionError("middle map is not injective despite maximal rank")
    status = _combine_status(verdicts)
    return FullWlpReport(status == CERTIFIED, status, hf, verdicts, use_shortcut, certified, degrees)

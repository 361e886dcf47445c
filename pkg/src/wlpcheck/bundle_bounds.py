"""Closed-form degree ranges where weak Lefschetz is guaranteed.

Everything here is integer arithmetic on (n, d): R has n+1 variables and
the complete intersection is generated by n+1 forms of degree d.  The
syzygy bundle E of such a CI is stable, its restriction to a general line
splits with consecutive twists differing by at most one, and that
splitting type controls which multiplication maps are forced injective.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class IntRange:
    """Half-open integer interval [lo, hi); empty when hi <= lo."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.hi <= self.lo

    @property
    def last(self) -> int | None:
        return None if self.empty else self.hi - 1

    def __contains__(self, t) -> bool:
        return self.lo <= t < self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi))

    def __len__(self):
        return max(0, self.hi - self.lo)

    def issubset(self, other: IntRange) -> bool:
        return self.empty or (other.lo <= self.lo and self.hi <= other.hi)

    def describe(self) -> str:
        if self.empty:
            return "empty"
        if self.hi - self.lo == 1:
            return f"t = {self.lo}"
        return f"{self.lo} <= t <= {self.hi - 1}"

    def to_dict(self):
        return {"lo": self.lo, "hi": self.hi, "empty": self.empty, "text": self.describe()}


@dataclass(frozen=True)
class ResolutionShape:
    """0 -> sum_i O(a_i) -> sum_j O(b_j) -> E -> 0 on P^n, E of rank n.

    Twists are listed non-increasing; len(b) = n + len(a).
    """

    a: tuple
    b: tuple
    n: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        b = tuple(int(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(b) != self.n + len(a):
            raise ValueError(f"need {self.n + len(a)} twists in b, got {len(b)}")
        if list(a) != sorted(a, reverse=True) or list(b) != sorted(b, reverse=True):
            raise ValueError("twists must be listed non-increasing")


def ci_dual_shape(n: int, d: int) -> ResolutionShape:
    """E* for n+1 forms of degree d: 0 -> O(-d) -> O^{n+1} -> E* -> 0."""
    return ResolutionShape((-d,), (0,) * (n + 1), n)


def syzygy_dual_shape(degrees) -> ResolutionShape:
    """E* for forms of the given degrees: 0 -> O -> sum O(d_i) -> E* -> 0."""
    degrees = sorted((int(x) for x in degrees), reverse=True)
    return ResolutionShape((0,), tuple(degrees), len(degrees) - 1)


def slope(shape: ResolutionShape) -> Fraction:
    return Fraction(sum(shape.b) - sum(shape.a), shape.n)


def is_stable(shape: ResolutionShape) -> bool:
    """Sufficient criterion: the largest twist b_1 is strictly below the slope."""
    return Fraction(shape.b[0]) < slope(shape)


@dataclass(frozen=True)
class SplittingBounds:
    """Window for the restriction E|_L = sum O(b_i) of the syzygy bundle (c_1 = -d).

    Every twist lies in [lower_b1, upper_bn].
    """

    n: int
    d: int
    a: int
    b: int
    lower_b1: int
    upper_bn: int

    def witness(self) -> tuple:
        """The balanced splitting: n - b twists equal to -a, then b equal to -a - 1."""
        return (-self.a,) * (self.n - self.b) + (-self.a - 1,) * self.b

    def feasible(self) -> bool:
        w = self.witness()
        return (sum(w) == -self.d and all(self.lower_b1 <= x <= self.upper_bn for x in w)
                and all(0 <= w[i] - w[i + 1] <= 1 for i in range(len(w) - 1)))


def _check_nd(n, d):
    if n < 3:
        raise ValueError(f"the bounds need n >= 3, got n = {n}")
    if d < 1:
        raise ValueError(f"degree must be positive, got d = {d}")


def splitting_bounds(n: int, d: int) -> SplittingBounds:
    _check_nd(n, d)
    a, b = divmod(d, n)
    return SplittingBounds(n, d, a, b, -a - (n + 1) // 2, -a + (n - 1) // 2)


def range_main(n: int, d: int) -> IntRange:
    """{t : d - 1 < t < d + floor(d/n) - floor((n-1)/2)}."""
    _check_nd(n, d)
    return IntRange(d, d + d // n - (n - 1) // 2)


def range_main_proof(n: int, d: int) -> IntRange:
    """{t : d - 1 < t <= d + floor(d/n) - floor((n-1)/2)}, the endpoint the vanishing argument reaches."""
    _check_nd(n, d)
    return IntRange(d, d + d // n - (n - 1) // 2 + 1)


def range_bound2(n: int, d: int) -> IntRange:
    """{t >= 1 : t <= d + ceil(d/n)}."""
    _check_nd(n, d)
    return IntRange(1, d + ceil_div(d, n) + 1)


def prop36_range(b1: int) -> IntRange:
    """Degrees t < -b1, for an Artinian CI whose syzygy bundle splits with top twist b1."""
    return IntRange(1, -b1)


def jacobian_range(n: int, d: int) -> IntRange:
    """Jacobian ideal of a smooth degree-d hypersurface in P^n: {t : t < d - 1 + ceil((d-1)/n)}.

    Only proved for n >= 3 and d > 2; outside that the range is empty.
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if n < 3 or d < 3:
        return IntRange(1, 1)
    return IntRange(1, d - 1 + ceil_div(d - 1, n))


def jacobian_threshold(n: int) -> int:
    """Smallest d with d in jacobian_range(n, d) (n >= 3), i.e. d >= n + 2."""
    return n + 2


@dataclass(frozen=True)
class PriorResult:
    """A published range, stored as data: where it applies and the degree window."""

    source: str
    applies_to: str
    statement: str
    condition: object
    lo: object
    hi: object

    def range(self, n: int, d: int) -> IntRange | None:
        if not self.condition(n, d):
            return None
        return IntRange(self.lo(n, d), self.hi(n, d))


# `ci` entries take the CI generator degree d; `jacobian` entries take the hypersurface degree d.
REGISTRY = (
    PriorResult("Alzati-Re", "ci", "WLP in degree t = d for forms of degree d",
                lambda n, d: True, lambda n, d: d, lambda n, d: d + 1),
    PriorResult("Boij-Migliore-Miro-Roig-Nagel, CI in four variables", "ci",
                "WLP for t < floor((3d+1)/2) when n = 3",
                lambda n, d: n == 3, lambda n, d: 1, lambda n, d: (3 * d + 1) // 2),
    PriorResult("Harima-Migliore-Nagel-Watanabe", "ci", "full WLP in at most three variables",
                lambda n, d: n <= 2, lambda n, d: 1, lambda n, d: (n + 1) * (d - 1) + 2),
    PriorResult("Ilardi", "jacobian", "Jacobian ideal has WLP in degree d - 1 for d > 2",
                lambda n, d: d > 2, lambda n, d: d - 1, lambda n, d: d),
    PriorResult("Boij-Migliore-Miro-Roig-Nagel, Jacobian surfaces", "jacobian",
                "Jacobian ideal of a smooth surface in P^3 has WLP for t <= floor((3d+1)/2) - 2",
                lambda n, d: n == 3 and d > 2, lambda n, d: 1, lambda n, d: (3 * d + 1) // 2 - 1),
    PriorResult("Boij-Migliore-Miro-Roig-Nagel, Jacobian surfaces of low degree", "jacobian",
                "full WLP for smooth surfaces in P^3 of degree 3 to 6",
                lambda n, d: n == 3 and 3 <= d <= 6, lambda n, d: 1, lambda n, d: 4 * (d - 2) + 2),
)


def registry_entries(kind: str, n: int, d: int):
    out = []
    for entry in REGISTRY:
        if entry.applies_to != kind:
            continue
        r = entry.range(n, d)
        if r is not None:
            out.append({"source": entry.source, "statement": entry.statement, "range": r.to_dict()})
    return out


@dataclass
class BoundReport:
    n: int
    d: int
    splitting: SplittingBounds
    slope: Fraction
    stable: bool
    range_main: IntRange
    range_main_proof: IntRange
    range_bound2: IntRange
    range_prop36: IntRange | None
    jacobian_range: IntRange
    beauville_covered: bool
    maximal_variation: bool
    registry: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "kind": "bounds",
            "n": self.n,
            "d": self.d,
            "splitting": {"a": self.splitting.a, "b": self.splitting.b,
                          "lower_b1": self.splitting.lower_b1, "upper_bn": self.splitting.upper_bn,
                          "witness": list(self.splitting.witness())},
            "stability": {"slope": str(self.slope), "stable": self.stable},
            "range_main": self.range_main.to_dict(),
            "range_main_proof": self.range_main_proof.to_dict(),
            "range_bound2": self.range_bound2.to_dict(),
            "range_prop36": self.range_prop36.to_dict() if self.range_prop36 is not None else None,
            "jacobian_range": self.jacobian_range.to_dict(),
            "beauville_covered": self.beauville_covered,
            "maximal_variation": self.maximal_variation,
            "registry": self.registry,
            "notes": self.notes,
        }


def wlp_ranges(n: int, d: int, b1: int | None = None) -> BoundReport:
    """All guaranteed ranges for n+1 general forms of degree d in n+1 variables.

    The Jacobian fields read d as the degree of a hypersurface in P^n.
    """
    sb = splitting_bounds(n, d)
    shape = ci_dual_shape(n, d)
    main = range_main(n, d)
    proof = range_main_proof(n, d)
    notes = []
    if proof.hi != main.hi:
        stated = f"stops at t = {main.hi - 1}" if not main.empty else "is empty"
        notes.append(f"the vanishing argument also reaches t = {proof.hi - 1}; the stated range {stated}")
    jr = jacobian_range(n, d) if d >= 2 else IntRange(1, 1)
    registry = registry_entries("ci", n, d) + registry_entries("jacobian", n, d)
    return BoundReport(
        n=n, d=d, splitting=sb, slope=slope(shape), stable=is_stable(shape),
        range_main=main, range_main_proof=proof, range_bound2=range_bound2(n, d),
        range_prop36=prop36_range(b1) if b1 is not None else None,
        jacobian_range=jr, beauville_covered=d in jr,
        maximal_variation=n - 1 >= 2 and d >= n + 2,
        registry=registry, notes=notes,
    )

"""Homogeneous polynomials in x0..x{N-1} over an exact field.

Monomials of one degree are ordered graded-lex with x0 largest and listed
largest first, so index 0 of degree t is x0^t.  Forms keep a dict from
exponent tuples to raw field values (ints mod p or Fractions) and never
store zero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

import numpy as np

from .exactfield import DEFAULT_PRIME, FieldElement, PrimeField, RationalField
from .seeding import TAG_GENERATOR, derive_seed

DEFAULT_FIELD = PrimeField(DEFAULT_PRIME)
# Rational random forms draw integers from [-RATIONAL_COEFF_BOUND, RATIONAL_COEFF_BOUND].
RATIONAL_COEFF_BOUND = 100


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def num_vars(self) -> int:
        return len(self.exponents)

    def _key(self):
        return (self.degree, self.exponents)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __mul__(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("monomials live in different rings")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self):
        return render_monomial(self.exponents)


def render_monomial(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def _exponent_tuples(num_vars, degree):
    if num_vars == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in _exponent_tuples(num_vars - 1, degree - e):
            yield (e,) + rest


@lru_cache(maxsize=None)
def monomial_exponents(num_vars: int, degree: int) -> np.ndarray:
    """All exponent vectors of the given degree, largest first (read-only)."""
    if degree < 0:
        arr = np.zeros((0, num_vars), dtype=np.int64)
    else:
        arr = np.array(list(_exponent_tuples(num_vars, degree)), dtype=np.int64)
        arr = arr.reshape(-1, num_vars)
    arr.setflags(write=False)
    return arr


def enumerate_monomials(num_vars: int, degree: int) -> list[Monomial]:
    if num_vars < 1:
        raise ValueError("need at least one variable")
    return [Monomial(tuple(int(x) for x in row)) for row in monomial_exponents(num_vars, degree)]


def count_monomials(num_vars: int, degree: int) -> int:
    return comb(degree + num_vars - 1, num_vars - 1) if degree >= 0 else 0


@lru_cache(maxsize=None)
def _binom_table(size):
    table = np.zeros((size + 1, size + 1), dtype=np.int64)
    for a in range(size + 1):
        for b in range(a + 1):
            table[a, b] = comb(a, b)
    return table


def monomial_rank(exps) -> np.ndarray:
    """Position of each exponent row among monomials of its degree (largest first).

    A monomial's rank counts the monomials that beat it lexicographically:
    sum over i of C(rem_i - a_i - 1 + k_i, k_i), where rem_i is the degree left
    before variable i and k_i = N - 1 - i variables follow it.
    """
    exps = np.asarray(exps, dtype=np.int64)
    if exps.ndim == 1:
        exps = exps[None, :]
    m, nv = exps.shape
    deg = exps.sum(axis=1)
    size = int(deg.max(initial=0)) + nv + 1
    table = _binom_table(size)
    rank = np.zeros(m, dtype=np.int64)
    rem = deg.copy()
    for i in range(nv - 1):
        k = nv - 1 - i
        top = rem - exps[:, i] - 1 + k
        ok = rem - exps[:, i] - 1 >= 0
        rank += np.where(ok, table[np.clip(top, 0, size), k], 0)
        rem = rem - exps[:, i]
    return rank


class GradedForm:
    """A homogeneous polynomial of fixed degree; the zero form keeps its degree."""

    __slots__ = ("num_vars", "degree", "field", "terms")

    def __init__(self, num_vars: int, degree: int, terms=None, field=DEFAULT_FIELD):
        self.num_vars = int(num_vars)
        self.degree = int(degree)
        self.field = field
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"term {render_monomial(exps)} has degree {sum(exps)}, expected {self.degree}")
            v = field.reduce(c.value if isinstance(c, FieldElement) else c)
            if not field.is_zero(v):
                v = field.add(clean.get(exps, field.reduce(0)), v)
                if field.is_zero(v):
                    clean.pop(exps, None)
                else:
                    clean[exps] = v
        self.terms = clean

    @property
    def coefficients(self) -> dict:
        return {Monomial(e): FieldElement(c, self.field) for e, c in self.terms.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.num_vars != other.num_vars or self.field != other.field:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self.terms)
        f = self.field
        for e, c in other.terms.items():
            v = f.add(terms.get(e, f.reduce(0)), c)
            if f.is_zero(v):
                terms.pop(e, None)
            else:
                terms[e] = v
        degree = self.degree if not self.is_zero() else other.degree
        return GradedForm(self.num_vars, degree, terms, f)

    def __neg__(self):
        return GradedForm(self.num_vars, self.degree, {e: self.field.neg(c) for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GradedForm):
            c = self.field.reduce(other.value if isinstance(other, FieldElement) else other)
            return GradedForm(self.num_vars, self.degree,
                              {e: self.field.mul(v, c) for e, v in self.terms.items()}, self.field)
        self._check(other)
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = f.add(out.get(e, f.reduce(0)), f.mul(c1, c2))
        return GradedForm(self.num_vars, self.degree + other.degree, out, f)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, GradedForm) and self.num_vars == other.num_vars
                and self.degree == other.degree and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self.degree, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def derivative(self, var: int) -> GradedForm:
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = f.mul(c, f.reduce(e[var]))
        return GradedForm(self.num_vars, max(self.degree - 1, 0), out, f)

    def to_arrays(self):
        """(exponent matrix, coefficient list) in graded-lex order, largest first."""
        items = self.sorted_terms()
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(-1, self.num_vars)
        return exps, [c for _, c in items]

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"GradedForm({render(self)!r}, num_vars={self.num_vars}, degree={self.degree}, field={self.field!r})"


def multiply(f: GradedForm, g: GradedForm) -> GradedForm:
    return f * g


def linear_form(coeffs, field=DEFAULT_FIELD) -> GradedForm:
    n = len(coeffs)
    return GradedForm(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, field)


def random_form(num_vars: int, degree: int, rng_seed: int, field=DEFAULT_FIELD) -> GradedForm:
    """Dense form with independent uniform coefficients; deterministic in the seed."""
    rng = np.random.default_rng(rng_seed)
    exps = monomial_exponents(num_vars, degree)
    if isinstance(field, RationalField):
        coeffs = rng.integers(-RATIONAL_COEFF_BOUND, RATIONAL_COEFF_BOUND + 1, size=len(exps))
    else:
        coeffs = rng.integers(0, field.p, size=len(exps), dtype=np.uint64)
    return GradedForm(num_vars, degree, {tuple(int(x) for x in e): int(c) for e, c in zip(exps, coeffs)}, field)


class FormParseError(ValueError):
    """Malformed polynomial text; `offset` is the byte offset of the problem."""

    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^])|(?P<bad>\S))")


def _byte_offset(text, char_index):
    return len(text[:char_index].encode("utf-8"))


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == "" and m.end() == len(text)):
            break
        start = m.start(m.lastgroup) if m.lastgroup else m.start()
        if m.group("bad") is not None:
            raise FormParseError(f"unexpected character {m.group('bad')!r}", text, _byte_offset(text, start))
        if m.group("num") is not None:
            out.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx")), start))
        else:
            out.append((m.group("op"), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_terms(text: str, num_vars: int | None = None):
    """Parse text into a list of (exponent tuple, signed int coefficient, byte offset).

    Grammar: terms joined by + or -; a term is an optional integer
    coefficient followed by *-separated factors x<k> or x<k>^<e>.
    """
    toks = _tokens(text)
    i = 0
    raw = []
    max_var = -1

    def err(msg, tok):
        raise FormParseError(msg, text, _byte_offset(text, tok[2]))

    sign = 1
    if toks[i][0] in "+-" and toks[i][0] != "end":
        sign = -1 if toks[i][0] == "-" else 1
        i += 1
    while True:
        coeff = 1
        factors = {}
        tok = toks[i]
        term_start = tok[2]
        if tok[0] == "num":
            coeff = tok[1]
            i += 1
            if toks[i][0] == "*":
                i += 1
                if toks[i][0] != "var":
                    err("expected a variable after '*'", toks[i])
            elif toks[i][0] == "var":
                pass
        elif tok[0] != "var":
            err("expected a term", tok)
        while toks[i][0] == "var":
            var = toks[i][1]
            i += 1
            e = 1
            if toks[i][0] == "^":
                i += 1
                if toks[i][0] != "num":
                    err("expected an exponent after '^'", toks[i])
                e = toks[i][1]
                i += 1
            factors[var] = factors.get(var, 0) + e
            max_var = max(max_var, var)
            if toks[i][0] == "*":
                i += 1
                if toks[i][0] != "var":
                    err("expected a variable after '*'", toks[i])
        raw.append((factors, sign * coeff, term_start))
        tok = toks[i]
        if tok[0] == "end":
            break
        if tok[0] not in "+-":
            err("expected '+' or '-'", tok)
        sign = -1 if tok[0] == "-" else 1
        i += 1
    if num_vars is None:
        num_vars = max_var + 1 if max_var >= 0 else 1
    if max_var >= num_vars:
        bad = next(tok for tok in toks if tok[0] == "var" and tok[1] >= num_vars)
        err(f"variable x{bad[1]} out of range for {num_vars} variables", bad)
    terms = []
    for factors, c, start in raw:
        exps = [0] * num_vars
        for v, e in factors.items():
            exps[v] += e
        terms.append((tuple(exps), c, _byte_offset(text, start)))
    return terms, num_vars


def parse_form(text: str, num_vars: int | None = None, field=DEFAULT_FIELD, degree: int | None = None) -> GradedForm:
    """Parse a homogeneous polynomial; `degree` is only needed for a zero form."""
    terms, num_vars = parse_terms(text, num_vars)
    degrees = sorted({sum(e) for e, c, _ in terms if c != 0})
    if len(degrees) > 1:
        first = next(sum(e) for e, c, _ in terms if c != 0)
        where = next(off for e, c, off in terms if c != 0 and sum(e) != first)
        raise FormParseError(f"polynomial is not homogeneous: found degrees {degrees}", text, where)
    acc = {}
    for e, c, _ in terms:
        acc[e] = acc.get(e, 0) + c
    nonzero = {e: c for e, c in acc.items() if field.reduce(c) != 0}
    if degrees:
        deg = degrees[0]
        if degree is not None and degree != deg and nonzero:
            raise FormParseError(f"expected degree {degree}, found {deg}", text, 0)
    else:
        deg = 0
    if not nonzero:
        deg = degree if degree is not None else deg
    return GradedForm(num_vars, deg, nonzero, field)


def render(f: GradedForm) -> str:
    if f.is_zero():
        return "0"
    out = []
    for exps, c in f.sorted_terms():
        c = f.field.to_signed(c)
        neg = c < 0
        mag = -c if neg else c
        mono = render_monomial(exps)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


@dataclass
class CiSpec:
    """Generators of an ideal in num_vars variables (usually a complete intersection)."""

    num_vars: int
    degrees: tuple
    generators: tuple
    seed: int | None = None
    field: object = dc_field(default=DEFAULT_FIELD)

    def __post_init__(self):
        self.degrees = tuple(int(d) for d in self.degrees)
        self.generators = tuple(self.generators)
        if len(self.degrees) != len(self.generators):
            raise ValueError("one degree per generator")
        for g, d in zip(self.generators, self.degrees):
            if g.degree != d:
                raise ValueError(f"generator {render(g)} has degree {g.degree}, expected {d}")
            if g.num_vars != self.num_vars:
                raise ValueError("generator lives in a different ring")
            if g.field != self.field:
                raise ValueError("generator uses a different field")

    @classmethod
    def from_forms(cls, forms, seed=None):
        forms = list(forms)
        if not forms:
            raise ValueError("need at least one generator")
        return cls(forms[0].num_vars, tuple(f.degree for f in forms), tuple(forms), seed, forms[0].field)

    @classmethod
    def random(cls, num_vars: int, degrees, seed: int, field=DEFAULT_FIELD):
        gens = tuple(random_form(num_vars, d, derive_seed(seed, TAG_GENERATOR, i), field)
                     for i, d in enumerate(degrees))
        return cls(num_vars, tuple(degrees), gens, seed, field)

    @property
    def is_square(self) -> bool:
        return len(self.degrees) == self.num_vars

    def over(self, field) -> CiSpec:
        """Same integer coefficient lifts, reinterpreted over another field."""
        gens = []
        for g in self.generators:
            terms = {e: self.field.to_signed(c) for e, c in g.terms.items()}
            gens.append(GradedForm(g.num_vars, g.degree, terms, field))
        return CiSpec(self.num_vars, self.degrees, tuple(gens), self.seed, field)

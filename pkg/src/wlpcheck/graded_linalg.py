"""Graded pieces of a quotient R/I as explicit matrices.

The degree-t Macaulay matrix has one row per product m * f_i (m a monomial
of degree t - deg f_i) and one column per degree-t monomial in graded-lex
order, largest first.  Its reduced row echelon form picks the leading
monomials of I_t as pivots; the remaining columns are the standard
monomials, which form a basis of A_t = R_t / I_t.

Matrices over GF(p) are uint64 arrays handled by the kernels in `_modp`.
Over QQ they are object arrays of Fractions reduced by plain Gauss-Jordan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _modp
from .exactfield import PrimeField
from .polyring import CiSpec, GradedForm, count_monomials, monomial_exponents, monomial_rank


def rref_exact(rows, field):
    """Gauss-Jordan on a list of lists of raw field values; pure Python.

    Works for any field object and doubles as the reference route for the
    GF(p) kernels.  Returns (reduced nonzero rows, pivot columns).
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    n = len(rows[0])
    rank = 0
    pivots = []
    zero = field.reduce(0)
    for c in range(n):
        piv = next((i for i in range(rank, len(rows)) if not field.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][c])
        prow = [field.mul(x, inv) for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank:
                a = rows[i][c]
                if not field.is_zero(a):
                    rows[i] = [field.sub(x, field.mul(a, y)) if not field.is_zero(y) else x
                               for x, y in zip(rows[i], prow)]
                    rows[i][c] = zero
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


class PrimeOps:
    """Matrix operations over GF(p) on uint64 arrays."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.mod = _modp.modulus(field.p)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.uint64)

    def eye(self, n):
        return np.eye(n, dtype=np.uint64)

    def array(self, values):
        return np.array([[self.field.reduce(v) for v in row] for row in values], dtype=np.uint64).reshape(len(values), -1)

    def coeffs(self, values):
        return np.array([self.field.reduce(v) for v in values], dtype=np.uint64)

    def matmul(self, A, B):
        return _modp.matmul(A, B, self.mod)

    def add(self, A, B):
        return _modp.add(A, B, self.mod)

    def sub(self, A, B):
        return _modp.sub(A, B, self.mod)

    def neg(self, A):
        return _modp.neg(A, self.mod)

    def scale(self, A, c):
        return _modp.scale(A, int(c), self.mod)

    def rref(self, A):
        return _modp.rref(A, self.mod)

    def reduce_against(self, X, E, piv):
        return _modp.reduce_against(X, E, piv, self.mod)

    def merge(self, E1, P1, E2, P2):
        return _modp.merge(E1, P1, E2, P2, self.mod)

    def to_python(self, A):
        return [[int(x) for x in row] for row in A]


class ExactOps:
    """The same interface on object arrays, for QQ (or any field) in pure Python."""

    def __init__(self, field):
        self.field = field
        self._zero = field.reduce(0)

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(self._zero)
        return out

    def eye(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.field.reduce(1)
        return out

    def array(self, values):
        out = self.zeros((len(values), len(values[0]) if values else 0))
        for i, row in enumerate(values):
            for j, v in enumerate(row):
                out[i, j] = self.field.reduce(v)
        return out

    def coeffs(self, values):
        out = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            out[i] = self.field.reduce(v)
        return out

    def _fix(self, A):
        if isinstance(self.field, PrimeField):
            return np.vectorize(lambda x: x % self.field.p, otypes=[object])(A) if A.size else A
        return A

    def matmul(self, A, B):
        if A.shape[1] == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        return self._fix(A.dot(B))

    def add(self, A, B):
        return self._fix(A + B)

    def sub(self, A, B):
        return self._fix(A - B)

    def neg(self, A):
        return self._fix(-A)

    def scale(self, A, c):
        return self._fix(A * self.field.reduce(c))

    def rref(self, A):
        rows, piv = rref_exact(A.tolist(), self.field)
        E = self.zeros((len(rows), A.shape[1]))
        for i, r in enumerate(rows):
            E[i, :] = r
        return E, np.array(piv, dtype=np.int64)

    def reduce_against(self, X, E, piv):
        if len(piv) == 0 or X.shape[0] == 0:
            return X
        X = self.sub(X, self.matmul(X[:, piv], E))
        return X

    def merge(self, E1, P1, E2, P2):
        if len(P2) == 0:
            return E1, P1
        if len(P1) == 0:
            return E2, P2
        E1 = self.sub(E1, self.matmul(E1[:, P2], E2))
        E = np.vstack([E1, E2])
        P = np.concatenate([P1, P2])
        order = np.argsort(P, kind="stable")
        return E[order], P[order]

    def to_python(self, A):
        return [list(row) for row in A]


def ops_for(field, exact: bool = False):
    if isinstance(field, PrimeField) and not exact:
        return PrimeOps(field)
    return ExactOps(field)


@dataclass
class MacaulayPiece:
    spec: CiSpec
    degree: int
    matrix: np.ndarray
    ops: object
    _rref: tuple | None = None

    @property
    def columns(self) -> np.ndarray:
        return monomial_exponents(self.spec.num_vars, self.degree)

    @property
    def echelon(self):
        if self._rref is None:
            self._rref = self.ops.rref(self.matrix)
        return self._rref

    @property
    def rank(self) -> int:
        return len(self.echelon[1])


def macaulay_piece(spec: CiSpec, t: int, ops=None) -> MacaulayPiece:
    ops = ops or ops_for(spec.field)
    nv = spec.num_vars
    ncols = count_monomials(nv, t)
    blocks = []
    for g in spec.generators:
        k = t - g.degree
        if k < 0 or g.is_zero():
            continue
        mult = monomial_exponents(nv, k)
        gexps, gcoef = g.to_arrays()
        target = (mult[:, None, :] + gexps[None, :, :]).reshape(-1, nv)
        cols = monomial_rank(target).reshape(len(mult), len(gexps))
        block = ops.zeros((len(mult), ncols))
        vals = ops.coeffs(gcoef)
        rows = np.repeat(np.arange(len(mult)), len(gexps)).reshape(cols.shape)
        block[rows, cols] = vals[None, :]
        blocks.append(block)
    matrix = np.vstack(blocks) if blocks else ops.zeros((0, ncols))
    return MacaulayPiece(spec, t, matrix, ops)


@dataclass
class QuotientBasis:
    """Standard monomials of A_t plus the normal-form table of every degree-t monomial.

    `nf[j]` holds the coordinates of the j-th degree-t monomial in the basis.
    """

    degree: int
    num_vars: int
    basis: np.ndarray
    basis_index: np.ndarray
    nf: np.ndarray
    ops: object

    @property
    def dim(self) -> int:
        return len(self.basis_index)

    @property
    def basis_monomials(self):
        from .polyring import Monomial
        return [Monomial(tuple(int(x) for x in row)) for row in self.basis]

    def normal_form(self, form: GradedForm):
        """Coordinates of the class of `form` (degree t) in this basis."""
        if form.degree != self.degree and not form.is_zero():
            raise ValueError(f"form has degree {form.degree}, basis has degree {self.degree}")
        out = self.ops.zeros((1, self.dim))
        if form.is_zero() or self.dim == 0:
            return out[0]
        exps, coefs = form.to_arrays()
        idx = monomial_rank(exps)
        c = self.ops.coeffs(coefs)[None, :]
        return self.ops.matmul(c, self.nf[idx])[0]


def quotient_basis(piece: MacaulayPiece) -> QuotientBasis:
    ops = piece.ops
    E, piv = piece.echelon
    ncols = piece.matrix.shape[1]
    mask = np.ones(ncols, dtype=bool)
    mask[piv] = False
    std = np.flatnonzero(mask)
    nf = ops.zeros((ncols, len(std)))
    nf[std, np.arange(len(std))] = ops.eye(1)[0, 0] if len(std) else 0
    if len(piv) and len(std):
        nf[piv] = ops.neg(E[:, std])
    return QuotientBasis(piece.degree, piece.spec.num_vars, piece.columns[std], std, nf, ops)


def shift_indices(source: QuotientBasis, var: int) -> np.ndarray:
    """Column positions (in degree t+1) of x_var times each source basis monomial."""
    exps = np.array(source.basis, dtype=np.int64, copy=True)
    if len(exps) == 0:
        return np.zeros(0, dtype=np.int64)
    exps[:, var] += 1
    return monomial_rank(exps)


def variable_matrix(source: QuotientBasis, target: QuotientBasis, var: int):
    """Matrix of multiplication by x_var from A_t to A_{t+1} (target rows, source columns)."""
    if source.dim == 0 or target.dim == 0:
        return source.ops.zeros((target.dim, source.dim))
    return np.ascontiguousarray(target.nf[shift_indices(source, var)].T)


@dataclass
class MulMap:
    source: QuotientBasis
    target: QuotientBasis
    ell: tuple
    matrix: np.ndarray
    rank: int

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.source.dim, self.target.dim)


def mul_map_matrix(source: QuotientBasis, target: QuotientBasis, ell):
    ops = source.ops
    M = ops.zeros((target.dim, source.dim))
    for k, c in enumerate(ell):
        c = ops.field.reduce(c)
        if ops.field.is_zero(c):
            continue
        M = ops.add(M, ops.scale(variable_matrix(source, target, k), c))
    return M


def mul_map(source: QuotientBasis, target: QuotientBasis, ell) -> MulMap:
    """Multiplication by the linear form with coefficient vector `ell`, A_{t-1} -> A_t."""
    if target.degree != source.degree + 1:
        raise ValueError("target must sit one degree above source")
    ell = tuple(ell)
    if len(ell) != source.num_vars:
        raise ValueError("linear form has the wrong number of coefficients")
    M = mul_map_matrix(source, target, ell)
    r = len(source.ops.rref(M)[1]) if M.size else 0
    return MulMap(source, target, ell, M, r)

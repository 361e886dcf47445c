"""Dense linear algebra over GF(p) on uint64 numpy arrays.

Two multiplication paths share every kernel: a shift-and-fold reduction for
the Mersenne prime 2^61 - 1 and Montgomery multiplication for any other odd
prime below 2^62.  Large products go through float64 BLAS on 21-bit limbs:
every partial dot product stays below 2^53, so the float results are exact
integers and are recombined modulo p afterwards.

Row echelon forms are computed by recursive row splitting so that almost
all work happens inside those matrix products.
"""

from __future__ import annotations

import numba as nb
import numpy as np

MERSENNE61 = (1 << 61) - 1

_U = np.uint64
_M32 = _U(0xFFFFFFFF)
_M29 = _U((1 << 29) - 1)
_M61 = _U(MERSENNE61)
_S29 = _U(29)
_S32 = _U(32)
_S61 = _U(61)
_ONE = _U(1)
_ZERO = _U(0)

LIMB_BITS = 21
_LIMB_MASK = _U((1 << LIMB_BITS) - 1)
# 2^42 * 2048 < 2^53: a chunk of this many limb products sums exactly in float64.
_CHUNK = 2048
_LEAF_ROWS = 32
# Below this many multiply-adds the numba loop beats BLAS plus conversions.
_SMALL_MATMUL = 1 << 17


class Modulus:
    """Precomputed constants for one prime."""

    def __init__(self, p: int):
        if p % 2 == 0 or p >= 1 << 62:
            raise ValueError("need an odd modulus below 2^62")
        self.p = p
        self.mode = 0 if p == MERSENNE61 else 1
        r = 1 << 64
        self.pneg = (-pow(p, -1, r)) % r
        self.r2 = r * r % p
        self.limbs = max(1, -(-(p - 1).bit_length() // LIMB_BITS))
        self.weights = np.array(
            [(pow(2, LIMB_BITS * s, p) * r) % p for s in range(2 * self.limbs - 1)],
            dtype=np.uint64,
        )

    @property
    def args(self):
        return (self.mode, _U(self.p), _U(self.pneg), _U(self.r2))


_MODULI: dict[int, Modulus] = {}


def modulus(p: int) -> Modulus:
    m = _MODULI.get(p)
    if m is None:
        m = _MODULI[p] = Modulus(p)
    return m


@nb.njit(inline="always")
def _mul61(a, b):
    a0 = a & _M32
    a1 = a >> _S32
    b0 = b & _M32
    b1 = b >> _S32
    lo = a0 * b0
    mid = a0 * b1 + a1 * b0
    hh = a1 * b1
    s = (hh << _U(3)) + (mid >> _S29) + ((mid & _M29) << _S32) + (lo & _M61) + (lo >> _S61)
    s = (s & _M61) + (s >> _S61)
    if s >= _M61:
        s -= _M61
    return s


@nb.njit(inline="always")
def _mulhi(a, b):
    a0 = a & _M32
    a1 = a >> _S32
    b0 = b & _M32
    b1 = b >> _S32
    lo = a0 * b0
    t = a1 * b0 + (lo >> _S32)
    w1 = (t & _M32) + a0 * b1
    return a1 * b1 + (t >> _S32) + (w1 >> _S32)


@nb.njit(inline="always")
def _montmul(a, b, p, pneg):
    lo = a * b
    hi = _mulhi(a, b)
    m = lo * pneg
    t = hi + _mulhi(m, p)
    if lo != _ZERO:
        t += _ONE
    if t >= p:
        t -= p
    return t


@nb.njit(inline="always")
def _mulmod(a, b, mode, p, pneg, r2):
    if mode == 0:
        return _mul61(a, b)
    return _montmul(_montmul(a, b, p, pneg), r2, p, pneg)


@nb.njit(cache=True)
def _inv(a, mode, p, pneg, r2):
    e = p - _U(2)
    result = _ONE
    base = a
    while e > _ZERO:
        if e & _ONE:
            result = _mulmod(result, base, mode, p, pneg, r2)
        base = _mulmod(base, base, mode, p, pneg, r2)
        e >>= _ONE
    return result


@nb.njit(inline="always")
def _axpy(dst, src, f, start, mode, p, pneg, r2):
    """dst[start:] += f * src[start:]  (mod p)."""
    n = dst.shape[0]
    if mode == 0:
        for j in range(start, n):
            v = dst[j] + _mul61(src[j], f)
            if v >= p:
                v -= p
            dst[j] = v
    else:
        fr = _montmul(f, r2, p, pneg)
        for j in range(start, n):
            v = dst[j] + _montmul(src[j], fr, p, pneg)
            if v >= p:
                v -= p
            dst[j] = v


@nb.njit(inline="always")
def _scale_row(row, f, start, mode, p, pneg, r2):
    n = row.shape[0]
    if mode == 0:
        for j in range(start, n):
            row[j] = _mul61(row[j], f)
    else:
        fr = _montmul(f, r2, p, pneg)
        for j in range(start, n):
            row[j] = _montmul(row[j], fr, p, pneg)


@nb.njit(cache=True)
def _rref_leaf(A, mode, p, pneg, r2):
    """Gauss-Jordan in place; returns (rank, pivot columns)."""
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    rank = 0
    tmp = np.empty(n, dtype=np.uint64)
    for c in range(n):
        if rank == m:
            break
        piv = -1
        for i in range(rank, m):
            if A[i, c] != _ZERO:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            tmp[:] = A[piv]
            A[piv] = A[rank]
            A[rank] = tmp
        _scale_row(A[rank], _inv(A[rank, c], mode, p, pneg, r2), c, mode, p, pneg, r2)
        src = A[rank]
        for i in range(m):
            if i != rank:
                a = A[i, c]
                if a != _ZERO:
                    _axpy(A[i], src, p - a, c, mode, p, pneg, r2)
        pivots[rank] = c
        rank += 1
    return rank, pivots[:rank].copy()


@nb.njit(cache=True)
def _matmul_small(A, B, out, mode, p, pneg, r2):
    m, k = A.shape
    for i in range(m):
        row = out[i]
        for l in range(k):
            a = A[i, l]
            if a != _ZERO:
                _axpy(row, B[l], a, 0, mode, p, pneg, r2)
    return out


@nb.njit(cache=True)
def _combine(P, coef, out, mode, p, pneg, weights):
    """out += sum_s (sum_q coef[s, q] * P[q]) * 2^(21 s)  (mod p).

    Each inner sum is a nonnegative integer below 2^55 by construction.
    """
    nslots, m, n = P.shape
    ns = coef.shape[0]
    acc = np.empty(n, dtype=np.uint64)
    x = np.empty(n, dtype=np.int64)
    for r in range(m):
        acc[:] = out[r]
        for s in range(ns):
            x[:] = 0
            for q in range(nslots):
                k = coef[s, q]
                if k == 1:
                    for c in range(n):
                        x[c] += np.int64(P[q, r, c])
                elif k == -1:
                    for c in range(n):
                        x[c] -= np.int64(P[q, r, c])
            if mode == 0:
                # x < 2^55; multiplying by 2^(21 s) is a rotation inside 61 bits
                sh = _U((21 * s) % 61)
                for c in range(n):
                    v = _U(x[c])
                    v = (v & _M61) + (v >> _S61)
                    if sh != _ZERO:
                        v = ((v << sh) & _M61) | (v >> (_S61 - sh))
                    if v >= _M61:
                        v -= _M61
                    v += acc[c]
                    if v >= p:
                        v -= p
                    acc[c] = v
            else:
                w = weights[s]
                for c in range(n):
                    v = _montmul(_U(x[c]) % p, w, p, pneg) + acc[c]
                    if v >= p:
                        v -= p
                    acc[c] = v
        out[r] = acc
    return out


@nb.njit(cache=True)
def _addmod(A, B, p):
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            v = A[i, j] + B[i, j]
            if v >= p:
                v -= p
            A[i, j] = v
    return A


@nb.njit(cache=True)
def _submod(A, B, p):
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            a = A[i, j]
            b = B[i, j]
            A[i, j] = a - b if a >= b else a + (p - b)
    return A


@nb.njit(cache=True)
def _scale(A, f, mode, p, pneg, r2):
    m, n = A.shape
    for i in range(m):
        _scale_row(A[i], f, 0, mode, p, pneg, r2)
    return A


def _limbs(A, L):
    out = []
    for i in range(L):
        x = A >> _U(LIMB_BITS * i) if i else A
        if i < L - 1:
            x = x & _LIMB_MASK
        out.append(x.astype(np.float64))
    return out


# Karatsuba plans: which limb sums are multiplied, and how the products
# recombine into the coefficient of 2^(21 s).
_PLANS = {
    1: ([((0,), (0,))], np.array([[1]], dtype=np.int64)),
    2: ([((0,), (0,)), ((1,), (1,)), ((0, 1), (0, 1))],
        np.array([[1, 0, 0], [-1, -1, 1], [0, 1, 0]], dtype=np.int64)),
    3: ([((0,), (0,)), ((1,), (1,)), ((2,), (2,)),
         ((0, 1), (0, 1)), ((0, 2), (0, 2)), ((1, 2), (1, 2))],
        np.array([[1, 0, 0, 0, 0, 0],
                  [-1, -1, 0, 1, 0, 0],
                  [-1, 1, -1, 0, 1, 0],
                  [0, -1, -1, 0, 0, 1],
                  [0, 0, 1, 0, 0, 0]], dtype=np.int64)),
}
# Summed limbs have 22 bits, so products reach 2^44 and 512 of them stay below 2^53.
_KARATSUBA_CHUNK = 512


def matmul(A, B, mod: Modulus) -> np.ndarray:
    """A @ B mod p for uint64 matrices with entries in [0, p)."""
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((m, n), dtype=np.uint64)
    if m == 0 or n == 0 or k == 0:
        return out
    if m * k * n <= _SMALL_MATMUL or k <= 4:
        return _matmul_small(np.ascontiguousarray(A), np.ascontiguousarray(B), out, *mod.args)
    L = mod.limbs
    pairs, coef = _PLANS[L]
    chunk = _CHUNK if L == 1 else _KARATSUBA_CHUNK
    P = np.empty((len(pairs), m, n), dtype=np.float64)
    for k0 in range(0, k, chunk):
        a = _limbs(A[:, k0:k0 + chunk], L)
        b = _limbs(B[k0:k0 + chunk], L)
        for q, (ia, ib) in enumerate(pairs):
            x = a[ia[0]] if len(ia) == 1 else a[ia[0]] + a[ia[1]]
            y = b[ib[0]] if len(ib) == 1 else b[ib[0]] + b[ib[1]]
            np.matmul(x, y, out=P[q])
        _combine(P, coef, out, mod.mode, _U(mod.p), _U(mod.pneg), mod.weights)
    return out


def add(A, B, mod: Modulus):
    return _addmod(np.array(A, dtype=np.uint64), np.ascontiguousarray(B, dtype=np.uint64), _U(mod.p))


def sub(A, B, mod: Modulus):
    return _submod(np.array(A, dtype=np.uint64), np.ascontiguousarray(B, dtype=np.uint64), _U(mod.p))


def neg(A, mod: Modulus):
    A = np.asarray(A, dtype=np.uint64)
    return np.where(A == 0, A, _U(mod.p) - A)


def scale(A, f: int, mod: Modulus):
    A = np.array(A, dtype=np.uint64, ndmin=2)
    return _scale(A, _U(f % mod.p), *mod.args)


def _complement(n, cols):
    mask = np.ones(n, dtype=bool)
    mask[cols] = False
    return np.flatnonzero(mask)


def reduce_against(X, E, piv, mod: Modulus):
    """Clear the pivot columns of E out of the rows of X (in place on a copy)."""
    if len(piv) == 0 or X.shape[0] == 0:
        return X
    rest = _complement(X.shape[1], piv)
    coeff = X[:, piv]
    X[:, rest] = sub(X[:, rest], matmul(coeff, E[:, rest], mod), mod)
    X[:, piv] = 0
    return X


def merge(E1, P1, E2, P2, mod: Modulus):
    """Combine two reduced blocks whose pivots are disjoint and E2 vanishes on P1."""
    if len(P2) == 0:
        return E1, P1
    if len(P1) == 0:
        return E2, P2
    n = E1.shape[1]
    rest = _complement(n, np.concatenate([P1, P2]))
    coeff = E1[:, P2]
    E1 = E1.copy()
    E1[:, rest] = sub(E1[:, rest], matmul(coeff, E2[:, rest], mod), mod)
    E1[:, P2] = 0
    E = np.vstack([E1, E2])
    P = np.concatenate([P1, P2])
    order = np.argsort(P, kind="stable")
    return E[order], P[order]


def rref(A, mod: Modulus):
    """Reduced row echelon form (pivot = first nonzero column).

    Returns (E, pivots) with E holding only the nonzero rows.
    """
    A = np.ascontiguousarray(A, dtype=np.uint64)
    m, n = A.shape
    if m == 0 or n == 0:
        return np.zeros((0, n), dtype=np.uint64), np.zeros(0, dtype=np.int64)
    A = A[np.any(A != 0, axis=1)]
    return _rref_rec(A, mod)


def _rref_rec(A, mod):
    m, n = A.shape
    if m == 0:
        return np.zeros((0, n), dtype=np.uint64), np.zeros(0, dtype=np.int64)
    if m <= _LEAF_ROWS:
        B = A.copy()
        r, piv = _rref_leaf(B, *mod.args)
        return B[:r], piv
    h = m // 2
    E1, P1 = _rref_rec(A[:h], mod)
    A2 = reduce_against(A[h:].copy(), E1, P1, mod)
    A2 = A2[np.any(A2 != 0, axis=1)]
    E2, P2 = _rref_rec(A2, mod)
    return merge(E1, P1, E2, P2, mod)


def rank(A, mod: Modulus) -> int:
    return len(rref(A, mod)[1])

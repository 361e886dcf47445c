import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wlpcheck.exactfield import DEFAULT_PRIME, QQ, PrimeField
from wlpcheck.graded_linalg import (
    macaulay_piece,
    mul_map,
    mul_map_matrix,
    ops_for,
    quotient_basis,
    rref_exact,
)
from wlpcheck.polyring import CiSpec, GradedForm, enumerate_monomials, parse_form

F = PrimeField(DEFAULT_PRIME)


def spec_of(texts, nv, field=F):
    return CiSpec.from_forms([parse_form(t, nv, field) for t in texts])


SQUARES4 = ["x0^2", "x1^2", "x2^2", "x3^2"]


def oracle_rank(spec, t):
    """Rank of the degree-t piece of the ideal, by multiplying out shifts and exact elimination."""
    field = spec.field
    cols = enumerate_monomials(spec.num_vars, t)
    index = {m.exponents: j for j, m in enumerate(cols)}
    rows = []
    for g in spec.generators:
        if g.degree > t:
            continue
        for m in enumerate_monomials(spec.num_vars, t - g.degree):
            prod = g * GradedForm(spec.num_vars, m.degree, {m.exponents: 1}, field)
            row = [field.reduce(0)] * len(cols)
            for e, c in prod.terms.items():
                row[index[e]] = c
            rows.append(row)
    return len(rref_exact(rows, field)[1]) if rows else 0


def basis_of(spec, t, exact=False):
    return quotient_basis(macaulay_piece(spec, t, ops_for(spec.field, exact)))


def test_two_squares_degree_two():
    piece = macaulay_piece(spec_of(["x0^2", "x1^2"], 2), 2)
    assert piece.rank == 2
    b = quotient_basis(piece)
    assert b.dim == 1 and [m.exponents for m in b.basis_monomials] == [(1, 1)]


@pytest.mark.parametrize("t", [0, 1])
def test_below_generator_degree_rank_zero(t):
    spec = CiSpec.random(4, [2, 2, 3, 3], 3, F)
    assert macaulay_piece(spec, t).rank == 0


def test_degree_zero_basis_is_one():
    b = basis_of(spec_of(SQUARES4, 4), 0)
    assert [m.exponents for m in b.basis_monomials] == [(0, 0, 0, 0)]


def test_random_quadrics_rank_four_both_routes():
    spec = CiSpec.random(4, [2] * 4, 21, F)
    assert macaulay_piece(spec, 2).rank == 4
    q = spec.over(QQ)
    assert macaulay_piece(q, 2, ops_for(QQ)).rank == 4
    assert oracle_rank(q, 2) == 4


def test_squares_basis_is_squarefree_quadrics():
    b = basis_of(spec_of(SQUARES4, 4), 2)
    assert b.dim == 6
    assert all(max(m.exponents) == 1 for m in b.basis_monomials)


def test_squares_multiplication_maps():
    spec = spec_of(SQUARES4, 4)
    b1, b2, b3 = (basis_of(spec, t) for t in (1, 2, 3))
    m = mul_map(b1, b2, (1, 1, 1, 1))
    assert m.matrix.shape == (6, 4) and m.rank == 4 and m.maximal
    m = mul_map(b2, b3, (1, 1, 1, 1))
    assert m.matrix.shape == (4, 6) and m.rank == 4 and m.maximal


def test_zero_linear_form():
    spec = spec_of(SQUARES4, 4)
    m = mul_map(basis_of(spec, 1), basis_of(spec, 2), (0, 0, 0, 0))
    assert m.rank == 0 and not np.any(m.matrix)


def test_normal_form_against_hand_computation():
    spec = spec_of(["x0^2 - x1*x2", "x1^2", "x2^2"], 3)
    b = basis_of(spec, 2)
    # x0^2 = x1*x2 in the quotient
    v = b.normal_form(parse_form("x0^2", 3, F))
    w = b.normal_form(parse_form("x1*x2", 3, F))
    assert v.tolist() == w.tolist()
    assert not np.any(b.normal_form(parse_form("x1^2", 3, F)))


@pytest.mark.parametrize("seed", range(6))
def test_prime_and_exact_backends_agree(seed):
    rng = np.random.default_rng(seed)
    nv = int(rng.integers(2, 5))
    degrees = [int(x) for x in rng.integers(1, 4, size=nv)]
    spec = CiSpec.random(nv, degrees, seed, PrimeField(10007))
    for t in range(0, min(sum(d - 1 for d in degrees) + 2, 7)):
        fast, slow = basis_of(spec, t), basis_of(spec, t, exact=True)
        assert fast.basis_index.tolist() == slow.basis_index.tolist()
        assert fast.nf.tolist() == [[int(x) for x in row] for row in slow.nf]
        assert macaulay_piece(spec, t).rank == oracle_rank(spec, t)


@settings(max_examples=30)
@given(st.integers(2, 4), st.integers(0, 2**32), st.integers(1, 10**6))
def test_rank_invariant_under_scaling(nv, seed, c):
    spec = CiSpec.random(nv, [2] * nv, seed, F)
    t = nv // 2 + 1
    src, tgt = basis_of(spec, t - 1), basis_of(spec, t)
    ell = tuple(int(x) for x in np.random.default_rng(seed).integers(0, 1000, size=nv))
    scaled = tuple(c * x for x in ell)
    assert mul_map(src, tgt, ell).rank == mul_map(src, tgt, scaled).rank


@settings(max_examples=30)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_rank_invariant_under_row_order(nv, seed):
    spec = CiSpec.random(nv, [2] * nv, seed, F)
    t = nv // 2 + 1
    ops = ops_for(F)
    M = mul_map_matrix(basis_of(spec, t - 1), basis_of(spec, t), (1,) * nv)
    perm = np.random.default_rng(seed).permutation(M.shape[0])
    assert len(ops.rref(M)[1]) == len(ops.rref(M[perm])[1])


@pytest.mark.parametrize("t", [4, 5, 6])
def test_maps_touching_zero_pieces_have_rank_zero(t):
    spec = spec_of(["x0^2", "x1^2", "x2^2"], 3)
    src, tgt = basis_of(spec, t - 1), basis_of(spec, t)
    assert tgt.dim == 0
    assert mul_map(src, tgt, (1, 2, 3)).rank == 0


def test_rational_route_matches_modular_route():
    spec = CiSpec.random(3, [2, 3, 3], 4, F)
    q = spec.over(QQ)
    for t in range(1, 7):
        src, tgt = basis_of(q, t - 1), basis_of(q, t)
        assert mul_map(src, tgt, (1, 1, 1)).rank == mul_map(basis_of(spec, t - 1), basis_of(spec, t), (1, 1, 1)).rank

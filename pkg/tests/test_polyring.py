from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wlpcheck.exactfield import DEFAULT_PRIME, QQ, PrimeField
from wlpcheck.polyring import (
    CiSpec,
    FormParseError,
    GradedForm,
    Monomial,
    count_monomials,
    enumerate_monomials,
    linear_form,
    monomial_exponents,
    monomial_rank,
    parse_form,
    random_form,
    render,
)

F = PrimeField(DEFAULT_PRIME)
F7 = PrimeField(7)


def test_enumerate_two_vars_degree_two():
    got = enumerate_monomials(2, 2)
    assert [m.exponents for m in got] == [(2, 0), (1, 1), (0, 2)]
    assert count_monomials(2, 2) == 3


def test_enumerate_degree_zero():
    assert [m.exponents for m in enumerate_monomials(4, 0)] == [(0, 0, 0, 0)]


def test_count_five_vars_degree_twelve():
    assert count_monomials(5, 12) == 1820 == comb(16, 4)
    assert len(enumerate_monomials(5, 12)) == 1820


@pytest.mark.parametrize("nv", range(1, 7))
@pytest.mark.parametrize("deg", range(0, 16))
def test_count_matches_binomial(nv, deg):
    assert count_monomials(nv, deg) == comb(nv + deg - 1, nv - 1)
    assert len(monomial_exponents(nv, deg)) == comb(nv + deg - 1, nv - 1)


@pytest.mark.parametrize("nv,deg", [(1, 4), (3, 5), (5, 7)])
def test_rank_is_position_and_order_is_descending(nv, deg):
    exps = monomial_exponents(nv, deg)
    assert monomial_rank(exps).tolist() == list(range(len(exps)))
    monos = enumerate_monomials(nv, deg)
    assert monos == sorted(monos, reverse=True)


def test_monomial_product():
    assert (Monomial((1, 0, 2)) * Monomial((0, 1, 1))).exponents == (1, 1, 3)
    assert str(Monomial((2, 0, 1))) == "x0^2*x2"


def test_difference_of_squares():
    a = parse_form("x0 + x1", field=F)
    b = parse_form("x0 - x1", field=F)
    assert a * b == parse_form("x0^2 - x1^2", field=F)


def test_product_with_zero_keeps_degree():
    f = parse_form("x0^2 + x1^2", field=F)
    z = GradedForm(2, 3, {}, F)
    prod = f * z
    assert prod.is_zero() and prod.degree == 5


def test_coefficients_reduce_mod_seven():
    assert parse_form("3*x0", field=F7) * parse_form("5*x0", field=F7) == parse_form("x0^2", field=F7)


def test_parse_example():
    f = parse_form("x0^3 + 2*x1*x2^2", 3, F)
    assert f.degree == 3 and len(f.terms) == 2
    assert f.terms[(0, 1, 2)] == 2


def test_parse_fermat_quintic():
    f = parse_form("x0^5+x1^5+x2^5+x3^5+x4^5", 5, F)
    assert f.num_vars == 5 and f.degree == 5
    assert set(f.terms) == {tuple(5 * (i == j) for j in range(5)) for i in range(5)}


def test_parse_implicit_coefficient_and_negation():
    f = parse_form("-x0*x1 + 4x1^2", 2, QQ)
    assert f.terms == {(1, 1): -1, (0, 2): 4}
    assert parse_form("x0 x1", 2, QQ) == parse_form("x0*x1", 2, QQ)


@pytest.mark.parametrize("text,offset", [
    ("x0 + x1^2", 5),
    ("x0^2 + x1", 7),
    ("x0 + $", 5),
    ("x0^", 3),
    ("x0 x1 +", 7),
    ("3*", 2),
])
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(FormParseError) as info:
        parse_form(text, field=F)
    assert info.value.offset == offset


def test_non_homogeneous_message_lists_degrees():
    with pytest.raises(FormParseError, match=r"\[1, 2\]"):
        parse_form("x0 + x1^2", field=F)


def test_variable_out_of_range():
    with pytest.raises(FormParseError) as info:
        parse_form("x0^2 + x3*x1", 2, F)
    assert info.value.offset == 7


def test_offsets_are_bytes_not_characters():
    with pytest.raises(FormParseError) as info:
        parse_form("x0 + é", field=F)
    assert info.value.offset == 5
    with pytest.raises(FormParseError) as info:
        parse_form("é", field=F)
    assert info.value.offset == 0


def test_render_zero_and_signs():
    assert render(GradedForm(3, 2, {}, F)) == "0"
    assert render(parse_form("x0^2 - 3*x0*x1", field=F)) == "x0^2 - 3*x0*x1"


def test_random_form_is_deterministic():
    assert random_form(4, 2, 17, F) == random_form(4, 2, 17, F)
    assert len(random_form(4, 2, 17, F).terms) <= 10


def test_distinct_seeds_give_distinct_forms():
    forms = {render(random_form(4, 2, s, F)) for s in range(200)}
    assert len(forms) == 200


def test_random_rational_form_bounds():
    f = random_form(3, 3, 5, QQ)
    assert all(-100 <= c <= 100 for c in f.terms.values())


def test_derivative_power_rule():
    f = parse_form("x0^4 + x1^4 + x2^4", field=F)
    assert f.derivative(0) == parse_form("4*x0^3", 3, F)
    g = parse_form("x0*x1", field=F)
    assert g.derivative(0) == parse_form("x1", 2, F)
    assert parse_form("x0^3", 2, F).derivative(1).is_zero()


def test_ci_spec_validation():
    f = parse_form("x0^2", 2, F)
    with pytest.raises(ValueError):
        CiSpec(2, (3,), (f,))
    with pytest.raises(ValueError):
        CiSpec.from_forms([f, parse_form("x0^2", 3, F)])
    with pytest.raises(ValueError):
        CiSpec.from_forms([])


def test_ci_spec_random_and_lift():
    s = CiSpec.random(3, [2, 2, 3], 9, F)
    assert s.is_square and s.degrees == (2, 2, 3)
    assert CiSpec.random(3, [2, 2, 3], 9, F).generators == s.generators
    q = s.over(QQ)
    assert all(abs(c) <= DEFAULT_PRIME // 2 for g in q.generators for c in g.terms.values())
    back = q.over(F)
    assert back.generators == s.generators


def test_linear_form():
    ell = linear_form([1, 0, 2], F)
    assert ell.degree == 1 and ell.terms == {(1, 0, 0): 1, (0, 0, 1): 2}


fields = st.sampled_from([F, F7, QQ])


@st.composite
def forms(draw, field=None, nv=None, deg=None):
    field = field or draw(fields)
    nv = nv or draw(st.integers(1, 4))
    deg = draw(st.integers(0, 4)) if deg is None else deg
    exps = monomial_exponents(nv, deg)
    picks = draw(st.lists(st.integers(0, len(exps) - 1), max_size=6))
    coeffs = draw(st.lists(st.integers(-50, 50), min_size=len(picks), max_size=len(picks)))
    terms = {}
    for k, c in zip(picks, coeffs):
        e = tuple(int(x) for x in exps[k])
        terms[e] = terms.get(e, 0) + c
    return GradedForm(nv, deg, terms, field)


@settings(max_examples=200)
@given(st.data())
def test_multiplication_commutative_and_associative(data):
    field = data.draw(fields)
    nv = data.draw(st.integers(1, 4))
    f, g, h = (data.draw(forms(field, nv)) for _ in range(3))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


@settings(max_examples=200)
@given(st.data())
def test_distributive(data):
    field = data.draw(fields)
    nv = data.draw(st.integers(1, 4))
    deg = data.draw(st.integers(0, 3))
    f = data.draw(forms(field, nv))
    g, h = data.draw(forms(field, nv, deg)), data.draw(forms(field, nv, deg))
    assert f * (g + h) == f * g + f * h


@settings(max_examples=300)
@given(forms())
def test_render_parse_round_trip(f):
    back = parse_form(render(f), f.num_vars, f.field, f.degree)
    assert back == f
    assert back.degree == f.degree


@settings(max_examples=50)
@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 2**63))
def test_round_trip_random_dense_forms(nv, deg, seed):
    f = random_form(nv, deg, seed, F)
    assert parse_form(render(f), nv, F, deg) == f


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(0, 8), st.integers(0, 2**32))
def test_rank_of_random_exponents(nv, deg, seed):
    exps = monomial_exponents(nv, deg)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(exps), size=10)
    assert monomial_rank(exps[idx]).tolist() == idx.tolist()

import json
import math
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from aslfunc.curve import CurveParams, dirichlet_coefficient
from aslfunc.cyclotomic import CycNum
from aslfunc.errors import FunctionalEquationViolated, MismatchAt
from aslfunc.kloosterman import place_values
from aslfunc.lfunction import (LPoly, analytic_rank, divide_out, l_polynomial, log_series,
                               poly_mul, product_tree, special_value, special_value_division,
                               special_value_product, verify_functional_equation, verify_series)
from aslfunc.places import count_places, place_set
from aslfunc.statistics import angle_ensemble

sympy = pytest.importorskip("sympy")
jsonschema = pytest.importorskip("jsonschema")

SMALL = [(3, 1, 1), (3, 1, 2), (3, 2, 1), (3, 2, 2), (3, 3, 1), (5, 1, 1), (5, 1, 4), (5, 2, 3),
         (7, 1, 2), (7, 2, 5), (9, 1, 1), (9, 1, 6), (9, 2, 3)]


@pytest.fixture(scope="module")
def L311():
    return l_polynomial(CurveParams(3, 1, 1))


def test_q3_a1_explicit(L311):
    T = sympy.symbols("T")
    expected = sympy.Poly(((1 - 3 * T) * (1 + 5 * T + 9 * T**2)) ** 2, T).all_coeffs()[::-1]
    assert list(L311.coeffs) == [int(c) for c in expected]
    assert L311.coeffs == (1, 4, -8, -78, -72, 324, 729)
    assert L311.b == 6 and L311.coeffs[1] == 4


@pytest.mark.parametrize("q,a,gamma", SMALL)
def test_invariants(q, a, gamma):
    params = CurveParams(q, a, gamma)
    L = l_polynomial(params)
    assert L.coeffs[0] == 1
    assert L.b == 3 * (q**a - 1)
    eps = verify_functional_equation(L)
    assert L.coeffs[-1] == eps * q**L.b
    rho = analytic_rank(L)
    assert rho == len(place_set(q, a))
    assert rho * a >= q**a - 2 * q ** (a / 2 + 1)


def test_ranks():
    assert analytic_rank(l_polynomial(CurveParams(3, 1, 1))) == 2
    assert analytic_rank(l_polynomial(CurveParams(3, 2, 1))) == 5


@pytest.mark.parametrize("q,a", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (9, 1)])
def test_rank_gamma_independent(q, a):
    ranks = {analytic_rank(l_polynomial(CurveParams(q, a, g))) for g in range(1, q)}
    want = sum(count_places(q, d) for d in range(1, a + 1) if a % d == 0)
    assert ranks == {want}


def test_special_value_q3_a1(L311):
    sv = special_value(CurveParams(3, 1, 1), L311)
    assert sv.rank == 2 and sv.sign == 1 and sv.b == 6
    assert sv.special_value == Fraction(121, 9) == 16 * Fraction(11, 12) ** 2
    assert sv.special_value * 3**6 == 9801
    assert sv.log_ratio == pytest.approx(math.log(121 / 9) / (6 * math.log(3)), rel=1e-12)
    assert round(sv.log_ratio, 4) == 0.3942


@pytest.mark.parametrize("q,a,gamma", SMALL)
def test_special_value_routes_and_bounds(q, a, gamma):
    params = CurveParams(q, a, gamma)
    L = l_polynomial(params)
    sv = special_value(params, L)
    assert special_value_division(L) == special_value_product(params)
    n = sv.special_value * Fraction(q) ** L.b
    assert n.denominator == 1 and n > 0
    assert -1 <= sv.log_ratio
    ens = angle_ensemble(params)
    upper = sum(math.log(4 * d) for d in ens.degrees) / (L.b * math.log(q))
    assert sv.log_ratio <= upper + 1e-12
    # sin^2 form, float route
    log_sin_form = sum(math.log(4 * d) + 2 * math.log(math.sin(t)) for d, t in zip(ens.degrees, ens.theta))
    assert abs(log_sin_form - sv.log_value) < 1e-6


def test_special_value_sign(L311):
    assert verify_functional_equation(L311) == 1


def test_functional_equation_mutation(L311):
    mid = L311.b // 2
    for k in range(L311.b + 1):
        c = list(L311.coeffs)
        c[k] += 1
        mutated = LPoly(3, 1, 1, tuple(c))
        if k == mid:
            # the middle coefficient is its own partner when eps = +1
            assert verify_functional_equation(mutated) == 1
            continue
        with pytest.raises(FunctionalEquationViolated):
            verify_functional_equation(mutated)


def test_series_examples(L311):
    params = CurveParams(3, 1, 1)
    assert log_series(L311, 3) == [4, -32, -74]
    rep = verify_series(params, L311, 3)
    assert rep.ok and [r[1] for r in rep.rows] == [4, -32, -74]
    assert verify_series(params, L311, 0).rows == ()
    c = list(L311.coeffs)
    c[2] += 1
    with pytest.raises(MismatchAt) as exc:
        verify_series(params, LPoly(3, 1, 1, tuple(c)), 3)
    assert exc.value.n == 2


@pytest.mark.parametrize("q,a,gamma,n_max", [(3, 2, 2, 3), (5, 1, 3, 3), (5, 2, 1, 2), (7, 1, 6, 2), (9, 1, 2, 2)])
def test_series_matches_point_counts(q, a, gamma, n_max):
    params = CurveParams(q, a, gamma)
    assert verify_series(params, l_polynomial(params), n_max).ok


def test_log_series_by_sympy(L311):
    T = sympy.symbols("T")
    poly = sum(c * T**k for k, c in enumerate(L311.coeffs))
    series = sympy.series(sympy.log(poly), T, 0, 7).removeO()
    assert [int(series.coeff(T, n) * n) for n in range(1, 7)] == log_series(L311, 6)


@pytest.mark.parametrize("q,a,gamma", [(5, 1, 2), (7, 1, 3), (5, 2, 1), (7, 2, 4), (25, 1, 3)])
def test_character_independence(q, a, gamma):
    params = CurveParams(q, a, gamma)
    ref = l_polynomial(params)
    for char in range(2, params.p):
        assert l_polynomial(params, char=char) == ref
    assert l_polynomial(params, embedding=params.p - 1) == ref


def test_debug_mode_agrees():
    params = CurveParams(5, 2, 2)
    assert l_polynomial(params, debug=True) == l_polynomial(params)


def test_json_round_trip_and_schema(L311):
    schema = json.loads(resources.files("aslfunc").joinpath("schemas/lpoly.schema.json").read_text())
    obj = L311.to_json()
    payload = json.loads(json.dumps(obj))
    jsonschema.validate(payload, schema)
    assert LPoly.from_json(payload) == L311
    sv = special_value(CurveParams(3, 1, 1), L311).as_dict()
    payload.update(sv)
    jsonschema.validate(json.loads(json.dumps(payload)), schema)
    assert payload["special_value"] == "121/9"


def test_divide_out():
    # (1 - 3T)^2 (1 + T)
    assert divide_out([1, -5, 3, 9], 3) == (2, [1, 1])
    assert divide_out([1, 1], 3) == (0, [1, 1])


def naive_product(f, g, p):
    out = [CycNum.from_int(p, 0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + CycNum(p, x) * CycNum(p, y)
    return [list(c.coords) for c in out]


def cyc_poly(p):
    row = st.lists(st.integers(-10**6, 10**6), min_size=p - 1, max_size=p - 1)
    return st.lists(row, min_size=1, max_size=6)


@pytest.mark.parametrize("p", [3, 5, 7])
@given(data=st.data())
def test_poly_mul_against_naive(p, data):
    f = data.draw(cyc_poly(p))
    g = data.draw(cyc_poly(p))
    assert poly_mul(f, g, p) == naive_product(f, g, p)


@given(st.lists(st.lists(st.integers(-50, 50), min_size=4, max_size=4), min_size=1, max_size=4),
       st.integers(1, 7))
def test_product_tree_is_associative(row_polys, n):
    p = 5
    factors = [row_polys for _ in range(n)]
    tree = product_tree(factors, p)
    acc = factors[0]
    for f in factors[1:]:
        acc = naive_product(acc, f, p)
    assert tree == [list(r) for r in acc]

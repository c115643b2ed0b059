"""Exact rational-function arithmetic, canonical form, and region expansion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mosva.laurent import LaurentPoly
from mosva.ratfun import (
    ITERATE_REGION,
    ITERATE_SUBSTITUTION,
    ITERATE_SUBSTITUTION_INVERSE,
    RatFun,
    expand_in_region,
    pole_diff,
    pole_poly,
    pole_sum,
    pole_var,
    ratfun_arith,
    ratfun_canonicalize,
    ratfun_eq,
    substitute_vars,
    uniform_window,
)

Z = ("z1", "z2")
DIFF12 = pole_diff("z1", "z2")[0]


def lp(variables, terms):
    return LaurentPoly(variables, {e: Fraction(c) for e, c in terms.items()})


def one_over_diff(k=1):
    return RatFun(LaurentPoly.const(1, Z), {DIFF12: k})


# -- arithmetic -------------------------------------------------------------


def test_mul_adds_pole_exponents():
    assert ratfun_arith(one_over_diff(), one_over_diff(), "mul") == one_over_diff(2)


def test_add_zero_is_identity():
    r = RatFun(lp(Z, {(1, 0): 3}), {DIFF12: 2})
    assert ratfun_arith(r, RatFun.zero(), "add") == r


def test_add_cross_multiplies():
    # 1/(z1-z2) + 1/z1 = (2*z1 - z2) / (z1 * (z1 - z2)), worked by hand
    a = one_over_diff()
    b = RatFun(LaurentPoly.const(1, ("z1",)), {pole_var("z1"): 1})
    out = ratfun_arith(a, b, "add")
    assert out.numer == lp(Z, {(1, 0): 2, (0, 1): -1})
    assert out.poles == {pole_var("z1"): 1, DIFF12: 1}
    assert out.render() == "(2*z1 - z2) / (z1^1 * (z1 - z2)^1)"


def test_sub_self_is_zero():
    r = RatFun(lp(Z, {(2, 1): 5}), {DIFF12: 3, pole_var("z2"): 1})
    assert ratfun_arith(r, r, "sub").is_zero()


# -- canonical form ---------------------------------------------------------


def test_canonicalize_cancels_common_factor():
    r = RatFun(lp(Z, {(1, 0): 1, (0, 1): -1}), {DIFF12: 2})
    assert r.numer == LaurentPoly.const(1, Z)
    assert r.poles == {DIFF12: 1}


def test_canonicalize_zero():
    r = RatFun(LaurentPoly.zero(("z1",)), {pole_var("z1"): 2})
    assert r.is_zero()
    assert r.poles == {}


def test_canonicalize_division_oracle():
    # (z1*z2 - z2^2) / (z1-z2)^2 -> z2 / (z1-z2); checked by multiplying back
    numer = lp(Z, {(1, 1): 1, (0, 2): -1})
    r = RatFun(numer, {DIFF12: 2})
    assert r.numer == lp(Z, {(0, 1): 1})
    assert r.poles == {DIFF12: 1}
    assert r.numer * pole_poly(DIFF12, 1, Z) == numer


def test_canonicalize_idempotent():
    r = RatFun(lp(Z, {(2, 0): 1, (1, 1): -1}), {DIFF12: 1, pole_var("z1"): 2})
    again = ratfun_canonicalize(r)
    assert again.numer == r.numer and again.poles == r.poles


def test_negative_exponents_fold_into_var_poles():
    r = RatFun(lp(("z1",), {(-2,): 1}), {})
    assert r.poles == {pole_var("z1"): 2}
    assert r.numer == LaurentPoly.const(1, ("z1",))


# -- equality ---------------------------------------------------------------


def test_eq_reflexive():
    assert ratfun_eq(one_over_diff(2), one_over_diff(2))


def test_eq_sign_convention():
    # 1/(z1-z2) vs 1/(z2-z1): differ by a sign
    factor, sign = pole_diff("z2", "z1")
    assert factor == DIFF12 and sign == -1
    other = RatFun(LaurentPoly.const(sign, Z), {factor: 1})
    assert not ratfun_eq(one_over_diff(), other)
    assert ratfun_eq(one_over_diff().scale(-1), other)


def test_eq_factors_cancel():
    r = RatFun(lp(Z, {(2, 0): 1, (0, 2): -1}), {DIFF12: 1})
    assert ratfun_eq(r, RatFun(lp(Z, {(1, 0): 1, (0, 1): 1})))


def test_diff_double_negation_round_trip():
    f1, s1 = pole_diff("z2", "z1")
    f2, s2 = pole_diff(*f1[1:])
    assert f2 == f1 and s1 == -1 and s2 == 1


# -- region expansion --------------------------------------------------------


def test_expand_binomial_series():
    out = expand_in_region(
        one_over_diff(2), ("z1", "z2"), {"z1": (-4, -2), "z2": (0, 2)}
    )
    assert out == lp(Z, {(-2, 0): 1, (-3, 1): 2, (-4, 2): 3})


def test_expand_pure_var_pole():
    r = RatFun(LaurentPoly.const(1, ("z1",)), {pole_var("z1"): 1})
    out = expand_in_region(r, ("z1",), {"z1": (-3, 3)})
    assert out == lp(("z1",), {(-1,): 1})


def test_expand_iterate_substitution_collapses_diff():
    # (z1-z2)^-1 becomes exactly x0^-1 after z1 -> x2+x0, z2 -> x2
    s = substitute_vars(one_over_diff(), ITERATE_SUBSTITUTION)
    assert s.poles == {pole_var("x0"): 1}
    out = expand_in_region(s, ITERATE_REGION, {"x0": (-2, 2), "x2": (-2, 2)})
    assert out == lp(("x0", "x2"), {(-1, 0): 1})


def test_expand_region_must_cover_variables():
    with pytest.raises(ValueError):
        expand_in_region(one_over_diff(), ("z1",), {"z1": (-2, 2)})


def test_expand_reversed_region_flips_expansion_variable():
    out = expand_in_region(
        one_over_diff(1), ("z2", "z1"), {"z1": (0, 2), "z2": (-4, 0)}
    )
    # (z1-z2)^-1 = -(z2-z1)^-1 expands in nonnegative powers of z1
    assert out == lp(Z, {(0, -1): -1, (1, -2): -1, (2, -3): -1})


# -- substitution ------------------------------------------------------------


def test_substitute_forward_and_back():
    s = substitute_vars(one_over_diff(2), ITERATE_SUBSTITUTION)
    assert s.poles == {pole_var("x0"): 2}
    back = substitute_vars(s, ITERATE_SUBSTITUTION_INVERSE)
    assert back == one_over_diff(2)


def test_substitute_inverse_of_monomial():
    r = RatFun(LaurentPoly.const(1, ("x0", "x2")), {pole_var("x0"): 1, pole_var("x2"): 1})
    out = substitute_vars(r, ITERATE_SUBSTITUTION_INVERSE)
    assert out.poles == {DIFF12: 1, pole_var("z2"): 1}


def test_substitute_var_pole_to_sum_factor():
    r = RatFun(LaurentPoly.const(1, ("z1",)), {pole_var("z1"): 1})
    s = substitute_vars(r, ITERATE_SUBSTITUTION)
    assert s.poles == {pole_sum("x0", "x2"): 1}
    # geometric-series oracle: (x2+x0)^-1 = sum (-1)^t x2^(-1-t) x0^t for |x2|>|x0|
    out = expand_in_region(s, ("x2", "x0"), {"x0": (0, 3), "x2": (-4, 0)})
    expect = {(t, -1 - t): (-1) ** t for t in range(4)}
    assert out == lp(("x0", "x2"), expect)
    # multiplying the truncated series by (x2+x0) gives 1 up to window edge
    prod = out * lp(("x0", "x2"), {(1, 0): 1, (0, 1): 1})
    assert prod.filter_window({"x0": (0, 3), "x2": (-3, 0)}) == lp(
        ("x0", "x2"), {(0, 0): 1}
    )


def test_substitute_rejects_singular_map():
    with pytest.raises(ValueError):
        substitute_vars(one_over_diff(), {"z1": {"x0": 1}, "z2": {"x0": 1}})


# -- rendering ----------------------------------------------------------------


def test_render_polynomial_only():
    assert RatFun(lp(Z, {(1, 0): 2, (0, 1): -1})).render() == "2*z1 - z2"


def test_render_single_term_numerator():
    assert one_over_diff(2).render() == "1 / ((z1 - z2)^2)"


def test_json_round_mirror():
    j = one_over_diff(2).to_json()
    assert j["poles"] == [{"kind": "diff", "a": "z1", "b": "z2", "exponent": 2}]
    assert j["numerator"]["terms"] == [{"exponents": [0, 0], "coeff": "1"}]


# -- property tests -----------------------------------------------------------

VARS3 = ("z1", "z2", "z3")


@st.composite
def ratfuns(draw):
    nvars = draw(st.integers(2, 3))
    names = VARS3[:nvars]
    nterms = draw(st.integers(1, 3))
    terms = {}
    for _ in range(nterms):
        e = tuple(draw(st.integers(0, 2)) for _ in names)
        c = draw(st.integers(-4, 4))
        if c:
            terms[e] = Fraction(c)
    if not terms:
        terms[(0,) * nvars] = Fraction(1)
    poles = {}
    for v in names:
        k = draw(st.integers(0, 2))
        if k:
            poles[pole_var(v)] = k
    for a, b in [("z1", "z2"), ("z1", "z3"), ("z2", "z3")][: nvars - 1]:
        k = draw(st.integers(0, 2))
        if k:
            poles[pole_diff(a, b)[0]] = k
    return RatFun(LaurentPoly(names, terms), poles)


def leading_exponent(r, region):
    """Lex-greatest exponent of the expansion of a nonzero canonical r.

    Each pole-factor series attains its lex-max at its t=0 term (exponent -N
    on the region-bigger variable), and the numerator at its lex-max monomial;
    the product of these unique maxima cannot cancel.
    """
    rank = {v: i for i, v in enumerate(region)}
    lead = {v: 0 for v in region}
    for f, k in r.poles.items():
        if f[0] == "var":
            lead[f[1]] -= k
        else:
            big = f[1] if rank[f[1]] < rank[f[2]] else f[2]
            lead[big] -= k
    numer_lead = max(
        tuple(e[r.numer.vars.index(v)] if v in r.numer.vars else 0 for v in region)
        for e in r.numer.terms
    )
    return tuple(l + x for l, x in zip((lead[v] for v in region), numer_lead))


@settings(max_examples=60, deadline=None)
@given(ratfuns(), ratfuns())
def test_property_eq_agrees_with_expansion(r, s):
    region = tuple(v for v in VARS3 if v in set(r.vars) | set(s.vars)) or ("z1",)
    diff = ratfun_arith(r, s, "sub")
    if ratfun_eq(r, s):
        window = uniform_window(region, -6, 6)
        assert expand_in_region(r, region, window) == expand_in_region(s, region, window)
    else:
        e = leading_exponent(diff, region)
        window = {v: (x - 1, x + 1) for v, x in zip(region, e)}
        out = expand_in_region(diff, region, window)
        assert dict(out.terms).get(tuple(e)) not in (None, 0)


@settings(max_examples=60, deadline=None)
@given(ratfuns(), ratfuns())
def test_property_expansion_multiplicative(r, s):
    region = tuple(v for v in VARS3 if v in set(r.vars) | set(s.vars)) or ("z1",)
    window = uniform_window(region, -4, 4)
    wide = uniform_window(region, -14, 14)
    lhs = expand_in_region(ratfun_arith(r, s, "mul"), region, window)
    rhs = expand_in_region(r, region, wide) * expand_in_region(s, region, wide)
    assert lhs == rhs.align(lhs.vars).filter_window(window)


@settings(max_examples=60, deadline=None)
@given(ratfuns())
def test_property_canonicalize_idempotent(r):
    c1 = ratfun_canonicalize(r)
    c2 = ratfun_canonicalize(c1)
    assert c1.numer == c2.numer and c1.poles == c2.poles

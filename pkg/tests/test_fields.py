"""Vertex operator coefficients against directly differentiated field series."""

import random
from fractions import Fraction

from mosva.halgebra import (
    HSpace,
    basis_words_up_to,
    derivative_elem,
    vacuum_elem,
    word_elem,
    word_weight,
)
from mosva.laurent import LaurentPoly
from mosva.fields import (
    field_coefficient,
    normal_order_monomial,
    product_series_bruteforce,
    series_lower_bound,
    vertex_coefficient,
    vertex_series,
)
from mosva.modules import (
    ModulePresentation,
    dual_term,
    pairing,
    state,
    vacuum_state,
    welem_add,
    welem_scale,
)

H1 = HSpace.identity(1)
H2 = HSpace.identity(2)
TRIV1 = ModulePresentation.trivial(1)
TRIV2 = ModulePresentation.trivial(2)


def reference_field_coefficient(m, n):
    """Differentiate x^{-n-1} by hand (m-1) times and divide by (m-1)!."""
    coeff = Fraction(1)
    exponent = -n - 1
    for _ in range(m - 1):
        coeff *= exponent
        exponent -= 1
    for j in range(1, m):
        coeff /= j
    assert coeff.denominator == 1
    return int(coeff)


def test_field_coefficient_matches_differentiation():
    for m in range(1, 6):
        for n in range(-6, 7):
            assert field_coefficient(m, n) == reference_field_coefficient(m, n)


def test_field_coefficient_examples():
    assert field_coefficient(1, 5) == 1 and field_coefficient(1, -9) == 1
    assert field_coefficient(2, -3) == 2
    assert field_coefficient(2, 1) == -2


def test_normal_order_moves_negatives_first():
    assert normal_order_monomial([(0, 2), (1, -1)]) == ((1, -1), (0, 2))


def test_normal_order_stable_when_sorted():
    mono = ((0, -1), (1, -2))
    assert normal_order_monomial(mono) == mono


def test_normal_order_three_blocks():
    mono = [(0, 1), (1, 0), (2, -1), (3, 1)]
    assert normal_order_monomial(mono) == ((2, -1), (0, 1), (3, 1), (1, 0))


# -- single coefficients -----------------------------------------------------


def test_identity_vertex_operator():
    w = state(((0, 2), (1, 1)))
    assert vertex_coefficient(H2, TRIV2, vacuum_elem(), -1, w) == w
    for s in (-3, -2, 0, 1, 2):
        assert vertex_coefficient(H2, TRIV2, vacuum_elem(), s, w) == {}


def test_creation_constant_term():
    u = word_elem(((0, 1),))
    out = vertex_coefficient(H1, TRIV1, u, -1, vacuum_state())
    assert out == state(((0, 1),))


def test_single_contraction_coefficient():
    u = word_elem(((0, 1),))
    out = vertex_coefficient(H1, TRIV1, u, 1, state(((0, 1),)))
    assert out == vacuum_state()


# -- series ------------------------------------------------------------------


def test_series_of_derivative_field():
    # Y of a(-2)1 on the vacuum: coefficient of x^e is (e+1) a(-e-2)1 for e >= 0
    u = word_elem(((0, 2),))
    out = vertex_series(H1, TRIV1, u, vacuum_state(), -1, 2)
    assert out == {
        0: state(((0, 2),)),
        1: welem_scale(state(((0, 3),)), 2),
        2: welem_scale(state(((0, 4),)), 3),
    }


def test_series_identity_only_constant():
    out = vertex_series(H2, TRIV2, vacuum_elem(), vacuum_state(), -4, 4)
    assert out == {0: vacuum_state()}


def test_series_with_annihilation():
    u = word_elem(((0, 1),))
    w = state(((0, 1),))
    out = vertex_series(H1, TRIV1, u, w, -2, 0)
    assert out == {
        -2: vacuum_state(),
        0: state(((0, 1), (0, 1))),
    }


def test_series_lower_bound_guarantees_vanishing():
    u = word_elem(((0, 1), (0, 2)))
    w = state(((0, 1),))
    bound = series_lower_bound(H1, TRIV1, u, w)
    assert bound == -4
    assert vertex_series(H1, TRIV1, u, w, bound - 3, bound - 1) == {}


def test_series_lower_bound_attained_for_full_contraction():
    u = word_elem(((0, 1),))
    w = state(((0, 1),))
    bound = series_lower_bound(H1, TRIV1, u, w)
    assert bound == -2
    assert vertex_series(H1, TRIV1, u, w, bound, bound) == {bound: vacuum_state()}


def test_creation_property_no_negative_powers():
    for uword in basis_words_up_to(2, 4):
        u = word_elem(uword)
        low = vertex_series(H2, TRIV2, u, vacuum_state(), -6, -1)
        assert low == {}
        const = vertex_coefficient(H2, TRIV2, u, -1, vacuum_state())
        assert const == state(uword)


def test_weight_shift_of_coefficients():
    rng = random.Random(4)
    words = basis_words_up_to(2, 3)
    for _ in range(50):
        uword = rng.choice(words)
        wword = rng.choice(words)
        s = rng.randint(-4, 4)
        out = vertex_coefficient(H2, TRIV2, word_elem(uword), s, state(wword))
        expected = word_weight(uword) + word_weight(wword) - s - 1
        for (word, _idx) in out:
            assert word_weight(word) == expected


def test_finite_lower_truncation():
    rng = random.Random(14)
    words = basis_words_up_to(2, 3)
    for _ in range(40):
        uword, wword = rng.choice(words), rng.choice(words)
        s = word_weight(uword) + word_weight(wword) + rng.randint(0, 3)
        assert vertex_coefficient(H2, TRIV2, word_elem(uword), s, state(wword)) == {}


# -- identities checked coefficientwise over a window ---------------------------


def d_of(mod, w):
    from mosva.modules import apply_d

    return apply_d(mod, w)


def test_grading_bracket_on_samples():
    words = basis_words_up_to(2, 3)
    rng = random.Random(21)
    for _ in range(25):
        uword, wword = rng.choice(words), rng.choice(words)
        u, w = word_elem(uword), state(wword)
        for e in range(-4, 3):
            s = -e - 1
            uw = vertex_coefficient(H2, TRIV2, u, s, w)
            lhs = welem_add(
                d_of(TRIV2, uw),
                welem_scale(vertex_coefficient(H2, TRIV2, u, s, d_of(TRIV2, w)), -1),
            )
            rhs = welem_scale(uw, word_weight(uword) + e)
            assert lhs == rhs


def test_translation_derivative_and_commutator():
    from mosva.modules import apply_D

    words = basis_words_up_to(2, 3)
    rng = random.Random(22)
    for _ in range(25):
        uword, wword = rng.choice(words), rng.choice(words)
        u, w = word_elem(uword), state(wword)
        du = derivative_elem(u)
        for e in range(-5, 3):
            derivative = welem_scale(
                vertex_coefficient(H2, TRIV2, u, -e - 2, w), e + 1
            )
            translated = vertex_coefficient(H2, TRIV2, du, -e - 1, w)
            uw = vertex_coefficient(H2, TRIV2, u, -e - 1, w)
            commutator = welem_add(
                apply_D(TRIV2, uw),
                welem_scale(vertex_coefficient(H2, TRIV2, u, -e - 1, apply_D(TRIV2, w)), -1),
            )
            assert derivative == translated == commutator


def test_single_field_recombination():
    # Y(a0(-m0)u, x) agrees with the contraction-corrected collision of
    # Y(a0(-m0)1, x1) Y(u, x2), diagonal-summed against sample duals.
    h, mod = H2, TRIV2
    rng = random.Random(23)
    words = basis_words_up_to(2, 2)
    duals = [dual_term(wd) for wd in basis_words_up_to(2, 5)]
    for _ in range(12):
        m0 = rng.randint(1, 2)
        a0 = rng.randrange(2)
        uword = rng.choice(words)
        combined = word_elem(((a0, m0),) + uword)
        head = word_elem(((a0, m0),))
        tail = word_elem(uword)
        w = vacuum_state()
        for f in rng.sample(duals, 8):
            for e in range(-4, 3):
                lhs = pairing(f, vertex_coefficient(h, mod, combined, -e - 1, w))
                # corrected product, coefficient of total exponent e
                total = Fraction(0)
                for e2 in range(-6, 7):
                    e1 = e - e2
                    mid = vertex_coefficient(h, mod, tail, -e2 - 1, w)
                    if mid:
                        total += pairing(
                            f, vertex_coefficient(h, mod, head, -e1 - 1, mid)
                        )
                for p, (b, mp) in enumerate(uword):
                    scalar = mp * h.pairing(a0, b) * field_coefficient(m0, mp)
                    if not scalar:
                        continue
                    rest = word_elem(uword[:p] + uword[p + 1:])
                    # (x1-x2)^(-m0-mp) restricted to the diagonal exponent e
                    exp = -(m0 + mp)
                    drop = vertex_coefficient(h, mod, rest, -(e - exp) - 1, w)
                    total -= scalar * pairing(f, drop)
                assert lhs == total


# -- brute-force multi-operator series ----------------------------------------


def test_bruteforce_constant_for_identity_operators():
    f = dual_term(((0, 1),))
    w = state(((0, 1),))
    out = product_series_bruteforce(
        H2, TRIV2, [vacuum_elem(), vacuum_elem()], w, f,
        {"z1": (-3, 3), "z2": (-3, 3)},
    )
    assert out == LaurentPoly(("z1", "z2"), {(0, 0): Fraction(1)})


def test_bruteforce_two_point_function():
    u = word_elem(((0, 1),))
    out = product_series_bruteforce(
        H1, TRIV1, [u, u], vacuum_state(), dual_term(),
        {"z1": (-6, 4), "z2": (-6, 4)},
    )
    # expansion of (z1-z2)^-2: sum (t+1) z1^(-2-t) z2^t
    expect = {(-2 - t, t): Fraction(t + 1) for t in range(5)}
    assert out == LaurentPoly(("z1", "z2"), expect)


def test_bruteforce_noncommutativity_witness():
    f = dual_term(((0, 1), (1, 1)))
    w = vacuum_state()
    win = {"z1": (-4, 4), "z2": (-4, 4)}
    a1, a2 = word_elem(((0, 1),)), word_elem(((1, 1),))
    direct = product_series_bruteforce(H2, TRIV2, [a1, a2], w, f, win)
    swapped = product_series_bruteforce(H2, TRIV2, [a2, a1], w, f, win)
    assert direct == LaurentPoly(("z1", "z2"), {(0, 0): Fraction(1)})
    assert swapped.is_zero()

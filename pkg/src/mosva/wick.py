"""Closed-form contraction of products and iterates of vertex operators.

A product of normal-ordered groups of derivative fields reduces to a sum of
terms, each a pole monomial times one surviving normal-ordered product.  The
contraction pairs always join a factor of an earlier group to a factor of a
later group; for one two-group step the pattern set is every pair of
equal-size subsets together with every bijection between them, each pattern
counted once.  (Restricting to one order-reversing pairing per subset pair
undercounts: on a(-1)a(-1)1 squared the two-point value is 2/(z1-z2)^4, not
1/(z1-z2)^4, as two annihilation routes survive.)  The noncommutativity shows
up elsewhere: surviving factors keep their original order within each group,
and that order is what the resulting creation words remember.

A pair (left factor of order m at x, right factor of order n at y) contributes
the scalar n * (a, b) * binom(-n-1, m-1) and the pole (x - y)^(m+n).  Products
of several operators fold this two-group step left to right.  Iterates use the
same pairing patterns with the pole on the inner variable; surviving left
factors become fields evaluated at the shifted point, kept symbolic under a
dedicated variable tag until matrix coefficients are extracted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product as iproduct
from math import ceil, floor
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .halgebra import FreeElem, HSpace
from .laurent import LaurentPoly, sort_vars
from .modules import (
    DualFunctional,
    ModulePresentation,
    WElem,
    key_weight,
)
from .fields import _mode_tuples, apply_monomial, binomial
from .ratfun import PoleFactor, RatFun, pole_diff, pole_var

# a derivative-field factor bound to a variable: (variable, basis index, order)
TaggedFactor = Tuple[str, int, int]

SHIFTED_VAR = "x2+x0"  # evaluation point of surviving left factors of an iterate
INNER_VAR = "x2"


@dataclass(frozen=True)
class Block:
    """One normal-ordered group of derivative fields at a common variable."""

    var: str
    factors: Tuple[Tuple[int, int], ...]  # (basis index, order m >= 1)

    def tagged(self) -> Tuple[TaggedFactor, ...]:
        return tuple((self.var, i, m) for i, m in self.factors)


@dataclass
class ContractionTerm:
    """scalar * prod(pole factors)^(-exponent) * normal-ordered residual."""

    scalar: Fraction
    poles: Dict[PoleFactor, int]
    residual: Tuple[TaggedFactor, ...]


def commutator_pm(h: HSpace, a: int, m: int, b: int, n: int) -> Tuple[Fraction, int]:
    """Scalar and pole exponent of one annihilation/creation contraction.

    The order-(m-1) derivative annihilation field at x against the order-(n-1)
    derivative creation field at y collapses to
    n*(a,b)*binom(-n-1, m-1) * (x-y)^-(m+n).
    """
    if m < 1 or n < 1:
        raise ValueError("derivative orders must be >= 1")
    return n * h.pairing(a, b) * binomial(-n - 1, m - 1), m + n


def _pattern_pairs(
    k: int, l: int, restricted: bool = False
) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Index pairings between a k-factor and an l-factor group.

    The correct combinatorics enumerates every pair of equal-size subsets and
    every bijection between them, once each.  restricted=True keeps only the
    order-reversing pairing per subset pair; it exists so tests can pin, via
    the series oracle, that the extra bijections are really there.
    """
    for i in range(min(k, l) + 1):
        for ps in combinations(range(k), i):
            for qs in combinations(range(l), i):
                if restricted:
                    yield tuple(zip(reversed(ps), qs))
                else:
                    for perm in permutations(ps):
                        yield tuple(zip(perm, qs))


def _contract_tagged(
    h: HSpace,
    left: Sequence[TaggedFactor],
    right: Sequence[TaggedFactor],
    restricted: bool = False,
) -> List[Tuple[Fraction, Dict[PoleFactor, int], Tuple[TaggedFactor, ...]]]:
    out = []
    for pairs in _pattern_pairs(len(left), len(right), restricted):
        scalar = Fraction(1)
        poles: Dict[PoleFactor, int] = {}
        dead = False
        for p, q in pairs:
            lv, a, m = left[p]
            rv, b, n = right[q]
            c, exponent = commutator_pm(h, a, m, b, n)
            if not c:
                dead = True
                break
            scalar *= c
            factor, sign = pole_diff(lv, rv)
            if sign < 0 and exponent % 2:
                scalar = -scalar
            poles[factor] = poles.get(factor, 0) + exponent
        if dead:
            continue
        used_p = {p for p, _ in pairs}
        used_q = {q for _, q in pairs}
        residual = tuple(f for t, f in enumerate(left) if t not in used_p) + tuple(
            f for t, f in enumerate(right) if t not in used_q
        )
        out.append((scalar, poles, residual))
    return out


def contract_two_blocks(h: HSpace, left: Block, right: Block) -> List[ContractionTerm]:
    """Complete contraction expansion of a product of two normal-ordered groups."""
    if left.var == right.var:
        raise ValueError("blocks must carry distinct variables")
    return [
        ContractionTerm(scalar, poles, residual)
        for scalar, poles, residual in _contract_tagged(h, left.tagged(), right.tagged())
    ]


def reduce_blocks(h: HSpace, blocks: Sequence[Block]) -> List[ContractionTerm]:
    """Left-to-right fold of the two-group contraction over n groups.

    Every contraction joins a factor of an earlier block to a factor of a
    later block; variable tags travel with their factors, so the merged
    residual remembers where each survivor came from.
    """
    seen = set()
    for b in blocks:
        if b.var in seen:
            raise ValueError("blocks must carry distinct variables")
        seen.add(b.var)
    if not blocks:
        return [ContractionTerm(Fraction(1), {}, ())]
    terms = [ContractionTerm(Fraction(1), {}, blocks[0].tagged())]
    for block in blocks[1:]:
        nxt: List[ContractionTerm] = []
        for term in terms:
            for scalar, poles, residual in _contract_tagged(
                h, term.residual, block.tagged()
            ):
                merged = dict(term.poles)
                for fct, k in poles.items():
                    merged[fct] = merged.get(fct, 0) + k
                nxt.append(ContractionTerm(term.scalar * scalar, merged, residual))
        terms = nxt
    return terms


# -- matrix coefficients -------------------------------------------------------


def _residual_pairing_table(
    h: HSpace,
    mod: ModulePresentation,
    residual: Sequence[TaggedFactor],
    w: WElem,
    totals: Iterable[int],
) -> Dict[Tuple[Tuple, int], LaurentPoly]:
    """Apply a normal-ordered residual to w, keyed by resulting basis pair.

    `totals` lists the admissible annihilation totals (each fixes one target
    weight per w term); only mode tuples with those totals are enumerated.
    Returns, per resulting basis pair, the Laurent polynomial in the
    residual's variables that multiplies it.
    """
    return _pairing_table_cached(
        h,
        mod,
        tuple(residual),
        tuple(sorted(w.items())),
        tuple(sorted(set(totals))),
    )


@lru_cache(maxsize=100000)
def _pairing_table_cached(
    h: HSpace,
    mod: ModulePresentation,
    residual: Tuple[TaggedFactor, ...],
    w_items: Tuple[Tuple[Tuple[Tuple, int], Fraction], ...],
    totals: Tuple[int, ...],
) -> Dict[Tuple[Tuple, int], LaurentPoly]:
    # residual signatures recur heavily across operator pairs; callers must
    # not mutate the returned tables
    variables = sort_vars([v for v, _, _ in residual])
    orders = tuple(m for _, _, m in residual)
    indices = [i for _, i, _ in residual]
    vslot = {v: t for t, v in enumerate(variables)}
    allow_zero = mod.has_zero_mode_action()
    table: Dict[Tuple[Tuple, int], Dict[Tuple[int, ...], Fraction]] = {}
    for (word, idx), wcoeff in w_items:
        wt = key_weight(mod, (word, idx))
        budget = int(wt - mod.min_weight)
        creation_only = budget == 0 and not allow_zero
        for total in totals:
            for modes, c in _mode_tuples(orders, total, total, budget, allow_zero):
                val0 = c if wcoeff == 1 else wcoeff * c
                if creation_only:
                    prefix = tuple(zip(indices, (-n for n in modes)))
                    applied = {(prefix + word, idx): val0}
                else:
                    mono = tuple(zip(indices, modes))
                    applied = apply_monomial(h, mod, mono, word, idx, val0)
                    if not applied:
                        continue
                exps = [0] * len(variables)
                for (v, _i, m), n in zip(residual, modes):
                    exps[vslot[v]] += -n - m
                evec = tuple(exps)
                for key, val in applied.items():
                    slot = table.get(key)
                    if slot is None:
                        slot = table[key] = {}
                    got = slot.get(evec)
                    if got is None:
                        slot[evec] = val
                    else:
                        got = got + val
                        if got:
                            slot[evec] = got
                        else:
                            del slot[evec]
    return {
        key: LaurentPoly(variables, terms)
        for key, terms in table.items()
        if terms
    }


def matrix_coeff_normal_ordered(
    h: HSpace,
    mod: ModulePresentation,
    term: ContractionTerm,
    f: DualFunctional,
    w: WElem,
) -> LaurentPoly:
    """Exact Laurent polynomial <f, :residual: w> in the residual's variables.

    The term's scalar and pole monomial are not included; they are assembled
    by the callers.  Finite because creation must land in f's support while
    annihilation is capped by w's height above the module weight floor.
    """
    variables = sort_vars([v for v, _, _ in term.residual])
    totals = set()
    for key_w in w:
        for key_f in f:
            t = key_weight(mod, key_w) - key_weight(mod, key_f)
            if t.denominator == 1:
                totals.add(int(t))
    table = _residual_pairing_table(h, mod, term.residual, w, totals)
    out = LaurentPoly.zero(variables)
    for key, poly in table.items():
        c = f.get(key)
        if c:
            out = out + poly.scale(c)
    return out


def _accumulate_ratfun(
    acc: Dict[Tuple, Tuple[Dict, LaurentPoly]], poles: Mapping, poly: LaurentPoly
):
    key = tuple(sorted(poles.items()))
    got = acc.get(key)
    if got is None:
        acc[key] = (dict(poles), poly)
    else:
        acc[key] = (got[0], got[1] + poly)


def _assemble_ratfun(acc: Dict) -> RatFun:
    total = RatFun.zero()
    for poles, poly in acc.values():
        if not poly.is_zero():
            total = total + RatFun(poly, poles)
    return total


def blocks_for_words(words: Sequence) -> List[Block]:
    return [Block(f"z{j + 1}", tuple(word)) for j, word in enumerate(words)]


def matrix_coeff_product(
    h: HSpace,
    mod: ModulePresentation,
    us: Sequence[FreeElem],
    f: DualFunctional,
    w: WElem,
) -> RatFun:
    """Exact rational function <f, Y(u_1, z1)...Y(u_n, zn) w>.

    The region expansion of the result in |z1| > ... > |zn| > 0 agrees with
    the series-level evaluation; poles sit only at z_i = 0 and z_i = z_j.
    """
    acc: Dict = {}
    for combo in iproduct(*[u.items() for u in us]):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        blocks = blocks_for_words([word for word, _ in combo])
        for term in reduce_blocks(h, blocks):
            poly = matrix_coeff_normal_ordered(h, mod, term, f, w)
            if not poly.is_zero():
                _accumulate_ratfun(acc, term.poles, poly.scale(coeff * term.scalar))
    return _assemble_ratfun(acc)


def iterate_closed_form(h: HSpace, u1: FreeElem, u2: FreeElem) -> List[ContractionTerm]:
    """Contraction expansion of an iterate, over the variables (x0, x2).

    Pairs between a factor of u1 and a factor of u2 contribute x0^-(m+n);
    surviving u1 factors are derivative fields at the shifted point x2+x0
    (tagged symbolically), surviving u2 factors sit at x2.
    """
    out: List[ContractionTerm] = []
    for (word1, c1), (word2, c2) in iproduct(u1.items(), u2.items()):
        left = tuple((SHIFTED_VAR, i, m) for i, m in word1)
        right = tuple((INNER_VAR, i, m) for i, m in word2)
        for pairs in _pattern_pairs(len(left), len(right)):
            scalar = c1 * c2
            exponent = 0
            dead = False
            for p, q in pairs:
                _, a, m = left[p]
                _, b, n = right[q]
                c, e = commutator_pm(h, a, m, b, n)
                if not c:
                    dead = True
                    break
                scalar *= c
                exponent += e
            if dead or not scalar:
                continue
            used_p = {p for p, _ in pairs}
            used_q = {q for _, q in pairs}
            residual = tuple(
                fct for t, fct in enumerate(left) if t not in used_p
            ) + tuple(fct for t, fct in enumerate(right) if t not in used_q)
            poles = {pole_var("x0"): exponent} if exponent else {}
            out.append(ContractionTerm(scalar, poles, residual))
    return out


def matrix_coeff_iterate(
    h: HSpace,
    mod: ModulePresentation,
    u1: FreeElem,
    u2: FreeElem,
    f: DualFunctional,
    w: WElem,
) -> RatFun:
    """Exact rational function <f, Y(Y(u1, z1-z2)u2, z2) w> in (z1, z2).

    Shifted factors pair against f and w as fields in the atomic variable
    x2+x0, which the final change of variables sends to z1; x2 goes to z2 and
    each x0 pole becomes the (z1 - z2) pole of the same order.
    """
    diff12, _ = pole_diff("z1", "z2")
    acc: Dict = {}
    for term in iterate_closed_form(h, u1, u2):
        renamed = tuple(
            ("z1" if v == SHIFTED_VAR else "z2", i, m) for v, i, m in term.residual
        )
        poly = matrix_coeff_normal_ordered(
            h, mod, ContractionTerm(term.scalar, {}, renamed), f, w
        )
        if poly.is_zero():
            continue
        k = term.poles.get(pole_var("x0"), 0)
        poles = {diff12: k} if k else {}
        _accumulate_ratfun(acc, poles, poly.scale(term.scalar))
    return _assemble_ratfun(acc)


# -- bulk tables: one pass for every dual word up to a weight cap ----------------


def product_table(
    h: HSpace,
    mod: ModulePresentation,
    us: Sequence[FreeElem],
    w: WElem,
    weight_cap: Fraction,
) -> Dict[Tuple[Tuple, int], RatFun]:
    """Matrix coefficients of a product against every dual basis pair at once.

    Returns basis pair -> RatFun; pairs of weight above weight_cap are
    omitted.  Pairing a dual functional against the table reproduces
    matrix_coeff_product.
    """
    return _table_from_terms(
        h,
        mod,
        (
            (term, coeff)
            for combo in iproduct(*[u.items() for u in us])
            for coeff in [_combo_coeff(combo)]
            for term in reduce_blocks(h, blocks_for_words([wd for wd, _ in combo]))
        ),
        w,
        weight_cap,
    )


def iterate_table(
    h: HSpace,
    mod: ModulePresentation,
    u1: FreeElem,
    u2: FreeElem,
    w: WElem,
    weight_cap: Fraction,
) -> Dict[Tuple[Tuple, int], RatFun]:
    """Iterate-side analogue of product_table, already in (z1, z2) variables."""
    diff12, _ = pole_diff("z1", "z2")

    def terms():
        for term in iterate_closed_form(h, u1, u2):
            renamed = tuple(
                ("z1" if v == SHIFTED_VAR else "z2", i, m) for v, i, m in term.residual
            )
            k = term.poles.get(pole_var("x0"), 0)
            poles = {diff12: k} if k else {}
            yield ContractionTerm(term.scalar, poles, renamed), Fraction(1)

    return _table_from_terms(h, mod, terms(), w, weight_cap)


def _combo_coeff(combo) -> Fraction:
    coeff = Fraction(1)
    for _, c in combo:
        coeff *= c
    return coeff


def _table_from_terms(h, mod, terms_with_coeff, w, weight_cap, assemble=True):
    weight_cap = Fraction(weight_cap)
    accs: Dict[Tuple[Tuple, int], Dict] = {}
    for term, coeff in terms_with_coeff:
        totals = set()
        for key_w in w:
            ww = key_weight(mod, key_w)
            totals.update(range(ceil(ww - weight_cap), floor(ww - mod.min_weight) + 1))
        table = _residual_pairing_table(h, mod, term.residual, w, totals)
        scalar = coeff * term.scalar
        sig = tuple(sorted(term.poles.items()))
        for key, poly in table.items():
            if key_weight(mod, key) > weight_cap:
                continue
            acc = accs.setdefault(key, {})
            slot = acc.get(sig)
            if slot is None:
                slot = acc[sig] = (dict(term.poles), poly.vars, {})
            elif slot[1] != poly.vars:
                union = sort_vars(slot[1] + poly.vars)
                realigned = LaurentPoly._raw(slot[1], slot[2]).align(union)
                slot = acc[sig] = (slot[0], union, dict(realigned.terms))
                poly = poly.align(union)
            target = slot[2]
            if scalar == 1:
                for e, v in poly.terms.items():
                    got = target.get(e)
                    if got is None:
                        target[e] = v
                    else:
                        got = got + v
                        if got:
                            target[e] = got
                        else:
                            del target[e]
            else:
                for e, v in poly.terms.items():
                    got = target.get(e)
                    sv = scalar * v
                    if got is None:
                        target[e] = sv
                    else:
                        got = got + sv
                        if got:
                            target[e] = got
                        else:
                            del target[e]
    out = {}
    for key, acc in accs.items():
        parts = [
            (poles, LaurentPoly(variables, terms))
            for poles, variables, terms in acc.values()
            if terms
        ]
        if not parts:
            continue
        if assemble:
            total = RatFun.zero()
            for poles, poly in parts:
                total = total + RatFun(poly, poles)
            out[key] = total
        else:
            out[key] = parts
    return out


def product_table_raw(
    h: HSpace,
    mod: ModulePresentation,
    us: Sequence[FreeElem],
    w: WElem,
    weight_cap: Fraction,
) -> Dict[Tuple[Tuple, int], List[Tuple[Dict, LaurentPoly]]]:
    """product_table without canonicalization: per key, (poles, numerator) parts.

    Meant for bulk expansion comparisons, where assembling canonical rational
    functions per entry would dominate the cost.
    """
    return _table_from_terms(
        h,
        mod,
        (
            (term, coeff)
            for combo in iproduct(*[u.items() for u in us])
            for coeff in [_combo_coeff(combo)]
            for term in reduce_blocks(h, blocks_for_words([wd for wd, _ in combo]))
        ),
        w,
        weight_cap,
        assemble=False,
    )

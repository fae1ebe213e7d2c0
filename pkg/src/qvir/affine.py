"""Affinization of the auxiliary shift algebra and its covariant quotient.

The loop extension attaches a formal power of t to every shift-algebra
generator together with one central element K.  Labels:

* ``("t", a, r, n)`` -- generator d[a,r] tensored with t^n, with a >= 1;
* ``("K",)`` -- the affine central element.

On top of the ordinary affine bracket this module implements the twisted
bracket whose quotient by the span of  sigma_m(x) (x) t^n - q^{-mn} x (x) t^n
is isomorphic to the deformed Virasoro algebra.  The quotient is never
materialized: `canon_t` rewrites every element to the unique representative
with vanishing shift index, and `to_qvir` is the isomorphism on those
representatives.
"""

from __future__ import annotations

from .liealg import (
    BracketOracle,
    DEFAULT_ORACLE,
    SPACE_AUX,
    gen_D_tilde,
    gen_c,
    gen_d,
    pair_form,
    sigma_shift,
)
from .linear import Accumulator, Element, format_element
from .ratfunc import ONE, RatQ

SPACE_AFF = "aff"

K_LABEL = ("K",)


def loop_gen(alpha: int, r: int, n: int) -> Element:
    """Canonical signed loop generator d[alpha,r] (x) t^n."""
    if alpha == 0:
        return Element.zero(SPACE_AFF)
    if alpha < 0:
        return Element.single(SPACE_AFF, ("t", -alpha, r, n), -ONE)
    return Element.single(SPACE_AFF, ("t", alpha, r, n))


def gen_K() -> Element:
    return Element.single(SPACE_AFF, K_LABEL)


def _base(label) -> Element:
    return gen_d(label[1], label[2])


def bracket_affine(a: Element, b: Element,
                   oracle: BracketOracle | None = None) -> Element:
    """[x (x) t^m, y (x) t^n] = [x,y] (x) t^{m+n} + m delta_{m+n,0} <x,y> K."""
    orc = oracle or DEFAULT_ORACLE
    acc = Accumulator(SPACE_AFF)
    for la, ca in a.terms.items():
        if la == K_LABEL:
            continue
        for lb, cb in b.terms.items():
            if lb == K_LABEL:
                continue
            m, n = la[3], lb[3]
            coef = ca * cb
            base = orc.bracket(_base(la), _base(lb))
            for (_, g, rr), c in base.terms.items():
                acc.add_term(("t", g, rr, m + n), c * coef)
            if m + n == 0 and m != 0:
                form = pair_form(_base(la), _base(lb))
                if not form.is_zero():
                    acc.add_term(K_LABEL, coef * form * RatQ.from_int(m))
    return acc.element()


def _twist_k_candidates(la, lb) -> list:
    """Shift amounts with a possibly nonzero summand in the twisted bracket.

    For basis labels the inner bracket vanishes unless the shift lands on one
    of four index differences, and the form term needs the shift matching the
    second label's shift index; nothing else can contribute.
    """
    _, alpha, r, m = la
    _, beta, s, n = lb
    ks = {
        (alpha + beta) - r + s,
        -(alpha + beta) - r + s,
        (alpha - beta) - r + s,
        -(alpha - beta) - r + s,
    }
    if m + n == 0 and m != 0:
        ks.add(s - r)
    return sorted(ks)


def bracket_gamma(a: Element, b: Element,
                  oracle: BracketOracle | None = None) -> Element:
    """Twisted bracket: sum over k of q^{mk} (bracket + form) with shifted left argument.

    Inputs are canonicalized first, and the result is returned in canonical
    form, so the computation descends to the quotient.
    """
    orc = oracle or DEFAULT_ORACLE
    a = canon_t(a)
    b = canon_t(b)
    acc = Accumulator(SPACE_AFF)
    for la, ca in a.terms.items():
        if la == K_LABEL:
            continue
        for lb, cb in b.terms.items():
            if lb == K_LABEL:
                continue
            m, n = la[3], lb[3]
            coef = ca * cb
            for k in _twist_k_candidates(la, lb):
                qmk = RatQ.q_power(m * k)
                shifted = sigma_shift(k, _base(la))
                base = orc.bracket(shifted, _base(lb))
                for (_, g, rr), c in base.terms.items():
                    acc.add_term(("t", g, rr, m + n), c * coef * qmk)
                if m + n == 0 and m != 0:
                    form = pair_form(shifted, _base(lb))
                    if not form.is_zero():
                        acc.add_term(K_LABEL, coef * qmk * form * RatQ.from_int(m))
    return canon_t(acc.element())


def canon_t(a: Element) -> Element:
    """Rewrite every loop label to shift index 0, scaling by q^{-r n}."""
    if a.space != SPACE_AFF:
        raise ValueError("canon_t acts on loop-algebra elements")
    acc = Accumulator(SPACE_AFF)
    for label, c in a.terms.items():
        if label == K_LABEL:
            acc.add_term(label, c)
            continue
        _, alpha, r, n = label
        if r == 0:
            acc.add_term(label, c)
        else:
            acc.add_term(("t", alpha, 0, n), c * RatQ.q_power(-r * n))
    return acc.element()


def to_qvir(a: Element) -> Element:
    """Isomorphism from canonical-form loop elements onto the Virasoro side.

    d[alpha,0] (x) t^n maps to the corrected generator (with its zero-mode
    central adjustment) and K maps to c.  Non-canonical input is an error.
    """
    if a.space != SPACE_AFF:
        raise ValueError("to_qvir acts on loop-algebra elements")
    acc = Accumulator("D")
    for label, c in a.terms.items():
        if label == K_LABEL:
            acc.add(gen_c(), c)
            continue
        _, alpha, r, n = label
        if r != 0:
            raise ValueError(f"element not in canonical form: shift index {r} on {label}")
        acc.add(gen_D_tilde(alpha, n), c)
    return acc.element()


def format_aff_label(label) -> str:
    if label == K_LABEL:
        return "K"
    _, a, r, n = label
    return f"d[{a},{r}]({n})"


def format_aff(a: Element) -> str:
    return format_element(a, format_aff_label)

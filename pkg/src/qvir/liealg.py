"""Canonical bases, brackets, bilinear forms and maps for three Lie algebras.

Spaces and their labels:

* ``"D"`` -- the q-deformed Virasoro algebra: generators ``("D", a, n)`` with
  a >= 1 and a central element ``("c",)``.  The sign relation identifies the
  generator at -a with minus the generator at a, and a = 0 is zero, so the
  stored labels form a basis.
* ``"d"`` -- the auxiliary shift algebra: generators ``("d", a, r)`` with
  a >= 1, same sign convention, no central element.
* ``"gl"`` -- doubly infinite matrices with finitely many nonzero entries:
  matrix units ``("E", i, j)``.

All brackets return fully canonicalized elements, so identities can be checked
by structural equality.  Everything here is pure and side-effect free; the
optional structure-constant cache lives in `BracketOracle`.
"""

from __future__ import annotations

from .linear import Accumulator, Element, format_element
from .ratfunc import ONE, RatQ, ZERO, q_power_minus_inverse, qint

SPACE_D = "D"
SPACE_AUX = "d"
SPACE_GL = "gl"

C_LABEL = ("c",)


def gen_D(alpha: int, n: int) -> Element:
    """Canonical signed generator of the deformed Virasoro algebra."""
    if alpha == 0:
        return Element.zero(SPACE_D)
    if alpha < 0:
        return Element.single(SPACE_D, ("D", -alpha, n), -ONE)
    return Element.single(SPACE_D, ("D", alpha, n))


def gen_c() -> Element:
    return Element.single(SPACE_D, C_LABEL)


def central_correction(alpha: int) -> RatQ:
    """The scalar 1/(q^{-alpha} - q^{alpha}); zero index is rejected."""
    if alpha == 0:
        raise ZeroDivisionError("central correction undefined at index 0")
    from .ratfunc import ONE_POLY, LaurentPoly, normalize

    return normalize(ONE_POLY, LaurentPoly({-alpha: 1, alpha: -1}))


def gen_D_tilde(alpha: int, n: int) -> Element:
    """Generator with its zero-mode central correction removed.

    For nonzero alpha this is D[alpha](n) minus 1/(q^-alpha - q^alpha) * c at
    n = 0; the index-0 case stays zero and the sign relation is preserved.
    """
    if alpha == 0:
        return Element.zero(SPACE_D)
    out = gen_D(alpha, n)
    if n == 0:
        out = out - gen_c().scaled(central_correction(alpha))
    return out


def gen_d(alpha: int, r: int) -> Element:
    """Canonical signed generator of the auxiliary shift algebra."""
    if alpha == 0:
        return Element.zero(SPACE_AUX)
    if alpha < 0:
        return Element.single(SPACE_AUX, ("d", -alpha, r), -ONE)
    return Element.single(SPACE_AUX, ("d", alpha, r))


def gen_E(i: int, j: int) -> Element:
    return Element.single(SPACE_GL, ("E", i, j))


def canon_gen(space: str, alpha: int, second: int) -> Element:
    """Normal form of a raw generator index pair in D or the shift algebra."""
    if space == SPACE_D:
        return gen_D(alpha, second)
    if space == SPACE_AUX:
        return gen_d(alpha, second)
    raise ValueError(f"no canonical generator map for space {space!r}")


# ---------------------------------------------------------------------------
# Brackets on basis labels
# ---------------------------------------------------------------------------

def _bracket_D_labels(la, lb) -> Element:
    if la == C_LABEL or lb == C_LABEL:
        return Element.zero(SPACE_D)
    _, alpha, n = la
    _, beta, m = lb
    acc = Accumulator(SPACE_D)
    coef = q_power_minus_inverse(alpha * m - beta * n)
    if not coef.is_zero():
        acc.add(gen_D(alpha + beta, m + n), coef)
    coef = q_power_minus_inverse(alpha * m + beta * n)
    if not coef.is_zero():
        acc.add(gen_D(alpha - beta, m + n), -coef)
    if m + n == 0:
        central = qint(m, alpha + beta) - qint(m, alpha - beta)
        acc.add_term(C_LABEL, central)
    return acc.element()


def _bracket_aux_labels(la, lb) -> Element:
    _, alpha, r = la
    _, beta, s = lb
    acc = Accumulator(SPACE_AUX)
    if alpha + beta == s - r:
        acc.add(gen_d(alpha + beta, -alpha + s))
    if alpha + beta == r - s:
        acc.add(gen_d(alpha + beta, alpha + s), -ONE)
    if alpha - beta == s - r:
        acc.add(gen_d(alpha - beta, -alpha + s), -ONE)
    if alpha - beta == r - s:
        acc.add(gen_d(alpha - beta, alpha + s))
    return acc.element()


def _bracket_gl_labels(la, lb) -> Element:
    _, m, n = la
    _, p, qq = lb
    acc = Accumulator(SPACE_GL)
    if n == p:
        acc.add_term(("E", m, qq), ONE)
    if qq == m:
        acc.add_term(("E", p, n), -ONE)
    return acc.element()


_BRACKET_BY_SPACE = {
    SPACE_D: _bracket_D_labels,
    SPACE_AUX: _bracket_aux_labels,
    SPACE_GL: _bracket_gl_labels,
}


class BracketOracle:
    """Structure-constant provider with an optional memo cache.

    The cache maps (space, label, label) to the bracket element; reads may be
    shared freely, inserts happen from a single computing thread.  A tampered
    oracle (``corrupt=True``) perturbs one structure constant and exists only
    so the verification harness can demonstrate a failing check.
    """

    def __init__(self, cache: dict | None = None, corrupt: bool = False):
        self.cache = cache
        self.corrupt = corrupt

    def bracket_labels(self, space: str, la, lb) -> Element:
        if self.cache is not None:
            key = (space, la, lb)
            hit = self.cache.get(key)
            if hit is not None:
                return hit
        out = _BRACKET_BY_SPACE[space](la, lb)
        if self.corrupt and space == SPACE_D and la == ("D", 1, 1) and lb == ("D", 1, -1):
            out = out + gen_D(1, 0)
        if self.cache is not None:
            self.cache[(space, la, lb)] = out
        return out

    def bracket(self, a: Element, b: Element) -> Element:
        if a.space != b.space:
            raise ValueError(f"bracket of mixed spaces {a.space!r} and {b.space!r}")
        if a.space not in _BRACKET_BY_SPACE:
            raise ValueError(f"no bracket on space {a.space!r}")
        acc = Accumulator(a.space)
        for la, ca in a.terms.items():
            for lb, cb in b.terms.items():
                acc.add(self.bracket_labels(a.space, la, lb), ca * cb)
        return acc.element()


DEFAULT_ORACLE = BracketOracle()


def bracket(a: Element, b: Element, oracle: BracketOracle | None = None) -> Element:
    return (oracle or DEFAULT_ORACLE).bracket(a, b)


# ---------------------------------------------------------------------------
# Maps and bilinear forms
# ---------------------------------------------------------------------------

def tau(a: Element) -> Element:
    """Order-2 automorphism of gl: matrix unit (m,n) -> -(n,m)."""
    if a.space != SPACE_GL:
        raise ValueError("tau acts on gl elements")
    acc = Accumulator(SPACE_GL)
    for (_, m, n), c in a.terms.items():
        acc.add_term(("E", n, m), -c)
    return acc.element()


def g_tau(alpha: int, m: int) -> Element:
    """Antisymmetrized hook element E[a+m, m-a] - E[m-a, m+a] inside gl."""
    acc = Accumulator(SPACE_GL)
    acc.add_term(("E", alpha + m, m - alpha), ONE)
    acc.add_term(("E", m - alpha, m + alpha), -ONE)
    return acc.element()


def embed_aux(a: Element) -> Element:
    """Embedding of the shift algebra into gl: d[a,r] -> -g_tau(a, r)."""
    if a.space != SPACE_AUX:
        raise ValueError("embed_aux acts on shift-algebra elements")
    acc = Accumulator(SPACE_GL)
    for (_, alpha, r), c in a.terms.items():
        acc.add(g_tau(-alpha, r), c)
    return acc.element()


def _form_aux_labels(la, lb) -> RatQ:
    _, alpha, r = la
    _, beta, s = lb
    if r != s:
        return ZERO
    val = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
    return RatQ.from_int(val) if val else ZERO


def _form_gl_labels(la, lb) -> RatQ:
    _, m, n = la
    _, r, s = lb
    return ONE if (m == s and n == r) else ZERO


def pair_form(a: Element, b: Element) -> RatQ:
    """Invariant bilinear form on the shift algebra or on gl."""
    if a.space != b.space:
        raise ValueError(f"form on mixed spaces {a.space!r} and {b.space!r}")
    if a.space == SPACE_AUX:
        label_form = _form_aux_labels
    elif a.space == SPACE_GL:
        label_form = _form_gl_labels
    else:
        raise ValueError(f"no bilinear form on space {a.space!r}")
    total = ZERO
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            v = label_form(la, lb)
            if not v.is_zero():
                total = total + ca * cb * v
    return total


def sigma_shift(m: int, a: Element) -> Element:
    """Shift automorphism of the auxiliary algebra: d[a,r] -> d[a,r+m]."""
    if a.space != SPACE_AUX:
        raise ValueError("sigma_shift acts on shift-algebra elements")
    res = Element(SPACE_AUX)
    res.terms = {("d", alpha, r + m): c for (_, alpha, r), c in a.terms.items()}
    return res


# ---------------------------------------------------------------------------
# Identity checkers returning residual witnesses
# ---------------------------------------------------------------------------

def jacobi_residual(a: Element, b: Element, c: Element,
                    oracle: BracketOracle | None = None) -> Element:
    orc = oracle or DEFAULT_ORACLE
    return (
        orc.bracket(a, orc.bracket(b, c))
        + orc.bracket(b, orc.bracket(c, a))
        + orc.bracket(c, orc.bracket(a, b))
    )


def check_jacobi(a: Element, b: Element, c: Element,
                 oracle: BracketOracle | None = None):
    """True plus empty witness, or False plus the nonzero residual."""
    res = jacobi_residual(a, b, c, oracle)
    return res.is_zero(), res


def invariance_residual(a: Element, b: Element, c: Element,
                        oracle: BracketOracle | None = None) -> RatQ:
    orc = oracle or DEFAULT_ORACLE
    return pair_form(orc.bracket(a, b), c) - pair_form(a, orc.bracket(b, c))


def check_invariance(a: Element, b: Element, c: Element,
                     oracle: BracketOracle | None = None):
    res = invariance_residual(a, b, c, oracle)
    return res.is_zero(), res


# ---------------------------------------------------------------------------
# Text forms: D[a,n], c, d[a,r], E[i,j]
# ---------------------------------------------------------------------------

def format_label(label) -> str:
    kind = label[0]
    if kind == "c":
        return "c"
    if kind in ("D", "d", "E"):
        return f"{kind}[{label[1]},{label[2]}]"
    raise ValueError(f"unknown label {label!r}")


def format_lie(a: Element) -> str:
    return format_element(a, format_label)


def parse_label(text: str):
    text = text.strip()
    if text == "c":
        return C_LABEL
    import re

    m = re.match(r"^([DdE])\[(-?\d+),(-?\d+)\]$", text)
    if not m:
        raise ValueError(f"bad label text: {text!r}")
    return (m.group(1), int(m.group(2)), int(m.group(3)))


def parse_lie(text: str, space: str) -> Element:
    """Parse the `(coeff) * label` element grammar back into an Element."""
    from .ratfunc import parse_ratq

    text = text.strip()
    out = Element.zero(space)
    if text == "0":
        return out
    for part in text.split(" + "):
        part = part.strip()
        if not (part.startswith("(") and " * " in part):
            raise ValueError(f"bad element term: {part!r}")
        close = part.rindex(") * ")
        coef = parse_ratq(part[1:close])
        label = parse_label(part[close + 4 :])
        out = out + Element.single(space, label, coef)
    return out

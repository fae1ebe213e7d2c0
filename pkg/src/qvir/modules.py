"""PBW straightening and induced highest-weight modules.

Two concrete modules are built by inducing from a one-dimensional character:

* the vacuum module of the affinized shift algebra (space tag ``"V"``), the
  underlying space of the associated vertex algebra, with basis monomials of
  creation operators d[a,r](n), n <= -1, applied to the vacuum;
* a highest-weight module for the deformed Virasoro algebra (space tag
  ``"M"``), induced from the zero character on all nonnegative modes with the
  central element acting as the level.  It is restricted by construction and
  serves as the probe module for every operator-level identity check.

Monomial factors are tuples (mode, index...) ordered so that plain tuple
comparison realizes the normal order: modes non-decreasing left to right,
ties broken by ascending generator indices.  The empty monomial is the
highest-weight vector.
"""

from __future__ import annotations


from .liealg import (
    BracketOracle,
    C_LABEL,
    DEFAULT_ORACLE,
    central_correction,
    gen_d,
    pair_form,
)
from .linear import Accumulator, Element
from .ratfunc import ONE, RatQ

SPACE_V = "V"
SPACE_M = "M"


class InducedModule:
    """Induction datum: bracket oracle, level, and the triangular split.

    Generators are described by index tuples: (a, r) in the affine vacuum
    module, (a,) in the highest-weight module.  `commutator` returns the
    re-moded bracket terms together with the central scalar (already
    multiplied by the level), which is the whole content of the triangular
    decomposition used by straightening and by nonnegative-mode actions.
    """

    def __init__(self, space: str, level: RatQ, oracle: BracketOracle | None = None):
        if space not in (SPACE_V, SPACE_M):
            raise ValueError(f"unknown module space {space!r}")
        self.space = space
        self.level = level
        self.oracle = oracle or DEFAULT_ORACLE

    @staticmethod
    def affine_vacuum(level: RatQ, oracle: BracketOracle | None = None) -> "InducedModule":
        return InducedModule(SPACE_V, level, oracle)

    @staticmethod
    def virasoro_highest_weight(level: RatQ, oracle: BracketOracle | None = None) -> "InducedModule":
        return InducedModule(SPACE_M, level, oracle)

    def zero(self) -> Element:
        return Element.zero(self.space)

    def vacuum(self) -> Element:
        return Element.single(self.space, ())

    def commutator(self, ga: tuple, m: int, gb: tuple, n: int):
        """Bracket of modes: ([(generator, mode, coefficient)...], central scalar)."""
        if self.space == SPACE_V:
            base = self.oracle.bracket(gen_d(*ga), gen_d(*gb))
            terms = [((g, rr), m + n, c) for (_, g, rr), c in base.terms.items()]
            central = RatQ.from_int(0)
            if m + n == 0 and m != 0:
                form = pair_form(gen_d(*ga), gen_d(*gb))
                if not form.is_zero():
                    central = form * RatQ.from_int(m) * self.level
            return terms, central
        la = ("D", ga[0], m)
        lb = ("D", gb[0], n)
        out = self.oracle.bracket_labels("D", la, lb)
        terms = []
        central = RatQ.from_int(0)
        for label, c in out.terms.items():
            if label == C_LABEL:
                central = central + c * self.level
            else:
                terms.append(((label[1],), label[2], c))
        return terms, central


def monomial_degree(mono: tuple) -> int:
    return sum(-f[0] for f in mono)


def pbw_normalize(module: InducedModule, factors, coef: RatQ = ONE) -> Element:
    """Straighten a raw creation product into the ordered PBW basis.

    Adjacent out-of-order factors are swapped at the cost of a bracket term;
    every step either removes an inversion or shortens the monomial, so the
    rewriting terminates.  All modes must be <= -1, which keeps central terms
    out of the straightening entirely.
    """
    acc = Accumulator(module.space)
    stack = [(list(factors), coef)]
    while stack:
        seq, c = stack.pop()
        swap_at = -1
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                swap_at = i
                break
        if swap_at < 0:
            acc.add_term(tuple(seq), c)
            continue
        i = swap_at
        a, b = seq[i], seq[i + 1]
        if a[0] > -1 or b[0] > -1:
            raise ValueError("straightening expects creation modes only")
        stack.append((seq[:i] + [b, a] + seq[i + 2 :], c))
        terms, central = module.commutator(a[1:], a[0], b[1:], b[0])
        if not central.is_zero():
            raise AssertionError("central term cannot appear below mode -2")
        for gd, mode, c2 in terms:
            stack.append((seq[:i] + [(mode, *gd)] + seq[i + 2 :], c * c2))
    return acc.element()


def act_mode(module: InducedModule, gd: tuple, n: int, vec: Element) -> Element:
    """Action of generator mode n on a module vector.

    Creation modes prepend and re-straighten; annihilation and zero modes
    commute rightward through each monomial until they hit the highest-weight
    vector, which the zero character kills.
    """
    if vec.space != module.space:
        raise ValueError("vector does not belong to this module")
    acc = Accumulator(module.space)
    for mono, c in vec.terms.items():
        if n <= -1:
            acc.add(pbw_normalize(module, ((n, *gd),) + mono), c)
        else:
            acc.add(_act_nonneg(module, gd, n, mono), c)
    return acc.element()


def _act_nonneg(module: InducedModule, gd: tuple, n: int, mono: tuple) -> Element:
    if not mono:
        return module.zero()
    head, rest = mono[0], mono[1:]
    m = head[0]
    out = Accumulator(module.space)
    inner = _act_nonneg(module, gd, n, rest)
    for mono2, c in inner.terms.items():
        out.add(pbw_normalize(module, (head,) + mono2), c)
    terms, central = module.commutator(gd, n, head[1:], m)
    rest_elem = Element.single(module.space, rest)
    for gd2, mode, c in terms:
        if mode <= -1:
            out.add(pbw_normalize(module, ((mode, *gd2),) + rest), c)
        else:
            out.add(_act_nonneg(module, gd2, mode, rest), c)
    if not central.is_zero():
        out.add(rest_elem, central)
    return out.element()


def act_central(module: InducedModule, vec: Element) -> Element:
    return vec.scaled(module.level)


def weight_grade(vec: Element) -> int:
    """Common degree of a homogeneous vector; inhomogeneity is an error."""
    if vec.is_zero():
        raise ValueError("the zero vector has no weight")
    degrees = {monomial_degree(m) for m in vec.terms}
    if len(degrees) > 1:
        lo, hi = min(degrees), max(degrees)
        raise ValueError(f"inhomogeneous vector: degrees {lo} and {hi}")
    return degrees.pop()


def homogeneous_parts(vec: Element) -> dict:
    parts: dict[int, Accumulator] = {}
    for mono, c in vec.terms.items():
        d = monomial_degree(mono)
        parts.setdefault(d, Accumulator(vec.space)).add_term(mono, c)
    return {d: acc.element() for d, acc in sorted(parts.items())}


def sigma_on_v(module: InducedModule, m: int, vec: Element) -> Element:
    """Shift automorphism on the vacuum module: every factor's r moves by m."""
    if module.space != SPACE_V:
        raise ValueError("the shift automorphism lives on the vacuum module")
    out = Element(module.space)
    out.terms = {
        tuple((n, a, r + m) for (n, a, r) in mono): c for mono, c in vec.terms.items()
    }
    return out


def graded_twist(module: InducedModule, m: int, vec: Element) -> Element:
    """Degree-graded twist q^{-m deg} composed with the shift automorphism."""
    if module.space != SPACE_V:
        raise ValueError("the graded twist lives on the vacuum module")
    acc = Accumulator(module.space)
    for mono, c in vec.terms.items():
        d = monomial_degree(mono)
        shifted = tuple((n, a, r + m) for (n, a, r) in mono)
        acc.add_term(shifted, c * RatQ.q_power(-m * d))
    return acc.element()


def element_degree(vec: Element) -> int:
    return max((monomial_degree(m) for m in vec.terms), default=0)


def vertex_coeff(module: InducedModule, u: Element, m: int, w: Element) -> Element:
    """The m-th product u_m w in the vacuum module vertex structure.

    Defined by the usual recursion through the leading creation factor: for
    u = a(-k)u', the creation half of the (k-1)-th derivative of a(x) acts on
    the left of Y(u', x), the annihilation half on the right.  For the vacuum
    it reduces to the identity at m = -1, and for a single generator to the
    plain mode action.
    """
    if module.space != SPACE_V:
        raise ValueError("vertex coefficients live on the vacuum module")
    acc = Accumulator(module.space)
    for mono, cu in u.terms.items():
        acc.add(_vertex_mono(module, mono, m, w), cu)
    return acc.element()


def _vertex_mono(module: InducedModule, mono: tuple, m: int, w: Element) -> Element:
    if w.is_zero():
        return module.zero()
    if not mono:
        return w if m == -1 else module.zero()
    head, rest = mono[0], mono[1:]
    k = -head[0]
    gd = head[1:]
    rest_elem = Element.single(module.space, rest)
    deg_w = element_degree(w)
    deg_rest = monomial_degree(rest)
    out = Accumulator(module.space)
    # creation half acts after the tail field
    n = -1
    lo = m - k - deg_rest - deg_w + 1
    while n >= lo:
        b = _binom_ratq(-n - 1, k - 1)
        if not b.is_zero():
            tail = _vertex_mono(module, rest, m - n - k, w)
            if not tail.is_zero():
                out.add(act_mode(module, gd, n, tail), b)
        n -= 1
    # annihilation half acts before the tail field
    for n in range(0, deg_w + 1):
        b = _binom_ratq(-n - 1, k - 1)
        if b.is_zero():
            continue
        hit = act_mode(module, gd, n, w)
        if not hit.is_zero():
            out.add(_vertex_mono(module, rest, m - n - k, hit), b)
    return out.element()


def _binom_ratq(top: int, k: int) -> RatQ:
    from .ratfunc import binom

    return RatQ.from_int(binom(top, k))


def borcherds_residual(module: InducedModule, u: Element, v: Element,
                       m: int, n: int, w: Element) -> Element:
    """Residual of the standard commutator formula on the vacuum module."""
    lhs = vertex_coeff(module, u, m, vertex_coeff(module, v, n, w)) - vertex_coeff(
        module, v, n, vertex_coeff(module, u, m, w)
    )
    rhs = Accumulator(module.space)
    top = element_degree(u) + element_degree(v)
    for i in range(0, top + 1):
        b = _binom_ratq(m, i)
        if b.is_zero():
            continue
        uv = vertex_coeff(module, u, i, v)
        if uv.is_zero():
            continue
        rhs.add(vertex_coeff(module, uv, m + n - i, w), b)
    return lhs - rhs.element()


# ---------------------------------------------------------------------------
# Generator fields on the highest-weight module
# ---------------------------------------------------------------------------


def corrected_apply(module: InducedModule, alpha: int, n: int, w: Element) -> Element:
    """Action of the corrected generator: mode n minus its zero-mode constant."""
    if module.space != SPACE_M:
        raise ValueError("corrected generators act on the highest-weight module")
    if alpha == 0:
        return module.zero()
    sign = None
    if alpha < 0:
        alpha, sign = -alpha, -ONE
    out = act_mode(module, (alpha,), n, w)
    if n == 0:
        out = out - w.scaled(central_correction(alpha) * module.level)
    return out.scaled(sign) if sign is not None else out


def quasi_field_apply(module: InducedModule, alpha: int, r: int, n: int, w: Element) -> Element:
    """Coefficient of the quasi-module field at the x^{-n-1} mode picture."""
    return corrected_apply(module, alpha, n, w).scaled(RatQ.q_power(-r * n))


def phi_field_apply(module: InducedModule, alpha: int, r: int, n: int, w: Element) -> Element:
    """Coefficient of the shifted field at the x^{-n} mode picture."""
    return corrected_apply(module, alpha, n, w).scaled(RatQ.q_power(-r * n))


def apply_aux_element(module: InducedModule, elem: Element, n: int, w: Element) -> Element:
    """Linear extension of the mode-n action of a shift-algebra element."""
    acc = Accumulator(module.space)
    for (_, a, r), c in elem.terms.items():
        acc.add(act_mode(module, (a, r), n, w), c)
    return acc.element()


def apply_phi_element(module: InducedModule, elem: Element, n: int, w: Element) -> Element:
    """Linear extension of the shifted-field action of a shift-algebra element."""
    acc = Accumulator(module.space)
    for (_, a, r), c in elem.terms.items():
        acc.add(phi_field_apply(module, a, r, n, w), c)
    return acc.element()


# ---------------------------------------------------------------------------
# Text forms: d[a,r](n) ... |vac>  and  D[a](n) ... |hw>
# ---------------------------------------------------------------------------


def format_monomial(space: str, mono: tuple) -> str:
    tail = "|vac>" if space == SPACE_V else "|hw>"
    if not mono:
        return tail
    if space == SPACE_V:
        parts = [f"d[{a},{r}]({n})" for (n, a, r) in mono]
    else:
        parts = [f"D[{a}]({n})" for (n, a) in mono]
    return " ".join(parts) + " " + tail


def format_vector(vec: Element) -> str:
    from .linear import format_element

    return format_element(vec, lambda mono: format_monomial(vec.space, mono))

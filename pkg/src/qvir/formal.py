"""Window-truncated formal-distribution calculus.

Identities between doubly infinite operator series are verified on finite
symmetric windows of coefficient positions.  Every coefficient identity in
this kernel is a polynomial statement in q, so checking all positions of a
window is an exact verification of those coefficients.

A commutator right-hand side is a finite sum of `DeltaTerm`s: a q-power
shifted delta distribution (optionally once differentiated, optionally
carrying x1^{-1}) multiplied by a field payload or a central payload.  The
same term lists drive four consumers: coefficientwise identity checks against
the brackets, locality certificates, module-level commutator checks, and
symbolic product extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affine import gen_K, loop_gen
from .liealg import (
    BracketOracle,
    DEFAULT_ORACLE,
    central_correction,
    format_lie,
    gen_D,
    gen_D_tilde,
    gen_c,
)
from .linear import Accumulator, Element, format_element
from .ratfunc import ONE, RatQ, ZERO, binom

# ---------------------------------------------------------------------------
# Window and coefficient tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Symmetric verification window: positions (i, j) with |i|, |j| <= bound."""

    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("window bound must be >= 1")

    def positions(self):
        b = self.bound
        for i in range(-b, b + 1):
            for j in range(-b, b + 1):
                yield (i, j)

def _val_is_zero(v) -> bool:
    return v.is_zero()


def _val_add(a, b):
    return a + b


def _val_scale(v, c: RatQ):
    if isinstance(v, Element):
        return v.scaled(c)
    return v * c


class BiSeries:
    """Finite coefficient table in two formal variables.

    Values live in one coefficient space (RatQ scalars or Elements of one
    tag); zeros are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {}
        if coeffs:
            for pos, v in coeffs.items():
                if not _val_is_zero(v):
                    self.coeffs[pos] = v

    def get(self, i: int, j: int):
        return self.coeffs.get((i, j))

    def add_value(self, pos, v) -> None:
        if _val_is_zero(v):
            return
        old = self.coeffs.get(pos)
        s = v if old is None else _val_add(old, v)
        if _val_is_zero(s):
            self.coeffs.pop(pos, None)
        else:
            self.coeffs[pos] = s

    def __add__(self, other: "BiSeries") -> "BiSeries":
        out = BiSeries(dict(self.coeffs))
        for pos, v in other.coeffs.items():
            out.add_value(pos, v)
        return out

    def scaled(self, c: RatQ) -> "BiSeries":
        out = BiSeries()
        if c.is_zero():
            return out
        out.coeffs = {pos: _val_scale(v, c) for pos, v in self.coeffs.items()}
        return out

    def restrict(self, window: Window) -> "BiSeries":
        b = window.bound
        out = BiSeries()
        out.coeffs = {
            (i, j): v for (i, j), v in self.coeffs.items() if abs(i) <= b and abs(j) <= b
        }
        return out

    def is_zero_on(self, window: Window) -> bool:
        b = window.bound
        return not any(abs(i) <= b and abs(j) <= b for (i, j) in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiSeries) and self.coeffs == other.coeffs


def mul_linear_factor(series: BiSeries, scale: RatQ, window: Window) -> BiSeries:
    """Multiply by (x1 - scale * x2), keeping positions inside the window.

    The input must be known one position beyond the output window in each
    variable; callers shrink the window by one per factor.
    """
    out = BiSeries()
    b = window.bound
    for i in range(-b, b + 1):
        for j in range(-b, b + 1):
            v = series.coeffs.get((i - 1, j))
            w = series.coeffs.get((i, j - 1))
            if w is not None:
                wv = _val_scale(w, scale)
                v = -wv if v is None else _val_add(v, -wv)
            if v is not None:
                out.add_value((i, j), v)
    return out


def expand_iota_binomial(scale: RatQ, m: int, window: Window) -> BiSeries:
    """Lower-truncation expansion of (x1 - scale*x2)^m in powers of x2.

    For m >= 0 the expansion is finite and exact; for m < 0 it is the
    binomial series truncated to the window.
    """
    out = BiSeries()
    b = window.bound
    j = 0
    while True:
        i = m - j
        if m >= 0 and j > m:
            break
        if m < 0 and (i < -b or j > b):
            break
        if abs(i) <= b and abs(j) <= b:
            c = RatQ.from_int(binom(m, j)) * ((-scale) ** j)
            out.add_value((i, j), c)
        j += 1
        if j > 2 * b + abs(m) + 1:
            break
    return out


# ---------------------------------------------------------------------------
# Delta terms and their payloads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldPayload:
    """A generating-field symbol evaluated at q^argscale * x2.

    Families and their mode pictures (mode n sits at the stated x2 power):

    =========  =========  ==============================================
    family     x2 power   mode value
    =========  =========  ==============================================
    ``D``      -n-1       plain generator
    ``Dt``     -n-1       corrected generator (zero-mode adjustment)
    ``Db``     -n         plain generator
    ``Dh``     -n         corrected generator
    ``Drs``    -n-1       q^{-r n} * corrected generator
    ``Dhrs``   -n         q^{-r n} * corrected generator
    ``aff``    -n-1       loop generator d[alpha,r] (x) t^n
    =========  =========  ==============================================
    """

    family: str
    alpha: int
    r: int = 0
    argscale: int = 0


@dataclass(frozen=True)
class CentralPayload:
    """The central symbol, times an optional explicit power of x2."""

    x2_power: int = 0


@dataclass(frozen=True)
class DeltaTerm:
    """prefactor * [derivative-flavored delta at shift k] * payload.

    ``deriv`` is 0 or 1; ``flavor`` distinguishes the plain x2 derivative
    ("d2") from the scaled one ("x2d2"); ``x1_inv`` marks an x1^{-1} factor.
    """

    shift: int
    prefactor: RatQ
    payload: object
    deriv: int = 0
    flavor: str = "d2"
    x1_inv: bool = True

    def __post_init__(self):
        if self.deriv not in (0, 1):
            raise ValueError("derivative order must be 0 or 1")
        if self.flavor not in ("d2", "x2d2"):
            raise ValueError(f"unknown derivative flavor {self.flavor!r}")


_LOWER_FAMILIES = {"D", "Dt", "Drs", "aff"}
_UPPER_FAMILIES = {"Db", "Dh", "Dhrs"}


def field_mode_exponent(family: str, n: int) -> int:
    """x2 exponent at which mode n of the family sits."""
    if family in _LOWER_FAMILIES:
        return -n - 1
    if family in _UPPER_FAMILIES:
        return -n
    raise ValueError(f"unknown field family {family!r}")


def field_mode_from_exponent(family: str, e: int) -> int:
    if family in _LOWER_FAMILIES:
        return -e - 1
    if family in _UPPER_FAMILIES:
        return -e
    raise ValueError(f"unknown field family {family!r}")


class LieRealizer:
    """Realizes payload coefficients as Lie-algebra elements."""

    def __init__(self, space: str):
        if space not in ("D", "aff"):
            raise ValueError(f"no Lie realization for space {space!r}")
        self.space = space

    def field_value(self, payload: FieldPayload, e: int) -> Element:
        n = field_mode_from_exponent(payload.family, e)
        fam = payload.family
        if fam in ("D", "Db"):
            base = gen_D(payload.alpha, n)
        elif fam in ("Dt", "Dh"):
            base = gen_D_tilde(payload.alpha, n)
        elif fam in ("Drs", "Dhrs"):
            base = gen_D_tilde(payload.alpha, n).scaled(RatQ.q_power(-payload.r * n))
        elif fam == "aff":
            base = loop_gen(payload.alpha, payload.r, n)
        else:
            raise ValueError(f"unknown field family {fam!r}")
        if payload.argscale:
            base = base.scaled(RatQ.q_power(payload.argscale * e))
        return base

    def central_value(self) -> Element:
        return gen_c() if self.space == "D" else gen_K()

    def zero(self):
        return Element.zero(self.space if self.space == "aff" else "D")


class ScalarRealizer:
    """Realizes every payload as the scalar 1 (delta bookkeeping only)."""

    def field_value(self, payload, e):
        return ONE

    def central_value(self):
        return ONE

    def zero(self):
        return ZERO


SCALAR = ScalarRealizer()


def expand_delta(term: DeltaTerm, window: Window, realizer=SCALAR) -> BiSeries:
    """Expand one delta term into its window coefficient table.

    The delta with shift k contributes q^{k m} at x2 power m (paired with
    x1 power -m, or -m-1 with the x1^{-1} flag); a first derivative
    multiplies by m and, in the plain flavor, lowers the x2 power by one.
    """
    out = BiSeries()
    if term.prefactor.is_zero():
        return out
    b = window.bound
    for i in range(-b, b + 1):
        m = -i - 1 if term.x1_inv else -i
        scalar = RatQ.q_power(term.shift * m)
        if term.deriv:
            if m == 0:
                continue
            scalar = scalar * RatQ.from_int(m)
        e_delta = m - 1 if (term.deriv and term.flavor == "d2") else m
        for j in range(-b, b + 1):
            e_payload = j - e_delta
            if isinstance(term.payload, CentralPayload):
                if e_payload != term.payload.x2_power:
                    continue
                value = realizer.central_value()
            else:
                value = realizer.field_value(term.payload, e_payload)
            out.add_value((i, j), _val_scale(value, scalar * term.prefactor))
    return out


def expand_terms(terms, window: Window, realizer=SCALAR) -> BiSeries:
    out = BiSeries()
    for term in terms:
        out = out + expand_delta(term, window, realizer)
    return out


# ---------------------------------------------------------------------------
# The commutation identities as delta-term lists
# ---------------------------------------------------------------------------

IDENTITY_IDS = ("GEN-2.8", "GEN-2.17", "GEN-2.9", "GEN-3.2", "GEN-3.4", "AFF-2.13", "PHI-3.6")


def _plain_central_pair(gamma: int, x1_inv: bool, x2_power: int, sign: RatQ):
    """The matched pair of shifted central deltas, or its zero-index limit.

    For gamma != 0 returns  sign/(q^-gamma - q^gamma) [delta(q^gamma) -
    delta(q^-gamma)]; at gamma = 0 the pair degenerates to the once
    differentiated delta with the scaled flavor and an overall minus sign.
    """
    payload = CentralPayload(x2_power=x2_power)
    if gamma != 0:
        kappa = central_correction(gamma) * sign
        return [
            DeltaTerm(shift=gamma, prefactor=kappa, payload=payload, x1_inv=x1_inv),
            DeltaTerm(shift=-gamma, prefactor=-kappa, payload=payload, x1_inv=x1_inv),
        ]
    return [
        DeltaTerm(
            shift=0,
            prefactor=-sign,
            payload=payload,
            deriv=1,
            flavor="x2d2",
            x1_inv=x1_inv,
        )
    ]


def identity_terms(ident: str, alpha: int, beta: int, r: int = 0, s: int = 0):
    """Right-hand-side delta decomposition of a commutation identity."""
    qa = RatQ.q_power(alpha)
    qai = RatQ.q_power(-alpha)
    if ident == "GEN-2.8":
        terms = [
            DeltaTerm(-alpha - beta, qai, FieldPayload("D", alpha + beta, argscale=-alpha)),
            DeltaTerm(alpha + beta, -qa, FieldPayload("D", alpha + beta, argscale=alpha)),
            DeltaTerm(beta - alpha, -qai, FieldPayload("D", alpha - beta, argscale=-alpha)),
            DeltaTerm(alpha - beta, qa, FieldPayload("D", alpha - beta, argscale=alpha)),
        ]
        terms += _plain_central_pair(alpha + beta, True, -1, ONE)
        terms += _plain_central_pair(alpha - beta, True, -1, -ONE)
        return terms
    if ident == "GEN-2.17":
        terms = [
            DeltaTerm(-alpha - beta, qai, FieldPayload("Dt", alpha + beta, argscale=-alpha)),
            DeltaTerm(alpha + beta, -qa, FieldPayload("Dt", alpha + beta, argscale=alpha)),
            DeltaTerm(beta - alpha, -qai, FieldPayload("Dt", alpha - beta, argscale=-alpha)),
            DeltaTerm(alpha - beta, qa, FieldPayload("Dt", alpha - beta, argscale=alpha)),
        ]
        central = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
        if central:
            terms.append(
                DeltaTerm(0, RatQ.from_int(central), CentralPayload(), deriv=1, flavor="d2")
            )
        return terms
    if ident == "GEN-2.9":
        terms = [
            DeltaTerm(-alpha - beta - r + s, ONE, FieldPayload("Drs", alpha + beta, -alpha + s)),
            DeltaTerm(alpha + beta - r + s, -ONE, FieldPayload("Drs", alpha + beta, alpha + s)),
            DeltaTerm(beta - alpha - r + s, -ONE, FieldPayload("Drs", alpha - beta, -alpha + s)),
            DeltaTerm(alpha - beta - r + s, ONE, FieldPayload("Drs", alpha - beta, alpha + s)),
        ]
        central = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
        if central:
            terms.append(
                DeltaTerm(s - r, RatQ.from_int(central), CentralPayload(), deriv=1, flavor="d2")
            )
        return terms
    if ident == "GEN-3.2":
        terms = [
            DeltaTerm(-alpha - beta, ONE, FieldPayload("Db", alpha + beta, argscale=-alpha), x1_inv=False),
            DeltaTerm(alpha + beta, -ONE, FieldPayload("Db", alpha + beta, argscale=alpha), x1_inv=False),
            DeltaTerm(beta - alpha, -ONE, FieldPayload("Db", alpha - beta, argscale=-alpha), x1_inv=False),
            DeltaTerm(alpha - beta, ONE, FieldPayload("Db", alpha - beta, argscale=alpha), x1_inv=False),
        ]
        terms += _plain_central_pair(alpha + beta, False, 0, ONE)
        terms += _plain_central_pair(alpha - beta, False, 0, -ONE)
        return terms
    if ident == "GEN-3.4":
        terms = [
            DeltaTerm(-alpha - beta, ONE, FieldPayload("Dh", alpha + beta, argscale=-alpha), x1_inv=False),
            DeltaTerm(alpha + beta, -ONE, FieldPayload("Dh", alpha + beta, argscale=alpha), x1_inv=False),
            DeltaTerm(beta - alpha, -ONE, FieldPayload("Dh", alpha - beta, argscale=-alpha), x1_inv=False),
            DeltaTerm(alpha - beta, ONE, FieldPayload("Dh", alpha - beta, argscale=alpha), x1_inv=False),
        ]
        central = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
        if central:
            terms.append(
                DeltaTerm(
                    0, RatQ.from_int(central), CentralPayload(), deriv=1, flavor="x2d2", x1_inv=False
                )
            )
        return terms
    if ident == "AFF-2.13":
        terms = []
        if alpha + beta == s - r:
            terms.append(DeltaTerm(0, ONE, FieldPayload("aff", alpha + beta, -alpha + s)))
        if alpha + beta == r - s:
            terms.append(DeltaTerm(0, -ONE, FieldPayload("aff", alpha + beta, alpha + s)))
        if alpha - beta == s - r:
            terms.append(DeltaTerm(0, -ONE, FieldPayload("aff", alpha - beta, -alpha + s)))
        if alpha - beta == r - s:
            terms.append(DeltaTerm(0, ONE, FieldPayload("aff", alpha - beta, alpha + s)))
        if r == s:
            central = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
            if central:
                terms.append(
                    DeltaTerm(0, RatQ.from_int(central), CentralPayload(), deriv=1, flavor="d2")
                )
        return terms
    if ident == "PHI-3.6":
        terms = [
            DeltaTerm(-alpha - beta - r + s, ONE, FieldPayload("Dhrs", alpha + beta, -alpha + s), x1_inv=False),
            DeltaTerm(alpha + beta - r + s, -ONE, FieldPayload("Dhrs", alpha + beta, alpha + s), x1_inv=False),
            DeltaTerm(beta - alpha - r + s, -ONE, FieldPayload("Dhrs", alpha - beta, -alpha + s), x1_inv=False),
            DeltaTerm(alpha - beta - r + s, ONE, FieldPayload("Dhrs", alpha - beta, alpha + s), x1_inv=False),
        ]
        central = (1 if alpha == beta else 0) - (1 if alpha == -beta else 0)
        if central:
            terms.append(
                DeltaTerm(
                    s - r, RatQ.from_int(central), CentralPayload(), deriv=1, flavor="x2d2", x1_inv=False
                )
            )
        return terms
    raise ValueError(f"unknown identity id {ident!r}")


def identity_fields(ident: str, alpha: int, beta: int, r: int = 0, s: int = 0):
    """Left-hand-side field pair of an identity, as payload descriptors."""
    if ident == "GEN-2.8":
        return FieldPayload("D", alpha), FieldPayload("D", beta)
    if ident == "GEN-2.17":
        return FieldPayload("Dt", alpha), FieldPayload("Dt", beta)
    if ident == "GEN-2.9":
        return FieldPayload("Drs", alpha, r), FieldPayload("Drs", beta, s)
    if ident == "GEN-3.2":
        return FieldPayload("Db", alpha), FieldPayload("Db", beta)
    if ident == "GEN-3.4":
        return FieldPayload("Dh", alpha), FieldPayload("Dh", beta)
    if ident == "AFF-2.13":
        return FieldPayload("aff", alpha, r), FieldPayload("aff", beta, s)
    if ident == "PHI-3.6":
        return FieldPayload("Dhrs", alpha, r), FieldPayload("Dhrs", beta, s)
    raise ValueError(f"unknown identity id {ident!r}")


def identity_space(ident: str) -> str:
    return "aff" if ident == "AFF-2.13" else "D"


def check_generating_identity(
    ident: str,
    alpha: int,
    beta: int,
    r: int = 0,
    s: int = 0,
    window: Window = Window(5),
    oracle: BracketOracle | None = None,
):
    """Coefficientwise comparison of a commutator against its delta expansion.

    Returns (True, "") on success, else (False, witness) naming the first
    failing position in lexicographic order together with the residual.
    """
    from .affine import bracket_affine, format_aff

    orc = oracle or DEFAULT_ORACLE
    space = identity_space(ident)
    realizer = LieRealizer(space)
    fa, fb = identity_fields(ident, alpha, beta, r, s)
    rhs = expand_terms(identity_terms(ident, alpha, beta, r, s), window, realizer)
    if space == "aff":
        bra = lambda x, y: bracket_affine(x, y, orc)
        fmt = format_aff
    else:
        bra = orc.bracket
        fmt = format_lie
    zero = realizer.zero()
    for (i, j) in window.positions():
        a_mode = realizer.field_value(fa, i)
        b_mode = realizer.field_value(fb, j)
        lhs = bra(a_mode, b_mode)
        want = rhs.get(i, j)
        residual = lhs - (want if want is not None else zero)
        if not residual.is_zero():
            witness = f"first failing coefficient at (x1^{i}, x2^{j}): residual = {fmt(residual)}"
            return False, witness
    return True, ""


# ---------------------------------------------------------------------------
# Locality certificates
# ---------------------------------------------------------------------------


class CertificateError(ValueError):
    """No certificate within the candidate shifts; carries the residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def certificate_from_terms(terms, payload_is_zero) -> list:
    """Minimal (shift, multiplicity) multiset read off live delta terms."""
    mult: dict[int, int] = {}
    for t in terms:
        if t.prefactor.is_zero() or payload_is_zero(t.payload):
            continue
        if isinstance(t.payload, FieldPayload) and t.payload.alpha == 0:
            continue
        need = 2 if t.deriv else 1
        mult[t.shift] = max(mult.get(t.shift, 0), need)
    return sorted(mult.items())


def verify_certificate(series: BiSeries, certificate, window: Window):
    """Multiply by every factor and report the residual table, if any.

    Returns (True, shrunk window, None) when the certificate annihilates the
    series inside the remaining window.
    """
    total = sum(m for _, m in certificate)
    if total >= window.bound:
        raise ValueError(
            f"window {window.bound} cannot absorb a certificate of weight {total}"
        )
    cur = series
    bound = window.bound
    for k, m in certificate:
        for _ in range(m):
            bound -= 1
            cur = mul_linear_factor(cur, RatQ.q_power(k), Window(bound))
    remaining = Window(bound)
    if cur.is_zero_on(remaining):
        return True, remaining, None
    return False, remaining, cur


def quasi_locality_certificate(terms, commutator_tables, candidates, window: Window,
                               payload_is_zero=None):
    """Certified annihilator for a field-pair commutator.

    ``terms`` is the commutator's delta decomposition, ``commutator_tables``
    the independently computed coefficient tables of the commutator (one per
    probe vector).  Each table must vanish after multiplication by
    prod (x1 - q^k x2)^mult inside the shrunk window; candidate shifts, when
    given, bound the allowed zeros.
    """
    if payload_is_zero is None:
        payload_is_zero = lambda payload: False
    cert = certificate_from_terms(terms, payload_is_zero)
    if candidates is not None:
        extra = [k for k, _ in cert if k not in candidates]
        if extra:
            raise CertificateError(
                f"required shifts {extra} outside the candidate set {sorted(candidates)}"
            )
    for table in commutator_tables:
        ok, _, residual = verify_certificate(table, cert, window)
        if not ok:
            pos = min(residual.coeffs)
            raise CertificateError(
                f"certificate {format_certificate(cert)} fails at position {pos}",
                residual=residual,
            )
    return cert


def format_certificate(certificate) -> str:
    if not certificate:
        return "1"
    return "*".join(f"(x1 - q^{k} x2)^{m}" for k, m in certificate)


# ---------------------------------------------------------------------------
# Product extraction from shift-zero deltas
# ---------------------------------------------------------------------------

SPACE_FIELD = "field"

ONE_SYMBOL = ("one",)


def _payload_symbol(payload, level: RatQ) -> Element:
    if isinstance(payload, CentralPayload):
        return Element.single(SPACE_FIELD, ONE_SYMBOL, level)
    alpha = payload.alpha
    if alpha == 0:
        return Element.zero(SPACE_FIELD)
    sign = ONE
    if alpha < 0:
        alpha, sign = -alpha, -ONE
    return Element.single(SPACE_FIELD, ("F", payload.family, alpha, payload.r), sign)


def extract_e_products(terms, level: RatQ) -> dict:
    """Nonzero products read off a commutator in the scaled-derivative shape.

    Only shift-zero deltas contribute: order zero gives the 0-th product,
    the once differentiated delta gives the 1-st, everything higher is zero.
    The central payload stands for ``level`` times the identity.
    """
    products: dict[int, Element] = {}
    for t in terms:
        if t.deriv not in (0, 1):
            raise ValueError("extraction requires derivative order <= 1")
        if t.shift != 0:
            continue
        sym = _payload_symbol(t.payload, level).scaled(t.prefactor)
        if sym.is_zero():
            continue
        cur = products.get(t.deriv)
        merged = sym if cur is None else cur + sym
        if merged.is_zero():
            products.pop(t.deriv, None)
        else:
            products[t.deriv] = merged
    return products


def rebuild_commutator_terms(products: dict) -> list:
    """Reassemble the standard-commutator delta expansion from products.

    Product n lands on (1/n!) (d/dx2)^n x1^{-1} delta(x2/x1); only n = 0, 1
    occur here.
    """
    terms = []
    for n in sorted(products):
        elem = products[n]
        for label, coef in sorted(elem.terms.items(), key=lambda kv: str(kv[0])):
            payload = CentralPayload() if label == ONE_SYMBOL else FieldPayload(
                label[1], label[2], label[3]
            )
            terms.append(
                DeltaTerm(0, coef, payload, deriv=n, flavor="d2", x1_inv=True)
            )
    return terms


def terms_to_symbolic(terms, level: RatQ) -> dict:
    """Canonical map (shift, deriv, flavor, x1_inv) -> symbolic payload sum."""
    table: dict = {}
    for t in terms:
        sym = _payload_symbol(t.payload, level).scaled(t.prefactor)
        if sym.is_zero():
            continue
        key = (t.shift, t.deriv, t.flavor if t.deriv else "d2", t.x1_inv)
        cur = table.get(key)
        merged = sym if cur is None else cur + sym
        if merged.is_zero():
            table.pop(key, None)
        else:
            table[key] = merged
    return table


def format_field_symbol(label) -> str:
    if label == ONE_SYMBOL:
        return "1"
    return f"{label[1]}[{label[2]},{label[3]}]"


def format_field_element(e: Element) -> str:
    return format_element(e, format_field_symbol)

"""Exact arithmetic in the rational-function field Q(q).

The deformation parameter q is handled as a transcendental: every scalar is a
ratio of integer-coefficient Laurent polynomials in q, kept in a normal form
that makes equality of values equal to structural equality.  Quantum integers
[n] with respect to any integer power of q are provided in reduced
(denominator-free) form so that specialization at q = 1 stays well defined.

Normal form of a nonzero ratio: write the value as (a/b) * q^e * P/Q with
P, Q primitive integer polynomials, coprime, nonzero constant terms and
positive leading coefficients, and a/b a reduced fraction with b > 0.  The
stored numerator is a*q^e*P (an integer Laurent polynomial, carrying the sign
and the global q power) and the stored denominator is b*Q.
"""

from __future__ import annotations

import re
from fractions import Fraction


class LaurentPoly:
    """Sparse Laurent polynomial in q with rational coefficients.

    Stored as {exponent: coefficient}; zero coefficients are never kept, and
    integral coefficients are stored as int.  Instances are treated as
    immutable: no method mutates self after construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c == 0:
                    continue
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                clean[e] = c
        self.coeffs = clean

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def q_power(e: int) -> "LaurentPoly":
        return LaurentPoly({e: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs or not other.coeffs:
            return ZERO_POLY
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return ZERO_POLY
        return LaurentPoly({e: k * c for e, k in self.coeffs.items()})

    def shift(self, d: int) -> "LaurentPoly":
        if d == 0:
            return self
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e + d: c for e, c in self.coeffs.items()}
        return res

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def leading_coeff(self):
        return self.coeffs[self.degree()]

    def evaluate(self, q0: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += Fraction(c) * q0 ** e
        return total

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        return format_poly(self)


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly({0: 1})


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Division with remainder for ordinary polynomials (valuation >= 0)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(a.coeffs)
    quot = {}
    db = b.degree()
    lb = Fraction(b.leading_coeff())
    while rem:
        dr = max(rem)
        if dr < db:
            break
        factor = Fraction(rem[dr]) / lb
        shift = dr - db
        quot[shift] = factor
        for e, c in b.coeffs.items():
            e2 = e + shift
            s = rem.get(e2, 0) - factor * c
            if s == 0:
                rem.pop(e2, None)
            else:
                rem[e2] = s
    return LaurentPoly(quot), LaurentPoly(rem)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of ordinary polynomials over Q."""
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return ZERO_POLY
    lead = Fraction(a.leading_coeff())
    return a.scale(1 / lead)


def _primitive(p: LaurentPoly):
    """Split p = content * primitive with a primitive positive-lead integer part.

    The content is a Fraction carrying p's sign and all rational content.
    """
    from math import gcd, lcm

    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs.values():
        f = Fraction(c)
        num_gcd = gcd(num_gcd, abs(f.numerator))
        den_lcm = lcm(den_lcm, f.denominator)
    content = Fraction(num_gcd, den_lcm)
    if p.leading_coeff() < 0:
        content = -content
    prim = LaurentPoly({e: int(Fraction(c) / content) for e, c in p.coeffs.items()})
    return content, prim


class RatQ:
    """An element of Q(q) in normal form; immutable.

    Construct through `normalize` (or the arithmetic operators); the raw
    constructor trusts its arguments.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        self.num = num
        self.den = den

    @staticmethod
    def from_int(n) -> "RatQ":
        f = Fraction(n)
        return RatQ(LaurentPoly({0: f.numerator}), LaurentPoly({0: f.denominator}))

    @staticmethod
    def q_power(e: int) -> "RatQ":
        return RatQ(LaurentPoly({e: 1}), ONE_POLY)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatQ)
            and self.num.coeffs == other.num.coeffs
            and self.den.coeffs == other.den.coeffs
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RatQ") -> "RatQ":
        if self.den.is_one() and other.den.is_one():
            return RatQ(self.num + other.num, ONE_POLY)
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatQ") -> "RatQ":
        if self.den.is_one() and other.den.is_one():
            return RatQ(self.num - other.num, ONE_POLY)
        return normalize(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatQ":
        return RatQ(-self.num, self.den)

    def __mul__(self, other: "RatQ") -> "RatQ":
        if self.den.is_one() and other.den.is_one():
            return RatQ(self.num * other.num, ONE_POLY)
        return normalize(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatQ":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in Q(q)")
        return normalize(self.den, self.num)

    def __truediv__(self, other: "RatQ") -> "RatQ":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return normalize(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatQ":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"RatQ({self})"

    def __str__(self):
        return format_ratq(self)


def normalize(num: LaurentPoly, den: LaurentPoly) -> RatQ:
    """Bring a raw numerator/denominator pair to the unique normal form."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero in Q(q)")
    if num.is_zero():
        return ZERO
    e = num.valuation() - den.valuation()
    p = num.shift(-num.valuation())
    qq = den.shift(-den.valuation())
    if not qq.is_one():
        g = _poly_gcd(p, qq)
        if not g.is_one():
            p, _ = _poly_divmod(p, g)
            qq, _ = _poly_divmod(qq, g)
    cp, p_prim = _primitive(p)
    cq, q_prim = _primitive(qq)
    scalar = cp / cq
    num_out = p_prim.scale(scalar.numerator).shift(e)
    den_out = q_prim.scale(scalar.denominator)
    return RatQ(num_out, den_out)


ZERO = RatQ(ZERO_POLY, ONE_POLY)
ONE = RatQ(ONE_POLY, ONE_POLY)
Q = RatQ.q_power(1)


def qint(n: int, gamma: int = 1) -> RatQ:
    """Quantum integer [n] for the base q^gamma, as a reduced Laurent polynomial.

    For gamma = 0 the conventional value is the plain integer n.  The reduced
    form (q^{gamma(n-1)} + q^{gamma(n-3)} + ... + q^{-gamma(n-1)} for n > 0)
    agrees with the defining ratio (q^{-gamma n} - q^{gamma n})/(q^{-gamma} - q^{gamma})
    and stays evaluable at q = 1.
    """
    if gamma == 0:
        return RatQ.from_int(n)
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    coeffs = {}
    for i in range(m):
        e = gamma * (m - 1 - 2 * i)
        coeffs[e] = coeffs.get(e, 0) + sign
    return RatQ(LaurentPoly(coeffs), ONE_POLY)


def q_power_minus_inverse(k: int) -> RatQ:
    """q^k - q^{-k} as a RatQ; zero when k = 0."""
    if k == 0:
        return ZERO
    return RatQ(LaurentPoly({k: 1, -k: -1}), ONE_POLY)


def binom(m: int, j: int) -> Fraction:
    """Binomial coefficient with arbitrary integer top; exact."""
    if j < 0:
        return Fraction(0)
    num = 1
    for t in range(j):
        num *= m - t
    den = 1
    for t in range(1, j + 1):
        den *= t
    return Fraction(num, den)


def eval_at(a: RatQ, q0) -> Fraction:
    """Exact value of a at q = q0 (a nonzero rational); raises on poles."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise ZeroDivisionError("cannot evaluate at q = 0")
    den_val = a.den.evaluate(q0)
    if den_val == 0:
        raise ZeroDivisionError(f"denominator {format_poly(a.den)} vanishes at q = {q0}")
    return a.num.evaluate(q0) / den_val


# ---------------------------------------------------------------------------
# Text form: terms `c*q^e` with ascending exponents joined by ` + `/` - `;
# a proper ratio prints as (NUM)/(DEN), the denominator omitted when 1.
# ---------------------------------------------------------------------------

def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = Fraction(p.coeffs[e])
        mag = abs(c)
        body = str(mag) if e == 0 else f"{mag}*q^{e}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def format_ratq(a: RatQ) -> str:
    if a.den.is_one():
        return format_poly(a.num)
    return f"({format_poly(a.num)})/({format_poly(a.den)})"


_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)(?:\*q\^(-?\d+))?$")


def parse_poly(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return ZERO_POLY
    # split on " + " / " - " while keeping a possible leading sign
    tokens = re.split(r" ([+-]) ", text)
    coeffs = {}
    sign = 1
    for k, tok in enumerate(tokens):
        if k % 2 == 1:
            sign = 1 if tok == "+" else -1
            continue
        m = _TERM_RE.match(tok.strip())
        if not m:
            raise ValueError(f"bad polynomial term: {tok!r}")
        c = Fraction(m.group(1)) * sign
        e = int(m.group(2)) if m.group(2) is not None else 0
        coeffs[e] = coeffs.get(e, 0) + c
    return LaurentPoly(coeffs)


def parse_ratq(text: str) -> RatQ:
    """Parse the canonical text form back into a normalized RatQ."""
    text = text.strip()
    m = re.match(r"^\((?P<num>.*)\)/\((?P<den>.*)\)$", text)
    if m:
        return normalize(parse_poly(m.group("num")), parse_poly(m.group("den")))
    return normalize(parse_poly(text), ONE_POLY)

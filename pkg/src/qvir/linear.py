"""Sparse linear combinations with RatQ coefficients.

One container serves every linear space in the kernel: Lie-algebra elements,
loop-algebra elements, module vectors and symbolic field combinations.  Labels
are plain tuples; each Element carries a space tag and refuses to mix tags.
Zero coefficients are never stored, so equality is dict equality.
"""

from __future__ import annotations

from .ratfunc import ONE, RatQ


class Element:
    """Finite RatQ-linear combination of hashable labels within one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: str, terms: dict | None = None):
        self.space = space
        self.terms = {}
        if terms:
            for label, coef in terms.items():
                if coef.is_zero():
                    continue
                self.terms[label] = coef

    @staticmethod
    def zero(space: str) -> "Element":
        return Element(space)

    @staticmethod
    def single(space: str, label, coef: RatQ = ONE) -> "Element":
        e = Element(space)
        if not coef.is_zero():
            e.terms[label] = coef
        return e

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __add__(self, other: "Element") -> "Element":
        if self.space != other.space:
            raise ValueError(f"space mismatch: {self.space} vs {other.space}")
        out = dict(self.terms)
        for label, coef in other.terms.items():
            s = out.get(label)
            s = coef if s is None else s + coef
            if s.is_zero():
                out.pop(label, None)
            else:
                out[label] = s
        res = Element(self.space)
        res.terms = out
        return res

    def __neg__(self) -> "Element":
        res = Element(self.space)
        res.terms = {label: -coef for label, coef in self.terms.items()}
        return res

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scaled(self, c: RatQ) -> "Element":
        if c.is_zero():
            return Element(self.space)
        res = Element(self.space)
        res.terms = {label: coef * c for label, coef in self.terms.items()}
        return res

    def add_scaled(self, other: "Element", c: RatQ) -> "Element":
        return self + other.scaled(c)

    def coefficient(self, label) -> RatQ:
        from .ratfunc import ZERO

        return self.terms.get(label, ZERO)

    def __repr__(self):
        return f"Element({self.space}, {format_element(self)})"


class Accumulator:
    """Mutable builder for sums of many scaled Elements."""

    __slots__ = ("space", "terms")

    def __init__(self, space: str):
        self.space = space
        self.terms: dict = {}

    def add(self, elem: Element, coef: RatQ | None = None) -> None:
        if elem.space != self.space:
            raise ValueError(f"space mismatch: {self.space} vs {elem.space}")
        for label, c in elem.terms.items():
            if coef is not None:
                c = c * coef
            s = self.terms.get(label)
            s = c if s is None else s + c
            if s.is_zero():
                self.terms.pop(label, None)
            else:
                self.terms[label] = s

    def add_term(self, label, coef: RatQ) -> None:
        if coef.is_zero():
            return
        s = self.terms.get(label)
        s = coef if s is None else s + coef
        if s.is_zero():
            self.terms.pop(label, None)
        else:
            self.terms[label] = s

    def element(self) -> Element:
        res = Element(self.space)
        res.terms = self.terms
        return res


def label_sort_key(label):
    """Deterministic ordering across the mixed tuple labels used here."""
    return (len(label), tuple(str(x) if isinstance(x, str) else x for x in label))


def format_element(elem: Element, label_fmt=None) -> str:
    """`coeff * label` terms joined by ` + `, labels in sorted order."""
    if elem.is_zero():
        return "0"
    if label_fmt is None:
        label_fmt = str
    parts = []
    for label in sorted(elem.terms, key=label_sort_key):
        parts.append(f"({elem.terms[label]}) * {label_fmt(label)}")
    return " + ".join(parts)

"""Exact multivariate polynomials over the rationals.

The ground ring is ``A = Q[x1, ..., xn]``.  Polynomials are sparse maps from
exponent tuples to nonzero exact rationals (``int`` when integral, else
``Fraction``).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from gerstkit import kernels

Rational = Fraction
Scalar = Union[int, Fraction]

# small nonzero coefficients keep intermediate expressions short
COEFF_POOL = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3)


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")

    @classmethod
    def standard(cls, n: int) -> "PolyRing":
        return cls(tuple(f"x{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: Scalar) -> "Poly":
        c = kernels.norm(Fraction(c))
        return Poly(self, {(0,) * self.n: c} if c else {})

    def var(self, i: int) -> "Poly":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for {self.n} variables")
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.n)]

    def monomials(self, max_degree: int) -> list[tuple[int, ...]]:
        """All exponent tuples of total degree <= max_degree, graded-lex order."""
        out = []
        for d in range(max_degree + 1):
            for combo in itertools.combinations_with_replacement(range(self.n), d):
                e = [0] * self.n
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
        return out


class Poly:
    """Immutable sparse polynomial. Arithmetic is exact."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring.names} vs {self.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly(self.ring, kernels.add_terms(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly(self.ring, kernels.add_terms(self.terms, o.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(self.ring, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, kernels.scale_terms(self.terms, other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return Poly(self.ring, {})
        return Poly(self.ring, kernels.mul_terms(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        """Partial derivative in the 0-based variable ``i``."""
        return Poly(self.ring, kernels.diff_terms(self.terms, i))

    # queries ----------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return Fraction(self.terms.get((0,) * self.ring.n, 0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def poly_arith(op: str, p: Poly, q) -> Poly:
    """Dispatch form of the four ring operations (``add``, ``mul``, ``neg``, ``scalar_mul``)."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "scalar_mul":
        if not isinstance(q, (int, Fraction)):
            raise TypeError("scalar_mul expects a rational scalar")
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, i: int) -> Poly:
    """d p / d x_i with the 1-based variable index used in mathematical notation."""
    if not 1 <= i <= p.ring.n:
        raise IndexError(f"variable index {i} out of range 1..{p.ring.n}")
    return p.diff(i - 1)


def random_element(ring: PolyRing, max_degree: int, max_terms: int,
                   seed: int | random.Random) -> Poly:
    """A reproducible random nonzero polynomial.

    ``seed`` may be an int or an existing :class:`random.Random`, in which case
    the generator is advanced.
    """
    if max_degree < 0 or max_terms < 1:
        raise ValueError("need max_degree >= 0 and max_terms >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    monos = ring.monomials(max_degree)
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    return Poly(ring, {e: rng.choice(COEFF_POOL) for e in chosen})


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(ring: PolyRing, e: Iterable[int]) -> str:
    parts = []
    for name, k in zip(ring.names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _term_order(e):
    return (-sum(e), tuple(-x for x in e))


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=_term_order):
        c = p.terms[e]
        mono = format_monomial(p.ring, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s

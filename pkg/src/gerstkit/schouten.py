"""The Gerstenhaber algebra of polyvectors of a Lie algebroid.

Elements of ``Lambda_A(T)`` are stored as maps from strictly increasing
generator tuples to polynomial coefficients.  The product is the wedge
product and the bracket is the Schouten-Nijenhuis bracket with the convention
``[tau, a] = tau(a)``, hence ``[a, tau] = -tau(a)``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from gerstkit.algebroid import AlgebroidPresentation, DimensionMismatch, TSection
from gerstkit.poly import Poly, random_element
from gerstkit.report import Report
from gerstkit.rng import derive_rng


def sign(e: int) -> int:
    return -1 if e & 1 else 1


class Polyvector:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: AlgebroidPresentation, terms: dict):
        self.alg = alg
        self.terms = terms

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, alg) -> "Polyvector":
        return cls(alg, {})

    @classmethod
    def scalar(cls, alg, a) -> "Polyvector":
        if not isinstance(a, Poly):
            a = alg.ring.const(a)
        return cls(alg, {(): a} if a else {})

    @classmethod
    def gen(cls, alg, *idx: int, coeff: Poly | None = None) -> "Polyvector":
        """``coeff * e_{idx[0]} ^ ... ^ e_{idx[-1]}`` (0-based indices, any order)."""
        c = alg.ring.one() if coeff is None else coeff
        return cls(alg, {(): c} if c else {}) * _monomial(alg, idx)

    @classmethod
    def from_section(cls, tau: TSection) -> "Polyvector":
        return cls(tau.alg, {(i,): c for i, c in enumerate(tau.coeffs) if c})

    def to_section(self) -> TSection:
        if any(len(k) != 1 for k in self.terms):
            raise ValueError("not a grade-1 polyvector")
        zero = self.alg.ring.zero()
        return TSection(self.alg, tuple(self.terms.get((i,), zero) for i in range(self.alg.m)))

    def to_scalar(self) -> Poly:
        """The grade-0 component."""
        return self.terms.get((), self.alg.ring.zero())

    # linear structure -------------------------------------------------------
    def _check(self, other: "Polyvector"):
        if other.alg is not self.alg:
            raise DimensionMismatch("polyvectors over different presentations")

    def __add__(self, other):
        if not isinstance(other, Polyvector):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k)
            c = v if c is None else c + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return Polyvector(self.alg, out)

    def __neg__(self):
        return Polyvector(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polyvector):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Polyvector":
        """Multiply by a rational or a polynomial."""
        if isinstance(c, (int, Fraction)):
            if c == 1:
                return self
            if c == -1:
                return -self
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return Polyvector(self.alg, out)

    def __mul__(self, other):
        if isinstance(other, Polyvector):
            return wedge(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    # grading ----------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set[int]:
        return {len(k) for k in self.terms}

    @property
    def grade(self) -> int:
        """Grade of a homogeneous element (0 for the zero element)."""
        g = self.grades()
        if len(g) > 1:
            raise ValueError(f"inhomogeneous polyvector with grades {sorted(g)}")
        return g.pop() if g else 0

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def component(self, p: int) -> "Polyvector":
        return Polyvector(self.alg, {k: v for k, v in self.terms.items() if len(k) == p})

    def homogeneous_parts(self) -> list["Polyvector"]:
        return [self.component(p) for p in sorted(self.grades())]

    def __eq__(self, other):
        if isinstance(other, Polyvector):
            return self.alg is other.alg and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polyvector({str(self)!r})"

    def __str__(self):
        from gerstkit.parsing import format_polyvector
        return format_polyvector(self)


def _monomial(alg, idx) -> Polyvector:
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return Polyvector.zero(alg)
    s = _perm_sign(idx)
    return Polyvector(alg, {tuple(sorted(idx)): alg.ring.const(s)})


def _perm_sign(idx) -> int:
    inv = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
    return sign(inv)


def _merge(I, J):
    """Sorted union of disjoint increasing tuples and the sign of the shuffle, or None."""
    if not I:
        return J, 1
    if not J:
        return I, 1
    inv = 0
    for a in I:
        for b in J:
            if a == b:
                return None
            if a > b:
                inv += 1
    return tuple(sorted(I + J)), sign(inv)


def wedge(P: Polyvector, Q: Polyvector) -> Polyvector:
    """Graded-commutative exterior product over ``A``."""
    P._check(Q)
    out: dict = {}
    for I, a in P.terms.items():
        for J, b in Q.terms.items():
            m = _merge(I, J)
            if m is None:
                continue
            K, s = m
            c = a * b
            if s < 0:
                c = -c
            prev = out.get(K)
            c = c if prev is None else prev + c
            if c:
                out[K] = c
            else:
                out.pop(K, None)
    return Polyvector(P.alg, out)


# -- Schouten-Nijenhuis bracket --------------------------------------------------

def _gen_gen(alg, I: tuple, J: tuple) -> Polyvector:
    """``[e_I, e_J]`` for constant-coefficient generator monomials (memoised)."""
    cache = alg._cache.setdefault("gen_gen", {})
    key = (I, J)
    hit = cache.get(key)
    if hit is not None:
        return hit
    p, q = len(I), len(J)
    if p == 0 or q == 0:
        out = Polyvector.zero(alg)
    elif p == 1 and q == 1:
        vec = alg.gen_bracket(I[0], J[0])
        out = Polyvector(alg, {(k,): c for k, c in enumerate(vec) if c})
    elif p == 1:
        # right peel: [x, y z] = [x, y] z + y [x, z]  (x, y odd generators)
        head, tail = J[:1], J[1:]
        out = (wedge(_gen_gen(alg, I, head), _mono(alg, tail))
               + wedge(_mono(alg, head), _gen_gen(alg, I, tail)))
    else:
        # left peel: [x y, z] = x [y, z] + (-1)^{|y|(|z|+1)} [x, z] y
        head, tail = I[:1], I[1:]
        s = sign((p - 1) * (q + 1))
        out = (wedge(_mono(alg, head), _gen_gen(alg, tail, J))
               + wedge(_gen_gen(alg, head, J), _mono(alg, tail)).scale(s))
    cache[key] = out
    return out


def _mono(alg, I) -> Polyvector:
    return Polyvector(alg, {tuple(I): alg.ring.one()})


def _scalar_gen(alg, a: Poly, J: tuple) -> Polyvector:
    """``[a, e_J] = sum_k (-1)^(k-1) (-e_{j_k}(a)) e_{J minus j_k}``."""
    out = {}
    for k, j in enumerate(J):
        v = alg.act(j, a)
        if not v:
            continue
        if k % 2 == 0:
            v = -v
        key = J[:k] + J[k + 1:]
        prev = out.get(key)
        v = v if prev is None else prev + v
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Polyvector(alg, out)


def _term_bracket(alg, a: Poly, I: tuple, b: Poly, J: tuple) -> Polyvector:
    p, q = len(I), len(J)
    # [a e_I, b e_J] = a [e_I, b e_J] + (-1)^{p(q+1)} [a, b e_J] e_I
    # [e_I, b e_J]   = [e_I, b] e_J + b [e_I, e_J],   [e_I, b] = (-1)^p [b, e_I]
    # [a, b e_J]     = b [a, e_J]
    out = Polyvector.zero(alg)
    if p:
        first = _scalar_gen(alg, b, I)
        if first:
            first = wedge(first, _mono(alg, J))
            if p % 2:
                first = -first
        gg = _gen_gen(alg, I, J)
        if gg:
            first = first + gg.scale(b)
        if first:
            out = first.scale(a)
    if q:
        second = _scalar_gen(alg, a, J)
        if second:
            second = wedge(second.scale(b), _mono(alg, I))
            if (p * (q + 1)) % 2:
                second = -second
            out = out + second
    return out


def schouten_bracket(P: Polyvector, Q: Polyvector) -> Polyvector:
    P._check(Q)
    alg = P.alg
    out = Polyvector.zero(alg)
    for I, a in P.terms.items():
        for J, b in Q.terms.items():
            t = _term_bracket(alg, a, I, b, J)
            if t:
                out = out + t
    return out


bracket = schouten_bracket


# -- sampling -------------------------------------------------------------------

def random_polyvector(alg, rng: random.Random, grade: int, max_degree: int = 2,
                      max_terms: int = 2, n_terms: int = 2) -> Polyvector:
    """A random nonzero homogeneous polyvector of the given grade (``grade <= m``)."""
    idx = list(itertools.combinations(range(alg.m), grade))
    chosen = rng.sample(idx, min(len(idx), rng.randint(1, n_terms)))
    return Polyvector(alg, {I: random_element(alg.ring, max_degree, max_terms, rng) for I in chosen})


def grade_cycle(rng: random.Random, k: int, max_grade: int, trial: int) -> tuple[int, ...]:
    """Grades for a k-tuple: all parity patterns come first, then uniform draws."""
    pats = list(itertools.product((0, 1), repeat=k))
    if trial < len(pats):
        out = []
        for par in pats[trial]:
            choices = [g for g in range(max_grade + 1) if g % 2 == par] or [0]
            out.append(rng.choice(choices))
        return tuple(out)
    return tuple(rng.randint(0, max_grade) for _ in range(k))


# -- axiom suite ------------------------------------------------------------------

def check_gerstenhaber(L: AlgebroidPresentation, trials: int = 100, seed: int = 0,
                       max_grade: int = 3, max_degree: int = 2, bracket_fn=None) -> Report:
    """(G1), (G2), (G3) and the two Poisson identities on random homogeneous triples.

    ``bracket_fn`` substitutes the bracket under test (used to demonstrate that
    deliberately broken brackets are caught).
    """
    br = bracket_fn or schouten_bracket
    gmax = min(max_grade, L.m)
    rng = derive_rng(seed, "gerstenhaber", L.name)
    triples = []
    for t in range(trials):
        gs = grade_cycle(rng, 3, gmax, t)
        triples.append(tuple(random_polyvector(L, rng, g, max_degree) for g in gs))

    def g1(x, y, z):
        a, b = x.grade, y.grade
        return br(x, y) == -br(y, x).scale(sign((a - 1) * (b - 1)))

    def g2(x, y, z):
        a, b = x.grade, y.grade
        return br(x, br(y, z)) == br(br(x, y), z) + br(y, br(x, z)).scale(sign((a - 1) * (b - 1)))

    def g3(x, y, z):
        a, b = x.grade, y.grade
        return br(x, y * z) == br(x, y) * z + (y * br(x, z)).scale(sign(b * (a - 1)))

    def leib_r(x, y, z):
        a, b = x.grade, y.grade
        return br(x, y * z) == br(x, y) * z + (y * br(x, z)).scale(sign(b * (a + 1)))

    def leib_l(x, y, z):
        b, c = y.grade, z.grade
        return br(x * y, z) == x * br(y, z) + (br(x, z) * y).scale(sign(b * (c + 1)))

    report = Report("gerstenhaber", seed=seed)
    for name, pred in (("G1", g1), ("G2", g2), ("G3", g3), ("leibniz-right", leib_r), ("leibniz-left", leib_l)):
        bad = next((t for t in triples if not pred(*t)), None)
        report.record(name, bad is None, len(triples),
                      None if bad is None else "; ".join(str(v) for v in bad))
    return report

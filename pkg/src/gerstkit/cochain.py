"""Multilinear cochains as typed evaluators, with sampling-based comparison.

Cochain spaces here are infinite dimensional over Q, so cochains are stored as
pure evaluator functions and identities are checked by evaluation on random
homogeneous arguments plus a small deterministic enumeration of monomials.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from gerstkit.algebroid import AlgebroidPresentation, TSection, random_section
from gerstkit.poly import Poly, random_element
from gerstkit.report import Report, Verdict
from gerstkit.rng import derive_rng
from gerstkit.schouten import Polyvector, grade_cycle, random_polyvector, sign


class Kind(str, enum.Enum):
    A = "ScalarA"
    T = "SectionT"
    G = "PolyvectorG"


@dataclass(frozen=True)
class Slot:
    kind: Kind
    group: str | None = None


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Cochain:
    signature: tuple[Slot, ...]
    codomain: Kind
    degree: int
    evaluator: Callable
    label: str = ""

    @property
    def arity(self) -> int:
        return len(self.signature)

    def __call__(self, *args):
        return self.evaluator(*args)

    def relabel(self, label: str) -> "Cochain":
        return replace(self, label=label)

    def group_slots(self, group: str) -> list[int]:
        return [i for i, s in enumerate(self.signature) if s.group == group]

    def __repr__(self):
        kinds = ",".join(s.kind.name for s in self.signature)
        return f"Cochain({self.label or '?'}: ({kinds}) -> {self.codomain.name}, deg {self.degree})"


def make_cochain(signature, codomain, degree: int, evaluator, label: str = "") -> Cochain:
    sig = tuple(s if isinstance(s, Slot) else Slot(Kind(s)) for s in signature)
    codomain = Kind(codomain)
    groups: dict = {}
    for s in sig:
        if s.group is not None and groups.setdefault(s.group, s.kind) != s.kind:
            raise SignatureMismatch(f"slots of group {s.group!r} must share a kind")
    return Cochain(sig, codomain, degree, evaluator, label)


_CARRIERS = {Kind.A: Poly, Kind.T: TSection, Kind.G: Polyvector}


def evaluate(c: Cochain, args) -> object:
    args = tuple(args)
    if len(args) != c.arity:
        raise SignatureMismatch(f"{c.label or 'cochain'} takes {c.arity} arguments, got {len(args)}")
    for k, (s, a) in enumerate(zip(c.signature, args)):
        if not isinstance(a, _CARRIERS[s.kind]):
            raise SignatureMismatch(f"argument {k + 1} must be {s.kind.value}, got {type(a).__name__}")
    return c.evaluator(*args)


def g_signature(n: int, alternating: int = 0, group: str = "alt") -> tuple[Slot, ...]:
    """``n`` polyvector slots, the first ``alternating`` of which form one group."""
    return tuple(Slot(Kind.G, group if i < alternating else None) for i in range(n))


def graded(fn, alg: AlgebroidPresentation):
    """Lift an evaluator defined on homogeneous polyvectors to all polyvectors."""

    def ev(*xs):
        zero = Polyvector.zero(alg)
        if any(not x.terms for x in xs):
            return zero
        if all(x.is_homogeneous() for x in xs):
            return fn(*xs)
        out = zero
        for combo in itertools.product(*(x.homogeneous_parts() for x in xs)):
            out = out + fn(*combo)
        return out

    return ev


def graded_cochain(alg, n: int, degree: int, fn, label: str = "", alternating: int = 0) -> Cochain:
    return Cochain(g_signature(n, alternating), Kind.G, degree, graded(fn, alg), label)


def zero_cochain(alg, signature, codomain, degree: int = 0) -> Cochain:
    codomain = Kind(codomain)
    if codomain is Kind.G:
        return make_cochain(signature, codomain, degree, lambda *a: Polyvector.zero(alg), "0")
    return make_cochain(signature, codomain, degree, lambda *a: alg.ring.zero(), "0")


# -- permutation signs -------------------------------------------------------------

def shifted_perm_sign(perm, grades) -> int:
    """Koszul sign in ``G[1]`` of reordering ``x`` into ``(x[perm[0]], x[perm[1]], ...)``.

    Each inverted pair of elements with grades (a, b) contributes ``-(-1)^((a-1)(b-1))``.
    """
    s = 1
    for k, l in itertools.combinations(range(len(perm)), 2):
        if perm[k] > perm[l]:
            a, b = grades[perm[k]], grades[perm[l]]
            if not ((a - 1) * (b - 1)) & 1:
                s = -s
    return s


def perm_sign(perm) -> int:
    inv = sum(1 for k, l in itertools.combinations(range(len(perm)), 2) if perm[k] > perm[l])
    return sign(inv)


def antisymmetrize(alg, raw, n_alt: int, n_tail: int = 0, kind: Kind = Kind.G):
    """Alternating sum of ``raw`` over its first ``n_alt`` arguments (no 1/n! factor).

    Polyvector slots use the shifted signs of ``G[1]``; section slots use the
    ordinary sign of the permutation.
    """
    perms = list(itertools.permutations(range(n_alt)))

    def ev(*xs):
        head, tail = xs[:n_alt], xs[n_alt:]
        out = None
        if kind is Kind.G:
            grades = [x.grade for x in head]
        for p in perms:
            s = shifted_perm_sign(p, grades) if kind is Kind.G else perm_sign(p)
            v = raw(*(head[i] for i in p), *tail)
            v = v if s > 0 else -v
            out = v if out is None else out + v
        return out

    return ev


# -- sampling ----------------------------------------------------------------------

@dataclass
class Sampler:
    """Argument-tuple generator for sampled identities.

    Every run includes a deterministic enumeration of monomial tuples: basis
    elements ``x^a e_I`` of weight ``|a| + |I| <= 2`` for arity <= 2 and weight
    <= 1 beyond, strided down to at most ``enum_cap`` tuples.
    """

    trials: int = 50
    seed: int = 0
    grade_bound: int = 3
    degree_bound: int = 2
    max_terms: int = 2
    enum_cap: int = 200
    label: str = ""
    extra: list = field(default_factory=list)

    def rng(self, *labels) -> random.Random:
        return derive_rng(self.seed, "sampler", self.label, *labels)

    def random_tuples(self, alg, signature) -> list[tuple]:
        rng = self.rng("random", tuple(s.kind.name for s in signature))
        n_g = sum(1 for s in signature if s.kind is Kind.G)
        gmax = min(self.grade_bound, alg.m)
        out = []
        for t in range(self.trials):
            grades = iter(grade_cycle(rng, n_g, gmax, t))
            args = []
            for s in signature:
                if s.kind is Kind.A:
                    args.append(random_element(alg.ring, self.degree_bound, self.max_terms, rng))
                elif s.kind is Kind.T:
                    args.append(random_section(alg, rng, self.degree_bound, self.max_terms))
                else:
                    args.append(random_polyvector(alg, rng, next(grades), self.degree_bound,
                                                  self.max_terms))
            out.append(tuple(args))
        return out

    def basis(self, alg, kind: Kind, weight: int) -> list:
        ring = alg.ring
        monos = {d: [e for e in ring.monomials(d) if sum(e) == d] for d in range(weight + 1)}
        if kind is Kind.A:
            grades = [0]
        elif kind is Kind.T:
            grades = [1]
        else:
            grades = range(min(weight, alg.m) + 1)
        out = []
        for g in grades:
            for I in itertools.combinations(range(alg.m), g):
                for d in range(weight - g + 1):
                    for e in monos[d]:
                        c = Poly(ring, {e: Fraction(1)})
                        if kind is Kind.A:
                            out.append(c)
                        elif kind is Kind.T:
                            out.append(TSection.gen(alg, I[0], c))
                        else:
                            out.append(Polyvector(alg, {I: c}))
        return out

    def enumerated_tuples(self, alg, signature) -> list[tuple]:
        weight = 2 if len(signature) <= 2 else 1
        pools = [self.basis(alg, s.kind, weight) for s in signature]
        total = 1
        for p in pools:
            total *= len(p)
        if total == 0:
            return []
        if total <= self.enum_cap:
            return list(itertools.product(*pools))
        stride = total / self.enum_cap
        out = []
        for k in range(self.enum_cap):
            idx = int(k * stride)
            combo = []
            for p in reversed(pools):
                idx, r = divmod(idx, len(p))
                combo.append(p[r])
            out.append(tuple(reversed(combo)))
        return out

    def tuples(self, alg, signature) -> list[tuple]:
        if not signature:
            return [()]
        return self.enumerated_tuples(alg, signature) + self.random_tuples(alg, signature) \
            + list(self.extra)


def format_args(args) -> str:
    from gerstkit.parsing import format_value
    return "(" + ", ".join(format_value(a) for a in args) + ")"


def _values_equal(u, v) -> bool:
    return u == v


def cochain_equal(c1: Cochain, c2: Cochain, sampler: Sampler, alg: AlgebroidPresentation) -> Verdict:
    """Exact agreement of two cochains on every sampled argument tuple."""
    if tuple(s.kind for s in c1.signature) != tuple(s.kind for s in c2.signature) \
            or c1.codomain != c2.codomain:
        raise SignatureMismatch(f"{c1!r} and {c2!r} have different signatures")
    tuples = sampler.tuples(alg, c1.signature)
    for args in tuples:
        u, v = c1(*args), c2(*args)
        if not _values_equal(u, v):
            return Verdict(False, format_args(args), len(tuples),
                           detail=f"{c1.label or 'lhs'} = {u}, {c2.label or 'rhs'} = {v}")
    return Verdict(True, None, len(tuples))


def vanishes(c: Cochain, sampler: Sampler, alg) -> Verdict:
    """``c`` evaluates to zero on every sampled tuple."""
    tuples = sampler.tuples(alg, c.signature)
    for args in tuples:
        v = c(*args)
        if v != 0 and not (hasattr(v, "is_zero") and v.is_zero()):
            return Verdict(False, format_args(args), len(tuples), detail=f"value {v}")
    return Verdict(True, None, len(tuples))


def check_alternating(c: Cochain, group: str, trials: int = 30, seed: int = 0,
                      alg: AlgebroidPresentation | None = None, sampler: Sampler | None = None) -> Report:
    """Adjacent-transposition antisymmetry within ``group``.

    Polyvector slots: ``f(.., x, y, ..) = -(-1)^((|x|-1)(|y|-1)) f(.., y, x, ..)``;
    section slots: ordinary antisymmetry.
    """
    report = Report("alternating", seed=seed)
    slots = c.group_slots(group)
    if not slots:
        raise KeyError(f"no slots in group {group!r}")
    name = f"alternating[{group}]"
    if len(slots) < 2:
        report.ok(name, 0, detail="vacuous")
        return report
    sampler = sampler or Sampler(trials=trials, seed=seed, label=f"alt-{c.label}")
    tuples = sampler.tuples(alg, c.signature)
    kind = c.signature[slots[0]].kind
    for args in tuples:
        base = c(*args)
        for i, j in zip(slots, slots[1:]):
            if j != i + 1:
                raise SignatureMismatch("alternating group slots must be contiguous")
            swapped = list(args)
            swapped[i], swapped[j] = args[j], args[i]
            other = c(*swapped)
            if kind is Kind.G:
                s = -sign((args[i].grade - 1) * (args[j].grade - 1))
            else:
                s = -1
            expect = other if s > 0 else -other
            if base != expect:
                report.fail(name, len(tuples), format_args(args),
                            detail=f"swap {i + 1}<->{j + 1}: {base} vs {expect}")
                return report
    report.ok(name, len(tuples))
    return report


def check_degree(c: Cochain, sampler: Sampler, alg) -> Verdict:
    """``grade(c(x)) = sum(grades) + degree`` on homogeneous samples."""
    tuples = sampler.tuples(alg, c.signature)
    for args in tuples:
        v = c(*args)
        if not v:
            continue
        expect = sum(a.grade for a in args) + c.degree
        if v.grades() != {expect}:
            return Verdict(False, format_args(args), len(tuples),
                           detail=f"grades {sorted(v.grades())}, expected {expect}")
    return Verdict(True, None, len(tuples))


def check_multilinear(c: Cochain, sampler: Sampler, alg) -> Verdict:
    """Q-linearity in each slot: ``f(.., p x + q y, ..) = p f(.., x, ..) + q f(.., y, ..)``."""
    rng = sampler.rng("multilinear", c.label)
    t1 = sampler.random_tuples(alg, c.signature)
    t2 = sampler.random_tuples(alg, c.signature)[::-1]
    for a, b in zip(t1, t2):
        for k, s in enumerate(c.signature):
            p, q = Fraction(rng.choice((1, -2, 3))), Fraction(rng.choice((1, 2, -1)), 2)
            x, y = a[k], b[k]
            if s.kind is Kind.G and x.grade != y.grade:
                continue
            if s.kind is Kind.T:
                mix = x.scale(p) + y.scale(q)
            elif s.kind is Kind.A:
                mix = x * p + y * q
            else:
                mix = x.scale(p) + y.scale(q)
            lhs = c(*a[:k], mix, *a[k + 1:])
            u, v = c(*a[:k], x, *a[k + 1:]), c(*a[:k], y, *a[k + 1:])
            rhs = (u.scale(p) + v.scale(q)) if isinstance(u, Polyvector) else u * p + v * q
            if lhs != rhs:
                return Verdict(False, format_args(a), len(t1), detail=f"slot {k + 1}")
    return Verdict(True, None, len(t1))

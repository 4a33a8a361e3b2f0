"""Hochschild-Chevalley bicomplex of a Lie algebroid, divergences and classical forms.

A cochain of bidegree ``(i, j)`` with ``j >= 1`` takes ``(a_1..a_j; tau; tau_1..tau_i)``
and is alternating in the last ``i`` sections.  On the bottom line ``j = 0`` it is
an alternating map of ``i + 1`` sections.  Both kinds are stored as :class:`Cochain`
with ``j`` scalar slots followed by ``i + 1`` section slots.

The bottom line carries the Chevalley differential multiplied by ``-1``; the
total differential is ``d_CH + (-1)^i d_H``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from gerstkit.algebroid import AlgebroidPresentation, TSection, anchor_apply, random_section, t_bracket
from gerstkit.cochain import Cochain, Kind, Sampler, Slot, cochain_equal, format_args, perm_sign
from gerstkit.poly import Poly, random_element
from gerstkit.report import Report, Verdict


def bi_signature(i: int, j: int) -> tuple[Slot, ...]:
    a_slots = (Slot(Kind.A),) * j
    if j == 0:
        return a_slots + (Slot(Kind.T, "alt"),) * (i + 1)
    return a_slots + (Slot(Kind.T),) + (Slot(Kind.T, "alt"),) * i


@dataclass(frozen=True, eq=False)
class BiCochain:
    alg: AlgebroidPresentation
    i: int
    j: int
    cochain: Cochain

    @classmethod
    def build(cls, alg, i: int, j: int, fn, label: str = "") -> "BiCochain":
        return cls(alg, i, j, Cochain(bi_signature(i, j), Kind.A, 0, fn, label))

    @classmethod
    def zero(cls, alg, i: int, j: int) -> "BiCochain":
        return cls.build(alg, i, j, lambda *a: alg.ring.zero(), "0")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def label(self) -> str:
        return self.cochain.label

    def __call__(self, *args) -> Poly:
        return self.cochain(*args)

    def __add__(self, other: "BiCochain") -> "BiCochain":
        if self.bidegree != other.bidegree:
            raise ValueError(f"bidegrees differ: {self.bidegree} vs {other.bidegree}")
        f, g = self.cochain, other.cochain
        return BiCochain.build(self.alg, self.i, self.j, lambda *a: f(*a) + g(*a),
                               f"({f.label} + {g.label})")

    def scale(self, s) -> "BiCochain":
        f = self.cochain
        return BiCochain.build(self.alg, self.i, self.j, lambda *a: f(*a) * s, f"{s}*{f.label}")

    def __neg__(self) -> "BiCochain":
        return self.scale(-1)


def _chevalley(alg, F, sections):
    """Unsigned Chevalley differential of an alternating map ``F`` of sections, evaluated."""
    out = alg.ring.zero()
    k = len(sections)
    for p in range(k):
        rest = sections[:p] + sections[p + 1:]
        v = anchor_apply(alg, sections[p], F(*rest))
        out = out + v if p % 2 == 0 else out - v
    for p, q in itertools.combinations(range(k), 2):
        rest = sections[:p] + sections[p + 1:q] + sections[q + 1:]
        v = F(t_bracket(alg, sections[p], sections[q]), *rest)
        out = out + v if (p + q) % 2 == 0 else out - v
    return out


def d_hochschild_u(F: BiCochain) -> BiCochain:
    """Bar differential in the scalar arguments; bidegree (i, j) -> (i, j + 1)."""
    alg, i, j = F.alg, F.i, F.j

    def ev(*args):
        a, tau0, rest = args[:j + 1], args[j + 1], args[j + 2:]
        out = a[0] * F(*a[1:], tau0, *rest)
        for p in range(1, j + 1):
            merged = a[:p - 1] + (a[p - 1] * a[p],) + a[p + 1:]
            v = F(*merged, tau0, *rest)
            out = out - v if p % 2 else out + v
        v = F(*a[:j], tau0.scale(a[j]), *rest)
        return out - v if (j + 1) % 2 else out + v

    return BiCochain.build(alg, i, j + 1, ev, f"dH({F.label})")


def d_chevalley_u(F: BiCochain) -> BiCochain:
    """Horizontal differential; bidegree (i, j) -> (i + 1, j)."""
    alg, i, j = F.alg, F.i, F.j
    if j == 0:
        def ev0(*sections):
            return -_chevalley(alg, F, sections)
        return BiCochain.build(alg, i + 1, 0, ev0, f"dCH({F.label})")

    def lie(tau, a, tau0, rest):
        # (tau . F)(a; tau0; rest) for the action on Hom(A^j (x) T, A)
        out = anchor_apply(alg, tau, F(*a, tau0, *rest))
        for r in range(j):
            moved = a[:r] + (anchor_apply(alg, tau, a[r]),) + a[r + 1:]
            out = out - F(*moved, tau0, *rest)
        return out - F(*a, t_bracket(alg, tau, tau0), *rest)

    def ev(*args):
        a, tau0, ts = args[:j], args[j], args[j + 1:]
        out = alg.ring.zero()
        for p in range(i + 1):
            v = lie(ts[p], a, tau0, ts[:p] + ts[p + 1:])
            out = out + v if p % 2 == 0 else out - v
        for p, q in itertools.combinations(range(i + 1), 2):
            rest = ts[:p] + ts[p + 1:q] + ts[q + 1:]
            v = F(*a, tau0, t_bracket(alg, ts[p], ts[q]), *rest)
            out = out + v if (p + q) % 2 == 0 else out - v
        return out

    return BiCochain.build(alg, i + 1, j, ev, f"dCH({F.label})")


@dataclass
class TotalCochain:
    alg: AlgebroidPresentation
    degree: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), c in self.components.items():
            if i + j != self.degree or c.bidegree != (i, j):
                raise ValueError(f"component {(i, j)} does not have total degree {self.degree}")

    def component(self, i: int, j: int) -> BiCochain:
        return self.components.get((i, j)) or BiCochain.zero(self.alg, i, j)


def d_total(x: TotalCochain) -> TotalCochain:
    """``d(x^{ij}) = d_CH x^{ij} + (-1)^i d_H x^{ij}``."""
    comps: dict = {}

    def put(c: BiCochain):
        k = c.bidegree
        comps[k] = comps[k] + c if k in comps else c

    for (i, j), c in x.components.items():
        put(d_chevalley_u(c))
        h = d_hochschild_u(c)
        put(h if i % 2 == 0 else -h)
    return TotalCochain(x.alg, x.degree + 1, comps)


def totals_equal(x: TotalCochain, y: TotalCochain, sampler: Sampler) -> Verdict:
    if x.degree != y.degree:
        return Verdict(False, None, 0, detail=f"degrees {x.degree} vs {y.degree}")
    n = 0
    for key in sorted(set(x.components) | set(y.components)):
        v = cochain_equal(x.component(*key).cochain, y.component(*key).cochain, sampler, x.alg)
        n += v.trials
        if not v:
            return Verdict(False, v.witness, n, detail=f"component {key}: {v.detail}")
    return Verdict(True, None, n)


def canonical_e(alg) -> BiCochain:
    """``e(a; tau) = tau(a)`` in bidegree (0, 1)."""
    return BiCochain.build(alg, 0, 1, lambda a, tau: anchor_apply(alg, tau, a), "e")


def canonical_epsilon(alg) -> TotalCochain:
    return TotalCochain(alg, 1, {(0, 1): -canonical_e(alg), (1, 0): BiCochain.zero(alg, 1, 0)})


# -- divergences ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Divergence:
    """Generator values ``c(e_i)``, extended to T by ``c(sum a_i e_i) = sum a_i c(e_i) + sum e_i(a_i)``."""

    alg: AlgebroidPresentation
    values: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.values) != self.alg.m:
            raise ValueError(f"divergence needs {self.alg.m} generator values")

    @classmethod
    def zero(cls, alg) -> "Divergence":
        return cls(alg, (alg.ring.zero(),) * alg.m)

    def __call__(self, tau: TSection) -> Poly:
        out = self.alg.ring.zero()
        for i, a in enumerate(tau.coeffs):
            if a:
                out = out + a * self.values[i] + self.alg.act(i, a)
        return out

    def as_bicochain(self) -> BiCochain:
        return BiCochain.build(self.alg, 0, 0, self, "c")

    def as_total(self) -> TotalCochain:
        return TotalCochain(self.alg, 0, {(0, 0): self.as_bicochain()})

    def __str__(self):
        from gerstkit.poly import format_poly
        return ", ".join(f"c({g})={format_poly(v)}" for g, v in zip(self.alg.gen_names, self.values))


# -- classical forms -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassicalForm:
    """An A-multilinear alternating map ``Lambda^n T -> A`` given on sorted generator tuples."""

    alg: AlgebroidPresentation
    arity: int
    values: dict  # sorted 0-based tuple -> Poly

    def __post_init__(self):
        for k in self.values:
            if len(k) != self.arity or list(k) != sorted(set(k)):
                raise ValueError(f"form key {k} is not a strictly increasing {self.arity}-tuple")

    @classmethod
    def zero(cls, alg, arity: int) -> "ClassicalForm":
        return cls(alg, arity, {})

    @classmethod
    def function(cls, g: Poly, alg) -> "ClassicalForm":
        return cls(alg, 0, {(): g} if g else {})

    def value(self, I) -> Poly:
        """Value on the generator tuple ``I`` in any order."""
        I = tuple(I)
        if len(set(I)) != len(I):
            return self.alg.ring.zero()
        v = self.values.get(tuple(sorted(I)))
        if v is None:
            return self.alg.ring.zero()
        order = sorted(range(len(I)), key=lambda t: I[t])
        return v if perm_sign(order) > 0 else -v

    def __call__(self, *sections: TSection) -> Poly:
        if len(sections) != self.arity:
            raise ValueError(f"form of arity {self.arity} got {len(sections)} arguments")
        out = self.alg.ring.zero()
        for I, v in self.values.items():
            det = self.alg.ring.zero()
            for p in itertools.permutations(range(self.arity)):
                term = v
                for k, l in enumerate(p):
                    term = term * sections[k].coeffs[I[l]]
                    if not term:
                        break
                if term:
                    det = det + term if perm_sign(p) > 0 else det - term
            out = out + det
        return out

    def __add__(self, other: "ClassicalForm") -> "ClassicalForm":
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals[k] + v if k in vals else v
        return ClassicalForm(self.alg, self.arity, {k: v for k, v in vals.items() if v})

    def __neg__(self):
        return ClassicalForm(self.alg, self.arity, {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, ClassicalForm) and self.arity == other.arity
                and self.values == other.values)

    def __hash__(self):
        return hash((self.arity, frozenset(self.values.items())))

    def as_bicochain(self) -> BiCochain:
        if self.arity < 1:
            raise ValueError("only forms of arity >= 1 live on the bottom line")
        return BiCochain.build(self.alg, self.arity - 1, 0, self, "form")

    def __repr__(self):
        from gerstkit.parsing import format_form
        return f"ClassicalForm({format_form(self.arity, self.values)})"


def classical_derham_d(phi: ClassicalForm) -> ClassicalForm:
    """Cartan formula ``d phi(t_0..t_n) = sum (-1)^i t_i phi(..) + sum_{i<j} (-1)^{i+j} phi([t_i,t_j], ..)``."""
    alg = phi.alg
    gens = [TSection.gen(alg, i) for i in range(alg.m)]
    vals = {}
    for I in itertools.combinations(range(alg.m), phi.arity + 1):
        if phi.arity == 0:
            v = alg.act(I[0], phi.values.get((), alg.ring.zero()))
        else:
            v = _chevalley(alg, phi, [gens[i] for i in I])
        if v:
            vals[I] = v
    return ClassicalForm(alg, phi.arity + 1, vals)


def closedness_defect(y: ClassicalForm, tau: TSection, nu: TSection) -> Poly:
    """``tau(y(nu)) - nu(y(tau)) - y([tau, nu])``."""
    alg = y.alg
    return anchor_apply(alg, tau, y(nu)) - anchor_apply(alg, nu, y(tau)) - y(t_bracket(alg, tau, nu))


def _section_pairs(alg, trials, seed, label):
    sampler = Sampler(trials=trials, seed=seed, label=label)
    pairs = [(TSection.gen(alg, i), TSection.gen(alg, j))
             for i in range(alg.m) for j in range(alg.m) if i < j]
    return pairs + sampler.random_tuples(alg, (Slot(Kind.T), Slot(Kind.T)))


def is_closed_1form(y: ClassicalForm, trials: int = 30, seed: int = 0) -> Verdict:
    if y.arity != 1:
        raise ValueError("closedness test is for 1-forms")
    pairs = _section_pairs(y.alg, trials, seed, "closed-1form")
    for tau, nu in pairs:
        d = closedness_defect(y, tau, nu)
        if d:
            return Verdict(False, format_args((tau, nu)), len(pairs), detail=f"defect {d}")
    return Verdict(True, None, len(pairs))


def check_divergence(c: Divergence, trials: int = 30, seed: int = 0) -> Report:
    """(Div1) (structural), (Div2) sampled, and the coboundary identity ``d_total(c) = epsilon``."""
    alg = c.alg
    report = Report("divergence", seed=seed)
    sampler = Sampler(trials=trials, seed=seed, label="divergence")
    # Div1
    tuples = sampler.random_tuples(alg, (Slot(Kind.A), Slot(Kind.T)))
    bad = next(((a, t) for a, t in tuples
                if c(t.scale(a)) != a * c(t) + anchor_apply(alg, t, a)), None)
    report.record("Div1", bad is None, len(tuples), None if bad is None else format_args(bad))
    # Div2
    pairs = _section_pairs(alg, trials, seed, "div2")
    bad = None
    for tau, nu in pairs:
        lhs = c(t_bracket(alg, tau, nu))
        rhs = anchor_apply(alg, tau, c(nu)) - anchor_apply(alg, nu, c(tau))
        if lhs != rhs:
            bad = (tau, nu)
            detail = f"c([t,n]) = {lhs}, t(c(n)) - n(c(t)) = {rhs}"
            break
    report.record("Div2", bad is None, len(pairs), None if bad is None else format_args(bad),
                  None if bad is None else detail)
    v = totals_equal(d_total(c.as_total()), canonical_epsilon(alg), sampler)
    v.into(report, "d_total(c)=epsilon")
    return report


def torsor_translate(c: Divergence, y: ClassicalForm) -> Divergence:
    if y.arity != 1:
        raise ValueError("divergences are translated by 1-forms")
    return Divergence(c.alg, tuple(v + y.value((i,)) for i, v in enumerate(c.values)))


def divergence_difference(c1: Divergence, c2: Divergence) -> ClassicalForm:
    """The A-linear 1-form ``c1 - c2``."""
    return ClassicalForm(c1.alg, 1, {(i,): a - b for i, (a, b) in enumerate(zip(c1.values, c2.values))
                                     if a - b})


# -- random cochains for the bicomplex suites -----------------------------------------

def random_scalar_operator(alg, rng: random.Random):
    """A random Q-linear (not A-linear) operator ``A -> A`` of order <= 2."""
    n = alg.ring.n
    p0 = random_element(alg.ring, 1, 2, rng)
    p1 = random_element(alg.ring, 1, 1, rng)
    k, l = rng.randrange(n), rng.randrange(n)
    p2 = random_element(alg.ring, 0, 1, rng) if rng.random() < 0.5 else alg.ring.zero()

    def op(a: Poly) -> Poly:
        out = p0 * a + p1 * a.diff(k)
        if p2:
            out = out + p2 * a.diff(k).diff(l)
        return out

    return op


def random_section_functional(alg, rng: random.Random):
    ops = [random_scalar_operator(alg, rng) for _ in range(alg.m)]
    memo: dict = {}

    def f(tau: TSection) -> Poly:
        hit = memo.get(tau.coeffs)
        if hit is not None:
            return hit
        out = alg.ring.zero()
        for op, a in zip(ops, tau.coeffs):
            if a:
                out = out + op(a)
        if len(memo) < 4096:
            memo[tau.coeffs] = out
        return out

    return f


def random_bicochain(alg, i: int, j: int, rng: random.Random) -> BiCochain:
    """A random Q-multilinear cochain, alternating where the bidegree demands."""
    scal = [random_scalar_operator(alg, rng) for _ in range(j)]
    n_alt = i + 1 if j == 0 else i
    funcs = [random_section_functional(alg, rng) for _ in range(n_alt)]
    head = random_section_functional(alg, rng) if j else None
    perms = list(itertools.permutations(range(n_alt)))

    def alt(ts):
        out = alg.ring.zero()
        for p in perms:
            term = alg.ring.one()
            for k, l in enumerate(p):
                term = term * funcs[k](ts[l])
                if not term:
                    break
            if term:
                out = out + term if perm_sign(p) > 0 else out - term
        return out

    def ev(*args):
        a, ts = args[:j], args[j:]
        out = alg.ring.one()
        for op, x in zip(scal, a):
            out = out * op(x)
            if not out:
                return out
        if j:
            out = out * head(ts[0])
            ts = ts[1:]
        return out * alt(ts) if out else out

    return BiCochain.build(alg, i, j, ev, f"rand{(i, j)}")


def random_classical_form(alg, arity: int, rng: random.Random, max_degree: int = 2) -> ClassicalForm:
    vals = {}
    for I in itertools.combinations(range(alg.m), arity):
        if rng.random() < 0.8:
            vals[I] = random_element(alg.ring, max_degree, 2, rng)
    return ClassicalForm(alg, arity, vals)


def bicochain_library(alg, seed: int, max_i: int = 3, max_j: int = 3) -> list[BiCochain]:
    """Forms, ``e``, the zero divergence and random evaluators at every bidegree."""
    from gerstkit.rng import derive_rng
    rng = derive_rng(seed, "bicochain-library")
    lib = [canonical_e(alg), Divergence.zero(alg).as_bicochain()]
    for k in range(1, max_i + 2):
        lib.append(random_classical_form(alg, k, rng).as_bicochain())
    for i in range(max_i + 1):
        for j in range(max_j + 1):
            lib.append(random_bicochain(alg, i, j, rng))
    return lib


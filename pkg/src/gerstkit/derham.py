"""Two-line graded Hochschild-Chevalley bicomplex and the de Rham complex of polyvectors.

Line 0 holds maps of ``n + 1`` polyvectors, alternating in the shifted sense
``f(.., x, y, ..) = -(-1)^((|x|-1)(|y|-1)) f(.., y, x, ..)``.  Line 1 holds maps
alternating in the first ``m`` arguments followed by two unrestricted ones.
Throughout, ``g_p = |x_p| - 1`` is the degree of ``x_p`` in the shifted algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from gerstkit.algebroid import AlgebroidPresentation, TSection
from gerstkit.bicomplex import ClassicalForm
from gerstkit.cochain import (Cochain, Kind, Sampler, Slot, check_alternating, cochain_equal,
                              format_args, g_signature, graded, shifted_perm_sign, vanishes)
from gerstkit.report import Report, Verdict
from gerstkit.schouten import Polyvector, schouten_bracket, sign

# restrict(d_DR(extend(phi))) = DERHAM_SIGN * classical d(phi) for every arity
DERHAM_SIGN = 1


def line1_signature(m: int) -> tuple[Slot, ...]:
    return g_signature(m, alternating=m) + (Slot(Kind.G), Slot(Kind.G))


@dataclass(frozen=True)
class Line0Cochain:
    """Position ``n`` on line 0: ``n + 1`` alternating arguments."""

    n: int
    cochain: Cochain

    def __post_init__(self):
        if self.cochain.arity != self.n + 1:
            raise ValueError(f"line-0 cochain at position {self.n} needs {self.n + 1} arguments")

    @property
    def degree(self) -> int:
        return self.cochain.degree

    def __call__(self, *xs):
        return self.cochain(*xs)


@dataclass(frozen=True)
class Line1Cochain:
    """``m`` alternating arguments followed by two plain ones."""

    m: int
    cochain: Cochain

    def __post_init__(self):
        if self.cochain.arity != self.m + 2:
            raise ValueError(f"line-1 cochain with {self.m} alternating slots needs {self.m + 2} arguments")

    @property
    def degree(self) -> int:
        return self.cochain.degree

    def __call__(self, *xs):
        return self.cochain(*xs)


def _unwrap(f):
    return f.cochain if isinstance(f, (Line0Cochain, Line1Cochain, BigForm)) else f


def d_chevalley_g(f, alg: AlgebroidPresentation) -> Cochain:
    """Chevalley differential of the shifted Lie algebra acting on itself.

    Arity ``N -> N + 1``, internal degree ``d -> d - 1``.  On a 0-cochain ``g``
    this gives ``x -> (-1)^((|x|-1)(|g|-1)) [x, g]``.
    """
    f = _unwrap(f)
    N, d = f.arity, f.degree
    br = schouten_bracket

    def ev(*xs):
        g = [x.grade - 1 for x in xs]
        out = Polyvector.zero(alg)
        pre = 0
        for i in range(N + 1):
            rest = xs[:i] + xs[i + 1:]
            v = br(xs[i], f(*rest))
            if v:
                out = out + v.scale(sign(i + g[i] * (d + N - 1 + pre)))
            pre += g[i]
        for i, j in itertools.combinations(range(N + 1), 2):
            rest = xs[:i] + xs[i + 1:j] + xs[j + 1:]
            v = f(br(xs[i], xs[j]), *rest)
            if v:
                s = i + j + g[i] * sum(g[:i]) + g[j] * (sum(g[:j]) - g[i])
                out = out + v.scale(sign(s))
        return out

    return Cochain(g_signature(N + 1, N + 1), Kind.G, d - 1, graded(ev, alg), f"dCH({f.label})")


def d_chevalley_line1(f, alg: AlgebroidPresentation) -> Cochain:
    """Chevalley differential on line 1 (coefficients in 2-cochains); ``m -> m + 1`` alternating slots."""
    f = _unwrap(f)
    m, d = f.arity - 2, f.degree
    n = m + 1
    br = schouten_bracket

    def ev(*xs):
        alt, y, z = xs[:n], xs[n], xs[n + 1]
        g = [x.grade - 1 for x in alt]
        gy = y.grade - 1
        out = Polyvector.zero(alg)
        for i in range(n):
            rest = alt[:i] + alt[i + 1:]
            after = sum(g[i + 1:])
            v = br(alt[i], f(*rest, y, z))
            if v:
                out = out + v.scale(sign(i + g[i] * (d + n + sum(g[:i]))))
            v = f(*rest, br(alt[i], y), z)
            if v:
                out = out - v.scale(sign(i + g[i] * after))
            v = f(*rest, y, br(alt[i], z))
            if v:
                out = out - v.scale(sign(i + g[i] * (after + gy)))
        for i, j in itertools.combinations(range(n), 2):
            rest = alt[:i] + alt[i + 1:j] + alt[j + 1:]
            v = f(br(alt[i], alt[j]), *rest, y, z)
            if v:
                s = i + j + g[i] * sum(g[:i]) + g[j] * (sum(g[:j]) - g[i])
                out = out + v.scale(sign(s))
        return out

    return Cochain(line1_signature(n), Kind.G, d - 1, graded(ev, alg), f"dCH1({f.label})")


def d_vertical(f, alg: AlgebroidPresentation) -> Cochain:
    """Vertical differential line 0 -> line 1; internal degree preserved.

    For ``f`` with ``n + 1`` arguments and ``F = deg f + |x_1| + .. + |x_n|``::

        (-1)^(|y|(F+1)+F) y f(x, z) + (-1)^(F+|y|+1) f(x, yz) + (-1)^(F+|y|) f(x, y) z
    """
    f = _unwrap(f)
    if f.arity < 1:
        raise ValueError("vertical differential needs at least one argument")
    k, d = f.arity - 1, f.degree

    def ev(*xs):
        alt, y, z = xs[:k], xs[k], xs[k + 1]
        F = d + sum(x.grade for x in alt)
        gy = y.grade
        out = (y * f(*alt, z)).scale(sign(gy * (F + 1) + F))
        out = out + f(*alt, y * z).scale(sign(F + gy + 1))
        return out + (f(*alt, y) * z).scale(sign(F + gy))

    return Cochain(line1_signature(k), Kind.G, d, graded(ev, alg), f"dV({f.label})")


# -- squares -------------------------------------------------------------------------

def square_routes(f, alg):
    """The two composites ``line0 -> line1`` through the square starting at ``f``.

    Returns ``(d_vertical(d_chevalley_g f), d_chevalley_line1(d_vertical f))``;
    for a 0-cochain the second route is absent and ``None`` is returned for it.
    """
    f = _unwrap(f)
    left = d_vertical(d_chevalley_g(f, alg), alg)
    right = d_chevalley_line1(d_vertical(f, alg), alg) if f.arity >= 1 else None
    return left, right


def check_square(f, alg, sampler: Sampler) -> Verdict:
    left, right = square_routes(f, alg)
    if right is None:
        return vanishes(left, sampler, alg)
    return cochain_equal(left, right, sampler, alg)


def verify_squares(alg, n_max: int = 3, trials: int = 100, seed: int = 0, library=None,
                   grade_bound: int = 3, enum_cap: int = 40) -> Report:
    """Both routes around every square agree, for each library cochain with at most ``n_max`` arguments."""
    from gerstkit.library import graded_library
    report = Report("squares", seed=seed)
    lib = library if library is not None else graded_library(alg, seed, max_arity=n_max)
    for f in lib:
        f = _unwrap(f)
        if f.arity > n_max:
            continue
        sampler = Sampler(trials=trials, seed=seed, grade_bound=grade_bound, enum_cap=enum_cap,
                          label=f"square-{f.label}")
        name = "corner" if f.arity <= 1 else f"square[{f.arity}]"
        check_square(f, alg, sampler).into(report, f"{name}:{f.label}")
    return report


# -- big and small forms ----------------------------------------------------------------

class NotABigForm(ValueError):
    def __init__(self, report: Report):
        bad = report.failures
        msg = "; ".join(f"{c.name} at {c.witness}" for c in bad) or "not a big form"
        super().__init__(msg)
        self.report = report


@dataclass(frozen=True)
class BigForm:
    """A line-0 cochain killed by the vertical differential, with its certificate."""

    n: int
    cochain: Cochain
    report: Report | None = None

    @property
    def degree(self) -> int:
        return self.cochain.degree

    @property
    def is_small(self) -> bool:
        return self.degree == -self.n

    def __call__(self, *xs):
        return self.cochain(*xs)


def multiderivation_defect(f: Cochain, xs) -> Polyvector:
    """``f(.., yz) - (-1)^(|y| F) y f(.., z) - f(.., y) z`` with ``F = deg f + sum |x_p|``."""
    *alt, y, z = xs
    F = f.degree + sum(x.grade for x in alt)
    return f(*alt, y * z) - (y * f(*alt, z)).scale(sign(y.grade * F)) - f(*alt, y) * z


def is_big_form(f, alg, trials: int = 30, seed: int = 0, sampler: Sampler | None = None) -> Report:
    """Shifted alternation and the multi-derivation rule, cross-checked against ``d_vertical f = 0``."""
    f = _unwrap(f)
    report = Report("big-form", seed=seed)
    n = f.arity
    if n == 0:
        report.ok("alternating", 0, detail="vacuous")
        report.ok("multiderivation", 0, detail="vacuous")
        return report
    sampler = sampler or Sampler(trials=trials, seed=seed, label=f"bigform-{f.label}")
    if n >= 2:
        alt = Cochain(g_signature(n, n), f.signature[0].kind, f.degree, f.evaluator, f.label)
        report.extend(check_alternating(alt, "alt", alg=alg, sampler=sampler))
    else:
        report.ok("alternating", 0, detail="vacuous")
    sig = g_signature(n + 1)
    defect = Cochain(sig, Kind.G, f.degree, graded(lambda *xs: multiderivation_defect(f, xs), alg),
                     f"defect({f.label})")
    vanishes(defect, sampler, alg).into(report, "multiderivation")
    vanishes(d_vertical(f, alg), sampler, alg).into(report, "d_vertical=0")
    return report


def certify(f, alg, n: int | None = None, trials: int = 30, seed: int = 0) -> BigForm:
    f = _unwrap(f)
    rep = is_big_form(f, alg, trials, seed)
    if not rep.passed:
        raise NotABigForm(rep)
    return BigForm(f.arity if n is None else n, f, rep)


def derham_d_g(f, alg, trials: int = 30, seed: int = 0, certify_output: bool = False) -> BigForm:
    """The de Rham differential of the big complex (the Chevalley differential on forms)."""
    if not isinstance(f, BigForm):
        f = certify(f, alg, trials=trials, seed=seed)
    out = d_chevalley_g(f.cochain, alg)
    rep = is_big_form(out, alg, trials, seed) if certify_output else None
    if rep is not None and not rep.passed:
        raise NotABigForm(rep)
    return BigForm(f.n + 1, out.relabel(f"dDR({f.cochain.label})"), rep)


# -- identification with classical forms --------------------------------------------------

def _monomial_args(xs):
    """Expand homogeneous arguments into ``(coefficient, generator tuples)`` terms."""
    for combo in itertools.product(*(list(x.terms.items()) for x in xs)):
        coeff = None
        for I, c in combo:
            coeff = c if coeff is None else coeff * c
        yield coeff, tuple(I for I, _ in combo)


def extend_classical(phi: ClassicalForm) -> BigForm:
    """Unique multi-derivation prolongation of an A-multilinear alternating form.

    Values on generator monomials are computed by peeling one generator off
    the last argument (the multi-derivation rule), after moving an argument of
    grade >= 2 to the end with the shifted alternation sign.
    """
    alg = phi.alg
    n = phi.arity
    if n == 0:
        g = Polyvector.scalar(alg, phi.values.get((), alg.ring.zero()))
        return BigForm(0, Cochain((), Kind.G, 0, lambda: g, "extend(0-form)"))
    memo: dict = {}

    def gen_value(Is) -> Polyvector:
        hit = memo.get(Is)
        if hit is not None:
            return hit
        lens = [len(I) for I in Is]
        if 0 in lens:
            out = Polyvector.zero(alg)
        elif all(k == 1 for k in lens):
            out = Polyvector.scalar(alg, phi.value(tuple(I[0] for I in Is)))
        elif lens[-1] >= 2:
            *alt, last = Is
            y, rest = last[:1], last[1:]
            F = -n + sum(len(I) for I in alt)
            out = (Polyvector.gen(alg, *y) * gen_value(tuple(alt) + (rest,))).scale(sign(F))
            out = out + gen_value(tuple(alt) + (y,)) * Polyvector.gen(alg, *rest)
        else:
            k = max(i for i, L in enumerate(lens) if L >= 2)
            perm = tuple(i for i in range(n) if i != k) + (k,)
            s = shifted_perm_sign(perm, lens)
            out = gen_value(tuple(Is[i] for i in perm)).scale(s)
        memo[Is] = out
        return out

    def ev(*xs):
        out = Polyvector.zero(alg)
        for coeff, Is in _monomial_args(xs):
            v = gen_value(Is)
            if v:
                out = out + v.scale(coeff)
        return out

    c = Cochain(g_signature(n, n), Kind.G, -n, graded(ev, alg), f"extend({n}-form)")
    return BigForm(n, c)


def restrict_to_classical(f, alg) -> ClassicalForm:
    """Values on generator tuples of a small form (internal degree ``-n``)."""
    c = _unwrap(f)
    n = c.arity
    if c.degree != -n:
        raise ValueError(f"only small forms restrict: degree {c.degree} != {-n}")
    if n == 0:
        return ClassicalForm.function(c().to_scalar(), alg)
    vals = {}
    for I in itertools.combinations(range(alg.m), n):
        v = c(*(Polyvector.gen(alg, i) for i in I))
        if v.grades() - {0}:
            raise ValueError(f"value on {I} is not a function: {v}")
        if v:
            vals[I] = v.to_scalar()
    return ClassicalForm(alg, n, vals)


def calibrate_derham_sign(alg) -> int:
    """Compare ``restrict(d_DR x1)`` with the classical ``d x1`` and return the sign relating them."""
    from gerstkit.bicomplex import classical_derham_d
    g = ClassicalForm.function(alg.ring.var(0), alg)
    ours = restrict_to_classical(d_chevalley_g(extend_classical(g).cochain, alg), alg)
    theirs = classical_derham_d(g)
    if ours == theirs:
        return 1
    if ours == -theirs:
        return -1
    raise ValueError("no global sign relates the two differentials")


def derham_comparison(phi: ClassicalForm, sign_constant: int = DERHAM_SIGN) -> Verdict:
    """``restrict(d_DR(extend phi)) == sign * d(phi)`` exactly on generator tuples."""
    from gerstkit.bicomplex import classical_derham_d
    alg = phi.alg
    ours = restrict_to_classical(d_chevalley_g(extend_classical(phi).cochain, alg), alg)
    theirs = classical_derham_d(phi)
    if sign_constant < 0:
        theirs = -theirs
    if ours == theirs:
        return Verdict(True, None, 1)
    bad = next(I for I in sorted(set(ours.values) | set(theirs.values))
               if ours.values.get(I) != theirs.values.get(I))
    args = tuple(TSection.gen(alg, i) for i in bad)
    return Verdict(False, format_args(args), 1,
                   detail=f"graded route {ours.value(bad)}, classical {theirs.value(bad)}")

"""Hochschild complex of the graded algebra of polyvectors.

A cochain with ``n`` polyvector arguments and internal degree ``d`` has
Hochschild weight ``|f| = d + n``; all signs of the differential are written
in terms of this weight and the actual grades of the arguments.
"""

from __future__ import annotations

from gerstkit.algebroid import AlgebroidPresentation
from gerstkit.bicomplex import BiCochain
from gerstkit.cochain import (Cochain, Kind, Sampler, cochain_equal, format_args, g_signature, graded,
                              vanishes)
from gerstkit.report import Report, Verdict
from gerstkit.schouten import Polyvector, schouten_bracket, sign

# graded Hochschild cochains are plain cochains whose slots and codomain are all polyvectors
GradedHCochain = Cochain


def weight(f: Cochain) -> int:
    return f.degree + f.arity


def d_hochschild_g(f: Cochain, alg: AlgebroidPresentation) -> Cochain:
    """Graded Hochschild differential; arity ``n -> n + 1``, internal degree preserved."""
    n, w = f.arity, weight(f)

    def ev(*xs):
        g = [x.grade for x in xs]
        out = (xs[0] * f(*xs[1:])).scale(sign(g[0] * w + w + 1))
        acc = 0
        for i in range(n):
            acc += g[i] + 1
            merged = xs[:i] + (xs[i] * xs[i + 1],) + xs[i + 2:]
            out = out + f(*merged).scale(sign(w + 1 + acc))
        return out + (f(*xs[:n]) * xs[n]).scale(sign(w + acc))

    return Cochain(g_signature(n + 1), Kind.G, f.degree, graded(ev, alg), f"dH({f.label})")


def bracket_cochain(alg) -> Cochain:
    """The Schouten bracket as a 2-cochain of internal degree -1 (weight 1)."""
    return Cochain(g_signature(2), Kind.G, -1, schouten_bracket, "[,]")


def identity_cochain(alg) -> Cochain:
    return Cochain(g_signature(1), Kind.G, 0, lambda x: x, "I")


def element_cochain(g: Polyvector) -> Cochain:
    """A homogeneous element viewed as a 0-cochain."""
    return Cochain((), Kind.G, g.grade, lambda: g, str(g))


def is_derivation(f: Cochain, alg, trials: int = 30, seed: int = 0,
                  sampler: Sampler | None = None) -> Verdict:
    """``f(xy) = (-1)^(deg f * |x|) x f(y) + f(x) y`` on samples."""
    if f.arity != 1:
        raise ValueError("derivation test needs a 1-cochain")
    sampler = sampler or Sampler(trials=trials, seed=seed, label=f"derivation-{f.label}")
    tuples = sampler.tuples(alg, g_signature(2))
    for x, y in tuples:
        lhs = f(x * y)
        rhs = (x * f(y)).scale(sign(f.degree * x.grade)) + f(x) * y
        if lhs != rhs:
            return Verdict(False, format_args((x, y)), len(tuples),
                           detail=f"f(xy) = {lhs}, expected {rhs}")
    return Verdict(True, None, len(tuples))


def project_pi(f: Cochain, alg) -> BiCochain:
    """Restrict to arguments ``(a_1..a_{n-1}, tau)`` and keep the scalar part of the value.

    The result sits in the ungraded bicomplex at bidegree ``(0, n - 1)``.  On
    cochains of internal degree -1 it intertwines the two Hochschild
    differentials up to a sign: ``pi(d_H f) = (-1)^n d_H(pi f)``.
    """
    if f.arity < 1:
        raise ValueError("projection needs at least one argument")

    def ev(*args):
        *a, tau = args
        xs = [Polyvector.scalar(alg, p) for p in a] + [Polyvector.from_section(tau)]
        return f(*xs).to_scalar()

    return BiCochain.build(alg, 0, f.arity - 1, ev, f"pi({f.label})")


def pi_chain_sign(arity: int) -> int:
    """Sign relating ``pi(d_H f)`` and ``d_H(pi f)`` for ``f`` of the given arity."""
    return sign(arity)


def bracket_replacement_identity(x, y, z) -> Polyvector:
    """``x[y,z] - [xy,z] + (-1)^|y| [x,yz] - (-1)^|y| [x,y]z``, identically zero."""
    br = schouten_bracket
    s = sign(y.grade)
    return x * br(y, z) - br(x * y, z) + br(x, y * z).scale(s) - (br(x, y) * z).scale(s)


def check_bracket_cocycle(alg, trials: int = 200, seed: int = 0, grade_bound: int = 3) -> Report:
    """``d_H`` of the bracket vanishes; the companion identity vanishes."""
    report = Report("bracket-cocycle", seed=seed)
    sampler = Sampler(trials=trials, seed=seed, grade_bound=grade_bound, label="bracket-cocycle")
    vanishes(d_hochschild_g(bracket_cochain(alg), alg), sampler, alg).into(report, "dH[,]=0")
    rem = Cochain(g_signature(3), Kind.G, -1, bracket_replacement_identity, "replacement")
    vanishes(rem, sampler, alg).into(report, "bracket-replacement-identity")
    return report


def check_bv1(delta, alg=None, trials: int = 50, seed: int = 0, sampler: Sampler | None = None) -> Report:
    """Does ``delta`` generate the bracket, i.e. ``d_H delta = [,]``?

    Equivalently ``delta(xy) - delta(x)y - (-1)^|x| x delta(y) = (-1)^|x| [x,y]``.
    ``delta`` may be a degree -1 1-cochain or anything with ``as_cochain()``.
    """
    f = delta.as_cochain() if hasattr(delta, "as_cochain") else delta
    alg = alg or delta.alg
    if f.degree != -1:
        raise ValueError("a BV operator has degree -1")
    report = Report("bv1", seed=seed)
    sampler = sampler or Sampler(trials=trials, seed=seed, label="bv1")
    cochain_equal(d_hochschild_g(f, alg), bracket_cochain(alg), sampler, alg).into(report, "BV1")
    return report

"""Libraries of graded test cochains used by the square and d^2 suites.

Generic cochains are built from random grade-preserving Q-linear operators
(deliberately not A-linear), wedged with fixed polyvectors or contracted with
1-forms to shift the internal degree, and antisymmetrized in the shifted sense.
"""

from __future__ import annotations

import itertools

from gerstkit.bicomplex import random_classical_form, random_scalar_operator
from gerstkit.cochain import Cochain, Kind, antisymmetrize, g_signature, graded
from gerstkit.derham import d_chevalley_g, extend_classical
from gerstkit.hochschild import bracket_cochain, element_cochain, identity_cochain
from gerstkit.rng import derive_rng
from gerstkit.schouten import Polyvector, random_polyvector


def random_grade_operator(alg, rng):
    """``sum_I a_I e_I -> sum_I op_I(a_I) e_I`` with random differential operators ``op_I``."""
    ops = {I: random_scalar_operator(alg, rng)
           for g in range(alg.m + 1) for I in itertools.combinations(range(alg.m), g)}
    memo: dict = {}

    def L(x: Polyvector) -> Polyvector:
        key = frozenset(x.terms.items())
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = {}
        for I, a in x.terms.items():
            v = ops[I](a)
            if v:
                out[I] = v
        res = Polyvector(alg, out)
        if len(memo) < 4096:
            memo[key] = res
        return res

    return L


def contraction(alpha):
    """Interior product with a classical 1-form: a derivation of degree -1."""
    alg = alpha.alg

    def iota(x: Polyvector) -> Polyvector:
        out = Polyvector.zero(alg)
        for I, a in x.terms.items():
            for k, i in enumerate(I):
                v = alpha.value((i,))
                if v:
                    term = Polyvector(alg, {I[:k] + I[k + 1:]: a * v})
                    out = out + (term if k % 2 == 0 else -term)
        return out

    return iota


def random_one_cochain(alg, rng, degree: int) -> Cochain:
    L = random_grade_operator(alg, rng)
    if degree == 0:
        fn, label = L, "L"
    elif degree == -1:
        iota = contraction(random_classical_form(alg, 1, rng))
        fn, label = (lambda x: iota(L(x))), "iota.L"
    else:
        Q = random_polyvector(alg, rng, degree, 1, 1)
        fn, label = (lambda x: Q * L(x)), f"Q{degree}^L"
    return Cochain(g_signature(1), Kind.G, degree, graded(fn, alg), f"{label}[{degree}]")


def random_alternating(alg, rng, arity: int, degree: int = 0) -> Cochain:
    """Shifted antisymmetrization of ``Q ^ L_1(x_1) ^ .. ^ L_n(x_n)`` with ``|Q| = degree``."""
    Ls = [random_grade_operator(alg, rng) for _ in range(arity)]
    Q = random_polyvector(alg, rng, degree, 1, 1)

    def raw(*xs):
        out = Q
        for L, x in zip(Ls, xs):
            out = out * L(x)
            if not out:
                break
        return out

    ev = antisymmetrize(alg, raw, arity)
    return Cochain(g_signature(arity, arity), Kind.G, degree, graded(ev, alg),
                   f"alt{arity}[{degree}]")


def graded_library(alg, seed: int = 0, max_arity: int = 3) -> list[Cochain]:
    """Identity, bracket, adjoint cochains, extended classical forms and random alternating maps."""
    rng = derive_rng(seed, "graded-library", alg.name)
    lib: list[Cochain] = []
    g = random_polyvector(alg, rng, 1, 1, 1)
    lib.append(element_cochain(g).relabel(f"g={g}"))
    lib.append(identity_cochain(alg))
    for d in (-1, 0, 1):
        lib.append(random_one_cochain(alg, rng, d))
    for grade in (0, 2):
        if grade <= alg.m:
            h = random_polyvector(alg, rng, grade, 1, 1)
            lib.append(d_chevalley_g(element_cochain(h), alg).relabel(f"ad({h})"))
    for k in range(1, max_arity + 1):
        if k <= alg.m:
            f = extend_classical(random_classical_form(alg, k, rng, max_degree=1)).cochain
            lib.append(f.relabel(f"extend({k}-form)"))
    if max_arity >= 2:
        lib.append(bracket_cochain(alg).relabel("omega"))
    for k in range(2, max_arity + 1):
        lib.append(random_alternating(alg, rng, k, degree=k % 2))
    return [c for c in lib if c.arity <= max_arity]

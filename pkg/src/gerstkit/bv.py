"""BV and quasi-BV operators on polyvectors built from divergences.

``Delta`` is determined by its values on generators and the generating rule

    Delta(xy) = Delta(x) y + (-1)^|x| x Delta(y) + s (-1)^|x| [x, y]

where ``s`` is the convention sign.  With ``s = +1`` (``bracket-side``) the
operator generates the bracket, ``d_H Delta = [,]``, and on sections it obeys
``Delta(a tau) = a Delta(tau) - tau(a)``.  With ``s = -1`` (``divergence-side``: the
divergence rule ``c(a tau) = a c(tau) + tau(a)`` on sections) one gets
``d_H Delta = -[,]`` instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gerstkit.algebroid import AlgebroidPresentation
from gerstkit.bicomplex import ClassicalForm, Divergence
from gerstkit.cochain import (Cochain, Kind, Sampler, cochain_equal, format_args, g_signature, vanishes)
from gerstkit.derham import (d_chevalley_g, d_chevalley_line1, d_vertical, extend_classical, is_big_form,
                             restrict_to_classical)
from gerstkit.hochschild import (bracket_cochain, check_bv1, d_hochschild_g, identity_cochain)
from gerstkit.report import Report, Verdict
from gerstkit.schouten import Polyvector, _scalar_gen, schouten_bracket, sign

CONVENTIONS = {"bracket-side": 1, "divergence-side": -1}
DEFAULT_CONVENTION = "bracket-side"


@dataclass(eq=False)
class DeltaOp:
    base: Divergence
    convention: str = DEFAULT_CONVENTION
    shifts: tuple = ()  # extra degree -1 operators added to the recursion-built part
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}; use one of {sorted(CONVENTIONS)}")

    @property
    def alg(self) -> AlgebroidPresentation:
        return self.base.alg

    @property
    def sigma(self) -> int:
        return CONVENTIONS[self.convention]

    def on_generators(self, I: tuple) -> Polyvector:
        """``Delta(e_I)`` for a strictly increasing generator tuple."""
        hit = self._memo.get(I)
        if hit is not None:
            return hit
        alg = self.alg
        if not I:
            out = Polyvector.zero(alg)
        elif len(I) == 1:
            out = Polyvector.scalar(alg, self.base.values[I[0]])
        else:
            head, tail = Polyvector.gen(alg, I[0]), Polyvector.gen(alg, *I[1:])
            out = (self.on_generators(I[:1]) * tail - head * self.on_generators(I[1:])
                   - schouten_bracket(head, tail).scale(self.sigma))
        self._memo[I] = out
        return out

    def core(self, x: Polyvector) -> Polyvector:
        alg = self.alg
        out = Polyvector.zero(alg)
        for I, a in x.terms.items():
            if not I:
                continue
            v = self.on_generators(I).scale(a)
            br = _scalar_gen(alg, a, I)  # [a, e_I]
            out = out + v + (br if self.sigma > 0 else -br)
        return out

    def __call__(self, x: Polyvector) -> Polyvector:
        out = self.core(x)
        for s in self.shifts:
            out = out + s(x)
        return out

    def square(self, x: Polyvector) -> Polyvector:
        return self(self(x))

    def as_cochain(self) -> Cochain:
        return Cochain(g_signature(1), Kind.G, -1, self, f"Delta[{self.convention}]")

    def translate(self, omega) -> "DeltaOp":
        f = omega.cochain if hasattr(omega, "cochain") else omega
        return DeltaOp(self.base, self.convention, self.shifts + (f,))

    def section_values(self) -> tuple:
        """``Delta(e_i)`` including shifts."""
        return tuple(self(Polyvector.gen(self.alg, i)).to_scalar() for i in range(self.alg.m))


def delta_from_divergence(c: Divergence, convention: str = DEFAULT_CONVENTION) -> DeltaOp:
    return DeltaOp(c, convention)


def bridge_residual(delta: DeltaOp, x: Polyvector, y: Polyvector) -> tuple[Polyvector, Polyvector]:
    """``(d_CH Delta (x, y), (-1)^(|x|+1) {Delta^2(xy) - Delta^2(x) y - x Delta^2(y)})``."""
    alg = delta.alg
    left = d_chevalley_g(delta.as_cochain(), alg)(x, y)
    sq = delta.square
    right = (sq(x * y) - sq(x) * y - x * sq(y)).scale(sign(x.grade + 1))
    return left, right


def basis_decomposables(alg, grade_bound: int = 3, degree: int = 2) -> list[Polyvector]:
    """``x^a e_I`` with ``|I| <= grade_bound`` and ``|a| <= degree``."""
    from gerstkit.poly import Poly
    out = []
    for g in range(min(grade_bound, alg.m) + 1):
        for I in itertools.combinations(range(alg.m), g):
            for e in alg.ring.monomials(degree):
                out.append(Polyvector(alg, {I: Poly(alg.ring, {e: 1})}))
    return out


def check_quasi_bv(delta: DeltaOp, trials: int = 50, seed: int = 0, grade_bound: int = 3,
                   sampler: Sampler | None = None) -> Report:
    """(BV1), (qBV2)' (Delta is a derivation of the bracket), (qBV2) (Delta^2 is a derivation
    of the product), (BV2) (Delta^2 = 0) and the bridge identity between the last three."""
    alg = delta.alg
    report = Report("quasi-bv", seed=seed)
    sampler = sampler or Sampler(trials=trials, seed=seed, grade_bound=grade_bound, label="qbv")
    report.extend(check_bv1(delta, alg, sampler=sampler))
    br = schouten_bracket

    def qbv2p(x, y):
        return (delta(br(x, y)) - br(delta(x), y) - br(x, delta(y)).scale(sign(x.grade - 1)))

    def qbv2(x, y):
        sq = delta.square
        return sq(x * y) - sq(x) * y - x * sq(y)

    sig2 = g_signature(2)
    vanishes(Cochain(sig2, Kind.G, -2, qbv2p, "qBV2'"), sampler, alg).into(report, "qBV2'")
    vanishes(Cochain(sig2, Kind.G, -2, qbv2, "qBV2"), sampler, alg).into(report, "qBV2")
    pool = basis_decomposables(alg, grade_bound) + [t[0] for t in sampler.random_tuples(alg, g_signature(1))]
    bad = next((x for x in pool if delta.square(x)), None)
    report.record("BV2", bad is None, len(pool), None if bad is None else str(bad),
                  None if bad is None else f"Delta^2 = {delta.square(bad)}")
    tuples = sampler.tuples(alg, sig2)
    bad = None
    for x, y in tuples:
        left, right = bridge_residual(delta, x, y)
        if left != right:
            bad = (x, y, left, right)
            break
    report.record("bridge", bad is None, len(tuples),
                  None if bad is None else format_args(bad[:2]),
                  None if bad is None else f"left {bad[2]}, right {bad[3]}")
    return report


def check_bridge_identity(delta: DeltaOp, trials: int = 100, seed: int = 0) -> tuple[Report, list]:
    """Compare both sides on sampled pairs; also return the pairs where they are nonzero."""
    alg = delta.alg
    sampler = Sampler(trials=trials, seed=seed, label="bridge")
    tuples = sampler.tuples(alg, g_signature(2))
    nonzero = []
    report = Report("bridge", seed=seed)
    for x, y in tuples:
        left, right = bridge_residual(delta, x, y)
        if left != right:
            report.fail("bridge", len(tuples), format_args((x, y)), f"left {left}, right {right}")
            return report, nonzero
        if left:
            nonzero.append((x, y, left))
    report.ok("bridge", len(tuples), detail=f"{len(nonzero)} nonzero pairs")
    return report, nonzero


# -- torsor -----------------------------------------------------------------------------

def delta_difference(d1: DeltaOp, d2: DeltaOp) -> Cochain:
    return Cochain(g_signature(1), Kind.G, -1, lambda x: d1(x) - d2(x), "Delta1-Delta2")


def is_closed_small_1form(omega, alg, trials: int = 30, seed: int = 0) -> Report:
    """Degree -1 derivation whose Chevalley differential vanishes."""
    f = omega.cochain if hasattr(omega, "cochain") else omega
    report = Report("closed-small-1form", seed=seed)
    if f.arity != 1 or f.degree != -1:
        report.fail("small", 0, detail=f"arity {f.arity}, degree {f.degree}")
        return report
    report.ok("small", 0)
    report.extend(is_big_form(f, alg, trials, seed))
    sampler = Sampler(trials=trials, seed=seed, label="closed-1form-g")
    vanishes(d_chevalley_g(f, alg), sampler, alg).into(report, "closed")
    return report


def qbv_torsor_translate(delta: DeltaOp, omega) -> DeltaOp:
    """``Delta + omega``; a quasi-BV structure again whenever ``omega`` is a closed small 1-form."""
    if isinstance(omega, ClassicalForm):
        omega = extend_classical(omega)
    f = omega.cochain if hasattr(omega, "cochain") else omega
    if f.arity != 1 or f.degree != -1:
        raise ValueError("translation needs a degree -1 one-argument cochain")
    return delta.translate(f)


def difference_form(d1: DeltaOp, d2: DeltaOp) -> ClassicalForm:
    """Restriction of ``Delta1 - Delta2`` to sections, as a classical 1-form."""
    return restrict_to_classical(delta_difference(d1, d2), d1.alg)


# -- canonical cochains ---------------------------------------------------------------------

def euler_derivation(alg) -> Cochain:
    """``x -> |x| x``; a degree-0 derivation with ``d_CH E = [,]``."""
    from gerstkit.cochain import graded
    return Cochain(g_signature(1), Kind.G, 0, graded(lambda x: x.scale(x.grade), alg), "E")


def canonical_cochains(alg, trials: int = 100, seed: int = 0, library=None) -> tuple[dict, Report]:
    """``I``, ``omega = [,]`` and ``m = (-1)^|x| xy`` with their seven identities."""
    from gerstkit.cochain import graded
    I = identity_cochain(alg)
    omega = bracket_cochain(alg).relabel("omega")
    m = Cochain(g_signature(2), Kind.G, 0,
                graded(lambda x, y: (x * y).scale(sign(x.grade)), alg), "m")
    report = Report("canonical", seed=seed)
    S = Sampler(trials=trials, seed=seed, label="canonical")
    cochain_equal(d_chevalley_g(I, alg), omega, S, alg).into(report, "omega=dCH(I)")
    vanishes(d_chevalley_g(omega, alg), S, alg).into(report, "dCH(omega)=0")
    vanishes(d_vertical(omega, alg), S, alg).into(report, "dH(omega)=0")
    cochain_equal(d_hochschild_g(I, alg), m, S, alg).into(report, "m=dH(I)")
    vanishes(d_hochschild_g(m, alg), S, alg).into(report, "dH(m)=0")
    vanishes(d_chevalley_line1(m, alg), S, alg).into(report, "dCH(m)=0")
    big = is_big_form(omega, alg, trials, seed)
    report.record("omega-big-not-small", big.passed and omega.degree == -1, big["d_vertical=0"].trials,
                  detail=f"degree {omega.degree}, small forms of arity 2 have degree -2")
    lib = library if library is not None else degree0_library(alg, seed)
    n = 0
    for g in lib:
        v = differs(omega, d_vertical(g, alg), S, alg)
        n += v.trials
        if not v:
            report.fail("omega!=dV(g)", n, detail=f"omega agrees with dV({g.label}) on all samples")
            break
    else:
        report.ok("omega!=dV(g)", n, detail=f"{len(lib)} degree-0 cochains")
    return {"I": I, "omega": omega, "m": m}, report


def differs(c1: Cochain, c2: Cochain, sampler: Sampler, alg) -> Verdict:
    """Succeeds with the first tuple on which the two cochains disagree."""
    tuples = sampler.tuples(alg, c1.signature)
    for k, args in enumerate(tuples, 1):
        if c1(*args) != c2(*args):
            return Verdict(True, format_args(args), k)
    return Verdict(False, None, len(tuples), detail="no distinguishing sample")


def degree0_library(alg, seed: int = 0) -> list[Cochain]:
    from gerstkit.library import random_one_cochain
    from gerstkit.rng import derive_rng
    rng = derive_rng(seed, "degree0-library", alg.name)
    return [identity_cochain(alg), euler_derivation(alg)] + [random_one_cochain(alg, rng, 0) for _ in range(3)]

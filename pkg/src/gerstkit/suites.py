"""Verification suites and the aggregate runner behind ``gerstkit verify``."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from gerstkit import algebroid as algebroid_mod
from gerstkit.algebroid import AlgebroidPresentation, check_algebroid_axioms
from gerstkit.bicomplex import (ClassicalForm, Divergence, TotalCochain, canonical_e, canonical_epsilon,
                                check_divergence, classical_derham_d, d_chevalley_u, d_hochschild_u,
                                d_total, divergence_difference, is_closed_1form, random_bicochain,
                                torsor_translate, totals_equal)
from gerstkit.cochain import Sampler, vanishes
from gerstkit.report import Report
from gerstkit.rng import derive_rng
from gerstkit.schouten import check_gerstenhaber

SUITES = ("algebroid", "gerstenhaber", "bicomplex", "divergence", "hochschild", "squares",
          "derham", "bv", "bridge", "canonical")


@dataclass
class RunConfig:
    algebroid: str = "standard(2)"
    suites: tuple = ("all",)
    trials: int = 50
    seed: int = 0
    grade_bound: int = 3
    degree_bound: int = 2
    convention: str = "bracket-side"
    divergence: str | None = None
    n_max: int = 3
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.grade_bound < 1 or self.degree_bound < 1:
            raise ValueError("bounds must be >= 1")

    def load(self) -> AlgebroidPresentation:
        return algebroid_mod.load(self.algebroid)

    def selected(self) -> list[str]:
        if "all" in self.suites:
            return list(SUITES)
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)} or all")
        return list(self.suites)


def _sampler(cfg: RunConfig, label: str, **kw) -> Sampler:
    opts = dict(trials=cfg.trials, seed=cfg.seed, grade_bound=cfg.grade_bound,
                degree_bound=cfg.degree_bound, label=label)
    opts.update(kw)
    return Sampler(**opts)


def divergence_from_config(cfg: RunConfig, alg) -> Divergence:
    from gerstkit.parsing import parse_divergence_values
    if not cfg.divergence:
        return Divergence.zero(alg)
    return Divergence(alg, parse_divergence_values(cfg.divergence, alg))


# -- suites -------------------------------------------------------------------------------

def suite_algebroid(alg, cfg: RunConfig) -> Report:
    return check_algebroid_axioms(alg, cfg.trials, cfg.seed, cfg.degree_bound)


def suite_gerstenhaber(alg, cfg: RunConfig) -> Report:
    return check_gerstenhaber(alg, cfg.trials, cfg.seed, cfg.grade_bound, cfg.degree_bound)


def suite_bicomplex(alg, cfg: RunConfig, cap: int = 3) -> Report:
    """Squares of both differentials, commuting squares and ``d_total^2 = 0`` for bidegrees <= ``cap``."""
    report = Report("bicomplex", seed=cfg.seed)
    rng = derive_rng(cfg.seed, "bicomplex-suite", alg.name)
    trials = max(1, min(cfg.trials, 12))

    def S(label):
        return _sampler(cfg, label, trials=trials, enum_cap=24, max_terms=1)

    for i, j in itertools.product(range(cap + 1), repeat=2):
        F = random_bicochain(alg, i, j, rng)
        if j + 2 <= cap:
            vanishes(d_hochschild_u(d_hochschild_u(F)).cochain, S(f"dH2-{i}{j}"), alg) \
                .into(report, f"dH^2=0 at ({i},{j})")
        if i + 2 <= cap:
            vanishes(d_chevalley_u(d_chevalley_u(F)).cochain, S(f"dCH2-{i}{j}"), alg) \
                .into(report, f"dCH^2=0 at ({i},{j})")
        if i + 1 <= cap and j + 1 <= cap:
            from gerstkit.cochain import cochain_equal
            a = d_chevalley_u(d_hochschild_u(F)).cochain
            b = d_hochschild_u(d_chevalley_u(F)).cochain
            cochain_equal(a, b, S(f"square-{i}{j}"), alg).into(report, f"square at ({i},{j})")
    for deg in (0, 1):
        comps = {(i, deg - i): random_bicochain(alg, i, deg - i, rng) for i in range(deg + 1)}
        x = TotalCochain(alg, deg, comps)
        dd = d_total(d_total(x))
        zero = TotalCochain(alg, deg + 2, {})
        totals_equal(dd, zero, S(f"dtot2-{deg}")).into(report, f"d_total^2=0 in degree {deg}")
    e = canonical_e(alg)
    vanishes(d_hochschild_u(e).cochain, S("dHe"), alg).into(report, "dH(e)=0")
    vanishes(d_chevalley_u(e).cochain, S("dCHe"), alg).into(report, "dCH(e)=0")
    eps = canonical_epsilon(alg)
    totals_equal(d_total(eps), TotalCochain(alg, 2, {}), S("eps")).into(report, "epsilon cocycle")
    return report


def suite_divergence(alg, cfg: RunConfig) -> Report:
    """The configured divergence, torsor translation by an exact form, and the difference law."""
    report = Report("divergence", seed=cfg.seed)
    c = divergence_from_config(cfg, alg)
    base = check_divergence(c, cfg.trials, cfg.seed)
    report.extend(base)
    rng = derive_rng(cfg.seed, "divergence-suite", alg.name)
    from gerstkit.poly import random_element
    g = ClassicalForm.function(random_element(alg.ring, 3, 2, rng), alg)
    y = classical_derham_d(g)
    is_closed_1form(y, cfg.trials, cfg.seed).into(report, "exact 1-form is closed")
    c2 = torsor_translate(c, y)
    t = check_divergence(c2, cfg.trials, cfg.seed)
    report.record("translate by closed form keeps Div2", t["Div2"].status == "pass" or not base.passed,
                  t["Div2"].trials, t["Div2"].witness)
    if base.passed:
        is_closed_1form(divergence_difference(c2, c), cfg.trials, cfg.seed).into(report, "difference closed")
    return report


def suite_hochschild(alg, cfg: RunConfig) -> Report:
    from gerstkit.hochschild import check_bracket_cocycle, d_hochschild_g, is_derivation
    from gerstkit.library import graded_library
    report = check_bracket_cocycle(alg, max(cfg.trials, 1), cfg.seed, cfg.grade_bound)
    report.suite = "hochschild"
    for f in graded_library(alg, cfg.seed, max_arity=2):
        S = _sampler(cfg, f"hoch-{f.label}", trials=min(cfg.trials, 30), enum_cap=60)
        vanishes(d_hochschild_g(d_hochschild_g(f, alg), alg), S, alg).into(report, f"dH^2=0:{f.label}")
        if f.arity == 1:
            der = bool(is_derivation(f, alg, sampler=S))
            ker = bool(vanishes(d_hochschild_g(f, alg), S, alg))
            report.record(f"derivation<=>dH=0:{f.label}", der == ker, S.trials,
                          detail=f"derivation={der}, cocycle={ker}")
    return report


def suite_squares(alg, cfg: RunConfig) -> Report:
    from gerstkit.derham import d_chevalley_g, verify_squares
    from gerstkit.library import graded_library
    lib = graded_library(alg, cfg.seed, max_arity=cfg.n_max)
    report = verify_squares(alg, cfg.n_max, max(cfg.trials, 1), cfg.seed, library=lib,
                            grade_bound=cfg.grade_bound)
    for f in lib:
        if f.arity <= 2:
            S = _sampler(cfg, f"dCH2-{f.label}", trials=min(cfg.trials, 30), enum_cap=30)
            vanishes(d_chevalley_g(d_chevalley_g(f, alg), alg), S, alg).into(report, f"dCH^2=0:{f.label}")
    return report


def suite_derham(alg, cfg: RunConfig, max_arity: int = 2) -> Report:
    from gerstkit.derham import DERHAM_SIGN, calibrate_derham_sign, derham_comparison
    from gerstkit.poly import Poly
    report = Report("derham", seed=cfg.seed)
    s = calibrate_derham_sign(alg)
    report.record("stored sign matches calibration", s == DERHAM_SIGN, 1, detail=f"calibrated {s}")
    for k in range(max_arity + 1):
        n = 0
        for I in itertools.combinations(range(alg.m), k):
            for e in alg.ring.monomials(cfg.degree_bound):
                phi = ClassicalForm(alg, k, {I: Poly(alg.ring, {e: 1})})
                v = derham_comparison(phi, DERHAM_SIGN)
                n += 1
                if not v:
                    report.fail(f"arity {k}", n, v.witness, v.detail)
                    break
            else:
                continue
            break
        else:
            report.ok(f"arity {k}", n)
    return report


def suite_bv(alg, cfg: RunConfig) -> Report:
    from gerstkit.bv import check_quasi_bv, delta_from_divergence
    c = divergence_from_config(cfg, alg)
    report = Report("bv", seed=cfg.seed)
    d = check_divergence(c, cfg.trials, cfg.seed)
    report.record("divergence", d.passed, sum(ch.trials for ch in d.checks),
                  next((f"{ch.name}: {ch.witness}" for ch in d.failures), None))
    delta = delta_from_divergence(c, cfg.convention)
    report.extend(check_quasi_bv(delta, cfg.trials, cfg.seed, cfg.grade_bound))
    return report


def suite_bridge(alg, cfg: RunConfig) -> Report:
    from gerstkit.bv import check_bridge_identity, delta_from_divergence
    c = divergence_from_config(cfg, alg)
    rep, _ = check_bridge_identity(delta_from_divergence(c, cfg.convention), max(cfg.trials, 1), cfg.seed)
    return rep


def suite_canonical(alg, cfg: RunConfig) -> Report:
    from gerstkit.bv import canonical_cochains
    return canonical_cochains(alg, cfg.trials, cfg.seed)[1]


_RUNNERS = {
    "algebroid": suite_algebroid, "gerstenhaber": suite_gerstenhaber, "bicomplex": suite_bicomplex,
    "divergence": suite_divergence, "hochschild": suite_hochschild, "squares": suite_squares,
    "derham": suite_derham, "bv": suite_bv, "bridge": suite_bridge, "canonical": suite_canonical,
}


def run_suite(name: str, alg, cfg: RunConfig) -> Report:
    t = time.perf_counter()
    rep = _RUNNERS[name](alg, cfg)
    rep.suite = name
    rep.seed = cfg.seed
    rep.elapsed = time.perf_counter() - t
    return rep


def run_verify(cfg: RunConfig, alg: AlgebroidPresentation | None = None) -> Report:
    """Run the selected suites and merge them into one report (check names prefixed by suite)."""
    alg = alg or cfg.load()
    t = time.perf_counter()
    total = Report("verify", seed=cfg.seed)
    for name in cfg.selected():
        total.extend(run_suite(name, alg, cfg), prefix=name)
    total.elapsed = time.perf_counter() - t
    return total

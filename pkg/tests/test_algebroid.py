from __future__ import annotations

import dataclasses

from gerstkit.algebroid import (AlgebroidPresentation, TSection, anchor_apply, check_algebroid_axioms,
                                from_dict, random_section, standard, t_bracket)
from gerstkit.rng import derive_rng

from conftest import P, T


def test_anchor_examples(std2):
    assert anchor_apply(std2, T(std2, "d1"), P(std2, "x1")) == P(std2, "1")
    assert anchor_apply(std2, T(std2, "x1*d2"), P(std2, "x2^2")) == P(std2, "2*x1*x2")
    rng = derive_rng(0, "t")
    for _ in range(20):
        assert anchor_apply(std2, random_section(std2, rng), P(std2, "1")).is_zero()


def test_bracket_examples(std2):
    got = t_bracket(std2, T(std2, "x1*d2"), T(std2, "x2*d1"))
    assert got == T(std2, "x1*d1 - x2*d2")
    assert t_bracket(std2, T(std2, "d1"), T(std2, "x1*d1")) == T(std2, "d1")
    rng = derive_rng(1, "t")
    for _ in range(20):
        t = random_section(std2, rng)
        assert t_bracket(std2, t, t).is_zero()


def test_bracket_is_commutator_of_derivations(std3):
    # oracle: compare anchor of the bracket with the commutator on sample functions
    rng = derive_rng(2, "comm")
    for _ in range(30):
        t, u = random_section(std3, rng), random_section(std3, rng)
        for s in ("x1", "x2*x3", "x1^3 + x2"):
            a = P(std3, s)
            lhs = anchor_apply(std3, t_bracket(std3, t, u), a)
            assert lhs == anchor_apply(std3, t, anchor_apply(std3, u, a)) - anchor_apply(std3, u, anchor_apply(std3, t, a))


def test_axioms_pass(std2, std3, sl2_action):
    for alg in (std2, std3, sl2_action):
        rep = check_algebroid_axioms(alg, 30, 0)
        assert rep.passed, rep.to_text()


def test_rank_one():
    alg = from_dict({"vars": ["x1"], "gens": ["e1"], "anchor": [["1"]]})
    assert check_algebroid_axioms(alg, 20, 0).passed


def test_perturbed_structure_fails(sl2_action):
    bad = dict(sl2_action.structure)
    c = bad[(0, 1)]
    bad[(0, 1)] = (c[0] + P(sl2_action, "x1"),) + tuple(c[1:])
    broken = dataclasses.replace(sl2_action, structure=bad)
    rep = check_algebroid_axioms(broken, 20, 0)
    assert not rep.passed
    assert any(ch.witness for ch in rep.failures)


def test_perturbed_standard_fails(std2):
    broken = AlgebroidPresentation(std2.ring, std2.gen_names, std2.anchor,
                                   {(0, 1): (P(std2, "x1"), P(std2, "0"))}, name="broken")
    rep = check_algebroid_axioms(broken, 10, 0)
    assert rep.status("anchor-homomorphism") == "fail"
    assert rep["anchor-homomorphism"].witness


def test_section_arithmetic(std2):
    a = T(std2, "x1*d1 + d2")
    assert a - a == TSection.zero(std2)
    assert a.scale(P(std2, "x2")) == T(std2, "x1*x2*d1 + x2*d2")
    assert TSection.gen(std2, 1) == T(std2, "d2")


def test_toml_and_json_load(tmp_path):
    from gerstkit.algebroid import load
    (tmp_path / "a.toml").write_text('vars = ["x1", "x2"]\nanchor = [["1", "0"], ["0", "1"]]\n')
    alg = load(str(tmp_path / "a.toml"))
    assert alg.m == 2 and alg.gen_names == ("e1", "e2")
    assert load("standard(3)").m == 3
    assert standard(2).is_standard

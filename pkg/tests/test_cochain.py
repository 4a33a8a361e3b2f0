from __future__ import annotations

import pytest

from gerstkit.cochain import (Kind, Sampler, SignatureMismatch, Slot, check_alternating, check_degree,
                              check_multilinear, cochain_equal, evaluate, g_signature, graded, make_cochain,
                              shifted_perm_sign, zero_cochain)
from gerstkit.hochschild import bracket_cochain, d_hochschild_g, identity_cochain
from gerstkit.library import graded_library
from gerstkit.schouten import schouten_bracket, sign

from conftest import V


def m_cochain(alg):
    return make_cochain(g_signature(2), Kind.G, 0, graded(lambda x, y: (x * y).scale(sign(x.grade)), alg), "m")


def test_evaluate_examples(std2):
    I, br = identity_cochain(std2), bracket_cochain(std2)
    assert evaluate(I, [V(std2, "x1*d1")]) == V(std2, "x1*d1")
    assert evaluate(br, [V(std2, "d1"), V(std2, "x1")]) == V(std2, "1")
    assert evaluate(br, [V(std2, "x1"), V(std2, "x2")]).is_zero()
    assert br.degree == -1 and I.degree == 0
    z = zero_cochain(std2, g_signature(3), "PolyvectorG")
    assert z(V(std2, "d1"), V(std2, "x1"), V(std2, "d2")).is_zero()


def test_evaluate_mismatch(std2):
    with pytest.raises(SignatureMismatch):
        evaluate(identity_cochain(std2), [])
    with pytest.raises(SignatureMismatch):
        evaluate(identity_cochain(std2), [std2.ring.one()])
    with pytest.raises(SignatureMismatch):
        make_cochain((Slot(Kind.A, "g"), Slot(Kind.G, "g")), "ScalarA", 0, lambda a, b: a)


def test_equal_reflexive_and_witness(std2):
    S = Sampler(trials=20, seed=0)
    br = bracket_cochain(std2)
    assert cochain_equal(br, br, S, std2)
    swapped = make_cochain(g_signature(2), Kind.G, -1, graded(lambda x, y: schouten_bracket(y, x), std2), "swap")
    v = cochain_equal(br, swapped, S, std2)
    assert not v and v.witness
    # the enumeration reaches (d1, x1) where [d1,x1] = 1 and [x1,d1] = -1
    assert br(V(std2, "d1"), V(std2, "x1")) != swapped(V(std2, "d1"), V(std2, "x1"))


def test_equal_symmetric(std2):
    S = Sampler(trials=20, seed=1)
    a = d_hochschild_g(identity_cochain(std2), std2)
    b = m_cochain(std2)
    assert cochain_equal(a, b, S, std2) and cochain_equal(b, a, S, std2)


def test_alternating(std2):
    br = make_cochain(g_signature(2, 2), Kind.G, -1, graded(schouten_bracket, std2), "br")
    assert check_alternating(br, "alt", 20, 0, std2).passed
    m = make_cochain(g_signature(2, 2), Kind.G, 0, graded(lambda x, y: (x * y).scale(sign(x.grade)), std2), "m")
    m_rep = check_alternating(m, "alt", 20, 0, std2)
    # m is alternating in the shifted sense: (-1)^x xy = -(-1)^{(x-1)(y-1)} (-1)^y yx
    assert m_rep.passed
    m_sym = make_cochain(g_signature(2, 2), Kind.G, 0, graded(lambda x, y: x * y, std2), "xy")
    rep = check_alternating(m_sym, "alt", 20, 0, std2)
    assert not rep.passed and rep.failures[0].witness
    one = make_cochain(g_signature(1, 1), Kind.G, 0, graded(lambda x: x, std2), "I")
    assert check_alternating(one, "alt", 5, 0, std2).passed


def test_shifted_perm_sign():
    # sign picked up by an alternating cochain: -(-1)^((a-1)(b-1)) per inverted pair
    assert shifted_perm_sign((1, 0), (1, 1)) == -1
    assert shifted_perm_sign((1, 0), (0, 0)) == 1
    assert shifted_perm_sign((1, 0), (2, 1)) == -1
    assert shifted_perm_sign((2, 0, 1), (1, 1, 1)) == 1
    assert shifted_perm_sign((0, 1, 2), (0, 2, 3)) == 1


def test_library_multilinear_and_degree(std2):
    S = Sampler(trials=8, seed=2, enum_cap=20)
    for f in graded_library(std2, 0, max_arity=2):
        assert check_multilinear(f, S, std2), f.label
        assert check_degree(f, S, std2), f.label


def test_sampler_deterministic(std3):
    S = Sampler(trials=10, seed=9, label="x")
    assert S.tuples(std3, g_signature(2)) == S.tuples(std3, g_signature(2))
    assert len(S.enumerated_tuples(std3, g_signature(1))) > 0

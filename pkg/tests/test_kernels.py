from __future__ import annotations

import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from gerstkit import _kernels_py as pure
from gerstkit import kernels

compiled = pytest.importorskip("gerstkit._kernels")


def terms(rng, frac):
    out = {}
    for _ in range(rng.randint(0, 6)):
        e = tuple(rng.randint(0, 3) for _ in range(3))
        c = rng.choice((1, -1, 2, -3))
        if frac and rng.random() < 0.4:
            c = Fraction(c, rng.choice((2, 3)))
        out[e] = pure.norm(out.get(e, 0) + c)
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("frac", [False, True])
def test_backends_agree(frac):
    rng = random.Random(3)
    for _ in range(200):
        a, b = terms(rng, frac), terms(rng, frac)
        s = rng.choice((1, -1, Fraction(1, 2)))
        assert compiled.mul_terms(a, b) == pure.mul_terms(a, b)
        assert compiled.add_terms(a, b, s) == pure.add_terms(a, b, s)
        assert compiled.scale_terms(a, s) == pure.scale_terms(a, s)
        for i in range(3):
            assert compiled.diff_terms(a, i) == pure.diff_terms(a, i)


def test_norm_types():
    for mod in (pure, compiled):
        assert type(mod.norm(Fraction(4, 2))) is int
        assert mod.norm(Fraction(1, 2)) == Fraction(1, 2)


def test_backend_selected():
    assert kernels.BACKEND == "compiled"


def test_pure_fallback_env():
    code = "from gerstkit import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, GERSTKIT_PURE="1"),
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_suite_result_independent_of_backend():
    code = ("from gerstkit.suites import RunConfig, run_verify; "
            "print(run_verify(RunConfig(suites=('gerstenhaber','canonical'), trials=10, seed=4)).to_json())")
    runs = [subprocess.run([sys.executable, "-c", code], env=dict(os.environ, GERSTKIT_PURE=f),
                           capture_output=True, text=True, check=True).stdout for f in ("1", "")]
    assert runs[0] == runs[1]

from __future__ import annotations

import json
import sys

import pytest
import sympy

from gerstkit.algebroid import standard
from gerstkit.parsing import parse_poly, parse_polyvector, parse_section


@pytest.fixture(scope="session")
def std2():
    return standard(2)


@pytest.fixture(scope="session")
def std3():
    return standard(3)


@pytest.fixture(scope="session")
def sl2_action(tmp_path_factory):
    """sl2 acting on the line: e1 = d/dx, e2 = x d/dx, e3 = x^2 d/dx."""
    data = {"vars": ["x1"], "gens": ["e1", "e2", "e3"], "anchor": [["1"], ["x1"], ["x1^2"]],
            "brackets": {"1,2": ["1", "0", "0"], "1,3": ["0", "2", "0"], "2,3": ["0", "0", "1"]}}
    path = tmp_path_factory.mktemp("alg") / "sl2.json"
    path.write_text(json.dumps(data))
    from gerstkit.algebroid import load
    return load(str(path))


def P(alg, s):
    return parse_poly(s, alg.ring)


def V(alg, s):
    return parse_polyvector(s, alg)


def T(alg, s):
    return parse_section(s, alg)


def to_sympy(p):
    """Independent view of a polynomial for oracle comparisons."""
    xs = sympy.symbols(" ".join(p.ring.names), seq=True)
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for x, k in zip(xs, e):
            term *= x**k
        out += term
    return sympy.expand(out), xs


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, title, note = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}  [{note}]")

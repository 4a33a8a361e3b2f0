"""Pure-Python sparse term kernels.

A term map is a ``dict`` from exponent tuples to nonzero exact rationals.
Integral coefficients are kept as ``int`` and the rest as ``Fraction``; the
two compare and hash alike, so this is invisible to callers but keeps the hot
loops off the ``Fraction`` slow path.  These functions never mutate their inputs.
"""

from __future__ import annotations

from fractions import Fraction


def norm(c):
    """``Fraction`` with denominator 1 -> ``int``."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def add_terms(a, b, scale=1):
    """Return ``a + scale * b``."""
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + scale * v
        if c:
            out[k] = norm(c)
        else:
            out.pop(k, None)
    return out


def scale_terms(a, c):
    if not c:
        return {}
    c = norm(c)
    return {k: norm(c * v) for k, v in a.items()}


def mul_terms(a, b):
    out = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple([x + y for x, y in zip(ka, kb)])
            c = get(k, 0) + va * vb
            if c:
                out[k] = c
            else:
                del out[k]
    return {k: norm(v) for k, v in out.items()}


def diff_terms(a, i):
    """Formal partial derivative in the variable with 0-based index ``i``."""
    out = {}
    for k, v in a.items():
        e = k[i]
        if e:
            nk = k[:i] + (e - 1,) + k[i + 1:]
            out[nk] = norm(v * e)
    return out

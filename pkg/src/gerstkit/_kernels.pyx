# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse term kernels; same contract as ``_kernels_py``."""

from fractions import Fraction


cdef inline object norm_c(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def norm(c):
    return norm_c(c)


cdef inline object mul_c(object x, object y):
    if type(x) is int and type(y) is int:
        return <object>x * <object>y
    return norm_c(x * y)


def add_terms(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    cdef object k, v, c, prev
    cdef bint unit = type(scale) is int and scale == 1
    for k, v in b.items():
        prev = out.get(k)
        c = v if unit else mul_c(scale, v)
        if prev is not None:
            c = prev + c
            if type(c) is not int:
                c = norm_c(c)
        if c:
            out[k] = c
        elif prev is not None:
            del out[k]
    return out


def scale_terms(dict a, c):
    if not c:
        return {}
    c = norm_c(c)
    return {k: mul_c(c, v) for k, v in a.items()}


cdef tuple exp_sum(tuple ka, tuple kb, Py_ssize_t n):
    cdef tuple out = tuple([<long>ka[i] + <long>kb[i] for i in range(n)])
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef Py_ssize_t n
    cdef object va, vb, c, prev
    cdef bint exact = True
    for ka, va in a.items():
        n = len(ka)
        for kb, vb in b.items():
            k = exp_sum(ka, kb, n)
            if type(va) is int and type(vb) is int:
                c = va * vb
            else:
                c = va * vb
                exact = False
            prev = out.get(k)
            if prev is not None:
                c = prev + c
            if c:
                out[k] = c
            elif prev is not None:
                del out[k]
    if exact:
        return out
    return {k: norm_c(c) for k, c in out.items()}


def diff_terms(dict a, Py_ssize_t i):
    cdef dict out = {}
    cdef tuple k
    cdef long e
    for k, v in a.items():
        e = k[i]
        if e:
            out[k[:i] + (e - 1,) + k[i + 1:]] = mul_c(v, e)
    return out

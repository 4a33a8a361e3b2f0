"""Finite presentations of Lie algebroids over a polynomial ring.

``T`` is the free ``A``-module on generators ``e1..em``.  The anchor sends
``e_i`` to the derivation ``sum_j rho[i][j] d/dx_j`` and the bracket on
generators is ``[e_i, e_j] = sum_k c[(i, j)][k] e_k``.  Indices are 0-based in
code and 1-based in every user-facing string.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from gerstkit.poly import Poly, PolyRing
from gerstkit.report import Report
from gerstkit.rng import derive_rng


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebroidPresentation:
    ring: PolyRing
    gen_names: tuple[str, ...]
    anchor: tuple[tuple[Poly, ...], ...]
    structure: dict  # (i, j) with i < j  ->  tuple of m Polys
    name: str = ""

    def __post_init__(self):
        m, n = len(self.gen_names), self.ring.n
        if m < 1:
            raise ValueError("need at least one generator")
        if len(self.anchor) != m or any(len(row) != n for row in self.anchor):
            raise DimensionMismatch(f"anchor must be {m}x{n}")
        for (i, j), vec in self.structure.items():
            if not 0 <= i < j < m:
                raise DimensionMismatch(f"structure key {(i, j)} must satisfy 0 <= i < j < {m}")
            if len(vec) != m:
                raise DimensionMismatch(f"structure vector for {(i, j)} must have length {m}")
        object.__setattr__(self, "_cache", {})

    @property
    def m(self) -> int:
        return len(self.gen_names)

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def is_standard(self) -> bool:
        return self.name.startswith("standard(")

    def gen_bracket(self, i: int, j: int) -> tuple[Poly, ...]:
        """Coefficients of ``[e_i, e_j]``."""
        zero = self.ring.zero()
        if i == j:
            return (zero,) * self.m
        if i < j:
            return self.structure.get((i, j), (zero,) * self.m)
        return tuple(-c for c in self.structure.get((j, i), (zero,) * self.m))

    def act(self, i: int, a: Poly) -> Poly:
        """``e_i(a)``, the anchor of generator ``i`` applied to ``a``."""
        out = self.ring.zero()
        for j, rho in enumerate(self.anchor[i]):
            if rho:
                out = out + rho * a.diff(j)
        return out

    def to_dict(self) -> dict:
        from gerstkit.poly import format_poly
        return {
            "vars": list(self.ring.names),
            "gens": list(self.gen_names),
            "anchor": [[format_poly(p) for p in row] for row in self.anchor],
            "brackets": {f"{i + 1},{j + 1}": [format_poly(p) for p in vec]
                         for (i, j), vec in sorted(self.structure.items())},
        }


def standard(n: int) -> AlgebroidPresentation:
    """The tangent algebroid of affine n-space: ``e_i = d/dx_i``, abelian brackets."""
    ring = PolyRing.standard(n)
    anchor = tuple(tuple(ring.one() if i == j else ring.zero() for j in range(n))
                   for i in range(n))
    return AlgebroidPresentation(ring, tuple(f"d{i + 1}" for i in range(n)), anchor, {},
                                 name=f"standard({n})")


def from_dict(data: dict) -> AlgebroidPresentation:
    from gerstkit.parsing import parse_poly
    ring = PolyRing(tuple(data["vars"]))
    gens = tuple(data.get("gens") or [f"e{i + 1}" for i in range(len(data["anchor"]))])
    anchor = tuple(tuple(parse_poly(str(s), ring) for s in row) for row in data["anchor"])
    structure = {}
    for key, vec in (data.get("brackets") or {}).items():
        i, j = (int(t) - 1 for t in str(key).split(","))
        polys = tuple(parse_poly(str(s), ring) for s in vec)
        if i > j:
            i, j, polys = j, i, tuple(-p for p in polys)
        if i == j:
            raise DimensionMismatch(f"bracket key {key!r} repeats a generator")
        structure[(i, j)] = polys
    return AlgebroidPresentation(ring, gens, anchor, structure, name=data.get("name", ""))


def load(source: str) -> AlgebroidPresentation:
    """Load ``standard(n)`` or a JSON/TOML presentation file."""
    s = source.strip()
    if s.startswith("standard(") and s.endswith(")"):
        return standard(int(s[len("standard("):-1]))
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(text)
    else:
        data = json.loads(text)
    data.setdefault("name", path.stem)
    return from_dict(data)


@dataclass(frozen=True, eq=False)
class TSection:
    """An element ``sum_i coeffs[i] e_i`` of T."""

    alg: AlgebroidPresentation
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.alg.m:
            raise DimensionMismatch(f"section needs {self.alg.m} coefficients")

    @classmethod
    def gen(cls, alg: AlgebroidPresentation, i: int, coeff: Poly | None = None) -> "TSection":
        zero = alg.ring.zero()
        c = alg.ring.one() if coeff is None else coeff
        return cls(alg, tuple(c if k == i else zero for k in range(alg.m)))

    @classmethod
    def zero(cls, alg: AlgebroidPresentation) -> "TSection":
        return cls(alg, (alg.ring.zero(),) * alg.m)

    def __add__(self, other: "TSection") -> "TSection":
        return TSection(self.alg, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TSection") -> "TSection":
        return TSection(self.alg, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TSection":
        return TSection(self.alg, tuple(-a for a in self.coeffs))

    def scale(self, a) -> "TSection":
        """``a * tau`` for a polynomial or rational ``a``."""
        return TSection(self.alg, tuple(a * c for c in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, TSection) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        from gerstkit.parsing import format_section
        return f"TSection({format_section(self)!r})"


def _check_same(alg, *objs):
    for o in objs:
        if isinstance(o, TSection) and o.alg is not alg:
            raise DimensionMismatch("section belongs to a different presentation")
        if isinstance(o, Poly) and o.ring != alg.ring:
            raise DimensionMismatch("polynomial over a different ring")


def anchor_apply(L: AlgebroidPresentation, tau: TSection, a: Poly) -> Poly:
    """``tau(a) = sum_i tau_i * e_i(a)``."""
    _check_same(L, tau, a)
    out = L.ring.zero()
    for i, t in enumerate(tau.coeffs):
        if t:
            out = out + t * L.act(i, a)
    return out


def t_bracket(L: AlgebroidPresentation, tau: TSection, nu: TSection) -> TSection:
    """Bracket of sections, extending the generator brackets by (LA2) and antisymmetry."""
    _check_same(L, tau, nu)
    ring = L.ring
    out = [ring.zero()] * L.m
    for i, a in enumerate(tau.coeffs):
        if not a:
            continue
        for j, b in enumerate(nu.coeffs):
            if not b:
                continue
            ab = a * b
            if i != j:
                for k, c in enumerate(L.gen_bracket(i, j)):
                    if c:
                        out[k] = out[k] + ab * c
            # a e_i(b) e_j - b e_j(a) e_i
            out[j] = out[j] + a * L.act(i, b)
            out[i] = out[i] - b * L.act(j, a)
    return TSection(L, tuple(out))


def random_section(L: AlgebroidPresentation, rng: random.Random, max_degree: int = 2,
                   max_terms: int = 2, density: float = 0.7) -> TSection:
    from gerstkit.poly import random_element
    coeffs = []
    for _ in range(L.m):
        if rng.random() < density:
            coeffs.append(random_element(L.ring, max_degree, max_terms, rng))
        else:
            coeffs.append(L.ring.zero())
    if not any(coeffs):
        coeffs[rng.randrange(L.m)] = random_element(L.ring, max_degree, max_terms, rng)
    return TSection(L, tuple(coeffs))


def check_algebroid_axioms(L: AlgebroidPresentation, trials: int = 50, seed: int = 0,
                           max_degree: int = 2) -> Report:
    """Sample antisymmetry, Jacobi, (LA1), (LA2) and the anchor homomorphism property."""
    from gerstkit.poly import random_element
    from gerstkit.parsing import format_poly, format_section

    report = Report("algebroid", seed=seed)
    rng = derive_rng(seed, "algebroid")
    samples = []
    for _ in range(trials):
        samples.append((random_section(L, rng, max_degree), random_section(L, rng, max_degree),
                        random_section(L, rng, max_degree),
                        random_element(L.ring, max_degree, 2, rng),
                        random_element(L.ring, max_degree, 2, rng)))
    # generator triples make structural failures visible regardless of sampling luck
    gens = [TSection.gen(L, i) for i in range(L.m)]
    x = L.ring.gens()
    for t in gens:
        for u in gens:
            for v in gens:
                samples.append((t, u, v, x[0], x[-1]))

    def br(a, b):
        return t_bracket(L, a, b)

    def fmt(*objs):
        return ", ".join(format_section(o) if isinstance(o, TSection) else format_poly(o)
                         for o in objs)

    def run(name, pred, witness):
        for s in samples:
            if not pred(*s):
                report.fail(name, len(samples), witness(*s))
                return
        report.ok(name, len(samples))

    run("antisymmetry", lambda t, u, v, a, b: br(t, u) == -br(u, t), lambda t, u, *_: fmt(t, u))
    run("jacobi", lambda t, u, v, a, b: br(t, br(u, v)) == br(br(t, u), v) + br(u, br(t, v)),
        lambda t, u, v, *_: fmt(t, u, v))
    run("LA1", lambda t, u, v, a, b: anchor_apply(L, t.scale(a), b) == a * anchor_apply(L, t, b),
        lambda t, u, v, a, b: fmt(t, a, b))
    run("LA2", lambda t, u, v, a, b: br(t, u.scale(a)) == br(t, u).scale(a) + u.scale(anchor_apply(L, t, a)),
        lambda t, u, v, a, b: fmt(t, u, a))
    run("anchor-homomorphism",
        lambda t, u, v, a, b: anchor_apply(L, br(t, u), a)
        == anchor_apply(L, t, anchor_apply(L, u, a)) - anchor_apply(L, u, anchor_apply(L, t, a)),
        lambda t, u, v, a, b: fmt(t, u, a))
    return report

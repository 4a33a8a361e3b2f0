"""Text grammar for polynomials, polyvectors, divergences and classical forms.

Polynomials: ``2*x1^2*x2 - 1/3``.  Polyvectors add generators ``e1..eM`` (or the
presentation's own names, ``d1..dN`` for standard algebroids) and the wedge
``/\\``; ``*`` between polyvectors is also the wedge.  Divergences are written
``c(e1)=x2, c(e2)=0``.  Forms are ``{arity: k, values: {"i1,...,ik": poly}}``
or the compact ``{k: {"i1,...,ik": poly}}``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gerstkit.poly import Poly, PolyRing, format_coeff, format_monomial, format_poly  # noqa: F401


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>/\\|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, atom):
        self.toks = _tokenize(text)
        self.i = 0
        self.atom_fn = atom

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/\\", "/"):
            _, op, pos = self.take()
            w = self.unary()
            if op == "/":
                c = _as_constant(w)
                if c is None or c == 0:
                    raise ParseError("division only by a nonzero rational constant", pos)
                v = v * (Fraction(1) / c)
            else:
                v = v * w
        return v

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[1] == "^":
            _, _, pos = self.take()
            kind, val, p = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", p)
            k = int(val)
            out = None
            for _ in range(k):
                out = v if out is None else out * v
            v = out if out is not None else self.atom_fn("num", "1", pos)
        return v

    def atom(self):
        kind, val, pos = self.take()
        if kind == "op" and val == "(":
            v = self.expr()
            self.take(")")
            return v
        if kind in ("num", "id"):
            return self.atom_fn(kind, val, pos)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def _as_constant(v):
    if isinstance(v, Poly):
        if not v.terms:
            return Fraction(0)
        if set(v.terms) == {(0,) * v.ring.n}:
            return v.constant_term()
        return None
    from gerstkit.schouten import Polyvector
    if isinstance(v, Polyvector):
        if not v.terms:
            return Fraction(0)
        if set(v.terms) == {()}:
            return _as_constant(v.terms[()])
    return None


def parse_poly(text: str, ring: PolyRing) -> Poly:
    names = {name: i for i, name in enumerate(ring.names)}

    def atom(kind, val, pos):
        if kind == "num":
            return ring.const(int(val))
        if val in names:
            return ring.var(names[val])
        raise ParseError(f"unknown variable {val!r}", pos)

    return _Parser(text, atom).parse()


def generator_names(alg) -> dict[str, int]:
    names = {f"e{i + 1}": i for i in range(alg.m)}
    names.update({name: i for i, name in enumerate(alg.gen_names)})
    if alg.is_standard:
        names.update({f"d{i + 1}": i for i in range(alg.m)})
    return names


def parse_polyvector(text: str, alg):
    from gerstkit.schouten import Polyvector
    ring = alg.ring
    var_names = {name: i for i, name in enumerate(ring.names)}
    gens = generator_names(alg)

    def atom(kind, val, pos):
        if kind == "num":
            return Polyvector.scalar(alg, int(val))
        if val in var_names:
            return Polyvector.scalar(alg, ring.var(var_names[val]))
        if val in gens:
            return Polyvector.gen(alg, gens[val])
        raise ParseError(f"unknown symbol {val!r}", pos)

    return _Parser(text, atom).parse()


def parse_section(text: str, alg):
    pv = parse_polyvector(text, alg)
    try:
        return pv.to_section()
    except ValueError:
        raise ParseError(f"{text!r} is not a section of T (grade 1)") from None


_DIV_ITEM = re.compile(r"^\s*c\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*(.+?)\s*$")


def parse_divergence_values(text: str, alg) -> tuple[Poly, ...]:
    """``c(e1)=x2, c(e2)=0`` -> tuple of generator values; unspecified generators get 0."""
    gens = generator_names(alg)
    values = [alg.ring.zero()] * alg.m
    seen = set()
    for item in filter(None, (s.strip() for s in text.split(","))):
        m = _DIV_ITEM.match(item)
        if not m:
            raise ParseError(f"cannot parse divergence item {item!r}")
        g, expr = m.groups()
        if g not in gens:
            raise ParseError(f"unknown generator {g!r}")
        if gens[g] in seen:
            raise ParseError(f"generator {g!r} given twice")
        seen.add(gens[g])
        values[gens[g]] = parse_poly(expr, alg.ring)
    return tuple(values)


def parse_form_data(data, alg) -> tuple[int, dict]:
    """Decode a form mapping into ``(arity, {sorted 0-based tuple: Poly})``."""
    if not isinstance(data, dict):
        raise ParseError("a form must be a mapping")
    if "arity" in data:
        arity = int(data["arity"])
        raw = data.get("values") or {}
    elif len(data) == 1:
        (k, raw), = data.items()
        arity = int(k)
        raw = raw or {}
    else:
        raise ParseError("form needs an 'arity' key or a single {arity: values} entry")
    values: dict = {}
    for key, expr in raw.items():
        idx = tuple(int(t) - 1 for t in str(key).replace(" ", "").split(",") if t != "") \
            if arity else ()
        if len(idx) != arity:
            raise ParseError(f"form key {key!r} does not have arity {arity}")
        if any(not 0 <= i < alg.m for i in idx):
            raise ParseError(f"form key {key!r} names an unknown generator")
        p = parse_poly(str(expr), alg.ring)
        if len(set(idx)) != len(idx):
            if p:
                raise ParseError(f"repeated generator in {key!r} with nonzero value")
            continue
        order = sorted(range(arity), key=lambda t: idx[t])
        inv = sum(1 for a in range(arity) for b in range(a + 1, arity) if order[a] > order[b])
        if inv % 2:
            p = -p
        s = tuple(sorted(idx))
        values[s] = values.get(s, alg.ring.zero()) + p
    return arity, {k: v for k, v in values.items() if v}


def parse_form_text(text: str, alg):
    import yaml
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"cannot read form: {exc}") from None
    return parse_form_data(data, alg)


# -- printing ----------------------------------------------------------------------

def _gen_label(alg, i: int) -> str:
    return alg.gen_names[i]


def format_polyvector(P) -> str:
    if not P.terms:
        return "0"
    alg = P.alg
    pieces = []
    for I in sorted(P.terms, key=lambda k: (len(k), k)):
        c = P.terms[I]
        gens = "/\\".join(_gen_label(alg, i) for i in I)
        if len(c.terms) == 1:
            (e, a), = c.terms.items()
            neg = a < 0
            a = abs(a)
            mono = format_monomial(alg.ring, e)
            factors = []
            if a != 1 or (not mono and not gens):
                factors.append(format_coeff(a))
            if mono:
                factors.append(mono)
            if gens:
                factors.append(gens)
            body = "*".join(factors)
        elif not gens:
            neg, body = False, format_poly(c)
        else:
            lead = max(c.terms, key=lambda e: (sum(e), e))
            neg = c.terms[lead] < 0
            body = f"({format_poly(-c if neg else c)})*{gens}"
        pieces.append((neg, body))
    neg, body = pieces[0]
    s = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        s += f" {'-' if neg else '+'} {body}"
    return s


def format_section(tau) -> str:
    from gerstkit.schouten import Polyvector
    return format_polyvector(Polyvector.from_section(tau))


def format_form(arity: int, values: dict) -> dict:
    return {"arity": arity,
            "values": {",".join(str(i + 1) for i in k): format_poly(v)
                       for k, v in sorted(values.items())}}


def format_value(v) -> str:
    from gerstkit.algebroid import TSection
    if isinstance(v, Poly):
        return format_poly(v)
    if isinstance(v, TSection):
        return format_section(v)
    return str(v)

"""Exact multivariate polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction` throughout: always reduced, positive
denominator, no rounding anywhere.  Monomials are dense exponent tuples of
fixed ring arity; polynomials are sparse term maps in canonical form (no zero
coefficients stored), so structural equality is semantic equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Mono = tuple  # exponent vector, one entry per ring variable


class Inhomogeneous:
    """Sentinel returned by weight_of when term weights disagree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Inhomogeneous"


INHOMOGENEOUS = Inhomogeneous()


class MonomialOrder:
    """A total multiplicative order on monomials, given by a sort key."""

    name = "order"

    def key(self, mono: Mono):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def key(self, mono):
        return mono


class Grevlex(MonomialOrder):
    """Graded reverse lexicographic: higher total degree wins, ties broken by
    the smaller exponent in the last variable where they differ."""

    name = "grevlex"

    def key(self, mono):
        neg = tuple(-e for e in reversed(mono))
        return (sum(mono), neg)


class BlockOrder(MonomialOrder):
    """Elimination order: compare the first `split` exponents with `first`,
    then the rest with `second`.  Anything involving a block-one variable
    dominates everything that does not."""

    def __init__(self, split: int, first: MonomialOrder | None = None,
                 second: MonomialOrder | None = None):
        self.split = split
        self.first = first or Grevlex()
        self.second = second or Grevlex()
        self.name = f"block({split};{self.first.name},{self.second.name})"

    def key(self, mono):
        return (self.first.key(mono[:self.split]), self.second.key(mono[self.split:]))


GREVLEX = Grevlex()
LEX = Lex()


class PolyRing:
    """A polynomial ring over Q with named variables and a monomial order."""

    def __init__(self, names: Sequence[str], order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        self.names = names
        self.n = len(names)
        self.order = order
        self.index = {v: i for i, v in enumerate(names)}
        self._zero_mono = (0,) * self.n

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, order)

    def var(self, name: str) -> "MultiPoly":
        mono = [0] * self.n
        mono[self.index[name]] = 1
        return MultiPoly(self, {tuple(mono): Fraction(1)})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(v) for v in self.names]

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly(self, {})
        return MultiPoly(self, {self._zero_mono: c})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def monomial(self, mono: Mono, coeff=1) -> "MultiPoly":
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return MultiPoly(self, {tuple(mono): c})

    def mono_str(self, mono: Mono) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(self, text)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.order.name == other.order.name)

    def __hash__(self):
        return hash((self.names, self.order.name))

    def __repr__(self):
        return f"Q[{','.join(self.names)}; {self.order.name}]"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """Immutable sparse polynomial: a map from exponent vectors to nonzero
    rational coefficients, in the canonical form fixed by its ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Mono, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (isinstance(other, MultiPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(sorted(self.terms.items()))))
        return self._hash

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ring.index[name]
        return max(m[i] for m in self.terms)

    def leading(self, order: MonomialOrder | None = None) -> tuple[Mono, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def coeff(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get(self.ring._zero_mono, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return MultiPoly(self.ring, {m: co * c for m, co in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                elif m in terms:
                    del terms[m]
        return MultiPoly(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        raise TypeError("polynomial division: use groebner.divmod_poly")

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def mul_term(self, mono: Mono, coeff: Fraction) -> "MultiPoly":
        if coeff == 0:
            return self.ring.zero()
        return MultiPoly(self.ring, {
            tuple(a + b for a, b in zip(m, mono)): c * coeff
            for m, c in self.terms.items()})

    def monic(self, order: MonomialOrder | None = None) -> "MultiPoly":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self * (Fraction(1) / c)

    # -- structure-preserving maps ------------------------------------------

    def map_ring(self, ring: PolyRing, var_map: Mapping[str, str] | None = None) -> "MultiPoly":
        """Reinterpret in `ring`, renaming variables via var_map (default:
        same names).  Every variable that occurs must map to a target name."""
        var_map = var_map or {}
        positions = {}
        for i, name in enumerate(self.ring.names):
            tgt = var_map.get(name, name)
            if tgt in ring.index:
                positions[i] = ring.index[tgt]
        terms: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            out = [0] * ring.n
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if i not in positions:
                    raise ValueError(f"variable {self.ring.names[i]} has no image in {ring}")
                out[positions[i]] += e
            key = tuple(out)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return MultiPoly(ring, terms)

    def substitute(self, sub: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Ring homomorphism: replace each named variable by a polynomial.
        All substituted values must share one target ring; unsubstituted
        variables must exist there under the same name."""
        return substitute(self, sub)

    # -- printing ------------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda it: order.key(it[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            ms = self.ring.mono_str(m)
            mag = abs(c)
            if ms:
                body = ms if mag == 1 else f"{_fmt_coeff(mag)}*{ms}"
            else:
                body = _fmt_coeff(mag)
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{self}>"


def substitute(f: MultiPoly, sub: Mapping[str, MultiPoly]) -> MultiPoly:
    for name in sub:
        if name not in f.ring.index:
            raise ValueError(f"unknown variable {name!r} in substitution")
    target = None
    for val in sub.values():
        if target is None:
            target = val.ring
        elif val.ring != target:
            raise ValueError("substituted values live in different rings")
    if target is None:
        target = f.ring
    out = target.zero()
    for m, c in f.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e == 0:
                continue
            name = f.ring.names[i]
            base = sub.get(name)
            if base is None:
                base = target.var(name)  # raises KeyError if absent from target
            term = term * base ** e
        out = out + term
    return out


class WeightAssignment:
    """Integer torus weight for every variable of a ring."""

    def __init__(self, ring: PolyRing, weights: Mapping[str, int]):
        missing = set(ring.names) - set(weights)
        if missing:
            raise ValueError(f"weights missing for {sorted(missing)}")
        self.ring = ring
        self.by_name = dict(weights)
        self.vector = tuple(weights[v] for v in ring.names)

    def of_mono(self, mono: Mono) -> int:
        return sum(e * w for e, w in zip(mono, self.vector))

    def __getitem__(self, name: str) -> int:
        return self.by_name[name]

    def __repr__(self):
        return f"WeightAssignment({self.by_name})"


def weight_of(f: MultiPoly, wts: WeightAssignment):
    """Common torus weight of all terms of f, or INHOMOGENEOUS.

    The weight of a monomial is additive over its factors; the zero
    polynomial has no weight and raises."""
    if f.is_zero():
        raise ValueError("weight_of: zero polynomial")
    it = iter(f.terms)
    w = wts.of_mono(next(it))
    for m in it:
        if wts.of_mono(m) != w:
            return INHOMOGENEOUS
    return w


# -- textual syntax ---------------------------------------------------------
#
# Fixture syntax: `3/5*u3^2*u_m1 - u1*u_m3`, where `u_m1` denotes a variable
# with a negative index.  A term is a product of rational constants and
# powers of variables joined by `*`; terms are joined by `+`/`-`.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(/))")


def parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad token at {text[pos:]!r}")
        tokens.append(m)
        pos = m.end()
    i = 0

    def peek(kind):
        return i < len(tokens) and tokens[i].group(kind) is not None

    result = ring.zero()
    first = True
    while i < len(tokens):
        sign = Fraction(1)
        while peek(5) or peek(6):
            if peek(6):
                sign = -sign
            i += 1
        if not first and sign == 1 and tokens[i - 1].group(5) is None and tokens[i - 1].group(6) is None:
            raise ValueError("missing +/- between terms")
        first = False
        coeff = sign
        mono = [0] * ring.n
        expect_factor = True
        while expect_factor:
            if peek(1):  # number, maybe a fraction
                num = int(tokens[i].group(1))
                i += 1
                if peek(7):
                    i += 1
                    if not peek(1):
                        raise ValueError("fraction missing denominator")
                    den = int(tokens[i].group(1))
                    i += 1
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif peek(2):  # variable, maybe with ^exponent
                name = tokens[i].group(2)
                if name not in ring.index:
                    raise ValueError(f"unknown variable {name!r} in {ring}")
                i += 1
                e = 1
                if peek(3):
                    i += 1
                    if not peek(1):
                        raise ValueError("missing exponent after ^")
                    e = int(tokens[i].group(1))
                    i += 1
                mono[ring.index[name]] += e
            else:
                raise ValueError(f"expected factor near token {i}")
            if peek(4):
                i += 1
                expect_factor = True
            else:
                expect_factor = False
        result = result + ring.monomial(tuple(mono), coeff)
    return result


def poly_arith(lhs: MultiPoly, rhs: MultiPoly, op: str) -> MultiPoly:
    """add | sub | mul on polynomials of one ring, exact and canonical."""
    if lhs.ring != rhs.ring:
        raise ValueError("ring mismatch")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")

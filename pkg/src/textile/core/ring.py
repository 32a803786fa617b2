"""
Exact arithmetic in Z[p, q, t, x^±1, y^±1] / <q^2 - (1-t)(1-p), qp - qt>.

Elements are kept in a unique normal form. Besides the two defining
relations the rewrite system needs their consequence

    (1-t)(1-p)(p-t) = q(qp - qt)

oriented as p^2 t -> p^2 - p + t - t^2 + p t^2. With it the three rules

    (i)   q p^a t^c -> q t^(a+c)                    q-degree >= 1
    (ii)  q^2       -> 1 - p - t + p t
    (iii) p^2 t     -> p^2 - p + t - t^2 + p t^2     q-free monomials

form a Groebner basis for lex order q > p > t, so the normal monomials
are p^a t^c (not both a >= 2 and c >= 1) and q t^c, times any x^d y^e.

Units are the monomials ±p^a q^b t^c with a, b, c of any sign. p, q, t
are not invertible here (q(p - t) = 0), so equality up to units is
decided by cross-multiplication: f * p^a- q^b- t^c- == ±g * p^a+ q^b+ t^c+.

Usage:
    f = parse_poly("p^2*x*y + p*q*y + q*x - 1")
    render_poly(f * Q)
    equals_mod_units(f, g, bound=4)
"""

import itertools
import logging
import re
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType

from textile.core.errors import InvalidBoundError, PolySyntaxError

logger = logging.getLogger(__name__)

# Exponent vector (e_p, e_q, e_t, e_x, e_y).
Exponents = tuple[int, int, int, int, int]
_VARS = ("p", "q", "t", "x", "y")
_ONE_EXP: Exponents = (0, 0, 0, 0, 0)


# ── Rewriting ────────────────────────────────────────────────

PQT = tuple[int, int, int]
# 1 - p - t + pt
_Q_SQUARED = (((0, 0), 1), ((1, 0), -1), ((0, 1), -1), ((1, 1), 1))
# p^2 - p + t - t^2 + pt^2
_P2T = (((2, 0), 1), ((1, 0), -1), ((0, 1), 1), ((0, 2), -1), ((1, 2), 1))


@lru_cache(maxsize=65536)
def _reduce(p: int, q: int, t: int, q_first: bool) -> tuple[tuple[PQT, int], ...]:
    """Normal form of the monomial p^p q^q t^t as ((p, q, t), coefficient) pairs."""
    if q >= 2 and (q_first or p == 0):
        acc: Counter[PQT] = Counter()
        for (dp, dt), sign in _Q_SQUARED:
            for mono, coef in _reduce(p + dp, q - 2, t + dt, q_first):
                acc[mono] += sign * coef
        return tuple((m, c) for m, c in sorted(acc.items()) if c)
    if q >= 1 and p >= 1:
        return _reduce(0, q, t + p, q_first)
    if q == 0 and p >= 2 and t >= 1:
        acc = Counter()
        for (dp, dt), sign in _P2T:
            for mono, coef in _reduce(p - 2 + dp, 0, t - 1 + dt, q_first):
                acc[mono] += sign * coef
        return tuple((m, c) for m, c in sorted(acc.items()) if c)
    return (((p, q, t), 1),)


def _normalize(raw: Iterable[tuple[Exponents, int]], q_first: bool = False) -> dict[Exponents, int]:
    acc: Counter[Exponents] = Counter()
    for (ep, eq, et, ex, ey), coef in raw:
        if not coef:
            continue
        if ep < 0 or eq < 0 or et < 0:
            raise ValueError(f"negative exponent on p, q or t: {(ep, eq, et)}")
        for (np_, nq, nt), c in _reduce(ep, eq, et, q_first):
            acc[(np_, nq, nt, ex, ey)] += coef * c
    return {mono: c for mono, c in acc.items() if c}


# ── Ring elements ────────────────────────────────────────────


class RingElement:
    """
    Immutable element of the quotient ring, always in normal form.

    Supports +, -, *, unary -, ** (non-negative int), == and hashing;
    ints are coerced to constants.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None) -> None:
        # Callers outside this module go through normal_form().
        self._terms = MappingProxyType(dict(terms or {}))
        self._hash: int | None = None

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @staticmethod
    def _coerce(other: object) -> "RingElement | None":
        if isinstance(other, RingElement):
            return other
        if isinstance(other, int):
            return ring_const(other)
        return None

    def __add__(self, other: object) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        acc = Counter(self._terms)
        acc.update(rhs._terms)
        return RingElement({m: c for m, c in acc.items() if c})

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "RingElement":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        raw = (
            (tuple(a + b for a, b in zip(ma, mb, strict=True)), ca * cb)
            for (ma, ca), (mb, cb) in itertools.product(self._terms.items(), rhs._terms.items())
        )
        return RingElement(_normalize(raw))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined in this ring")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"RingElement({render_poly(self)!r})"


def normal_form(raw: Mapping[Exponents, int] | Iterable[tuple[Exponents, int]],
                *, q_first: bool = False) -> RingElement:
    """
    Normal form of an arbitrary term map with e_p, e_q, e_t >= 0.

    `q_first` applies q^2 -> 1 - p - t + pt before qp -> qt where both
    match; the result does not depend on it.
    """
    items = raw.items() if isinstance(raw, Mapping) else raw
    return RingElement(_normalize(items, q_first))


def ring_monomial(p: int = 0, q: int = 0, t: int = 0, x: int = 0, y: int = 0,
                  coef: int = 1) -> RingElement:
    return normal_form({(p, q, t, x, y): coef})


def ring_const(value: int) -> RingElement:
    return RingElement({_ONE_EXP: value} if value else {})


def ring_var(name: str, exponent: int = 1) -> RingElement:
    """One of p, q, t, x, y raised to `exponent` (negative only for x, y)."""
    if name not in _VARS:
        raise ValueError(f"unknown variable {name!r}")
    return ring_monomial(**{name: exponent})


def add(f: RingElement, g: RingElement) -> RingElement:
    return f + g


def mul(f: RingElement, g: RingElement) -> RingElement:
    return f * g


def neg(f: RingElement) -> RingElement:
    return -f


ZERO = RingElement()
ONE = ring_const(1)
P = ring_monomial(p=1)
Q = ring_monomial(q=1)
T = ring_monomial(t=1)
X = ring_monomial(x=1)
Y = ring_monomial(y=1)


# ── Equality up to units ─────────────────────────────────────


@dataclass(frozen=True, slots=True)
class Unit:
    """The unit sign * p^a q^b t^c."""
    sign: int
    a: int
    b: int
    c: int

    def __str__(self) -> str:
        parts = [f"{v}^{e}" if e != 1 else v for v, e in zip("pqt", (self.a, self.b, self.c),
                                                                strict=True) if e]
        body = "*".join(parts) or "1"
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True, slots=True)
class UnitMatch:
    equal: bool
    unit: Unit | None = None

    def __bool__(self) -> bool:
        return self.equal


def _exponent_order(bound: int) -> list[tuple[int, int, int]]:
    box = range(-bound, bound + 1)
    return sorted(itertools.product(box, box, box),
                  key=lambda e: (sum(map(abs, e)), [abs(v) for v in e], [-v for v in e]))


def equals_mod_units(f: RingElement, g: RingElement, bound: int = 4) -> UnitMatch:
    """
    Search a unit u = ±p^a q^b t^c with |a|, |b|, |c| <= bound and f = u * g.

    Negative exponents move to the other side. The witness found first has
    the smallest total degree, with sign + before -.
    """
    if bound < 1:
        raise InvalidBoundError(bound)
    lhs_cache: dict[PQT, RingElement] = {}
    rhs_cache: dict[PQT, RingElement] = {}

    def side(cache: dict[PQT, RingElement], h: RingElement, e: PQT) -> RingElement:
        if e not in cache:
            cache[e] = h * ring_monomial(*e)
        return cache[e]

    for a, b, c in _exponent_order(bound):
        neg_part = (max(-a, 0), max(-b, 0), max(-c, 0))
        pos_part = (max(a, 0), max(b, 0), max(c, 0))
        lhs = side(lhs_cache, f, neg_part)
        rhs = side(rhs_cache, g, pos_part)
        for sign in (1, -1):
            if lhs == (rhs if sign > 0 else -rhs):
                unit = Unit(sign, a, b, c)
                logger.debug("unit witness %s", unit)
                return UnitMatch(True, unit)
    return UnitMatch(False)


def reduce_sign(f: RingElement) -> RingElement:
    """Multiply by -1 when the leading rendered term is negative."""
    ordered = _ordered_terms(f)
    if ordered and ordered[0][1] < 0:
        return -f
    return f


# ── Text form ────────────────────────────────────────────────


def _render_key(mono: Exponents) -> tuple[int, ...]:
    ep, eq, et, ex, ey = mono
    return (ex, ey, eq, ep, et)


def _ordered_terms(f: RingElement) -> list[tuple[Exponents, int]]:
    return sorted(f.terms.items(), key=lambda item: _render_key(item[0]), reverse=True)


def _render_monomial(mono: Exponents) -> str:
    factors = []
    for var, e in zip(_VARS, mono, strict=True):
        if e == 1:
            factors.append(var)
        elif e:
            factors.append(f"{var}^{e}")
    return "*".join(factors)


def render_poly(f: RingElement) -> str:
    """Canonical text: descending (e_x, e_y, e_q, e_p, e_t), explicit '*', no exponent 1."""
    ordered = _ordered_terms(f)
    if not ordered:
        return "0"
    out = []
    for k, (mono, coef) in enumerate(ordered):
        body = _render_monomial(mono)
        size = abs(coef)
        if not body:
            text = str(size)
        elif size == 1:
            text = body
        else:
            text = f"{size}*{body}"
        if k == 0:
            out.append(f"-{text}" if coef < 0 else text)
        else:
            out.append(f" - {text}" if coef < 0 else f" + {text}")
    return "".join(out)


_POLY_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<var>[pqtxy])|(?P<op>[-+*^]))")


def parse_poly(text: str) -> RingElement:
    """
    Parse terms joined by '+'/'-'; a term is [INT]['*'] factor ('*' factor)* or INT,
    a factor is var ['^' SIGNEDINT]. Only x and y take negative exponents.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _POLY_TOKEN.match(text, pos)
        if match is None:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup or ""
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))

    index = 0

    def peek() -> tuple[str, str, int]:
        return tokens[index]

    def take() -> tuple[str, str, int]:
        nonlocal index
        tok = tokens[index]
        index += 1
        return tok

    def signed_int() -> int:
        kind, value, at = take()
        sign = 1
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            kind, value, at = take()
        if kind != "int":
            raise PolySyntaxError("expected an integer exponent", at)
        return sign * int(value)

    def factor(exps: list[int]) -> None:
        kind, value, at = take()
        if kind != "var":
            raise PolySyntaxError("expected a variable", at)
        slot = _VARS.index(value)
        power = 1
        if peek()[:2] == ("op", "^"):
            take()
            power_at = peek()[2]
            power = signed_int()
            if power < 0 and value in "pqt":
                raise PolySyntaxError(f"negative exponent on {value}", power_at)
        exps[slot] += power

    def term() -> tuple[Exponents, int]:
        exps = [0, 0, 0, 0, 0]
        coef = 1
        kind, value, at = peek()
        if kind == "int":
            take()
            coef = int(value)
            if peek()[:2] == ("op", "*"):
                take()
                factor(exps)
            elif peek()[0] == "var":
                factor(exps)
            else:
                return (tuple(exps), coef)
        else:
            factor(exps)
        while peek()[:2] == ("op", "*"):
            take()
            factor(exps)
        return (tuple(exps), coef)

    raw: list[tuple[Exponents, int]] = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        mono, coef = term()
        raw.append((mono, sign * coef))
        kind, value, at = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            take()
            sign = -1 if value == "-" else 1
            continue
        raise PolySyntaxError(f"unexpected {value!r}", at)
    return normal_form(raw)

"""Exact arithmetic in Q(i)[c, s]/(c^2 + s^2 - 1), extended by square roots.

Every element is stored in a unique normal form: a finite map from
``(cos_power, sin_power, radicand)`` to a nonzero Gaussian rational, where
``sin_power`` is 0 or 1 (``s^2`` is rewritten as ``1 - c^2``) and ``radicand``
is a square-free positive integer (1 meaning "no root").  Equality of normal
forms is equality in the ring.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Rational = Fraction

Key = tuple[int, int, int]
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "GaussRational",
    "TrigScalar",
    "ScalarSyntaxError",
    "NotAUnitError",
    "ZERO",
    "ONE",
    "I",
    "COS",
    "SIN",
    "SQRT2",
    "sqrt",
    "ts_add",
    "ts_mul",
    "ts_eval",
    "ts_parse",
    "ts_format",
    "ts_latex",
    "exact_angle",
]


class ScalarSyntaxError(ValueError):
    """Malformed scalar text; ``position`` is the 0-based offending offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class NotAUnitError(ArithmeticError):
    pass


class GaussRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> GaussRational:
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRational(a * c)
        return GaussRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * GaussRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRational(self.re / n, -self.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return _format_coeff_alone(self)


def _squarefree(n: int) -> tuple[int, int]:
    """Split ``n = m^2 * r`` with ``r`` square-free; return ``(r, m)``."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    m, r, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            r *= p
        p += 1
    return r * n, m


def _radical_product(r1: int, r2: int) -> tuple[int, int]:
    # sqrt(r1)*sqrt(r2) = g*sqrt(r1*r2/g^2) for square-free r1, r2
    if r1 == 1:
        return r2, 1
    if r2 == 1:
        return r1, 1
    g = math.gcd(r1, r2)
    return (r1 // g) * (r2 // g), g


def _accumulate(out: dict, key: Key, coeff: GaussRational) -> None:
    prev = out.get(key)
    out[key] = coeff if prev is None else prev + coeff


class TrigScalar:
    """An element of the ring in canonical normal form; immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, object] | None = None):
        out: dict[Key, GaussRational] = {}
        for (k, e, r), coeff in (terms or {}).items():
            coeff = GaussRational.coerce(coeff)
            if k < 0 or e < 0:
                raise ValueError(f"negative exponent in term key {(k, e, r)}")
            r, m = _squarefree(r)
            if m != 1:
                coeff = coeff * m
            # s^e = s^(e mod 2) * (1 - c^2)^(e // 2)
            half, e = divmod(e, 2)
            for j in range(half + 1):
                binom = math.comb(half, j) * (-1) ** j
                _accumulate(out, (k + 2 * j, e, r), coeff * binom)
        self._terms = {key: v for key, v in out.items() if v}
        self._hash = None

    @classmethod
    def _normal(cls, terms: dict) -> TrigScalar:
        obj = cls.__new__(cls)
        obj._terms = {key: v for key, v in terms.items() if v}
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> TrigScalar:
        if isinstance(value, TrigScalar):
            return value
        if isinstance(value, str):
            return ts_parse(value)
        g = GaussRational.coerce(value)
        return cls._normal({(0, 0, 1): g})

    @property
    def terms(self) -> Mapping[Key, GaussRational]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Key, GaussRational]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))

    # ring operations

    def __add__(self, other):
        try:
            other = TrigScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for key, v in other._terms.items():
            _accumulate(out, key, v)
        return TrigScalar._normal(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigScalar._normal({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        try:
            other = TrigScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return TrigScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = TrigScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Key, GaussRational] = {}
        for (k1, e1, r1), a in self._terms.items():
            for (k2, e2, r2), b in other._terms.items():
                coeff = a * b
                r, m = _radical_product(r1, r2)
                if m != 1:
                    coeff = coeff * m
                k = k1 + k2
                if e1 and e2:
                    _accumulate(out, (k, 0, r), coeff)
                    _accumulate(out, (k + 2, 0, r), -coeff)
                else:
                    _accumulate(out, (k, e1 + e2, r), coeff)
        return TrigScalar._normal(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return self * TrigScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return TrigScalar.coerce(other) * self.inverse()

    # structure

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        """True when free of cos and sin."""
        return all(k == 0 and e == 0 for k, e, _ in self._terms)

    def constant_value(self) -> GaussRational | None:
        if not self._terms:
            return GaussRational(0)
        if set(self._terms) == {(0, 0, 1)}:
            return self._terms[(0, 0, 1)]
        return None

    def conjugate(self) -> TrigScalar:
        """Complex conjugation; fixes cos, sin and the real roots."""
        return TrigScalar._normal({k: v.conjugate() for k, v in self._terms.items()})

    def _flip_root(self, p: int) -> TrigScalar:
        return TrigScalar._normal(
            {(k, e, r): (-v if r % p == 0 else v) for (k, e, r), v in self._terms.items()}
        )

    def inverse(self) -> TrigScalar:
        """Inverse of a unit.  Only nonzero cos/sin-free elements are inverted."""
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        if not self.is_constant():
            raise NotAUnitError(f"{ts_format(self)} is not a recognised unit of the ring")
        # clear roots one prime at a time by multiplying with the Galois conjugate
        numerator, current = ONE, self
        while True:
            radicands = [r for (_, _, r) in current._terms if r != 1]
            if not radicands:
                break
            p = _smallest_prime_factor(radicands[0])
            conj = current._flip_root(p)
            numerator = numerator * conj
            current = current * conj
        value = current.constant_value()
        return numerator * TrigScalar._normal({(0, 0, 1): value.inverse()})

    def substitute(self, cos=None, sin=None) -> TrigScalar:
        """Ring map sending c -> ``cos`` and s -> ``sin`` (both optional)."""
        c_img = COS if cos is None else TrigScalar.coerce(cos)
        s_img = SIN if sin is None else TrigScalar.coerce(sin)
        result = ZERO
        for (k, e, r), v in self._terms.items():
            term = TrigScalar._normal({(0, 0, r): v})
            result = result + term * (c_img**k) * (s_img**e)
        return result

    def __eq__(self, other):
        try:
            other = TrigScalar.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"TrigScalar({ts_format(self)!r})"

    def __str__(self):
        return ts_format(self)

    # serialisation

    def evaluate(self, theta: float) -> complex:
        c, s = math.cos(theta), math.sin(theta)
        total = 0j
        for (k, e, r), v in self._terms.items():
            total += complex(v) * (c**k) * (s**e) * math.sqrt(r)
        return total

    def to_json(self) -> list[dict]:
        out = []
        for (k, e, r), v in self.sorted_terms():
            item = {"re": str(v.re), "im": str(v.im), "cos": k, "sin": e, "sqrt2": int(r % 2 == 0)}
            for p in _prime_factors(r):
                if p != 2:
                    item[f"sqrt{p}"] = 1
            out.append(item)
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> TrigScalar:
        terms: dict[Key, GaussRational] = {}
        for item in data:
            radicand = 1
            for name, flag in item.items():
                m = re.fullmatch(r"sqrt(\d+)", name)
                if m and flag:
                    radicand *= int(m.group(1))
            coeff = GaussRational(Fraction(item.get("re", "0")), Fraction(item.get("im", "0")))
            key = (int(item.get("cos", 0)), int(item.get("sin", 0)), radicand)
            # route through the normalising constructor, summing duplicates
            piece = TrigScalar({key: coeff})
            for k2, v2 in piece._terms.items():
                _accumulate(terms, k2, v2)
        return cls._normal(terms)


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def _prime_factors(n: int) -> list[int]:
    out = []
    while n > 1:
        p = _smallest_prime_factor(n)
        out.append(p)
        while n % p == 0:
            n //= p
    return out


ZERO = TrigScalar._normal({})
ONE = TrigScalar._normal({(0, 0, 1): GaussRational(1)})
I = TrigScalar._normal({(0, 0, 1): GaussRational(0, 1)})
COS = TrigScalar._normal({(1, 0, 1): GaussRational(1)})
SIN = TrigScalar._normal({(0, 1, 1): GaussRational(1)})


def sqrt(n: int) -> TrigScalar:
    return TrigScalar({(0, 0, n): 1})


SQRT2 = sqrt(2)


def ts_add(a, b) -> TrigScalar:
    return TrigScalar.coerce(a) + b


def ts_mul(a, b) -> TrigScalar:
    return TrigScalar.coerce(a) * b


def ts_eval(a, theta: float) -> complex:
    return TrigScalar.coerce(a).evaluate(theta)


# text format

def _format_coeff_alone(c: GaussRational) -> str:
    if not c.im:
        return str(c.re)
    if not c.re:
        return _imag_str(c.im)
    return f"({c.re}{'+' if c.im > 0 else '-'}{abs(c.im)}i)"


def _imag_str(im: Fraction) -> str:
    sign = "-" if im < 0 else ""
    mag = abs(im)
    if mag == 1:
        return f"{sign}i"
    if mag.denominator == 1:
        return f"{sign}{mag}i"
    return f"{sign}({mag})*i"


def _atoms(key: Key) -> str:
    k, e, r = key
    parts = []
    if k == 1:
        parts.append("cos")
    elif k > 1:
        parts.append(f"cos^{k}")
    if e:
        parts.append("sin")
    if r != 1:
        parts.append(f"sqrt{r}")
    return "*".join(parts)


def _format_term(key: Key, c: GaussRational) -> str:
    atoms = _atoms(key)
    if not atoms:
        return _format_coeff_alone(c)
    if not c.im:
        if c.re == 1:
            return atoms
        if c.re == -1:
            return f"-{atoms}"
        sign = "-" if c.re < 0 else ""
        mag = abs(c.re)
        head = f"{mag}" if mag.denominator == 1 else f"({mag})"
        return f"{sign}{head}*{atoms}"
    return f"{_format_coeff_alone(c)}*{atoms}"


def ts_format(a: TrigScalar) -> str:
    a = TrigScalar.coerce(a)
    if not a._terms:
        return "0"
    out = ""
    for key, c in a.sorted_terms():
        piece = _format_term(key, c)
        if out and not piece.startswith("-"):
            out += "+"
        out += piece
    return out


def _latex_coeff(c: GaussRational) -> tuple[str, str]:
    """Return (sign, magnitude) strings; magnitude '' means unit."""

    def frac(q: Fraction) -> str:
        if q.denominator == 1:
            return str(q.numerator)
        return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"

    if not c.im:
        mag = abs(c.re)
        return ("-" if c.re < 0 else "+"), ("" if mag == 1 else frac(mag))
    if not c.re:
        mag = abs(c.im)
        return ("-" if c.im < 0 else "+"), ("i" if mag == 1 else frac(mag) + "i")
    return "+", rf"\left({frac(c.re)}{'+' if c.im > 0 else '-'}{frac(abs(c.im))}i\right)"


def ts_latex(a: TrigScalar) -> str:
    a = TrigScalar.coerce(a)
    if not a._terms:
        return "0"
    out = []
    for (k, e, r), c in a.sorted_terms():
        sign, mag = _latex_coeff(c)
        atoms = ""
        if r != 1:
            atoms += rf"\sqrt{{{r}}}"
        if e:
            atoms += r"\sin\theta"
        if k:
            atoms += r"\cos\theta" if k == 1 else rf"\cos^{{{k}}}\theta"
        body = mag + atoms if (mag or atoms) else "1"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# parser: a superset of the documented grammar (adds parentheses, '^' on any
# factor and products of atoms in any order)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<sqrt>sqrt\d+)|(?P<name>cos|sin|i)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ScalarSyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str):
        raise ScalarSyntaxError(msg, self.text, self.peek()[2])

    def parse(self) -> TrigScalar:
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self) -> TrigScalar:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> TrigScalar:
        value = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> TrigScalar:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "num" or "/" in val or val.endswith("i"):
                self.error("expected a non-negative integer exponent")
            self.take()
            base = base ** int(val)
        return base

    def primary(self) -> TrigScalar:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            imag = val.endswith("i")
            q = Fraction(val[:-1] if imag else val)
            return TrigScalar.coerce(GaussRational(0, q) if imag else GaussRational(q))
        if kind == "sqrt":
            self.take()
            return sqrt(int(val[4:]))
        if kind == "name":
            self.take()
            return {"cos": COS, "sin": SIN, "i": I}[val]
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        self.error("expected a number, atom or '('")


def ts_parse(text: str) -> TrigScalar:
    if not isinstance(text, str):
        raise TypeError("ts_parse expects a string")
    if text.strip() == "":
        raise ScalarSyntaxError("empty scalar", text, 0)
    return _Parser(text).parse()


# exact angles

_FIRST_QUADRANT_COS = {
    0: ONE,
    30: sqrt(3) * Fraction(1, 2),
    45: SQRT2 * Fraction(1, 2),
    60: TrigScalar.coerce(Fraction(1, 2)),
    90: ZERO,
}


def _cos_degrees(deg: int) -> TrigScalar:
    deg %= 360
    if deg <= 90:
        return _FIRST_QUADRANT_COS[deg]
    if deg <= 180:
        return -_FIRST_QUADRANT_COS[180 - deg]
    if deg <= 270:
        return -_FIRST_QUADRANT_COS[deg - 180]
    return _FIRST_QUADRANT_COS[360 - deg]


def exact_angle(multiple_of_pi: Fraction) -> tuple[TrigScalar, TrigScalar]:
    """Exact ``(cos, sin)`` of ``multiple_of_pi * pi``.

    Supported when the reduced denominator divides 4 or 6; anything else has
    no representation with the roots used here and raises ``ValueError``.
    """
    q = Fraction(multiple_of_pi)
    deg = q * 180
    if deg.denominator != 1 or (int(deg) % 30 and int(deg) % 45):
        raise ValueError(
            f"cos/sin of {q}*pi are not representable exactly; use symbolic mode "
            "and numeric evaluation instead"
        )
    d = int(deg)
    return _cos_degrees(d), _cos_degrees(90 - d)


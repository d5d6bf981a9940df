"""Exact rational functions over the Gaussian rationals on a coordinate chart.

Polynomials are sympy sparse ``PolyElement`` objects over ``QQ_I`` with the
graded lexicographic order.  :class:`Scalar` keeps every value in a canonical
form: numerator and denominator coprime, denominator monic with respect to
grlex.  Two scalars are equal iff their normal forms are identical.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import (ChartMismatch, DivisionByZero, PoleAtPoint,
                     UnknownCoordinate, ZeroDenominator)

RESERVED_NAMES = frozenset({"d", "i"})


@lru_cache(maxsize=None)
def _rings(coords: tuple[str, ...]) -> tuple[PolyRing, PolyRing]:
    gaussian = PolyRing(coords, QQ_I, grlex)
    rational = PolyRing(coords, QQ, grlex)
    return gaussian, rational


@dataclass(frozen=True)
class Chart:
    """An ordered list of coordinate names; the local model of the manifold."""

    coords: tuple[str, ...]
    name: str = field(default="M", compare=False)

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        for c in coords:
            if not c.isidentifier() or c in RESERVED_NAMES:
                raise ValueError(f"invalid coordinate name {c!r}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def ring(self) -> PolyRing:
        return _rings(self.coords)[0]

    def index(self, coord: str) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise UnknownCoordinate(f"{coord!r} is not a coordinate of {self.coords}") from None

    # convenience constructors
    def const(self, value) -> "Scalar":
        return Scalar.const(self, value)

    def coord(self, name: str) -> "Scalar":
        return Scalar(self, self.ring.gens[self.index(name)])

    def zero(self) -> "Scalar":
        return Scalar(self, self.ring.zero)

    def one(self) -> "Scalar":
        return Scalar(self, self.ring.one)

    def scalar(self, text: str) -> "Scalar":
        from .dsl import parse_expression
        return _as_scalar(self, parse_expression(text, self))

    def form(self, text: str):
        from .dsl import parse_expression
        from .extcalc import DiffForm
        value = parse_expression(text, self)
        return value if isinstance(value, DiffForm) else DiffForm.from_scalar(_as_scalar(self, value))

    def vector(self, text: str, degree: int = 1):
        from .dsl import coerce_multivector, parse_expression
        return coerce_multivector(parse_expression(text, self), self, degree)


def _as_scalar(chart, value):
    if isinstance(value, Scalar):
        return value
    raise TypeError(f"expected a scalar expression, got {type(value).__name__}")


def to_gaussian(value):
    """Convert int / Fraction / complex-like input into a ``QQ_I`` element."""
    if isinstance(value, QQ_I.dtype):
        return value
    if isinstance(value, Fraction):
        return QQ_I(QQ(value.numerator, value.denominator), 0)
    if isinstance(value, complex):
        raise TypeError("inexact complex input; use a pair of Fractions")
    if isinstance(value, tuple) and len(value) == 2:
        re, im = (Fraction(v) for v in value)
        return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))
    return QQ_I.convert(value)


def _is_real(p: PolyElement) -> bool:
    return all(c.y == 0 for c in p.values())


def _cancel(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    ring = num.ring
    if _is_real(num) and _is_real(den):
        # gcd over Q agrees with gcd over Q(i) for real polynomials, and is much faster
        rational = _rings(tuple(str(s) for s in ring.symbols))[1]
        n = rational.from_dict({m: c.x for m, c in num.items()})
        d = rational.from_dict({m: c.x for m, c in den.items()})
        n, d = n.cancel(d)
        num = ring.from_dict({m: QQ_I(c, 0) for m, c in n.items()})
        den = ring.from_dict({m: QQ_I(c, 0) for m, c in d.items()})
        return num, den
    return num.cancel(den)


def _to_rational(p: PolyElement) -> PolyElement:
    rational = _rings(tuple(str(s) for s in p.ring.symbols))[1]
    return rational.from_dict({m: c.x for m, c in p.items()})


def _gcd(a: PolyElement, b: PolyElement) -> PolyElement:
    """Monic gcd, with the same real fast path as ``_cancel``."""
    if a.is_ground and a or b.is_ground and b:
        return a.ring.one
    if _is_real(a) and _is_real(b):
        g = _to_rational(a).gcd(_to_rational(b))
        g = a.ring.from_dict({m: QQ_I(c, 0) for m, c in g.items()})
    else:
        g = a.gcd(b)
    if g.LC != QQ_I.one:
        g = g.mul_ground(QQ_I.one / g.LC)
    return g


def _monic(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    lc = den.LC
    if lc != QQ_I.one:
        inv = QQ_I.one / lc
        return num.mul_ground(inv), den.mul_ground(inv)
    return num, den


def _normal_form(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    ring = num.ring
    if not den:
        raise ZeroDenominator("denominator is identically zero")
    if not num:
        return ring.zero, ring.one
    if not den.is_ground:
        num, den = _cancel(num, den)
    lc = den.LC
    if lc != QQ_I.one:
        inv = QQ_I.one / lc
        num = num.mul_ground(inv)
        den = den.mul_ground(inv)
    return num, den


def _poly_total_degree(p: PolyElement) -> int:
    return max((sum(m) for m in p.keys()), default=0)


class Scalar:
    """Rational function ``num/den`` in normal form; immutable."""

    __slots__ = ("chart", "num", "den", "_hash")

    def __init__(self, chart: Chart, num: PolyElement, den: PolyElement | None = None,
                 *, normalized: bool = False):
        ring = chart.ring
        if den is None:
            den = ring.one
            normalized = True
        if not normalized:
            num, den = _normal_form(num, den)
        self.chart = chart
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, chart: Chart, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Fraction):
            return cls(chart, chart.ring(QQ_I(QQ(value.numerator, value.denominator), 0)),
                       chart.ring.one)
        return cls(chart, chart.ring(to_gaussian(value)))

    @classmethod
    def fraction(cls, chart: Chart, num: PolyElement, den: PolyElement) -> "Scalar":
        """Normalize a raw fraction of polynomials."""
        return cls(chart, num, den)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_real(self) -> bool:
        return _is_real(self.num) and _is_real(self.den)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.LC if self.num else QQ_I.zero

    def complexity(self) -> tuple[int, int]:
        """Pivot ranking key: total degree then number of terms."""
        return (_poly_total_degree(self.num) + _poly_total_degree(self.den),
                len(self.num) + len(self.den))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.chart != self.chart:
                raise ChartMismatch(f"{self.chart.coords} vs {other.chart.coords}")
            return other
        if isinstance(other, (int, Fraction, QQ_I.dtype)):
            return Scalar.const(self.chart, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        ring = self.chart.ring
        d1, d2 = self.den, other.den
        if d1 == d2:
            if d1 == ring.one:
                return Scalar(self.chart, self.num + other.num, d1, normalized=True)
            return Scalar(self.chart, self.num + other.num, d1)
        # a/d + b: gcd(a + b d, d) = gcd(a, d) = 1, nothing to cancel
        if d2 == ring.one:
            return Scalar(self.chart, self.num + other.num * d1, d1, normalized=True)
        if d1 == ring.one:
            return Scalar(self.chart, self.num * d2 + other.num, d2, normalized=True)
        g = _gcd(d1, d2)
        if g == ring.one:
            # coprime monic denominators: the sum is already reduced
            return Scalar(self.chart, self.num * d2 + other.num * d1, d1 * d2, normalized=True)
        q1, q2 = d1.exquo(g), d2.exquo(g)
        return Scalar(self.chart, self.num * q2 + other.num * q1, d1 * q2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.chart, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return Scalar(self.chart, self.chart.ring.zero)
        a, b, c, d = self.num, self.den, other.num, other.den
        one = self.chart.ring.one
        # cross-cancel only: a/b and c/d are already reduced
        if d != one:
            g = _gcd(a, d)
            if g != one:
                a, d = a.exquo(g), d.exquo(g)
        if b != one:
            g = _gcd(c, b)
            if g != one:
                c, b = c.exquo(g), b.exquo(g)
        num, den = _monic(a * c, b * d)
        return Scalar(self.chart, num, den, normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("inverse of the zero scalar")
        return Scalar(self.chart, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.chart, self.num ** n, self.den ** n, normalized=True)

    def conjugate(self) -> "Scalar":
        ring = self.chart.ring

        def conj(p):
            return ring.from_dict({m: QQ_I(c.x, -c.y) for m, c in p.items()})

        return Scalar(self.chart, conj(self.num), conj(self.den))

    # -- calculus -----------------------------------------------------
    def diff(self, coord: str | int) -> "Scalar":
        idx = coord if isinstance(coord, int) else self.chart.index(coord)
        if not 0 <= idx < self.chart.dim:
            raise UnknownCoordinate(f"coordinate index {idx} out of range")
        x = self.chart.ring.gens[idx]
        dn = self.num.diff(x)
        if self.den.is_ground:
            return Scalar(self.chart, dn, self.den)
        dd = self.den.diff(x)
        return Scalar(self.chart, dn * self.den - self.num * dd, self.den ** 2)

    def eval(self, point: Sequence):
        """Evaluate exactly at ``point``; returns a ``QQ_I`` element."""
        if len(point) != self.chart.dim:
            raise ValueError(f"point has {len(point)} coordinates, chart has {self.chart.dim}")
        values = [to_gaussian(v) for v in point]
        den = self.den(*values) if self.chart.dim > 1 else self.den(values[0])
        if den == QQ_I.zero:
            raise PoleAtPoint(f"{self} has a pole at {tuple(point)}")
        num = self.num(*values) if self.chart.dim > 1 else self.num(values[0])
        return num / den

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.chart == other.chart and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == Scalar.const(self.chart, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart.coords, self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


def normalize(chart: Chart, num: PolyElement, den: PolyElement) -> Scalar:
    """Canonical form of the raw fraction ``num/den``."""
    return Scalar(chart, num, den)


def scalar_eval(a: Scalar, point: Sequence):
    return a.eval(point)


# -- printing -------------------------------------------------------------

def _format_rational(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_coefficient(c) -> tuple[int, str]:
    """Return (sign, text) for a Gaussian rational; text is the magnitude part."""
    re, im = c.x, c.y
    if im == 0:
        return (-1 if re < 0 else 1), _format_rational(abs(re))
    if re == 0:
        mag = _format_rational(abs(im))
        return (-1 if im < 0 else 1), ("i" if mag == "1" else f"{mag}*i")
    imag = _format_rational(abs(im))
    imag = "i" if imag == "1" else f"{imag}*i"
    op = "-" if im < 0 else "+"
    return 1, f"({_format_rational(re)} {op} {imag})"


def _format_monomial(symbols, monom) -> str:
    parts = []
    for s, e in zip(symbols, monom):
        if e == 1:
            parts.append(s)
        elif e > 1:
            parts.append(f"{s}^{e}")
    return "*".join(parts)


def format_poly(p: PolyElement, symbols: Sequence[str]) -> str:
    if not p:
        return "0"
    out = []
    for monom, coeff in p.terms(order=grlex):
        sign, mag = format_coefficient(coeff)
        mono = _format_monomial(symbols, monom)
        if mono:
            term = mono if mag == "1" else f"{mag}*{mono}"
        else:
            term = mag
        if not out:
            out.append(term if sign > 0 else f"-{term}")
        else:
            out.append(f" + {term}" if sign > 0 else f" - {term}")
    return "".join(out)


def _is_atom(p: PolyElement) -> bool:
    terms = p.terms()
    if len(terms) != 1:
        return False
    monom, coeff = terms[0]
    if coeff.y != 0:
        return False
    return (coeff == QQ_I.one and sum(1 for e in monom if e) == 1) or \
        (sum(monom) == 0 and coeff.x > 0 and coeff.x.denominator == 1)


def format_scalar(a: Scalar) -> str:
    symbols = a.chart.coords
    num = format_poly(a.num, symbols)
    if a.den == a.chart.ring.one:
        return num
    if len(a.num) > 1:
        num = f"({num})"
    den = format_poly(a.den, symbols)
    if not _is_atom(a.den):
        den = f"({den})"
    return f"{num}/{den}"


def scalar_sum(items: Iterable[Scalar], chart: Chart) -> Scalar:
    total = chart.zero()
    for s in items:
        total = total + s
    return total

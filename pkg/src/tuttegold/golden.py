"""Exact arithmetic in Q(sqrt 5) on the basis {1, phi}, integer polynomials,
and rational-endpoint intervals for Beraha numbers."""
from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "GoldenNum", "PHI", "ONE", "ZERO", "golden_sign", "as_golden",
    "UPoly", "BivarPoly", "RealInterval", "beraha", "certified_compare",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class GoldenNum:
    """a + b*phi with rational a, b and phi**2 == phi + 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNum is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GoldenNum):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return GoldenNum(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GoldenNum(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNum(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GoldenNum(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return GoldenNum(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm (a + b phi)(a + b phi'), phi' = 1 - phi."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def conjugate(self) -> GoldenNum:
        """Galois conjugate, sending phi to -1/phi."""
        return GoldenNum(self.a + self.b, -self.b)

    def inverse(self) -> GoldenNum:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GoldenNum division by zero")
        c = self.conjugate()
        return GoldenNum(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        return golden_sign(self)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * 1.6180339887498949

    def to_mpf(self, prec: int = 128):
        with mpmath.workprec(prec):
            phi = (1 + mpmath.sqrt(5)) / 2
            return mpmath.mpf(self.a.numerator) / self.a.denominator + \
                mpmath.mpf(self.b.numerator) / self.b.denominator * phi

    def __str__(self):
        return f"{self.a} + {self.b}*phi"

    def __repr__(self):
        return f"GoldenNum({self.a!s}, {self.b!s})"

    def __reduce__(self):
        return (GoldenNum, (self.a, self.b))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def is_rational(self) -> bool:
        return self.b == 0


ZERO = GoldenNum(0, 0)
ONE = GoldenNum(1, 0)
PHI = GoldenNum(0, 1)


def as_golden(x) -> GoldenNum:
    if isinstance(x, GoldenNum):
        return x
    return GoldenNum(x, 0)


def golden_sign(x) -> int:
    """Exact sign of a + b*phi under phi = (1 + sqrt 5)/2.

    Writing the value as p + q*sqrt5 with p = a + b/2, q = b/2, the
    opposite-sign case is settled by the norm a^2 + ab - b^2 = p^2 - 5q^2.
    """
    x = as_golden(x)
    a, b = x.a, x.b
    if b == 0:
        return (a > 0) - (a < 0)
    p = a + b / 2
    sp = (p > 0) - (p < 0)
    sq = 1 if b > 0 else -1
    if sp == 0 or sp == sq:
        return sq
    n = x.norm()
    sn = (n > 0) - (n < 0)
    return sn if sp > 0 else -sn


class UPoly:
    """Univariate integer polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        if isinstance(other, int):
            other = UPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = UPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = UPoly((other,))
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, GoldenNum, RealInterval."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_by_x(self):
        if self.coeffs and self.coeffs[0] != 0:
            raise ValueError("polynomial not divisible by x")
        return UPoly(self.coeffs[1:])

    def __repr__(self):
        return f"UPoly({list(self.coeffs)})"


class BivarPoly:
    """Integer polynomial in x, y as {(i, j): coefficient}, zeros never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {k: v for k, v in (terms or {}).items() if v}
        object.__setattr__(self, "terms", t)

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1):
        return cls({(i, j): c})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BivarPoly(t)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivarPoly({k: v * other for k, v in self.terms.items()})
        t = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + a * b
        return BivarPoly(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, x, y):
        """Evaluate by Horner in y inside Horner in x."""
        if not self.terms:
            return 0
        max_i = max(i for i, _ in self.terms)
        rows = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, {})[j] = c
        acc = 0
        for i in range(max_i, -1, -1):
            row = rows.get(i, {})
            inner = 0
            if row:
                for j in range(max(row), -1, -1):
                    inner = inner * y + row.get(j, 0)
            acc = acc * x + inner
        return acc

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], kv[0]))
        return " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in items) or "0"


class RealInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Arithmetic on rational endpoints is exact, so enclosure is automatic.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _frac(lo)
        hi = lo if hi is None else _frac(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RealInterval is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, RealInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return RealInterval(other)
        if isinstance(other, GoldenNum):
            return golden_interval(other, 200)
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RealInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RealInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealInterval(min(p), max(p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return RealInterval(1)
        if k % 2 == 1 or self.lo >= 0:
            lo, hi = self.lo ** k, self.hi ** k
            return RealInterval(min(lo, hi), max(lo, hi))
        if self.hi <= 0:
            return RealInterval(self.hi ** k, self.lo ** k)
        return RealInterval(0, max(self.lo ** k, self.hi ** k))

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealInterval(0, max(-self.lo, self.hi))

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"RealInterval({float(self.lo)!r}, {float(self.hi)!r})"


def _iv_bounds(v) -> tuple:
    """Exact rational endpoints of an mpmath.iv interval.

    The raw endpoint tuples are read directly; converting through
    mpmath.mpf would round to the global working precision.
    """
    out = []
    for raw in v._mpi_:
        man, exp = mpmath.libmp.to_man_exp(raw)
        out.append(Fraction(int(man)) * Fraction(2) ** int(exp))
    return tuple(out)


@contextmanager
def _iv_prec(bits: int):
    old = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = old


def golden_interval(x: GoldenNum, bits: int = 128) -> RealInterval:
    """Rational enclosure of a + b*phi of width below 2**-bits."""
    x = as_golden(x)
    if x.b == 0:
        return RealInterval(x.a)
    with _iv_prec(bits + 16 + abs(x.b).numerator.bit_length()):
        phi = (1 + mpmath.iv.sqrt(5)) / 2
        v = mpmath.iv.mpf(x.a.numerator) / x.a.denominator + \
            mpmath.iv.mpf(x.b.numerator) / x.b.denominator * phi
        return RealInterval(*_iv_bounds(v))


_BERAHA_EXACT = {
    1: GoldenNum(0), 2: GoldenNum(1), 3: GoldenNum(2), 4: GoldenNum(1, 1),
    5: GoldenNum(3), 9: GoldenNum(2, 1),
}


def beraha(n: int, bits: int = 128):
    """B_n = 2 + 2cos(2 pi/(n+1)); exact GoldenNum when it lies in Q(sqrt 5)."""
    if n < 1:
        raise ValueError("Beraha index must be positive")
    if n in _BERAHA_EXACT:
        return _BERAHA_EXACT[n]
    with _iv_prec(bits + 32):
        v = 2 + 2 * mpmath.iv.cos(2 * mpmath.iv.pi / (n + 1))
        lo, hi = _iv_bounds(v)
    if hi - lo >= Fraction(1, 2 ** bits):
        raise ArithmeticError("interval evaluation did not reach requested width")
    return RealInterval(lo, hi)


def certified_compare(lhs, rhs):
    """Return -1, 0, 1 comparing lhs with rhs, or None when intervals overlap.

    GoldenNum/rational operands compare exactly; 0 is only ever returned for
    exact operands.
    """
    if not isinstance(lhs, RealInterval) and not isinstance(rhs, RealInterval):
        return golden_sign(as_golden(lhs) - as_golden(rhs))
    diff = RealInterval._coerce(lhs) - RealInterval._coerce(rhs)
    if diff.lo > 0:
        return 1
    if diff.hi < 0:
        return -1
    return None

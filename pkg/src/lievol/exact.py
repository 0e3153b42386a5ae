"""Exact scalars of the form q * pi^k * sqrt(s).

q is an arbitrary-precision rational, k a non-negative integer power of pi
and s a positive square-free integer radicand.  This class is closed under
multiplication and division, which is all the volume formulas need; there
is deliberately no addition, so every value has a unique normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _split_square(n: int) -> tuple[int, int]:
    """Return (a, b) with n = a^2 * b and b square-free."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    a, b = 1, 1
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            a *= d ** (e // 2)
            if e % 2:
                b *= d
        d += 1 if d == 2 else 2
    return a, b * m


@dataclass(frozen=True)
class ExactScalar:
    """Value q * pi^k * sqrt(s), stored in normal form."""

    q: Fraction
    k: int = 0
    s: int = 1

    def __post_init__(self):
        q = Fraction(self.q)
        k, s = self.k, self.s
        if k < 0:
            raise ValueError("negative pi power not representable")
        if q == 0:
            k, s = 0, 1
        else:
            a, s = _split_square(s)
            q = q * a
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "s", s)

    # -- constructors -------------------------------------------------

    @staticmethod
    def one() -> "ExactScalar":
        return ExactScalar(Fraction(1))

    @staticmethod
    def from_rational(q) -> "ExactScalar":
        return ExactScalar(Fraction(q))

    @staticmethod
    def sqrt_rational(q) -> "ExactScalar":
        """Exact square root of a positive rational."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("sqrt of non-positive rational")
        # sqrt(p/r) = sqrt(p*r)/r
        return ExactScalar(Fraction(1, q.denominator), 0,
                           q.numerator * q.denominator)

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(self.q * other.q, self.k + other.k,
                           self.s * other.s)

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if other.q == 0:
            raise ZeroDivisionError("division by exact zero")
        if self.k < other.k:
            raise ValueError(
                "quotient would need a negative pi power; use the log path")
        # 1/sqrt(s) = sqrt(s)/s
        return ExactScalar(self.q / (other.q * other.s),
                           self.k - other.k, self.s * other.s)

    def __pow__(self, m: int) -> "ExactScalar":
        if m < 0:
            raise ValueError("negative powers not supported")
        out = ExactScalar.one()
        for _ in range(m):
            out = out * self
        return out

    # -- conversions --------------------------------------------------

    def to_float(self) -> float:
        return float(self.q) * math.pi ** self.k * math.sqrt(self.s)

    def log(self) -> float:
        """Natural log, safe for rationals far beyond float range."""
        if self.q <= 0:
            raise ValueError("log of non-positive value")
        q = self.q
        return (math.log(q.numerator) - math.log(q.denominator)
                + self.k * math.log(math.pi) + 0.5 * math.log(self.s))

    # -- rendering ----------------------------------------------------

    def to_json(self) -> dict:
        return {"q": f"{self.q.numerator}/{self.q.denominator}",
                "pi_pow": self.k, "sqrt": self.s}

    @staticmethod
    def from_json(d: dict) -> "ExactScalar":
        num, den = d["q"].split("/")
        return ExactScalar(Fraction(int(num), int(den)), d["pi_pow"], d["sqrt"])

    def __str__(self) -> str:
        parts = [str(self.q)]
        if self.k == 1:
            parts.append("pi")
        elif self.k > 1:
            parts.append(f"pi^{self.k}")
        if self.s != 1:
            parts.append(f"sqrt({self.s})")
        return " * ".join(parts)

    def decimal(self, digits: int = 15) -> str:
        """Decimal rendering to the given number of significant digits."""
        return f"{self.to_float():.{digits}g}"


def es_mul(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a * b


def es_div(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a / b


def es_to_float(a: ExactScalar) -> float:
    return a.to_float()


def es_log(a: ExactScalar) -> float:
    return a.log()

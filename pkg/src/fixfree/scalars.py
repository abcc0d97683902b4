"""Exact field arithmetic for Q and Q(i).

Rational numbers are plain ``fractions.Fraction`` objects: arbitrary
precision, always in lowest terms with positive denominator. Gaussian
rationals are pairs of Fractions with the usual complex arithmetic.
``GaussianRational`` coerces ints and Fractions in mixed expressions, and a
Gaussian rational with zero imaginary part compares (and hashes) equal to the
matching Fraction, so polynomial coefficient dicts may hold either type.

No floating point enters this module. Conversions to complex floats for
numeric search and display live elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, "GaussianRational"]

_RAT_TYPES = (int, Fraction)


class GaussianRational:
    """An element re + im*i of Q(i), with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # --- predicates ---

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    # --- arithmetic ---

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        """|z|^2 = re^2 + im^2, exact."""
        return self.re * self.re + self.im * self.im

    # --- comparisons and hashing ---

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RAT_TYPES):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # A real Gaussian rational must hash like its Fraction value.
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # --- conversion and display ---

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, _RAT_TYPES):
        return GaussianRational(value)
    return NotImplemented


# === Generic helpers over Scalar = Fraction | GaussianRational ===


def as_gaussian(value) -> GaussianRational:
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return out


def scalar_is_zero(value: Scalar) -> bool:
    return not value


def scalar_inverse(value: Scalar) -> Scalar:
    if isinstance(value, GaussianRational):
        return value.inverse()
    return Fraction(1) / Fraction(value)


def scalar_conjugate(value: Scalar) -> Scalar:
    if isinstance(value, GaussianRational):
        return value.conjugate()
    return Fraction(value)


def scalar_to_complex(value: Scalar) -> complex:
    if isinstance(value, GaussianRational):
        return complex(value)
    return complex(float(value), 0.0)


def is_root_of_unity_q_i(q) -> bool:
    """True iff q is a root of unity inside Q(i).

    The only roots of unity in Q(i) are the fourth roots 1, -1, i, -i, so the
    test is exact set membership, no numerics.
    """
    q = as_gaussian(q)
    return q in (
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(0, -1),
    )


# === Formatting (canonical textual form, round-trippable by the parser) ===


def _format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(value: Scalar) -> str:
    """Canonical text: rationals as 'a/b', Gaussian values as 'x+y*i'."""
    if isinstance(value, _RAT_TYPES):
        return _format_fraction(Fraction(value))
    value = as_gaussian(value)
    if value.im == 0:
        return _format_fraction(value.re)
    if value.im == 1:
        imag = "i"
    elif value.im == -1:
        imag = "-i"
    else:
        imag = f"{_format_fraction(value.im)}*i"
    if value.re == 0:
        return imag
    sep = "+" if not imag.startswith("-") else ""
    return f"{_format_fraction(value.re)}{sep}{imag}"

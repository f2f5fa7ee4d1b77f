"""Exact arithmetic over the Gaussian rationals Q(eps), eps = sqrt(-1).

Every coefficient in this package lives in this field.  Values are
immutable, hashable and kept in lowest terms (positive denominators) by
``fractions.Fraction``; equality is exact structural equality.  No floating
point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Rat = int | Fraction


def _as_fraction(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


_ZERO_F = Fraction(0)


class GaussianRational:
    """A number ``re + im*eps`` with rational parts and ``eps**2 == -1``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = 0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring structure -------------------------------------------------

    def __add__(self, other) -> "GaussianRational":
        if type(other) is GaussianRational:
            return _make(self.re + other.re, self.im + other.im)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        if type(other) is GaussianRational:
            return _make(self.re - other.re, self.im - other.im)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "GaussianRational":
        return _make(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        b, d = self.im, other.im
        if not b and not d:
            return _make(self.re * other.re, _ZERO_F)
        a, c = self.re, other.re
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c, d = other.re, other.im
        norm = c * c + d * d
        if not norm:
            raise ZeroDivisionError("division by zero in Q(eps)")
        a, b = self.re, self.im
        return _make((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        return ONE / self

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- presentation ----------------------------------------------------

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*eps" if self.im != 1 else "eps"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        tail = "eps" if mag == 1 else f"{mag}*eps"
        return f"{self.re} {sign} {tail}"

    def to_json(self) -> dict:
        """Serialize as ``{"re": "p/q", "im": "p/q"}``."""
        return {"re": str(self.re), "im": str(self.im)}

    @staticmethod
    def from_json(obj: dict) -> "GaussianRational":
        return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))


def _make(re: Fraction, im: Fraction) -> "GaussianRational":
    """Internal constructor for parts already known to be Fractions."""
    out = object.__new__(GaussianRational)
    object.__setattr__(out, "re", re)
    object.__setattr__(out, "im", im)
    return out


def _coerce(x) -> "GaussianRational":
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)
EPS = GaussianRational(0, 1)

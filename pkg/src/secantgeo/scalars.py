"""Exact scalars: Gaussian rationals, i.e. complex numbers with rational
real and imaginary parts.

Every computation in this package is exact.  The rational backend is
gmpy2.mpq when importable (much faster on large numerators) and
fractions.Fraction otherwise; set SECANTGEO_BACKEND=fractions or
SECANTGEO_BACKEND=gmpy2 to force one.  Both backends store reduced
fractions with positive denominators and print as "p/q" with the
denominator omitted when it is 1, which is exactly the wire format.
"""

from __future__ import annotations

import os

_FORCED = os.environ.get("SECANTGEO_BACKEND", "auto")
if _FORCED not in ("auto", "gmpy2", "fractions"):
    raise RuntimeError("SECANTGEO_BACKEND must be 'gmpy2' or 'fractions', got %r" % _FORCED)

if _FORCED in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as Rational
        BACKEND = "gmpy2"
    except ImportError:
        if _FORCED == "gmpy2":
            raise
        from fractions import Fraction as Rational
        BACKEND = "fractions"
else:
    from fractions import Fraction as Rational
    BACKEND = "fractions"

_R0 = Rational(0)
_R1 = Rational(1)


def _rat(value) -> "Rational":
    if isinstance(value, int):
        return Rational(value)
    return Rational(value)


class Scalar:
    """An element of Q(i), immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __repr__(self):
        if not self.im:
            return "Scalar(%s)" % (self.re,)
        return "Scalar(%s, %s)" % (self.re, self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if not self.im and not other.im:
            return Scalar(self.re * other.re, _R0)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Scalar")
        if not self.im and not other.im:
            return Scalar(self.re / other.re, _R0)
        n = other.re * other.re + other.im * other.im
        return Scalar(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm_sq(self):
        """|z|^2 as a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, int):
        return Scalar(value)
    raise TypeError("cannot coerce %r to Scalar" % (value,))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _format_rat(r) -> str:
    return str(r)


def _parse_rat(text):
    if not isinstance(text, str):
        raise ValueError("rational must be a string, got %r" % (text,))
    body = text[1:] if text.startswith("-") else text
    num, sep, den = body.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise ValueError("malformed rational %r" % text)
    if sep and int(den) == 0:
        raise ValueError("zero denominator in %r" % text)
    return Rational(text)


def scalar_to_json(z: Scalar) -> dict:
    """{"re": "p/q", "im": "r/s"}; decimal integer strings, optional leading
    minus, "/1" omitted."""
    return {"re": _format_rat(z.re), "im": _format_rat(z.im)}


def scalar_from_json(obj) -> Scalar:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ValueError("scalar object must have exactly the keys re, im: %r" % (obj,))
    return Scalar(_parse_rat(obj["re"]), _parse_rat(obj["im"]))

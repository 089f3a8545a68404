"""Scalar backends: exact rationals (default) or tolerance-gated floats.

All arithmetic in the package runs over one of two scalar backends,
selected globally for the run:

* ``rational`` -- ``fractions.Fraction``; equality and zero tests are exact.
* ``float`` -- IEEE doubles; a value counts as zero when ``|x| <= tol * scale``
  where ``scale`` is the magnitude of the operands that produced it.

Every float comparison in the package routes through :func:`is_zero` /
:func:`eq` so there is a single point of numerical policy.
"""
from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"

_backend = RATIONAL
_tolerance = 1e-9


def set_backend(name: str, tolerance: float | None = None) -> None:
    global _backend, _tolerance
    if name not in (RATIONAL, FLOAT):
        raise ValueError(f"unknown scalar backend {name!r}")
    _backend = name
    if tolerance is not None:
        if tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        _tolerance = tolerance


def get_backend() -> str:
    return _backend


def get_tolerance() -> float:
    return _tolerance


@contextmanager
def backend(name: str, tolerance: float | None = None):
    """Temporarily switch the scalar backend (used heavily in tests)."""
    old_b, old_t = _backend, _tolerance
    set_backend(name, tolerance)
    try:
        yield
    finally:
        set_backend(old_b, old_t)


def to_scalar(value):
    """Coerce a number or a decimal/fraction string to the active backend."""
    if _backend == RATIONAL:
        if isinstance(value, float):
            return Fraction(value).limit_denominator(10**12)
        return Fraction(value)
    return float(Fraction(value)) if isinstance(value, str) else float(value)


def zero():
    return Fraction(0) if _backend == RATIONAL else 0.0


def one():
    return Fraction(1) if _backend == RATIONAL else 1.0


def is_zero(x, scale=1) -> bool:
    """The package-wide zero test.  ``scale`` is the magnitude of the
    operands that produced ``x``; it is ignored by the rational backend."""
    if isinstance(x, Fraction):
        return x == 0
    return abs(x) <= _tolerance * max(abs(scale), 1.0)


def eq(x, y, scale=1) -> bool:
    return is_zero(x - y, scale=max(abs(x), abs(y), abs(scale)))


def scalar_str(x) -> str:
    """Serialize a scalar: ``p/q`` (q > 0, reduced) or ``p``; floats use
    the shortest round-trip decimal."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def parse_scalar(s: str):
    """Inverse of :func:`scalar_str` under the active backend."""
    return to_scalar(s)

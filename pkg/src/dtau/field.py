"""Scalar ground field: exact big rationals or double-precision floats.

Exact values are `fractions.Fraction` (always in lowest terms with positive
denominator, which Fraction guarantees).  Float mode uses plain `float` and a
small absolute tolerance for zero tests; it exists for the continuum-limit
sweeps and the float rerun of the suites.
"""

from __future__ import annotations

from fractions import Fraction

FLOAT_ZERO_TOL = 1e-11

EXACT = "exact"
FLOAT = "float"


def is_zero(x) -> bool:
    if isinstance(x, float):
        return abs(x) <= FLOAT_ZERO_TOL
    return x == 0


def scalars_close(x, y, tol: float) -> bool:
    """Relative comparison used by float-mode assertions."""
    fx, fy = float(x), float(y)
    return abs(fx - fy) <= tol * (1.0 + abs(fx) + abs(fy))


def parse_scalar(text, mode: str = EXACT):
    """Parse "num/den", integer, or decimal notation into a field value."""
    if isinstance(text, Fraction):
        return float(text) if mode == FLOAT else text
    if isinstance(text, float):
        if mode == EXACT:
            raise ValueError("float literal %r not allowed in exact mode" % text)
        return text
    if isinstance(text, int):
        return float(text) if mode == FLOAT else Fraction(text)
    value = Fraction(str(text).strip())
    return float(value) if mode == FLOAT else value


def fmt_scalar(x) -> str:
    """Serialize; exact values as num or num/den, never as a float literal."""
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def is_integer(x) -> bool:
    if isinstance(x, float):
        return abs(x - round(x)) <= FLOAT_ZERO_TOL
    return Fraction(x).denominator == 1


def rand_rational(rng, num_range: int = 12, den_choices=(1, 2, 3, 5)) -> Fraction:
    """Small random rational, nonzero-biased, for property sweeps."""
    num = rng.randint(-num_range, num_range)
    return Fraction(num, rng.choice(den_choices))


def rand_nonzero_rational(rng, num_range: int = 12, den_choices=(1, 2, 3, 5)) -> Fraction:
    while True:
        v = rand_rational(rng, num_range, den_choices)
        if v != 0:
            return v

"""Dense univariate polynomials over the scalar field.

Coefficients are stored in ascending order with no trailing zeros; the zero
polynomial has an empty coefficient tuple.  A configurable degree cap guards
against runaway coefficient growth in long gauge compositions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeCapExceeded
from .field import is_zero

DEGREE_CAP = 512


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = _trim([v if isinstance(v, float) else Fraction(v) for v in coeffs])
        if len(c) - 1 > DEGREE_CAP:
            raise DegreeCapExceeded("degree %d exceeds cap %d" % (len(c) - 1, DEGREE_CAP))
        self.coeffs = c

    @classmethod
    def const(cls, v):
        return cls((v,))

    @classmethod
    def x(cls, mode_float: bool = False):
        return cls((0.0, 1.0)) if mode_float else cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if len(a) + len(b) - 2 > DEGREE_CAP:
            raise DegreeCapExceeded("product degree %d exceeds cap" % (len(a) + len(b) - 2))
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, s):
        return Poly(tuple(c * s for c in self.coeffs))

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return self if lead == 1 else self.scale(1 / lead)

    def divmod(self, other):
        """Quotient and remainder; `other` must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.leading()
        if self.degree < db:
            return Poly(), self
        quot = [0] * (self.degree - db + 1)
        for k in range(self.degree - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if not is_zero(c):
                for i, cb in enumerate(other.coeffs):
                    rem[k + i] -= c * cb
        return Poly(quot), Poly(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("polynomial division was not exact")
        return q

    def gcd(self, other):
        """Monic gcd by Euclid; meaningful in exact mode only."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def eval(self, z0):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z0 + c
        return acc

    def derivative(self):
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def shift_arg(self, h=1):
        """p(z + h), via Horner in (z + h)."""
        acc = Poly()
        zh = Poly((h, 1)) if not isinstance(h, float) else Poly((h, 1.0))
        for c in reversed(self.coeffs):
            acc = acc * zh + Poly.const(c)
        return acc

    def to_float(self):
        return Poly(tuple(float(c) for c in self.coeffs))

    def is_float(self) -> bool:
        return any(isinstance(c, float) for c in self.coeffs)

    def deflate(self, z0):
        """Synthetic division by (z - z0), discarding the remainder."""
        if self.is_zero():
            return self
        out = [0] * self.degree
        acc = self.coeffs[-1]
        for k in range(self.degree - 1, -1, -1):
            out[k] = acc
            acc = self.coeffs[k] + z0 * acc
        return Poly(out)

    def _scale(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def root_multiplicity(self, z0) -> int:
        """Order of vanishing at z0 (exact division; scaled test for floats)."""
        if self.is_float():
            p, k = self, 0
            scale = max(self._scale(), 1.0)
            while not p.is_zero() and abs(p.eval(z0)) <= 1e-8 * scale:
                p = p.deflate(z0)
                k += 1
            return k
        p, k = self, 0
        while not p.is_zero() and is_zero(p.eval(z0)):
            p = p.exact_div(Poly((-z0, 1)))
            k += 1
        return k

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not is_zero(c):
                terms.append("%s*z^%d" % (c, i))
        return "Poly(%s)" % " + ".join(terms)


def from_roots(roots, lead=1):
    """Monic-by-default polynomial with prescribed roots."""
    p = Poly.const(lead)
    for r in roots:
        p = p * Poly((-r, 1))
    return p

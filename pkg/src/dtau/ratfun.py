"""Rational functions of one variable.

Normal form: denominator monic and coprime to the numerator (exact mode), so
equality of values is equality of representations.  Float-mode values skip the
gcd reduction and compare only through evaluation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import HigherOrderPole, PoleAtInfinity, PoleAtPoint
from .field import is_zero
from .poly import Poly


def _is_float_poly(p: Poly) -> bool:
    return any(isinstance(c, float) for c in p.coeffs)


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not _is_float_poly(num) and not _is_float_poly(den):
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.leading()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, v):
        return cls(Poly.const(v), Poly.const(1), reduce=False)

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p, Poly.const(1), reduce=False)

    @classmethod
    def zero(cls):
        return cls(Poly(), Poly.const(1), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("not a polynomial: denominator %r" % (self.den,))
        return self.num

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __add__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            return RatFun(self.num.scale(other), self.den, reduce=False)
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            return RatFun(self.num.scale(Fraction(1) / other if not isinstance(other, float) else 1.0 / other), self.den, reduce=False)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def eval(self, z0):
        """Value at z0; PoleAtPoint if the reduced denominator vanishes there.

        Float-mode values are not gcd-reduced, so common factors are removed
        numerically by synthetic division before declaring a pole.
        """
        d = self.den.eval(z0)
        if isinstance(d, float) or isinstance(z0, float) or self.num.is_float():
            num, den = self.num, self.den
            dscale = max(den._scale(), 1.0)
            nscale = max(num._scale(), 1.0)
            dval = den.eval(z0)
            while abs(dval) <= 1e-9 * dscale:
                if num.is_zero():
                    return 0.0
                if abs(num.eval(z0)) > 1e-7 * nscale:
                    raise PoleAtPoint("pole at %s" % (z0,))
                num, den = num.deflate(z0), den.deflate(z0)
                if den.is_zero():
                    raise PoleAtPoint("pole at %s" % (z0,))
                dval = den.eval(z0)
            return num.eval(z0) / dval
        if is_zero(d):
            raise PoleAtPoint("pole at %s" % (z0,))
        return self.num.eval(z0) / d

    def _reduced_at(self, z0):
        """(num, den) with common (z - z0) factors removed; float mode only
        actually deflates, exact representations are already coprime."""
        if not (self.num.is_float() or self.den.is_float()):
            return self.num, self.den
        num, den = self.num, self.den
        common = min(num.root_multiplicity(z0), den.root_multiplicity(z0))
        for _ in range(common):
            num, den = num.deflate(z0), den.deflate(z0)
        return num, den

    def pole_order(self, z0) -> int:
        num, den = self._reduced_at(z0)
        return den.root_multiplicity(z0)

    def residue(self, z0):
        """Coefficient of 1/(z - z0); requires at most a simple pole."""
        num, den = self._reduced_at(z0)
        k = den.root_multiplicity(z0)
        if k == 0:
            return Fraction(0) if not _is_float_poly(den) else 0.0
        if k >= 2:
            raise HigherOrderPole("pole of order %d at %s" % (k, z0))
        rest = den.deflate(z0) if den.is_float() else den.exact_div(Poly((-z0, 1)))
        return num.eval(z0) / rest.eval(z0)

    def regular_value(self, z0):
        """Value at z0 of f minus its polar part there (simple pole at most)."""
        num, den = self._reduced_at(z0)
        k = den.root_multiplicity(z0)
        if k == 0:
            return self.eval(z0)
        if k >= 2:
            raise HigherOrderPole("pole of order %d at %s" % (k, z0))
        lin = Poly((-z0, 1))
        if den.is_float() or num.is_float():
            rest = den.deflate(z0)
            shifted = num - rest.scale(num.eval(z0) / rest.eval(z0))
            return shifted.deflate(z0).eval(z0) / rest.eval(z0)
        rest = den.exact_div(lin)
        r = num.eval(z0) / rest.eval(z0)
        return (num - rest.scale(r)).exact_div(lin).eval(z0) / rest.eval(z0)

    def derivative(self):
        n = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFun(n, self.den * self.den)

    def shift_arg(self, h=1):
        return RatFun(self.num.shift_arg(h), self.den.shift_arg(h))

    def to_float(self):
        return RatFun(self.num.to_float(), self.den.to_float(), reduce=False)

    def order_at_infinity(self) -> int:
        """deg(den) - deg(num); positive means vanishing at infinity."""
        if self.is_zero():
            raise ValueError("zero function has no order")
        return self.den.degree - self.num.degree

    def expand_at_infinity(self, order: int):
        """Coefficients c_0..c_order of the expansion in powers of 1/z."""
        if self.is_zero():
            return [Fraction(0)] * (order + 1)
        p, q = self.num.degree, self.den.degree
        if p > q:
            raise PoleAtInfinity("entry grows like z^%d at infinity" % (p - q))
        # f(z) = w^(q-p) * sum(a_{p-i} w^i) / sum(b_{q-j} w^j) with w = 1/z
        arev = list(reversed(self.num.coeffs))
        brev = list(reversed(self.den.coeffs))
        out = []
        series = [Fraction(0)] * (q - p) + arev
        for k in range(order + 1):
            ak = series[k] if k < len(series) else Fraction(0)
            c = (ak - sum(brev[j] * out[k - j] for j in range(1, min(k, len(brev) - 1) + 1))) / brev[0]
            out.append(c)
        return out

    def __repr__(self):
        return "RatFun((%r)/(%r))" % (self.num, self.den)

"""Square matrices of rational functions."""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import PoleAtPoint, SingularMatrix
from .poly import Poly
from .ratfun import RatFun


def _as_ratfun(v):
    if isinstance(v, RatFun):
        return v
    if isinstance(v, Poly):
        return RatFun.from_poly(v)
    return RatFun.const(v)


class RMatrix:
    __slots__ = ("entries", "size")

    def __init__(self, entries):
        rows = tuple(tuple(_as_ratfun(v) for v in row) for row in entries)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        self.entries = rows
        self.size = len(rows)

    @classmethod
    def identity(cls, n):
        return cls([[RatFun.const(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, rows):
        return cls([[RatFun.const(v) for v in row] for row in rows])

    @classmethod
    def diagonal(cls, funcs):
        n = len(funcs)
        return cls([[funcs[i] if i == j else RatFun.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def rank_one(cls, col, row):
        """Outer product col * row^t as a constant matrix."""
        return cls([[RatFun.const(a * b) for b in row] for a in col])

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.entries == other.entries

    def __add__(self, other):
        return RMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, RMatrix):
            n = self.size
            return RMatrix(
                [[sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), RatFun.zero())
                  for j in range(n)] for i in range(n)]
            )
        return RMatrix([[e * other for e in row] for row in self.entries])

    def __neg__(self):
        return RMatrix([[-e for e in row] for row in self.entries])

    def scale(self, f):
        f = _as_ratfun(f)
        return RMatrix([[e * f for e in row] for row in self.entries])

    def transpose(self):
        return RMatrix([list(col) for col in zip(*self.entries)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_identity(self) -> bool:
        return self == RMatrix.identity(self.size)

    def shift_arg(self, h=1):
        return RMatrix([[e.shift_arg(h) for e in row] for row in self.entries])

    def derivative(self):
        return RMatrix([[e.derivative() for e in row] for row in self.entries])

    def det(self) -> RatFun:
        n = self.size
        if n == 1:
            return self.entries[0][0]
        if n == 2:
            a, b = self.entries[0]
            c, d = self.entries[1]
            return a * d - b * c
        # Laplace along the first row; sizes in scope stay small
        out = RatFun.zero()
        for j in range(n):
            e = self.entries[0][j]
            if e.is_zero():
                continue
            minor = RMatrix([[row[k] for k in range(n) if k != j] for row in self.entries[1:]])
            term = e * minor.det()
            out = out + (term if j % 2 == 0 else -term)
        return out

    def inverse(self) -> "RMatrix":
        """Inverse over the rational-function field (Gauss-Jordan)."""
        n = self.size
        aug = [list(self.entries[i]) + [RatFun.const(1 if i == j else 0) for j in range(n)]
               for i in range(n)]
        for c in range(n):
            piv = None
            for r in range(c, n):
                if not aug[r][c].is_zero():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix("matrix of rational functions is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = RatFun.const(1) / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for r in range(n):
                if r != c and not aug[r][c].is_zero():
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return RMatrix([row[n:] for row in aug])

    def eval(self, z0):
        """Scalar matrix of values; PoleAtPoint if any entry has a pole at z0."""
        try:
            return [[e.eval(z0) for e in row] for row in self.entries]
        except PoleAtPoint:
            raise PoleAtPoint("matrix entry has a pole at %s" % (z0,))

    def max_pole_order(self, z0) -> int:
        return max(e.pole_order(z0) for row in self.entries for e in row)

    def residue_matrix(self, z0):
        """Entrywise residues at z0 (entries must have simple poles at most)."""
        return [[e.residue(z0) for e in row] for row in self.entries]

    def regular_part_at(self, z0):
        """Value at z0 after removing the first-order polar part entrywise."""
        return [[e.regular_value(z0) for e in row] for row in self.entries]

    def infinity_expansion(self, order: int):
        """Scalar matrices C_0..C_order with A(z) = sum C_k z^-k + o(z^-order)."""
        per_entry = [[(e.expand_at_infinity(order) if not e.is_zero() else [Fraction(0)] * (order + 1))
                      for e in row] for row in self.entries]
        return [[[per_entry[i][j][k] for j in range(self.size)] for i in range(self.size)]
                for k in range(order + 1)]

    def to_float(self):
        return RMatrix([[e.to_float() for e in row] for row in self.entries])

    def kernel_at(self, z0):
        """Basis of the null space of the value A(z0)."""
        return linalg.nullspace(self.eval(z0))

    def left_kernel_at(self, z0):
        return linalg.left_nullspace(self.eval(z0))

    def apply_to(self, vec, z0):
        return linalg.matvec(self.eval(z0), vec)

    def __repr__(self):
        return "RMatrix(%d x %d)" % (self.size, self.size)


def mat_inverse(a: RMatrix) -> RMatrix:
    return a.inverse()


def kernel_at(a: RMatrix, z0):
    return a.kernel_at(z0)


def infinity_expansion(a: RMatrix, order: int):
    return a.infinity_expansion(order)

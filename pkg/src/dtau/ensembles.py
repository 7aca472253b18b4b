"""Discrete biorthogonal ensembles and determinantal gap probabilities.

Weights may be given as explicit per-point tables or as (anchor, ratio)
pairs; ratio-defined families require the phase set to be a contiguous
integer range, and only weight ratios ever enter the kernel, so constant
prefactors are irrelevant and everything stays exact rational.
"""

from __future__ import annotations

import ast
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BasicAssumptionFails, InfeasibleSize, InvalidSpec
from .field import EXACT, parse_scalar
from .poly import Poly
from .ratfun import RatFun

BRUTE_FORCE_CAP = 10**7


@dataclass(frozen=True)
class EnsembleSpec:
    points: tuple                 # ordered phase set X
    omega1: tuple                 # p tables, each a tuple over X
    omega2: tuple                 # q tables
    n: tuple
    m: tuple

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InvalidSpec("phase set has repeated points")
        if sum(self.n) != sum(self.m):
            raise InvalidSpec("multi-index sums differ: %s vs %s" % (self.n, self.m))
        if len(self.omega1) != len(self.n) or len(self.omega2) != len(self.m):
            raise InvalidSpec("weight family count does not match multi-indices")
        for table in self.omega1 + self.omega2:
            if len(table) != len(self.points):
                raise InvalidSpec("weight table length != |X|")
            if any(v == 0 for v in table):
                raise InvalidSpec("weights must be nonzero on X")

    @property
    def size(self) -> int:
        return sum(self.n)

    @property
    def p(self) -> int:
        return len(self.n)

    @property
    def q(self) -> int:
        return len(self.m)

    def index_of(self, x) -> int:
        return self.points.index(x)

    def weight1(self, i, x):
        return self.omega1[i][self.index_of(x)]

    def weight2(self, i, x):
        return self.omega2[i][self.index_of(x)]


@dataclass(frozen=True)
class KernelMatrix:
    kernel: tuple                 # |X| x |X| values
    gram_inverse: tuple           # N x N, transpose-inverse of the Gram matrix
    phi: tuple                    # N tables over X
    psi: tuple

    @property
    def size(self) -> int:
        return len(self.phi)


def unroll_ratio_weights(points, anchor, ratio: RatFun):
    """Weight table from omega(x+1)/omega(x) = ratio(x) on an integer range."""
    pts = list(points)
    for a, b in zip(pts, pts[1:]):
        if b - a != 1:
            raise InvalidSpec("ratio-defined weights need a contiguous integer range")
    values = [anchor]
    for x in pts[:-1]:
        values.append(values[-1] * ratio.eval(x))
    return tuple(values)


def build_functions(spec: EnsembleSpec):
    """The two ordered function families: omega_{1,i}(x) x^j and omega_{2,i}(x) x^j."""
    phi, psi = [], []
    for i, count in enumerate(spec.n):
        for j in range(count):
            phi.append(tuple(spec.omega1[i][k] * x**j for k, x in enumerate(spec.points)))
    for i, count in enumerate(spec.m):
        for j in range(count):
            psi.append(tuple(spec.omega2[i][k] * x**j for k, x in enumerate(spec.points)))
    return tuple(phi), tuple(psi)


def gram_kernel(spec: EnsembleSpec) -> KernelMatrix:
    """Projection kernel K(x,y) = sum_ij M_ij phi_i(x) psi_j(y), M = Gram^{-t}."""
    phi, psi = build_functions(spec)
    npts = len(spec.points)
    size = spec.size
    gram = [[sum(phi[a][k] * psi[b][k] for k in range(npts)) for b in range(size)]
            for a in range(size)]
    m = linalg.inverse(linalg.transpose(gram))
    if m is None:
        raise BasicAssumptionFails("Gram matrix is singular (Z = 0)")
    kernel = [[sum(m[a][b] * phi[a][kx] * psi[b][ky] for a in range(size) for b in range(size))
               for ky in range(npts)] for kx in range(npts)]
    return KernelMatrix(tuple(map(tuple, kernel)), tuple(map(tuple, m)), phi, psi)


def _one_minus_k_block(spec: EnsembleSpec, km: KernelMatrix, rows, cols):
    return [[(1 if x == y else 0) - km.kernel[x][y] for y in cols] for x in rows]


def gap_probability(spec: EnsembleSpec, support, km: KernelMatrix = None):
    """det(1 - K) over X minus the support set: no particles outside `support`."""
    if km is None:
        km = gram_kernel(spec)
    support = set(support)
    if not support <= set(spec.points):
        raise InvalidSpec("support set must lie inside the phase set")
    outside = [k for k, x in enumerate(spec.points) if x not in support]
    return linalg.det(_one_minus_k_block(spec, km, outside, outside))


def brute_force_gap(spec: EnsembleSpec, support, cap: int = BRUTE_FORCE_CAP):
    """Configuration-sum oracle: (1/Z) sum over N-tuples inside the support.

    The weight of a configuration is det[phi_i(x_j)] det[psi_i(x_j)]; it is
    symmetric and vanishes on repeated points, so both sums run over
    increasing tuples and carry a common N! that cancels in the ratio.
    """
    npts = len(spec.points)
    size = spec.size
    if npts**size > cap:
        raise InfeasibleSize("|X|^N = %d exceeds cap %d" % (npts**size, cap))
    phi, psi = build_functions(spec)
    support = set(support)
    if not support <= set(spec.points):
        raise InvalidSpec("support set must lie inside the phase set")

    def mass(indices):
        d1 = linalg.det([[phi[a][k] for k in indices] for a in range(size)])
        d2 = linalg.det([[psi[a][k] for k in indices] for a in range(size)])
        return d1 * d2

    total = Fraction(0)
    inside = Fraction(0)
    support_idx = {k for k, x in enumerate(spec.points) if x in support}
    for combo in itertools.combinations(range(npts), size):
        w = mass(combo)
        total += w
        if set(combo) <= support_idx:
            inside += w
    if total == 0:
        raise BasicAssumptionFails("configuration sum Z vanishes")
    return inside / total


def segments_to_gap_set(spec: EnsembleSpec, segments):
    """Union of integral segments [a, b]; validated disjoint and inside X."""
    seen = set()
    for a, b in segments:
        if (b - a) != int(b - a) or b < a:
            raise InvalidSpec("segment endpoints must differ by a nonnegative integer")
        pts = [a + k for k in range(int(b - a) + 1)]
        for x in pts:
            if x not in spec.points:
                raise InvalidSpec("segment point %s outside the phase set" % (x,))
            if x in seen:
                raise InvalidSpec("segments overlap at %s" % (x,))
            seen.add(x)
    return seen


def support_from_gap_segments(spec: EnsembleSpec, segments):
    gap = segments_to_gap_set(spec, segments)
    return tuple(x for x in spec.points if x not in gap)


# --- rational function expressions -------------------------------------------

_ALLOWED_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow}


def parse_ratfun(text: str) -> RatFun:
    """Parse an arithmetic expression in z into an exact rational function."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise InvalidSpec("cannot parse %r: %s" % (text, exc))

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp) and type(node.op) in _ALLOWED_BINOPS:
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
            # integer powers only
            if not right.is_polynomial() or right.num.degree > 0:
                raise InvalidSpec("exponent must be an integer constant")
            k = right.num.eval(0)
            if k != int(k) or int(k) < 0:
                raise InvalidSpec("exponent must be a nonnegative integer")
            out = RatFun.const(1)
            for _ in range(int(k)):
                out = out * left
            return out
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name) and node.id == "z":
            return RatFun.from_poly(Poly.x())
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFun.const(Fraction(node.value))
        raise InvalidSpec("unsupported syntax in %r" % (text,))

    return walk(tree)


# --- JSON interface -----------------------------------------------------------

def _points_from_doc(doc, mode):
    x = doc.get("X")
    if isinstance(x, dict) and "range" in x:
        lo, hi = x["range"]
        return tuple(parse_scalar(v, mode) for v in range(int(lo), int(hi) + 1))
    if isinstance(x, list):
        return tuple(parse_scalar(v, mode) for v in x)
    raise InvalidSpec("X must be a list or {'range': [lo, hi]}")


def _family_from_doc(entries, points, mode):
    tables = []
    for entry in entries:
        if "table" in entry:
            table = tuple(parse_scalar(v, mode) for v in entry["table"])
            if len(table) != len(points):
                raise InvalidSpec("weight table length != |X|")
            tables.append(table)
        elif "ratio" in entry:
            anchor = parse_scalar(entry.get("anchor", 1), mode)
            tables.append(unroll_ratio_weights(points, anchor, parse_ratfun(entry["ratio"])))
        else:
            raise InvalidSpec("weight entry needs 'table' or 'ratio'")
    return tuple(tables)


def ensemble_from_json(doc: dict) -> EnsembleSpec:
    mode = doc.get("mode", EXACT)
    points = _points_from_doc(doc, mode)
    return EnsembleSpec(
        points=points,
        omega1=_family_from_doc(doc["omega1"], points, mode),
        omega2=_family_from_doc(doc["omega2"], points, mode),
        n=tuple(int(v) for v in doc["n"]),
        m=tuple(int(v) for v in doc["m"]),
    )

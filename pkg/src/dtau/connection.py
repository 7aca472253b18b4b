"""Difference connections: singularity frames and structural validation.

A connection is a square matrix of rational functions together with a frame
at each movable singularity.  Three singularity kinds are supported:

* simple zero: entries regular, det vanishes to first order.  The frame
  carries a kernel vector w of A(a) and a covector w' spanning the left null
  space (equivalently, annihilating the image of A(a)).
* simple pole: det has a first-order pole and the residue matrix has rank
  one.  The frame carries a covector w' spanning the residue's row space.
* coalesced rank-one: entries have at most a first-order pole, the residue
  has rank one, det is regular and nonzero.  The frame carries a triple
  (w, w', w'') -- w spans the image of the residue of A^{-1}, w' pairs to
  zero with w, and the covector family w' + w''(z - c) is annihilated by
  A^{-t}(z) at z = c.  w'' matters only modulo covectors annihilating w.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction

from . import linalg
from .errors import NonGeneric
from .field import is_integer, is_zero
from .poly import Poly
from .ratfun import RatFun
from .rmatrix import RMatrix


class SingularityKind(enum.Enum):
    SIMPLE_ZERO = "simple_zero"
    SIMPLE_POLE = "simple_pole"
    COALESCED = "coalesced_rank_one"

    @property
    def det_order(self) -> int:
        """Order of the det zero at the point: +1, -1, 0."""
        if self is SingularityKind.SIMPLE_ZERO:
            return 1
        if self is SingularityKind.SIMPLE_POLE:
            return -1
        return 0


@dataclass(frozen=True)
class SingularityFrame:
    location: object
    kind: SingularityKind
    w: tuple = None
    w_prime: tuple = None
    w_dprime: tuple = None

    def moved(self, new_location, **vectors):
        return replace(self, location=new_location, **vectors)


@dataclass(frozen=True)
class DConnection:
    matrix: RMatrix
    frames: tuple
    infinity_type: object = None

    @property
    def size(self) -> int:
        return self.matrix.size

    def frame(self, i: int) -> SingularityFrame:
        return self.frames[i]

    def with_frames(self, frames) -> "DConnection":
        return DConnection(self.matrix, tuple(frames), self.infinity_type)


def pair(w, w_prime):
    """Pairing of a vector with a covector in dual coordinates."""
    return sum(a * b for a, b in zip(w, w_prime))


def outer(col, row):
    return [[a * b for b in row] for a in col]


def normalize_dir(v):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for c in v:
        if not is_zero(c):
            return tuple(x / c for x in v)
    return None


def rank_one_factor(rows):
    """Write a rank-one scalar matrix as col * row^t; NonGeneric otherwise."""
    if linalg.rank(rows) != 1:
        raise NonGeneric("matrix is not rank one")
    n = len(rows)
    for j in range(n):
        col = [rows[i][j] for i in range(n)]
        if any(not is_zero(c) for c in col):
            i0 = next(i for i, c in enumerate(col) if not is_zero(c))
            row = [rows[i0][k] / col[i0] for k in range(n)]
            return col, row
    raise NonGeneric("zero matrix has no rank-one factorization")


def kernel_dir(a: RMatrix, z0):
    basis = a.kernel_at(z0)
    if len(basis) != 1:
        raise NonGeneric("kernel at %s has dimension %d" % (z0, len(basis)))
    return normalize_dir(basis[0])


def left_kernel_dir(a: RMatrix, z0):
    basis = a.left_kernel_at(z0)
    if len(basis) != 1:
        raise NonGeneric("left kernel at %s has dimension %d" % (z0, len(basis)))
    return normalize_dir(basis[0])


def residue_row_dir(a: RMatrix, z0):
    """Row-space direction of the rank-one residue at a simple pole."""
    _, row = rank_one_factor(a.residue_matrix(z0))
    return normalize_dir(row)


def residue_col_dir(a: RMatrix, z0):
    col, _ = rank_one_factor(a.residue_matrix(z0))
    return normalize_dir(col)


def zero_frame(a: RMatrix, loc, w=None, w_prime=None) -> SingularityFrame:
    if w is None:
        w = kernel_dir(a, loc)
    if w_prime is None:
        # dual normalization <dA/dz(loc) w, w'> = 1, so the textbook ratio
        # formulas hold verbatim for frames attached here
        direction = left_kernel_dir(a, loc)
        d = pair(linalg.matvec(a.derivative().eval(loc), list(w)), direction)
        if is_zero(d):
            raise NonGeneric("zero at %s is not simple enough for a dual covector" % (loc,))
        w_prime = tuple(v / d for v in direction)
    return SingularityFrame(loc, SingularityKind.SIMPLE_ZERO, tuple(w), tuple(w_prime))


def pole_frame(a: RMatrix, loc, w_prime=None) -> SingularityFrame:
    if w_prime is None:
        w_prime = residue_row_dir(a, loc)
    return SingularityFrame(loc, SingularityKind.SIMPLE_POLE, None, tuple(w_prime))


def coalesced_covector_family(a: RMatrix, loc, w_prime):
    """Solve for w'' with A^{-t}(z)(w' + w''(z-loc)) vanishing at z = loc."""
    ainv_t = a.inverse().transpose()
    regular = []
    for i in range(a.size):
        entry = RatFun.zero()
        for k in range(a.size):
            entry = entry + ainv_t.entries[i][k] * RatFun.const(w_prime[k])
        if entry.pole_order(loc) > 0:
            raise NonGeneric("A^{-t} w' keeps a pole at %s; <w, w'> != 0?" % (loc,))
        regular.append(entry.eval(loc))
    res_t = linalg.transpose(a.inverse().residue_matrix(loc))
    sol = linalg.solve(res_t, [-v for v in regular])
    if sol is None:
        raise NonGeneric("no covector completes the frame at %s" % (loc,))
    return tuple(sol)


def coalesced_frame(a: RMatrix, loc, w=None, w_prime=None, w_dprime=None) -> SingularityFrame:
    if w is None:
        col, _ = rank_one_factor(a.inverse().residue_matrix(loc))
        w = normalize_dir(col)
    if w_prime is None:
        w_prime = residue_row_dir(a, loc)
    if not is_zero(pair(w, w_prime)):
        raise NonGeneric("coalesced frame needs <w, w'> = 0 at %s" % (loc,))
    if w_dprime is None:
        w_dprime = coalesced_covector_family(a, loc, w_prime)
    return SingularityFrame(loc, SingularityKind.COALESCED, tuple(w), tuple(w_prime), tuple(w_dprime))


def attach_frames(a: RMatrix, zeros=(), poles=(), coalesced=()) -> DConnection:
    frames = [zero_frame(a, x) for x in zeros]
    frames += [pole_frame(a, x) for x in poles]
    frames += [coalesced_frame(a, x) for x in coalesced]
    return DConnection(a, tuple(frames))


def _det_orders(det: RatFun, loc):
    return det.num.root_multiplicity(loc), det.den.root_multiplicity(loc)


def verify_singularity_structure(conn: DConnection):
    """Check every frame's defining conditions; returns a list of violations."""
    out = []
    a = conn.matrix
    det = a.det()
    frames = conn.frames
    for i, fi in enumerate(frames):
        for fj in frames[i + 1:]:
            if is_integer(fi.location - fj.location):
                out.append("locations %s and %s differ by an integer"
                           % (fi.location, fj.location))
    for idx, f in enumerate(frames):
        tag = "frame %d at %s" % (idx, f.location)
        zmult, pmult = _det_orders(det, f.location)
        if f.kind is SingularityKind.SIMPLE_ZERO:
            if a.max_pole_order(f.location) != 0:
                out.append("%s: entries not regular" % tag)
                continue
            if (zmult, pmult) != (1, 0):
                out.append("%s: det order (%d,%d), expected simple zero" % (tag, zmult, pmult))
            if len(a.kernel_at(f.location)) != 1:
                out.append("%s: kernel dimension != 1" % tag)
            if f.w is not None and any(not is_zero(v) for v in linalg.matvec(a.eval(f.location), list(f.w))):
                out.append("%s: stored w is not in the kernel" % tag)
            if f.w_prime is not None and any(
                not is_zero(v) for v in linalg.matvec(linalg.transpose(a.eval(f.location)), list(f.w_prime))
            ):
                out.append("%s: stored w' does not annihilate the image" % tag)
        elif f.kind is SingularityKind.SIMPLE_POLE:
            if a.max_pole_order(f.location) != 1:
                out.append("%s: entry pole order != 1" % tag)
                continue
            if (zmult, pmult) != (0, 1):
                out.append("%s: det order (%d,%d), expected simple pole" % (tag, zmult, pmult))
            res = a.residue_matrix(f.location)
            if linalg.rank(res) != 1:
                out.append("%s: residue rank != 1" % tag)
            elif f.w_prime is not None:
                _, row = rank_one_factor(res)
                if linalg.rank([list(row), list(f.w_prime)]) != 1:
                    out.append("%s: stored w' is not the residue row direction" % tag)
        else:
            if a.max_pole_order(f.location) > 1:
                out.append("%s: entry pole order > 1" % tag)
                continue
            res = a.residue_matrix(f.location)
            if linalg.rank(res) != 1:
                out.append("%s: residue rank != 1" % tag)
            if (zmult, pmult) != (0, 0):
                out.append("%s: det not regular nonzero" % tag)
            elif is_zero(det.eval(f.location)):
                out.append("%s: det vanishes" % tag)
            if f.w is None or f.w_prime is None or f.w_dprime is None:
                out.append("%s: incomplete frame triple" % tag)
                continue
            if not is_zero(pair(f.w, f.w_prime)):
                out.append("%s: <w, w'> != 0" % tag)
            if all(is_zero(v) for v in f.w_prime):
                out.append("%s: w' = 0" % tag)
            ainv_t = a.inverse().transpose()
            c = f.location
            for r in range(a.size):
                entry = RatFun.zero()
                for k in range(a.size):
                    lin = Poly((f.w_prime[k] - c * f.w_dprime[k], f.w_dprime[k]))
                    entry = entry + ainv_t.entries[r][k] * RatFun.from_poly(lin)
                if entry.pole_order(c) > 0 or not is_zero(entry.eval(c)):
                    out.append("%s: A^{-t}(w' + w''(z-c)) does not vanish" % tag)
                    break
    return out


def connection_to_float(conn: DConnection) -> DConnection:
    """Float-mode copy of a connection, frames included."""
    def conv(vec):
        return None if vec is None else tuple(float(v) for v in vec)

    frames = tuple(
        SingularityFrame(float(f.location), f.kind, conv(f.w), conv(f.w_prime), conv(f.w_dprime))
        for f in conn.frames
    )
    return DConnection(conn.matrix.to_float(), frames, conn.infinity_type)


def infinity_data(a: RMatrix):
    """(A(inf), first subleading coefficient) of the expansion at infinity."""
    c0, c1 = a.infinity_expansion(1)
    return c0, c1


def scalar_inverse(rows):
    inv = linalg.inverse(rows)
    if inv is None:
        raise NonGeneric("scalar matrix not invertible")
    return inv


ZERO = SingularityKind.SIMPLE_ZERO
POLE = SingularityKind.SIMPLE_POLE
COALESCED = SingularityKind.COALESCED


def frac(v) -> Fraction:
    return Fraction(v)

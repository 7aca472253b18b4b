"""The three elementary isomonodromy shift moves and the Hirota check.

Every move returns `(new_connection, gauge, tau_ratio)` where the gauge R
satisfies A'(z) R(z) = R(z+1) A(z) identically and the ratio is the frame-
pinned first ratio of the tau function for that lattice step.

Frame transport conventions.  Vectors at untouched singularities move by
R(loc); covectors by R^{-t} evaluated at their home fiber (loc for poles and
coalesced points, loc+1 for the covector attached to a zero).  The moved
frames follow the explicit transport formulas of the shift calculus; the
covector of a moved zero is fixed in direction by the new left null space
and in scale by conservation of the pairing <dA/dz(a) w, w'>, which realizes
the dual-basis identification of the one-dimensional step spaces.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .connection import (
    DConnection,
    SingularityKind,
    left_kernel_dir,
    outer,
    pair,
    rank_one_factor,
    scalar_inverse,
)
from .errors import FrameKindMismatch, NonGeneric
from .field import is_zero
from .linalg import matvec
from .poly import Poly
from .ratfun import RatFun
from .rmatrix import RMatrix


def gauge_matrix(r0, pole_at) -> RMatrix:
    """R(z) = I + R0 / (z - pole_at)."""
    n = len(r0)
    den = Poly((-pole_at, 1))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = Poly((r0[i][j] - (pole_at if i == j else 0), Fraction(1) if i == j else Fraction(0)))
            row.append(RatFun(num, den))
        rows.append(row)
    return RMatrix(rows)


def conjugate(a: RMatrix, r: RMatrix, r_inv: RMatrix) -> RMatrix:
    return r.shift_arg(1) * a * r_inv


def _zero_pairing(a: RMatrix, loc, w, w_prime):
    """<dA/dz(loc) w, w'> -- nonzero exactly at a simple zero."""
    return pair(matvec(a.derivative().eval(loc), list(w)), w_prime)


def _moved_zero_covector(a_old, f_old, a_new, new_loc, w_new):
    s_old = _zero_pairing(a_old, f_old.location, f_old.w, f_old.w_prime)
    direction = left_kernel_dir(a_new, new_loc)
    s_dir = _zero_pairing(a_new, new_loc, w_new, direction)
    if is_zero(s_dir):
        raise NonGeneric("degenerate derivative pairing at %s" % (new_loc,))
    scl = s_old / s_dir
    return tuple(v * scl for v in direction)


def _transport_untouched(frame, r: RMatrix, r_inv: RMatrix):
    loc = frame.location
    r_inv_t = r_inv.transpose()
    if frame.kind is SingularityKind.SIMPLE_ZERO:
        w = tuple(matvec(r.eval(loc), list(frame.w)))
        wp = tuple(matvec(r_inv_t.eval(loc + 1), list(frame.w_prime)))
        return frame.moved(loc, w=w, w_prime=wp)
    if frame.kind is SingularityKind.SIMPLE_POLE:
        wp = tuple(matvec(r_inv_t.eval(loc), list(frame.w_prime)))
        return frame.moved(loc, w_prime=wp)
    m = r_inv_t.eval(loc)
    m_deriv = r_inv_t.derivative().eval(loc)
    w = tuple(matvec(r.eval(loc), list(frame.w)))
    wp = tuple(matvec(m, list(frame.w_prime)))
    wpp_vec = [a + b for a, b in zip(matvec(m, list(frame.w_dprime)),
                                     matvec(m_deriv, list(frame.w_prime)))]
    return frame.moved(loc, w=w, w_prime=wp, w_dprime=tuple(wpp_vec))


def _require_kind(frame, kind, what):
    if frame.kind is not kind:
        raise FrameKindMismatch("%s requires a %s frame, got %s"
                                % (what, kind.value, frame.kind.value))


def shift_simple_zero_pair(conn: DConnection, i: int, j: int):
    """Move zero i up by one and zero j down by one.

    Gauge: R(z) = I + R0/(z - u_i - 1) with R0 = (u_i - u_j + 1) w_j w_i'^t / <w_j, w_i'>.
    The tau first ratio is <w_j, w_i'> / (u_i + 1 - u_j), divided by the dual
    pairing <dA/dz(u_i) w_i, w_i'> so that the value does not depend on the
    scale of w_i'; for dual-normalized frames the divisor is 1 and the ratio
    is the textbook expression.
    """
    fi, fj = conn.frame(i), conn.frame(j)
    _require_kind(fi, SingularityKind.SIMPLE_ZERO, "zero pair shift")
    _require_kind(fj, SingularityKind.SIMPLE_ZERO, "zero pair shift")
    if i == j:
        raise FrameKindMismatch("zero pair shift needs two distinct frames")
    u_i, u_j = fi.location, fj.location
    p = pair(fj.w, fi.w_prime)
    if is_zero(p):
        raise NonGeneric("<w_j, w_i'> = 0: the deformation does not exist (tau vanishes)")
    delta_i = _zero_pairing(conn.matrix, u_i, fi.w, fi.w_prime)
    if is_zero(delta_i):
        raise NonGeneric("degenerate derivative pairing at %s" % (u_i,))
    r0 = [[v * (u_i - u_j + 1) / p for v in row] for row in outer(list(fj.w), list(fi.w_prime))]
    r = gauge_matrix(r0, u_i + 1)
    r_inv = gauge_matrix([[-v for v in row] for row in r0], u_j)
    a_new = conjugate(conn.matrix, r, r_inv)
    ratio = p / ((u_i + 1 - u_j) * delta_i)

    a_old = conn.matrix
    new_frames = []
    for k, f in enumerate(conn.frames):
        if k == j:
            loc = u_j - 1
            step = linalg.matmul(r.eval(loc), scalar_inverse(a_old.eval(loc)))
            w = tuple(matvec(step, list(f.w)))
            new_frames.append(f.moved(loc, w=w, w_prime=_moved_zero_covector(a_old, f, a_new, loc, w)))
        elif k == i:
            # inverse of the down rule: w = R^{-1}(u_i) A_new^{-1}(u_i) w_new
            loc = u_i + 1
            step = linalg.matmul(a_new.eval(u_i), r.eval(u_i))
            w = tuple(matvec(step, list(f.w)))
            new_frames.append(f.moved(loc, w=w, w_prime=_moved_zero_covector(a_old, f, a_new, loc, w)))
        else:
            new_frames.append(_transport_untouched(f, r, r_inv))
    return DConnection(a_new, tuple(new_frames), conn.infinity_type), r, ratio


def shift_zero_pole_pair(conn: DConnection, i: int, k: int, direction: int):
    """Move the zero at frame i and the pole at frame k together by +-1.

    Down direction: R(z) = I + R0/(z - b), R0 = (b - a) w w'^t / <w, w'>, with
    w the kernel vector at the zero and w' the residue row covector at the
    pole; the tau first ratio is <w, w'>/(a - b).  The up direction is the
    inverse move: its gauge is built from the residue column at the pole and
    the left null covector at the zero, and the ratio is the reciprocal of
    the down ratio evaluated at the shifted point.
    """
    fi, fk = conn.frame(i), conn.frame(k)
    _require_kind(fi, SingularityKind.SIMPLE_ZERO, "zero-pole shift")
    _require_kind(fk, SingularityKind.SIMPLE_POLE, "zero-pole shift")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    a_loc, b_loc = fi.location, fk.location
    a_old = conn.matrix

    if direction == -1:
        p = pair(fi.w, fk.w_prime)
        if is_zero(p):
            raise NonGeneric("<w, w'> = 0: the deformation does not exist (tau vanishes)")
        r0 = [[v * (b_loc - a_loc) / p for v in row] for row in outer(list(fi.w), list(fk.w_prime))]
        r = gauge_matrix(r0, b_loc)
        r_inv = gauge_matrix([[-v for v in row] for row in r0], a_loc)
        a_new = conjugate(a_old, r, r_inv)
        ratio = p / (a_loc - b_loc)
        new_frames = []
        for idx, f in enumerate(conn.frames):
            if idx == i:
                loc = a_loc - 1
                step = linalg.matmul(r.eval(loc), scalar_inverse(a_old.eval(loc)))
                w = tuple(matvec(step, list(f.w)))
                new_frames.append(f.moved(loc, w=w, w_prime=_moved_zero_covector(a_old, f, a_new, loc, w)))
            elif idx == k:
                loc = b_loc - 1
                step = linalg.matmul(linalg.transpose(r_inv.eval(loc)), linalg.transpose(a_old.eval(loc)))
                new_frames.append(f.moved(loc, w_prime=tuple(matvec(step, list(f.w_prime)))))
            else:
                new_frames.append(_transport_untouched(f, r, r_inv))
        return DConnection(a_new, tuple(new_frames), conn.infinity_type), r, ratio

    # direction +1: gauge from the residue column and the left null covector
    col, _ = rank_one_factor(a_old.residue_matrix(b_loc))
    y = left_kernel_dir(a_old, a_loc)
    p_up = pair(col, y)
    if is_zero(p_up):
        raise NonGeneric("up-shift pairing vanishes: deformation does not exist")
    r0 = [[-v * (b_loc - a_loc) / p_up for v in row] for row in outer(list(col), list(y))]
    r = gauge_matrix(r0, a_loc + 1)
    r_inv = gauge_matrix([[-v for v in row] for row in r0], b_loc + 1)
    a_new = conjugate(a_old, r, r_inv)
    new_frames = []
    for idx, f in enumerate(conn.frames):
        if idx == i:
            loc = a_loc + 1
            step = linalg.matmul(a_new.eval(a_loc), r.eval(a_loc))
            w = tuple(matvec(step, list(f.w)))
            new_frames.append(f.moved(loc, w=w, w_prime=_moved_zero_covector(a_old, f, a_new, loc, w)))
        elif idx == k:
            loc = b_loc + 1
            v1 = matvec(linalg.transpose(r_inv.eval(b_loc)), list(f.w_prime))
            xi = linalg.solve(linalg.transpose(a_new.eval(b_loc)), v1)
            if xi is None:
                raise NonGeneric("pole covector transport failed at %s" % (b_loc,))
            new_frames.append(f.moved(loc, w_prime=tuple(xi)))
        else:
            new_frames.append(_transport_untouched(f, r, r_inv))
    new_conn = DConnection(a_new, tuple(new_frames), conn.infinity_type)
    denom = pair(new_conn.frame(i).w, new_conn.frame(k).w_prime)
    if is_zero(denom):
        raise NonGeneric("transported pairing vanishes")
    return new_conn, r, (a_loc - b_loc) / denom


def shift_coalesced(conn: DConnection, i: int, direction: int):
    """Move a coalesced rank-one singularity by +-1.

    Down direction: R(z) = I + R0/(z - c) with R0 = w w'^t / <w, w''> and
    det R = 1; the tau first ratio is <w, w''>.  The up direction inverts
    the move; its ratio is the reciprocal of the pairing at the new point.
    """
    f = conn.frame(i)
    _require_kind(f, SingularityKind.COALESCED, "coalesced shift")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    c = f.location
    a_old = conn.matrix

    if direction == -1:
        denom = pair(f.w, f.w_dprime)
        if is_zero(denom):
            raise NonGeneric("<w, w''> = 0: the deformation does not exist (tau vanishes)")
        r0 = [[v / denom for v in row] for row in outer(list(f.w), list(f.w_prime))]
        r = gauge_matrix(r0, c)
        r_inv = gauge_matrix([[-v for v in row] for row in r0], c)
        a_new = conjugate(a_old, r, r_inv)
        mfun = (a_old * r_inv).transpose()      # R^{-t}(z) A^t(z)
        loc = c - 1
        m_val = mfun.eval(loc)
        m_der = mfun.derivative().eval(loc)
        step = linalg.matmul(r.eval(loc), scalar_inverse(a_old.eval(loc)))
        w = tuple(matvec(step, list(f.w)))
        wp = tuple(matvec(m_val, list(f.w_prime)))
        wpp = tuple(x + y for x, y in zip(matvec(m_val, list(f.w_dprime)),
                                          matvec(m_der, list(f.w_prime))))
        new_frames = [
            (fr.moved(loc, w=w, w_prime=wp, w_dprime=wpp) if idx == i
             else _transport_untouched(fr, r, r_inv))
            for idx, fr in enumerate(conn.frames)
        ]
        return DConnection(a_new, tuple(new_frames), conn.infinity_type), r, denom

    # direction +1: S0 = Res_c(A) . (regular part of A at c)^{-1}, R = I - S0/(z-c-1)
    res = a_old.residue_matrix(c)
    reg_inv = scalar_inverse(a_old.regular_part_at(c))
    s0 = linalg.matmul(res, reg_inv)
    r = gauge_matrix([[-v for v in row] for row in s0], c + 1)
    r_inv = gauge_matrix(s0, c + 1)
    a_new = conjugate(a_old, r, r_inv)
    loc = c + 1
    step = linalg.matmul(a_new.eval(c), r.eval(c))
    w = tuple(matvec(step, list(f.w)))
    tfun = (a_new * r).transpose()              # T(z) = R^t(z) A_new^t(z)
    t_val = tfun.eval(c)
    t_der = tfun.derivative().eval(c)
    wp = linalg.solve(t_val, list(f.w_prime))
    if wp is None:
        raise NonGeneric("covector transport failed at %s" % (c,))
    rhs = [x - y for x, y in zip(f.w_dprime, matvec(t_der, wp))]
    wpp = linalg.solve(t_val, rhs)
    if wpp is None:
        raise NonGeneric("second covector transport failed at %s" % (c,))
    new_frames = [
        (fr.moved(loc, w=w, w_prime=tuple(wp), w_dprime=tuple(wpp)) if idx == i
         else _transport_untouched(fr, r, r_inv))
        for idx, fr in enumerate(conn.frames)
    ]
    new_conn = DConnection(a_new, tuple(new_frames), conn.infinity_type)
    denom = pair(new_conn.frame(i).w, new_conn.frame(i).w_dprime)
    if is_zero(denom):
        raise NonGeneric("transported pairing <w, w''> vanishes")
    return new_conn, r, 1 / denom


def gauge_residual(a_new: RMatrix, r: RMatrix, a_old: RMatrix) -> RMatrix:
    """A'(z) R(z) - R(z+1) A(z); identically zero for a valid move."""
    return a_new * r - r.shift_arg(1) * a_old


def hirota_check(conn: DConnection, index_i, index_j):
    """Composite shift ratio versus the determinant of elementary ratios.

    The left side composes the moves (i_1, j_1), (i_2, j_2), ... in the given
    order, which is the lift convention also used for the right side; rows of
    the determinant follow index_i, columns follow index_j.
    """
    index_i, index_j = list(index_i), list(index_j)
    if len(index_i) != len(index_j):
        raise ValueError("index sets must have equal cardinality")
    if set(index_i) & set(index_j):
        raise ValueError("index sets must be disjoint")
    for idx in index_i + index_j:
        _require_kind(conn.frame(idx), SingularityKind.SIMPLE_ZERO, "hirota check")
    rhs_rows = []
    for ii in index_i:
        fi = conn.frame(ii)
        delta_i = _zero_pairing(conn.matrix, fi.location, fi.w, fi.w_prime)
        row = []
        for jj in index_j:
            fj = conn.frame(jj)
            row.append(pair(fj.w, fi.w_prime) / ((fi.location + 1 - fj.location) * delta_i))
        rhs_rows.append(row)
    rhs = linalg.det(rhs_rows) if rhs_rows else Fraction(1)
    lhs = Fraction(1)
    cur = conn
    for ii, jj in zip(index_i, index_j):
        cur, _, ratio = shift_simple_zero_pair(cur, ii, jj)
        lhs = lhs * ratio
    return lhs, rhs

"""Continuum limit: rank-one families, the Schlesinger system, and sweeps.

The discrete side is exact: for each epsilon the pair-shift machinery runs in
rational arithmetic and the engine value is compared with the closed-form
ratio of pairings.  Only the convergence-rate bookkeeping uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .connection import DConnection, pair, pole_frame, zero_frame
from .builders import rank_one_gauge_factor
from .errors import CoincidentPoints, NonGeneric
from .field import is_integer
from .ledger import TauLedger, Walker, tau_second_ratio
from .rmatrix import RMatrix


@dataclass(frozen=True)
class RankOneSite:
    y: Fraction                   # limit location
    alpha: Fraction               # zero offset: a = alpha + y/eps
    beta: Fraction                # pole offset: b = beta + y/eps
    w: tuple
    w_prime: tuple

    def __post_init__(self):
        if pair(self.w, self.w_prime) == 0:
            raise NonGeneric("site pairing <w, w'> vanishes")

    @property
    def b_matrix(self):
        scale = (self.beta - self.alpha) / pair(self.w, self.w_prime)
        return [[scale * a * b for b in self.w_prime] for a in self.w]


@dataclass(frozen=True)
class SchlesingerData:
    sites: tuple

    def __post_init__(self):
        ys = [s.y for s in self.sites]
        if len(set(ys)) != len(ys):
            raise CoincidentPoints("limit locations must be pairwise distinct")

    @property
    def b_matrices(self):
        return [s.b_matrix for s in self.sites]


def _commutator(a, b):
    return [[x - y for x, y in zip(r1, r2)]
            for r1, r2 in zip(linalg.matmul(a, b), linalg.matmul(b, a))]


def _trace_product(a, b):
    return sum(linalg.matmul(a, b)[i][i] for i in range(len(a)))


def schlesinger_rhs(data: SchlesingerData, i: int, j: int):
    """dB_i/dy_j: commutator over separation for i != j, minus the sum on i = j."""
    bs = data.b_matrices
    ys = [s.y for s in data.sites]
    n = len(bs)
    size = len(bs[0])
    if i != j:
        return [[v / (ys[i] - ys[j]) for v in row] for row in _commutator(bs[i], bs[j])]
    out = [[Fraction(0)] * size for _ in range(size)]
    for k in range(n):
        if k == i:
            continue
        comm = _commutator(bs[i], bs[k])
        for r in range(size):
            for c in range(size):
                out[r][c] -= comm[r][c] / (ys[i] - ys[k])
    return out


def tau_curvature(data: SchlesingerData, i: int, j: int):
    """Second logarithmic derivative of the limit tau function."""
    bs = data.b_matrices
    ys = [s.y for s in data.sites]
    if i != j:
        return _trace_product(bs[i], bs[j]) / (ys[i] - ys[j]) ** 2
    total = Fraction(0)
    for k in range(len(bs)):
        if k != i:
            total -= _trace_product(bs[i], bs[k]) / (ys[i] - ys[k]) ** 2
    return total


def site_locations(sites, eps):
    a = [s.alpha + s.y / eps for s in sites]
    b = [s.beta + s.y / eps for s in sites]
    return a, b


def build_connection_family(sites, eps) -> DConnection:
    """A(z; eps) with zeroes a_i, poles b_i and A(inf) = I, frames attached.

    Built as the recursive product of rank-one gauge factors; by construction
    the kernel at a_i and the residue row at b_i are spanned by the original
    site vectors, which the attached frames reuse verbatim.
    """
    a_locs, b_locs = site_locations(sites, eps)
    locs = a_locs + b_locs
    for s_idx in range(len(locs)):
        for t_idx in range(s_idx + 1, len(locs)):
            if is_integer(locs[s_idx] - locs[t_idx]):
                raise NonGeneric("epsilon %s puts singularities at integer distance" % (eps,))

    def rec(data):
        if not data:
            return RMatrix.identity(len(sites[0].w))
        a_n, b_n, w_n, wp_n = data[-1]
        factor = rank_one_gauge_factor(a_n, b_n, w_n, wp_n)
        factor_inv_t = factor.inverse().transpose()
        modified = []
        for a_i, b_i, w_i, wp_i in data[:-1]:
            modified.append((a_i, b_i,
                             tuple(linalg.matvec(factor.eval(a_i), list(w_i))),
                             tuple(linalg.matvec(factor_inv_t.eval(b_i), list(wp_i)))))
        return rec(modified) * factor

    a = rec([(a_locs[k], b_locs[k], sites[k].w, sites[k].w_prime)
             for k in range(len(sites))])
    frames = [zero_frame(a, a_locs[k], w=sites[k].w) for k in range(len(sites))]
    frames += [pole_frame(a, b_locs[k], w_prime=sites[k].w_prime) for k in range(len(sites))]
    return DConnection(a, tuple(frames))


def closed_form_second_ratio(conn: DConnection, i: int, j: int, n_sites: int):
    """Ratio-of-pairings expression for the engine's two-step second ratio."""
    fi_zero, fi_pole = conn.frame(i), conn.frame(n_sites + i)
    a_i, b_i = fi_zero.location, fi_pole.location
    w_i, wp_i = fi_zero.w, fi_pole.w_prime
    denom = pair(w_i, wp_i)
    if denom == 0:
        raise NonGeneric("site pairing vanishes")
    if i != j:
        fj_zero, fj_pole = conn.frame(j), conn.frame(n_sites + j)
        r_j = rank_one_gauge_factor(fj_zero.location, fj_pole.location, fj_zero.w, fj_pole.w_prime)
        r_j_inv_t = r_j.inverse().transpose()
        num = pair(linalg.matvec(r_j.eval(a_i), list(w_i)),
                   linalg.matvec(r_j_inv_t.eval(b_i), list(wp_i)))
        return num / denom
    r_i = rank_one_gauge_factor(a_i, b_i, w_i, wp_i)
    r_i_inv_t = r_i.inverse().transpose()
    a_mat = conn.matrix
    left = linalg.matvec(linalg.matmul(r_i.eval(a_i - 1),
                                       linalg.inverse(a_mat.eval(a_i - 1))), list(w_i))
    right = linalg.matvec(linalg.matmul(r_i_inv_t.eval(b_i - 1),
                                        linalg.transpose(a_mat.eval(b_i - 1))), list(wp_i))
    return pair(left, right) / denom


def engine_second_ratio(conn: DConnection, i: int, j: int, n_sites: int):
    """D^2_{i,j} tau from executed pair shifts; returns (value, walker)."""
    walker = Walker(conn, TauLedger(len(conn.frames)))
    if i == j:
        walker.zero_pole(i, n_sites + i, -1)
        walker.zero_pole(i, n_sites + i, -1)
        s = [0] * len(conn.frames)
        s[i] = s[n_sites + i] = 1
        base = tuple(-2 * v for v in s)
        return tau_second_ratio(walker.ledger, s, s, base=base), walker
    walker.zero_pole(j, n_sites + j, -1)
    walker.zero_pole(i, n_sites + i, -1)
    walker.zero_pole(j, n_sites + j, +1)
    s = [0] * len(conn.frames)
    s[i] = s[n_sites + i] = 1
    t = [0] * len(conn.frames)
    t[j] = t[n_sites + j] = 1
    base = tuple(-a - b for a, b in zip(s, t))
    return tau_second_ratio(walker.ledger, s, t, base=base), walker


def _mat_sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _max_abs(rows):
    return max(abs(float(v)) for row in rows for v in row)


def default_probe(sites):
    """A point at distance at least one from every limit location."""
    return max(s.y for s in sites) + 2


def expansion_residual(sites, conn: DConnection, eps, probe):
    """Max-entry norm of A(probe/eps) - I - eps * sum B_k/(probe - y_k)."""
    value = conn.matrix.eval(probe / eps)
    n = conn.size
    target = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for site in sites:
        b = site.b_matrix
        for r in range(n):
            for c in range(n):
                target[r][c] += eps * b[r][c] / (probe - site.y)
    return _max_abs(_mat_sub(value, target))


def difference_quotient_residual(sites, conn: DConnection, shifted: DConnection,
                                 i: int, eps, probe):
    """eq. of motion residual for the pair-i shift at the probe point."""
    z0 = probe / eps
    diff = _mat_sub(conn.matrix.eval(z0), shifted.matrix.eval(z0))
    n = conn.size
    data = SchlesingerData(tuple(sites))
    bs = data.b_matrices
    ys = [s.y for s in sites]
    target = [[bs[i][r][c] / (probe - ys[i]) ** 2 for c in range(n)] for r in range(n)]
    for j in range(len(sites)):
        if j == i:
            continue
        comm = _commutator(bs[i], bs[j])
        for r in range(n):
            for c in range(n):
                target[r][c] -= comm[r][c] / ((probe - ys[i]) * (probe - ys[j]))
    scaled = [[v / eps**2 for v in row] for row in diff]
    return _max_abs(_mat_sub(scaled, target))


@dataclass(frozen=True)
class SweepRow:
    eps: Fraction
    measured: Fraction            # (D^2 - 1) / eps^2, exact
    target: Fraction
    error: float
    ratio: float                  # error / previous error, nan on the first row
    lim1_residual: float
    lim1_ratio: float
    lim2_residual: float
    engine_matches_closed_form: bool


def limit_sweep(sites, i: int, j: int, eps_list, probe=None):
    """Per-epsilon exact measurements against the Schlesinger targets."""
    sites = tuple(sites)
    data = SchlesingerData(sites)
    target = tau_curvature(data, i, j)
    if probe is None:
        probe = default_probe(sites)
    rows = []
    prev_err = prev_lim1 = None
    for eps in eps_list:
        conn = build_connection_family(sites, eps)
        d2, walker = engine_second_ratio(conn, i, j, len(sites))
        closed = closed_form_second_ratio(conn, i, j, len(sites))
        measured = (d2 - 1) / eps**2
        err = abs(float(measured - target))
        lim1 = expansion_residual(sites, conn, eps, probe)
        w = Walker(conn)
        w.zero_pole(i, len(sites) + i, -1)
        lim2 = difference_quotient_residual(sites, conn, w.conn, i, eps, probe)
        rows.append(SweepRow(
            eps=eps, measured=measured, target=target, error=err,
            ratio=(err / prev_err if prev_err not in (None, 0.0) else float("nan")),
            lim1_residual=lim1,
            lim1_ratio=(lim1 / prev_lim1 if prev_lim1 not in (None, 0.0) else float("nan")),
            lim2_residual=lim2,
            engine_matches_closed_form=(d2 == closed),
        ))
        prev_err, prev_lim1 = err, lim1
    return rows


def halving_eps(start_power: int, stop_power: int):
    return [Fraction(1, 2**k) for k in range(start_power, stop_power + 1)]

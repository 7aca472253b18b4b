"""The dPV and dPVI recurrences, their closed-form tau second ratios, and the
Hahn parameter mapping.

A step always shifts (a_1, b_1) down by one and (d_1, d_2) up by one, so the
expansion data at infinity stay fixed.  Both tau theorems are evaluated
through the two displayed closed forms and cross-checked against each other;
a disagreement raises InternalMismatch because it can only come from an
inconsistent orbit or an implementation fault.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from . import linalg
from .connection import DConnection, attach_frames
from .errors import InternalMismatch, SingularStep
from .field import is_zero, scalars_close
from .poly import Poly, from_roots
from .ratfun import RatFun
from .rmatrix import RMatrix


def _nonzero(value, what):
    if is_zero(value):
        raise SingularStep("vanishing %s" % what)
    return value


def _agree(x, y) -> bool:
    if isinstance(x, float) or isinstance(y, float):
        return scalars_close(x, y, 1e-9)
    return x == y


@dataclass(frozen=True)
class DPVState:
    q: Fraction
    p: Fraction
    a1: Fraction
    a2: Fraction
    b1: Fraction
    b2: Fraction
    d1: Fraction
    d2: Fraction
    rho1: Fraction
    rho2: Fraction

    def __post_init__(self):
        total = self.d1 + self.d2 + self.a1 + self.a2 + self.b1 + self.b2
        if not is_zero(total):
            raise ValueError("parameter sum d1+d2+a1+a2+b1+b2 = %s, must vanish" % (total,))


@dataclass(frozen=True)
class DPVIState:
    q: Fraction
    r: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    d1: Fraction
    d2: Fraction

    def __post_init__(self):
        total = (self.d1 + self.d2 + self.a1 + self.a2 + self.a3
                 + self.b1 + self.b2 + self.b3)
        if not is_zero(total):
            raise ValueError("parameter sum over d, a, b = %s, must vanish" % (total,))


def _shift_params(state):
    return dict(a1=state.a1 - 1, b1=state.b1 - 1, d1=state.d1 + 1, d2=state.d2 + 1)


def dpv_step(state: DPVState) -> DPVState:
    """One unit shift of the two-pole family."""
    _nonzero(state.p, "p")
    _nonzero(state.p - state.rho1, "p - rho1")
    _nonzero(state.p - state.rho2, "p - rho2")
    q_new = (state.a2 + state.b2 - state.q
             + state.rho1 * (state.d1 + state.a2 + state.b2) / (state.p - state.rho1)
             + state.rho2 * (state.d2 + state.a2 + state.b2 + 1) / (state.p - state.rho2))
    _nonzero(q_new - state.a2, "q' - a2")
    _nonzero(q_new - state.b2, "q' - b2")
    p_new = (state.rho1 * state.rho2 * (q_new - state.a1 + 1) * (q_new - state.b1 + 1)
             / (state.p * (q_new - state.a2) * (q_new - state.b2)))
    return replace(state, q=q_new, p=p_new, **_shift_params(state))


def dpv_step_back(state: DPVIState) -> DPVState:
    """Inverse of dpv_step, solved from the same two equations."""
    prev = dict(a1=state.a1 + 1, b1=state.b1 + 1, d1=state.d1 - 1, d2=state.d2 - 1)
    a1p, b1p, d1p, d2p = prev["a1"], prev["b1"], prev["d1"], prev["d2"]
    _nonzero(state.p, "p'")
    denom = state.p * (state.q - state.a2) * (state.q - state.b2)
    _nonzero(denom, "p' (q'-a2)(q'-b2)")
    p_old = state.rho1 * state.rho2 * (state.q - a1p + 1) * (state.q - b1p + 1) / denom
    _nonzero(p_old - state.rho1, "p - rho1")
    _nonzero(p_old - state.rho2, "p - rho2")
    q_old = (state.a2 + state.b2 - state.q
             + state.rho1 * (d1p + state.a2 + state.b2) / (p_old - state.rho1)
             + state.rho2 * (d2p + state.a2 + state.b2 + 1) / (p_old - state.rho2))
    return replace(state, q=q_old, p=p_old, **prev)


def dpvi_step(state: DPVIState) -> DPVIState:
    """One unit shift of the three-pole family."""
    _nonzero(state.q + state.r, "q + r")
    den1 = ((state.r + 1 - state.a1 - state.b1 - state.d1)
            * (state.r - state.a1 - state.b1 - state.d2))
    _nonzero(den1, "(r+1-a1-b1-d1)(r-a1-b1-d2)")
    rhs1 = ((state.r + state.a2) * (state.r + state.a3)
            * (state.r + state.b2) * (state.r + state.b3)) / den1
    q_new = rhs1 / (state.q + state.r) - state.r
    _nonzero(q_new + state.r, "q' + r")
    den2 = (q_new - state.a1 + 1) * (q_new - state.b1 + 1)
    _nonzero(den2, "(q'-a1+1)(q'-b1+1)")
    rhs2 = ((q_new - state.a2) * (q_new - state.a3)
            * (q_new - state.b2) * (q_new - state.b3)) / den2
    r_new = rhs2 / (q_new + state.r) - q_new
    return replace(state, q=q_new, r=r_new, **_shift_params(state))


def dpvi_step_back(state: DPVIState) -> DPVIState:
    """Inverse of dpvi_step: recover (q, r) at the unshifted parameters."""
    prev = dict(a1=state.a1 + 1, b1=state.b1 + 1, d1=state.d1 - 1, d2=state.d2 - 1)
    a1p, b1p, d1p, d2p = prev["a1"], prev["b1"], prev["d1"], prev["d2"]
    den2 = (state.q - a1p + 1) * (state.q - b1p + 1)
    _nonzero(den2, "(q'-a1+1)(q'-b1+1)")
    rhs2 = ((state.q - state.a2) * (state.q - state.a3)
            * (state.q - state.b2) * (state.q - state.b3)) / den2
    _nonzero(state.q + state.r, "q' + r'")
    r_old = rhs2 / (state.q + state.r) - state.q
    _nonzero(state.q + r_old, "q' + r")
    den1 = (r_old + 1 - a1p - b1p - d1p) * (r_old - a1p - b1p - d2p)
    _nonzero(den1, "(r+1-a1-b1-d1)(r-a1-b1-d2)")
    rhs1 = ((r_old + state.a2) * (r_old + state.a3)
            * (r_old + state.b2) * (r_old + state.b3)) / den1
    q_old = rhs1 / (state.q + r_old) - r_old
    return replace(state, q=q_old, r=r_old, **prev)


def tau_second_dpv(state: DPVState, stepped: DPVState, stepped_twice: DPVState = None):
    """tau'' tau / tau'^2 via both closed forms; they must agree exactly."""
    if stepped_twice is not None:
        advanced = dpv_step(stepped)
        if not (_agree(advanced.q, stepped_twice.q) and _agree(advanced.p, stepped_twice.p)):
            raise InternalMismatch("states do not form a dpv orbit")
    a1, a2, b1, b2 = state.a1, state.a2, state.b1, state.b2
    rho1, rho2, d1 = state.rho1, state.rho2, state.d1
    qp, pp = stepped.q, stepped.p
    base = _nonzero((a2 - a1 + 1) * (b2 - b1 + 1), "(a2-a1+1)(b2-b1+1)")
    _nonzero(pp, "p'")
    expr1 = ((pp - rho1)
             * (rho1 * (qp - a1 + 1) * (qp - b1 + 1) - pp * (qp - a2) * (qp - b2))
             / (rho1 * base * pp))
    expr2 = ((pp - rho1) * (state.p - rho2) * (qp - a2) * (qp - b2)
             / (rho1 * rho2 * base))
    if not _agree(expr1, expr2):
        raise InternalMismatch("dpv tau expressions disagree: %s vs %s" % (expr1, expr2))
    return expr1


def tau_second_dpvi(state: DPVIState, stepped: DPVIState, stepped_twice: DPVIState = None):
    """tau'' tau / tau'^2 via both closed forms; they must agree exactly."""
    if stepped_twice is not None:
        advanced = dpvi_step(stepped)
        if not (_agree(advanced.q, stepped_twice.q) and _agree(advanced.r, stepped_twice.r)):
            raise InternalMismatch("states do not form a dpvi orbit")
    a1, a2, a3 = state.a1, state.a2, state.a3
    b1, b2, b3 = state.b1, state.b2, state.b3
    d1, d2 = state.d1, state.d2
    qp, rp = stepped.q, stepped.r
    base = _nonzero((a1 - a2 - 1) * (a1 - a3 - 1) * (b1 - b2 - 1) * (b1 - b3 - 1),
                    "(a1-a2-1)(a1-a3-1)(b1-b2-1)(b1-b3-1)")
    _nonzero(qp + rp, "q' + r'")
    expr1 = ((rp - a1 - b1 - d2 + 1) / (qp + rp)
             * ((qp - a2) * (qp - a3) * (qp - b2) * (qp - b3)
                - (qp - a1 + 1) * (qp - b1 + 1) * (qp + d1 + a1 + b1 - 1) * (qp + rp))
             / base)
    expr2 = ((rp - a1 - b1 - d2 + 1) * (state.r - a1 - b1 - d1 + 1)
             * (qp - a1 + 1) * (qp - b1 + 1) / base)
    if not _agree(expr1, expr2):
        raise InternalMismatch("dpvi tau expressions disagree: %s vs %s" % (expr1, expr2))
    return expr1


def hahn_dpvi_params(N, M, alpha, beta, s):
    """Parameter pack placing the one-segment gap family on the dPVI orbit."""
    N, M = Fraction(N), Fraction(M)
    alpha, beta, s = Fraction(alpha), Fraction(beta), Fraction(s)
    b_sum = s + (-alpha - 1) + (beta + M)
    return dict(
        a1=s, a2=Fraction(-1), a3=M,
        b1=s, b2=-alpha - 1, b3=beta + M,
        d1=-alpha - N - b_sum, d2=beta + N - b_sum,
    )


def hahn_dpvi_state(N, M, alpha, beta, s, q, r) -> DPVIState:
    return DPVIState(q=q, r=r, **hahn_dpvi_params(N, M, alpha, beta, s))


# --- canonical connection carrying a dPV state --------------------------------

def build_dpv_connection(state: DPVState) -> DConnection:
    """Rank-two connection in the canonical shape realizing the given state.

    The numerator is pinned by (q, p) and the singularity structure: the
    remaining three coefficients solve a linear system matching det to
    rho1 rho2 (z-a1)(z-a2)(z-b1)(z-b2).
    """
    q, p = state.q, state.p
    rho1, rho2, d1, d2 = state.rho1, state.rho2, state.d1, state.d2
    value = p * (q - state.a2) * (q - state.b2)
    p11 = Poly((value - rho1 * q * q - rho1 * d1 * q, rho1 * d1, rho1))
    p21 = Poly((-q, 1))
    target = from_roots([state.a1, state.a2, state.b1, state.b2]).scale(rho1 * rho2)
    known = p11 * Poly((0, rho2 * d2, rho2))
    # unknowns (e20, alpha, beta): coefficients of z^2, z, 1 in
    # known + e20 p11 - (alpha z + beta)(z - q) - target = 0
    rows = [
        [p11.coeff(2), Fraction(-1), Fraction(0)],
        [p11.coeff(1), q, Fraction(-1)],
        [p11.coeff(0), Fraction(0), q],
    ]
    rhs = [target.coeff(k) - known.coeff(k) for k in (2, 1, 0)]
    for k in (4, 3):
        if known.coeff(k) != target.coeff(k):
            raise InternalMismatch("degree-%d coefficient mismatch in reconstruction" % k)
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise SingularStep("coefficient system for the connection is singular")
    e20, alpha, beta = sol
    p22 = Poly((e20, rho2 * d2, rho2))
    p12 = Poly((beta, alpha))
    den = from_roots([state.b1, state.b2])
    a = RMatrix([[RatFun(p11, den), RatFun(p12, den)],
                 [RatFun(p21, den), RatFun(p22, den)]])
    return attach_frames(a, zeros=[state.a1, state.a2], poles=[state.b1, state.b2])

"""End-to-end pipeline for the one-segment gap family of the Hahn ensemble.

For each cutoff s the probability that all particles sit in {0..s} is
computed three independent ways -- determinantal block, configuration sum,
and the isomonodromy engine running on the trivialized connection -- and the
coordinate orbit from per-s trivializations is checked against the dPVI
recurrence and its closed-form tau second ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import BundleModel, canonical_dpvi_form, dpvi_coords, frame_matrix, is_trivial
from .connection import DConnection, coalesced_frame
from .ensembles import (
    EnsembleSpec,
    brute_force_gap,
    gap_probability,
    gram_kernel,
    parse_ratfun,
    unroll_ratio_weights,
)
from .errors import DtauError, InfeasibleSize, SingularStep
from .field import fmt_scalar
from .painleve import DPVIState, dpvi_step, dpvi_step_back, hahn_dpvi_params, tau_second_dpvi
from .ratfun import RatFun
from .rmatrix import RMatrix
from .shifts import shift_coalesced


@dataclass(frozen=True)
class HahnFamily:
    N: int
    M: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not (self.N >= 1 and self.M >= self.N):
            raise ValueError("need 1 <= N <= M")

    def weight_ratios(self):
        pi1 = parse_ratfun("(z+1+a)/(z+1)".replace("a", "(%s)" % self.alpha))
        pi2 = parse_ratfun("(z-M)/(z-M-b)".replace("M", "(%s)" % self.M)
                           .replace("b", "(%s)" % self.beta))
        return pi1, pi2

    def spec(self) -> EnsembleSpec:
        pts = tuple(Fraction(k) for k in range(self.M + 1))
        pi1, pi2 = self.weight_ratios()
        return EnsembleSpec(
            points=pts,
            omega1=(unroll_ratio_weights(pts, Fraction(1), pi1),),
            omega2=(unroll_ratio_weights(pts, Fraction(1), pi2),),
            n=(self.N,), m=(self.N,),
        )

    def diag_connection(self) -> RMatrix:
        pi1, pi2 = self.weight_ratios()
        return RMatrix([[RatFun.const(1) / pi1, RatFun.zero()],
                        [RatFun.zero(), pi2]])

    def params(self, s) -> dict:
        return hahn_dpvi_params(self.N, self.M, self.alpha, self.beta, s)

    def support(self, s):
        return tuple(Fraction(k) for k in range(int(s) + 1))


def trivialization_coords(family: HahnFamily, s):
    """(q_s, r_s) from a fresh bundle trivialization at cutoff s."""
    params = family.params(s)
    model = BundleModel(family.spec(), family.support(s))
    phi = frame_matrix(model)
    a_y = phi.shift_arg(1).inverse() * family.diag_connection() * phi
    b_sum = params["b1"] + params["b2"] + params["b3"]
    _, p_entries = canonical_dpvi_form(
        a_y,
        [params["b1"], params["b2"], params["b3"]],
        (params["d1"] + b_sum, params["d2"] + b_sum),
    )
    return dpvi_coords(p_entries, params["a2"], params["a3"], params["b2"], params["b3"])


def engine_second_ratios(family: HahnFamily, spec: EnsembleSpec = None):
    """D^2 tau at each level from coalesced shifts on one trivialized frame.

    Returns {s: tau(s-2) tau(s) / tau(s-1)^2} for s in [N+1, M-1], measured
    by chaining the rank-one singularity at z = s downward from s = M-1.
    """
    if spec is None:
        spec = family.spec()
    start = family.M - 1
    if start < family.N:
        return {}
    model = BundleModel(spec, family.support(start))
    phi = frame_matrix(model)
    a_y = phi.shift_arg(1).inverse() * family.diag_connection() * phi
    conn = DConnection(a_y, (coalesced_frame(a_y, Fraction(start)),))
    first_ratio = {}
    cur = conn
    for s in range(start, family.N - 2, -1):
        try:
            cur, _, ratio = shift_coalesced(cur, 0, -1)
        except DtauError:
            # the pairing vanishes where tau hits zero; the chain ends there
            break
        first_ratio[s] = ratio
    return {s: first_ratio[s - 1] / first_ratio[s]
            for s in first_ratio if s - 1 in first_ratio}


@dataclass
class HahnRow:
    s: int
    gap: Fraction = None
    brute: Fraction = None
    trivial: bool = None
    q: Fraction = None
    r: Fraction = None
    q_rec: Fraction = None
    r_rec: Fraction = None
    step_ok: bool = None
    d2_gap: Fraction = None
    d2_formula: Fraction = None
    d2_engine: Fraction = None
    status: str = "pass"
    note: str = ""

    def as_record(self):
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return fmt_scalar(v)

        return {
            "s": str(self.s), "gap": fmt(self.gap), "brute": fmt(self.brute),
            "trivial": fmt(self.trivial), "q": fmt(self.q), "r": fmt(self.r),
            "q_rec": fmt(self.q_rec), "r_rec": fmt(self.r_rec),
            "step_ok": fmt(self.step_ok), "d2_gap": fmt(self.d2_gap),
            "d2_formula": fmt(self.d2_formula), "d2_engine": fmt(self.d2_engine),
            "status": self.status, "note": self.note,
        }


HAHN_COLUMNS = ["s", "gap", "brute", "trivial", "q", "r", "q_rec", "r_rec",
                "step_ok", "d2_gap", "d2_formula", "d2_engine", "status", "note"]


def hahn_report(family: HahnFamily, brute_cap: int = 10**7, with_engine: bool = True):
    """Rows for s = N-2 .. M with all cross-checks; failures marked per row."""
    spec = family.spec()
    km = gram_kernel(spec)
    n_low = family.N - 2
    gaps = {s: gap_probability(spec, family.support(s), km)
            for s in range(n_low, family.M + 1)}

    coords = {}
    notes = {}
    for s in range(family.N - 1, family.M):
        try:
            coords[s] = trivialization_coords(family, s)
        except DtauError as exc:
            coords[s] = None
            notes[s] = type(exc).__name__

    engine = engine_second_ratios(family, spec) if with_engine else {}

    rows = []
    for s in range(n_low, family.M + 1):
        row = HahnRow(s=s, gap=gaps.get(s))
        try:
            row.brute = brute_force_gap(spec, family.support(s), cap=brute_cap)
        except InfeasibleSize:
            row.brute = None
        if row.brute is not None and row.brute != row.gap:
            row.status = "fail"
            row.note = "brute force disagrees"
        if family.N - 1 <= s <= family.M:
            row.trivial = is_trivial(BundleModel(spec, family.support(s)))
        if s == n_low:
            row.status = "tau-zero" if row.gap == 0 else row.status
            row.note = "forced nontrivial below the orbit"
            rows.append(row)
            continue
        if coords.get(s) is not None:
            row.q, row.r = coords[s]
        elif s in notes:
            row.status = "singular"
            row.note = notes[s]

        # recurrence prediction for this row from the trivialization above it
        if coords.get(s + 1) is not None:
            st_up = DPVIState(q=coords[s + 1][0], r=coords[s + 1][1],
                              **family.params(s + 1))
            try:
                stepped = dpvi_step(st_up)
                row.q_rec, row.r_rec = stepped.q, stepped.r
                if row.q is not None:
                    row.step_ok = (row.q_rec, row.r_rec) == (row.q, row.r)
                    if not row.step_ok:
                        row.status = "fail"
                        row.note = "recurrence disagrees with trivialization"
            except SingularStep as exc:
                row.status = "singular" if row.status == "pass" else row.status
                row.note = (row.note + "; " if row.note else "") + str(exc)

        # tau second ratio at level s needs D(s-2) and coords at s, s-1
        if s - 2 >= n_low and gaps.get(s - 1) not in (None, 0):
            row.d2_gap = gaps[s - 2] * gaps[s] / gaps[s - 1] ** 2
            state_s = None
            if coords.get(s) is not None:
                state_s = DPVIState(q=coords[s][0], r=coords[s][1], **family.params(s))
            elif s == family.M and coords.get(s - 1) is not None:
                prev = DPVIState(q=coords[s - 1][0], r=coords[s - 1][1],
                                 **family.params(s - 1))
                try:
                    state_s = dpvi_step_back(prev)
                    row.note = (row.note + "; " if row.note else "") + "state via inverse step"
                except SingularStep:
                    state_s = None
            if state_s is not None and coords.get(s - 1) is not None:
                stepped = DPVIState(q=coords[s - 1][0], r=coords[s - 1][1],
                                    **family.params(s - 1))
                try:
                    row.d2_formula = tau_second_dpvi(state_s, stepped)
                    if row.d2_formula != row.d2_gap:
                        row.status = "fail"
                        row.note = "tau theorem disagrees with gap data"
                except SingularStep as exc:
                    row.status = "singular" if row.status == "pass" else row.status
                    row.note = (row.note + "; " if row.note else "") + str(exc)
            if s in engine:
                row.d2_engine = engine[s]
                if row.d2_engine != row.d2_gap:
                    row.status = "fail"
                    row.note = "engine chain disagrees with gap data"
        rows.append(row)
    return rows


def report_passes(rows) -> bool:
    return all(row.status != "fail" for row in rows)

"""Tau bookkeeping along executed shift paths.

The ledger tracks the lattice position as integer offsets per frame and the
accumulated tau value (product of first ratios, with tau = 1 at the start).
Second ratios read off stored corner values and are therefore independent of
frame scalings, which only reweight the first ratios.

Sign convention: a composite shift is always decomposed into the recorded
sequence of generators.  Two decompositions of the same lattice vector agree
up to (-1) to the number of weighted transpositions between them, each swap
of generators for frames i and j contributing kappa_i * kappa_j; use
`reorder_sign` to compare against the lexicographic normal order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MissingPath, ZeroDenominator
from .field import is_zero

SIGN_CONVENTION = "lexicographic generator order; reorder sign (-1)^(kappa_i kappa_j) per swap"


@dataclass
class TauLedger:
    n_frames: int
    position: tuple = None
    values: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    sign_convention: str = SIGN_CONVENTION

    def __post_init__(self):
        if self.position is None:
            self.position = (0,) * self.n_frames
        self.values.setdefault(self.position, Fraction(1))

    def record(self, delta, ratio, label=""):
        """Apply one executed shift: position += delta, tau *= ratio."""
        if len(delta) != self.n_frames:
            raise ValueError("delta length %d != frame count %d" % (len(delta), self.n_frames))
        new_pos = tuple(p + d for p, d in zip(self.position, delta))
        new_val = self.values[self.position] * ratio
        self.steps.append((label, self.position, new_pos, ratio))
        # first visit wins; revisits are validated by round-trip tests
        self.values.setdefault(new_pos, new_val)
        self.position = new_pos
        return new_val

    def value_at(self, pos):
        pos = tuple(pos)
        if pos not in self.values:
            raise MissingPath("no recorded path through %s" % (pos,))
        return self.values[pos]


def tau_second_ratio(ledger: TauLedger, s, t, base=None):
    """D_{s,t} tau(u) = D_s tau(u+t) / D_s tau(u) from recorded corner values."""
    if base is None:
        base = (0,) * ledger.n_frames
    base = tuple(base)
    s, t = tuple(s), tuple(t)
    u = ledger.value_at(base)
    u_s = ledger.value_at(tuple(a + b for a, b in zip(base, s)))
    u_t = ledger.value_at(tuple(a + b for a, b in zip(base, t)))
    u_st = ledger.value_at(tuple(a + b + c for a, b, c in zip(base, s, t)))
    if is_zero(u_s) or is_zero(u) or is_zero(u_t):
        raise ZeroDenominator("vanishing tau value in second ratio")
    return (u_st * u) / (u_s * u_t)


def reorder_sign(kappas, executed, canonical):
    """Sign relating two generator orders of the same composite shift.

    Each generator is a frame index; swapping adjacent generators for frames
    i and j multiplies tau by (-1)^(kappa_i * kappa_j).
    """
    if sorted(executed) != sorted(canonical):
        raise ValueError("orders are not permutations of each other")
    seq = list(executed)
    sign = 1
    for target_pos, gen in enumerate(canonical):
        pos = seq.index(gen, target_pos)
        while pos > target_pos:
            a, b = seq[pos - 1], seq[pos]
            if (kappas[a] * kappas[b]) % 2 == 1:
                sign = -sign
            seq[pos - 1], seq[pos] = b, a
            pos -= 1
    return sign


class Walker:
    """Couples a connection to a ledger and executes shift moves."""

    def __init__(self, conn, ledger: TauLedger = None):
        from .shifts import shift_coalesced, shift_simple_zero_pair, shift_zero_pole_pair

        self.conn = conn
        self.ledger = ledger if ledger is not None else TauLedger(len(conn.frames))
        self._zero_pair = shift_simple_zero_pair
        self._zero_pole = shift_zero_pole_pair
        self._coalesced = shift_coalesced

    def _delta(self, **changes):
        d = [0] * self.ledger.n_frames
        for idx, step in changes.items():
            d[int(idx)] = step
        return tuple(d)

    def zero_pair(self, i: int, j: int):
        self.conn, gauge, ratio = self._zero_pair(self.conn, i, j)
        delta = [0] * self.ledger.n_frames
        delta[i], delta[j] = 1, -1
        self.ledger.record(tuple(delta), ratio, "zero_pair(%d,%d)" % (i, j))
        return gauge, ratio

    def zero_pole(self, i: int, k: int, direction: int):
        self.conn, gauge, ratio = self._zero_pole(self.conn, i, k, direction)
        delta = [0] * self.ledger.n_frames
        delta[i] = delta[k] = direction
        self.ledger.record(tuple(delta), ratio, "zero_pole(%d,%d,%+d)" % (i, k, direction))
        return gauge, ratio

    def coalesced(self, i: int, direction: int):
        self.conn, gauge, ratio = self._coalesced(self.conn, i, direction)
        delta = [0] * self.ledger.n_frames
        delta[i] = direction
        self.ledger.record(tuple(delta), ratio, "coalesced(%d,%+d)" % (i, direction))
        return gauge, ratio

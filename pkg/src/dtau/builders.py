"""Random connection factories for property sweeps and the CLI suite.

All factories emit exact rational data whose singularity locations have
pairwise non-integer differences, as the shift calculus requires.
"""

from __future__ import annotations

from fractions import Fraction

from .connection import DConnection, attach_frames, outer, pair
from .errors import NonGeneric
from .field import rand_nonzero_rational
from .poly import Poly
from .ratfun import RatFun
from .rmatrix import RMatrix

# fractional parts with pairwise non-integer differences
_FRACTIONAL_POOL = [Fraction(1, 3), Fraction(1, 5), Fraction(2, 7), Fraction(3, 11),
                    Fraction(5, 13), Fraction(1, 17), Fraction(4, 19), Fraction(7, 23)]


def scattered_locations(rng, count: int):
    """Rational points no two of which differ by an integer."""
    fracs = rng.sample(_FRACTIONAL_POOL, count)
    return [rng.randint(-4, 4) + f for f in fracs]


def rand_vector(rng, n: int):
    while True:
        v = tuple(rand_nonzero_rational(rng, 6) if rng.random() < 0.8 else Fraction(0)
                  for _ in range(n))
        if any(c != 0 for c in v):
            return v


def _rank_one_projection(rng, n: int):
    while True:
        x, y = rand_vector(rng, n), rand_vector(rng, n)
        p = pair(x, y)
        if p != 0:
            return [[v / p for v in row] for row in outer(list(x), list(y))]


def _const_invertible(rng, n: int):
    from . import linalg

    while True:
        rows = [[rand_nonzero_rational(rng, 5) for _ in range(n)] for _ in range(n)]
        if linalg.det(rows) != 0:
            return rows


def random_zero_connection(rng, size: int = 2, n_zeros: int = 3) -> DConnection:
    """Polynomial connection with simple zeroes at scattered rational points."""
    while True:
        try:
            locs = scattered_locations(rng, n_zeros)
            a = RMatrix.from_scalars(_const_invertible(rng, size))
            for loc in locs:
                proj = _rank_one_projection(rng, size)
                # E(z) = (I - P) + (z - loc) P has det = (z - loc)
                rows = []
                for i in range(size):
                    row = []
                    for j in range(size):
                        ident = Fraction(1 if i == j else 0)
                        row.append(RatFun.from_poly(Poly((ident - proj[i][j] - loc * proj[i][j],
                                                          proj[i][j]))))
                    rows.append(row)
                a = a * RMatrix(rows)
            return attach_frames(a, zeros=locs)
        except NonGeneric:
            continue


def rank_one_gauge_factor(loc_zero, loc_pole, w, w_prime) -> RMatrix:
    """I + (b - a)/(z - b) * w w'^t / <w, w'>; det = (z - a)/(z - b)."""
    p = pair(w, w_prime)
    if p == 0:
        raise NonGeneric("vanishing pairing in gauge factor")
    scale = (loc_pole - loc_zero) / p
    r0 = [[v * scale for v in row] for row in outer(list(w), list(w_prime))]
    den = Poly((-loc_pole, 1))
    rows = []
    for i in range(len(r0)):
        row = []
        for j in range(len(r0)):
            num = Poly((r0[i][j] - (loc_pole if i == j else 0), Fraction(1 if i == j else 0)))
            row.append(RatFun(num, den))
        rows.append(row)
    return RMatrix(rows)


def random_zero_pole_connection(rng, size: int = 2, n_pairs: int = 2) -> DConnection:
    """Product of rank-one factors: simple zeroes a_i, simple poles b_i, A(inf) = I."""
    while True:
        try:
            locs = scattered_locations(rng, 2 * n_pairs)
            zeros, poles = locs[:n_pairs], locs[n_pairs:]
            a = RMatrix.identity(size)
            for z0, p0 in zip(zeros, poles):
                a = a * rank_one_gauge_factor(z0, p0, rand_vector(rng, size),
                                              rand_vector(rng, size))
            return attach_frames(a, zeros=zeros, poles=poles)
        except NonGeneric:
            continue


def random_coalesced_connection(rng, size: int = 2, n_sites: int = 1) -> DConnection:
    """H(z) times nilpotent rank-one factors I + N_i/(z - c_i); det is constant."""
    while True:
        try:
            locs = scattered_locations(rng, n_sites)
            a = RMatrix.from_scalars(_const_invertible(rng, size))
            for loc in locs:
                w = rand_vector(rng, size)
                while True:
                    w_dp = rand_vector(rng, size)
                    if pair(w, w_dp) != 0:
                        break
                # w' must annihilate w: solve one linear condition
                wp = _covector_orthogonal_to(rng, w)
                n0 = [[wi * wpj / pair(w, w_dp) for wpj in wp] for wi in w]
                den = Poly((-loc, 1))
                rows = []
                for i in range(size):
                    row = []
                    for j in range(size):
                        num = Poly((n0[i][j] - (loc if i == j else 0),
                                    Fraction(1 if i == j else 0)))
                        row.append(RatFun(num, den))
                    rows.append(row)
                a = a * RMatrix(rows)
            return attach_frames(a, coalesced=locs)
        except NonGeneric:
            continue


def _covector_orthogonal_to(rng, w):
    n = len(w)
    while True:
        free = rand_vector(rng, n)
        # project away the component along w under the standard pairing
        p = pair(w, w)
        if p == 0:
            continue
        coef = pair(w, free) / p
        wp = tuple(f - coef * wi for f, wi in zip(free, w))
        if any(c != 0 for c in wp):
            return wp

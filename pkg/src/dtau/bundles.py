"""Concrete model of the modified bundles attached to an ensemble.

Sections are tuples (s_1; s_2): polynomial components of bounded degree and
rational components with first-order poles on prescribed points.  At a
support point y the residue of every s_{2,i} is coupled to the values of the
s_1 components so that the covector family w'_y + w''_y (z - y) from the
frame data annihilates the section; at a free point the residue is an
unconstrained multiple of the weight vector w_x.  Vanishing conditions at
infinity close the system.  Everything reduces to exact nullspace problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .ensembles import EnsembleSpec, gap_probability, gram_kernel
from .errors import DegenerateFormalType, InternalMismatch, NotTrivial, Unsupported
from .poly import Poly, from_roots
from .ratfun import RatFun
from .rmatrix import RMatrix


@dataclass(frozen=True)
class BundleModel:
    spec: EnsembleSpec
    support: tuple                # the set Y of points carrying modifications

    def __post_init__(self):
        if not set(self.support) <= set(self.spec.points):
            raise ValueError("support must lie inside the phase set")

    @property
    def splitting_type(self):
        return tuple(n - 1 for n in self.spec.n) + tuple(-m - 1 for m in self.spec.m)


@dataclass(frozen=True)
class Section:
    s1: tuple                     # p polynomials
    s2: tuple                     # q rational functions
    phi_table: tuple              # sum_j omega_{1,j}(x) s_{1,j}(x) over X
    residue_scalars: dict         # pole point -> residue / w_x component


@dataclass(frozen=True)
class SectionSpace:
    twist: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _solve_sections(model: BundleModel, twist: int, free_points=()):
    spec = model.spec
    p, q = spec.p, spec.q
    support = [x for x in spec.points if x in set(model.support)]
    free_points = [x for x in spec.points if x in set(free_points)]

    # unknown layout: s1 coefficients per component, s2 polynomial tails,
    # then one free residue scalar per free point
    s1_counts = [max(0, spec.n[i] + twist) for i in range(p)]
    tail_counts = [max(0, twist - spec.m[i]) for i in range(q)]
    n_unknowns = sum(s1_counts) + sum(tail_counts) + len(free_points)
    s1_off = [sum(s1_counts[:i]) for i in range(p)]
    tail_off = [sum(s1_counts) + sum(tail_counts[:i]) for i in range(q)]
    free_off = sum(s1_counts) + sum(tail_counts)

    def phi_at(x, vec):
        idx = spec.index_of(x)
        total = Fraction(0)
        for i in range(p):
            val = Fraction(0)
            for k in range(s1_counts[i]):
                val += vec[s1_off[i] + k] * x**k
            total += spec.omega1[i][idx] * val
        return total

    rows = []
    for i in range(q):
        for t in range(max(0, spec.m[i] - twist)):
            row = [Fraction(0)] * n_unknowns
            for y in support:
                idx = spec.index_of(y)
                # residue of s_{2,i} at y is -omega_{2,i}(y) * phi(y)
                for jj in range(p):
                    for k in range(s1_counts[jj]):
                        row[s1_off[jj] + k] += -spec.omega2[i][idx] * spec.omega1[jj][idx] * y**k * y**t
            for fx_idx, x in enumerate(free_points):
                idx = spec.index_of(x)
                row[free_off + fx_idx] += spec.omega2[i][idx] * x**t
            rows.append(row)

    basis_vectors = linalg.nullspace(rows) if rows else [
        [Fraction(int(a == b)) for b in range(n_unknowns)] for a in range(n_unknowns)
    ]

    sections = []
    for vec in basis_vectors:
        s1 = tuple(Poly(vec[s1_off[i]:s1_off[i] + s1_counts[i]]) for i in range(p))
        phi_table = tuple(phi_at(x, vec) for x in spec.points)
        residue_scalars = {}
        for y in support:
            residue_scalars[y] = -phi_table[spec.index_of(y)]
        for fx_idx, x in enumerate(free_points):
            residue_scalars[x] = vec[free_off + fx_idx]
        s2 = []
        for i in range(q):
            f = RatFun.from_poly(Poly(vec[tail_off[i]:tail_off[i] + tail_counts[i]]))
            for x, t in residue_scalars.items():
                idx = spec.index_of(x)
                f = f + RatFun(Poly.const(t * spec.omega2[i][idx]), Poly((-x, 1)))
            s2.append(f)
        sections.append(Section(s1, tuple(s2), phi_table, residue_scalars))
    return SectionSpace(twist, tuple(sections))


def section_space(model: BundleModel, twist: int) -> SectionSpace:
    """Global sections of the support-modified bundle twisted at infinity."""
    if twist < 0:
        raise ValueError("twist must be nonnegative")
    return _solve_sections(model, twist)


def is_trivial(model: BundleModel) -> bool:
    """True iff the slope -1 bundle splits into degree -1 line bundles."""
    return section_space(model, 0).dimension == 0


def euler_dimensions(model: BundleModel, twists=(0, 1, 2)):
    return {k: section_space(model, k).dimension for k in twists}


# --- tau = det composition ----------------------------------------------------

def det_equals_tau_check(model: BundleModel):
    """(composition determinant, det(1-K) block) for the given support set."""
    spec = model.spec
    free = [x for x in spec.points if x not in set(model.support)]
    space = _solve_sections(model, 0, free_points=free)
    if space.dimension != len(free):
        raise NotTrivial("section count %d != %d free points"
                         % (space.dimension, len(free)))
    f_rows = []
    g_rows = []
    for x in free:
        idx = spec.index_of(x)
        f_rows.append([s.phi_table[idx] + s.residue_scalars[x] for s in space.basis])
        g_rows.append([s.residue_scalars[x] for s in space.basis])
    f_det = linalg.det(f_rows)
    if f_det == 0:
        raise NotTrivial("evaluation map is singular: the full-support bundle is not trivial")
    lhs = linalg.det(g_rows) / f_det
    rhs = gap_probability(spec, model.support)
    return lhs, rhs


def kernel_entry_ratio(spec: EnsembleSpec, x, y):
    """tau-ratio realization of the (x, y) entry of 1 - K.

    Dropping y from the support makes the section space one-dimensional and
    its image under the evaluation embedding is supported at y, so applying
    the residue functional at x reads off the (x, y) entry of the projection
    complement: the ratio is g_x(s) / f_y(s).
    """
    model = BundleModel(spec, tuple(pt for pt in spec.points if pt != y))
    space = _solve_sections(model, 0, free_points=[y])
    if space.dimension != 1:
        raise NotTrivial("expected a one-dimensional section space at %s" % (y,))
    s = space.basis[0]
    fy = s.phi_table[spec.index_of(y)] + s.residue_scalars[y]
    if fy == 0:
        raise NotTrivial("f_y vanishes on the section space")
    if x == y:
        gx = s.residue_scalars[y]
    elif x in s.residue_scalars:
        gx = s.residue_scalars[x]
    else:
        gx = Fraction(0)
    return gx / fy


def kernel_entry_check(spec: EnsembleSpec, km=None):
    """Verify (1-K)(x,y) = tau ratio for every pair; returns mismatches."""
    if km is None:
        km = gram_kernel(spec)
    bad = []
    for ix, x in enumerate(spec.points):
        for iy, y in enumerate(spec.points):
            expected = (1 if ix == iy else 0) - km.kernel[ix][iy]
            got = kernel_entry_ratio(spec, x, y)
            if got != expected:
                bad.append((x, y, got, expected))
    return bad


# --- trivialization and canonical coordinate forms ----------------------------

def frame_matrix(model: BundleModel) -> RMatrix:
    """2x2 frame of sections of the once-twisted bundle (p = q = 1 only)."""
    spec = model.spec
    if spec.p != 1 or spec.q != 1:
        raise Unsupported("trivialization implemented for p = q = 1 (rank 2)")
    space = section_space(model, 1)
    if space.dimension != 2:
        raise NotTrivial("twisted section space has dimension %d, expected 2"
                         % space.dimension)
    s1, s2 = space.basis
    phi = RMatrix([[RatFun.from_poly(s1.s1[0]), RatFun.from_poly(s2.s1[0])],
                   [s1.s2[0], s2.s2[0]]])
    d = phi.det()
    if not d.is_polynomial() or d.num.degree > 0 or d.is_zero():
        raise NotTrivial("frame determinant is not a nonzero constant: %r" % (d,))
    return phi


def trivialized_matrix(model: BundleModel, diag_conn: RMatrix, pole_locs, subleading_pair) -> RMatrix:
    """Matrix of the diagonal connection in a global rank-two frame.

    `pole_locs` are the three poles of the canonical form; `subleading_pair`
    the prescribed eigenvalues (d_1 + sum(b), d_2 + sum(b)) of the first
    expansion coefficient at infinity, in the order fixing the gauge.
    """
    phi = frame_matrix(model)
    a_y = phi.shift_arg(1).inverse() * diag_conn * phi
    return canonical_dpvi_form(a_y, pole_locs, subleading_pair)[0]


def _eigvec(c, lam):
    n = len(c)
    rows = [[c[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    basis = linalg.nullspace(rows)
    if not basis:
        raise DegenerateFormalType("prescribed value %s is not an eigenvalue" % (lam,))
    return basis[0]


def _conjugate_by_scalars(a: RMatrix, v_rows) -> RMatrix:
    v = RMatrix.from_scalars(v_rows)
    return v.inverse() * a * v


def _numerator_entries(a: RMatrix, pole_locs):
    den = from_roots(pole_locs)
    out = []
    for row in a.entries:
        out_row = []
        for e in row:
            f = e * RatFun.from_poly(den)
            if not f.is_polynomial():
                raise DegenerateFormalType(
                    "entry has poles outside the prescribed set: %r" % (f.den,))
            out_row.append(f.as_poly())
        out.append(out_row)
    return out


def canonical_dpvi_form(a: RMatrix, pole_locs, subleading_pair):
    """Constant-gauge normalization to the monic cubic-numerator shape."""
    lam1, lam2 = subleading_pair
    if lam1 == lam2:
        raise DegenerateFormalType("equal subleading eigenvalues")
    c0, c1 = a.infinity_expansion(1)
    ident = [[Fraction(int(i == j)) for j in range(a.size)] for i in range(a.size)]
    if c0 != ident:
        raise DegenerateFormalType("leading coefficient at infinity is not the identity")
    v1, v2 = _eigvec(c1, lam1), _eigvec(c1, lam2)
    v = [[v1[0], v2[0]], [v1[1], v2[1]]]
    if linalg.det(v) == 0:
        raise DegenerateFormalType("subleading coefficient is not diagonalizable")
    a2 = _conjugate_by_scalars(a, v)
    p = _numerator_entries(a2, pole_locs)
    if p[1][0].degree != 1:
        raise DegenerateFormalType("lower-left numerator degree %d != 1" % p[1][0].degree)
    lead = p[1][0].leading()
    a3 = _conjugate_by_scalars(a2, [[1 / lead, Fraction(0)], [Fraction(0), Fraction(1)]])
    p = _numerator_entries(a3, pole_locs)
    if p[0][0].degree != 3 or p[0][0].leading() != 1 or p[1][1].leading() != 1:
        raise InternalMismatch("canonical numerator shape failed")
    return a3, p


def canonical_dpv_form(a: RMatrix, pole_locs, rho_pair):
    """Same normalization for the two-pole family with general leading part."""
    rho1, rho2 = rho_pair
    if rho1 == rho2:
        raise DegenerateFormalType("equal leading eigenvalues")
    c0 = a.infinity_expansion(0)[0]
    v1, v2 = _eigvec(c0, rho1), _eigvec(c0, rho2)
    v = [[v1[0], v2[0]], [v1[1], v2[1]]]
    if linalg.det(v) == 0:
        raise DegenerateFormalType("leading coefficient is not diagonalizable")
    a2 = _conjugate_by_scalars(a, v)
    p = _numerator_entries(a2, pole_locs)
    if p[1][0].degree != 1:
        raise DegenerateFormalType("lower-left numerator degree %d != 1" % p[1][0].degree)
    lead = p[1][0].leading()
    a3 = _conjugate_by_scalars(a2, [[1 / lead, Fraction(0)], [Fraction(0), Fraction(1)]])
    p = _numerator_entries(a3, pole_locs)
    if p[0][0].degree != 2 or p[0][0].leading() != rho1 or p[1][1].leading() != rho2:
        raise InternalMismatch("canonical numerator shape failed")
    return a3, p


def dpvi_coords(p_entries, a2, a3, b2, b3):
    """(q, r) from the canonical numerator: q the root of the lower-left entry."""
    p21, p11 = p_entries[1][0], p_entries[0][0]
    if p21.degree != 1:
        raise DegenerateFormalType("lower-left entry is not linear")
    q = -p21.coeff(0) / p21.leading()
    a11_q = p11.eval(q)
    if a11_q == 0:
        raise DegenerateFormalType("a_11(q) = 0")
    r = (q - a2) * (q - a3) * (q - b2) * (q - b3) / a11_q - q
    return q, r


def dpv_coords(p_entries, a2, b2):
    p21, p11 = p_entries[1][0], p_entries[0][0]
    if p21.degree != 1:
        raise DegenerateFormalType("lower-left entry is not linear")
    q = -p21.coeff(0) / p21.leading()
    if q == a2 or q == b2:
        raise DegenerateFormalType("q collides with a_2 or b_2")
    return q, p11.eval(q) / ((q - a2) * (q - b2))

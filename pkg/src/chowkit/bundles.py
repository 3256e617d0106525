"""Chern-class calculus and fiberwise jet evaluation.

BundleClass is a formal vector bundle: a rank plus a total Chern class
living in some RingPresentation.  Whitney products, duals, line twists,
truncated inverses, principal-parts bundles and excess classes are all
polynomial identities in the Chern classes, so they stay exact.

The second half of the module handles rank-2 splitting types on P^1 and
the jet-evaluation matrices used to test whether point conditions on a
fiberwise cubic are independent.  A cubic on the Hirzebruch-style surface
is written f = a*y**3 + b*y**2 + c*y + d off the directrix, where the
coefficient a, b, c, d are polynomials on the base P^1 of degrees
2m-n, m, n, 2n-m.  Jets are divided derivatives, so all entries are
binomial coefficients times monomial values and stay in Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .linalg import rank_fraction
from .ring import ChowElement

_Y_SWEEP = (Fraction(1), Fraction(2), Fraction(3), Fraction(5))


class BundleClass:
    """Formal bundle: rank r and total Chern class 1 + c1 + ... + cr."""

    __slots__ = ("ring", "rank", "total")

    def __init__(self, rank, total):
        if not isinstance(total, ChowElement):
            raise TypeError("total Chern class must be a ChowElement")
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        ring = total.ring
        if total.graded_part(0) != ring.one():
            raise ValueError("total Chern class must start with 1")
        top = total.degree()
        if top is not None and top > rank:
            cap = ring.truncation_degree
            for d in range(rank + 1, top + 1):
                if cap is not None and d > cap:
                    break
                if not total.graded_part(d).is_zero():
                    raise ValueError(
                        f"c_{d} nonzero on a rank-{rank} bundle")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "total", total)

    def __setattr__(self, *a):
        raise AttributeError("BundleClass is immutable")

    @classmethod
    def trivial(cls, ring, rank=1):
        return cls(rank, ring.one())

    @classmethod
    def line(cls, c1):
        return cls(1, c1.ring.one() + c1)

    def c(self, i):
        if i < 0:
            raise ValueError("no negative Chern classes")
        return self.total.graded_part(i)

    @property
    def c1(self):
        return self.c(1)

    def top_chern(self):
        return self.c(self.rank)

    def whitney(self, other):
        if other.ring != self.ring:
            raise ValueError("bundles live in different rings")
        return BundleClass(self.rank + other.rank, self.total * other.total)

    def dual(self):
        flipped = self.ring.zero()
        for d, piece in self.total.graded_pieces():
            flipped = flipped + piece * ((-1) ** d)
        return BundleClass(self.rank, flipped)

    def tensor_line(self, line_c1):
        """Chern classes of E tensor L for a line bundle with c1 = line_c1."""
        if line_c1.ring != self.ring:
            raise ValueError("twist class lives in a different ring")
        r = self.ring
        cap = r.truncation_degree
        top = self.rank if cap is None else min(self.rank, cap)
        out = r.zero()
        for k in range(top + 1):
            piece = r.zero()
            for i in range(k + 1):
                piece = piece + comb(self.rank - i, k - i) \
                    * self.c(i) * line_c1 ** (k - i)
            out = out + piece
        return BundleClass(self.rank, out)

    def inverse_total(self):
        """Formal inverse of the total Chern class, up to truncation."""
        r = self.ring
        x = self.total - r.one()
        if x.is_zero():
            return r.one()
        if r.truncation_degree is None:
            raise ValueError("inverse_total needs a truncated ring")
        acc = r.one()
        power = r.one()
        for _ in range(r.truncation_degree):
            power = power * (-x)
            if power.is_zero():
                break
            acc = acc + power
        return acc


def excess_class(n_ambient, n_component):
    """Top Chern class of the excess bundle N_ambient / N_component.

    Computed as the degree rank(N_ambient) - rank(N_component) part of
    c(N_ambient) * c(N_component)^(-1).  Equal ranks give 1.
    """
    if n_component.ring != n_ambient.ring:
        raise ValueError("bundles live in different rings")
    drop = n_ambient.rank - n_component.rank
    if drop < 0:
        raise ValueError("component normal bundle outranks the ambient one")
    prod = n_ambient.total * n_component.inverse_total()
    return prod.graded_part(drop)


def principal_parts_chern(line_c1, omega_c1, order):
    """c(P^k(L)) from the filtration with quotients L, L*Omega, ..., L*Omega^k.

    Returns a BundleClass of rank order + 1 whose total Chern class is the
    Whitney product of the line classes c1(L) + j*c1(Omega), j = 0..order.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if omega_c1.ring != line_c1.ring:
        raise ValueError("classes live in different rings")
    bundle = BundleClass.line(line_c1)
    for j in range(1, order + 1):
        bundle = bundle.whitney(BundleClass.line(line_c1 + omega_c1 * j))
    return bundle


# -- splitting types on P^1 --


@dataclass(frozen=True)
class SplittingType:
    """Rank-2 splitting O(m) + O(n) with m <= n on the base P^1."""

    m: int
    n: int

    def __post_init__(self):
        if self.m > self.n:
            raise ValueError("normalize so m <= n")

    @property
    def genus(self):
        return self.m + self.n - 2

    @classmethod
    def for_genus(cls, g):
        if g < 0:
            raise ValueError("genus must be nonnegative")
        total = g + 2
        return [cls(m, total - m) for m in range(total // 2 + 1)]


def splitting_sym3(m, n):
    """Base degrees of the four cubic coefficients (a, b, c, d)."""
    return [2 * m - n, m, n, 2 * n - m]


def p1_cohomology(d):
    """(h0, h1) of O(d) on P^1."""
    return (max(0, d + 1), max(0, -d - 1))


def in_locus_B(m, n):
    """Whether the leading cubic coefficient has nonnegative degree."""
    return 2 * m - n >= 0


# -- jet evaluation --


@dataclass(frozen=True)
class JetPoint:
    """Point condition: jets rows of vanishing at x, fiber position y.

    y=None asks for a generic fiber position (the rank computation sweeps
    a few rational values and keeps the max).  on_directrix puts the point
    at y = infinity, where the cubic is read in the w = 1/y chart.
    """

    x: Fraction
    jets: int
    y: Fraction | None = None
    on_directrix: bool = False

    def __post_init__(self):
        if self.jets < 1:
            raise ValueError("need at least one jet row")
        if self.on_directrix and self.y is not None:
            raise ValueError("a directrix point has no finite y")


def default_3p3q():
    """Two full second-order jets: p at x=0 on the zero section, q generic."""
    return (JetPoint(x=Fraction(0), jets=3, y=Fraction(0)),
            JetPoint(x=Fraction(1), jets=3))


def jet_matrix(m, n, points, same_fiber=False):
    """Jet-evaluation matrix for the cubic's coefficient space.

    Columns: monomials x**t in each coefficient block (a, b, c, d), skipping
    blocks of negative degree.  Rows: for each point, its divided y-jets
    of order 0..jets-1.  Every y must be concrete here; sweeping generic
    points is jet_rank's job.
    """
    degs = splitting_sym3(m, n)
    blocks = [max(0, d + 1) for d in degs]
    xs = [p.x for p in points]
    if not same_fiber and len(set(xs)) != len(xs):
        raise ValueError("two points share a fiber; pass same_fiber=True "
                         "if that is intended")
    rows = []
    for pt in points:
        if not pt.on_directrix and pt.y is None:
            raise ValueError("concrete y required; use jet_rank to sweep")
        for k in range(pt.jets):
            row = []
            for bi, ncols in enumerate(blocks):
                if pt.on_directrix:
                    # w-chart: f = a + b*w + c*w**2 + d*w**3, at w = 0 the
                    # k-th divided jet reads off coefficient block k.
                    val = Fraction(1) if bi == k else Fraction(0)
                else:
                    p = 3 - bi  # y-power of block bi
                    if k > p:
                        val = Fraction(0)
                    else:
                        val = comb(p, k) * pt.y ** (p - k)
                row.extend(val * pt.x ** t for t in range(ncols))
            rows.append(row)
    return rows


def jet_rank(m, n, points=None, same_fiber=False):
    """((rows, cols), rank) of the jet matrix, sweeping generic points.

    Points with y=None off the directrix are swept over a few rational
    fiber positions (all combinations, avoiding coincident points); the
    reported rank is the max, which is the generic value.
    """
    if points is None:
        points = default_3p3q()
    degs = splitting_sym3(m, n)
    ncols = sum(max(0, d + 1) for d in degs)
    nrows = sum(p.jets for p in points)

    free = [i for i, p in enumerate(points)
            if p.y is None and not p.on_directrix]
    best = 0
    for combo in itertools.product(_Y_SWEEP, repeat=len(free)):
        filled = list(points)
        for idx, y in zip(free, combo):
            filled[idx] = JetPoint(x=filled[idx].x, jets=filled[idx].jets,
                                   y=y)
        seen = {(p.x, p.y) for p in filled if not p.on_directrix}
        if len(seen) != sum(1 for p in filled if not p.on_directrix):
            continue
        rank = rank_fraction(jet_matrix(m, n, filled, same_fiber=same_fiber))
        best = max(best, rank)
        if best == min(nrows, ncols):
            break
    return (nrows, ncols), best

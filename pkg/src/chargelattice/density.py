"""Charges given by densities against a base measure on a finite ground set.

``mu_f(A) = sum_{s in A} f(s) * nu(s)`` with ``f`` valued in ``(-inf, +inf]``
and the convention ``0 * inf = 0``. The supremum of the charges of a
family of densities is the charge of the pointwise supremum of the
densities; :func:`sup_density_measures` computes the left side with the
partition formula so that the two can be compared.

Interval versions use piecewise-constant densities on a rational grid, so
integrals are exact finite sums of value times cell length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .charge import Charge, RingExtension, chain_charge, explicit_charge
from .intervals import GridIntervals, Interval
from .lattice import jordan, sup_family
from .setsys import FiniteSemiRing, validate_semiring
from .xreal import ExtReal, ZERO, to_xreal, xmax, xsum

__all__ = [
    "DensitySpace",
    "Density",
    "measure_of_density",
    "density_charge",
    "pointwise_sup",
    "sup_density_measures",
    "DensityVariation",
    "variation_of_density",
    "grid_density_charge",
    "grid_abs_integral",
    "grid_variation",
]


@dataclass(frozen=True)
class DensitySpace:
    """Finite ground set with nonnegative point weights.

    ``cells`` partitions the ground into blocks of finite weight; by default
    every point is its own cell.
    """

    points: tuple
    weights: Mapping[Hashable, Fraction]
    cells: tuple = ()
    semiring: FiniteSemiRing = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        w = {}
        for s in pts:
            v = Fraction(self.weights.get(s, 0))
            if v < 0:
                raise ValueError(f"negative weight at {s!r}")
            w[s] = v
        extra = set(self.weights) - set(pts)
        if extra:
            raise ValueError(f"weights given for unknown points {sorted(map(str, extra))}")
        cells = tuple(tuple(c) for c in self.cells) or tuple((s,) for s in pts)
        covered = [s for c in cells for s in c]
        if sorted(map(pts.index, covered)) != list(range(len(pts))):
            raise ValueError("cells must partition the points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "cells", cells)
        family = [()] + [(s,) for s in pts] + [c for c in cells if len(c) > 1]
        object.__setattr__(self, "semiring", validate_semiring(pts, family))

    @classmethod
    def counting(cls, points: Iterable) -> "DensitySpace":
        pts = tuple(points)
        return cls(pts, {s: Fraction(1) for s in pts})

    def subset(self, a: Iterable | None) -> tuple:
        if a is None:
            return self.points
        a = tuple(a)
        unknown = [s for s in a if s not in self.weights]
        if unknown:
            raise KeyError(f"{unknown[0]!r} is not a point of the space")
        return tuple(s for s in self.points if s in set(a))


class Density(dict):
    """Point -> value in ``(-inf, +inf]``; missing points are 0."""

    def __init__(self, values: Mapping | Sequence = (), points: Sequence | None = None):
        if not isinstance(values, Mapping):
            if points is None:
                raise ValueError("sequence densities need the list of points")
            values = dict(zip(points, values, strict=True))
        super().__init__((s, to_xreal(v)) for s, v in values.items())
        for s, v in self.items():
            if v.is_neg_inf:
                raise ValueError(f"density is -inf at {s!r}")

    def at(self, s) -> ExtReal:
        return self.get(s, ZERO)


def _term(space: DensitySpace, f: Density, s) -> ExtReal:
    return f.at(s) * space.weights[s]


def measure_of_density(space: DensitySpace, f: Density, a: Iterable | None = None) -> ExtReal:
    """``sum_{s in a} f(s) nu(s)``, exactly; ``a`` defaults to the whole ground."""
    return xsum(_term(space, f, s) for s in space.subset(a))


def density_charge(space: DensitySpace, f: Density, name: str = "") -> Charge:
    """``mu_f`` as a charge on the semi-ring of singletons and cells."""
    be = space.semiring
    table = {m: measure_of_density(space, f, be.labels(m)) for m in be.members()}
    return explicit_charge(be, table, name, check=False)


def pointwise_sup(family: Sequence[Density]) -> Density:
    if not family:
        raise ValueError("empty family")
    keys = {s for f in family for s in f}
    out = {}
    for s in keys:
        v = family[0].at(s)
        for f in family[1:]:
            v = xmax(v, f.at(s))
        out[s] = v
    return Density(out)


def sup_density_measures(space: DensitySpace, family: Sequence[Density], a: Iterable | None = None) -> ExtReal:
    """Supremum of the charges ``mu_f`` over the family, evaluated on ``a``.

    Computed by the partition formula on the semi-ring of singletons and
    cells and extended additively to the point set ``a``; no pointwise
    maximum of densities is taken.
    """
    charges = [density_charge(space, f, f"f{j}") for j, f in enumerate(family)]
    mu = sup_family(charges).as_charge()
    be = space.semiring
    return RingExtension(mu)(be.ring_membership(be.mask(space.subset(a))))


class DensityVariation(NamedTuple):
    positive: ExtReal
    negative: ExtReal
    variation: ExtReal


def variation_of_density(space: DensitySpace, f: Density, a: Iterable | None = None) -> DensityVariation:
    """``(sum f+ nu, sum f- nu, sum |f| nu)`` over ``a``."""
    pts = space.subset(a)
    pos = xsum(xmax(f.at(s), ZERO) * space.weights[s] for s in pts)
    neg = xsum(xmax(-f.at(s), ZERO) * space.weights[s] for s in pts)
    return DensityVariation(pos, neg, pos + neg)


def grid_density_charge(grid: GridIntervals, values: Sequence, name: str = "") -> Charge:
    """``A -> integral over A of f``, for ``f`` constant on each grid cell."""
    pts = grid.grid
    if len(values) != len(pts) - 1:
        raise ValueError(f"expected {len(pts) - 1} cell values, got {len(values)}")
    weights = [to_xreal(v) * (hi - lo) for v, lo, hi in zip(values, pts, pts[1:])]
    return chain_charge(grid, weights, name)


def grid_abs_integral(grid: GridIntervals, values: Sequence, a: Interval) -> ExtReal:
    """``integral over a of |f|`` for a piecewise-constant ``f``, by direct summation."""
    pts = grid.grid
    i, j = grid.index(a.lo), grid.index(a.hi)
    return xsum(abs(to_xreal(values[k])) * (pts[k + 1] - pts[k]) for k in range(i, j))


def grid_variation(grid: GridIntervals, values: Sequence, a: Interval) -> ExtReal:
    """Variation of the integral charge on ``a``, via the lattice supremum."""
    return jordan(grid_density_charge(grid, values)).variation(a)


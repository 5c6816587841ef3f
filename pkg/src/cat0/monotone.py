"""Monotone graphs, polars, relative maximality and geodesic couplings.

An operator graph is a finite set of (point, dual) pairs. Two pairs are
monotonically related when

    <x_dual - y_dual, yx->  >=  0,

and a graph is monotone when all its pairs are pairwise related. The
polar of a set M inside a finite candidate universe U collects the
members of U related to everything in M; a monotone graph is maximal
*relative to U* when its polar inside U adds nothing. Relative
maximality is the desk-scale stand-in for true maximality - it is
necessary, not sufficient, and every name here says "relative" so the
distinction stays visible.

The two one-sided coupling-convexity properties of a set M with respect
to a basepoint p compare, for every dual in the range of M and every
geodesic between domain points,

    <x_dual, p ((1-lam) x (+) lam y) ->    (value along the geodesic)

against the chord (1-lam) <x_dual, px-> + lam <x_dual, py->. Holding
with <= everywhere is the lower property, >= the upper property; both
at once characterize flat behavior, and each can fail in curved spaces.
Flatness itself is sampled through chord-condition equality on supplied
triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .conjugate import (
    CandidateUniverse,
    DEFAULT_LAMBDA_GRID,
    PairedPoint,
    pair_in,
    _pairs_of,
)
from .dual import DualVector, pair
from .extreal import Scalar
from .geometry import check_cn_inequality
from .spaces import (
    BoundVector,
    GeometryError,
    Point,
    SpaceHandle,
    geodesic_point,
)

__all__ = [
    "OperatorGraph",
    "PropertyReport",
    "FPropertyReport",
    "RELATEDNESS_TOL",
    "relatedness_gap",
    "monotonically_related",
    "is_monotone",
    "monotone_polar",
    "is_maximal_relative",
    "f_property_check",
    "flatness_check",
]

# how far below zero the relatedness pairing may sit before it counts
# as a violation (float slack)
RELATEDNESS_TOL = 1e-9


@dataclass(frozen=True)
class OperatorGraph:
    """A finite operator graph over one space."""

    space: SpaceHandle
    pairs: Tuple[PairedPoint, ...]

    def __post_init__(self):
        for q in self.pairs:
            if q.x.space != self.space:
                raise GeometryError("graph pair from a different space")

    def domain_points(self) -> Tuple[Point, ...]:
        seen = []
        for q in self.pairs:
            if q.x not in seen:
                seen.append(q.x)
        return tuple(seen)

    def range_duals(self) -> Tuple[DualVector, ...]:
        seen = []
        for q in self.pairs:
            if q.xd not in seen:
                seen.append(q.xd)
        return tuple(seen)


@dataclass(frozen=True)
class PropertyReport:
    """holds, plus a witness dict exactly when the property fails."""

    holds: bool
    witness: Optional[dict] = None


@dataclass(frozen=True)
class FPropertyReport:
    """The two one-sided coupling-convexity properties, separately."""

    lower: PropertyReport
    upper: PropertyReport


def relatedness_gap(q1: PairedPoint, q2: PairedPoint) -> Scalar:
    """<q1.xd - q2.xd, q2.x q1.x ->; nonnegative when related."""
    step = BoundVector(q2.x, q1.x)
    return pair(q1.xd, step) - pair(q2.xd, step)


def monotonically_related(
    q1: PairedPoint, q2: PairedPoint, tol: float = RELATEDNESS_TOL
) -> bool:
    """Is the relatedness pairing >= -tol? Symmetric in its arguments."""
    return relatedness_gap(q1, q2) >= -tol


def is_monotone(
    g: Union[OperatorGraph, Sequence[PairedPoint]], tol: float = RELATEDNESS_TOL
) -> PropertyReport:
    """Pairwise relatedness of all graph pairs; witness on first failure."""
    pairs = g.pairs if isinstance(g, OperatorGraph) else tuple(g)
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            gap = relatedness_gap(pairs[i], pairs[j])
            if gap < -tol:
                return PropertyReport(
                    holds=False,
                    witness={"pair_a": pairs[i], "pair_b": pairs[j], "gap": gap},
                )
    return PropertyReport(holds=True)


def monotone_polar(
    m: Union[OperatorGraph, Sequence[PairedPoint]],
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    tol: float = RELATEDNESS_TOL,
) -> Tuple[PairedPoint, ...]:
    """Members of the universe related to every member of m.

    The polar of the empty set is the whole universe. Antitone in m:
    growing m can only shrink the polar.
    """
    members = m.pairs if isinstance(m, OperatorGraph) else tuple(m)
    return tuple(
        u
        for u in _pairs_of(universe)
        if all(monotonically_related(u, q, tol) for q in members)
    )


def is_maximal_relative(
    g: OperatorGraph,
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    tol: float = RELATEDNESS_TOL,
    match_tol: float = 1e-9,
    probes=None,
) -> PropertyReport:
    """Monotone, and no universe pair outside g is related to all of g.

    Requires the universe to contain the graph (behavioral membership,
    using the given probe set for dual comparisons where the space has
    no canonical form); a strictly monotone extension point in the
    universe is returned as the witness. Maximality here is always
    relative to the given finite universe.
    """
    upairs = _pairs_of(universe)
    for q in g.pairs:
        if not pair_in(q, upairs, tol=match_tol, probes=probes):
            raise GeometryError("universe does not contain the graph")
    mono = is_monotone(g, tol)
    if not mono.holds:
        return PropertyReport(holds=False, witness=mono.witness)
    for u in monotone_polar(g, upairs, tol):
        if not pair_in(u, g.pairs, tol=match_tol, probes=probes):
            return PropertyReport(holds=False, witness={"extension": u})
    return PropertyReport(holds=True)


def f_property_check(
    m: Union[OperatorGraph, Sequence[PairedPoint]],
    p: Point,
    lambda_grid: Sequence[Scalar] = DEFAULT_LAMBDA_GRID,
    tol: Optional[float] = None,
) -> FPropertyReport:
    """Both one-sided coupling-convexity properties of the set m at basepoint p.

    Quantifies over every dual in the range of m, every ordered pair of
    domain points, and every lambda on the grid. Witnesses carry both
    sides of the first failing comparison.
    """
    pairs = m.pairs if isinstance(m, OperatorGraph) else tuple(m)
    if tol is None:
        tol = p.space.default_tol
    dom = []
    rng = []
    for q in pairs:
        if q.x not in dom:
            dom.append(q.x)
        if q.xd not in rng:
            rng.append(q.xd)

    lower_w: Optional[dict] = None
    upper_w: Optional[dict] = None
    for xd in rng:
        for x in dom:
            for y in dom:
                for lam in lambda_grid:
                    mid = geodesic_point(x, y, lam)
                    along = pair(xd, BoundVector(p, mid))
                    chord = (1 - lam) * pair(xd, BoundVector(p, x)) + lam * pair(
                        xd, BoundVector(p, y)
                    )
                    if lower_w is None and along > chord + tol:
                        lower_w = {
                            "xd": xd, "x": x, "y": y, "lam": lam,
                            "along": along, "chord": chord,
                        }
                    if upper_w is None and along < chord - tol:
                        upper_w = {
                            "xd": xd, "x": x, "y": y, "lam": lam,
                            "along": along, "chord": chord,
                        }
    return FPropertyReport(
        lower=PropertyReport(holds=lower_w is None, witness=lower_w),
        upper=PropertyReport(holds=upper_w is None, witness=upper_w),
    )


def flatness_check(
    space: SpaceHandle,
    triples: Sequence[Tuple[Point, Point, Point]],
    t_grid: Sequence[Scalar],
    tol: Optional[float] = None,
) -> PropertyReport:
    """Chord-condition equality on every triple and grid parameter.

    Flat (Euclidean-like) behavior means the comparison holds with
    equality everywhere; the witness is the first strict configuration.
    """
    if tol is None:
        tol = space.default_tol
    for x, y, z in triples:
        for t in t_grid:
            rep = check_cn_inequality(x, y, z, t, tol)
            if not rep.is_equality:
                return PropertyReport(
                    holds=False,
                    witness={
                        "x": x, "y": y, "z": z, "t": t,
                        "lhs": rep.lhs, "rhs": rep.rhs,
                    },
                )
    return PropertyReport(holds=True)

"""Couplings, Fenchel-type conjugates and the representable-function class.

The analysis lives on pairs (x, x_dual) of a point and a dual vector.
With a fixed basepoint p the coupling is

    pi_p(x, x_dual) = <x_dual, px->,

and the p-conjugate of an extended-real function h, evaluated at a
swapped pair (x_dual, x) and relative to a finite candidate universe U,
is

    h*_p(x_dual, x) = sup_{(y, y_dual) in U} { <x_dual, py-> +
                      <y_dual, px-> - h(y, y_dual) }.

Functions are finite tables: listed pairs carry extended-real values,
unlisted pairs count as +inf (so they drop out of the sup); a -inf value
anywhere in the universe is an improper input and raises. All suprema
follow the conventions of cat0.extreal (sup of nothing is -inf).

The membership check gamma_p_membership is the desk-scale version of
the class of proper convex functions that are fixed points of
h |-> (h + indicator{h <= pi_p})*_p after the swap. Lower
semicontinuity, part of the textbook definition, has no finite-data
content and is deliberately not checked; convexity is sampled along a
lambda grid and only where the combined pair lands on another table
entry (skipped combinations are counted and reported).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from .extreal import ExtReal, NEG_INF, POS_INF, Scalar, ext, scale
from .dual import DualVector, dual_add, dual_scale, duals_match, pair
from .spaces import (
    BoundVector,
    GeometryError,
    Point,
    SpaceMismatchError,
    distance,
    geodesic_point,
)

__all__ = [
    "PairedPoint",
    "CandidateUniverse",
    "FunctionTable",
    "ImproperTableError",
    "GammaReport",
    "function_table",
    "universe_of",
    "coupling_pi",
    "swap_r",
    "paired_close",
    "pair_in",
    "indicator",
    "fenchel_conjugate_p",
    "fenchel_young_check",
    "avg_lowerbound_check",
    "gamma_p_membership",
    "classical_conjugate_oracle",
    "DEFAULT_LAMBDA_GRID",
]

from fractions import Fraction

DEFAULT_LAMBDA_GRID: Tuple[Scalar, ...] = (
    0,
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(3, 4),
    1,
)


class ImproperTableError(GeometryError):
    """A function table takes the value -inf inside the universe."""


@dataclass(frozen=True)
class PairedPoint:
    """A point together with a dual vector; the atom of the analysis."""

    x: Point
    xd: DualVector

    def __post_init__(self):
        if self.xd.space is not None and self.xd.space != self.x.space:
            raise SpaceMismatchError("paired point mixes spaces")


@dataclass(frozen=True)
class CandidateUniverse:
    """The finite stand-in for X x X_dual that suprema range over."""

    pairs: Tuple[PairedPoint, ...]


def universe_of(pairs: Iterable[PairedPoint]) -> CandidateUniverse:
    return CandidateUniverse(tuple(pairs))


def _pairs_of(u: Union[CandidateUniverse, Sequence[PairedPoint]]) -> Tuple[PairedPoint, ...]:
    if isinstance(u, CandidateUniverse):
        return u.pairs
    return tuple(u)


@dataclass(frozen=True)
class FunctionTable:
    """An extended-real function given by finitely many listed pairs.

    p is the basepoint the table's couplings and conjugates refer to.
    Pairs not listed take the value +inf. Listed pairs must be distinct.
    """

    p: Point
    entries: Tuple[Tuple[PairedPoint, ExtReal], ...]
    _index: Dict[PairedPoint, ExtReal] = field(
        init=False, repr=False, compare=False, hash=False, default=None
    )

    def __post_init__(self):
        index = {}
        for q, v in self.entries:
            if q in index:
                raise GeometryError(f"duplicate table entry for {q}")
            index[q] = v
        object.__setattr__(self, "_index", index)

    @property
    def domain(self) -> Tuple[PairedPoint, ...]:
        """The listed pairs, in order."""
        return tuple(q for q, _ in self.entries)

    def value(self, q: PairedPoint) -> ExtReal:
        return self._index.get(q, POS_INF)

    def is_proper(self) -> bool:
        """No -inf anywhere and at least one finite value."""
        vals = [v for _, v in self.entries]
        return all(not v.is_neg_inf for v in vals) and any(v.is_finite for v in vals)


def function_table(
    p: Point, rows: Iterable[Tuple[Point, DualVector, Union[Scalar, ExtReal]]]
) -> FunctionTable:
    """Build a FunctionTable from (point, dual, value) rows."""
    return FunctionTable(p, tuple((PairedPoint(x, xd), ext(v)) for x, xd, v in rows))


def coupling_pi(p: Point, q: PairedPoint) -> Scalar:
    """pi_p(q) = <q.xd, p q.x ->."""
    return pair(q.xd, BoundVector(p, q.x))


def swap_r(q: PairedPoint) -> Tuple[DualVector, Point]:
    """The swap (x, x_dual) |-> (x_dual, x)."""
    return (q.xd, q.x)


def paired_close(
    q1: PairedPoint,
    q2: PairedPoint,
    tol: float = 1e-9,
    probes: Optional[Sequence[BoundVector]] = None,
) -> bool:
    """Points within tol and duals behaviorally equal."""
    if q1.x.space != q2.x.space:
        return False
    if distance(q1.x, q2.x) > tol:
        return False
    return duals_match(q1.xd, q2.xd, probes=probes, tol=tol)


def pair_in(
    q: PairedPoint,
    pairs: Sequence[PairedPoint],
    tol: float = 1e-9,
    probes: Optional[Sequence[BoundVector]] = None,
) -> bool:
    return any(paired_close(q, member, tol=tol, probes=probes) for member in pairs)


def indicator(
    members: Sequence[PairedPoint],
    q: PairedPoint,
    tol: float = 1e-9,
    probes: Optional[Sequence[BoundVector]] = None,
) -> ExtReal:
    """0 on the set (behavioral membership), +inf off it."""
    return ExtReal(0) if pair_in(q, members, tol=tol, probes=probes) else POS_INF


def fenchel_conjugate_p(
    h: FunctionTable,
    p: Point,
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    xd: DualVector,
    x: Point,
) -> ExtReal:
    """h*_p at the swapped argument (xd, x), relative to the universe.

    Universe pairs where h is +inf contribute nothing; a -inf value is
    an improper input and raises ImproperTableError. With an empty (or
    entirely +inf) universe the sup is -inf.
    """
    best: Optional[Scalar] = None
    px = BoundVector(p, x)
    for q in _pairs_of(universe):
        hv = h.value(q)
        if hv.is_neg_inf:
            raise ImproperTableError("table takes the value -inf inside the universe")
        if hv.is_pos_inf:
            continue
        term = pair(xd, BoundVector(p, q.x)) + pair(q.xd, px) - hv.value
        if best is None or term > best:
            best = term
    return NEG_INF if best is None else ExtReal(best)


def fenchel_young_check(
    h: FunctionTable,
    p: Point,
    q1: PairedPoint,
    q2: PairedPoint,
    tol: float = 1e-9,
) -> bool:
    """h(q1) + h*_p(swap q2) >= <q2.xd, p q1.x-> + <q1.xd, p q2.x-> - tol.

    The conjugate is taken relative to the table's own listed pairs. h
    must be proper.
    """
    if not h.is_proper():
        raise ImproperTableError("Fenchel-Young check needs a proper table")
    conj = fenchel_conjugate_p(h, p, h.domain, q2.xd, q2.x)
    lhs = h.value(q1) + conj
    rhs = pair(q2.xd, BoundVector(p, q1.x)) + pair(q1.xd, BoundVector(p, q2.x))
    return lhs >= rhs - tol


def avg_lowerbound_check(
    h: FunctionTable,
    p: Point,
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    tol: float = 1e-9,
) -> bool:
    """(h + h*_p o swap) / 2 >= pi_p - tol at every universe pair."""
    pairs = _pairs_of(universe)
    for q in pairs:
        conj = fenchel_conjugate_p(h, p, pairs, q.xd, q.x)
        lhs = scale(Fraction(1, 2), h.value(q) + conj)
        if not lhs >= coupling_pi(p, q) - tol:
            return False
    return True


@dataclass(frozen=True)
class GammaReport:
    """Outcome of the representable-class membership check."""

    holds: bool
    worst_defect: float
    convexity_witness: Optional[dict]
    proper: bool
    convexity_holds: bool
    fixed_point_holds: bool
    skipped_combinations: int


def _find_table_match(
    x: Point,
    xd: DualVector,
    domain: Sequence[PairedPoint],
    tol: float,
    probes: Optional[Sequence[BoundVector]],
) -> Optional[PairedPoint]:
    for cand in domain:
        if distance(cand.x, x) <= tol and duals_match(cand.xd, xd, probes=probes, tol=tol):
            return cand
    return None


def gamma_p_membership(
    h: FunctionTable,
    p: Point,
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    lambda_grid: Sequence[Scalar] = DEFAULT_LAMBDA_GRID,
    tol: float = 1e-9,
    probes: Optional[Sequence[BoundVector]] = None,
) -> GammaReport:
    """Desk-scale membership in the representable-function class.

    Checks, in order: properness (no -inf, some finite value);
    convexity of h along geodesics in the first slot and formal convex
    combinations in the dual slot, but only at lambda-grid combinations
    of listed pairs that land (within tol, behavioral dual equality) on
    another listed pair - combinations that land nowhere are skipped and
    counted; and the fixed-point identity h = (h + indicator{h <=
    pi_p})*_p o swap at every listed pair, with the conjugate taken
    relative to the given universe. Lower semicontinuity is not checked
    (finite data carries no information about it).
    """
    pairs = _pairs_of(universe)
    proper = h.is_proper()

    convexity_holds = True
    convexity_witness: Optional[dict] = None
    skipped = 0
    finite_dom = [q for q in h.domain if h.value(q).is_finite]
    for i in range(len(finite_dom)):
        for j in range(i + 1, len(finite_dom)):
            q1, q2 = finite_dom[i], finite_dom[j]
            for lam in lambda_grid:
                cx = geodesic_point(q1.x, q2.x, lam)
                cd = dual_add(dual_scale(1 - lam, q1.xd), dual_scale(lam, q2.xd))
                match = _find_table_match(cx, cd, h.domain, tol, probes)
                if match is None:
                    skipped += 1
                    continue
                bound = scale(1 - lam, h.value(q1)) + scale(lam, h.value(q2))
                val = h.value(match)
                if not val <= bound + tol:
                    convexity_holds = False
                    if convexity_witness is None:
                        convexity_witness = {
                            "pair_a": q1,
                            "pair_b": q2,
                            "lam": lam,
                            "value": val,
                            "bound": bound,
                        }

    worst = 0.0
    fixed_point_holds = True
    if proper:
        # h + indicator of the region where h sits below the coupling
        capped = FunctionTable(
            h.p,
            tuple(
                (q, v if v <= coupling_pi(p, q) + tol else POS_INF)
                for q, v in h.entries
            ),
        )
        for q, v in h.entries:
            back = fenchel_conjugate_p(capped, p, pairs, q.xd, q.x)
            if v.is_finite and back.is_finite:
                defect = abs(float(v.value - back.value))
            elif v == back:
                defect = 0.0
            else:
                defect = float("inf")
            if defect > worst:
                worst = defect
        fixed_point_holds = worst <= tol
    else:
        fixed_point_holds = False
        worst = float("inf")

    return GammaReport(
        holds=proper and convexity_holds and fixed_point_holds,
        worst_defect=worst,
        convexity_witness=convexity_witness,
        proper=proper,
        convexity_holds=convexity_holds,
        fixed_point_holds=fixed_point_holds,
        skipped_combinations=skipped,
    )


def classical_conjugate_oracle(
    grid: Sequence[Tuple[Tuple[Sequence[Scalar], Sequence[Scalar]], Union[Scalar, ExtReal]]],
    u: Sequence[Scalar],
    x: Sequence[Scalar],
) -> ExtReal:
    """Brute-force flat-space conjugate sup {<<u|y>> + <<v|x>> - h(y, v)}.

    Operates on plain coordinate vectors, independent of the geodesic
    machinery; used as the oracle the basepoint-at-origin pipeline must
    reproduce. grid rows are ((y, v), value); +inf rows drop out, -inf
    raises.
    """

    def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
        return sum(ai * bi for ai, bi in zip(a, b))

    best: Optional[Scalar] = None
    for (y, v), raw in grid:
        val = ext(raw)
        if val.is_neg_inf:
            raise ImproperTableError("grid takes the value -inf")
        if val.is_pos_inf:
            continue
        term = dot(u, y) + dot(v, x) - val.value
        if best is None or term > best:
            best = term
    return NEG_INF if best is None else ExtReal(best)

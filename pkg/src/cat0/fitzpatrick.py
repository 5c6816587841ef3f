"""Fitzpatrick-type transforms of operator graphs and their level sets.

For a finite graph g, basepoint p and query pair (x, x_dual) the
transform is computed in three algebraically equal ways:

* sup form:       sup_{(y, y_dual) in g} { <x_dual, py-> - <y_dual, xy-> }
* coupling form:  pi_p(x, x_dual) - inf_{(y, y_dual) in g}
                  <x_dual - y_dual, yx->
* conjugate form: the p-conjugate of (coupling + graph indicator),
                  relative to the graph itself, at the swapped query.

The three forms agree term by term through the chain-split identity;
computing all of them is a cheap self-check and the agreement is part of
the CLI output. On an empty graph all three give -inf.

On a monotone graph the transform meets the coupling exactly on the
graph's own pairs and its level sets against the coupling encode
monotonicity and relative maximality; level_set_report partitions a
candidate universe accordingly and evaluates the expected cross
properties. s_map inverts the representation: it collects the pairs
where a function table meets its coupling, and roundtrip_check verifies
that transform-of-s_map reproduces tables passing the membership check.

worked_examples re-runs the bundled reference configurations (an exact
rational computation on the branch-glued tree, a float computation on
the hyperbolic sheet) and compares them with their known
exact/closed-form values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .conjugate import (
    CandidateUniverse,
    DEFAULT_LAMBDA_GRID,
    FunctionTable,
    GammaReport,
    PairedPoint,
    _pairs_of,
    coupling_pi,
    fenchel_conjugate_p,
    gamma_p_membership,
    pair_in,
)
from .dual import dual_add, dual_scale, dual_term, pair
from .extreal import ExtReal, NEG_INF, Scalar, ext
from .monotone import (
    OperatorGraph,
    PropertyReport,
    f_property_check,
    is_maximal_relative,
    is_monotone,
    monotone_polar,
    relatedness_gap,
)
from .spaces import (
    BoundVector,
    GeometryError,
    Point,
    SpaceHandle,
    geodesic_point,
    hyperbolic,
    make_point,
    minkowski_form,
    rtree,
)

__all__ = [
    "SLevelReport",
    "FitzConvexityReport",
    "RepresentationPreconditionError",
    "ExampleRow",
    "fitzpatrick_sup",
    "fitzpatrick_inf",
    "fitzpatrick_via_conjugate",
    "fitzpatrick_forms_agree",
    "level_set_report",
    "s_map",
    "roundtrip_check",
    "classical_fitzpatrick_oracle",
    "convexity_check_fitz",
    "worked_examples",
]


class RepresentationPreconditionError(GeometryError):
    """roundtrip_check was handed a table failing the membership check."""

    def __init__(self, report: GammaReport):
        super().__init__(
            "table fails the representable-class membership check "
            f"(proper={report.proper}, convexity={report.convexity_holds}, "
            f"fixed_point={report.fixed_point_holds})"
        )
        self.report = report


def fitzpatrick_sup(g: OperatorGraph, p: Point, q: PairedPoint) -> ExtReal:
    """Supremum form of the transform at the query pair."""
    best: Optional[Scalar] = None
    for gp in g.pairs:
        term = pair(q.xd, BoundVector(p, gp.x)) - pair(gp.xd, BoundVector(q.x, gp.x))
        if best is None or term > best:
            best = term
    return NEG_INF if best is None else ExtReal(best)


def fitzpatrick_inf(g: OperatorGraph, p: Point, q: PairedPoint) -> ExtReal:
    """Coupling-minus-infimum form: pi_p(q) - inf of relatedness gaps."""
    if not g.pairs:
        return NEG_INF
    worst = min(relatedness_gap(q, gp) for gp in g.pairs)
    return ExtReal(coupling_pi(p, q) - worst)


def fitzpatrick_via_conjugate(g: OperatorGraph, p: Point, q: PairedPoint) -> ExtReal:
    """Conjugate form: (coupling + graph indicator)*_p o swap, relative to g."""
    if not g.pairs:
        return NEG_INF
    # repeated members cannot move a supremum, but would collide in the table
    members = tuple(dict.fromkeys(g.pairs))
    table = FunctionTable(
        p, tuple((gp, ExtReal(coupling_pi(p, gp))) for gp in members)
    )
    return fenchel_conjugate_p(table, p, members, q.xd, q.x)


def fitzpatrick_forms_agree(
    g: OperatorGraph, p: Point, q: PairedPoint, tol: float = 1e-9
) -> bool:
    """Do the three forms agree within tol at this query?"""
    a = fitzpatrick_sup(g, p, q)
    b = fitzpatrick_inf(g, p, q)
    c = fitzpatrick_via_conjugate(g, p, q)
    if a.is_finite and b.is_finite and c.is_finite:
        vals = (a.value, b.value, c.value)
        return max(vals) - min(vals) <= tol
    return a == b == c


@dataclass(frozen=True)
class SLevelReport:
    """Partition of a universe by transform-vs-coupling comparison.

    below/equal/above hold universe indices classified with the band
    |transform - coupling| <= band; gaps holds the signed differences
    (transform minus coupling, -inf possible on an empty graph). checks
    records the expected cross properties; entries are None when their
    premise does not apply.
    """

    below: Tuple[int, ...]
    equal: Tuple[int, ...]
    above: Tuple[int, ...]
    gaps: Tuple[ExtReal, ...]
    monotone: bool
    maximal_relative: bool
    checks: dict


def level_set_report(
    g: OperatorGraph,
    p: Point,
    universe: Union[CandidateUniverse, Sequence[PairedPoint]],
    band: float = 1e-9,
    tol: float = 1e-9,
) -> SLevelReport:
    """Classify every universe pair and run the level-set cross checks.

    Cross checks: the at-most-coupling region must coincide with the
    monotone polar of g inside the universe; a monotone graph must sit
    inside the equality band; a maximal-relative graph must exhaust the
    equality region and leave the strictly-below region empty; and
    equality region == graph with nothing below forces relative
    maximality.
    """
    pairs = _pairs_of(universe)
    for q in g.pairs:
        if not pair_in(q, pairs, tol=tol):
            raise GeometryError("universe does not contain the graph")

    below: List[int] = []
    equal: List[int] = []
    above: List[int] = []
    gaps: List[ExtReal] = []
    for i, q in enumerate(pairs):
        phi = fitzpatrick_sup(g, p, q)
        gap = phi - coupling_pi(p, q)
        gaps.append(gap)
        if gap.is_finite and abs(gap.value) <= band:
            equal.append(i)
        elif gap < 0:
            below.append(i)
        else:
            above.append(i)

    graph_idx = {
        i for i, q in enumerate(pairs) if pair_in(q, g.pairs, tol=tol)
    }
    polar_idx = set()
    polar = monotone_polar(g, pairs)
    for i, q in enumerate(pairs):
        if any(member is q or member == q for member in polar):
            polar_idx.add(i)

    mono = is_monotone(g).holds
    maxrel = is_maximal_relative(g, pairs, match_tol=tol).holds
    at_most = set(below) | set(equal)

    checks = {
        "at_most_coupling_equals_polar": at_most == polar_idx,
        "graph_inside_equality_band": (graph_idx <= set(equal)) if mono else None,
        "equality_band_equals_graph": (set(equal) == graph_idx) if maxrel else None,
        "nothing_below_coupling": (not below) if maxrel else None,
        "equality_criterion_gives_maximality": (
            maxrel if (set(equal) == graph_idx and not below) else None
        ),
    }
    return SLevelReport(
        below=tuple(below),
        equal=tuple(equal),
        above=tuple(above),
        gaps=tuple(gaps),
        monotone=mono,
        maximal_relative=maxrel,
        checks=checks,
    )


def s_map(h: FunctionTable, p: Optional[Point] = None, tol: float = 1e-9) -> OperatorGraph:
    """The graph of pairs where the table meets its coupling.

    Collects listed pairs with finite value within tol of pi_p; this is
    the operator a representable table encodes.
    """
    if p is None:
        p = h.p
    selected = tuple(
        q
        for q, v in h.entries
        if v.is_finite and abs(v.value - coupling_pi(p, q)) <= tol
    )
    return OperatorGraph(p.space, selected)


def roundtrip_check(
    h: FunctionTable,
    p: Optional[Point] = None,
    universe: Optional[Union[CandidateUniverse, Sequence[PairedPoint]]] = None,
    lambda_grid: Sequence[Scalar] = DEFAULT_LAMBDA_GRID,
    tol: float = 1e-9,
) -> PropertyReport:
    """Does transform-of-s_map reproduce the table on its own entries?

    Precondition: the table passes the membership check relative to the
    universe (default: its own domain); failures raise
    RepresentationPreconditionError rather than reporting False, so a
    wrong input is never confused with a failed identity.
    """
    if p is None:
        p = h.p
    pairs = _pairs_of(universe) if universe is not None else h.domain
    membership = gamma_p_membership(h, p, pairs, lambda_grid=lambda_grid, tol=tol)
    if not membership.holds:
        raise RepresentationPreconditionError(membership)
    g = s_map(h, p, tol)
    for q, v in h.entries:
        phi = fitzpatrick_sup(g, p, q)
        if phi.is_finite and v.is_finite:
            if abs(phi.value - v.value) > tol:
                return PropertyReport(
                    holds=False, witness={"pair": q, "table": v, "transform": phi}
                )
        elif phi != v:
            return PropertyReport(
                holds=False, witness={"pair": q, "table": v, "transform": phi}
            )
    return PropertyReport(holds=True)


def classical_fitzpatrick_oracle(
    graph: Sequence[Tuple[Sequence[Scalar], Sequence[Scalar]]],
    x: Sequence[Scalar],
    u: Sequence[Scalar],
) -> ExtReal:
    """Brute-force flat-space transform <<x|u>> - inf <<x-y | u-w>>.

    Plain coordinate vectors, no geodesic machinery: the oracle the
    basepoint-at-origin pipeline must reproduce. Empty graph: -inf.
    """

    def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
        return sum(ai * bi for ai, bi in zip(a, b))

    if not graph:
        return NEG_INF
    inner = min(
        dot([xi - yi for xi, yi in zip(x, y)], [ui - wi for ui, wi in zip(u, w)])
        for y, w in graph
    )
    return ExtReal(dot(x, u) - inner)


@dataclass(frozen=True)
class FitzConvexityReport:
    """Sampled convexity of the transform along admissible segments."""

    holds: bool
    witness: Optional[dict]
    checked_pairs: int
    skipped_pairs: int


def convexity_check_fitz(
    g: OperatorGraph,
    p: Point,
    candidate_pairs: Sequence[Tuple[PairedPoint, PairedPoint]],
    lambda_grid: Sequence[Scalar] = DEFAULT_LAMBDA_GRID,
    tol: float = 1e-9,
) -> FitzConvexityReport:
    """Convexity of the transform along segments satisfying its precondition.

    The transform is geodesically convex along (a, b) only when the set
    {a.x, b.x} x range(g) has the lower coupling-convexity property at
    p; candidate pairs failing that precondition are skipped and
    counted, the rest are checked on the lambda grid with dual-slot
    combinations taken formally.
    """
    if not g.pairs:
        return FitzConvexityReport(holds=True, witness=None, checked_pairs=0, skipped_pairs=0)
    checked = 0
    skipped = 0
    witness: Optional[dict] = None
    rng_duals = g.range_duals()
    for qa, qb in candidate_pairs:
        precondition_set = tuple(
            PairedPoint(x, xd) for x in (qa.x, qb.x) for xd in rng_duals
        )
        fl = f_property_check(precondition_set, p, lambda_grid)
        if not fl.lower.holds:
            skipped += 1
            continue
        checked += 1
        va = fitzpatrick_sup(g, p, qa)
        vb = fitzpatrick_sup(g, p, qb)
        for lam in lambda_grid:
            mid = PairedPoint(
                geodesic_point(qa.x, qb.x, lam),
                dual_add(dual_scale(1 - lam, qa.xd), dual_scale(lam, qb.xd)),
            )
            vm = fitzpatrick_sup(g, p, mid)
            bound = (1 - lam) * va.value + lam * vb.value
            if witness is None and not vm.value <= bound + tol:
                witness = {
                    "pair_a": qa,
                    "pair_b": qb,
                    "lam": lam,
                    "value": vm,
                    "bound": ExtReal(bound),
                }
    return FitzConvexityReport(
        holds=witness is None,
        witness=witness,
        checked_pairs=checked,
        skipped_pairs=skipped,
    )


# --------------------------------------------------------------------------
# bundled reference examples


@dataclass(frozen=True)
class ExampleRow:
    """One computed-vs-expected comparison from the reference examples."""

    name: str
    computed: ExtReal
    expected: ExtReal
    tol: Scalar
    passed: bool


def _row(name: str, computed, expected, tol) -> ExampleRow:
    comp = ext(computed)
    expe = ext(expected)
    if tol == 0:
        ok = comp == expe
    else:
        ok = comp.is_finite and expe.is_finite and abs(comp.value - expe.value) <= tol
    return ExampleRow(name=name, computed=comp, expected=expe, tol=tol, passed=ok)


def _tree_example_rows(depth: int, branch_heads: Sequence[int], t0_samples: Sequence[Scalar]) -> List[ExampleRow]:
    space = rtree()
    chain = [make_point(space, (n, Fraction(1, n))) for n in range(1, depth + 2)]
    graph = OperatorGraph(
        space,
        tuple(
            PairedPoint(chain[n - 1], dual_term(1, chain[n - 1], chain[n]))
            for n in range(1, depth + 1)
        ),
    )
    x = make_point(space, (1, 0))  # the gluing point
    xd = dual_term(
        1,
        make_point(space, (2, Fraction(2, 3))),
        make_point(space, (3, 1)),
    )
    query = PairedPoint(x, xd)

    def expected_gap(n: int) -> Fraction:
        if n == 1:
            return Fraction(-7, 6)
        if n == 2:
            return Fraction(5, 12)
        if n == 3:
            return Fraction(-3, 4)
        return Fraction(n * n - 5 * n - 3, 3 * n * n * (n + 1))

    rows = [
        _row(
            f"tree: query-vs-graph gap at chain index {n}",
            relatedness_gap(query, graph.pairs[n - 1]),
            expected_gap(n),
            0,
        )
        for n in range(1, min(5, depth) + 1)
    ]
    inner = min(relatedness_gap(query, gp) for gp in graph.pairs)
    rows.append(_row("tree: inner infimum over the chain graph", inner, Fraction(-7, 6), 0))

    def expected_coupling(n0: int, t0: Scalar) -> Scalar:
        if n0 == 2:
            return Fraction(5, 3) * t0
        if n0 == 3:
            return Fraction(-5, 3) * t0
        return Fraction(1, 3) * t0

    for n0 in branch_heads:
        for t0 in t0_samples:
            p = make_point(space, (n0, t0))
            pi = coupling_pi(p, query)
            rows.append(
                _row(
                    f"tree: coupling at basepoint ({n0}, {t0})",
                    pi,
                    expected_coupling(n0, t0),
                    0,
                )
            )
            phi = fitzpatrick_sup(graph, p, query)
            rows.append(
                _row(
                    f"tree: transform at basepoint ({n0}, {t0})",
                    phi,
                    expected_coupling(n0, t0) + Fraction(7, 6),
                    0,
                )
            )
    # exact three-way agreement at one basepoint
    p = make_point(space, (branch_heads[0], t0_samples[-1]))
    a = fitzpatrick_sup(graph, p, query)
    b = fitzpatrick_inf(graph, p, query)
    c = fitzpatrick_via_conjugate(graph, p, query)
    spread = max(a.value, b.value, c.value) - min(a.value, b.value, c.value)
    rows.append(_row("tree: transform form spread", spread, 0, 0))
    return rows


def _hyperbolic_curve_point(space: SpaceHandle, t: float) -> Point:
    return make_point(space, (math.sinh(t), 0.0, math.cosh(t)))


def _hyperbolic_example_rows(
    grid_stop: float, grid_step: float, slope_samples: Sequence[float]
) -> List[ExampleRow]:
    space = hyperbolic(2)
    p = make_point(space, (1.0, -1.0, math.sqrt(3.0)))
    x = make_point(space, (0.0, 0.0, 1.0))
    xd = dual_term(
        1.0,
        make_point(space, (1.0, 0.0, math.sqrt(2.0))),
        make_point(space, (0.0, -1.0, math.sqrt(2.0))),
    )
    query = PairedPoint(x, xd)

    rows = [
        _row("hyperbolic: coupling at basepoint", coupling_pi(p, query), 0.0, 1e-9)
    ]
    for t in slope_samples:
        yt = _hyperbolic_curve_point(space, t)
        yd = dual_term(1.0, yt, _hyperbolic_curve_point(space, t + 1.0))
        rows.append(
            _row(
                f"hyperbolic: curve-dual pairing at t={t:g}",
                pair(yd, BoundVector(yt, x)),
                -t,
                1e-9,
            )
        )

    steps = int(round(grid_stop / grid_step))
    pairs = []
    for k in range(steps + 1):
        t = k * grid_step
        yt = _hyperbolic_curve_point(space, t)
        pairs.append(PairedPoint(yt, dual_term(1.0, yt, _hyperbolic_curve_point(space, t + 1.0))))
    graph = OperatorGraph(space, tuple(pairs))
    phi = fitzpatrick_sup(graph, p, query)
    rows.append(_row("hyperbolic: transform over the curve grid", phi, 0.0, 1e-6))

    # midpoint comparison witness: pairing along the geodesic midpoint
    # sits strictly below the chord value, so the upper coupling
    # property fails at this configuration
    aw = make_point(space, (1.0, 0.0, math.sqrt(2.0)))
    bw = make_point(space, (-1.0, 0.0, math.sqrt(2.0)))
    xw = make_point(space, (0.0, 1.0, math.sqrt(2.0)))
    xdw = dual_term(1.0, aw, bw)
    rows.append(
        _row(
            "hyperbolic: witness endpoints form value",
            minkowski_form(xw.payload, bw.payload),
            -2.0,
            1e-9,
        )
    )
    mid = geodesic_point(xw, bw, Fraction(1, 2))
    alpha = math.cosh(0.5 * math.acosh(2.0))
    beta = math.sinh(0.5 * math.acosh(2.0)) / math.sqrt(3.0)
    closed = (-beta, alpha - 2 * beta, math.sqrt(2.0) * (alpha - beta))
    coord_defect = max(abs(a - b) for a, b in zip(mid.payload, closed))
    rows.append(_row("hyperbolic: midpoint coordinate defect", coord_defect, 0.0, 1e-9))
    rows.append(
        _row(
            "hyperbolic: witness pairing, midpoint side",
            pair(xdw, BoundVector(xw, mid)),
            0.6816,
            5e-4,
        )
    )
    rows.append(
        _row(
            "hyperbolic: witness pairing, chord side",
            0.5 * pair(xdw, BoundVector(xw, bw)),
            0.7768,
            5e-4,
        )
    )
    return rows


def worked_examples(
    tree_depth: int = 25,
    tree_branch_heads: Sequence[int] = (2, 3, 5),
    tree_t0_samples: Sequence[Scalar] = (0, Fraction(1, 4), Fraction(1, 2), 1),
    curve_grid_stop: float = 10.0,
    curve_grid_step: float = 0.01,
    curve_slope_samples: Sequence[float] = (0.0, 0.5, 1.0, 2.0, 5.0),
) -> Tuple[ExampleRow, ...]:
    """Recompute the bundled reference examples and compare with their targets.

    The tree rows are exact rational identities (tolerance 0); the
    hyperbolic rows carry explicit float tolerances. Deterministic: no
    randomness enters anywhere.
    """
    rows = _tree_example_rows(tree_depth, tree_branch_heads, tree_t0_samples)
    rows += _hyperbolic_example_rows(curve_grid_stop, curve_grid_step, curve_slope_samples)
    return tuple(rows)

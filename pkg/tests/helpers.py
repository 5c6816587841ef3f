"""Shared instance builders for the test suite.

Everything here is deterministic given an explicit random.Random, and
Euclidean instances stay on integer grids so the whole pipeline runs in
exact rational arithmetic.
"""

import itertools
import random
from fractions import Fraction
from typing import List, Sequence, Tuple

from cat0 import (
    DualVector,
    OperatorGraph,
    PairedPoint,
    Point,
    SpaceHandle,
    dual_term,
    dual_vector,
    euclidean,
    fitzpatrick_sup,
    make_point,
    monotone_polar,
    pair_in,
    zero_dual,
)
from cat0.spaces import BoundVector

ORIGIN2 = make_point(euclidean(2), (0, 0))


def int_points(space: SpaceHandle, rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> List[Point]:
    """n random integer-coordinate points (duplicates possible)."""
    return [
        make_point(space, tuple(rng.randint(lo, hi) for _ in range(space.dim)))
        for _ in range(n)
    ]


def grid_points(space: SpaceHandle, coords: Sequence[int]) -> List[Point]:
    """The full integer grid coords^dim as points."""
    return [make_point(space, c) for c in itertools.product(coords, repeat=space.dim)]


def vector_dual(space: SpaceHandle, vec: Sequence) -> DualVector:
    """The dual whose canonical Euclidean vector is vec, anchored at the origin."""
    origin = make_point(space, (0,) * space.dim)
    if all(v == 0 for v in vec):
        return zero_dual()
    return dual_term(1, origin, make_point(space, tuple(vec)))


def grid_duals(space: SpaceHandle, vectors: Sequence[Sequence[int]]) -> List[DualVector]:
    return [vector_dual(space, v) for v in vectors]


def product_universe(points: Sequence[Point], duals: Sequence[DualVector]) -> Tuple[PairedPoint, ...]:
    return tuple(PairedPoint(x, xd) for x in points for xd in duals)


def small_universe(side: int = 3, vec_range: int = 1) -> Tuple[PairedPoint, ...]:
    """Exhaustive grid universe: side^2 points x all small integer duals."""
    space = euclidean(2)
    pts = grid_points(space, range(side))
    vecs = [
        v
        for v in itertools.product(range(-vec_range, vec_range + 1), repeat=2)
    ]
    return product_universe(pts, grid_duals(space, vecs))


def greedy_monotone_subset(
    rng: random.Random, universe: Sequence[PairedPoint], size: int
) -> Tuple[PairedPoint, ...]:
    """A random monotone subset of the universe, grown greedily."""
    from cat0 import monotonically_related

    order = list(universe)
    rng.shuffle(order)
    kept: List[PairedPoint] = []
    for q in order:
        if len(kept) >= size:
            break
        if all(monotonically_related(q, r) for r in kept):
            kept.append(q)
    return tuple(kept)


def polar_complete(
    pairs: Sequence[PairedPoint], universe: Sequence[PairedPoint]
) -> Tuple[PairedPoint, ...]:
    """Extend a monotone set until its polar inside the universe adds nothing.

    Adds one polar element at a time (polar members need not be related
    to each other, so batch insertion could break monotonicity).
    """
    current = list(pairs)
    while True:
        polar = monotone_polar(current, universe)
        extra = next((q for q in polar if not pair_in(q, current)), None)
        if extra is None:
            return tuple(current)
        current.append(extra)


def maximal_relative_graph(
    rng: random.Random,
    universe: Sequence[PairedPoint],
    seed_size: int = 2,
    space: SpaceHandle = None,
) -> OperatorGraph:
    space = space if space is not None else universe[0].x.space
    seed = greedy_monotone_subset(rng, universe, seed_size)
    return OperatorGraph(space, polar_complete(seed, universe))


def transform_table(g: OperatorGraph, p: Point, universe: Sequence[PairedPoint]):
    """The transform of g sampled on the whole universe, as a function table."""
    from cat0 import FunctionTable

    return FunctionTable(p, tuple((q, fitzpatrick_sup(g, p, q)) for q in universe))


def random_proper_table(
    rng: random.Random,
    space: SpaceHandle,
    n_entries: int,
    coord_range: int = 2,
    value_range: int = 4,
):
    """A random finite-valued table over an integer grid, all values finite."""
    from cat0 import FunctionTable, ExtReal

    seen = set()
    entries = []
    guard = 0
    while len(entries) < n_entries and guard < 50 * n_entries:
        guard += 1
        x = make_point(
            space, tuple(rng.randint(-coord_range, coord_range) for _ in range(space.dim))
        )
        vec = tuple(rng.randint(-coord_range, coord_range) for _ in range(space.dim))
        key = (x.payload, vec)
        if key in seen:
            continue
        seen.add(key)
        xd = vector_dual(space, vec)
        value = ExtReal(Fraction(rng.randint(-value_range, value_range), rng.choice((1, 2))))
        entries.append((PairedPoint(x, xd), value))
    return FunctionTable(make_point(space, (0,) * space.dim), tuple(entries))


def random_graph(
    rng: random.Random, space: SpaceHandle, n_pairs: int, sampler
) -> OperatorGraph:
    """Graph with points from sampler() and single-term duals between samples."""
    pairs = []
    for _ in range(n_pairs):
        x = sampler()
        a, b = sampler(), sampler()
        coeff = Fraction(rng.randint(-2, 2), rng.choice((1, 2)))
        xd = dual_term(coeff, a, b) if coeff != 0 and a != b else zero_dual()
        pairs.append(PairedPoint(x, xd))
    return OperatorGraph(space, tuple(pairs))


def hilbert_inner(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def canonical_hilbert_of(xd: DualVector, dim: int = 2):
    from cat0 import canonical_hilbert

    return canonical_hilbert(xd, dim=dim)


def bound_vectors_between(points: Sequence[Point]) -> List[BoundVector]:
    return [BoundVector(a, b) for a, b in itertools.permutations(points, 2) if a != b]

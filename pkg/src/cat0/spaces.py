"""The three concrete Hadamard spaces and their primitive operations.

Supported models:

* ``euclidean``: R^n with the usual metric; geodesics are segments.
* ``rtree``: countably many unit segments [0, 1], one per branch index
  n >= 1, glued at 0. Distance is |t - s| on a common branch and t + s
  across branches (every path runs through the gluing point, called the
  root). The root is canonically branch 1 at parameter 0.
* ``hyperbolic``: the hyperboloid sheet {x : <x,x> = -1, x_last > 0} in
  R^(n+1) with the Minkowski bilinear form <x,y> = sum_i x_i y_i -
  x_last y_last and distance d(x,y) = arccosh(-<x,y>).

Points are immutable and tagged with their space; mixing spaces raises
``SpaceMismatchError``. Coordinates may be exact (``int``/``Fraction``)
or float. Every formula that is rational in its inputs (Euclidean
squared distances, all R-tree arithmetic, affine geodesics) preserves
exactness; downstream sup/inf computations rely on this.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real as _NumbersReal
from typing import Iterable, Sequence, Tuple

from .extreal import Scalar

EUCLIDEAN = "euclidean"
RTREE = "rtree"
HYPERBOLIC = "hyperbolic"
_KINDS = (EUCLIDEAN, RTREE, HYPERBOLIC)

# arccosh arguments that fall below 1 by no more than this are snapped
# to exactly 1; anything lower is treated as invalid input.
ACOSH_SLACK = 1e-12

PROBE_SEED = 0x5EED


class GeometryError(ValueError):
    """Invalid geometric input."""


class SpaceMismatchError(GeometryError):
    """Operands are tagged with different spaces."""


class PointValidationError(GeometryError):
    """A payload violates its space's point constraints."""


@dataclass(frozen=True)
class SpaceHandle:
    """Identifies one of the supported space models.

    ``dim`` is the geometric dimension for euclidean/hyperbolic handles
    (hyperbolic payloads have dim + 1 coordinates) and is ignored for
    the tree.
    """

    kind: str
    dim: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise GeometryError(f"unknown space kind {self.kind!r}")
        if self.kind != RTREE and self.dim < 1:
            raise GeometryError(f"{self.kind} space needs dim >= 1, got {self.dim}")

    @property
    def coord_len(self) -> int:
        """Number of payload coordinates a point of this space carries."""
        if self.kind == EUCLIDEAN:
            return self.dim
        if self.kind == HYPERBOLIC:
            return self.dim + 1
        return 2  # (branch, parameter)

    @property
    def default_tol(self) -> float:
        """Comparison tolerance: closed-form spaces are tight, arccosh is not."""
        return 1e-7 if self.kind == HYPERBOLIC else 1e-9


def euclidean(dim: int) -> SpaceHandle:
    return SpaceHandle(EUCLIDEAN, dim)


def rtree() -> SpaceHandle:
    return SpaceHandle(RTREE)


def hyperbolic(dim: int) -> SpaceHandle:
    return SpaceHandle(HYPERBOLIC, dim)


@dataclass(frozen=True)
class Point:
    """A validated point; build with make_point rather than directly."""

    space: SpaceHandle
    payload: Tuple[Scalar, ...]


@dataclass(frozen=True)
class BoundVector:
    """An ordered point pair tail->head, the argument of quasilinearization."""

    tail: Point
    head: Point

    def __post_init__(self):
        if self.tail.space != self.head.space:
            raise SpaceMismatchError(
                f"bound vector endpoints live in different spaces: "
                f"{self.tail.space} vs {self.head.space}"
            )

    @property
    def space(self) -> SpaceHandle:
        return self.tail.space

    @property
    def is_zero(self) -> bool:
        return self.tail == self.head


def _check_scalar(v, where: str) -> Scalar:
    if isinstance(v, bool) or not isinstance(v, _NumbersReal):
        raise PointValidationError(f"{where}: not a real number: {v!r}")
    if isinstance(v, float) and not math.isfinite(v):
        raise PointValidationError(f"{where}: coordinate must be finite, got {v!r}")
    return v


def make_point(space: SpaceHandle, payload: Sequence, tol: float = 1e-9) -> Point:
    """Validate a raw payload and return a canonical Point.

    euclidean: dim finite coordinates. rtree: (branch, t) with integer
    branch >= 1 and 0 <= t <= 1; t == 0 is canonicalized to branch 1 so
    that all representatives of the root compare equal. hyperbolic:
    dim + 1 coordinates with <x,x> = -1 within tol and positive last
    coordinate.
    """
    if space.kind == RTREE:
        if len(payload) != 2:
            raise PointValidationError(
                f"rtree payload must be (branch, t), got {len(payload)} entries"
            )
        branch, t = payload
        if isinstance(branch, bool) or not isinstance(branch, int):
            if isinstance(branch, _NumbersReal) and not isinstance(branch, bool) and branch == int(branch):
                branch = int(branch)
            else:
                raise PointValidationError(f"rtree branch must be an integer, got {branch!r}")
        if branch < 1:
            raise PointValidationError(f"rtree branch must be >= 1, got {branch}")
        _check_scalar(t, "rtree parameter")
        if not (0 <= t <= 1):
            raise PointValidationError(f"rtree parameter must lie in [0, 1], got {t}")
        if t == 0:
            branch = 1
        return Point(space, (branch, t))

    coords = tuple(_check_scalar(v, f"{space.kind} coordinate") for v in payload)
    if len(coords) != space.coord_len:
        raise PointValidationError(
            f"{space.kind} payload needs {space.coord_len} coordinates, got {len(coords)}"
        )
    if space.kind == HYPERBOLIC:
        defect = minkowski_form(coords, coords) + 1
        # the float error of the form itself grows with the squared
        # coordinate size, so the acceptance band scales the same way
        scale = 1 + sum(float(c) * float(c) for c in coords)
        if abs(defect) > tol * scale:
            raise PointValidationError(
                f"hyperboloid constraint <x,x> = -1 violated by {float(defect):.3e} "
                f"(tolerance {tol * scale:.3e})"
            )
        if coords[-1] <= 0:
            raise PointValidationError(
                f"hyperboloid sheet requires positive last coordinate, got {coords[-1]}"
            )
    return Point(space, coords)


def minkowski_form(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """Bilinear form sum_i x_i y_i - x_last y_last on R^(n+1)."""
    if len(x) != len(y):
        raise GeometryError(f"form arguments of different lengths: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise GeometryError("form needs at least 2 coordinates")
    total = 0
    for a, b in zip(x[:-1], y[:-1]):
        total += a * b
    return total - x[-1] * y[-1]


def _same_space(x: Point, y: Point) -> SpaceHandle:
    if x.space != y.space:
        raise SpaceMismatchError(f"points live in different spaces: {x.space} vs {y.space}")
    return x.space


def _cosh_of_distance(x: Point, y: Point) -> float:
    """-<x,y> for hyperboloid points, snapped up to 1 when rounding dips below."""
    m = -minkowski_form(x.payload, y.payload)
    if m < 1:
        if m >= 1 - ACOSH_SLACK:
            return 1.0
        raise PointValidationError(
            f"arccosh argument {m!r} below 1 by more than {ACOSH_SLACK:.0e}; "
            "inputs are not valid hyperboloid points"
        )
    return m


def distance(x: Point, y: Point) -> Scalar:
    """Geodesic distance. Exact (int/Fraction preserving) on the rtree."""
    space = _same_space(x, y)
    if x == y:
        return 0
    if space.kind == EUCLIDEAN:
        return math.sqrt(sum((a - b) ** 2 for a, b in zip(x.payload, y.payload)))
    if space.kind == RTREE:
        n, t = x.payload
        m, s = y.payload
        return abs(t - s) if n == m else t + s
    return math.acosh(_cosh_of_distance(x, y))


def dist_sq(x: Point, y: Point) -> Scalar:
    """Squared distance; exact on euclidean/rtree rational inputs.

    This is the primitive the quasilinearization formula consumes, so it
    avoids the sqrt round trip wherever the square has a closed form.
    """
    space = _same_space(x, y)
    if x == y:
        return 0
    if space.kind == EUCLIDEAN:
        return sum((a - b) ** 2 for a, b in zip(x.payload, y.payload))
    if space.kind == RTREE:
        d = distance(x, y)
        return d * d
    d = math.acosh(_cosh_of_distance(x, y))
    return d * d


def _check_unit_interval(t: Scalar):
    if isinstance(t, bool) or not isinstance(t, _NumbersReal):
        raise GeometryError(f"geodesic parameter must be a real number, got {t!r}")
    if not (0 <= t <= 1):
        raise GeometryError(f"geodesic parameter must lie in [0, 1], got {t}")


def _clamp01(v: Scalar) -> Scalar:
    # float rounding can push a branch parameter a hair outside [0, 1]
    if isinstance(v, float):
        if -1e-12 < v < 0:
            return 0.0
        if 1 < v < 1 + 1e-12:
            return 1.0
    return v


def _rtree_geodesic(x: Point, y: Point, lam: Scalar) -> Point:
    n, t = x.payload
    m, s = y.payload
    if n == m:
        return make_point(x.space, (n, _clamp01((1 - lam) * t + lam * s)))
    # distinct branches: the geodesic runs through the root, switching
    # branches at lam = t / (t + s)
    if lam * (t + s) <= t:
        return make_point(x.space, (n, _clamp01((1 - lam) * t - lam * s)))
    return make_point(x.space, (m, _clamp01((lam - 1) * t + lam * s)))


def hyperbolic_geodesic(x: Point, y: Point, t: Scalar) -> Point:
    """Point at parameter t on the hyperboloid geodesic from x to y.

    Uses cosh(t d) x + sinh(t d) z where z = (y - cosh(d) x) / sinh(d)
    is the unit tangent at x toward y and d = d(x, y).
    """
    space = _same_space(x, y)
    if space.kind != HYPERBOLIC:
        raise GeometryError(f"hyperbolic_geodesic needs a hyperbolic space, got {space.kind}")
    _check_unit_interval(t)
    if x == y or t == 0:
        return x
    if t == 1:
        return y
    m = _cosh_of_distance(x, y)
    q = m * m - 1
    if q <= 0:
        return x  # numerically coincident endpoints
    d = math.acosh(m)
    root = math.sqrt(q)
    z = tuple((yi - m * xi) / root for xi, yi in zip(x.payload, y.payload))
    c, s = math.cosh(t * d), math.sinh(t * d)
    payload = tuple(c * xi + s * zi for xi, zi in zip(x.payload, z))
    return make_point(space, payload, tol=1e-7)


def geodesic_point(x: Point, y: Point, t: Scalar) -> Point:
    """The point (1-t) x (+) t y on the unique geodesic from x to y."""
    space = _same_space(x, y)
    _check_unit_interval(t)
    if x == y or t == 0:
        return x
    if t == 1:
        return y
    if space.kind == EUCLIDEAN:
        return Point(space, tuple(a + t * (b - a) for a, b in zip(x.payload, y.payload)))
    if space.kind == RTREE:
        return _rtree_geodesic(x, y, t)
    return hyperbolic_geodesic(x, y, t)


def random_point(
    space: SpaceHandle,
    rng: random.Random,
    spread: float = 2.0,
    branches: int = 4,
) -> Point:
    """A random point, used for probe sets and sampled checks."""
    if space.kind == EUCLIDEAN:
        return Point(space, tuple(rng.uniform(-spread, spread) for _ in range(space.dim)))
    if space.kind == RTREE:
        return make_point(space, (rng.randint(1, branches), rng.random()))
    u = [rng.uniform(-spread, spread) for _ in range(space.dim)]
    last = math.sqrt(1 + sum(v * v for v in u))
    return make_point(space, (*u, last))


def sample_points(
    space: SpaceHandle,
    count: int,
    seed: int = PROBE_SEED,
    spread: float = 2.0,
    branches: int = 4,
) -> Tuple[Point, ...]:
    """Deterministic sample of points (fixed default seed)."""
    rng = random.Random(seed)
    return tuple(random_point(space, rng, spread=spread, branches=branches) for _ in range(count))


def distinct_pairs(points: Iterable[Point]) -> Tuple[Tuple[Point, Point], ...]:
    """All unordered pairs of distinct points, in input order."""
    pts = list(points)
    return tuple((a, b) for a, b in itertools.combinations(pts, 2) if a != b)

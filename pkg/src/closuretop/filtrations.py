"""Metric-induced closures and filtered closure spaces.

A filtered closure space is a finite ascending grid of critical values
with one closure space per grid value, point sets and singleton
closures both growing along the grid.  Values read from files are kept
as exact fractions so grid arithmetic stays exact.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import BadParameter, MissingPoint, NegativeEpsilon, ParseError
from .spaces import FiniteClosureSpace, subspace

EMPTY_SPACE = FiniteClosureSpace([], {})


def parse_number(text):
    """Parse a decimal or rational literal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a number: {text!r}") from exc


class FiniteMetric:
    """A finite (pseudo-)metric given by a symmetric distance matrix."""

    __slots__ = ("points", "dist")

    def __init__(self, points, dist, pseudo: bool = False):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise BadParameter("duplicate point ids")
        d = {}
        for x in pts:
            for y in pts:
                if (x, y) not in dist:
                    raise BadParameter(f"no distance for {(x, y)!r}")
                d[(x, y)] = dist[(x, y)]
        for x in pts:
            if d[(x, x)] != 0:
                raise BadParameter(f"nonzero self distance at {x!r}")
            for y in pts:
                if d[(x, y)] < 0:
                    raise BadParameter("negative distance")
                if d[(x, y)] != d[(y, x)]:
                    raise BadParameter(f"asymmetric distance at {(x, y)!r}")
                if not pseudo and x != y and d[(x, y)] == 0:
                    raise BadParameter(f"zero distance between distinct points {(x, y)!r}")
                for z in pts:
                    if d[(x, z)] > d[(x, y)] + d[(y, z)]:
                        raise BadParameter(f"triangle inequality fails at {(x, y, z)!r}")
        self.points = pts
        self.dist = d

    def d(self, x, y):
        if (x, y) not in self.dist:
            raise MissingPoint(f"{(x, y)!r} not in this metric space")
        return self.dist[(x, y)]


def metric_from_matrix(labels, matrix, pseudo: bool = False) -> FiniteMetric:
    """Build a FiniteMetric from a square matrix (list of rows)."""
    labels = list(labels)
    dist = {(labels[i], labels[j]): matrix[i][j]
            for i in range(len(labels)) for j in range(len(labels))}
    return FiniteMetric(labels, dist, pseudo=pseudo)


class Decoration(Enum):
    """Ball convention for closures induced by a metric."""

    MINUS = "minus"    # open balls (with the center always included)
    CLOSED = "closed"  # closed balls
    PLUS = "plus"      # dist(y, {x}) <= eps; equals CLOSED on finite metrics


def metric_closure(M: FiniteMetric, eps, dec: Decoration = Decoration.CLOSED) -> FiniteClosureSpace:
    """Closure space on M's points at scale eps under the given decoration.

    PLUS is an alias of CLOSED here: on a finite metric the infimum of
    the distance to a singleton is attained.
    """
    if eps < 0:
        raise NegativeEpsilon("eps must be nonnegative")
    cmap = {}
    for x in M.points:
        if dec is Decoration.MINUS:
            cl = {y for y in M.points if M.dist[(x, y)] < eps} | {x}
        else:
            cl = {y for y in M.points if M.dist[(x, y)] <= eps}
        cmap[x] = frozenset(cl)
    return FiniteClosureSpace(M.points, cmap)


class FilteredClosureSpace:
    """A right-continuous step function of closure spaces over a finite grid."""

    __slots__ = ("grid", "stages")

    def __init__(self, grid, stages):
        grid = tuple(grid)
        stages = tuple(stages)
        if len(grid) != len(stages) or not grid:
            raise BadParameter("grid and stages must be nonempty and aligned")
        for a, b in zip(grid, grid[1:]):
            if not a < b:
                raise BadParameter("grid must be strictly increasing")
        for A, B in zip(stages, stages[1:]):
            if not A.point_set() <= B.point_set():
                raise BadParameter("stage point sets must be nested")
            for x in A.points:
                if not A.closure_map[x] <= B.closure_map[x]:
                    raise BadParameter("stage closures must be nested")
        self.grid = grid
        self.stages = stages

    def stage_at(self, t) -> FiniteClosureSpace:
        """Stage at the largest grid value <= t; the empty space below the grid."""
        out = EMPTY_SPACE
        for v, stage in zip(self.grid, self.stages):
            if v <= t:
                out = stage
            else:
                break
        return out

    def final_stage(self) -> FiniteClosureSpace:
        return self.stages[-1]

    def __eq__(self, other):
        if not isinstance(other, FilteredClosureSpace):
            return NotImplemented
        return self.grid == other.grid and self.stages == other.stages

    def __repr__(self):
        return f"FilteredClosureSpace(grid={self.grid!r}, {len(self.stages)} stages)"


def stage_at(F: FilteredClosureSpace, t) -> FiniteClosureSpace:
    return F.stage_at(t)


def filtered_from_metric(M: FiniteMetric, dec: Decoration = Decoration.CLOSED) -> FilteredClosureSpace:
    """Filtration over the grid of pairwise distances (with 0 prepended).

    For MINUS the stage stored at grid value t is the strict-ball
    closure at t, which equals the closed-ball closure at the previous
    grid value; diagrams then differ from CLOSED only by the endpoint
    convention.
    """
    vals = sorted({M.dist[(x, y)] for x in M.points for y in M.points} | {0 * Fraction(1)})
    grid = vals if vals[0] == 0 else [0] + vals
    stages = [metric_closure(M, t, dec) for t in grid]
    return FilteredClosureSpace(grid, stages)


class WeightedDigraph:
    """Points, loop-free directed edges, and nonnegative edge weights."""

    __slots__ = ("points", "weights")

    def __init__(self, points, weights):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise BadParameter("duplicate point ids")
        pset = set(pts)
        w = {}
        for (a, b), v in dict(weights).items():
            if a not in pset or b not in pset:
                raise MissingPoint(f"edge {(a, b)!r} uses unknown points")
            if a == b:
                raise BadParameter(f"self-loop at {a!r}")
            if v < 0:
                raise BadParameter("negative weight")
            w[(a, b)] = v
        self.points = pts
        self.weights = w


def filtered_from_weighted_digraph(G: WeightedDigraph) -> FilteredClosureSpace:
    """Stage t keeps the edges of weight at most t (plus all loops)."""
    vals = sorted({v for v in G.weights.values()} | {0 * Fraction(1)})
    grid = vals if vals and vals[0] == 0 else [0] + vals
    stages = []
    for t in grid:
        cmap = {x: frozenset({x} | {y for (a, y), v in G.weights.items()
                                    if a == x and v <= t})
                for x in G.points}
        stages.append(FiniteClosureSpace(G.points, cmap))
    return FilteredClosureSpace(grid, stages)


def filtered_from_sublevel(X: FiniteClosureSpace, f) -> FilteredClosureSpace:
    """Sublevel filtration of f with the subspace closures of X."""
    for x in X.points:
        if x not in f:
            raise MissingPoint(f"no function value for {x!r}")
    grid = sorted(set(f[x] for x in X.points))
    stages = [subspace(X, [x for x in X.points if f[x] <= t]) for t in grid]
    return FilteredClosureSpace(grid, stages)


# ---------------------------------------------------------------------------
# product metrics, used by the product-law checks

def linf_product(MX: FiniteMetric, MY: FiniteMetric) -> FiniteMetric:
    """Sup metric on the product point set (pairs)."""
    pts = [(x, y) for x in MX.points for y in MY.points]
    dist = {((x1, y1), (x2, y2)): max(MX.dist[(x1, x2)], MY.dist[(y1, y2)])
            for (x1, y1) in pts for (x2, y2) in pts}
    return FiniteMetric(pts, dist, pseudo=True)


def l1_product(MX: FiniteMetric, MY: FiniteMetric) -> FiniteMetric:
    """Sum metric on the product point set (pairs)."""
    pts = [(x, y) for x in MX.points for y in MY.points]
    dist = {((x1, y1), (x2, y2)): MX.dist[(x1, x2)] + MY.dist[(y1, y2)]
            for (x1, y1) in pts for (x2, y2) in pts}
    return FiniteMetric(pts, dist, pseudo=True)


# ---------------------------------------------------------------------------
# file formats

def metric_from_csv(text: str, pseudo: bool = False) -> FiniteMetric:
    """Square distance matrix as CSV; a header row of labels is optional."""
    rows = [row for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
    if not rows:
        raise ParseError("empty distance matrix")
    labels = None
    first = rows[0]
    try:
        [parse_number(c) for c in first]
    except ParseError:
        labels = [c.strip() for c in first]
        rows = rows[1:]
    if not rows:
        raise ParseError("distance matrix has a header but no rows")
    matrix = [[parse_number(c) for c in row] for row in rows]
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ParseError("distance matrix must be square")
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise ParseError("header length does not match the matrix size")
    try:
        return metric_from_matrix(labels, matrix, pseudo=pseudo)
    except BadParameter as exc:
        raise ParseError(str(exc)) from exc


def digraph_from_text(text: str) -> WeightedDigraph:
    """Weighted digraph as lines "src dst weight"."""
    weights = {}
    points = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'src dst weight'")
        a, b, w = parts[0], parts[1], parse_number(parts[2])
        for p in (a, b):
            if p not in seen:
                seen.add(p)
                points.append(p)
        if (a, b) in weights:
            raise ParseError(f"line {lineno}: duplicate edge {(a, b)!r}")
        weights[(a, b)] = w
    if not points:
        raise ParseError("empty digraph file")
    try:
        return WeightedDigraph(points, weights)
    except BadParameter as exc:
        raise ParseError(str(exc)) from exc


def sublevel_from_csv(text: str) -> dict:
    """Sublevel function as CSV lines "point,value"; keys are strings."""
    rows = [row for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
    if not rows:
        raise ParseError("empty function file")
    f = {}
    for row in rows:
        if len(row) != 2:
            raise ParseError(f"expected 'point,value', got {row!r}")
        name = row[0].strip()
        if name in f:
            raise ParseError(f"duplicate point {name!r}")
        f[name] = parse_number(row[1])
    return f

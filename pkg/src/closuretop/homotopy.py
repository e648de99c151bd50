"""One-step and multi-step interval homotopy between continuous maps.

A one-step homotopy for an interval J and a product kind is a
continuous map H : X (x) J -> Y restricting to f at 0 and to g at the
top endpoint.  A candidate H is exactly a tuple of maps (h_0, ..., h_m)
indexed by the points of J, and H is continuous iff the assembled map
on the literal product space is continuous.  Continuity of the product
map decomposes into pairwise conditions between h_i and h_j for
j in c_J(i), which is what the search below exploits; every found
witness is re-verified against the literal product space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BoundExceeded, CapExceeded, SourceTargetMismatch
from .spaces import (
    ContinuousMap,
    FiniteClosureSpace,
    IntervalSpec,
    ProductKind,
    interval,
    is_continuous,
    point_space,
    product,
)


@dataclass(frozen=True)
class HomotopyQuery:
    """Interval, product kind and search budget for a homotopy search."""

    interval: IntervalSpec
    product: ProductKind
    max_steps: int = 8
    size_cap: int = 5

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class OneStepWitness:
    """The tuple (h_0, ..., h_m) of a single continuous H : X (x) J -> Y.

    forward means H restricts to the queried f at 0 and g at m;
    otherwise the roles of the endpoints are swapped.
    """

    maps: tuple
    forward: bool = True


@dataclass
class HomotopyWitness:
    """A chain of one-step homotopies realizing f ~ g."""

    stages: list        # point mappings f = s_0, ..., s_n = g
    steps: list = field(default_factory=list)  # OneStepWitness per consecutive pair

    @property
    def step_count(self) -> int:
        return len(self.stages) - 1


def _require_parallel(f: ContinuousMap, g: ContinuousMap):
    if f.source != g.source or f.target != g.target:
        raise SourceTargetMismatch("maps must share source and target")


def enumerate_continuous_maps(X: FiniteClosureSpace, Y: FiniteClosureSpace):
    """All continuous point mappings X -> Y, found by pruned backtracking.

    Returned as tuples of target-point indices aligned with X.points,
    in lexicographic order over Y's point order.
    """
    nx_, ny = len(X.points), len(Y.points)
    xi = {x: i for i, x in enumerate(X.points)}
    rel_y = [[q in Y.closure_map[p] for q in Y.points] for p in Y.points]
    rel_y = [[rel_y[i][j] for j in range(ny)] for i in range(ny)]
    fwd = [[xi[x2] for x2 in X.closure_map[x]] for x in X.points]
    bwd = [[xi[x2] for x2 in X.points if x in X.closure_map[x2]] for x in X.points]
    out = []
    assign = [0] * nx_

    def extend(i):
        if i == nx_:
            out.append(tuple(assign))
            return
        for v in range(ny):
            ok = True
            # x_j in c(x_i) needs f(x_j) in c(f(x_i))
            for j in fwd[i]:
                if j < i and not rel_y[v][assign[j]]:
                    ok = False
                    break
                if j == i and not rel_y[v][v]:
                    ok = False
                    break
            if ok:
                # x_i in c(x_j) needs f(x_i) in c(f(x_j))
                for j in bwd[i]:
                    if j < i and not rel_y[assign[j]][v]:
                        ok = False
                        break
            if ok:
                assign[i] = v
                extend(i + 1)
        return

    if nx_ == 0:
        return [()]
    extend(0)
    return out


def _as_mapping(X, Y, tup):
    return {x: Y.points[v] for x, v in zip(X.points, tup)}


def _as_tuple(X, Y, mapping):
    yi = {y: i for i, y in enumerate(Y.points)}
    return tuple(yi[mapping[x]] for x in X.points)


class MapGraph:
    """All continuous maps X -> Y with the one-step adjacency for (J, kind).

    A[u, v] is True iff there is a one-step homotopy whose restriction
    at 0 is map u and at the top endpoint is map v.
    """

    def __init__(self, X: FiniteClosureSpace, Y: FiniteClosureSpace,
                 J: IntervalSpec, kind: ProductKind):
        self.X, self.Y, self.J, self.kind = X, Y, J, kind
        self.space_j = interval(J)
        self.maps = enumerate_continuous_maps(X, Y)
        self.index = {t: i for i, t in enumerate(self.maps)}
        self._edge = self._edge_matrix()
        self.adjacency = self._adjacency()

    def _edge_matrix(self):
        """E[u, v]: the binary condition for a J-edge (i, j), h_i = u, h_j = v."""
        X, Y = self.X, self.Y
        n = len(self.maps)
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        F = np.array(self.maps, dtype=np.int64).reshape(n, len(X.points))
        ny = len(Y.points)
        yi = {y: i for i, y in enumerate(Y.points)}
        R = np.zeros((ny, ny), dtype=bool)
        for p in Y.points:
            for q in Y.closure_map[p]:
                R[yi[p], yi[q]] = True
        E = np.ones((n, n), dtype=bool)
        xi = {x: i for i, x in enumerate(X.points)}
        for x in X.points:
            ix = xi[x]
            if self.kind is ProductKind.PRODUCT:
                for x2 in X.closure_map[x]:
                    E &= R[F[:, ix]][:, F[:, xi[x2]]]
            else:
                E &= R[F[:, ix]][:, F[:, ix]]
        return E

    def _adjacency(self):
        Jsp = self.space_j
        m = self.J.m
        edges = [(i, j) for i in Jsp.points for j in Jsp.closure_map[i] if i != j]
        n = len(self.maps)
        E = self._edge
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        if m == 1:
            A = np.ones((n, n), dtype=bool)
            for (i, j) in edges:
                A &= E if (i, j) == (0, 1) else E.T
            return A
        if m == 2:
            direct = np.ones((n, n), dtype=bool)
            lo, hi = [], []
            touches_mid = False
            for (i, j) in edges:
                if (i, j) == (0, 2):
                    direct &= E
                elif (i, j) == (2, 0):
                    direct &= E.T
                else:
                    touches_mid = True
                    if (i, j) == (0, 1):
                        lo.append(("col", 1))
                    elif (i, j) == (1, 0):
                        lo.append(("row", 1))
                    elif (i, j) == (1, 2):
                        hi.append(("row", 1))
                    elif (i, j) == (2, 1):
                        hi.append(("col", 1))
            if not touches_mid:
                return direct
            A = np.zeros((n, n), dtype=bool)
            for h in range(n):
                fvec = np.ones(n, dtype=bool)
                for tag, _ in lo:
                    fvec &= E[:, h] if tag == "col" else E[h, :]
                if not fvec.any():
                    continue
                gvec = np.ones(n, dtype=bool)
                for tag, _ in hi:
                    gvec &= E[h, :] if tag == "row" else E[:, h]
                A |= np.outer(fvec, gvec)
            return A & direct
        # longer intervals: per-pair backtracking over the middle slots
        A = np.zeros((n, n), dtype=bool)
        for u in range(n):
            for v in range(n):
                A[u, v] = self._pair_search(u, v, edges, m)
        return A

    def _pair_search(self, u, v, edges, m) -> bool:
        n = len(self.maps)
        E = self._edge
        slots = [None] * (m + 1)
        slots[0], slots[m] = u, v

        def ok(i):
            for (a, b) in edges:
                if slots[a] is not None and slots[b] is not None and (a == i or b == i):
                    if not E[slots[a], slots[b]]:
                        return False
            return True

        if not ok(0) or not ok(m):
            return False

        def rec(i):
            if i == m:
                return True
            for h in range(n):
                slots[i] = h
                if ok(i) and rec(i + 1):
                    return True
            slots[i] = None
            return False

        return rec(1)

    def one_step(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def find_chain(self, u: int, v: int, max_steps: int):
        """BFS along one-step edges taken in both orientations.

        Returns the index chain from u to v, or None when the whole
        component of u was exhausted; raises BoundExceeded when the
        budget cut the search before exhaustion.
        """
        if u == v:
            return [u]
        sym = self.adjacency | self.adjacency.T
        parent = {u: None}
        frontier = [u]
        depth = 0
        while frontier:
            if depth == max_steps:
                raise BoundExceeded(
                    f"no homotopy within {max_steps} steps; map graph not exhausted")
            depth += 1
            nxt = []
            for a in frontier:
                for b in np.flatnonzero(sym[a]):
                    b = int(b)
                    if b not in parent:
                        parent[b] = a
                        if b == v:
                            chain = [b]
                            while chain[-1] != u:
                                chain.append(parent[chain[-1]])
                            return chain[::-1]
                        nxt.append(b)
            frontier = nxt
        return None


def _j1_times_one_step(f: ContinuousMap, g: ContinuousMap) -> bool:
    """Closed form for one-step homotopy with the indiscrete pair and PRODUCT.

    f and g are one-step homotopic iff for every x and x' in c(x) both
    g(x') in c(f(x)) and f(x') in c(g(x)).
    """
    X, Y = f.source, f.target
    for x in X.points:
        cf = Y.closure_map[f.mapping[x]]
        cg = Y.closure_map[g.mapping[x]]
        for x2 in X.closure_map[x]:
            if g.mapping[x2] not in cf or f.mapping[x2] not in cg:
                return False
    return True


def _verify_literal(X, Y, J: IntervalSpec, kind: ProductKind, maps) -> bool:
    """Check the assembled H on the literal product space."""
    Jsp = interval(J)
    XJ = product(X, Jsp, kind)
    H = {(x, i): maps[i][x] for x in X.points for i in Jsp.points}
    return is_continuous(H, XJ, Y)


def one_step_homotopic(f: ContinuousMap, g: ContinuousMap, J: IntervalSpec,
                       kind: ProductKind) -> Optional[OneStepWitness]:
    """Decide one-step (J, kind)-homotopy from f to g; return the witness tuple.

    The direction matters for asymmetric intervals: the witness
    restricts to f at 0 and to g at the top endpoint.
    """
    _require_parallel(f, g)
    X, Y = f.source, f.target
    graph = MapGraph(X, Y, J, kind)
    u = graph.index[_as_tuple(X, Y, f.mapping)]
    v = graph.index[_as_tuple(X, Y, g.mapping)]
    if not graph.one_step(u, v):
        return None
    witness = _extract_one_step(graph, u, v)
    assert _verify_literal(X, Y, J, kind, witness.maps)
    return witness


def _extract_one_step(graph: MapGraph, u: int, v: int) -> OneStepWitness:
    """Recover an explicit tuple (h_0, ..., h_m) for a known one-step edge."""
    X, Y, m = graph.X, graph.Y, graph.J.m
    Jsp = graph.space_j
    edges = [(i, j) for i in Jsp.points for j in Jsp.closure_map[i] if i != j]
    E = graph._edge
    slots = [None] * (m + 1)
    slots[0], slots[m] = u, v

    def ok(i):
        for (a, b) in edges:
            if slots[a] is not None and slots[b] is not None and (a == i or b == i):
                if not E[slots[a], slots[b]]:
                    return False
        return True

    def rec(i):
        if i == m:
            return True
        for h in range(len(graph.maps)):
            slots[i] = h
            if ok(i) and rec(i + 1):
                return True
        slots[i] = None
        return False

    found = ok(0) and ok(m) and rec(1)
    assert found, "adjacency asserted an edge the extractor cannot realize"
    maps = tuple(_as_mapping(X, Y, graph.maps[s]) for s in slots)
    return OneStepWitness(maps=maps, forward=True)


def homotopic(f: ContinuousMap, g: ContinuousMap,
              query: HomotopyQuery) -> Optional[HomotopyWitness]:
    """Multi-step homotopy: BFS over the map graph with one-step edges
    taken in both orientations.  Returns a witness chain, None when the
    component of f was exhausted, and raises BoundExceeded when the
    budget ran out first.
    """
    _require_parallel(f, g)
    X, Y = f.source, f.target
    if len(X.points) > query.size_cap or len(Y.points) > query.size_cap:
        raise CapExceeded(
            f"spaces exceed the size cap {query.size_cap}; raise size_cap to override")
    graph = MapGraph(X, Y, query.interval, query.product)
    u = graph.index[_as_tuple(X, Y, f.mapping)]
    v = graph.index[_as_tuple(X, Y, g.mapping)]
    chain = graph.find_chain(u, v, query.max_steps)
    if chain is None:
        return None
    stages = [_as_mapping(X, Y, graph.maps[i]) for i in chain]
    steps = []
    for a, b in zip(chain, chain[1:]):
        if graph.one_step(a, b):
            steps.append(_extract_one_step(graph, a, b))
        else:
            back = _extract_one_step(graph, b, a)
            steps.append(OneStepWitness(maps=back.maps, forward=False))
    return HomotopyWitness(stages=stages, steps=steps)


def homotopy_equivalent(X: FiniteClosureSpace, Y: FiniteClosureSpace,
                        query: HomotopyQuery):
    """Search for maps f : X -> Y and g : Y -> X with both round trips
    homotopic to the identities.  Returns (f, g, witness_X, witness_Y)
    or None; raises BoundExceeded when absence could not be proven.
    """
    if len(X.points) > query.size_cap or len(Y.points) > query.size_cap:
        raise CapExceeded(
            f"spaces exceed the size cap {query.size_cap}; raise size_cap to override")
    graph_x = MapGraph(X, X, query.interval, query.product)
    graph_y = MapGraph(Y, Y, query.interval, query.product)
    id_x = graph_x.index[_as_tuple(X, X, {x: x for x in X.points})]
    id_y = graph_y.index[_as_tuple(Y, Y, {y: y for y in Y.points})]
    fwd = enumerate_continuous_maps(X, Y)
    bwd = enumerate_continuous_maps(Y, X)
    xi = {x: i for i, x in enumerate(X.points)}
    yi = {y: i for i, y in enumerate(Y.points)}
    bounded = False
    for ft in fwd:
        for gt in bwd:
            gf = tuple(gt[ft[xi[x]]] for x in X.points)
            fg = tuple(ft[gt[yi[y]]] for y in Y.points)
            try:
                chain_x = graph_x.find_chain(graph_x.index[gf], id_x, query.max_steps)
            except BoundExceeded:
                bounded = True
                continue
            if chain_x is None:
                continue
            try:
                chain_y = graph_y.find_chain(graph_y.index[fg], id_y, query.max_steps)
            except BoundExceeded:
                bounded = True
                continue
            if chain_y is None:
                continue
            f = ContinuousMap(X, Y, _as_mapping(X, Y, ft), check=False)
            g = ContinuousMap(Y, X, _as_mapping(Y, X, gt), check=False)
            wit_x = homotopic(g.compose(f), ContinuousMap.identity(X), query)
            wit_y = homotopic(f.compose(g), ContinuousMap.identity(Y), query)
            return f, g, wit_x, wit_y
    if bounded:
        raise BoundExceeded("search budget exhausted before proving absence")
    return None


def is_contractible(X: FiniteClosureSpace, query: HomotopyQuery):
    """Whether X is homotopy equivalent to the one-point space.

    Returns (True, witness tuple) or (False, None).
    """
    result = homotopy_equivalent(X, point_space(), query)
    if result is None:
        return False, None
    return True, result

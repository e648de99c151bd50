"""Filtrations of closure spaces from metrics, digraphs, and functions.

At each scale eps a metric space becomes a closure space by closed balls;
a weighted digraph thresholds its arrows; a function on a fixed space
grows the sublevel subspaces.  All three produce the same object: a grid
of values with a nested family of spaces over it.
"""
from fractions import Fraction

from closuretop import (Decoration, digraph_from_text, filtered_from_metric,
                        filtered_from_sublevel, filtered_from_weighted_digraph,
                        build_space, metric_from_matrix, metric_closure)

# four points on a taxicab unit square
pts = ["a", "b", "c", "d"]
d = [[0, 1, 2, 1],
     [1, 0, 1, 2],
     [2, 1, 0, 1],
     [1, 2, 1, 0]]
M = metric_from_matrix(pts, d)

F = filtered_from_metric(M)
print("grid:", F.grid)
for t, stage in zip(F.grid, F.stages):
    print(f"  at {t}: closure of a = {sorted(stage.closure_map['a'])}")

# strict balls lag the closed ones by one grid step
strict = metric_closure(M, 1, Decoration.MINUS)
print("strict ball of a at 1:", sorted(strict.closure_map["a"]))

# a directed filtration: arrows appear at their weights, loops at 0
G = digraph_from_text("a b 1\nb a 3\n")
FG = filtered_from_weighted_digraph(G)
print("digraph grid:", FG.grid)
print("closure of a at 1:", sorted(FG.stage_at(1).closure_map["a"]))
print("closure of b at 1:", sorted(FG.stage_at(1).closure_map["b"]))

# sublevel filtration of a function on a fixed space
X = build_space(["a", "b", "c"],
                {"a": {"a", "b"}, "b": {"b"}, "c": {"b", "c"}})
Ff = filtered_from_sublevel(X, {"a": 0, "b": 1, "c": Fraction(3, 2)})
for t in Ff.grid:
    print(f"sublevel at {t}: points {sorted(Ff.stage_at(t).points)}")

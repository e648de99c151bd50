"""Correspondence distortion and the Gromov-Hausdorff distance.

A correspondence relates the points of two filtered spaces, surjectively
both ways; its distortion is the least shift making nearness transfer in
both directions.  Half the best distortion over all correspondences is
the distance; on metric filtrations it recovers the classical value.
"""
from closuretop import (distortion, filtered_from_metric, gh_distance,
                        metric_from_matrix)

FA = filtered_from_metric(metric_from_matrix(["x", "y"], [[0, 2], [2, 0]]))
FB = filtered_from_metric(metric_from_matrix(["u", "v"], [[0, 5], [5, 0]]))

bij = [("x", "u"), ("y", "v")]
print("bijection distortion:", distortion(bij, FA, FB))
full = [(p, q) for p in "xy" for q in "uv"]
print("everything-relates distortion:", distortion(full, FA, FB))
print("distance:", gh_distance(FA, FB))

# a triangle against a slightly sheared copy
FT = filtered_from_metric(metric_from_matrix(
    ["a", "b", "c"], [[0, 3, 4], [3, 0, 5], [4, 5, 0]]))
FS = filtered_from_metric(metric_from_matrix(
    ["p", "q", "r"], [[0, 3, 4], [3, 0, 6], [4, 6, 0]]))
print("triangle vs sheared triangle:", gh_distance(FT, FS))
print("self distance:", gh_distance(FT, FT))

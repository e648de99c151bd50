"""Persistence diagrams, towers, bottleneck, distortion, interleavings."""
import itertools
import random
from fractions import Fraction

import pytest

from closuretop.persistence import INF
from closuretop import (BadParameter, CapExceeded, Decoration,
                        FilteredClosureSpace, InfinityMismatch,
                        NotACorrespondence, ParseError, PersistenceDiagram,
                        ShapeMismatch, SIMPLEX_J1, bottleneck,
                        check_correspondence, diagram_from_json,
                        diagram_to_json, distortion, filtered_from_metric,
                        filtered_from_sublevel, filtered_simplices,
                        gh_distance, inclusion_interleaving_maps,
                        metric_from_matrix, persistence_complex,
                        persistence_tower, tower_to_diagram,
                        verify_interleaving)
from conftest import rand_metric, rand_space


def test_diagram_json_roundtrip():
    D = PersistenceDiagram(1, ((Fraction(1, 2), 2), (0, None), (0, 3)))
    D2 = diagram_from_json(diagram_to_json(D))
    assert D2.degree == 1
    assert D2.as_multiset() == D.as_multiset()
    with pytest.raises(ParseError):
        diagram_from_json("{not json")
    with pytest.raises(ParseError):
        diagram_from_json('{"pairs": []}')
    with pytest.raises(ParseError):
        diagram_from_json('{"degree": 0, "pairs": [[0, "x"]]}')
    with pytest.raises(BadParameter):
        PersistenceDiagram(0, ((3, 1),))


def test_two_point_metric_diagram():
    M = metric_from_matrix(["a", "b"], [[0, 3], [3, 0]])
    F = filtered_from_metric(M)
    out = persistence_complex(F, "vr", max_dim=1)
    assert out[0].as_multiset() == {(0, 3): 1, (0, None): 1}
    assert len(out[1]) == 0


def test_square_metric_degree_one_bar():
    # unit square in the taxicab metric: the loop is born with the four
    # sides at 1 and filled by the diagonals at 2
    pts = ["a", "b", "c", "d"]
    coords = {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}
    d = [[abs(coords[p][0] - coords[q][0]) + abs(coords[p][1] - coords[q][1])
          for q in pts] for p in pts]
    F = filtered_from_metric(metric_from_matrix(pts, d))
    out = persistence_complex(F, "vr", max_dim=1)
    assert out[1].as_multiset() == {(1, 2): 1}
    assert out[0].as_multiset() == {(0, 1): 3, (0, None): 1}


def test_filtered_simplices_first_appearance():
    M = metric_from_matrix(["a", "b"], [[0, 3], [3, 0]])
    F = filtered_from_metric(M)
    sims = filtered_simplices(F, "vr", 0)
    assert sims == [(0, ("a",)), (0, ("b",)), (3, ("a", "b"))]
    with pytest.raises(BadParameter):
        filtered_simplices(F, "alpha")


def test_tower_diagram_matches_matrix_reduction():
    rng = random.Random(131)
    for _ in range(10):
        M = rand_metric(rng, rng.randint(2, 5))
        F = filtered_from_metric(M)
        reduced = persistence_complex(F, "vr", max_dim=1, coefficients="f2")
        for deg in (0, 1):
            T = persistence_tower(F, "complex-vr", deg, "f2")
            D = tower_to_diagram(T)
            assert D.as_multiset() == reduced[deg].as_multiset()


def test_tower_ranks_and_indexing():
    M = metric_from_matrix(["a", "b"], [[0, 3], [3, 0]])
    F = filtered_from_metric(M)
    T = persistence_tower(F, "complex-vr", 0, "f2")
    assert T.dims == [2, 1]
    assert T.rank_between(0, 1) == 1
    assert T.index_at(-1) is None and T.dim_at(-1) == 0
    assert T.index_at(Fraction(5, 2)) == 0
    with pytest.raises(ShapeMismatch):
        T.map_between(1, 0)
    with pytest.raises(BadParameter):
        persistence_tower(F, "complex-vr", 0, "z")


def test_bottleneck_hand_values():
    D0 = PersistenceDiagram(0, ())
    D1 = PersistenceDiagram(0, ((0, 4),))
    D2 = PersistenceDiagram(0, ((1, 3),))
    assert bottleneck(D1, D1) == 0
    assert bottleneck(D1, D0) == 2  # match to the diagonal
    assert bottleneck(D2, D0) == 1
    assert bottleneck(D1, D2) == 1  # shrink beats two diagonal hits
    A = PersistenceDiagram(0, ((0, None), (0, 4)))
    B = PersistenceDiagram(0, ((1, None), (0, 3)))
    assert bottleneck(A, B) == 1
    with pytest.raises(InfinityMismatch):
        bottleneck(A, D1)
    with pytest.raises(BadParameter):
        bottleneck(D1, PersistenceDiagram(1, ()))


def _rand_diagram(rng, degree=0, n_inf=0):
    pairs = []
    for _ in range(rng.randint(0, 4)):
        b = Fraction(rng.randint(0, 6))
        pairs.append((b, b + rng.randint(0, 5)))
    pairs.extend((Fraction(rng.randint(0, 4)), None) for _ in range(n_inf))
    return PersistenceDiagram(degree, tuple(pairs))


def test_bottleneck_is_a_pseudo_metric():
    rng = random.Random(137)
    for _ in range(25):
        k = rng.randint(0, 2)
        A = _rand_diagram(rng, n_inf=k)
        B = _rand_diagram(rng, n_inf=k)
        C = _rand_diagram(rng, n_inf=k)
        ab, ba = bottleneck(A, B), bottleneck(B, A)
        assert ab == ba
        assert bottleneck(A, A) == 0
        assert bottleneck(A, C) <= ab + bottleneck(B, C)


# ---------------------------------------------------------------------------
# correspondences and distortion

def test_check_correspondence_validation():
    M = metric_from_matrix(["a", "b"], [[0, 1], [1, 0]])
    F = filtered_from_metric(M)
    with pytest.raises(NotACorrespondence):
        check_correspondence([("a", "a")], F, F)  # b uncovered
    with pytest.raises(NotACorrespondence):
        check_correspondence([("a", "z"), ("b", "b")], F, F)
    with pytest.raises(NotACorrespondence):
        check_correspondence(["ab"], F, F)
    rel = check_correspondence([("a", "b"), ("b", "a")], F, F)
    assert len(rel) == 2


def _distortion_oracle(C, FX, FY):
    """Scan candidate shifts for the least one making C compatible."""
    gx, gy = list(FX.grid), list(FY.grid)
    cands = sorted({abs(a - b) for a in gx + gy for b in gx + gy} | {0})

    def compatible(eps):
        for t in sorted(set(gx) | set(gy)):
            SX, SY = FX.stage_at(t), FY.stage_at(t + eps)
            SY2, SX2 = FY.stage_at(t), FX.stage_at(t + eps)
            for (x, y) in C:
                for (x2, y2) in C:
                    if x in SX.point_set() and x2 in SX.closure_map[x]:
                        if y not in SY.point_set() or \
                                y2 not in SY.closure_map[y]:
                            return False
                    if y in SY2.point_set() and y2 in SY2.closure_map[y]:
                        if x not in SX2.point_set() or \
                                x2 not in SX2.closure_map[x]:
                            return False
        return True

    for eps in cands:
        if compatible(eps):
            return eps
    return INF


def _rand_correspondence(rng, FX, FY):
    X = list(FX.final_stage().points)
    Y = list(FY.final_stage().points)
    rel = {(x, rng.choice(Y)) for x in X}
    rel |= {(rng.choice(X), y) for y in Y}
    return rel


def test_distortion_matches_scan_oracle():
    rng = random.Random(139)
    for _ in range(25):
        X = rand_space(rng, rng.randint(2, 4), prefix="x")
        Y = rand_space(rng, rng.randint(2, 4), prefix="y")
        FX = filtered_from_sublevel(
            X, {p: Fraction(rng.randint(0, 3)) for p in X.points})
        FY = filtered_from_sublevel(
            Y, {p: Fraction(rng.randint(0, 3)) for p in Y.points})
        C = _rand_correspondence(rng, FX, FY)
        assert distortion(C, FX, FY) == _distortion_oracle(C, FX, FY)


def test_distortion_on_metric_pairs():
    a, b = 2, 5
    FA = filtered_from_metric(metric_from_matrix(["x", "y"],
                                                 [[0, a], [a, 0]]))
    FB = filtered_from_metric(metric_from_matrix(["u", "v"],
                                                 [[0, b], [b, 0]]))
    bij = [("x", "u"), ("y", "v")]
    assert distortion(bij, FA, FB) == abs(a - b)
    full = [(p, q) for p in "xy" for q in "uv"]
    # relating both points of one side to one point of the other forces
    # the whole diameter
    assert distortion(full, FA, FB) == max(a, b)
    assert gh_distance(FA, FB) == Fraction(abs(a - b), 2)


def test_distortion_bounds_sublevel_shift():
    rng = random.Random(149)
    for _ in range(10):
        X = rand_space(rng, rng.randint(2, 4))
        f = {p: Fraction(rng.randint(0, 4)) for p in X.points}
        s = Fraction(rng.randint(0, 3))
        g = {p: f[p] + s for p in X.points}
        FX = filtered_from_sublevel(X, f)
        FY = filtered_from_sublevel(X, g)
        ident = [(p, p) for p in X.points]
        assert distortion(ident, FX, FY) == s


def _metric_gh_oracle(MX, MY):
    """Brute-force metric Gromov-Hausdorff: half the least worst distance
    disagreement over all correspondences."""
    X, Y = list(MX.points), list(MY.points)
    best = INF
    choices = [list(range(1, 1 << len(Y))) for _ in X]
    for pick in itertools.product(*choices):
        covered = 0
        rel = []
        for i, s in enumerate(pick):
            covered |= s
            rel.extend((X[i], Y[j]) for j in range(len(Y)) if s >> j & 1)
        if covered != (1 << len(Y)) - 1:
            continue
        worst = max(abs(MX.d(x, x2) - MY.d(y, y2))
                    for (x, y) in rel for (x2, y2) in rel)
        best = min(best, worst)
    return Fraction(best, 2)


def test_gh_specializes_to_metric_gh():
    rng = random.Random(151)
    for _ in range(12):
        MX = rand_metric(rng, rng.randint(2, 3))
        MY = rand_metric(rng, rng.randint(2, 3))
        FX = filtered_from_metric(MX)
        FY = filtered_from_metric(MY)
        got = gh_distance(FX, FY)
        assert got == _metric_gh_oracle(MX, MY)
        assert got == gh_distance(FY, FX)
        assert gh_distance(FX, FX) == 0


def test_gh_cap():
    M = rand_metric(random.Random(3), 5)
    F = filtered_from_metric(M)
    with pytest.raises(CapExceeded):
        gh_distance(F, F)
    gh_distance(F, F, cap=5)


# ---------------------------------------------------------------------------
# interleavings

def _merged_towers(FX, FY, degree, eps):
    grid = tuple(sorted(set(FX.grid) | set(FY.grid) |
                        {t + eps for t in FX.grid} |
                        {t + eps for t in FY.grid}))
    M = persistence_tower(FX, SIMPLEX_J1, degree, "f2", grid=grid)
    N = persistence_tower(FY, SIMPLEX_J1, degree, "f2", grid=grid)
    return M, N


def test_interleaving_of_close_sublevel_functions():
    rng = random.Random(157)
    done = 0
    while done < 6:
        X = rand_space(rng, rng.randint(2, 4))
        f = {p: Fraction(rng.randint(0, 3)) for p in X.points}
        g = {p: Fraction(rng.randint(0, 3)) for p in X.points}
        eps = max(abs(f[p] - g[p]) for p in X.points)
        FX = filtered_from_sublevel(X, f)
        FY = filtered_from_sublevel(X, g)
        for degree in (0, 1):
            M, N = _merged_towers(FX, FY, degree, eps)
            phi = inclusion_interleaving_maps(M, N, eps)
            psi = inclusion_interleaving_maps(N, M, eps)
            assert verify_interleaving(M, N, eps, phi, psi)
        done += 1


def test_interleaving_rejects_bad_maps():
    M2 = metric_from_matrix(["a", "b"], [[0, 1], [1, 0]])
    F2 = filtered_from_metric(M2)
    T2 = persistence_tower(F2, "complex-vr", 0, "f2")  # dims [2, 1]
    X1 = filtered_from_sublevel(rand_space(random.Random(2), 1),
                                {"p0": Fraction(0)})
    grid = (Fraction(0), Fraction(1))
    T1 = persistence_tower(X1, "complex-vr", 0, "f2", grid=grid)
    F = T1.field
    one = F.one
    zero = F.zero
    # zero maps have the right shapes but break the triangle identity
    phi = [[[zero, zero]], [[zero]]]
    psi = [[[zero], [zero]], [[zero]]]
    assert not verify_interleaving(T2, T1, 0, phi, psi)
    # an honest collapse map passes: everything merges by the shift
    eps = Fraction(1)
    phi = [[[one, one]], [[one]]]
    psi = [[[one]], [[one]]]
    assert verify_interleaving(T2, T1, eps, phi, psi)
    with pytest.raises(ShapeMismatch):
        verify_interleaving(T2, T1, 0, [[[zero]]], psi)
    grid3 = (Fraction(0), Fraction(2))
    T3 = persistence_tower(X1, "complex-vr", 0, "f2", grid=grid3)
    with pytest.raises(ShapeMismatch):
        verify_interleaving(T3, T1, 0, phi, psi)

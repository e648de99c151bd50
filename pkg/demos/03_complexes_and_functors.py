"""Simplicial complexes from closure spaces and the functors between them.

Two constructions turn a space into a complex: the clique complex of the
mutual-nearness relation (vr) and the nerve-style complex of subsets lying
in a single closure (cech).  Going the other way, a complex becomes a
space through its 1-skeleton relation.
"""
from closuretop import (build_space, cech, complex_to_text, cosk1, cosk_inf,
                        dc, g_functor, gamma, complex_from_text, tr1, vr)

X = build_space(["x", "y", "z"],
                {"x": {"x", "y"}, "y": {"x", "y"}, "z": {"x", "y", "z"}})

print("vr complex:")
print(complex_to_text(vr(X)))
print("cech complex:")
print(complex_to_text(cech(X)))

# gamma records the cech simplices as a downward closed hypergraph
H = gamma(X)
print("gamma is downward closed:", H.is_downward_closed())

# a solid triangle and its round trips through the space functors
K = complex_from_text("a b c\n", close_downward=True)
G = g_functor(K)
print("space of the triangle, closure of a:", sorted(G.closure_map["a"]))
T = tr1(K)  # 1-truncation as a symmetric space
print("cosk1 restores the triangle:", cosk1(T) == K)

# cosk_inf fills every boundary whose faces are all present
hollow = complex_from_text("a b\nb c\na c\n", close_downward=True)
filled = cosk_inf(hollow)
print("hollow triangle filled:",
      frozenset({"a", "b", "c"}) in filled.edges)

# dc closes an arbitrary hypergraph downward
from closuretop import Hypergraph
raw = Hypergraph(["a", "b", "c"],
                 {frozenset({"a", "b", "c"})})
print("dc adds the faces:", sorted(len(e) for e in dc(raw).edges))

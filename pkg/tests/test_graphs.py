import random
from dataclasses import replace

import pytest

from singlocus.errors import DisconnectedGraph
from singlocus.examples import circular_ladder_graph, quartic_mirror_graph, theta_graph
from singlocus.graphs import (
    CompactEdge,
    DecoratedGraph,
    Leg,
    build_i,
    build_j,
    collapse_functor,
    dual_surface,
    flip_vertex,
    orientability,
    validate_graph,
)


def pants_graph():
    return DecoratedGraph(((0, 1, 2),), (Leg(0), Leg(1), Leg(2)))


def with_reversing(g, which):
    edges = []
    for i, e in enumerate(g.edges):
        if isinstance(e, CompactEdge) and i in which:
            e = replace(e, reversing=True)
        edges.append(e)
    return DecoratedGraph(g.vertices, tuple(edges))


# --- validation --------------------------------------------------------


def test_theta_valid():
    assert validate_graph(theta_graph()) == []


def test_non_trivalent_vertex():
    g = DecoratedGraph(((0, 1),), (Leg(0), Leg(1)))
    assert any("not trivalent" in v for v in validate_graph(g))


def test_triple_point_formula_violation():
    g = DecoratedGraph(
        ((0, 1, 2), (3, 4, 5)),
        (
            CompactEdge((0, 3), twist=1, self_intersections=(0, 0)),
            CompactEdge((1, 4)),
            CompactEdge((2, 5)),
        ),
    )
    assert any("triple point formula: expected n_e = 2" in v for v in validate_graph(g))


def test_half_edge_bookkeeping():
    g = DecoratedGraph(((0, 1, 2),), (Leg(0), Leg(0), Leg(1)))
    report = validate_graph(g)
    assert any("used by 2 edges" in v for v in report)
    assert any("belongs to no edge" in v for v in report)


# --- categories --------------------------------------------------------


def test_theta_j_counts():
    # direct enumeration: objects = V + E, arrows = identities + flags
    cat = build_j(theta_graph())
    assert len(cat.objects) == 5
    assert len(cat.arrows) == 11


def test_theta_i_counts():
    cat = build_i(theta_graph())
    assert len(cat.objects) == 8
    assert len(cat.arrows) == 26


def test_pants_j_equals_i():
    J = build_j(pants_graph())
    I = build_i(pants_graph())
    assert len(J.objects) == 4 and len(J.arrows) == 7
    assert len(I.objects) == 4 and len(I.arrows) == 7


def enumeration_counts(g):
    n_v = len(g.vertices)
    n_e = len(g.edges)
    flags = sum(2 if isinstance(e, CompactEdge) else 1 for e in g.edges)
    compact = sum(1 for e in g.edges if isinstance(e, CompactEdge))
    j = (n_v + n_e, n_v + n_e + flags)
    i = (n_v + flags, n_v + flags + flags + 2 * compact + 2 * compact)
    return j, i


@pytest.mark.parametrize(
    "graph",
    [theta_graph(), pants_graph(), circular_ladder_graph(2), circular_ladder_graph(3)],
    ids=["theta", "pants", "ladder2", "ladder3"],
)
def test_category_counts_match_enumeration(graph):
    (j_obj, j_arr), (i_obj, i_arr) = enumeration_counts(graph)
    J, I = build_j(graph), build_i(graph)
    assert (len(J.objects), len(J.arrows)) == (j_obj, j_arr)
    assert (len(I.objects), len(I.arrows)) == (i_obj, i_arr)


def self_loop_graph():
    # one self-loop plus a leg at each of two vertices joined by an edge
    return DecoratedGraph(
        ((0, 1, 2), (3, 4, 5)),
        (CompactEdge((0, 1)), CompactEdge((2, 3)), CompactEdge((4, 5))),
    )


def test_categories_scale_to_extracted_graphs():
    g = quartic_mirror_graph()
    J = build_j(g, check=False)
    I = build_i(g, check=False)
    assert len(J.objects) == 64 + 96
    assert len(J.arrows) == 160 + 192
    assert len(I.objects) == 64 + 192
    assert len(I.arrows) == 256 + 192 + 192 + 192


@pytest.mark.parametrize(
    "graph",
    [
        theta_graph(),
        pants_graph(),
        circular_ladder_graph(2),
        circular_ladder_graph(3),
        self_loop_graph(),
    ],
    ids=["theta", "pants", "ladder2", "ladder3", "selfloop"],
)
def test_collapse_functor_is_equivalence(graph):
    # Collapsing each flag object to its edge object is an equivalence:
    # surjective on objects with fibers exactly the flag classes, and
    # bijective on every hom-set.
    J, I = build_j(graph), build_i(graph)
    obj_map = collapse_functor(graph)
    assert set(obj_map) == set(I.objects)
    assert set(obj_map.values()) == set(J.objects)
    for x in I.objects:
        for y in I.objects:
            hom_i = sum(1 for (s, t) in I.arrows.values() if (s, t) == (x, y))
            fx, fy = obj_map[x], obj_map[y]
            hom_j = sum(1 for (s, t) in J.arrows.values() if (s, t) == (fx, fy))
            assert hom_i == hom_j, (x, y, hom_i, hom_j)


# --- dual surface ------------------------------------------------------


def euler_oracle(g):
    compact = sum(1 for e in g.edges if isinstance(e, CompactEdge))
    legs = sum(1 for e in g.edges if isinstance(e, Leg))
    return 2 * (len(g.vertices) - compact) - legs


def test_pants_surface():
    s = dual_surface(pants_graph())
    assert (s.genus, s.boundary_circles) == (0, 3)


def test_theta_surface():
    s = dual_surface(theta_graph())
    assert (s.genus, s.boundary_circles) == (2, 0)
    assert 2 - 2 * s.genus - s.boundary_circles == euler_oracle(theta_graph())


def test_quartic_surface():
    g = quartic_mirror_graph()
    s = dual_surface(g)
    assert (s.genus, s.boundary_circles) == (33, 0)
    # nodal-curve cross-check: sum of genera + nodes - components + 1
    assert 12 + 24 - 4 + 1 == s.genus


def test_closed_trivalent_genus_formula():
    for m in (1, 2, 3, 4):
        g = circular_ladder_graph(m)
        s = dual_surface(g)
        assert s.genus == 1 + len(g.vertices) // 2
        assert s.boundary_circles == 0


def test_surface_invariant_under_relabeling_and_mirror():
    g = theta_graph()
    mirrored = DecoratedGraph(
        tuple(tuple(reversed(v)) for v in g.vertices), g.edges
    )
    assert dual_surface(mirrored).genus == dual_surface(g).genus
    relabeled = DecoratedGraph((g.vertices[1], g.vertices[0]), g.edges)
    assert dual_surface(relabeled).genus == dual_surface(g).genus


def test_face_walks_closed_with_reversing_flags():
    # with flags the mirror pairing uses the partner map; every reported
    # walk must still be a closed orbit and every half-edge must show up
    # in some walk or in the reverse of one (i.e. as its partner)
    rng = random.Random(17)
    for _ in range(60):
        flags = {i for i in range(3) if rng.random() < 0.5}
        g = with_reversing(theta_graph(), flags)
        s = dual_surface(g)
        seen = {h for walk in s.face_walks for h in walk}
        partners = {0: 3, 1: 4, 2: 5, 3: 0, 4: 1, 5: 2}
        assert all(h in seen or partners[h] in seen for h in range(6))


def test_face_walks_cover_each_half_edge_once():
    # With no reversing flags the walk map preserves direction, so after
    # mirror-deduplication each half-edge appears exactly once in total.
    for graph in (theta_graph(), pants_graph(), circular_ladder_graph(3)):
        s = dual_surface(graph)
        seen = sorted(h for walk in s.face_walks for h in walk)
        half_edges = sum(
            2 if isinstance(e, CompactEdge) else 1 for e in graph.edges
        )
        assert seen == list(range(half_edges))


# --- orientability -----------------------------------------------------


def test_theta_orientable():
    ok, w1 = orientability(theta_graph())
    assert ok and w1 == [0, 0]


def test_one_reversing_edge_detected():
    g = with_reversing(theta_graph(), {1})
    ok, w1 = orientability(g)
    assert not ok
    # cycle-product oracle: cycles pair edge 0 with edges 1 and 2
    assert w1 == [1, 0]


def test_tree_with_reversing_is_orientable():
    g = DecoratedGraph(
        ((0, 1, 2), (3, 4, 5)),
        (CompactEdge((0, 3), reversing=True), Leg(1), Leg(2), Leg(4), Leg(5)),
    )
    ok, _ = orientability(g)
    assert ok


def test_orientability_gauge_invariance():
    rng = random.Random(99)
    for _ in range(40):
        flags = {i for i in range(3) if rng.random() < 0.5}
        g = with_reversing(theta_graph(), flags)
        base = orientability(g)
        vertex = rng.randrange(2)
        flipped = flip_vertex(g, vertex)
        assert orientability(flipped)[0] == base[0]
        assert dual_surface(flipped).genus == dual_surface(g).genus


def test_reversing_self_loop_never_orientable():
    # flipping a vertex toggles a self-loop's flag twice, so a reversing
    # self-loop is a gauge-invariant obstruction
    g = DecoratedGraph(
        ((0, 1, 2), (3, 4, 5)),
        (
            CompactEdge((0, 1), reversing=True),
            CompactEdge((2, 3)),
            CompactEdge((4, 5)),
        ),
    )
    ok, w1 = orientability(g)
    assert not ok
    for v in range(2):
        assert not orientability(flip_vertex(g, v))[0]


def test_orientability_requires_connected():
    g = DecoratedGraph(
        ((0, 1, 2), (3, 4, 5)),
        (Leg(0), Leg(1), Leg(2), Leg(3), Leg(4), Leg(5)),
    )
    with pytest.raises(DisconnectedGraph):
        orientability(g)

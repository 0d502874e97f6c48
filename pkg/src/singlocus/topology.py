"""Graph-manifold homology, twist records, and pencil localization.

The 3-manifold attached to a decorated graph is one circle-fibered pair
of pants per vertex, glued along boundary tori by the self-inverse shear
[[-1, n_e], [0, 1]] acting on the (base, fiber) framings.  Only the first
homology is computed; it comes from a Mayer-Vietoris presentation whose
relations are the differences of the two torus images, and the graph's
cycle rank contributes free summands through the connecting map.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeDefect
from .graphs import (
    DecoratedGraph,
    Incidence,
    compact_edge_pairs,
    oriented_form,
    require_connected,
    require_valid,
)
from .intlinalg import IntMatrix, cokernel_abelian_group


@dataclass(frozen=True)
class ShearMatrix:
    """The framing change [[-1, n], [0, 1]] on (base, fiber); self-inverse."""

    n: int

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((-1, self.n), (0, 1))

    def apply(self, base_coeff: int, fiber_coeff: int) -> tuple[int, int]:
        return (-base_coeff + self.n * fiber_coeff, fiber_coeff)


@dataclass(frozen=True)
class PlumbingPresentation:
    """Generators (b1, b2, f per vertex) and Mayer-Vietoris relations.

    The relation matrix has the 3V generators as rows and two columns per
    compact edge.  The boundary class of the edge at cyclic position p of
    a vertex is b1, b2, or -b1 - b2 - f; the fiber term in the third
    position carries the framing correction that a trivialized pants piece
    forces on its cuff lifts (the three corrections sum to the piece's
    Euler characteristic).
    """

    num_vertices: int
    relation_matrix: IntMatrix
    edge_columns: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class H1Result:
    free_rank: int
    torsion: tuple[int, ...]


@dataclass(frozen=True)
class NodalCurveReport:
    """Combinatorics of the nodal curve cut out by a transverse section.

    ``components`` lists (genus, boundary circle count) of the main pieces
    in order of their smallest vertex; annulus pieces between parallel
    vanishing circles are counted in ``sphere_components`` and indexed
    after the main pieces in ``incidence``.
    """

    components: tuple[tuple[int, int], ...]
    nodes: int
    incidence: dict[tuple[int, int], int]
    sphere_components: int


def _boundary_class(position: int, b1: int, b2: int, f: int, row: dict[int, int], sign: int):
    """Accumulate the cuff class at a cyclic position into a relation row."""
    if position == 0:
        row[b1] = row.get(b1, 0) + sign
    elif position == 1:
        row[b2] = row.get(b2, 0) + sign
    else:
        row[b1] = row.get(b1, 0) - sign
        row[b2] = row.get(b2, 0) - sign
        row[f] = row.get(f, 0) - sign


def plumbing_presentation(g: DecoratedGraph) -> PlumbingPresentation:
    """Mayer-Vietoris presentation of H1 of the glued 3-manifold.

    Requires a valid, connected, orientable graph; the reversing flags are
    first gauged away.  Per compact edge between (v, position i) and
    (w, position j) the two relations are

        B(w, j) + B(v, i) = 0
        f_w - f_v - n_e * B(v, i) = 0

    taken in the stored direction v -> w.  Legs contribute nothing.
    """
    require_valid(g)
    require_connected(g)
    g = oriented_form(g)
    inc = Incidence.of(g)
    num_v = len(g.vertices)

    def gens(v: int) -> tuple[int, int, int]:
        return (3 * v, 3 * v + 1, 3 * v + 2)  # b1, b2, f

    columns: list[dict[int, int]] = []
    edge_columns = []
    for ei, e in g.compact_edges():
        h_v, h_w = e.ends
        v, w = inc.vertex_of[h_v], inc.vertex_of[h_w]
        pos_v, pos_w = inc.position_of[h_v], inc.position_of[h_w]
        b1v, b2v, fv = gens(v)
        b1w, b2w, fw = gens(w)

        base: dict[int, int] = {}
        _boundary_class(pos_w, b1w, b2w, fw, base, +1)
        _boundary_class(pos_v, b1v, b2v, fv, base, +1)

        fiber: dict[int, int] = {}
        fiber[fw] = fiber.get(fw, 0) + 1
        fiber[fv] = fiber.get(fv, 0) - 1
        _boundary_class(pos_v, b1v, b2v, fv, fiber, -e.twist)

        edge_columns.append((len(columns), len(columns) + 1))
        columns.append(base)
        columns.append(fiber)

    rows = 3 * num_v
    entries = []
    for r in range(rows):
        for col in columns:
            entries.append(col.get(r, 0))
    matrix = IntMatrix(rows, len(columns), tuple(entries))
    return PlumbingPresentation(num_v, matrix, tuple(edge_columns))


def h1_graph_manifold(g: DecoratedGraph) -> H1Result:
    """H1 of the glued manifold: cokernel of the relations plus Z^{b1(G)}."""
    pres = plumbing_presentation(g)
    free, torsion = cokernel_abelian_group(pres.relation_matrix)
    pairs = compact_edge_pairs(g)
    cycle_rank = len(pairs) - len(g.vertices) + 1
    return H1Result(free + cycle_rank, torsion)


def dehn_twist_record(g: DecoratedGraph) -> list[tuple[int, int]]:
    """Edges where the global twist acts by multi-fold Dehn twists.

    One entry (edge index, multiplicity n_e) per compact edge with
    nonzero twist; empty exactly when every defect vanishes.
    """
    require_valid(g)
    return [(ei, e.twist) for ei, e in g.compact_edges() if e.twist != 0]


def pencil_localization(g: DecoratedGraph) -> NodalCurveReport:
    """Cut the dual surface along n_e parallel circles per edge.

    Needs all n_e >= 0 (a transverse section with simple zeros exists only
    then).  Cutting the circles of an edge produces n_e - 1 annuli between
    consecutive circles; the remaining main pieces are the components of
    the graph with all positive-twist edges deleted, and each deleted edge
    end leaves one boundary circle on its side.  Collapsing every circle
    to a node yields the nodal curve: nodes total Sum(n_e), annuli become
    genus-0 components with two nodes.
    """
    require_valid(g)
    require_connected(g)
    oriented_form(g)  # raises NonOrientable when w1 != 0
    negative = [ei for ei, e in g.compact_edges() if e.twist < 0]
    if negative:
        raise NegativeDefect(
            f"edges {negative} have negative defect; no section with simple zeros exists"
        )
    inc = Incidence.of(g)
    num_v = len(g.vertices)
    kept_pairs = [
        inc.endpoints[ei] for ei, e in g.compact_edges() if e.twist == 0
    ]

    parent = list(range(num_v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in kept_pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    component_of: dict[int, int] = {}
    order: list[int] = []
    for v in range(num_v):
        root = find(v)
        if root not in component_of:
            component_of[root] = len(order)
            order.append(root)
    comp = [component_of[find(v)] for v in range(num_v)]
    num_main = len(order)

    # genus = cycle rank of the kept subgraph; boundary = legs + cut ends.
    comp_vertices = [0] * num_main
    comp_edges = [0] * num_main
    comp_boundary = [0] * num_main
    for v in range(num_v):
        comp_vertices[comp[v]] += 1
    for u, v in kept_pairs:
        comp_edges[comp[u]] += 1
    for _, leg in g.legs():
        comp_boundary[comp[inc.vertex_of[leg.end]]] += 1

    cut_edges = [(ei, e) for ei, e in g.compact_edges() if e.twist > 0]
    for ei, e in cut_edges:
        u, v = inc.endpoints[ei]
        comp_boundary[comp[u]] += 1
        comp_boundary[comp[v]] += 1

    components = tuple(
        (comp_edges[c] - comp_vertices[c] + 1, comp_boundary[c])
        for c in range(num_main)
    )

    incidence: dict[tuple[int, int], int] = {}
    sphere_index = num_main
    spheres = 0
    nodes = 0
    for ei, e in cut_edges:
        u, v = inc.endpoints[ei]
        chain = [comp[u]]
        for k in range(e.twist - 1):
            chain.append(sphere_index)
            sphere_index += 1
            spheres += 1
        chain.append(comp[v])
        for a, b in zip(chain, chain[1:]):
            key = (min(a, b), max(a, b))
            incidence[key] = incidence.get(key, 0) + 1
            nodes += 1
    return NodalCurveReport(components, nodes, incidence, spheres)

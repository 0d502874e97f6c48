"""Decorated trivalent ribbon graphs and their index categories.

A :class:`DecoratedGraph` is the combinatorial model of a graph-like
singular locus: vertices are triple points carrying a cyclic order of
three half-edges (the ribbon structure), compact edges are the closed
curve components with their defect/holonomy decorations, and legs are the
affine components.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from .errors import DisconnectedGraph, InvalidGraph, SingLocusError
from .intlinalg import _union_find_components, cycle_basis


def _nonzero(value, what: str) -> Fraction:
    f = Fraction(value)
    if f == 0:
        raise ValueError(f"{what} must be nonzero")
    return f


@dataclass(frozen=True)
class CompactEdge:
    """A closed curve component joining two half-edges.

    ``twist`` is the defect n_e, ``holonomy`` the clutching scalar beta_e,
    ``base_scalar`` the coordinate scalar alpha_e. ``reversing`` marks an
    orientation-reversing gluing, and ``self_intersections``, when known,
    must satisfy the triple point formula n_e = a + b + 2.
    """

    ends: tuple[int, int]
    twist: int = 0
    holonomy: Fraction = Fraction(1)
    base_scalar: Fraction = Fraction(1)
    reversing: bool = False
    self_intersections: Optional[tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "ends", (int(self.ends[0]), int(self.ends[1])))
        object.__setattr__(self, "twist", int(self.twist))
        object.__setattr__(self, "holonomy", _nonzero(self.holonomy, "holonomy"))
        object.__setattr__(self, "base_scalar", _nonzero(self.base_scalar, "base scalar"))
        if self.self_intersections is not None:
            a, b = self.self_intersections
            object.__setattr__(self, "self_intersections", (int(a), int(b)))


@dataclass(frozen=True)
class Leg:
    """An affine component: a single half-edge with no decoration."""

    end: int


Edge = Union[CompactEdge, Leg]


@dataclass(frozen=True)
class DecoratedGraph:
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, vertices, edges) -> "DecoratedGraph":
        return cls(tuple(tuple(v) for v in vertices), tuple(edges))

    def half_edges(self) -> list[int]:
        out = []
        for e in self.edges:
            if isinstance(e, CompactEdge):
                out.extend(e.ends)
            else:
                out.append(e.end)
        return out

    def compact_edges(self) -> list[tuple[int, CompactEdge]]:
        return [(i, e) for i, e in enumerate(self.edges) if isinstance(e, CompactEdge)]

    def legs(self) -> list[tuple[int, Leg]]:
        return [(i, e) for i, e in enumerate(self.edges) if isinstance(e, Leg)]


def validate_graph(g: DecoratedGraph) -> list[str]:
    """Return the list of violated invariants; empty iff the graph is valid."""
    report = []
    seen_vertex: dict[int, int] = {}
    for vi, triple in enumerate(g.vertices):
        if len(triple) != 3 or len(set(triple)) != 3:
            report.append(f"vertex {vi} not trivalent")
        for h in triple:
            seen_vertex[h] = seen_vertex.get(h, 0) + 1
    seen_edge: dict[int, int] = {}
    for h in g.half_edges():
        seen_edge[h] = seen_edge.get(h, 0) + 1
    for h, count in sorted(seen_vertex.items()):
        if count > 1:
            report.append(f"half-edge {h} attached to {count} vertices")
        if seen_edge.get(h, 0) == 0:
            report.append(f"half-edge {h} belongs to no edge")
    for h, count in sorted(seen_edge.items()):
        if count > 1:
            report.append(f"half-edge {h} used by {count} edges")
        if h not in seen_vertex:
            report.append(f"half-edge {h} attached to no vertex")
    for ei, e in g.compact_edges():
        if e.self_intersections is not None:
            a, b = e.self_intersections
            expected = a + b + 2
            if e.twist != expected:
                report.append(
                    f"edge {ei}: triple point formula: expected n_e = {expected}, got {e.twist}"
                )
    return report


def require_valid(g: DecoratedGraph) -> None:
    report = validate_graph(g)
    if report:
        raise InvalidGraph(report)


@dataclass(frozen=True)
class Incidence:
    """Precomputed lookup tables for a valid graph."""

    vertex_of: dict[int, int]
    position_of: dict[int, int]
    partner: dict[int, int]
    edge_of: dict[int, int]
    endpoints: dict[int, tuple[int, int]]

    @classmethod
    def of(cls, g: DecoratedGraph) -> "Incidence":
        vertex_of, position_of = {}, {}
        for vi, triple in enumerate(g.vertices):
            for pos, h in enumerate(triple):
                vertex_of[h] = vi
                position_of[h] = pos
        partner, edge_of, endpoints = {}, {}, {}
        for ei, e in enumerate(g.edges):
            if isinstance(e, CompactEdge):
                h1, h2 = e.ends
                partner[h1], partner[h2] = h2, h1
                edge_of[h1] = edge_of[h2] = ei
                endpoints[ei] = (vertex_of[h1], vertex_of[h2])
            else:
                edge_of[e.end] = ei
        return cls(vertex_of, position_of, partner, edge_of, endpoints)


def compact_edge_pairs(g: DecoratedGraph) -> list[tuple[int, int]]:
    """Endpoint vertex pairs of the compact edges, in edge order."""
    inc = Incidence.of(g)
    return [inc.endpoints[ei] for ei, _ in g.compact_edges()]


def is_connected(g: DecoratedGraph) -> bool:
    if not g.vertices:
        return False
    return _union_find_components(len(g.vertices), compact_edge_pairs(g)) == 1


def require_connected(g: DecoratedGraph) -> None:
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")


# ---------------------------------------------------------------------------
# Orientability
# ---------------------------------------------------------------------------


def orientability(g: DecoratedGraph) -> tuple[bool, list[int]]:
    """Decide whether the reversing flags can be gauged away.

    Returns ``(orientable, w1)`` where ``w1`` lists the Z/2 holonomy of the
    reversing flags on each cycle of :func:`cycle_basis` (compact edges
    only).  Flipping a vertex toggles the flag of every non-loop edge end
    at it, so the cycle holonomies are the complete obstruction.
    """
    require_valid(g)
    require_connected(g)
    pairs = compact_edge_pairs(g)
    compact = [e for _, e in g.compact_edges()]
    w1 = []
    for cycle in cycle_basis(len(g.vertices), pairs):
        total = 0
        for edge_idx, _sign in cycle:
            if compact[edge_idx].reversing:
                total ^= 1
        w1.append(total)
    return all(x == 0 for x in w1), w1


def orientation_gauge(g: DecoratedGraph) -> list[int]:
    """Vertex flips (0/1 per vertex) that gauge all reversing flags to False.

    Raises :class:`NonOrientable` if no such gauge exists.  The gauge is
    the deterministic one rooted at vertex 0 over the lowest-index
    spanning tree.
    """
    from .errors import NonOrientable

    require_valid(g)
    require_connected(g)
    pairs = compact_edge_pairs(g)
    compact = [e for _, e in g.compact_edges()]
    flips = [0] * len(g.vertices)
    assigned = [False] * len(g.vertices)
    assigned[0] = True
    adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(g.vertices))}
    for idx, (u, v) in enumerate(pairs):
        adjacency[u].append((v, idx))
        adjacency[v].append((u, idx))
    queue = [0]
    while queue:
        u = queue.pop(0)
        for (v, idx) in adjacency[u]:
            if not assigned[v]:
                assigned[v] = True
                flips[v] = flips[u] ^ (1 if compact[idx].reversing else 0)
                queue.append(v)
    for idx, (u, v) in enumerate(pairs):
        rev = 1 if compact[idx].reversing else 0
        if u == v:
            effective = rev
        else:
            effective = flips[u] ^ flips[v] ^ rev
        if effective:
            raise NonOrientable(f"reversing flags have nontrivial holonomy (edge {idx})")
    return flips


def flip_vertex(g: DecoratedGraph, vertex: int) -> DecoratedGraph:
    """Reverse one vertex's cyclic order and toggle its incident flags.

    A self-loop at the vertex is toggled twice, i.e. left unchanged.
    """
    vertices = list(g.vertices)
    vertices[vertex] = tuple(reversed(vertices[vertex]))
    at_vertex = set(g.vertices[vertex])
    edges = []
    for e in g.edges:
        if isinstance(e, CompactEdge):
            touches = sum(1 for h in e.ends if h in at_vertex)
            if touches == 1:
                e = replace(e, reversing=not e.reversing)
        edges.append(e)
    return DecoratedGraph(tuple(vertices), tuple(edges))


def oriented_form(g: DecoratedGraph) -> DecoratedGraph:
    """Apply :func:`orientation_gauge`, producing all-False reversing flags."""
    flips = orientation_gauge(g)
    out = g
    for v, flip in enumerate(flips):
        if flip:
            out = flip_vertex(out, v)
    assert all(not e.reversing for _, e in out.compact_edges())
    return out


# ---------------------------------------------------------------------------
# Dual surface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualSurface:
    """The pants-decomposition surface carried by the graph.

    One orientable pair of pants per vertex, glued along the compact
    edges; legs are free boundary circles.  Hence chi = -V and, in the
    orientable case, genus = E_compact - V + 1.  When the gluing is
    non-orientable, ``genus`` holds the crosscap number (chi = 2 - genus -
    boundary).
    """

    genus: int
    boundary_circles: int
    orientable: bool
    face_walks: tuple[tuple[int, ...], ...]


def _face_walks(g: DecoratedGraph) -> list[list[int]]:
    # Walk states are (half-edge, direction); the next half-edge is the
    # cyclic successor at the far vertex (predecessor when direction is
    # flipped), reversal toggled by the traversed edge's flag.  Legs bounce:
    # the walk slides around the tip and continues at the same vertex.
    inc = Incidence.of(g)

    def step(h: int, d: int) -> tuple[int, int]:
        ei = inc.edge_of[h]
        e = g.edges[ei]
        if isinstance(e, CompactEdge):
            h2 = inc.partner[h]
            d2 = -d if e.reversing else d
        else:
            h2, d2 = h, d
        triple = g.vertices[inc.vertex_of[h2]]
        pos = inc.position_of[h2]
        nxt = triple[(pos + d2) % 3]
        return nxt, d2

    def reverse_state(h: int, d: int) -> tuple[int, int]:
        # Conjugates the step map to its inverse, i.e. walks the same
        # boundary circle backwards.
        e = g.edges[inc.edge_of[h]]
        if isinstance(e, CompactEdge):
            return inc.partner[h], (d if e.reversing else -d)
        return h, -d

    states = [(h, d) for h in sorted(inc.vertex_of) for d in (+1, -1)]
    unseen = set(states)
    orbits = []
    for start in states:
        if start not in unseen:
            continue
        orbit = []
        cur = start
        while cur in unseen:
            unseen.discard(cur)
            orbit.append(cur)
            cur = step(*cur)
        orbits.append(orbit)
    # Every face is traced in both directions; report one walk per mirror
    # pair of orbits (a self-mirror orbit is reported once).  Forward
    # orbits win, so without reversing flags each half-edge is listed
    # exactly once across the reported walks.
    def key(orbit):
        forward = any(d > 0 for _, d in orbit)
        return (0 if forward else 1, min((h, -d) for h, d in orbit))

    orbits.sort(key=key)
    taken: list[list[int]] = []
    taken_sets: set[frozenset] = set()
    for orbit in orbits:
        mirror = frozenset(reverse_state(h, d) for h, d in orbit)
        if mirror in taken_sets:
            continue
        taken_sets.add(frozenset(orbit))
        pivot = min(range(len(orbit)), key=lambda i: (orbit[i][0], -orbit[i][1]))
        taken.append([h for h, _ in orbit[pivot:] + orbit[:pivot]])
    return taken


def dual_surface(g: DecoratedGraph) -> DualSurface:
    require_valid(g)
    require_connected(g)
    num_v = len(g.vertices)
    num_legs = len(g.legs())
    orientable, _ = orientability(g)
    chi = -num_v
    if orientable:
        genus2 = 2 - chi - num_legs
        assert genus2 % 2 == 0
        genus = genus2 // 2
    else:
        genus = 2 - chi - num_legs
    walks = tuple(tuple(w) for w in _face_walks(g))
    return DualSurface(genus, num_legs, orientable, walks)


# ---------------------------------------------------------------------------
# Index categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category given by an explicit composition table.

    ``arrows`` maps a name to ``(source, target)``; ``compose`` maps the
    composable pair ``(g, f)`` (apply f first) to the name of ``g o f``.
    """

    objects: tuple[str, ...]
    arrows: dict[str, tuple[str, str]] = field(compare=False)
    identities: dict[str, str] = field(compare=False)
    compose: dict[tuple[str, str], str] = field(compare=False)

    def check(self) -> None:
        for obj, ident in self.identities.items():
            src, tgt = self.arrows[ident]
            if src != obj or tgt != obj:
                raise SingLocusError(f"identity of {obj} is not an endo-arrow")
        names = list(self.arrows)
        for f in names:
            fs, ft = self.arrows[f]
            if self.compose[(self.identities[ft], f)] != f:
                raise SingLocusError(f"left unit fails for {f}")
            if self.compose[(f, self.identities[fs])] != f:
                raise SingLocusError(f"right unit fails for {f}")
        for f in names:
            fs, ft = self.arrows[f]
            for h in names:
                hs, ht = self.arrows[h]
                if hs != ft:
                    continue
                hf = self.compose[(h, f)]
                if self.arrows[hf] != (fs, ht):
                    raise SingLocusError(f"composite {h} o {f} has wrong endpoints")
                for k in names:
                    ks, kt = self.arrows[k]
                    if ks != ht:
                        continue
                    if self.compose[(k, hf)] != self.compose[(self.compose[(k, h)], f)]:
                        raise SingLocusError(
                            f"associativity fails on ({k}, {h}, {f})"
                        )


def build_j(g: DecoratedGraph, check: bool = True) -> FiniteCategory:
    """The category with objects = vertices and edges, one arrow per flag."""
    require_valid(g)
    inc = Incidence.of(g)
    objects = [f"v{vi}" for vi in range(len(g.vertices))]
    objects += [f"e{ei}" for ei in range(len(g.edges))]
    arrows: dict[str, tuple[str, str]] = {}
    identities: dict[str, str] = {}
    for obj in objects:
        name = f"id:{obj}"
        arrows[name] = (obj, obj)
        identities[obj] = name
    for h in sorted(inc.vertex_of):
        arrows[f"flag:h{h}"] = (f"v{inc.vertex_of[h]}", f"e{inc.edge_of[h]}")
    compose: dict[tuple[str, str], str] = {}
    for f, (fs, ft) in arrows.items():
        compose[(identities[ft], f)] = f
        compose[(f, identities[fs])] = f
    cat = FiniteCategory(tuple(objects), arrows, identities, compose)
    if check:
        cat.check()
    return cat


def build_i(g: DecoratedGraph, check: bool = True) -> FiniteCategory:
    """The flag-duplicated category: the edge object split into its flags.

    Objects are the vertices and the flags (one per half-edge); there is
    an arrow per flag and a two-sided isomorphism pair per compact edge.
    The composition closure is computed by saturation with a safety cap of
    ``10 * (objects + arrows)`` passes, which guards malformed input.
    """
    require_valid(g)
    inc = Incidence.of(g)
    objects = [f"v{vi}" for vi in range(len(g.vertices))]
    objects += [f"f{h}" for h in sorted(inc.vertex_of)]

    # Arrows are reduced words in the generators; the only relation is that
    # the two iso generators of an edge cancel.
    generators: dict[str, tuple[str, str]] = {}
    inverse_of: dict[str, str] = {}
    for h in sorted(inc.vertex_of):
        generators[f"flag:h{h}"] = (f"v{inc.vertex_of[h]}", f"f{h}")
    for ei, e in g.compact_edges():
        h1, h2 = e.ends
        generators[f"iso:e{ei}:fwd"] = (f"f{h1}", f"f{h2}")
        generators[f"iso:e{ei}:rev"] = (f"f{h2}", f"f{h1}")
        inverse_of[f"iso:e{ei}:fwd"] = f"iso:e{ei}:rev"
        inverse_of[f"iso:e{ei}:rev"] = f"iso:e{ei}:fwd"

    def reduce_word(word: tuple[str, ...]) -> tuple[str, ...]:
        out: list[str] = []
        for gname in word:
            if out and inverse_of.get(out[-1]) == gname:
                out.pop()
            else:
                out.append(gname)
        return tuple(out)

    # word -> (source, target); identity words are () tagged by object.
    words: dict[tuple, tuple[str, str]] = {}
    for obj in objects:
        words[("id", obj)] = (obj, obj)
    for gname, (src, tgt) in generators.items():
        words[("w", (gname,))] = (src, tgt)

    cap = 10 * (len(objects) + len(words))
    for _ in range(cap):
        new: dict[tuple, tuple[str, str]] = {}
        items = list(words.items())
        for f_key, (fs, ft) in items:
            for g_key, (gs, gt) in items:
                if gs != ft:
                    continue
                if f_key[0] == "id":
                    continue
                if g_key[0] == "id":
                    continue
                word = reduce_word(f_key[1] + g_key[1])
                key = ("id", fs) if not word else ("w", word)
                if key not in words and key not in new:
                    new[key] = (fs, gt)
        if not new:
            break
        words.update(new)
    else:
        raise SingLocusError("composition closure did not stabilize within the cap")

    def name(key) -> str:
        if key[0] == "id":
            return f"id:{key[1]}"
        return "*".join(key[1])

    arrows = {name(k): st for k, st in words.items()}
    identities = {obj: f"id:{obj}" for obj in objects}
    compose: dict[tuple[str, str], str] = {}
    keys = list(words)
    for f_key in keys:
        fs, ft = words[f_key]
        for g_key in keys:
            gs, gt = words[g_key]
            if gs != ft:
                continue
            if f_key[0] == "id":
                result = g_key
            elif g_key[0] == "id":
                result = f_key
            else:
                word = reduce_word(f_key[1] + g_key[1])
                result = ("id", fs) if not word else ("w", word)
            compose[(name(g_key), name(f_key))] = name(result)
    cat = FiniteCategory(tuple(objects), arrows, identities, compose)
    if check:
        cat.check()
    return cat


def collapse_functor(g: DecoratedGraph) -> dict[str, str]:
    """Object map of the equivalence from :func:`build_i` to :func:`build_j`,
    sending each flag object to its edge object."""
    inc = Incidence.of(g)
    mapping = {f"v{vi}": f"v{vi}" for vi in range(len(g.vertices))}
    for h, ei in inc.edge_of.items():
        mapping[f"f{h}"] = f"e{ei}"
    return mapping

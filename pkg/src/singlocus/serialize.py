"""JSON codecs for graphs, fans, diagrams, and analysis reports.

Rationals travel as "p/q" strings to keep everything exact, and every
emitter sorts keys so that identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .descent import DescentDiagram, PicInvariants, assemble_diagram
from .errors import SingLocusError
from .graphs import CompactEdge, DecoratedGraph, DualSurface, Leg
from .localmodels import EdgeAut
from .toric import Fan, WallReport
from .topology import H1Result, NodalCurveReport


class ParseError(SingLocusError):
    """Malformed JSON payloads (shape errors, bad rationals, ...)."""


def format_rational(x: Fraction) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: Any) -> Fraction:
    try:
        if isinstance(text, str):
            return Fraction(text.strip())
        if isinstance(text, int):
            return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None
    raise ParseError(f"bad rational {text!r}")


def dumps_canonical(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def graph_to_json(g: DecoratedGraph) -> dict:
    edges = []
    for e in g.edges:
        if isinstance(e, CompactEdge):
            obj = {
                "kind": "compact",
                "ends": list(e.ends),
                "twist": e.twist,
                "holonomy": format_rational(e.holonomy),
                "baseScalar": format_rational(e.base_scalar),
                "reversing": e.reversing,
            }
            if e.self_intersections is not None:
                obj["selfIntersections"] = list(e.self_intersections)
            edges.append(obj)
        else:
            edges.append({"kind": "leg", "end": e.end})
    return {
        "vertices": [{"halfEdges": list(v)} for v in g.vertices],
        "edges": edges,
    }


def graph_from_json(payload: dict) -> DecoratedGraph:
    try:
        vertices = [tuple(int(h) for h in v["halfEdges"]) for v in payload["vertices"]]
        edges = []
        for e in payload["edges"]:
            if e["kind"] == "compact":
                si = e.get("selfIntersections")
                edges.append(
                    CompactEdge(
                        (int(e["ends"][0]), int(e["ends"][1])),
                        twist=int(e.get("twist", 0)),
                        holonomy=parse_rational(e.get("holonomy", 1)),
                        base_scalar=parse_rational(e.get("baseScalar", 1)),
                        reversing=bool(e.get("reversing", False)),
                        self_intersections=None if si is None else (int(si[0]), int(si[1])),
                    )
                )
            elif e["kind"] == "leg":
                edges.append(Leg(int(e["end"])))
            else:
                raise ParseError(f"unknown edge kind {e['kind']!r}")
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from None
    return DecoratedGraph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# Fans
# ---------------------------------------------------------------------------


def fan_to_json(f: Fan) -> dict:
    return {"rays": [list(r) for r in f.rays], "cones": [list(c) for c in f.cones]}


def fan_from_json(payload: dict) -> Fan:
    try:
        return Fan.build(payload["rays"], payload["cones"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed fan JSON: {exc}") from None


# ---------------------------------------------------------------------------
# Descent diagrams
# ---------------------------------------------------------------------------


def diagram_to_json(d: DescentDiagram) -> dict:
    payload = graph_to_json(d.graph)
    payload["charts"] = [
        {"trivialization": format_rational(c.trivialization)} for c in d.charts
    ]
    transitions = []
    compact = d.graph.compact_edges()
    for (ei, _), aut, direction in zip(compact, d.transitions, d.directions):
        transitions.append(
            {
                "edge": ei,
                "direction": list(direction),
                "eps": aut.eps,
                "n": aut.n,
                "lamX": format_rational(aut.lam_x),
                "lamU": format_rational(aut.lam_u),
                "shift": aut.shift,
            }
        )
    payload["transitions"] = transitions
    return payload


def diagram_from_json(payload: dict) -> DescentDiagram:
    g = graph_from_json(payload)
    charts = None
    if "charts" in payload:
        try:
            charts = [parse_rational(c["trivialization"]) for c in payload["charts"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed charts: {exc}") from None
    transitions = None
    if "transitions" in payload:
        compact = g.compact_edges()
        by_edge = {}
        try:
            for t in payload["transitions"]:
                aut = EdgeAut(
                    int(t["eps"]),
                    int(t["n"]),
                    parse_rational(t["lamX"]),
                    parse_rational(t["lamU"]),
                    int(t["shift"]),
                )
                by_edge[int(t["edge"])] = ((int(t["direction"][0]), int(t["direction"][1])), aut)
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise ParseError(f"malformed transitions: {exc}") from None
        try:
            transitions = [by_edge[ei] for ei, _ in compact]
        except KeyError as exc:
            raise ParseError(f"missing transition for edge {exc}") from None
    return assemble_diagram(g, charts, transitions)


# ---------------------------------------------------------------------------
# Report fragments
# ---------------------------------------------------------------------------


def pic_to_json(p: PicInvariants) -> dict:
    return {
        "degreeVector": list(p.degree_vector),
        "betaHolonomies": [format_rational(x) for x in p.beta_holonomies],
        "alphaHolonomies": [format_rational(x) for x in p.alpha_holonomies],
    }


def surface_to_json(s: DualSurface) -> dict:
    return {
        "genus": s.genus,
        "boundaryCircles": s.boundary_circles,
        "orientable": s.orientable,
        "faceWalks": [list(w) for w in s.face_walks],
    }


def h1_to_json(h: H1Result) -> dict:
    return {"free": h.free_rank, "torsion": list(h.torsion)}


def nodal_curve_to_json(r: NodalCurveReport) -> dict:
    return {
        "components": [{"genus": g, "boundary": b} for g, b in r.components],
        "nodes": r.nodes,
        "incidence": [
            {"pair": [a, b], "nodes": n} for (a, b), n in sorted(r.incidence.items())
        ],
        "sphereComponents": r.sphere_components,
    }


def wall_report_to_json(w: WallReport) -> dict:
    return {
        "wall": list(w.wall),
        "adjacentCones": list(w.adjacent_cones),
        "selfIntersections": list(w.self_intersections),
        "defect": w.defect,
        "anticanonicalDegree": w.anticanonical_degree,
    }

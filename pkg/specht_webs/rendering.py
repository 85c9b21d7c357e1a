from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Any

import networkx as nx
from django.conf import settings
from django.template import TemplateDoesNotExist
from django.template.loader import select_template

from .diagrams import ForkDiagram
from .webs import HEAD, TAIL, TRIVALENT, Web

logger = logging.getLogger(__name__)

FORMATS = ("svg", "tikz")
LOOP_RADIUS = 0.4


@dataclass(frozen=True)
class DrawnVertex:
    x: float
    y: float
    kind: str
    label: str = ""


@dataclass(frozen=True)
class DrawnEdge:
    x1: float
    y1: float
    x2: float
    y2: float


@dataclass(frozen=True)
class Drawing:
    """
    A picture in abstract units: boundary points on y = 0 at x = 1..N, everything else above.
    Edges run from tail to head.
    """

    kind: str
    boundary_count: int
    vertices: tuple[DrawnVertex, ...]
    edges: tuple[DrawnEdge, ...]
    loops: tuple[tuple[float, float], ...] = ()

    @property
    def width(self) -> float:
        xs = [vertex.x for vertex in self.vertices] + [x + LOOP_RADIUS for x, _ in self.loops]
        return max(xs, default=0) + 1

    @property
    def height(self) -> float:
        ys = [vertex.y for vertex in self.vertices] + [y + LOOP_RADIUS for _, y in self.loops]
        return max(ys, default=0) + 1


def layout_fork_diagram(diagram: ForkDiagram) -> Drawing:
    """Each arc becomes a source vertex above its middle point, higher for wider arcs."""
    points = [DrawnVertex(float(p), 0.0, "boundary", str(p)) for p in range(1, 3 * diagram.n + 1)]
    forks = []
    edges = []
    for arc in diagram.arcs:
        x, y = float(arc.middle), (arc.right - arc.left) / 2
        forks.append(DrawnVertex(x, y, "source"))
        edges.extend(DrawnEdge(x, y, float(point), 0.0) for point in arc.endpoints)
    return Drawing("fork", 3 * diagram.n, tuple(points + forks), tuple(edges))


def layout_web(web: Web) -> Drawing:
    """
    Internal vertices go in layers by graph distance from the boundary, each at the mean x of its
    neighbours one layer down. Closed components are stacked above the rest.
    """
    planar = web.to_map()
    graph = planar.graph()
    boundary = {vertex: tag for vertex, tag in planar.tags.items() if tag > 0}
    depth: dict[int, int] = dict(nx.multi_source_dijkstra_path_length(graph, set(boundary))) if boundary else {}
    top = max(depth.values(), default=0)
    for component in sorted(nx.connected_components(graph.subgraph(set(planar.tags) - set(depth))), key=min):
        lengths = nx.single_source_shortest_path_length(graph, min(component))
        depth.update({vertex: top + 1 + length for vertex, length in lengths.items()})
        top = max(depth.values())

    x: dict[int, float] = {vertex: float(tag) for vertex, tag in boundary.items()}
    used: set[tuple[int, float]] = set()
    for vertex in sorted(depth, key=lambda vertex: (depth[vertex], vertex)):
        if vertex in x:
            continue
        below = [x[other] for other in graph.neighbors(vertex) if other in x]
        position = sum(below) / len(below) if below else 1.0
        while (depth[vertex], position) in used:
            position += 0.5
        used.add((depth[vertex], position))
        x[vertex] = position

    vertices = []
    for vertex, tag in sorted(planar.tags.items()):
        if tag > 0:
            kind, label = "boundary", str(tag)
        elif tag == TRIVALENT:
            kind, label = ("source" if planar.rotation[vertex][0][1] == TAIL else "sink"), ""
        else:
            kind, label = "crossing", ""
        vertices.append(DrawnVertex(x[vertex], float(depth[vertex]), kind, label))
    edges = [
        DrawnEdge(x[ends[TAIL]], float(depth[ends[TAIL]]), x[ends[HEAD]], float(depth[ends[HEAD]]))
        for _, ends in sorted(planar.ends.items())
    ]
    loops = tuple((web.boundary_count + 1.0 + k, 1.0) for k in range(planar.loops))
    return Drawing("web", web.boundary_count, tuple(vertices), tuple(edges), loops)


def layout(item: ForkDiagram | Web) -> Drawing:
    if isinstance(item, ForkDiagram):
        return layout_fork_diagram(item)
    return layout_web(item)


def _number(value: float) -> str:
    return f"{value:.2f}"


def _svg_context(drawing: Drawing, scale: int) -> dict[str, Any]:
    def px(value: float) -> str:
        return _number(value * scale)

    def py(value: float) -> str:
        return _number((drawing.height - value) * scale)

    return {
        "width": px(drawing.width),
        "height": px(drawing.height),
        "baseline": py(0),
        "radius": _number(scale / 10),
        "vertices": [
            {"x": px(v.x), "y": py(v.y), "label_y": py(v.y - 0.5), "kind": v.kind, "label": v.label}
            for v in drawing.vertices
        ],
        "edges": [{"x1": px(e.x1), "y1": py(e.y1), "x2": px(e.x2), "y2": py(e.y2)} for e in drawing.edges],
        "loops": [{"cx": px(cx), "cy": py(cy), "r": px(LOOP_RADIUS)} for cx, cy in drawing.loops],
    }


def _tikz_context(drawing: Drawing) -> dict[str, Any]:
    return {
        "width": _number(drawing.width),
        "vertices": [
            {"x": _number(v.x), "y": _number(v.y), "label_y": _number(v.y - 0.4), "kind": v.kind, "label": v.label}
            for v in drawing.vertices
        ],
        "edges": [
            {"x1": _number(e.x1), "y1": _number(e.y1), "x2": _number(e.x2), "y2": _number(e.y2)}
            for e in drawing.edges
        ],
        "loops": [{"cx": _number(cx), "cy": _number(cy), "r": _number(LOOP_RADIUS)} for cx, cy in drawing.loops],
    }


def _inline_svg(context: dict[str, Any]) -> str:
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=context["width"],
        height=context["height"],
        viewBox=f"0 0 {context['width']} {context['height']}",
    )
    baseline = context["baseline"]
    ET.SubElement(root, "line", x1="0", y1=baseline, x2=context["width"], y2=baseline, stroke="gray")
    for edge in context["edges"]:
        ET.SubElement(root, "line", stroke="black", **edge)
    for vertex in context["vertices"]:
        attributes = {"class": vertex["kind"], "cx": vertex["x"], "cy": vertex["y"], "r": context["radius"]}
        ET.SubElement(root, "circle", attrib=attributes)
        if vertex["label"]:
            text = ET.SubElement(root, "text", x=vertex["x"], y=vertex["label_y"])
            text.text = vertex["label"]
    for loop in context["loops"]:
        ET.SubElement(root, "circle", fill="none", stroke="black", **loop)
    return ET.tostring(root, encoding="unicode") + "\n"


def _inline_tikz(context: dict[str, Any]) -> str:
    lines = ["\\begin{tikzpicture}[>=stealth]", f"\\draw[gray] (0,0) -- ({context['width']},0);"]
    for e in context["edges"]:
        lines.append(f"\\draw[->] ({e['x1']},{e['y1']}) -- ({e['x2']},{e['y2']});")
    for v in context["vertices"]:
        lines.append(f"\\fill ({v['x']},{v['y']}) circle (1.5pt);")
        if v["label"]:
            lines.append(f"\\node at ({v['x']},{v['label_y']}) {{{v['label']}}};")
    for loop in context["loops"]:
        lines.append(f"\\draw ({loop['cx']},{loop['cy']}) circle ({loop['r']});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(item: ForkDiagram | Web, fmt: str = "svg") -> str:
    """
    Draw a fork diagram or a web as SVG or TikZ.

    Uses the template ``specht_webs/<kind>.<fmt>`` if a project provides one, then the packaged
    ``specht_webs/drawing.<fmt>``, then a built-in emitter.

    Raises:
        ValueError: If the format is not svg or tikz
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r}; choose from {list(FORMATS)}")
    drawing = layout(item)
    if fmt == "svg":
        context = _svg_context(drawing, getattr(settings, "SPECHT_RENDER_SCALE", 40))
    else:
        context = _tikz_context(drawing)

    try:
        template = select_template([f"specht_webs/{drawing.kind}.{fmt}", f"specht_webs/drawing.{fmt}"])
        return template.render(context)
    except TemplateDoesNotExist:
        logger.warning(f"No {fmt} template found; using the built-in emitter")
        return _inline_svg(context) if fmt == "svg" else _inline_tikz(context)

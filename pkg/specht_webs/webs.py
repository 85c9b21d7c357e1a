from __future__ import annotations

import hashlib
import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property
from typing import Any, Callable, ClassVar, Iterable

import networkx as nx
from django.conf import settings

from .diagrams import ForkDiagram, routing
from .lincomb import LinComb

logger = logging.getLogger(__name__)

# A slot is one end of an edge: (edge id, TAIL) where the edge leaves a vertex, (edge id, HEAD) where it arrives.
Slot = tuple[int, int]
Face = tuple[Slot, ...]
FaceChooser = Callable[[list[Face]], int]

TAIL, HEAD = 0, 1
TRIVALENT = 0
CROSSING = -1

LOOP_VALUE = 3
BIGON_VALUE = -2


def check_invariants() -> bool:
    return getattr(settings, "SPECHT_CHECK_INVARIANTS", True)


class PlanarMap:
    """
    Mutable oriented planar map used to build and rewrite webs.

    Every vertex keeps its slots in counterclockwise order. Boundary vertices carry their position
    (1, 2, ...) as tag, trivalent vertices carry 0 and crossings carry -1. Boundary points sit on a
    horizontal line below the picture and every boundary edge flows down into its boundary point.
    """

    def __init__(self) -> None:
        self.tags: dict[int, int] = {}
        self.rotation: dict[int, list[Slot]] = {}
        self.ends: dict[int, list[int]] = {}
        self.loops = 0
        self._next_vertex = 0
        self._next_edge = 0

    def copy(self) -> PlanarMap:
        other = PlanarMap()
        other.tags = dict(self.tags)
        other.rotation = {vertex: list(slots) for vertex, slots in self.rotation.items()}
        other.ends = {edge: list(ends) for edge, ends in self.ends.items()}
        other.loops = self.loops
        other._next_vertex = self._next_vertex
        other._next_edge = self._next_edge
        return other

    def add_vertex(self, position: int = 0, crossing: bool = False) -> int:
        """Add a boundary vertex (position >= 1), a trivalent vertex (position 0) or a crossing."""
        if position < 0 or (crossing and position):
            raise ValueError(f"Invalid vertex: position={position}, crossing={crossing}")
        vertex = self._next_vertex
        self._next_vertex += 1
        self.tags[vertex] = CROSSING if crossing else position
        self.rotation[vertex] = []
        return vertex

    def add_edge(self, tail: int, head: int) -> int:
        """Add an edge from tail to head, appending its ends to both rotations (so add edges in ccw order)."""
        edge = self._new_edge(tail, head)
        self.rotation[tail].append((edge, TAIL))
        self.rotation[head].append((edge, HEAD))
        return edge

    def _new_edge(self, tail: int, head: int) -> int:
        edge = self._next_edge
        self._next_edge += 1
        self.ends[edge] = [tail, head]
        return edge

    @property
    def boundary_count(self) -> int:
        return sum(1 for tag in self.tags.values() if tag > 0)

    @property
    def size(self) -> int:
        """Vertices plus edges plus loops; every rewrite makes it smaller."""
        return len(self.tags) + len(self.ends) + self.loops

    def boundary_vertex(self, position: int) -> int:
        for vertex, tag in self.tags.items():
            if tag == position:
                return vertex
        raise ValueError(f"No boundary point at position {position}")

    def crossings(self) -> list[int]:
        return sorted(vertex for vertex, tag in self.tags.items() if tag == CROSSING)

    def vertex_of(self, slot: Slot) -> int:
        edge, end = slot
        return self.ends[edge][end]

    @staticmethod
    def twin(slot: Slot) -> Slot:
        return (slot[0], 1 - slot[1])

    def rotation_next(self, slot: Slot) -> Slot:
        slots = self.rotation[self.vertex_of(slot)]
        return slots[(slots.index(slot) + 1) % len(slots)]

    def face_next(self, slot: Slot) -> Slot:
        return self.rotation_next(self.twin(slot))

    def faces(self) -> list[Face]:
        """Orbits of face_next, each starting at its smallest slot, sorted."""
        seen: set[Slot] = set()
        faces = []
        for slot in sorted(slot for slots in self.rotation.values() for slot in slots):
            if slot in seen:
                continue
            orbit = []
            current = slot
            while current not in seen:
                seen.add(current)
                orbit.append(current)
                current = self.face_next(current)
            faces.append(tuple(orbit))
        return faces

    def is_internal(self, face: Face) -> bool:
        """A face not touching the boundary line and free of crossings."""
        return all(self.tags[self.vertex_of(slot)] == TRIVALENT for slot in face)

    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.tags)
        graph.add_edges_from((tail, head, edge) for edge, (tail, head) in self.ends.items())
        return graph

    def validate(self) -> None:
        """
        Check the web invariants.

        Raises:
            ValueError: If a slot disagrees with its edge, a vertex has the wrong degree or orientation,
                the boundary positions are not 1..N, a component is not planar, or boundary points
                are not met in order along the outer face
        """
        seen: set[Slot] = set()
        for vertex, slots in self.rotation.items():
            for slot in slots:
                edge, end = slot
                if edge not in self.ends or self.ends[edge][end] != vertex or slot in seen:
                    raise ValueError(f"Slot {slot} at vertex {vertex} does not match its edge")
                seen.add(slot)
        if len(seen) != 2 * len(self.ends):
            raise ValueError("Some edge ends are not attached to a vertex")

        positions = sorted(tag for tag in self.tags.values() if tag > 0)
        if positions != list(range(1, len(positions) + 1)):
            raise ValueError(f"Boundary positions must be 1..{len(positions)}, got {positions}")

        for vertex, tag in self.tags.items():
            ends = [end for _, end in self.rotation[vertex]]
            if tag > 0 and ends != [HEAD]:
                raise ValueError(f"Boundary point {tag} must have a single edge flowing into it")
            if tag == TRIVALENT and (len(ends) != 3 or len(set(ends)) != 1):
                raise ValueError(f"Vertex {vertex} must have three edges, all in or all out, got {ends}")
            if tag == CROSSING:
                heads = [k for k, end in enumerate(ends) if end == HEAD]
                if len(ends) != 4 or len(heads) != 2 or (heads[1] - heads[0]) % 4 not in (1, 3):
                    raise ValueError(f"Crossing {vertex} must have two adjacent incoming strands, got {ends}")
            if tag < CROSSING:
                raise ValueError(f"Unknown vertex tag {tag}")

        faces = self.faces()
        boundary_sets = []
        for component in nx.connected_components(self.graph()):
            edges = sum(1 for tail, _ in self.ends.values() if tail in component)
            face_count = sum(1 for face in faces if self.vertex_of(face[0]) in component)
            if len(component) - edges + face_count != 2:
                raise ValueError(f"Component containing vertex {min(component)} is not planar")
            boundary = sorted(self.tags[vertex] for vertex in component if self.tags[vertex] > 0)
            if not boundary:
                continue
            start = self.rotation[self.boundary_vertex(boundary[0])][0]
            face = next(face for face in faces if start in face)
            k = face.index(start)
            walk = [self.tags[self.vertex_of(slot)] for slot in face[k:] + face[:k]]
            if [tag for tag in walk if tag > 0] != boundary:
                raise ValueError(f"Boundary points {boundary} are not met in order along the outer face")
            boundary_sets.append(set(boundary))

        for k, first in enumerate(boundary_sets):
            for second in boundary_sets[k + 1 :]:
                labels = [position in first for position in sorted(first | second)]
                changes = sum(1 for a, b in zip(labels, labels[1:]) if a != b)
                if changes >= 3:
                    raise ValueError(f"Components with boundary {sorted(first)} and {sorted(second)} interleave")

    def glue(self, pairs: Iterable[tuple[Slot, Slot]]) -> None:
        """
        Join dangling slots pairwise, where a dangling slot belongs to an edge whose vertex was removed.

        Each pair needs one incoming and one outgoing end. Chains of joined edges between live vertices
        become a single edge; chains that close up become loops.
        """
        partner: dict[Slot, Slot] = {}
        for first, second in pairs:
            if first[1] == second[1]:
                raise RuntimeError(f"Cannot join {first} to {second}: orientations do not match")
            partner[first] = second
            partner[second] = first

        visited: set[int] = set()
        for edge, end in sorted(partner):
            if end != HEAD or (edge, TAIL) in partner:
                continue
            chain = []
            last = partner[(edge, HEAD)][0]
            while (last, HEAD) in partner:
                if last in chain:
                    raise RuntimeError(f"Chain starting at edge {edge} runs into a cycle")
                chain.append(last)
                last = partner[(last, HEAD)][0]
            head = self.ends[last][HEAD]
            slots = self.rotation[head]
            slots[slots.index((last, HEAD))] = (edge, HEAD)
            self.ends[edge][HEAD] = head
            for removed in [*chain, last]:
                del self.ends[removed]
            visited.update([edge, *chain, last])

        for edge, end in sorted(partner):
            if end != HEAD or edge in visited:
                continue
            current = edge
            while current not in visited:
                visited.add(current)
                del self.ends[current]
                current = partner[(current, HEAD)][0]
            self.loops += 1

    def remove_vertices(self, vertices: Iterable[int]) -> None:
        for vertex in vertices:
            del self.tags[vertex]
            del self.rotation[vertex]

    def remove_edges(self, edges: Iterable[int]) -> None:
        for edge in edges:
            del self.ends[edge]

    def stack_crossing(self, i: int) -> int:
        """
        Route the strands ending at boundary points i and i+1 through a new crossing and swap them.

        Returns the crossing vertex. Its rotation is [upper right, upper left, lower left, lower right]
        and strands go straight through, so the strand from i now ends at i+1.
        """
        if not 1 <= i < self.boundary_count:
            raise ValueError(f"Generator index {i} out of range 1..{self.boundary_count - 1}")
        left, right = self.boundary_vertex(i), self.boundary_vertex(i + 1)
        (left_edge, _), (right_edge, _) = self.rotation[left][0], self.rotation[right][0]
        crossing = self.add_vertex(crossing=True)
        self.ends[left_edge][HEAD] = crossing
        self.ends[right_edge][HEAD] = crossing
        to_left = self._new_edge(crossing, left)
        to_right = self._new_edge(crossing, right)
        self.rotation[left] = [(to_left, HEAD)]
        self.rotation[right] = [(to_right, HEAD)]
        self.rotation[crossing] = [(right_edge, HEAD), (left_edge, HEAD), (to_left, TAIL), (to_right, TAIL)]
        return crossing

    def resolve(self, crossing: int, smoothing: str) -> None:
        """
        Replace a crossing by one skein term: ``"H"`` joins the incoming pair at a sink fed by a source
        of the outgoing pair, ``"I"`` lets each incoming strand continue on its own side.
        """
        slots = self.rotation[crossing]
        heads = [k for k, (_, end) in enumerate(slots) if end == HEAD]
        if len(slots) != 4 or len(heads) != 2 or (heads[1] - heads[0]) % 4 not in (1, 3):
            raise RuntimeError(f"Crossing {crossing} does not have two adjacent incoming strands: {slots}")
        k = heads[0] if (heads[1] - heads[0]) % 4 == 1 else heads[1]
        s0, s1, s2, s3 = (slots[(k + offset) % 4] for offset in range(4))
        self.remove_vertices([crossing])
        if smoothing == "I":
            self.glue([(s0, s3), (s1, s2)])
        elif smoothing == "H":
            sink = self.add_vertex()
            source = self.add_vertex()
            middle = self._new_edge(source, sink)
            for slot in (s0, s1):
                self.ends[slot[0]][HEAD] = sink
            for slot in (s2, s3):
                self.ends[slot[0]][TAIL] = source
            self.rotation[sink] = [s0, s1, (middle, HEAD)]
            self.rotation[source] = [s2, s3, (middle, TAIL)]
        else:
            raise ValueError(f"Unknown smoothing {smoothing!r}; use 'H' or 'I'")

    def candidate_faces(self) -> list[Face]:
        """Internal bigons and squares with distinct vertices and edges, bigons first."""
        candidates = []
        for face in self.faces():
            if len(face) not in (2, 4) or not self.is_internal(face):
                continue
            vertices = {self.vertex_of(slot) for slot in face}
            edges = {edge for edge, _ in face}
            if len(vertices) == len(face) and len(edges) == len(face):
                candidates.append(face)
        return sorted(candidates, key=lambda face: (len(face), face[0]))

    def has_elliptic_face(self) -> bool:
        return any(len(face) in (2, 4) and self.is_internal(face) for face in self.faces())

    def _outer_slots(self, face: Face) -> list[Slot]:
        """For each vertex of the face, its slot that is not on the face."""
        outer = []
        for k, slot in enumerate(face):
            on_face = {slot, self.twin(face[k - 1])}
            (other,) = [candidate for candidate in self.rotation[self.vertex_of(slot)] if candidate not in on_face]
            outer.append(other)
        return outer

    def remove_bigon(self, face: Face) -> None:
        outer = self._outer_slots(face)
        vertices = [self.vertex_of(slot) for slot in face]
        self.remove_edges(edge for edge, _ in face)
        self.remove_vertices(vertices)
        self.glue([(outer[0], outer[1])])

    def split_square(self, face: Face, smoothing: int) -> None:
        outer = self._outer_slots(face)
        vertices = [self.vertex_of(slot) for slot in face]
        self.remove_edges(edge for edge, _ in face)
        self.remove_vertices(vertices)
        if smoothing == 0:
            self.glue([(outer[0], outer[1]), (outer[2], outer[3])])
        else:
            self.glue([(outer[1], outer[2]), (outer[3], outer[0])])


def _traverse(planar: PlanarMap, start: int, offset: int) -> list[tuple[int, int]]:
    """Breadth-first order of (vertex, rotation offset), each vertex read ccw from the slot it was reached by."""
    order = [(start, offset)]
    seen = {start}
    queue = deque(order)
    while queue:
        vertex, first = queue.popleft()
        slots = planar.rotation[vertex]
        for edge, end in slots[first:] + slots[:first]:
            other = planar.ends[edge][1 - end]
            if other not in seen:
                seen.add(other)
                entry = (other, planar.rotation[other].index((edge, 1 - end)))
                order.append(entry)
                queue.append(entry)
    return order


def _encode(planar: PlanarMap, order: list[tuple[int, int]], base: int = 0) -> list[list[Any]]:
    number = {vertex: base + k for k, (vertex, _) in enumerate(order)}
    offsets = dict(order)
    records = []
    for vertex, first in order:
        slots = planar.rotation[vertex]
        encoded = []
        for edge, end in slots[first:] + slots[:first]:
            other = planar.ends[edge][1 - end]
            other_slots = planar.rotation[other]
            index = (other_slots.index((edge, 1 - end)) - offsets[other]) % len(other_slots)
            encoded.append([number[other], index, end])
        records.append([planar.tags[vertex], encoded])
    return records


def _canonical_table(planar: PlanarMap) -> list[list[Any]]:
    """
    Label vertices by breadth-first search from boundary point 1, then from the smallest boundary point
    not reached yet. Closed components follow, each read from the start that gives the smallest
    encoding, in increasing order of those encodings.
    """
    records: list[list[Any]] = []
    reached: set[int] = set()
    positions = sorted((tag, vertex) for vertex, tag in planar.tags.items() if tag > 0)
    for _, vertex in positions:
        if vertex in reached:
            continue
        order = _traverse(planar, vertex, 0)
        reached.update(v for v, _ in order)
        records.extend(_encode(planar, order, base=len(records)))

    closed = []
    remaining = planar.graph().subgraph(set(planar.tags) - reached)
    for component in nx.connected_components(remaining):
        best = min(
            (_encode(planar, order), order)
            for order in (
                _traverse(planar, vertex, offset)
                for vertex in sorted(component)
                for offset in range(len(planar.rotation[vertex]))
            )
        )
        closed.append(best)
    for _, order in sorted(closed, key=lambda item: item[0]):
        records.extend(_encode(planar, order, base=len(records)))
    return records


@dataclass(frozen=True)
class Web:
    """
    A web in canonical form: vertex k is ``(tag, slots)`` where each slot, read counterclockwise, is
    ``(neighbour, neighbour slot, end)`` and ``end`` is 0 when the edge leaves vertex k.

    Two webs are equal exactly when they are isotopic relative to the boundary.
    """

    boundary_count: int
    vertices: tuple[tuple[int, tuple[tuple[int, int, int], ...]], ...]
    loops: int = 0

    allows_crossings: ClassVar[bool] = False

    @classmethod
    def from_map(cls, planar: PlanarMap, validate: bool | None = None) -> Web:
        if not cls.allows_crossings and planar.crossings():
            raise ValueError("Webs cannot contain crossings; resolve them first")
        if validate or (validate is None and check_invariants()):
            planar.validate()
        table = _canonical_table(planar)
        return cls(
            planar.boundary_count,
            tuple((tag, tuple(tuple(slot) for slot in slots)) for tag, slots in table),
            planar.loops,
        )

    @classmethod
    def decode(cls, key: bytes) -> Web:
        return _decode(cls, key)

    def to_map(self) -> PlanarMap:
        planar = PlanarMap()
        for tag, slots in self.vertices:
            vertex = planar.add_vertex(crossing=True) if tag == CROSSING else planar.add_vertex(position=tag)
            planar.rotation[vertex] = [(-1, -1)] * len(slots)
        for vertex, (_, slots) in enumerate(self.vertices):
            for k, (other, index, end) in enumerate(slots):
                if end == TAIL:
                    edge = planar._new_edge(vertex, other)
                    planar.rotation[vertex][k] = (edge, TAIL)
                    planar.rotation[other][index] = (edge, HEAD)
        planar.loops = self.loops
        return planar

    @cached_property
    def key(self) -> bytes:
        data = {"boundary": self.boundary_count, "vertices": self.vertices, "loops": self.loops}
        return json.dumps(data, separators=(",", ":")).encode()

    @property
    def tags(self) -> tuple[int, ...]:
        return tuple(tag for tag, _ in self.vertices)

    @cached_property
    def _half_edge_index(self) -> dict[tuple[int, int], int]:
        index = {}
        for vertex, (_, slots) in enumerate(self.vertices):
            for k in range(len(slots)):
                index[(vertex, k)] = len(index)
        return index

    @property
    def half_edge_vertex(self) -> tuple[int, ...]:
        return tuple(vertex for vertex, _ in self._half_edge_index)

    @property
    def twin(self) -> tuple[int, ...]:
        return tuple(
            self._half_edge_index[(other, index)]
            for _, slots in self.vertices
            for other, index, _ in slots
        )

    @property
    def next_ccw(self) -> tuple[int, ...]:
        return tuple(
            self._half_edge_index[(vertex, (k + 1) % len(slots))]
            for vertex, (_, slots) in enumerate(self.vertices)
            for k in range(len(slots))
        )

    @property
    def out(self) -> tuple[bool, ...]:
        return tuple(end == TAIL for _, slots in self.vertices for _, _, end in slots)

    def to_json(self) -> dict[str, Any]:
        return {
            "boundary_count": self.boundary_count,
            "tags": list(self.tags),
            "twin": list(self.twin),
            "vertex": list(self.half_edge_vertex),
            "next": list(self.next_ccw),
            "out": list(self.out),
            "loops": self.loops,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Web:
        """
        Read the half-edge arrays written by ``to_json``; the result is validated and relabelled canonically.

        Raises:
            ValueError: If the arrays are inconsistent or describe an invalid web
        """
        try:
            tags, twin, vertex_of, next_ccw, out = (
                list(data[name]) for name in ("tags", "twin", "vertex", "next", "out")
            )
            loops = int(data.get("loops", 0))
        except (KeyError, TypeError) as e:
            raise ValueError(f"Web JSON needs tags, twin, vertex, next and out arrays: {e}") from e
        count = len(twin)
        if not (len(vertex_of) == len(next_ccw) == len(out) == count):
            raise ValueError("Half-edge arrays must all have the same length")
        if sorted(twin) != list(range(count)) or any(twin[twin[h]] != h or twin[h] == h for h in range(count)):
            raise ValueError("twin must be a fixed-point-free involution")
        if sorted(next_ccw) != list(range(count)) or any(not 0 <= v < len(tags) for v in vertex_of):
            raise ValueError("next must be a permutation of the half-edges and vertex must index tags")

        planar = PlanarMap()
        for tag in tags:
            if tag == CROSSING:
                planar.add_vertex(crossing=True)
            else:
                planar.add_vertex(position=tag)
        edge_of: dict[int, Slot] = {}
        for h in range(count):
            if bool(out[h]) == bool(out[twin[h]]):
                raise ValueError(f"Half-edges {h} and {twin[h]} must have opposite orientations")
            if out[h]:
                edge = planar._new_edge(vertex_of[h], vertex_of[twin[h]])
                edge_of[h] = (edge, TAIL)
                edge_of[twin[h]] = (edge, HEAD)
        for vertex in range(len(tags)):
            first = [h for h in range(count) if vertex_of[h] == vertex]
            rotation, h = [], first[0] if first else None
            while h is not None and edge_of[h] not in rotation:
                rotation.append(edge_of[h])
                h = next_ccw[h]
                if vertex_of[h] != vertex:
                    raise ValueError(f"next leaves vertex {vertex}")
            if len(rotation) != len(first):
                raise ValueError(f"next does not cycle through the half-edges of vertex {vertex}")
            planar.rotation[vertex] = rotation
        planar.loops = loops
        return cls.from_map(planar, validate=True)

    def __str__(self) -> str:
        digest = hashlib.sha1(self.key).hexdigest()[:8]
        return f"web[{self.boundary_count}:{digest}]"


class CrossingDiagram(Web):
    """A web that may also contain 4-valent crossings, which carry no over/under information."""

    allows_crossings: ClassVar[bool] = True

    @property
    def crossings(self) -> list[int]:
        return [vertex for vertex, (tag, _) in enumerate(self.vertices) if tag == CROSSING]


@cache
def _decode(cls: type[Web], key: bytes) -> Web:
    data = json.loads(key)
    vertices = tuple((tag, tuple(tuple(slot) for slot in slots)) for tag, slots in data["vertices"])
    return cls(data["boundary"], vertices, data["loops"])


class WebSum(LinComb[bytes]):
    """An integer combination of webs keyed by canonical form."""

    @classmethod
    def of_web(cls, web: Web, coefficient: int = 1) -> WebSum:
        return cls({web.key: coefficient})

    def webs(self) -> list[tuple[Web, int]]:
        return [(Web.decode(key), coefficient) for key, coefficient in self]

    def to_json(self) -> list[dict[str, Any]]:  # type: ignore[override]
        return [{"coefficient": coefficient, "web": web.to_json()} for web, coefficient in self.webs()]

    def _format_key(self, key: bytes) -> str:
        return str(Web.decode(key))


def canonical_form(web: Web) -> bytes:
    return web.key


@cache
def superstandard_web(n: int) -> Web:
    """W0: n disjoint forks, fork j a source over boundary points 3j-2, 3j-1, 3j."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    planar = PlanarMap()
    boundary = [planar.add_vertex(position=position) for position in range(1, 3 * n + 1)]
    for j in range(n):
        fork = planar.add_vertex()
        for point in boundary[3 * j : 3 * j + 3]:
            planar.add_edge(fork, point)
    return Web.from_map(planar)


def mirror(web: Web) -> Web:
    """Reflect left to right: position p goes to N+1-p and every rotation is reversed."""
    planar = web.to_map()
    for vertex, tag in planar.tags.items():
        if tag > 0:
            planar.tags[vertex] = web.boundary_count + 1 - tag
        planar.rotation[vertex].reverse()
    return type(web).from_map(planar)


def stack_crossing(web: Web, i: int) -> CrossingDiagram:
    planar = web.to_map()
    planar.stack_crossing(i)
    return CrossingDiagram.from_map(planar)


def resolve_crossing(
    diagram: CrossingDiagram, which: int
) -> tuple[tuple[CrossingDiagram, int], tuple[CrossingDiagram, int]]:
    """
    Apply the skein relation at crossing ``which``: the crossing equals the H-shaped term plus the
    identity term, both with coefficient 1.

    Raises:
        ValueError: If vertex ``which`` is not a crossing
        RuntimeError: If the crossing's strands do not pass straight through
    """
    if not 0 <= which < len(diagram.vertices) or diagram.vertices[which][0] != CROSSING:
        raise ValueError(f"Vertex {which} is not a crossing")
    planar = diagram.to_map()
    terms = []
    for smoothing in ("H", "I"):
        resolved = planar.copy()
        resolved.resolve(which, smoothing)
        terms.append((CrossingDiagram.from_map(resolved), 1))
    return terms[0], terms[1]


def resolve_all(diagram: Web) -> WebSum:
    """Resolve every crossing by the skein relation and reduce each term."""
    if not isinstance(diagram, CrossingDiagram) or not diagram.crossings:
        return reduce(Web.from_map(diagram.to_map()))
    result = WebSum()
    for term, coefficient in resolve_crossing(diagram, diagram.crossings[0]):
        result += coefficient * resolve_all(term)
    return result


def _rewrite_once(planar: PlanarMap, choose: FaceChooser | None = None) -> list[tuple[int, PlanarMap]] | None:
    """One rewrite step, or None when the web is non-elliptic."""
    if planar.loops:
        cleared = planar.copy()
        cleared.loops = 0
        logger.debug(f"Removing {planar.loops} loop(s)")
        return [(LOOP_VALUE**planar.loops, cleared)]

    candidates = planar.candidate_faces()
    if not candidates:
        if planar.has_elliptic_face():
            raise RuntimeError("Only degenerate bigon or square faces are left; cannot reduce")
        return None

    face = candidates[choose(candidates) if choose else 0]
    if len(face) == 2:
        logger.debug(f"Removing bigon {face}")
        rewritten = planar.copy()
        rewritten.remove_bigon(face)
        terms = [(BIGON_VALUE, rewritten)]
    else:
        logger.debug(f"Splitting square {face}")
        terms = []
        for smoothing in (0, 1):
            rewritten = planar.copy()
            rewritten.split_square(face, smoothing)
            terms.append((1, rewritten))

    for _, rewritten in terms:
        if rewritten.size >= planar.size:
            raise RuntimeError(f"Rewrite did not shrink the web: {planar.size} -> {rewritten.size}")
        if check_invariants():
            try:
                rewritten.validate()
            except ValueError as e:
                raise RuntimeError(f"Rewrite broke a web invariant: {e}") from e
    return terms


@cache
def _reduce_key(key: bytes) -> WebSum:
    terms = _rewrite_once(Web.decode(key).to_map())
    if terms is None:
        return WebSum({key: 1})
    result = WebSum()
    for coefficient, rewritten in terms:
        result += coefficient * _reduce_key(Web.from_map(rewritten, validate=False).key)
    return result


def reduce(web: Web, choose: FaceChooser | None = None) -> WebSum:
    """
    Rewrite a web into non-elliptic webs: loops count 3, bigons -2, and squares split into the two
    smoothings.

    Without ``choose`` the lowest face is rewritten first and results are memoised. ``choose`` picks
    the index of the face to rewrite among the candidates, which lets tests try other schedules.
    """
    if isinstance(web, CrossingDiagram) and web.crossings:
        return resolve_all(web)
    if choose is None:
        return _reduce_key(Web.from_map(web.to_map(), validate=False).key)

    result = WebSum()
    pending = [(1, web.to_map())]
    while pending:
        coefficient, planar = pending.pop()
        terms = _rewrite_once(planar, choose)
        if terms is None:
            result += WebSum({Web.from_map(planar, validate=False).key: coefficient})
            continue
        pending.extend((coefficient * factor, rewritten) for factor, rewritten in terms)
    return result


def is_non_elliptic(web: Web) -> bool:
    if web.loops or (isinstance(web, CrossingDiagram) and web.crossings):
        return False
    return not web.to_map().has_elliptic_face()


@cache
def _act_key(key: bytes, i: int) -> WebSum:
    return resolve_all(stack_crossing(Web.decode(key), i))


def act_web(s: WebSum, i: int) -> WebSum:
    """
    Right action of s_i: stack a crossing of strands i and i+1 under every term, resolve and reduce.

    Raises:
        ValueError: If i is not in 1..N-1 for the boundary size N of some term
    """
    result = WebSum()
    for web, coefficient in s.webs():
        if not 1 <= i < web.boundary_count:
            raise ValueError(f"Generator index {i} out of range 1..{web.boundary_count - 1}")
        result += coefficient * _act_key(web.key, i)
    return result


def web_of_fork(diagram: ForkDiagram) -> WebSum:
    """
    The non-elliptic expansion of a fork diagram: start from W0 and apply the generators of a reduced
    word of the routing permutation one at a time, reducing after each crossing.
    """
    result = WebSum.of_web(superstandard_web(diagram.n))
    for i in routing(diagram).reduced_word():
        result = act_web(result, i)
    return result

"""Resolution of a front into a Lagrangian projection diagram.

The resolved picture keeps the front's left-to-right layout: left cusps become
smooth caps, front crossings stay crossings, and each right cusp becomes a
crossing followed by a small loop (a right cap).  The plane is cut into
columns between consecutive primitive operations; inside column ``c`` the
strands sit in slots ``1..width[c]`` and the gaps between them are numbered
``0..width[c]`` from the top.  Faces of the planar map are unions of such
(column, gap) cells.

At every crossing the strand running from upper-left to lower-right (the one
of lesser front slope) is the over-strand.  Half-edges are numbered
counter-clockwise ``NE=0, NW=1, SW=2, SE=3``; turning left after arriving
along half-edge ``h`` leaves along ``h-1`` and fills the quadrant between
them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .front import CROSS, LCUSP, FrontDiagram, reduce_grading, trace_front

LCAP, XING, RCAP = "LCAP", "CROSS", "RCAP"
FRONT_CROSSING, RIGHT_CUSP = "FRONT_CROSSING", "RIGHT_CUSP"

NE, NW, SW, SE = 0, 1, 2, 3
HALF_NAMES = ("NE", "NW", "SW", "SE")
RIGHT, TOP, LEFT, BOTTOM = "R", "T", "L", "B"
# quadrant filled by a left turn after arriving along half-edge h
QUADRANT_OF_ARRIVAL = {NE: RIGHT, NW: TOP, SW: LEFT, SE: BOTTOM}
ARRIVAL_OF_QUADRANT = {q: h for h, q in QUADRANT_OF_ARRIVAL.items()}
POSITIVE_QUADRANTS = (LEFT, RIGHT)


def opposite(h: int) -> int:
    return (h + 2) % 4


def left_turn(h: int) -> int:
    return (h - 1) % 4


@dataclass(frozen=True)
class Op:
    kind: str
    k: int
    crossing: int = -1  # index into LagrangianDiagram.crossings for XING


@dataclass(frozen=True)
class Crossing:
    name: str
    grading: int
    kind: str
    op: int
    slot: int
    over_component: int
    under_component: int
    action: Fraction | None = None

    @property
    def is_mixed(self) -> bool:
        return self.over_component != self.under_component


@dataclass(frozen=True)
class Edge:
    """Arc of the planar map between two crossing half-edges.

    ``pieces`` lists (column, slot, direction) in traversal order from
    ``tail`` to ``head``; direction is +1 for rightward.
    """
    id: int
    tail: tuple[int, int]  # (crossing index, half-edge) we leave from
    head: tuple[int, int]  # (crossing index, half-edge) we arrive along
    pieces: tuple[tuple[int, int, int], ...]
    caps: tuple[tuple[str, int], ...]  # (LCAP|RCAP, +1 ccw / -1 cw) in order
    component: int


@dataclass(frozen=True)
class Face:
    id: int
    cells: tuple[tuple[int, int], ...]
    corners: tuple[tuple[str, str], ...]  # (crossing name, quadrant)

    @property
    def representative(self) -> tuple[int, int]:
        return self.cells[0]


@dataclass(frozen=True)
class DirectedEdge:
    edge: int
    sign: int  # +1 tail->head, -1 head->tail
    arrival: tuple[int, int]
    winding: np.ndarray  # contribution to each face's multiplicity
    turning: int  # half-turns contributed by caps
    convex_left: int  # ccw left caps
    concave_right: int  # cw right caps
    left_face: int


@dataclass
class LagrangianDiagram:
    crossings: tuple[Crossing, ...]
    ops: tuple[Op, ...]
    widths: tuple[int, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    cell_face: dict[tuple[int, int], int]
    modulus: int
    components: tuple[tuple[int, ...], ...]  # crossing indices touching each link component
    piece_component: dict[tuple[int, int], int]
    name: str | None = None

    def __post_init__(self):
        self._index = {c.name: i for i, c in enumerate(self.crossings)}
        self._departures: dict[tuple[int, int], DirectedEdge] = {}
        nf = len(self.faces)
        for e in self.edges:
            for sign in (1, -1):
                pieces = e.pieces if sign == 1 else tuple(
                    (c, s, -d) for c, s, d in reversed(e.pieces))
                caps = e.caps if sign == 1 else tuple((kind, -t) for kind, t in reversed(e.caps))
                wind = np.zeros(nf, dtype=np.int64)
                for f in self.faces:
                    col, gap = f.representative
                    wind[f.id] = sum(-d for c, s, d in pieces if c == col and s <= gap)
                start = e.tail if sign == 1 else e.head
                arrival = e.head if sign == 1 else e.tail
                left = self.quadrant_face(start[0], QUADRANT_OF_ARRIVAL[(start[1] + 1) % 4])
                self._departures[start] = DirectedEdge(
                    edge=e.id, sign=sign, arrival=arrival, winding=wind,
                    turning=sum(t for _, t in caps),
                    convex_left=sum(1 for kind, t in caps if kind == LCAP and t > 0),
                    concave_right=sum(1 for kind, t in caps if kind == RCAP and t < 0),
                    left_face=left,
                )

    def index(self, name: str) -> int:
        return self._index[name]

    def crossing(self, name: str) -> Crossing:
        return self.crossings[self._index[name]]

    def quadrant_face(self, crossing: int, quadrant: str) -> int:
        c = self.crossings[crossing]
        j, k = c.op, c.slot
        cell = {LEFT: (j, k), RIGHT: (j + 1, k), TOP: (j, k - 1), BOTTOM: (j, k + 1)}[quadrant]
        return self.cell_face[cell]

    def depart(self, crossing: int, half: int) -> DirectedEdge:
        return self._departures[(crossing, half)]

    @property
    def unbounded_face(self) -> int:
        return self.cell_face[(0, 0)]

    def graph_components(self) -> int:
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.tail[0])] = find(e.head[0])
        return len({find(i) for i in range(len(self.crossings))})

    def euler_characteristic(self) -> int:
        return len(self.crossings) - len(self.edges) + len(self.faces)


def _build_ops(d: FrontDiagram) -> tuple[list[Op], list[tuple[str, int, int]]]:
    """Primitive op list plus, per crossing, (kind, op index, event index)."""
    ops: list[Op] = []
    bs: list[tuple[int, int]] = []
    as_: list[tuple[int, int]] = []
    for i, ev in enumerate(d.events):
        if ev.kind == LCUSP:
            ops.append(Op(LCAP, ev.k))
        elif ev.kind == CROSS:
            bs.append((len(ops), i))
            ops.append(Op(XING, ev.k))
        else:
            as_.append((len(ops), i))
            ops.append(Op(XING, ev.k))
            ops.append(Op(RCAP, ev.k))
    order = [(FRONT_CROSSING, o, i) for o, i in bs] + [(RIGHT_CUSP, o, i) for o, i in as_]
    for idx, (_, o, _) in enumerate(order):
        ops[o] = Op(XING, ops[o].k, idx)
    return ops, order


def _column_arcs(ops: list[Op], d: FrontDiagram) -> list[tuple[int, ...]]:
    """Front arc occupying each slot of each resolved column."""
    t = trace_front(d)
    cols: list[tuple[int, ...]] = [()]
    slots: list[int] = []
    lcusp_events = iter(i for i, ev in enumerate(d.events) if ev.kind == LCUSP)
    for op in ops:
        k = op.k
        if op.kind == LCAP:
            cusp = t.cusps[next(lcusp_events)]
            slots[k - 1:k - 1] = [cusp.upper, cusp.lower]
        elif op.kind == XING:
            slots[k - 1], slots[k] = slots[k], slots[k - 1]
        else:
            del slots[k - 1:k + 1]
        cols.append(tuple(slots))
    return cols


def resolve(d: FrontDiagram) -> LagrangianDiagram:
    """Resolve a front into its Lagrangian projection with graded crossings."""
    t = trace_front(d)
    ops, order = _build_ops(d)
    names = d.crossing_names()
    actions = d.action_map
    cols = _column_arcs(ops, d)
    widths = tuple(len(c) for c in cols)
    arcs = t.arcs

    crossings = []
    for idx, (kind, o, _ev) in enumerate(order):
        k = ops[o].k
        over, under = cols[o][k - 1], cols[o][k]
        if kind == RIGHT_CUSP:
            grading = reduce_grading(1, t.modulus)
        else:
            grading = reduce_grading(arcs[over].potential - arcs[under].potential, t.modulus)
        crossings.append(Crossing(
            name=names[idx], grading=grading, kind=kind, op=o, slot=k,
            over_component=arcs[over].component, under_component=arcs[under].component,
            action=actions.get(names[idx]),
        ))

    piece_component = {(c, s + 1): arcs[a].component
                       for c, col in enumerate(cols) for s, a in enumerate(col)}

    edges = _trace_edges(ops, crossings, piece_component)
    faces, cell_face = _faces(ops, widths, crossings)
    comps = []
    for comp in range(1, len(t.components) + 1):
        comps.append(tuple(i for i, c in enumerate(crossings)
                           if comp in (c.over_component, c.under_component)))
    return LagrangianDiagram(
        crossings=tuple(crossings), ops=tuple(ops), widths=widths, edges=tuple(edges),
        faces=tuple(faces), cell_face=cell_face, modulus=t.modulus,
        components=tuple(comps), piece_component=piece_component, name=d.name,
    )


def _leave(op_index: int, k: int, half: int) -> tuple[int, int, int]:
    """First piece entered when leaving the crossing at ``op_index`` along ``half``."""
    if half == NW:
        return op_index, k, -1
    if half == SW:
        return op_index, k + 1, -1
    if half == NE:
        return op_index + 1, k, 1
    return op_index + 1, k + 1, 1


def _step(ops: list[Op], col: int, slot: int, direction: int):
    """Advance one piece.  Returns ('arrive', crossing, half) or ('piece', c, s, d, cap)."""
    if direction == 1:
        op = ops[col]
        k = op.k
        if op.kind == XING:
            if slot in (k, k + 1):
                return ("arrive", op.crossing, NW if slot == k else SW)
            return ("piece", col + 1, slot, 1, None)
        if op.kind == RCAP:
            if slot == k:
                return ("piece", col, k + 1, -1, (RCAP, -1))
            if slot == k + 1:
                return ("piece", col, k, -1, (RCAP, 1))
            return ("piece", col + 1, slot if slot < k else slot - 2, 1, None)
        return ("piece", col + 1, slot if slot < k else slot + 2, 1, None)
    op = ops[col - 1]
    k = op.k
    if op.kind == XING:
        if slot in (k, k + 1):
            return ("arrive", op.crossing, NE if slot == k else SE)
        return ("piece", col - 1, slot, -1, None)
    if op.kind == LCAP:
        if slot == k:
            return ("piece", col, k + 1, 1, (LCAP, 1))
        if slot == k + 1:
            return ("piece", col, k, 1, (LCAP, -1))
        return ("piece", col - 1, slot if slot < k else slot - 2, -1, None)
    return ("piece", col - 1, slot if slot < k else slot + 2, -1, None)


def _trace_edges(ops, crossings, piece_component) -> list[Edge]:
    edges: list[Edge] = []
    done: set[tuple[int, int]] = set()
    for ci, cr in enumerate(crossings):
        for half in (NE, NW, SW, SE):
            if (ci, half) in done:
                continue
            col, slot, direction = _leave(cr.op, cr.slot, half)
            pieces = [(col, slot, direction)]
            caps = []
            while True:
                res = _step(ops, col, slot, direction)
                if res[0] == "arrive":
                    head = (res[1], res[2])
                    break
                _, col, slot, direction, cap = res
                if cap is not None:
                    caps.append(cap)
                pieces.append((col, slot, direction))
            done.add((ci, half))
            done.add(head)
            c0 = pieces[0]
            edges.append(Edge(
                id=len(edges), tail=(ci, half), head=head, pieces=tuple(pieces),
                caps=tuple(caps), component=piece_component[(c0[0], c0[1])],
            ))
    return edges


def _faces(ops, widths, crossings):
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    cells = [(c, g) for c in range(len(widths)) for g in range(widths[c] + 1)]
    for cell in cells:
        parent[cell] = cell

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for j, op in enumerate(ops):
        k, nb = op.k, widths[j]
        if op.kind == LCAP:
            for g in range(nb + 1):
                if g <= k - 1:
                    union((j, g), (j + 1, g))
                else:
                    union((j, g), (j + 1, g + 2))
            union((j, k - 1), (j + 1, k + 1))
        elif op.kind == XING:
            for g in range(nb + 1):
                if g != k:
                    union((j, g), (j + 1, g))
        else:
            for g in range(nb + 1):
                if g <= k - 2:
                    union((j, g), (j + 1, g))
                elif g >= k + 2:
                    union((j, g), (j + 1, g - 2))
            union((j, k - 1), (j + 1, k - 1))
            union((j, k + 1), (j + 1, k - 1))

    roots: dict[tuple[int, int], int] = {}
    members: list[list[tuple[int, int]]] = []
    for cell in cells:  # column-major order; (0, 0) comes first -> face 0 unbounded
        r = find(cell)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        members[roots[r]].append(cell)
    cell_face = {cell: roots[find(cell)] for cell in cells}

    corners: list[list[tuple[str, str]]] = [[] for _ in members]
    for cr in crossings:
        j, k = cr.op, cr.slot
        for quad, cell in ((LEFT, (j, k)), (RIGHT, (j + 1, k)), (TOP, (j, k - 1)), (BOTTOM, (j, k + 1))):
            corners[cell_face[cell]].append((cr.name, quad))
    faces = [Face(i, tuple(m), tuple(corners[i])) for i, m in enumerate(members)]
    return faces, cell_face

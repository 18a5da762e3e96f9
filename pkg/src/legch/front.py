"""Legendrian front diagrams: parsing, strand tracing, classical invariants.

A front is read left to right as a sequence of events acting on horizontal
strand slots numbered from the top:

* ``lcusp k`` opens a left cusp whose two new strands occupy slots k, k+1;
* ``cross k`` swaps the strands in slots k and k+1;
* ``rcusp k`` closes the strands in slots k and k+1 with a right cusp.

Strands between cusps are called arcs.  Every arc starts at a left cusp and
ends at a right cusp; crossings never interrupt an arc.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import FrontError

LCUSP = "lcusp"
RCUSP = "rcusp"
CROSS = "cross"
EVENT_KINDS = (LCUSP, RCUSP, CROSS)


@dataclass(frozen=True)
class Event:
    kind: str
    k: int

    def __str__(self) -> str:
        return f"{self.kind} {self.k}"


@dataclass(frozen=True)
class FrontDiagram:
    events: tuple[Event, ...]
    name: str | None = None
    # (component id, offset) pairs; component ids are 1-based, ordered by
    # the position of each component's leftmost left cusp.
    offsets: tuple[tuple[int, int], ...] = ()
    actions: tuple[tuple[str, Fraction], ...] = ()

    @property
    def component_offsets(self) -> dict[int, int]:
        return dict(self.offsets)

    @property
    def action_map(self) -> dict[str, Fraction]:
        return dict(self.actions)

    def crossing_names(self) -> list[str]:
        """Front crossings ``b1..bm`` then right cusps ``a1..an``, left to right."""
        nb = sum(1 for e in self.events if e.kind == CROSS)
        na = sum(1 for e in self.events if e.kind == RCUSP)
        return [f"b{i}" for i in range(1, nb + 1)] + [f"a{i}" for i in range(1, na + 1)]

    def serialize(self) -> str:
        lines = []
        if self.name is not None:
            lines.append(f"name {self.name}")
        for comp, off in self.offsets:
            lines.append(f"offset {comp} {off}")
        for cname, val in self.actions:
            lines.append(f"action {cname} {val.numerator}/{val.denominator}")
        lines.extend(str(e) for e in self.events)
        return "\n".join(lines) + "\n"


_INT = re.compile(r"^[+-]?\d+$")


def _parse_int(tok: str, lineno: int) -> int:
    if not _INT.match(tok):
        raise FrontError(f"line {lineno}: expected an integer, got {tok!r}", "SYNTAX")
    return int(tok)


def _parse_positive_rational(tok: str, lineno: int) -> Fraction:
    try:
        val = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FrontError(f"line {lineno}: bad rational {tok!r}", "SYNTAX") from None
    if val <= 0:
        raise FrontError(f"line {lineno}: action must be positive, got {tok}", "SYNTAX")
    return val


def validate_events(events: tuple[Event, ...] | list[Event], linenos: list[int] | None = None) -> None:
    """Check slot bounds and closure; raises FrontError(BOUNDS/UNCLOSED)."""
    n = 0
    for idx, ev in enumerate(events):
        where = f"line {linenos[idx]}" if linenos else f"event {idx + 1}"
        if ev.kind == LCUSP:
            hi = n + 1
        else:
            hi = n - 1
        if not 1 <= ev.k <= hi:
            raise FrontError(
                f"{where}: {ev} out of range (strand count {n})", "BOUNDS")
        n += 2 if ev.kind == LCUSP else -2 if ev.kind == RCUSP else 0
    if n != 0:
        raise FrontError(f"front ends with {n} open strands", "UNCLOSED")


def parse_front(text: str) -> FrontDiagram:
    """Parse the line-oriented front format into a validated FrontDiagram."""
    events: list[Event] = []
    linenos: list[int] = []
    name = None
    offsets: dict[int, int] = {}
    actions: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0].lower()
        if head in EVENT_KINDS:
            if len(toks) != 2:
                raise FrontError(f"line {lineno}: expected '{head} <k>'", "SYNTAX")
            events.append(Event(head, _parse_int(toks[1], lineno)))
            linenos.append(lineno)
        elif head == "name":
            if len(toks) < 2:
                raise FrontError(f"line {lineno}: empty name", "SYNTAX")
            name = " ".join(toks[1:])
        elif head == "offset":
            if len(toks) != 3:
                raise FrontError(f"line {lineno}: expected 'offset <component> <int>'", "SYNTAX")
            offsets[_parse_int(toks[1], lineno)] = _parse_int(toks[2], lineno)
        elif head == "action":
            if len(toks) != 3:
                raise FrontError(f"line {lineno}: expected 'action <crossing> <p/q>'", "SYNTAX")
            actions[toks[1]] = _parse_positive_rational(toks[2], lineno)
        else:
            raise FrontError(f"line {lineno}: unknown directive {toks[0]!r}", "SYNTAX")

    validate_events(events, linenos)
    d = FrontDiagram(
        events=tuple(events),
        name=name,
        offsets=tuple(sorted(offsets.items())),
        actions=tuple(sorted(actions.items())),
    )
    known = set(d.crossing_names())
    for cname in actions:
        if cname not in known:
            raise FrontError(f"action given for unknown crossing {cname!r}", "SYNTAX")
    ncomp = len(trace_front(d).components)
    for comp in offsets:
        if not 1 <= comp <= ncomp:
            raise FrontError(f"offset given for unknown component {comp}", "SYNTAX")
    return d


def front_from_events(events: str) -> FrontDiagram:
    """Build a diagram from a compact ``"lcusp 1 / rcusp 1"`` string."""
    return parse_front("\n".join(part.strip() for part in events.split("/")))


# ---------------------------------------------------------------------------
# strand tracing


@dataclass
class Arc:
    id: int
    left_cusp: int  # event index
    right_cusp: int = -1
    upper_at_left: bool = False
    upper_at_right: bool = False
    component: int = 0
    orientation: int = 0  # +1 traversed rightward, -1 leftward
    potential: int = 0


@dataclass
class Cusp:
    event: int
    kind: str
    upper: int
    lower: int


@dataclass
class FrontCrossing:
    event: int
    k: int
    over: int  # arc in slot k before the crossing (lesser slope)
    under: int  # arc in slot k+1 before the crossing


@dataclass
class FrontTrace:
    arcs: list[Arc]
    cusps: dict[int, Cusp]
    crossings: list[FrontCrossing]
    columns: list[tuple[int, ...]]  # columns[i] = arcs after event i-1; columns[0] = ()
    components: list[list[int]]  # arc ids per component, in traversal order
    rot: list[int]
    down_cusps: list[int]
    up_cusps: list[int]
    modulus: int = 0
    right_cusps_of: list[int] = field(default_factory=list)


@lru_cache(maxsize=256)
def trace_front(d: FrontDiagram) -> FrontTrace:
    arcs: list[Arc] = []
    cusps: dict[int, Cusp] = {}
    crossings: list[FrontCrossing] = []
    slots: list[int] = []
    columns: list[tuple[int, ...]] = [()]
    for i, ev in enumerate(d.events):
        k = ev.k
        if ev.kind == LCUSP:
            up = Arc(len(arcs), i, upper_at_left=True)
            lo = Arc(len(arcs) + 1, i)
            arcs += [up, lo]
            slots[k - 1:k - 1] = [up.id, lo.id]
            cusps[i] = Cusp(i, LCUSP, up.id, lo.id)
        elif ev.kind == CROSS:
            crossings.append(FrontCrossing(i, k, slots[k - 1], slots[k]))
            slots[k - 1], slots[k] = slots[k], slots[k - 1]
        else:
            up, lo = slots[k - 1], slots[k]
            arcs[up].right_cusp = i
            arcs[up].upper_at_right = True
            arcs[lo].right_cusp = i
            cusps[i] = Cusp(i, RCUSP, up, lo)
            del slots[k - 1:k + 1]
        columns.append(tuple(slots))

    # walk each component: start at its leftmost left cusp, leave along the
    # lower arc heading right.
    seen: set[int] = set()
    components: list[list[int]] = []
    rots: list[int] = []
    downs: list[int] = []
    ups: list[int] = []
    for i in sorted(c.event for c in cusps.values() if c.kind == LCUSP):
        base = cusps[i]
        if base.lower in seen:
            continue
        comp_id = len(components) + 1
        order: list[int] = []
        arc_id, direction, mu = base.lower, 1, 0
        down = up = 0
        while arc_id not in seen:
            arc = arcs[arc_id]
            seen.add(arc_id)
            order.append(arc_id)
            arc.component = comp_id
            arc.orientation = direction
            arc.potential = mu
            cusp = cusps[arc.right_cusp if direction == 1 else arc.left_cusp]
            if arc_id == cusp.upper:
                nxt, mu = cusp.lower, mu - 1
                down += 1
            else:
                nxt, mu = cusp.upper, mu + 1
                up += 1
            arc_id, direction = nxt, -direction
        components.append(order)
        downs.append(down)
        ups.append(up)
        rots.append((down - up) // 2)

    offsets = d.component_offsets
    for arc in arcs:
        arc.potential += offsets.get(arc.component, 0)
    modulus = 0
    for r in rots:
        modulus = math.gcd(modulus, 2 * abs(r))
    rcount = [0] * len(components)
    for c in cusps.values():
        if c.kind == RCUSP:
            rcount[arcs[c.upper].component - 1] += 1
    return FrontTrace(arcs, cusps, crossings, columns, components, rots, downs, ups,
                      modulus, rcount)


def reduce_grading(value: int, modulus: int) -> int:
    return value % modulus if modulus else value


@dataclass(frozen=True)
class ClassicalInvariants:
    component: int
    tb: int
    rot: int


def crossing_sign(t: FrontTrace, c: FrontCrossing) -> int:
    """+1 when both strands run the same horizontal direction."""
    return 1 if t.arcs[c.over].orientation == t.arcs[c.under].orientation else -1


def classical_invariants(d: FrontDiagram) -> list[ClassicalInvariants]:
    """tb (self-writhe minus right cusps) and rot for each component."""
    t = trace_front(d)
    out = []
    for idx in range(len(t.components)):
        comp = idx + 1
        writhe = sum(crossing_sign(t, c) for c in t.crossings
                     if t.arcs[c.over].component == comp == t.arcs[c.under].component)
        out.append(ClassicalInvariants(comp, writhe - t.right_cusps_of[idx], t.rot[idx]))
    return out


def maslov_potential(d: FrontDiagram, z_grading: bool = False) -> dict[int, int]:
    """Maslov potential per arc id, reduced mod 2*rot when rot is nonzero.

    The lower arc leaving each component's leftmost left cusp gets potential
    0 (plus the component offset); going down through a cusp lowers the
    potential by one.
    """
    t = trace_front(d)
    if z_grading and t.modulus:
        raise FrontError(
            f"rotation numbers {t.rot} are nonzero; only Z/{t.modulus} gradings exist",
            "INCONSISTENT")
    return {a.id: reduce_grading(a.potential, t.modulus) for a in t.arcs}

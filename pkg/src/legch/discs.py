"""Enumeration of immersed polygons with one positive corner.

A polygon is described by its boundary, traversed counter-clockwise (disc on
the left).  The boundary is a closed walk along diagram edges which, at each
crossing it meets, either passes straight through or turns left into one of
the four quadrants.  Left and right quadrants are positive corners, top and
bottom quadrants negative ones.  A walk is accepted when

* it has exactly one positive corner (the chosen generator),
* its winding number around every face is non-negative,
* its tangent turns through exactly one full turn,
* counting leftmost convex points minus rightmost concave points gives one
  (the Euler characteristic of a disc),
* the grading drop across the polygon is one, and
* when actions are known, the action strictly decreases.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dga import DGA, Element, Generator
from .errors import BudgetError, DiscError, DSquaredError
from .lagrangian import (
    HALF_NAMES,
    LEFT,
    NE,
    NW,
    POSITIVE_QUADRANTS,
    QUADRANT_OF_ARRIVAL,
    RIGHT,
    SE,
    SW,
    LagrangianDiagram,
    left_turn,
    opposite,
)

DEFAULT_MAX_MULT = 4


@dataclass(frozen=True)
class DiscRecord:
    positive_corner: str
    negative_corners: tuple[str, ...]
    # (edge id, +1/-1) in traversal order starting just after the positive corner
    boundary_word: tuple[tuple[int, int], ...]
    face_multiplicities: tuple[int, ...]
    quadrant: str  # quadrant of the positive corner: "L" or "R"
    negative_quadrants: tuple[str, ...] = ()

    def sort_key(self):
        return (self.positive_corner, self.quadrant, len(self.negative_corners),
                self.negative_corners, self.boundary_word)

    def describe(self) -> str:
        word = " ".join(f"{'+' if s > 0 else '-'}e{e}" for e, s in self.boundary_word)
        negs = "*".join(self.negative_corners) or "1"
        mult = ",".join(str(m) for m in self.face_multiplicities)
        return f"{self.positive_corner}[{self.quadrant}] -> {negs} | {word} | faces {mult}"


@dataclass
class DiscSearch:
    discs: list[DiscRecord]
    incomplete: bool


def _closing_reachability(d: LagrangianDiagram, target: tuple[int, int]) -> set[tuple[int, int]]:
    """States (crossing, arrival half) from which ``target`` can still be reached."""
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ci in range(len(d.crossings)):
        for h in range(4):
            outs = [opposite(h)]
            if h in (NW, SE):
                outs.append(left_turn(h))
            if (ci, h) == target:
                outs.append(left_turn(h))
            for out in outs:
                nxt = d.depart(ci, out).arrival
                preds.setdefault(nxt, []).append((ci, h))
    seen = {target}
    queue = deque([target])
    while queue:
        s = queue.popleft()
        for p in preds.get(s, ()):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def area_weights(d: LagrangianDiagram, a: str) -> tuple[list[int], list[int]] | None:
    """Non-negative integer crossing weights giving every bounded face positive area.

    The signed area of a face is the sum of the weights at its corners, taken
    positively at left/right quadrants and negatively at top/bottom ones.  For
    any polygon with face multiplicities ``n`` this gives
    ``sum(n_f * area_f) = weight(a) - sum(weight(b_i))``, so the weights bound
    every polygon at ``a`` exactly as real actions would.  The weight of ``a``
    is minimised to make that bound as tight as possible.  Returns
    ``(crossing weights, face areas)`` or ``None`` when no weighting exists.
    """
    cache = d.__dict__.setdefault("_area_cache", {})
    if a in cache:
        return cache[a]
    from scipy.optimize import linprog

    nc = len(d.crossings)
    bounded = [f for f in d.faces if f.id != d.unbounded_face]
    rows = []
    for f in bounded:
        row = [0] * nc
        for name, quad in f.corners:
            row[d.index(name)] += 1 if quad in POSITIVE_QUADRANTS else -1
        rows.append(row)
    out = None
    if rows:
        cost = [0] * nc
        cost[d.index(a)] = 1
        res = linprog(cost, A_ub=[[-x for x in r] for r in rows], b_ub=[-1] * len(rows),
                      bounds=[(0, None)] * nc, method="highs")
        if res.status == 0:
            fr = [max(Fraction(float(x)).limit_denominator(1000), Fraction(0)) for x in res.x]
            scale = math.lcm(*(x.denominator for x in fr))
            weights = [int(x * scale) for x in fr]
            areas = [0] * len(d.faces)
            for f, row in zip(bounded, rows):
                areas[f.id] = sum(r * w for r, w in zip(row, weights))
            if all(areas[f.id] > 0 for f in bounded):
                out = (weights, areas)
    cache[a] = out
    return out


def enumerate_discs(d: LagrangianDiagram, a: str, max_mult: int = DEFAULT_MAX_MULT,
                    rng: random.Random | None = None) -> DiscSearch:
    """All immersed polygons with positive corner at crossing ``a``.

    A polygon covering some face more than ``max_mult`` times is not reported;
    if one exists with multiplicity ``max_mult + 1`` the search is marked
    incomplete.  Passing ``rng`` shuffles the order in which moves are tried;
    the result set does not depend on it.

    Pruning is exact.  The number of times a directed edge has been walked is
    a lower bound for the multiplicity of the face on its left, and these
    lower bounds only grow along the walk.  Weighted by the areas from
    :func:`area_weights`, together with the weights of negative corners taken
    so far, they may never exceed the weight of ``a``.
    """
    if max_mult < 1:
        raise DiscError(f"max_mult must be positive, got {max_mult}", "INVALID")
    try:
        ai = d.index(a)
    except KeyError:
        raise DiscError(f"no crossing named {a!r}", "INVALID") from None
    gen = d.crossings[ai]
    modulus = d.modulus
    grades = [c.grading for c in d.crossings]
    grading_prune = modulus == 0 and all(g >= 0 for g in grades)
    actions = [c.action for c in d.crossings]
    action_prune = all(x is not None for x in actions)
    cap = max_mult + 1
    nfaces = len(d.faces)
    unbounded = d.unbounded_face
    names = [c.name for c in d.crossings]
    aw = area_weights(d, a)
    weights, areas = aw if aw else ([0] * len(d.crossings), [0] * nfaces)
    budget = weights[ai] if aw else None

    found: list[DiscRecord] = []
    incomplete = False

    for start_h in (SW, NE):  # LEFT quadrant, then RIGHT quadrant
        quad = QUADRANT_OF_ARRIVAL[start_h]
        target = (ai, start_h)
        alive = _closing_reachability(d, target)
        first = d.depart(ai, left_turn(start_h))
        if first.arrival not in alive:
            continue
        counts: dict[tuple[int, int], int] = {}
        lower = [0] * nfaces
        word: list[tuple[int, int]] = []
        negs: list[int] = []
        neg_quads: list[str] = []

        def accept(wind, turning, euler):
            nonlocal incomplete
            if turning != 2 or euler != 1:
                return
            if wind.min() < 0 or wind[unbounded] != 0 or wind.max() <= 0:
                return
            drop = gen.grading - sum(grades[i] for i in negs) - 1
            if (drop % modulus if modulus else drop) != 0:
                return
            if action_prune and sum(actions[i] for i in negs) >= actions[ai]:
                return
            if wind.max() > max_mult:
                incomplete = True
                return
            found.append(DiscRecord(
                positive_corner=a,
                negative_corners=tuple(names[i] for i in negs),
                boundary_word=tuple(word),
                face_multiplicities=tuple(int(x) for x in wind),
                quadrant=quad,
                negative_quadrants=tuple(neg_quads),
            ))

        def go(dep, wind, turning, euler, gsum, asum, used):
            key = (dep.edge, dep.sign)
            n = counts.get(key, 0) + 1
            if n > cap:
                return
            f = dep.left_face
            old = lower[f]
            if n > old:
                if f == unbounded:
                    return
                used += (n - old) * areas[f]
                if budget is not None and used > budget:
                    return
                lower[f] = n
            counts[key] = n
            word.append(key)
            wind = wind + dep.winding
            turning += dep.turning
            euler += dep.convex_left - dep.concave_right
            state = dep.arrival
            ci, h = state
            if state == target:
                # closing corner: left turn into the positive quadrant
                accept(wind, turning + 1, euler + (1 if quad == RIGHT else 0))
            moves = [("straight", opposite(h))]
            if h in (NW, SE):
                moves.append(("corner", left_turn(h)))
            if rng is not None:
                rng.shuffle(moves)
            for kind, out in moves:
                nxt = d.depart(ci, out)
                if nxt.arrival not in alive:
                    continue
                if kind == "straight":
                    go(nxt, wind, turning, euler, gsum, asum, used)
                    continue
                g2 = gsum + grades[ci]
                if grading_prune and g2 > gen.grading - 1:
                    continue
                if budget is not None and used + weights[ci] > budget:
                    continue
                a2 = None
                if action_prune:
                    a2 = asum + actions[ci]
                    if a2 >= actions[ai]:
                        continue
                negs.append(ci)
                neg_quads.append(QUADRANT_OF_ARRIVAL[h])
                go(nxt, wind, turning, euler, g2, a2, used + weights[ci])
                negs.pop()
                neg_quads.pop()
            word.pop()
            counts[key] = n - 1
            lower[f] = old

        go(first, np.zeros(nfaces, dtype=np.int64), 0, 0, 0, 0 if action_prune else None, 0)

    found.sort(key=DiscRecord.sort_key)
    return DiscSearch(found, incomplete)


def disc_dump(d: LagrangianDiagram, max_mult: int = DEFAULT_MAX_MULT) -> str:
    """Stable text listing of every disc, one per line, for debugging."""
    lines = []
    for e in d.edges:
        t = f"{d.crossings[e.tail[0]].name}.{HALF_NAMES[e.tail[1]]}"
        h = f"{d.crossings[e.head[0]].name}.{HALF_NAMES[e.head[1]]}"
        lines.append(f"edge e{e.id}: {t} -> {h}")
    for c in sorted(d.crossings, key=lambda c: _name_key(c.name)):
        res = enumerate_discs(d, c.name, max_mult)
        for disc in res.discs:
            lines.append(disc.describe())
        if res.incomplete:
            lines.append(f"{c.name}: INCOMPLETE at max_mult={max_mult}")
    return "\n".join(lines) + "\n"


def _name_key(name: str):
    from .dga import name_key
    return name_key(name)


def differential(d: LagrangianDiagram, max_mult: int = DEFAULT_MAX_MULT,
                 check: bool = True) -> DGA:
    """The differential counting polygons mod 2, as a DGA on the crossings."""
    gens = [Generator(c.name, c.grading, c.action) for c in d.crossings]
    diff: dict[str, Element] = {}
    incomplete = []
    for c in d.crossings:
        res = enumerate_discs(d, c.name, max_mult)
        if res.incomplete:
            incomplete.append(c.name)
        diff[c.name] = Element.from_words(disc.negative_corners for disc in res.discs)
    if incomplete:
        raise BudgetError(
            f"disc search truncated at max_mult={max_mult} for {', '.join(incomplete)}")
    dga = DGA(gens, diff, modulus=d.modulus)
    if check:
        report = dga.verify_d_squared()
        if not report.ok:
            raise DSquaredError(
                f"d^2 != 0 on {report.generator}: residual {report.residual}")
    return dga


__all__ = ["DiscRecord", "DiscSearch", "enumerate_discs", "differential", "disc_dump",
           "DEFAULT_MAX_MULT", "LEFT", "RIGHT"]

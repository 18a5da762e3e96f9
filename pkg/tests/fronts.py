"""Random front diagrams for property tests."""
from __future__ import annotations

import random

from legch.front import CROSS, LCUSP, RCUSP, Event, FrontDiagram


def random_events(rng: random.Random, max_cusps: int = 4, max_crossings: int = 6) -> list[Event]:
    events: list[Event] = []
    n = cusps = crossings = 0
    while True:
        moves = []
        if cusps < max_cusps:
            moves.append(LCUSP)
        if n >= 2:
            moves.append(RCUSP)
            if crossings < max_crossings:
                moves += [CROSS, CROSS]
        if not moves:
            break
        kind = rng.choice(moves)
        if kind == LCUSP:
            events.append(Event(LCUSP, rng.randint(1, n + 1)))
            n += 2
            cusps += 1
        elif kind == CROSS:
            events.append(Event(CROSS, rng.randint(1, n - 1)))
            crossings += 1
        else:
            events.append(Event(RCUSP, rng.randint(1, n - 1)))
            n -= 2
        if n == 0 and cusps >= max_cusps:
            break
    while n:
        events.append(Event(RCUSP, rng.randint(1, n - 1)))
        n -= 2
    return events


def random_front(rng: random.Random, **kw) -> FrontDiagram:
    return FrontDiagram(tuple(random_events(rng, **kw)))

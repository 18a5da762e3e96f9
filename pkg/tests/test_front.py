import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fronts import random_events
from legch.errors import FrontError
from legch.front import (
    FrontDiagram,
    classical_invariants,
    front_from_events,
    maslov_potential,
    parse_front,
    trace_front,
)
from legch.lagrangian import resolve
from oracles import front_oracle

UNKNOT = "lcusp 1 / rcusp 1"
TREFOIL = "lcusp 1 / lcusp 3 / cross 2 / cross 2 / cross 2 / rcusp 1 / rcusp 1"


def as_pairs(d: FrontDiagram):
    return [(e.kind, e.k) for e in d.events]


def test_unknot_parses_to_one_component():
    d = front_from_events(UNKNOT)
    assert len(d.events) == 2
    assert len(trace_front(d).components) == 1


def test_trefoil_parses_to_one_component():
    d = front_from_events(TREFOIL)
    assert len(d.events) == 7
    assert front_oracle(as_pairs(d))["components"] == 1
    assert len(trace_front(d).components) == 1


def test_listed_trefoil_variant_is_two_nested_unknots():
    d = front_from_events("lcusp 1 / lcusp 2 / cross 2 / cross 2 / cross 2 / rcusp 2 / rcusp 1")
    assert len(d.events) == 7
    assert front_oracle(as_pairs(d))["components"] == 2
    assert len(trace_front(d).components) == 2


@pytest.mark.parametrize("text,code", [
    ("lcusp 1 / cross 2", "BOUNDS"),
    ("lcusp 1", "UNCLOSED"),
    ("lcusp 1 / rcusp 2", "BOUNDS"),
    ("lcusp x", "SYNTAX"),
    ("wiggle 1", "SYNTAX"),
    ("lcusp 1 2", "SYNTAX"),
])
def test_parse_errors(text, code):
    with pytest.raises(FrontError) as exc:
        front_from_events(text)
    assert exc.value.code == code


def test_header_lines_and_comments():
    d = parse_front("# demo\nname demo knot\naction a1 3/2\nlcusp 1  # left\nrcusp 1\n")
    assert d.name == "demo knot"
    assert resolve(d).crossing("a1").action == pytest.approx(1.5)
    with pytest.raises(FrontError):
        parse_front("action b7 1\nlcusp 1\nrcusp 1\n")
    with pytest.raises(FrontError):
        parse_front("action a1 -1\nlcusp 1\nrcusp 1\n")
    with pytest.raises(FrontError):
        parse_front("offset 2 1\nlcusp 1\nrcusp 1\n")


def test_classical_invariants_of_small_fronts():
    (u,) = classical_invariants(front_from_events(UNKNOT))
    assert (u.tb, u.rot) == (-1, 0)
    (t,) = classical_invariants(front_from_events(TREFOIL))
    assert (t.tb, t.rot) == (1, 0)
    (s,) = classical_invariants(front_from_events("lcusp 1 / lcusp 1 / rcusp 2 / rcusp 1"))
    assert abs(s.rot) == 1


def test_stabilization_rotation_matches_cusp_count():
    d = front_from_events("lcusp 1 / lcusp 1 / rcusp 2 / rcusp 1")
    t = trace_front(d)
    assert t.rot[0] == (t.down_cusps[0] - t.up_cusps[0]) // 2
    assert t.modulus == 2


def test_unknot_potentials():
    assert sorted(maslov_potential(front_from_events(UNKNOT)).values()) == [0, 1]


def test_z_grading_rejected_for_rotating_fronts():
    with pytest.raises(FrontError) as exc:
        maslov_potential(front_from_events("lcusp 1 / lcusp 1 / rcusp 2 / rcusp 1"), z_grading=True)
    assert exc.value.code == "INCONSISTENT"


def test_resolve_names_and_gradings():
    u = resolve(front_from_events(UNKNOT))
    assert [(c.name, c.grading) for c in u.crossings] == [("a1", 1)]
    t = resolve(front_from_events(TREFOIL))
    assert [(c.name, c.grading) for c in t.crossings] == [
        ("b1", 0), ("b2", 0), ("b3", 0), ("a1", 1), ("a2", 1)]


def test_cusps_only_front_has_grading_one_crossings():
    d = front_from_events("lcusp 1 / lcusp 3 / rcusp 3 / rcusp 1")
    lag = resolve(d)
    assert [c.grading for c in lag.crossings] == [1, 1]


def test_offsets_shift_only_mixed_gradings():
    base = parse_front("lcusp 1\nlcusp 3\ncross 2\ncross 1\ncross 3\ncross 2\nrcusp 1\nrcusp 1\n")
    shifted = parse_front("offset 2 5\n" + base.serialize())
    for c0, c1 in zip(resolve(base).crossings, resolve(shifted).crossings):
        if c0.is_mixed:
            assert abs(c1.grading - c0.grading) == 5
        else:
            assert c1.grading == c0.grading


def _random_front(seed: int) -> FrontDiagram:
    rng = random.Random(seed)
    return FrontDiagram(tuple(random_events(rng, max_cusps=rng.randint(1, 5),
                                            max_crossings=rng.randint(0, 8))))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_serialize_round_trip(seed):
    d = _random_front(seed)
    assert parse_front(d.serialize()) == d


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_resolution_matches_front_oracle(seed):
    d = _random_front(seed)
    ref = front_oracle(as_pairs(d))
    t = trace_front(d)
    lag = resolve(d)
    assert len(t.components) == ref["components"]
    assert len(lag.crossings) == sum(1 for e in d.events if e.kind != "lcusp")
    assert all(c.grading == 1 % lag.modulus if lag.modulus else c.grading == 1
               for c in lag.crossings if c.kind == "RIGHT_CUSP")
    assert lag.euler_characteristic() == 1 + lag.graph_components()
    if ref["consistent"]:
        assert lag.modulus == 0
        assert [c.grading for c in lag.crossings if c.kind != "RIGHT_CUSP"] == ref["crossing_gradings"]
    else:
        assert lag.modulus > 0

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fsit.model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    SceneObservation,
)
from fsit.grounding import spatial_interface


@pytest.fixture
def glassware_interface() -> InputInterface:
    """Two types, one relation, full reification (v=2, w=1)."""
    return InputInterface(
        types=("GLASS", "CUP"),
        relations=(RelationSymbol("front"),),
        mode=ReificationMode.FULL,
    )


@pytest.fixture
def single_fact_scene() -> SceneObservation:
    """One glass with one cup in front of it."""
    return SceneObservation(
        "e1",
        elements=(
            Element("g1", {"GLASS": 0.8}),
            Element("g2", {"CUP": 0.9}),
        ),
        facts=(Fact("g1", "front", "g2", 0.9),),
    )


@pytest.fixture
def three_fact_scene() -> SceneObservation:
    """Two glasses (one ambiguous) and a cup, three front facts."""
    return SceneObservation(
        "e2",
        elements=(
            Element("g1", {"GLASS": 0.8}),
            Element("g2", {"CUP": 0.9}),
            Element("g3", {"GLASS": 0.1, "CUP": 0.7}),
        ),
        facts=(
            Fact("g1", "front", "g2", 0.6),
            Fact("g1", "front", "g3", 0.5),
            Fact("g3", "front", "g2", 0.9),
        ),
    )


@pytest.fixture
def tabletop_interface() -> InputInterface:
    """Four shapes, four directional relations, simplified reification."""
    return spatial_interface()


def worked_pair_scene() -> tuple[SceneObservation, InputInterface]:
    """The printed two-object observation as a symbolic scene."""
    from oracles import WORKED_PAIR_ELEMENTS, WORKED_PAIR_FACTS

    elements = tuple(
        Element(eid, degrees) for eid, degrees in WORKED_PAIR_ELEMENTS.items()
    )
    facts = tuple(Fact(s, r, o, d) for s, r, o, d in WORKED_PAIR_FACTS)
    return SceneObservation("e2", elements, facts), spatial_interface()


@pytest.fixture
def worked_pair():
    return worked_pair_scene()

import pytest

from fsit.errors import (
    DanglingFactEndpoint,
    DegreeOutOfRange,
    DuplicateFact,
    InvalidScene,
    UnknownSymbol,
)
from fsit.model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    RoleKey,
    SceneObservation,
    enumerate_keys,
    validate_scene,
)


class TestValidateScene:
    def test_known_good_scene_round_trips(self, glassware_interface, single_fact_scene):
        assert validate_scene(single_fact_scene, glassware_interface) is single_fact_scene

    def test_empty_scene_is_valid(self, glassware_interface):
        scene = SceneObservation("empty", (), ())
        assert validate_scene(scene, glassware_interface) is scene

    def test_undeclared_relation_rejected(self, glassware_interface):
        scene = SceneObservation(
            "bad",
            elements=(Element("g1", {"GLASS": 1.0}), Element("g2", {"CUP": 1.0})),
            facts=(Fact("g1", "above", "g2", 0.5),),
        )
        with pytest.raises(UnknownSymbol):
            validate_scene(scene, glassware_interface)

    def test_undeclared_type_rejected(self, glassware_interface):
        scene = SceneObservation("bad", (Element("g1", {"BOWL": 1.0}),), ())
        with pytest.raises(UnknownSymbol):
            validate_scene(scene, glassware_interface)

    def test_dangling_endpoint_rejected(self, glassware_interface):
        scene = SceneObservation(
            "bad",
            elements=(Element("g1", {"GLASS": 1.0}),),
            facts=(Fact("g1", "front", "ghost", 0.5),),
        )
        with pytest.raises(DanglingFactEndpoint):
            validate_scene(scene, glassware_interface)

    def test_degree_out_of_range_rejected(self, glassware_interface):
        scene = SceneObservation(
            "bad",
            elements=(Element("g1", {"GLASS": 1.0}), Element("g2", {"CUP": 1.2})),
            facts=(),
        )
        with pytest.raises(DegreeOutOfRange):
            validate_scene(scene, glassware_interface)

    def test_all_zero_element_rejected(self, glassware_interface):
        scene = SceneObservation("bad", (Element("g1", {"GLASS": 0.0}),), ())
        with pytest.raises(DegreeOutOfRange):
            validate_scene(scene, glassware_interface)

    def test_duplicate_fact_rejected(self, glassware_interface):
        scene = SceneObservation(
            "bad",
            elements=(Element("g1", {"GLASS": 1.0}), Element("g2", {"CUP": 1.0})),
            facts=(Fact("g1", "front", "g2", 0.5), Fact("g1", "front", "g2", 0.7)),
        )
        with pytest.raises(DuplicateFact):
            validate_scene(scene, glassware_interface)

    def test_self_relation_rejected(self, glassware_interface):
        scene = SceneObservation(
            "bad",
            elements=(Element("g1", {"GLASS": 1.0}),),
            facts=(Fact("g1", "front", "g1", 0.5),),
        )
        with pytest.raises(InvalidScene):
            validate_scene(scene, glassware_interface)


class TestInterface:
    def test_requires_nonempty_vocabulary(self):
        with pytest.raises(InvalidScene):
            InputInterface((), (RelationSymbol("front"),))
        with pytest.raises(InvalidScene):
            InputInterface(("GLASS",), ())

    def test_inverse_must_be_mutual(self):
        with pytest.raises(InvalidScene):
            InputInterface(
                ("GLASS",),
                (
                    RelationSymbol("front", inverse="behind"),
                    RelationSymbol("behind", inverse=None),
                ),
            )

    def test_inverse_must_exist(self):
        with pytest.raises(UnknownSymbol):
            InputInterface(("GLASS",), (RelationSymbol("front", inverse="behind"),))

    def test_declaration_order_is_canonicalized(self):
        a = InputInterface(("CUP", "GLASS"), (RelationSymbol("front"),))
        b = InputInterface(("GLASS", "CUP"), (RelationSymbol("front"),))
        assert a == b


class TestEnumerateKeys:
    def test_full_key_count_is_w_v_squared(self, glassware_interface):
        assert len(enumerate_keys(glassware_interface)) == 4
        assert glassware_interface.key_space_size() == 4

    def test_simplified_key_count_is_w_v(self, tabletop_interface):
        keys = enumerate_keys(tabletop_interface)
        assert len(keys) == 16
        assert all(key.object_type is None for key in keys)

    def test_full_mode_lexicographic_order(self, glassware_interface):
        keys = enumerate_keys(glassware_interface)
        assert [k.to_string() for k in keys] == [
            "front|CUP|CUP",
            "front|CUP|GLASS",
            "front|GLASS|CUP",
            "front|GLASS|GLASS",
        ]

    def test_enumeration_is_stable(self, tabletop_interface):
        assert enumerate_keys(tabletop_interface) == enumerate_keys(tabletop_interface)


class TestRoleKey:
    def test_string_round_trip(self):
        for key in (RoleKey("front", "GLASS", "CUP"), RoleKey("front", "GLASS")):
            assert RoleKey.from_string(key.to_string()) == key

    def test_ordering_matches_sort_key(self):
        keys = [
            RoleKey("front", "GLASS", "CUP"),
            RoleKey("behind", "GLASS", "CUP"),
            RoleKey("front", "CUP", "GLASS"),
        ]
        ordered = sorted(keys)
        assert [k.to_string() for k in ordered] == [
            "behind|GLASS|CUP",
            "front|CUP|GLASS",
            "front|GLASS|CUP",
        ]

    def test_malformed_text_rejected(self):
        with pytest.raises(InvalidScene):
            RoleKey.from_string("front")


def test_reification_mode_values():
    assert ReificationMode("full") is ReificationMode.FULL
    assert ReificationMode("simplified") is ReificationMode.SIMPLIFIED

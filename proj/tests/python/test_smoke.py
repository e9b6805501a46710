import pytest

import canyonlab


F = "1/3*x^3 - t^2*x*y^10 + y^12"
G = "x^3 + y^12 + x*y^9 + t*y^13"


def test_card_values():
    d = canyonlab.card(F, bindings={"t": 1})
    card = d["card"]
    assert len(card["canyons"]) == 2
    for c in card["canyons"]:
        assert c["d"] == "6"
        assert c["h"] == "12"
    (second,) = card["second_level"]
    assert second["H"] == "15"
    assert second["diff"]["re"] in ("4/3", "-4/3")


def test_card_half_integer_degree():
    d = canyonlab.card(G, bindings={"t": 1})
    assert all(c["d"] == "13/2" for c in d["card"]["canyons"])


def test_compare_family_members():
    v = canyonlab.compare(
        "1/3*x^3 - x*y^10 + y^12",
        "1/3*x^3 - 4*x*y^10 + y^12",
        certificate=True,
    )
    assert v["verdict"] == "not_equivalent"
    assert v["route"] == "scale_constraints"
    assert len(v["matchings"]) == 2


def test_compare_self_is_inconclusive():
    v = canyonlab.compare("x^2 - y^3", "x^2 - y^3")
    assert v["verdict"] == "inconclusive"


def test_sweep_partition():
    r = canyonlab.sweep("x^2 - t*y^3", "t", [1])
    assert r["not_refuted_classes"] == [["1"]]


def test_parse_error():
    with pytest.raises(canyonlab.GermParseError):
        canyonlab.card("x + + y")
    with pytest.raises(canyonlab.GermParseError):
        canyonlab.card("t*x + y")  # unbound parameter


def test_render_round_trip():
    s = canyonlab.render(F, bindings={"t": 1})
    assert canyonlab.render(s) == s

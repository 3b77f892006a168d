import json
import os
import pathlib

import pytest

import morphshop

FIXTURES = pathlib.Path(
    os.environ.get("MORPHSHOP_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[2] / "fixtures")
)


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_load_and_compose():
    model = morphshop.load_model(load("motor-vehicle.json"))
    assert model.root_id == "S"
    sols = morphshop.compose(model)
    vectors = {(s["w"], tuple(s["n"])) for s in sols}
    assert vectors == {(3, (2, 1, 0)), (2, (3, 0, 0))}
    assert sols[0]["selection"] == {"A": "A1", "B": "B1", "C": "C2"}


def test_model_round_trip():
    model = morphshop.load_model((FIXTURES / "repair-plan.json").read_text())
    again = morphshop.Model.from_json(model.to_json())
    assert again.to_json() == model.to_json()


def test_level_mode_parts():
    model = morphshop.load_model(load("repair-plan.json"))
    sols = morphshop.compose(model, node="B", mode="level")
    assert len(sols) == 4
    assert {s["parts"]["M"] for s in sols} == {"M1", "U2*V1"}


def test_evaluate():
    model = morphshop.load_model(load("motor-vehicle.json"))
    result = morphshop.evaluate(model, {"A": "A1", "B": "B1", "C": "C2"})
    assert result["w"] == 3
    assert result["violations"] == []


def test_rank():
    result = morphshop.rank(load("criteria-layers.json"))
    assert result["priorityOf"] == {"A1": 1, "A2": 3, "A3": 2, "A4": 1, "A5": 2}


def test_solvers():
    assert morphshop.solve_knapsack(load("knapsack-small.json"), budget=5)["chosen"] == ["2", "3", "4"]
    assert morphshop.solve_knapsack(load("knapsack-small.json"), solver="exact", budget=6)["totalProfit"] == 9
    assert morphshop.solve_mckp(load("car-mckp.json"), solver="exact", budget=17)["totalProfit"] == 23


def test_aggregate_and_trajectory():
    result = morphshop.aggregate(load("car-extend.json"))
    assert result["selection"]["E"] == "E5"
    model = morphshop.load_model(load("car-model.json"))
    assert "excellence" in morphshop.aggregate(load("car-extend.json"), model)
    best = morphshop.trajectory(load("pc-trajectory.json"))[0]
    assert best["picks"] == ["S2", "S2_2", "S3_1"]


def test_errors():
    doc = load("motor-vehicle.json")
    doc["bogus"] = 1
    with pytest.raises(morphshop.MorphshopError, match="ParseError"):
        morphshop.load_model(doc)
    with pytest.raises(ValueError):
        morphshop.load_model("{")
    model = morphshop.load_model(load("motor-vehicle.json"))
    with pytest.raises(morphshop.ExplosionError):
        morphshop.compose(model, max_solutions=2)

"""Python bindings for the morphshop configuration engine.

Functions take and return plain Python data; documents may be given as
dicts or JSON text.
"""

import json as _json

from . import _morphshop
from ._morphshop import ExplosionError, Model, MorphshopError

__all__ = [
    "ExplosionError",
    "Model",
    "MorphshopError",
    "aggregate",
    "compose",
    "evaluate",
    "load_model",
    "rank",
    "solve_knapsack",
    "solve_mckp",
    "trajectory",
]


def _text(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def load_model(doc):
    return Model.from_json(_text(doc))


def compose(model, node="", pareto_only=True, max_solutions=1_000_000, mode="leaf"):
    return _json.loads(_morphshop.compose(model, node, pareto_only, max_solutions, mode))


def evaluate(model, selection):
    return _json.loads(_morphshop.evaluate(model, dict(selection)))


def rank(table, method="layers", threshold=0.7):
    return _json.loads(_morphshop.rank(_text(table), method, threshold))


def solve_knapsack(instance, solver="greedy", budget=None):
    return _json.loads(_morphshop.solve_knapsack(_text(instance), solver, budget))


def solve_mckp(instance, solver="greedy", budget=None):
    return _json.loads(_morphshop.solve_mckp(_text(instance), solver, budget))


def aggregate(request, model=None):
    return _json.loads(_morphshop.aggregate(_text(request), model))


def trajectory(request):
    return _json.loads(_morphshop.trajectory(_text(request)))

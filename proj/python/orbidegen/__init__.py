"""Orbifold degeneration bookkeeping: sectors, relative dual graphs,
virtual dimensions, degeneration-formula terms and the gluing sandbox."""

import json
import os
from fractions import Fraction

from . import _core
from ._core import (
    DomainError,
    NonConvergence,
    NumericError,
    ResourceError,
    ValidationError,
    conjugacy_classes as _conjugacy_classes,
    degree_shift,
    enumerate_partitions,
    gluing_degrees,
)

__all__ = [
    "DomainError",
    "NonConvergence",
    "NumericError",
    "ResourceError",
    "ValidationError",
    "conjugacy_classes",
    "degree_shift",
    "enumerate_partitions",
    "expand",
    "genus_and_class",
    "glue_demo",
    "gluing_degrees",
    "ledger",
    "sectors",
    "stratification_poset",
    "validate_graph",
    "virdim",
]


def _text(document):
    """A document as JSON text: dicts are serialized, anything else is a path."""
    if isinstance(document, dict):
        return json.dumps(document)
    with open(os.fspath(document), encoding="utf-8") as f:
        return f.read()


def conjugacy_classes(group):
    """Classes of a group shorthand ("cyclic:6") or {"table": [[...]]}."""
    return _conjugacy_classes(json.dumps(group))


def sectors(document):
    return _core.sectors(_text(document))


def validate_graph(document, name):
    return _core.validate_graph(_text(document), name)


def genus_and_class(document, name):
    return _core.genus_and_class(_text(document), name)


def stratification_poset(document, name, max_vertices=3, max_levels=2, max_nodes=20000):
    return json.loads(_core.stratification_poset(_text(document), name, max_vertices, max_levels, max_nodes))


def virdim(spec):
    return _core.virdim(json.dumps(spec))


def ledger(document, name):
    return json.loads(_core.ledger(_text(document), name))


def expand(document, scenario, swap=False, degree=None):
    if degree is not None:
        degree = Fraction(degree)
    return json.loads(_core.expand(_text(document), scenario, swap, degree))


def glue_demo(model, tau=0.25, scale=1.0, samples=200, seed=1):
    return json.loads(_core.glue_demo(model, tau, scale, samples, seed))

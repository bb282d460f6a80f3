# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Named lattices, frames, models, measures and derivations.

A fixture is a JSON/YAML document with a ``kind`` key, or a Python module
whose ``fixture()`` function returns such a document or an already built
object. Bundled fixtures are named after their path below this package,
e.g. ``lattices-o6`` or ``derivations-persistence``.
"""

import logging
import os
from importlib import import_module

from orthokit.logic.core import ValidationError
from orthokit.logic.core.plugins import find_plugin, list_plugins
from orthokit.logic.core.plugins import register as register_plugin
from orthokit.logic.core.settings import SETTINGS
from orthokit.logic.utils import load_json_or_yaml
from orthokit.logic.utils.humanize import list_to_human

LOG = logging.getLogger(__name__)


def _builders():
    from orthokit.logic.frame import CompatibilityFrame
    from orthokit.logic.lattice import FiniteOrtholattice
    from orthokit.logic.probability import OrthoMeasure, ProbabilityAssignment
    from orthokit.logic.proof import Derivation
    from orthokit.logic.semantics import PossibilityModel

    return {
        "lattice": FiniteOrtholattice.from_document,
        "frame": CompatibilityFrame.from_document,
        "model": PossibilityModel.from_document,
        "measure": OrthoMeasure.from_document,
        "probabilistic-frame": ProbabilityAssignment.from_document,
        "derivation": Derivation.from_document,
    }


KINDS = ("lattice", "frame", "model", "measure", "probabilistic-frame", "derivation")


def build(document, name=None):
    """Turn a fixture document into the object its ``kind`` names."""
    if not isinstance(document, dict):
        return document
    kind = document.get("kind")
    builders = _builders()
    if kind not in builders:
        raise ValidationError(f"Unknown document kind {kind!r} (expected {list_to_human(KINDS)})")
    if name is not None and "name" not in document:
        document = dict(document, name=name)
    return builders[kind](document)


class FixtureLoader:
    kind = "fixture"

    def load_registered(self, proc):
        return proc() if callable(proc) else proc

    def load_document(self, path):
        LOG.debug("Loading fixture document %s", path)
        return load_json_or_yaml(path)

    def load_module(self, module):
        return import_module(module).fixture()

    def load_entry(self, entry):
        entry = entry.load()
        if callable(entry):
            return entry()
        return entry.fixture()


def _directories():
    return [(os.path.dirname(__file__), __name__)] + list(SETTINGS.get("fixtures-directories"))


def fixture_document(name):
    """The raw document (or object) a fixture name resolves to."""
    return find_plugin(_directories(), name, FixtureLoader())


def from_fixture(name):
    """Build the named fixture.

    Raises
    ------
    NameError
        When no fixture has that name.
    """
    return build(fixture_document(name), name=name)


def list_fixtures():
    return list_plugins(_directories(), "fixture")


def register_fixture(name, proc):
    """Make ``proc()`` (a document or an object) available as fixture ``name``."""
    register_plugin("fixture", name, proc)

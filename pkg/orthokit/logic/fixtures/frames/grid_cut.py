# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""The grid with ``(x3,y3)`` no longer accessible from ``(x4,y4)``.

At the centre ``(x3,y3)`` both ``<>p`` and ``<>q`` still hold but ``<>(p & q)`` no longer does.
"""

from orthokit.logic.semantics import PossibilityModel

from .grid import fixture as grid


def fixture():
    doc = grid().to_document()
    doc["name"] = "grid-cut"
    doc["R"]["(x4,y4)"].remove("(x3,y3)")
    return PossibilityModel.from_document(doc)

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Product of two relational scales, one for p and one for q.

At ``(xi, yj)`` the atom p holds when ``i <= 2`` and q when ``j <= 2``;
``<>(p & q)`` holds exactly at the nine pairs with ``i, j <= 3``.
"""

from orthokit.logic.frame import CompatibilityFrame
from orthokit.logic.semantics import PossibilityModel

# Possibilities that cannot rule out their neighbours
UNDECIDED = {2: (1, 3), 4: (3, 5)}


def scale(prefix, atom):
    names = [f"{prefix}{k}" for k in range(1, 6)]
    R = {}
    for k, x in enumerate(names, start=1):
        R[x] = [f"{prefix}{j}" for j in sorted((k,) + UNDECIDED.get(k, ()))]
    F = CompatibilityFrame(names, zip(names, names[1:]), R=R, name=f"scale-{atom}")
    return PossibilityModel(F, {atom: names[:2]})


def fixture():
    return PossibilityModel.product(scale("x", "p"), scale("y", "q"), name="grid")

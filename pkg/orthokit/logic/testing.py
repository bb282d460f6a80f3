# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import logging

from orthokit.logic.frame import CompatibilityFrame

LOG = logging.getLogger(__name__)


def path_frame(n, prefix="x", cycle=False, **kwargs):
    """Possibilities ``x1 .. xn`` compatible with their neighbours along a path (or a cycle)."""
    names = [f"{prefix}{k}" for k in range(1, n + 1)]
    compat = list(zip(names, names[1:]))
    if cycle and n > 2:
        compat.append((names[-1], names[0]))
    return CompatibilityFrame(names, compat, **kwargs)


def main(path):
    """Run one test module; ``--search`` also runs the exhaustive enumerations."""
    import sys

    import pytest

    flags = sys.argv[1:]
    args = ["-p", "no:parallel", "-E", "search" if "--search" in flags else "release"]

    if "--no-debug" in flags:
        args += ["-o", "log_cli=False"]
    else:
        logging.basicConfig(level=logging.DEBUG)
        args += ["-o", "log_cli=True"]

    sys.exit(pytest.main(args + [path]))

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

try:
    # NOTE: the `version.py` file must not be present in the git repository
    #   as it is generated by setuptools at install time
    from .version import __version__
except ImportError:  # pragma: no cover
    # Local copy or not installed with setuptools
    __version__ = "999"

from .core.settings import SETTINGS as settings
from .fixtures import from_fixture, list_fixtures, register_fixture
from .formula import parse, parse_consecution

__all__ = [
    "from_fixture",
    "list_fixtures",
    "parse",
    "parse_consecution",
    "register_fixture",
    "settings",
    "__version__",
]

#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import settings
from orthokit.logic.core.settings import SETTINGS_AND_HELP


@pytest.mark.parametrize(
    "name,default,changed",
    [
        ("rk-arity-cap", 4, 2),
        ("epistemic-size-cap", 6, 4),
        ("number-of-search-threads", 1, 3),
        ("soundness-samples", 200, 50),
        ("progress-bar", False, True),
    ],
)
def test_settings_reset_restores_default(name, default, changed):
    before = settings.get(name)
    with settings.temporary():
        settings.reset()
        assert settings.get(name) == default
        settings.set(name, changed)
        assert settings.get(name) == changed
        settings.reset(name)
        assert settings.get(name) == default
    assert settings.get(name) == before


def test_settings_unknown_name():
    with pytest.raises(KeyError, match="_nope_"):
        settings.get("_nope_")
    with pytest.raises(KeyError):
        settings.set("_nope_", 1)


@pytest.mark.parametrize(
    "name,value,expected,error",
    [
        ("instantiation-cap", "500k", 500_000, None),
        ("instantiation-cap", "2M", 2_000_000, None),
        ("instantiation-cap", 1000, 1000, None),
        ("instantiation-cap", "1x", None, ValueError),
        ("search-budget", "10K", 10_000, None),
        ("rk-arity-cap", 0, None, ValueError),
        ("rk-arity-cap", 17, None, ValueError),
        ("epistemic-size-cap", 9, None, ValueError),
        ("compatibility-size-cap", 9, 9, None),
        ("number-of-search-threads", "A", None, ValueError),
    ],
)
def test_settings_set_checked(name, value, expected, error):
    with settings.temporary():
        if error is None:
            settings.set(name, value)
            assert settings.get(name) == expected
        else:
            with pytest.raises(error):
                settings.set(name, value)


def test_settings_temporary_layer_is_dropped():
    before = settings.get("search-budget")
    with settings.temporary("search-budget", "1k"):
        assert settings.get("search-budget") == 1000
        with settings.temporary("search-budget", 7):
            assert settings.get("search-budget") == 7
        assert settings.get("search-budget") == 1000
    assert settings.get("search-budget") == before


def test_settings_fixture_directories(tmp_path):
    with settings.temporary():
        settings.set("fixtures-directories", str(tmp_path))
        assert settings.get("fixtures-directories") == [str(tmp_path)]
        settings.set("fixtures-directories", [str(tmp_path), "/tmp"])
        assert settings.get("fixtures-directories") == [str(tmp_path), "/tmp"]
        with pytest.raises(ValueError, match="str"):
            settings.set("fixtures-directories", [str(tmp_path), 3])
        with pytest.raises(TypeError):
            settings.set("fixtures-directories")


def test_settings_dump_and_help():
    with settings.temporary():
        names = [name for name, _, _ in settings.dump()]
    assert names == sorted(SETTINGS_AND_HELP)
    assert "Valid when 1 <= x <= 16." in SETTINGS_AND_HELP["rk-arity-cap"].help


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)

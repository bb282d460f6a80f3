# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Limits and switches for searches, sampling and fixture lookup.

Values persist in ``~/.orthokit_logic/settings.yaml``. Inside
``SETTINGS.temporary()`` changes apply to a private layer that is dropped
on exit::

    with SETTINGS.temporary("search-budget", "20M"):
        find_countermodel(spec)
"""

import functools
import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import yaml

from orthokit.logic import __version__ as VERSION
from orthokit.logic.utils.humanize import as_count, interval_to_human
from orthokit.logic.utils.interval import Interval

LOG = logging.getLogger(__name__)

DOT_ORTHOKIT_LOGIC = os.path.expanduser("~/.orthokit_logic")


class Validator:
    def check(self, value) -> bool:
        raise NotImplementedError()

    def explain(self) -> str:
        return ""


class IntervalValidator(Validator):
    def __init__(self, interval):
        self.interval = interval

    def check(self, value):
        return value in self.interval

    def explain(self):
        return f"Valid when {interval_to_human(self.interval)}."


class CountValidator(IntervalValidator):
    """Counts may be written ``500k`` or ``2M``."""

    def check(self, value):
        try:
            return as_count(value) in self.interval
        except ValueError:
            return False


class ListValidator(Validator):
    def __init__(self, item_type=str):
        self.item_type = item_type

    def check(self, value):
        return all(isinstance(x, self.item_type) for x in value)

    def explain(self):
        return f"Every entry must be a {self.item_type.__name__}."


@dataclass
class Setting:
    default: Any
    description: str
    getter: Optional[str] = None
    none_ok: bool = False
    kind: Optional[type] = None
    validator: Optional[Validator] = field(default=None, repr=False)

    def __post_init__(self):
        self.description = " ".join(self.description.split())
        if self.kind is None:
            self.kind = type(self.default)

    @property
    def help(self):
        extra = self.validator.explain() if self.validator else ""
        return f"{self.description} {extra}".strip()

    def write(self, name, value, f):
        print(f"# {self.help}", file=f)
        print(f"# default: {yaml.safe_dump({name: self.default}, default_flow_style=True).strip()}", file=f)
        if value != self.default:
            yaml.safe_dump({name: value}, f, default_flow_style=False)


SETTINGS_AND_HELP = {
    "fixtures-directories": Setting(
        [os.path.join(DOT_ORTHOKIT_LOGIC, "fixtures")],
        """Extra directories searched for lattice, frame, measure and derivation
        documents, after the bundled ones.""",
        validator=ListValidator(str),
    ),
    "instantiation-cap": Setting(
        "1M",
        """Most valuations or schema instances a single entailment or principle
        check may examine (ex: 500k or 2M).""",
        getter="_as_count",
        validator=CountValidator(Interval(1, None)),
    ),
    "search-budget": Setting(
        "5M",
        """Instances a countermodel search may examine before it stops with a
        budget-exhausted result.""",
        getter="_as_count",
        validator=CountValidator(Interval(1, None)),
    ),
    "rk-arity-cap": Setting(
        4,
        "Largest number of conjuncts accepted by the RK rule for conditionals.",
        validator=IntervalValidator(Interval(1, 16)),
    ),
    "epistemic-size-cap": Setting(
        6,
        "Largest frame size enumerated for the epistemic, grounded and conditional classes.",
        validator=IntervalValidator(Interval(1, 8)),
    ),
    "compatibility-size-cap": Setting(
        7,
        "Largest frame size enumerated for plain compatibility frames.",
        validator=IntervalValidator(Interval(1, 9)),
    ),
    "soundness-samples": Setting(
        200,
        "Substitutions drawn per rule by the soundness sweep when exhaustive checking is too large.",
        validator=IntervalValidator(Interval(1, None)),
    ),
    "sampling-seed": Setting(1, "Seed of the soundness sweep sampler."),
    "number-of-search-threads": Setting(
        1,
        "Threads sharing the candidate frames of one search size.",
        validator=IntervalValidator(Interval(1, 64)),
    ),
    "progress-bar": Setting(False, "Show tqdm progress bars during enumerations and sweeps."),
}

DEFAULTS = {name: s.default for name, s in SETTINGS_AND_HELP.items()}

NONE = object()


def _lookup(name) -> Setting:
    try:
        return SETTINGS_AND_HELP[name]
    except KeyError:
        raise KeyError(f"No setting name '{name}'") from None


def forward(func):
    """Run the method on the innermost temporary layer, if any."""

    @functools.wraps(func)
    def wrapped(self, *args, **kwargs):
        target = self._stack[-1] if self._stack else self
        return func(target, *args, **kwargs)

    return wrapped


def write_settings_file(path, values):
    LOG.debug("Writing %s", path)
    with open(path, "w") as f:
        print("# Written by orthokit-logic; edit values, comments are regenerated.", file=f)
        for name in sorted(values):
            s = SETTINGS_AND_HELP.get(name)
            if s is not None:
                print(file=f)
                s.write(name, values[name], f)
        print(file=f)
        yaml.safe_dump({"version": VERSION}, f, default_flow_style=False)


def read_settings_file(path):
    """Known settings stored in ``path`` and whether the file should be rewritten."""
    with open(path) as f:
        stored = yaml.safe_load(f)
    if not isinstance(stored, dict):
        return {}, True
    values = {k: v for k, v in stored.items() if k in DEFAULTS}
    return values, stored.get("version") != VERSION


class Settings:
    def __init__(self, path: Optional[str], values: dict, callbacks=()):
        self._path = path
        self._values = dict(values)
        self._callbacks = list(callbacks)
        self._stack = []

    def _as_count(self, name, value, none_ok):
        return as_count(value, name=name, none_ok=none_ok)

    def _read(self, name, value):
        s = _lookup(name)
        if s.getter is None:
            return value
        return getattr(self, s.getter)(name, value, s.none_ok)

    def _coerce(self, name, args):
        s = _lookup(name)
        if s.kind is list:
            if not args:
                raise TypeError(f"Setting '{name}' needs at least one value")
            value = list(args[0]) if len(args) == 1 and isinstance(args[0], (list, tuple)) else list(args)
        elif len(args) != 1:
            raise TypeError(f"Setting '{name}' takes exactly one value")
        elif s.getter is not None:
            value = args[0]
            self._read(name, value)
        else:
            value = args[0]
            if not isinstance(value, s.kind):
                value = s.kind(value)
        if s.validator is not None and not s.validator.check(value):
            raise ValueError(f"Setting '{name}' cannot be set to {value!r}. {s.validator.explain()}")
        return value

    @forward
    def get(self, name: str, default=NONE):
        """Value of setting ``name``, after its getter (``"1M"`` reads as 1000000).

        Raises
        ------
        KeyError
            If ``name`` is not a known setting.
        """
        _lookup(name)
        value = self._values[name] if default is NONE else self._values.get(name, default)
        return self._read(name, value)

    @forward
    def set(self, name: str, *args):
        """Change a setting. List settings take one or more values.

        Raises
        ------
        KeyError
            If ``name`` is not a known setting.
        TypeError, ValueError
            If the value has the wrong type or is out of range.
        """
        self._values[name] = self._coerce(name, args)
        self._changed()

    @forward
    def reset(self, name: Optional[str] = None):
        if name is None:
            self._values = dict(DEFAULTS)
        else:
            self._values[name] = _lookup(name).default
        self._changed()

    @forward
    def dump(self):
        for name, value in sorted(self._values.items()):
            yield name, value, SETTINGS_AND_HELP.get(name)

    def on_change(self, callback: Callable[[], None]):
        self._callbacks.append(callback)

    def _changed(self):
        self._save()
        for callback in self._callbacks:
            callback()

    def _save(self):
        if self._path is None:
            return
        try:
            write_settings_file(self._path, self._values)
        except Exception:
            LOG.error("Cannot save orthokit-logic settings (%s)", self._path, exc_info=True)

    @forward
    def temporary(self, name=None, *args):
        layer = Settings(None, self._values, self._callbacks)
        if name is not None:
            layer.set(name, *args)
        return _pushed(layer)


@contextmanager
def _pushed(layer):
    SETTINGS._stack.append(layer)
    try:
        yield None
    finally:
        SETTINGS._stack.pop()
        for callback in SETTINGS._callbacks:
            callback()


def _initial_settings(path):
    values, rewrite = dict(DEFAULTS), False
    try:
        os.makedirs(os.path.dirname(path), mode=0o700, exist_ok=True)
        if os.path.exists(path):
            stored, rewrite = read_settings_file(path)
            values.update(stored)
        else:
            rewrite = True
    except Exception:
        LOG.error("Cannot load orthokit-logic settings (%s), using defaults", path, exc_info=True)
    return values, rewrite


_path = os.path.join(DOT_ORTHOKIT_LOGIC, "settings.yaml")
_values, _rewrite = _initial_settings(_path)

SETTINGS = Settings(_path, _values)
if _rewrite:
    SETTINGS._save()

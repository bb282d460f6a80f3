# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Fixture documents can be provided by other packages using ``entry_points``.

A package declaring an entry point in the ``orthokit.logic.fixtures`` group
makes its fixture available under the entry point name. The entry point
must resolve to a callable returning a fixture document.

"""

import logging
import os
import sys
from collections import defaultdict
from typing import List, Union

import entrypoints

from orthokit.logic.utils.humanize import did_you_mean

LOG = logging.getLogger(__name__)

PLUGINS = {}

REGISTERED = defaultdict(dict)

AVAILABLE_KINDS = ["fixture"]

EXTENSIONS = (".json", ".yaml", ".yml")


def refresh(kind=None):
    if kind in PLUGINS:
        PLUGINS.pop(kind)
        return
    if kind is None:
        PLUGINS.clear()
        return
    assert kind in AVAILABLE_KINDS, (kind, AVAILABLE_KINDS)


def _load_plugins(kind):
    plugins = {}
    for e in entrypoints.get_group_all(f"orthokit.logic.{kind}s"):
        plugins[e.name.replace("_", "-")] = e
    return plugins


def load_plugins(kind):
    """Loads the plugins for a given kind. The plugin needs to have registered itself with entry_point.

    Parameters
    ----------
    kind : str
        Plugin type, only "fixture" is used.
    """
    if PLUGINS.get(kind) is None:
        PLUGINS[kind] = _load_plugins(kind)
    return PLUGINS[kind]


def plugin_name(relative_path):
    """Name under which a file found in a fixture directory is known."""
    base, _ = os.path.splitext(relative_path)
    if sys.platform == "win32":
        base = base.replace("\\", "/")
    return base.strip("/").replace("/", "-").replace("_", "-")


def walk_directory(directory, module_prefix=None):
    """Yield ``(name, kind, target)`` for every fixture file under ``directory``.

    ``kind`` is ``"document"`` for JSON/YAML files, whose ``target`` is a path,
    and ``"module"`` for Python files when ``module_prefix`` is given, whose
    ``target`` is a dotted module name.
    """
    for path, dirs, files in os.walk(directory):
        dirs.sort()
        relative = os.path.relpath(path, directory)
        if relative == ".":
            relative = ""
        for f in sorted(files):
            base, ext = os.path.splitext(f)
            if base.startswith("_"):
                continue
            if ext in EXTENSIONS:
                yield plugin_name(os.path.join(relative, f)), "document", os.path.join(path, f)
            if ext == ".py" and module_prefix is not None:
                dotted = ".".join(p for p in (module_prefix, relative.replace(os.sep, "."), base) if p)
                yield plugin_name(os.path.join(relative, f)), "module", dotted


def _directories(directories):
    if not isinstance(directories, (tuple, list)):
        directories = [directories]
    for entry in directories:
        directory, prefix = entry if isinstance(entry, tuple) else (entry, None)
        if os.path.isdir(directory):
            yield directory, prefix


def _providers(directories, loader):
    """``(name, load)`` pairs in lookup order: registered, entry points, then files."""
    for name, proc in REGISTERED[loader.kind].items():
        yield name, lambda proc=proc: loader.load_registered(proc)
    for name, entry in load_plugins(loader.kind).items():
        yield name, lambda entry=entry: loader.load_entry(entry)
    for directory, prefix in _directories(directories):
        for name, kind, target in walk_directory(directory, prefix):
            if kind == "document":
                yield name, lambda target=target: loader.load_document(target)
            else:
                yield name, lambda target=target: loader.load_module(target)


def find_plugin(directories: Union[str, List], name: str, loader, refreshed=False):
    """Find a plugin by name.

    Parameters
    ----------
    directories : list or str
        Directories to be searched. An entry may be a ``(directory, module_prefix)``
        pair, in which case Python files found there are imported as modules.
    name : str
        Name of the plugin.
    loader : object
        Implements ``load_registered()``, ``load_entry()``, ``load_document()``
        and ``load_module()``.

    Returns
    -------
    What the loader returns when applied to the plugin named ``name``.

    Raises
    ------
    NameError
        If the plugin is not found.
    """
    seen = set()
    for found, load in _providers(directories, loader):
        if found == name:
            return load()
        seen.add(found)

    if not refreshed:
        LOG.debug("No %s '%s', reloading entry points", loader.kind, name)
        refresh(loader.kind)
        return find_plugin(directories, name, loader, refreshed=True)

    correction = did_you_mean(name, seen)
    if correction is not None:
        LOG.warning("No %s '%s', did you mean '%s'?", loader.kind, name, correction)
        raise NameError(f"Cannot find {loader.kind} '{name}', did you mean '{correction}'?")

    raise NameError(f"Cannot find {loader.kind} '{name}' (values are: {', '.join(sorted(seen))})")


def list_plugins(directories, kind="fixture"):
    names = set(REGISTERED[kind])
    names.update(load_plugins(kind))
    for directory, prefix in _directories(directories):
        names.update(found for found, _, _ in walk_directory(directory, prefix))
    return sorted(names)


def register(kind, name, proc):
    assert name not in REGISTERED[kind], (kind, name, REGISTERED)
    REGISTERED[kind][name] = proc

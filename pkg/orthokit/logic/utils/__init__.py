# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import json
import os

import yaml

try:
    # tqdm.auto needs ipywidgets inside notebooks
    import ipywidgets  # noqa F401
    from tqdm.auto import tqdm
except ImportError:
    from tqdm import tqdm

READERS = {".json": json.load, ".yaml": yaml.safe_load, ".yml": yaml.safe_load}


def load_json_or_yaml(path):
    """The document stored in a ``.json``, ``.yaml`` or ``.yml`` file."""
    _, ext = os.path.splitext(path)
    if ext not in READERS:
        raise ValueError(f"Cannot read {path}: documents must be {', '.join(READERS)} files")
    with open(path) as f:
        return READERS[ext](f)


def dump_json(document, f=None):
    """Sorted, indented JSON; every document the package writes goes through here."""
    text = json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)
    if f is not None:
        print(text, file=f)
    return text


def progress_bar(*, iterable=None, total=None, desc=None, unit="frame"):
    """A tqdm bar, silent unless the ``progress-bar`` setting is on."""
    from orthokit.logic.core.settings import SETTINGS

    disable = not SETTINGS.get("progress-bar")
    return tqdm(iterable=iterable, total=total, desc=desc, unit=unit, leave=False, disable=disable)

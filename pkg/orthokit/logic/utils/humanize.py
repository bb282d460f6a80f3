# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import re
from fractions import Fraction

import numpy as np

COUNT_SUFFIXES = {"k": 10**3, "K": 10**3, "M": 10**6, "G": 10**9}


def plural(value, what):
    return f"{value:,} {what}" + ("" if value == 1 else "s")


def seconds(value):
    """``2 minutes 30 seconds``, or milliseconds under a second."""
    if value < 1:
        ms = round(value * 1000, 1)
        return f"{ms:g} millisecond" + ("" if ms == 1 else "s")
    minutes, rest = divmod(round(value, 1), 60)
    parts = [plural(int(minutes), "minute")] if minutes else []
    parts.append(f"{rest:g} second" + ("" if rest == 1 else "s"))
    return " ".join(parts)


def fraction(value):
    """An exact probability as ``num/den``, or an integer."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def string_distance(s, t):
    """Levenshtein distance, one numpy row at a time."""
    if not t:
        return len(s)
    row = np.arange(len(t) + 1)
    target = np.array(list(t))
    for i, c in enumerate(s, start=1):
        substitute = row[:-1] + (target != c)
        previous, row = row, np.empty_like(row)
        row[0] = i
        row[1:] = np.minimum(previous[1:] + 1, substitute)
        # insertions run left to right
        for j in range(1, len(row)):
            row[j] = min(row[j], row[j - 1] + 1)
    return int(row[-1])


def did_you_mean(word, vocabulary):
    """The closest entry of ``vocabulary``, or ``None`` when nothing is close."""
    vocabulary = sorted(set(vocabulary))
    if not vocabulary:
        return None
    distance, best = min((string_distance(word, w), w) for w in vocabulary)
    if distance > max(len(word), len(best)) // 2 + 1:
        return None
    return best


def list_to_human(items):
    items = [str(x) for x in items]
    if not items:
        return "??"
    if len(items) == 1:
        return items[0]
    return f"{', '.join(items[:-1])} and {items[-1]}"


def set_to_human(names):
    return "{" + ",".join(names) + "}"


def as_count(value, name=None, none_ok=False):
    """``1000``, ``"500k"`` or ``"2M"`` as an int."""
    if value is None and none_ok:
        return None
    m = re.fullmatch(r"\s*(\d+)\s*([A-Za-z]\w*)?\s*", str(value))
    if m is None:
        raise ValueError(f"{name}: invalid count {value!r}")
    count, suffix = int(m.group(1)), m.group(2)
    if suffix is None:
        return count
    if suffix[0] not in COUNT_SUFFIXES:
        raise ValueError(f"{name}: invalid suffix '{suffix}', valid values are {', '.join(COUNT_SUFFIXES)}")
    return count * COUNT_SUFFIXES[suffix[0]]


def interval_to_human(v, value="x"):
    if not v.bounded:
        return ""
    lower = ("<=" if v.closed_left else "<") if v.bounded_left else None
    upper = ("<=" if v.closed_right else "<") if v.bounded_right else None
    if lower and upper:
        return f"{v.left} {lower} {value} {upper} {v.right}"
    if upper:
        return f"{value} {upper} {v.right}"
    return f"{value} {'>=' if v.closed_left else '>'} {v.left}"

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Probability measures on finite ortholattices and probabilistic compatibility frames.

Values are exact :class:`fractions.Fraction` objects. A measure may leave
elements unmeasured, in which case it lives on the remaining elements and
every check skips the pairs it cannot see.
"""

import enum
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from orthokit.logic.core import Base, ConditioningError, StructureError, ValidationError, Witness
from orthokit.logic.frame import CompatibilityFrame, RegularSet, proposition_lattice, worlds
from orthokit.logic.lattice import FiniteOrtholattice
from orthokit.logic.utils import bitset
from orthokit.logic.utils.humanize import did_you_mean, fraction
from orthokit.logic.utils.interval import UNIT

LOG = logging.getLogger(__name__)


def _fraction(value, where):
    if isinstance(value, Fraction):
        result = value
    elif isinstance(value, float):
        # 0.9 is meant as 9/10, not as the nearest binary float
        result = Fraction(repr(value))
    else:
        try:
            result = Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"{where}: {value!r} is not a rational number") from e
    if result not in UNIT:
        raise ValidationError(f"{where}: {result} is outside [0, 1]")
    return result


def _element(L, key):
    """Index of ``key`` in ``L``: an index, an element name, or for lattices of sets a list of possibilities."""
    if isinstance(key, int) and not isinstance(key, bool):
        return L.index(key)
    frame = getattr(L, "frame", None)
    if isinstance(key, str):
        if key in L._index:
            return L._index[key]
        if frame is None:
            return L.index(key)
        key = [x.strip() for x in key.strip().strip("{}").split(",") if x.strip()]
    if frame is None:
        raise ValidationError(f"{L!r} has no element {key!r}")
    return L.position(frame.mask(key))


class OrthoMeasure(Base):
    """A map from lattice elements to rationals in ``[0, 1]``."""

    def __init__(self, lattice: FiniteOrtholattice, values, name=None):
        self.lattice = lattice
        self.name = name
        self.values: Dict[int, Fraction] = {}
        for k, v in dict(values).items():
            a = _element(lattice, k)
            self.values[a] = _fraction(v, f"value of {lattice.label(a)}")

    def __call__(self, a) -> Fraction:
        a = _element(self.lattice, a)
        try:
            return self.values[a]
        except KeyError:
            raise ValidationError(f"{self!r} does not measure {self.lattice.label(a)}") from None

    def measures(self, a) -> bool:
        return _element(self.lattice, a) in self.values

    @property
    def domain(self):
        return bitset.from_indices(self.values)

    @property
    def is_total(self):
        return len(self.values) == self.lattice.n

    def __eq__(self, other):
        return isinstance(other, OrthoMeasure) and self.lattice is other.lattice and self.values == other.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"OrthoMeasure{label}({len(self.values)}/{self.lattice.n} elements)"

    def as_dict(self):
        return {self.lattice.label(a): fraction(v) for a, v in sorted(self.values.items())}

    def to_document(self):
        doc = dict(kind="measure")
        if self.name:
            doc["name"] = self.name
        doc["lattice"] = self.lattice.to_document()
        doc["values"] = self.as_dict()
        return doc

    @classmethod
    def from_document(cls, doc, lattice=None):
        """``lattice`` may be given, embedded in the document, or named as a lattice fixture."""
        if lattice is None:
            ref = doc.get("lattice")
            if ref is None:
                raise ValidationError("Measure document has no lattice")
            if isinstance(ref, str):
                from orthokit.logic.fixtures import from_fixture

                lattice = from_fixture(ref)
            else:
                lattice = FiniteOrtholattice.from_document(ref)
        try:
            values = doc["values"]
        except KeyError:
            raise ValidationError("Measure document has no values") from None
        return cls(lattice, values, name=doc.get("name"))

    def to_dot(self):
        from orthokit.logic.lattice import lattice_to_dot

        return lattice_to_dot(self.lattice, highlight=[a for a, v in self.values.items() if v > 0])


def _same_lattice(L, mu):
    if mu.lattice is not L and list(mu.lattice.names) != list(L.names):
        raise ValidationError(f"{mu!r} is not a measure on {L!r}")


def check_measure(L: FiniteOrtholattice, mu: OrthoMeasure) -> Optional[Witness]:
    """``mu(1) = 1`` and ``mu(a \\/ b) = mu(a) + mu(b)`` for every measured pair with ``a <= ~b``.

    Pairs are visited in index order of ``a`` then ``b``; the first
    failure is returned.
    """
    _same_lattice(L, mu)
    if not mu.measures(L.one) or mu(L.one) != 1:
        got = mu.values.get(L.one)
        return Witness("normalization", (L.label(L.one),), message=f"measure of the top is {got}")

    measured = sorted(mu.values)
    for a in measured:
        for b in measured:
            if not L.leq(a, L.complement(b)):
                continue
            j = L.join(a, b)
            if j is None or j not in mu.values:
                continue
            if mu.values[j] != mu.values[a] + mu.values[b]:
                return Witness(
                    "additivity",
                    (L.label(a), L.label(b)),
                    message=f"{L.label(j)} has {mu.values[j]}, expected {mu.values[a] + mu.values[b]}",
                )
    return None


def is_introspective(L: FiniteOrtholattice, mu: OrthoMeasure) -> bool:
    """Whether ``mu(a) > 0`` implies ``mu(<>a) = 1`` on every measured element."""
    _same_lattice(L, mu)
    if L.box is None:
        raise StructureError(f"{L!r} has no box operation")
    for a, v in mu.values.items():
        if v > 0:
            d = L.possibility(a)
            if d in mu.values and mu.values[d] != 1:
                LOG.debug("%r is not introspective at %s", mu, L.label(a))
                return False
    return True


def check_measure_flatness(L: FiniteOrtholattice, mu: OrthoMeasure) -> Optional[Witness]:
    """The first element with ``mu(<>a) != mu(a)`` or ``mu([]a) != mu(a)``.

    Every additive measure on an epistemic ortholattice is flat in this
    sense, so a witness on such a lattice points to a failure of additivity.
    """
    _same_lattice(L, mu)
    if L.box is None:
        raise StructureError(f"{L!r} has no box operation")
    for a in sorted(mu.values):
        for op, symbol in ((L.possibility, "<>"), (L.necessity, "[]")):
            b = op(a)
            if b in mu.values and mu.values[b] != mu.values[a]:
                return Witness(
                    "flatness",
                    (L.label(a),),
                    message=f"{symbol} moves the measure from {mu.values[a]} to {mu.values[b]}",
                )
    return None


def conditional_probability(mu: OrthoMeasure, a, b) -> Fraction:
    """``mu(a | b) = mu(a /\\ b) / mu(b)``."""
    L = mu.lattice
    mb = mu(b)
    if mb == 0:
        raise ConditioningError(f"Cannot condition on {L.label(_element(L, b))}, its measure is 0")
    return mu(L.meet(_element(L, a), _element(L, b))) / mb


def total_probability_gap(L: FiniteOrtholattice, mu: OrthoMeasure, a, b):
    """``(mu(a), mu(a|b) mu(b) + mu(a|~b) mu(~b))``; the two sides need not agree."""
    _same_lattice(L, mu)
    b = _element(L, b)
    nb = L.complement(b)
    right = conditional_probability(mu, a, b) * mu(b) + conditional_probability(mu, a, nb) * mu(nb)
    return mu(a), right


def measure_from_point(F: CompatibilityFrame, x, L=None) -> OrthoMeasure:
    """The two-valued measure ``mu(A) = 1`` iff the world ``x`` is in ``A``."""
    x = F.index(x)
    if not bitset.contains(worlds(F).mask, x):
        raise ValidationError(f"{F.names[x]} is not a world of {F!r}, its point measure is not additive")
    if L is None:
        L = proposition_lattice(F)
    values = {a: Fraction(int(bitset.contains(A, x))) for a, A in enumerate(L.sets)}
    return OrthoMeasure(L, values, name=f"point:{F.names[x]}")


# Probabilistic frames


class ProbCondition(enum.Enum):
    P_REGULARITY = "PRegularity"
    KNOWABILITY_P = "KnowabilityP"
    SHARP = "Sharp"
    ALL_ONE = "AllOne"
    SOME_NONZERO = "SomeNonzero"

    @classmethod
    def lookup(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "").replace("_", "").lower()
        for c in cls:
            if c.value.lower() == key or c.name.replace("_", "").lower() == key:
                return c
        correction = did_you_mean(str(name), [c.value for c in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown probabilistic condition '{name}'{hint}")


class ProbabilityAssignment(Base):
    """A nonempty set of measures on the proposition lattice for each possibility of a frame."""

    def __init__(self, frame: CompatibilityFrame, measures, lattice=None, name=None, validate=True):
        self.frame = frame
        self.lattice = proposition_lattice(frame) if lattice is None else lattice
        self.name = name
        self.measures: List[tuple] = [()] * frame.n

        for x, ms in dict(measures).items():
            x = frame.index(x)
            self.measures[x] = tuple(self._measure(m, frame.names[x], k) for k, m in enumerate(ms))

        for x, ms in enumerate(self.measures):
            if not ms:
                raise ValidationError(f"No measure is assigned to {frame.names[x]}")

        if validate:
            for x, ms in enumerate(self.measures):
                for k, mu in enumerate(ms):
                    w = check_measure(self.lattice, mu)
                    if w is not None:
                        raise ValidationError(f"Measure {k} at {frame.names[x]} is not a measure: {w}")

    def _measure(self, m, x, k):
        if isinstance(m, OrthoMeasure):
            if m.lattice is not self.lattice:
                m = OrthoMeasure(self.lattice, {m.lattice.label(a): v for a, v in m.values.items()}, m.name)
            return m
        if isinstance(m, dict) and "point" in m:
            return measure_from_point(self.frame, m["point"], self.lattice)
        if isinstance(m, dict):
            return OrthoMeasure(self.lattice, m, name=f"{x}/{k}")
        raise ValidationError(f"Cannot read measure {k} at {x}: {m!r}")

    def at(self, x):
        return self.measures[self.frame.index(x)]

    def value(self, mu, A) -> Fraction:
        return mu(self.lattice.position(self.frame.mask(A)))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        count = sum(len(ms) for ms in self.measures)
        return f"ProbabilityAssignment{label}({self.frame.n} possibilities, {count} measures)"

    def to_document(self):
        doc = self.frame.to_document()
        doc["kind"] = "probabilistic-frame"
        if self.name:
            doc["name"] = self.name
        doc["measures"] = {
            self.frame.names[x]: [mu.as_dict() for mu in ms] for x, ms in enumerate(self.measures)
        }
        return doc

    @classmethod
    def from_document(cls, doc, validate=True):
        """Measures are maps from element names to ``"num/den"`` strings, or ``{"point": world}``."""
        frame = CompatibilityFrame.from_document(doc, validate=validate)
        try:
            measures = doc["measures"]
        except KeyError:
            raise ValidationError("Probabilistic frame document has no measures") from None
        return cls(frame, measures, name=doc.get("name"), validate=validate)

    def to_dot(self):
        return self.frame.to_dot()


def _comparison_set(F, PA, A, B, strict):
    A, B = F.mask(A), F.mask(B)
    result = 0
    for x in range(F.n):
        if strict:
            ok = all(PA.value(mu, A) > PA.value(mu, B) for mu in PA.measures[x])
        else:
            ok = all(PA.value(mu, A) >= PA.value(mu, B) for mu in PA.measures[x])
        if ok:
            result |= 1 << x
    return result


def _comparison(F, PA, A, B, strict):
    mask = _comparison_set(F, PA, A, B, strict)
    if not F._is_regular(mask):
        symbol = ">" if strict else ">="
        raise ValidationError(
            f"{F.set_name(A)} {symbol} {F.set_name(B)} is {F.set_name(mask)}, which is not regular;"
            f" the assignment is not P-regular"
        )
    return RegularSet(F, mask)


def geq_set(F: CompatibilityFrame, PA: ProbabilityAssignment, A, B) -> RegularSet:
    """``{x | every measure at x gives A at least the probability of B}``."""
    return _comparison(F, PA, A, B, strict=False)


def gt_set(F: CompatibilityFrame, PA: ProbabilityAssignment, A, B) -> RegularSet:
    """``{x | every measure at x gives A more probability than B}``."""
    return _comparison(F, PA, A, B, strict=True)


def _irregular_point(F, mask):
    for x in range(F.n):
        if bitset.contains(mask, x):
            continue
        if not any(F.nbr[y] & mask == 0 for y in bitset.indices(F.nbr[x])):
            return x
    return None


def _check_p_regularity(F, PA):
    sets = PA.lattice.sets
    for A in sets:
        for B in sets:
            for strict, symbol in ((False, ">="), (True, ">")):
                mask = _comparison_set(F, PA, A, B, strict)
                x = _irregular_point(F, mask)
                if x is not None:
                    return Witness(
                        ProbCondition.P_REGULARITY.value,
                        (F.set_name(A), F.set_name(B), F.names[x]),
                        message=f"{F.set_name(A)} {symbol} {F.set_name(B)} is {F.set_name(mask)}, not regular",
                    )
    return None


def check_prob_condition(F: CompatibilityFrame, PA: ProbabilityAssignment, cond) -> Optional[Witness]:
    """Check a constraint on the measures of a probabilistic frame; the first witness or ``None``.

    Raises
    ------
    StructureError
        When ``AllOne`` or ``SomeNonzero`` is asked of a frame without a total ``i``.
    """
    cond = ProbCondition.lookup(cond)
    if PA.frame is not F:
        raise ValidationError(f"{PA!r} is not an assignment on {F!r}")

    def mass(mu, x):
        return PA.value(mu, F._down(x))

    if cond is ProbCondition.P_REGULARITY:
        return _check_p_regularity(F, PA)

    if cond is ProbCondition.KNOWABILITY_P:
        for x in range(F.n):
            if not any(mass(mu, x) == 1 for y in bitset.indices(F._down(x)) for mu in PA.measures[y]):
                return Witness(cond.value, (F.names[x],), message="no refinement gives the point full measure")
        return None

    if cond is ProbCondition.SHARP:
        for x in range(F.n):
            for x1 in bitset.indices(F.nbr[x]):
                if not any(len(PA.measures[x2]) == 1 for x2 in bitset.indices(F.nbr[x1])):
                    return Witness(cond.value, (F.names[x], F.names[x1]))
        return None

    if not F.has_total_i:
        raise StructureError(f"{cond.value} needs a total i function on {F!r}")

    if cond is ProbCondition.ALL_ONE:
        for x in range(F.n):
            for mu in PA.measures[x]:
                if mass(mu, F.i[x]) != 1:
                    return Witness(cond.value, (F.names[x],), message=f"{mu!r} gives {mass(mu, F.i[x])}")
        return None

    if cond is ProbCondition.SOME_NONZERO:
        for x in range(F.n):
            for y in bitset.indices(F.nbr[F.i[x]]):
                if not any(mass(mu, y) > 0 for mu in PA.measures[x]):
                    return Witness(cond.value, (F.names[x], F.names[y]))
        return None

    raise NotImplementedError(cond)


def check_prob_conditions(F: CompatibilityFrame, PA: ProbabilityAssignment, conds: Iterable = tuple(ProbCondition)):
    """Witness (or ``None``) per condition, in the given order."""
    result = {}
    for c in conds:
        c = ProbCondition.lookup(c)
        result[c.value] = check_prob_condition(F, PA, c)
    return result

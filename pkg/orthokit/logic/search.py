# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Bounded enumeration of small frames and lattices, and countermodel search over them.

Frames of each size are produced once per isomorphism class. A frame is
relabelled to its canonical form: points are first split by colour
refinement of the compatibility graph (and of ``i``), and the canonical
labelling is the one with the least code among the orderings that respect
the colours. Frames are yielded in increasing code order, which is the
canonical order used by every search.
"""

import enum
import functools
import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from orthokit.logic.core import BudgetExceeded, OrthokitError, StructureError, ValidationError
from orthokit.logic.core.settings import SETTINGS
from orthokit.logic.core.thread import ordered_map
from orthokit.logic.formula import Consecution, atoms, bool_atoms, parse_consecution
from orthokit.logic.frame import (
    CompatibilityFrame,
    FrameCondition,
    _bool_compatible,
    _bool_refines,
    check_condition,
    proposition_lattice,
)
from orthokit.logic.lattice import entails_on_lattice, iso_check
from orthokit.logic.semantics import (
    CONDITIONAL_PRINCIPLES,
    CONSTRAINT_PRINCIPLES,
    PossibilityModel,
    PrincipleSchema,
    entails_on_frame,
    principle,
    verify_principle,
)
from orthokit.logic.utils import bitset, progress_bar
from orthokit.logic.utils.humanize import did_you_mean, seconds

LOG = logging.getLogger(__name__)


class FrameClass(enum.Enum):
    COMPATIBILITY = "compatibility"
    EPISTEMIC = "epistemic"
    GROUNDED = "grounded"
    CONDITIONAL = "conditional"

    @classmethod
    def lookup(cls, name):
        if isinstance(name, cls):
            return name
        for c in cls:
            if c.value == str(name).lower():
                return c
        correction = did_you_mean(str(name), [c.value for c in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown frame class '{name}'{hint}")

    @property
    def size_cap(self):
        if self is FrameClass.COMPATIBILITY:
            return SETTINGS.get("compatibility-size-cap")
        return SETTINGS.get("epistemic-size-cap")


class LatticeClass(enum.Enum):
    ORTHOLATTICE = "ortholattice"
    EPISTEMIC = "epistemic"

    @classmethod
    def lookup(cls, name):
        if isinstance(name, cls):
            return name
        for c in cls:
            if c.value == str(name).lower():
                return c
        correction = did_you_mean(str(name), [c.value for c in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown lattice class '{name}'{hint}")


# Canonical forms


def _pairs(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def _refine(n, nbr, i=None):
    colours = [0] * n
    classes = 1
    while True:
        signatures = []
        for x in range(n):
            s = (colours[x], tuple(sorted(colours[y] for y in bitset.indices(nbr[x]) if y != x)))
            if i is not None:
                s += (colours[i[x]], i[x] == x, tuple(sorted(colours[y] for y in range(n) if i[y] == x)))
            signatures.append(s)
        ranks = {s: k for k, s in enumerate(sorted(set(signatures)))}
        refined = [ranks[s] for s in signatures]
        if len(ranks) == classes:
            return refined
        colours, classes = refined, len(ranks)


def _orderings(colours):
    groups = [[x for x in range(len(colours)) if colours[x] == c] for c in sorted(set(colours))]
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield [x for part in parts for x in part]


def _code(n, nbr, i, order):
    position = {x: k for k, x in enumerate(order)}
    edges = tuple(int(bitset.contains(nbr[order[a]], order[b])) for a, b in _pairs(n))
    if i is None:
        return (edges,)
    return edges, tuple(position[i[x]] for x in order)


def canonical_form(n, nbr, i=None):
    """``(code, nbr, i)`` of the canonical relabelling of a graph with an optional function."""
    best = None
    for order in _orderings(_refine(n, nbr, i)):
        code = _code(n, nbr, i, order)
        if best is None or code < best[0]:
            best = (code, order)
    code, order = best
    position = {x: k for k, x in enumerate(order)}
    canonical_nbr = tuple(bitset.from_indices(position[y] for y in bitset.indices(nbr[x])) for x in order)
    canonical_i = None if i is None else tuple(position[i[x]] for x in order)
    return code, canonical_nbr, canonical_i


@functools.lru_cache(maxsize=None)
def _graphs(n):
    """Canonical reflexive symmetric relations on ``n`` points, as neighbour masks."""
    if n == 1:
        return ((1,),)
    found = {}
    top = 1 << (n - 1)
    for g in _graphs(n - 1):
        for s in range(top):
            nbr = [m | (top if (s >> x) & 1 else 0) for x, m in enumerate(g)] + [s | top]
            code, canonical, _ = canonical_form(n, nbr)
            found.setdefault(code, canonical)
    LOG.debug("%d compatibility frames of size %d", len(found), n)
    return tuple(found[c] for c in sorted(found))


def _up(n, nbr):
    return [bitset.from_indices(y for y in range(n) if bitset.is_subset(nbr[x], nbr[y])) for x in range(n)]


def _knowable(n, nbr, i):
    return all(any(bitset.is_subset(nbr[i[y]], nbr[x]) for y in range(n)) for x in range(n))


def _i_regular(n, nbr, i):
    for x in range(n):
        for y in bitset.indices(nbr[i[x]]):
            if not any(
                all(bitset.contains(nbr[y], i[x2]) for x2 in bitset.indices(nbr[x1])) for x1 in bitset.indices(nbr[x])
            ):
                return False
    return True


@functools.lru_cache(maxsize=None)
def _epistemic(n):
    """Canonical ``(nbr, i)`` pairs satisfying i-regularity, Factivity and Knowability."""
    found = {}
    for g in _graphs(n):
        up = _up(n, g)
        # Factivity: x refines i(x)
        for i in itertools.product(*(bitset.to_list(up[x]) for x in range(n))):
            if _knowable(n, g, i) and _i_regular(n, g, i):
                code, canonical, ci = canonical_form(n, g, i)
                found.setdefault(code, (canonical, ci))
    LOG.debug("%d epistemic frames of size %d", len(found), n)
    return tuple(found[c] for c in sorted(found))


def _names(n):
    return [f"x{k + 1}" for k in range(n)]


def _frame(nbr, i=None, name=None, **kwargs):
    n = len(nbr)
    names = _names(n)
    compat = [(names[a], names[b]) for a, b in _pairs(n) if bitset.contains(nbr[a], b)]
    return CompatibilityFrame(names, compat, i=None if i is None else list(i), name=name, validate=False, **kwargs)


def _close_family(F, generators):
    family = {0, F.full, *generators}
    while True:
        extra = {F._neg(A) for A in family} | {A & B for A in family for B in family}
        if extra <= family:
            return tuple(sorted(family, key=lambda A: (bitset.count(A), bitset.to_list(A))))
        family |= extra


def _grounded(F, family):
    for A in family:
        for B in family:
            if A & B == 0 and any(F.nbr[x] & B for x in bitset.indices(A)):
                return False
    return True


def grounded_families(F: CompatibilityFrame):
    """Grounded Boolean families generated by at most two regular sets, the trivial one first."""
    candidates = [A for A in F.regular_sets() if A not in (0, F.full)]
    result = {}
    for k in (0, 1, 2):
        for generators in itertools.combinations(candidates, k):
            family = _close_family(F, generators)
            if family not in result and _grounded(F, family):
                result[family] = None
    return list(result)


_LOCAL_CONSTRAINTS = (
    FrameCondition.ID,
    FrameCondition.CENTER,
    FrameCondition.COMP,
    FrameCondition.MUST_CENTER,
    FrameCondition.MUST_COMP,
    FrameCondition.UPDATE,
)

_BOOLEAN_CONSTRAINTS = (
    FrameCondition.CENTER,
    FrameCondition.COMP,
    FrameCondition.MUST_IMP,
    FrameCondition.MUST_EXP,
    FrameCondition.SWITCH,
    FrameCondition.SPLIT,
)


def _local_options(F, x, A, constraints):
    """Targets of ``c(x, A)`` (``None`` for undefined) allowed by the constraints on a single entry."""
    i, nbr = F.i, F.nbr
    options = []
    for y in [None] + list(range(F.n)):
        if FrameCondition.ID in constraints and y is not None and not bitset.contains(A, y):
            continue
        if FrameCondition.UPDATE in constraints and y is not None and not bitset.contains(A, i[y]):
            continue
        if FrameCondition.MUST_CENTER in constraints and bitset.contains(A, i[x]) and y != x:
            continue
        if FrameCondition.MUST_COMP in constraints and any(bitset.contains(A, i[x1]) for x1 in bitset.indices(nbr[x])):
            if y is None or not bitset.contains(nbr[x], y):
                continue
        if FrameCondition.CENTER in constraints and bitset.contains(A, x):
            if y is None or not (_bool_refines(F, x, y) and _bool_refines(F, y, x)):
                continue
        if FrameCondition.COMP in constraints and nbr[x] & A:
            if y is None or not _bool_compatible(F, y, x):
                continue
        options.append(y)
    return options


def _selection_functions(F, constraints, budget):
    entries = [(x, A) for A in F.regular_sets() for x in range(F.n)]
    options = [_local_options(F, x, A, constraints) for x, A in entries]
    total = math.prod(len(o) for o in options)
    if total > budget:
        raise BudgetExceeded(f"selection functions on {F!r}", total, budget)
    LOG.debug("%s candidate selection functions on %r", f"{total:,}", F)
    for choice in itertools.product(*options):
        yield {(x, A): y for (x, A), y in zip(entries, choice) if y is not None}


def _lookup_conditions(constraints):
    return tuple(dict.fromkeys(FrameCondition.lookup(c) for c in constraints))


def enumerate_frames(cls, n: int, constraints=(), booleans=False, budget: Optional[int] = None):
    """Frames of size ``n`` of a class, one per isomorphism class of the underlying epistemic frame.

    ``constraints`` are extra frame conditions every yielded frame
    satisfies. Grounded frames carry each grounded Boolean family
    generated by at most two regular sets; conditional frames are built
    on epistemic frames (on grounded ones when ``booleans`` is set, or a
    constraint needs the Boolean family) and range over every selection
    function satisfying c-regularity and the constraints.

    Raises
    ------
    BudgetExceeded
        When ``n`` exceeds the size cap of the class, or the candidate
        selection functions of a frame exceed ``budget``.
    """
    cls = FrameClass.lookup(cls)
    constraints = _lookup_conditions(constraints)
    if n < 1:
        raise ValidationError(f"Frame size must be at least 1, got {n}")
    cap = cls.size_cap
    if n > cap:
        raise BudgetExceeded(f"{cls.value} frames of size {n}", n, cap)

    if cls is FrameClass.COMPATIBILITY:
        bases = [_frame(g, name=f"compatibility-{n}-{k}") for k, g in enumerate(_graphs(n))]
    else:
        bases = [_frame(g, i, name=f"epistemic-{n}-{k}") for k, (g, i) in enumerate(_epistemic(n))]

    if cls is FrameClass.GROUNDED or (
        cls is FrameClass.CONDITIONAL and (booleans or set(constraints) & set(_BOOLEAN_CONSTRAINTS))
    ):
        grounded = []
        for F in bases:
            for k, family in enumerate(grounded_families(F)):
                grounded.append(_frame(F.nbr, F.i, name=f"{F.name}/{k}", bool_family=family))
        bases = grounded

    if cls is not FrameClass.CONDITIONAL:
        for F in bases:
            if all(check_condition(F, c) is None for c in constraints):
                yield F
        return

    budget = SETTINGS.get("search-budget") if budget is None else budget
    remaining = [c for c in constraints if c not in _LOCAL_CONSTRAINTS]
    for F in bases:
        for k, selection in enumerate(_selection_functions(F, constraints, budget)):
            G = _frame(F.nbr, F.i, name=f"{F.name}/c{k}", bool_family=F.bool_family, selection=selection)
            if check_condition(G, FrameCondition.CREGULARITY) is not None:
                continue
            if all(check_condition(G, c) is None for c in remaining):
                yield G


def labelled_count(cls, n: int) -> int:
    """Number of frames of the class on the points ``0..n-1``, without isomorph pruning."""
    cls = FrameClass.lookup(cls)
    if cls not in (FrameClass.COMPATIBILITY, FrameClass.EPISTEMIC):
        raise StructureError("Labelled counts are only available for compatibility and epistemic frames")
    pairs = _pairs(n)
    total = 0
    for bits in range(1 << len(pairs)):
        nbr = [1 << x for x in range(n)]
        for k, (a, b) in enumerate(pairs):
            if (bits >> k) & 1:
                nbr[a] |= 1 << b
                nbr[b] |= 1 << a
        if cls is FrameClass.COMPATIBILITY:
            total += 1
            continue
        up = _up(n, nbr)
        for i in itertools.product(*(bitset.to_list(up[x]) for x in range(n))):
            if _knowable(n, nbr, i) and _i_regular(n, nbr, i):
                total += 1
    return total


def automorphism_count(F: CompatibilityFrame) -> int:
    """Permutations of the points preserving compatibility and ``i``."""
    n = F.n
    count = 0
    for p in itertools.permutations(range(n)):
        if any(bitset.contains(F.nbr[a], b) != bitset.contains(F.nbr[p[a]], p[b]) for a, b in _pairs(n)):
            continue
        if F.i is not None and any(p[F.i[x]] != F.i[p[x]] for x in range(n)):
            continue
        count += 1
    return count


def enumerate_lattices(cls, n: int):
    """Ortholattices with ``n`` elements, up to isomorphism, as proposition lattices of small frames.

    With ``epistemic``, the lattices of epistemic frames, compared with
    their box.
    """
    cls = LatticeClass.lookup(cls)
    frame_class = FrameClass.COMPATIBILITY if cls is LatticeClass.ORTHOLATTICE else FrameClass.EPISTEMIC
    found = []
    for k in range(1, min(n, frame_class.size_cap) + 1):
        for F in enumerate_frames(frame_class, k):
            L = proposition_lattice(F)
            if L.n != n:
                continue
            if any(iso_check(L, M, ortho_only=cls is LatticeClass.ORTHOLATTICE) is not None for M in found):
                continue
            found.append(L)
            yield L
    LOG.debug("%d %s lattices with %d elements", len(found), cls.value, n)


# Search


@dataclass
class SearchSpec:
    """What to refute, over which class, up to which size.

    ``goal`` is a consecution (or its text) or a principle name. Frames
    must satisfy ``constraints`` and validate every principle in
    ``requires``. With ``lattices``, ``frame_class`` is a lattice class
    and sizes count lattice elements.
    """

    goal: Union[Consecution, PrincipleSchema, str]
    frame_class: Union[FrameClass, LatticeClass, str] = FrameClass.EPISTEMIC
    max_size: int = 4
    budget: Optional[int] = None
    constraints: Tuple = ()
    requires: Tuple[str, ...] = ()
    bool_atoms: Tuple[str, ...] = ()
    min_size: int = 1
    lattices: bool = False

    def __post_init__(self):
        self.bool_atoms = tuple(self.bool_atoms)
        if isinstance(self.goal, str):
            if "|-" in self.goal:
                self.goal = parse_consecution(self.goal, self.bool_atoms)
            else:
                self.goal = principle(self.goal)
        if self.lattices:
            self.frame_class = LatticeClass.lookup(self.frame_class)
        else:
            self.frame_class = FrameClass.lookup(self.frame_class)
        self.constraints = _lookup_conditions(self.constraints)
        self.requires = tuple(principle(r).name for r in self.requires)
        if self.max_size < 1 or self.min_size < 1:
            raise ValidationError(f"Search sizes must be at least 1, got {self.min_size}..{self.max_size}")

    @property
    def metavariables(self):
        if isinstance(self.goal, PrincipleSchema):
            return self.goal.metavariables
        return atoms(self.goal.lhs, self.goal.rhs), bool_atoms(self.goal.lhs, self.goal.rhs)

    def __str__(self):
        return f"{self.goal} over {self.frame_class.value} up to {self.max_size}"

    def to_document(self):
        goal = self.goal.name if isinstance(self.goal, PrincipleSchema) else str(self.goal)
        doc = dict(goal=goal, **{"class": self.frame_class.value}, max_size=self.max_size)
        if self.budget is not None:
            doc["budget"] = self.budget
        if self.constraints:
            doc["constraints"] = [c.value for c in self.constraints]
        if self.requires:
            doc["requires"] = list(self.requires)
        if self.bool_atoms:
            doc["bool_atoms"] = list(self.bool_atoms)
        if self.min_size != 1:
            doc["min_size"] = self.min_size
        if self.lattices:
            doc["lattices"] = True
        return doc

    @classmethod
    def from_document(cls, doc):
        try:
            return cls(
                doc["goal"],
                doc.get("class", "epistemic"),
                int(doc.get("max_size", 4)),
                doc.get("budget"),
                tuple(doc.get("constraints", ())),
                tuple(doc.get("requires", ())),
                tuple(doc.get("bool_atoms", ())),
                int(doc.get("min_size", 1)),
                bool(doc.get("lattices", False)),
            )
        except (KeyError, TypeError) as e:
            raise ValidationError(f"Malformed search document: {e!r}") from e


@dataclass
class SearchLog:
    """Per-size counts of a search run."""

    spec: SearchSpec
    sizes: dict = field(default_factory=dict)

    def record(self, n, candidates, instances, elapsed=None):
        self.sizes[n] = dict(candidates=candidates, instances=instances)
        LOG.debug(
            "%s, size %d: %d candidates, %s instances%s",
            self.spec,
            n,
            candidates,
            f"{instances:,}",
            "" if elapsed is None else f" in {seconds(elapsed)}",
        )

    @property
    def instances(self):
        return sum(s["instances"] for s in self.sizes.values())

    def to_document(self):
        return dict(spec=self.spec.to_document(), sizes={str(n): dict(s) for n, s in sorted(self.sizes.items())})


class NoneUpToBound:
    """No countermodel up to the size bound; not a proof of validity."""

    def __init__(self, spec, log):
        self.spec = spec
        self.log = log

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoneUpToBound({self.spec})"

    def to_document(self):
        return dict(result="none-up-to-bound", max_size=self.spec.max_size, log=self.log.to_document())


class BudgetExhausted:
    """The search stopped at ``size`` before examining every candidate."""

    def __init__(self, spec, size, spent, budget, log, reason=None):
        self.spec = spec
        self.size = size
        self.spent = spent
        self.budget = budget
        self.log = log
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"BudgetExhausted({self.spec}, size={self.size}, spent={self.spent:,})"

    def to_document(self):
        doc = dict(
            result="budget-exhausted",
            size=self.size,
            spent=self.spent,
            budget=self.budget,
            log=self.log.to_document(),
        )
        if self.reason:
            doc["reason"] = self.reason
        return doc


class LatticeCountermodel:
    """A valuation on a lattice under which a consecution fails."""

    def __init__(self, lattice, valuation, consecution):
        self.lattice = lattice
        self.valuation = dict(valuation)
        self.consecution = consecution

    def __repr__(self):
        return f"LatticeCountermodel({self.consecution}, {self.valuation})"

    def to_document(self):
        return dict(
            kind="lattice-countermodel",
            consecution=str(self.consecution),
            valuation=dict(self.valuation),
            lattice=self.lattice.to_document(),
        )


def _cost(F, general, boolean):
    family = F.bool_family or ()
    return len(F.prop_family) ** len(general) * len(family) ** len(boolean)


def _refute(F, goal):
    if isinstance(goal, PrincipleSchema):
        return verify_principle(F, goal)
    return entails_on_frame(F, goal)


def _search_range(goal, frames):
    for F in frames:
        cm = _refute(F, goal)
        if cm is not None:
            return cm
    return None


def _reverify(cm):
    """Replay a countermodel through a freshly validated model."""
    M = PossibilityModel(cm.frame, cm.valuation, cm.bool_atoms)
    seq = cm.consecution
    if not M.forces(cm.at, seq.lhs) or M.forces(cm.at, seq.rhs):
        raise OrthokitError(f"Countermodel {cm!r} does not replay")
    return cm


def _chunks(items, k):
    size = max(1, math.ceil(len(items) / max(1, k)))
    return [items[s : s + size] for s in range(0, len(items), size)]


def find_countermodel(spec, threads: Optional[int] = None):
    """Search the class of ``spec`` by increasing size for the canonically first countermodel.

    Returns the :class:`~orthokit.logic.semantics.Countermodel` (with its
    run log attached as ``log``), :class:`NoneUpToBound`, or
    :class:`BudgetExhausted` when the instance budget runs out first.
    The frames of a size are split into contiguous ranges of the canonical
    order, one per thread, and the first range holding a countermodel wins.
    """
    if isinstance(spec, dict):
        spec = SearchSpec.from_document(spec)
    budget = SETTINGS.get("search-budget") if spec.budget is None else spec.budget
    threads = SETTINGS.get("number-of-search-threads") if threads is None else threads
    log = SearchLog(spec)

    if spec.lattices:
        return _find_on_lattices(spec, budget, log)

    general, boolean = spec.metavariables
    booleans = bool(boolean)
    spent = 0
    for n in progress_bar(iterable=range(spec.min_size, spec.max_size + 1), desc="Sizes", unit="size"):
        start = time.time()
        try:
            frames = list(enumerate_frames(spec.frame_class, n, spec.constraints, booleans, budget - spent))
            frames = [F for F in frames if all(verify_principle(F, r) is None for r in spec.requires)]
        except BudgetExceeded as e:
            log.record(n, 0, 0)
            return BudgetExhausted(spec, n, spent, budget, log, reason=str(e))

        affordable, exhausted, cost = [], False, 0
        for F in frames:
            c = _cost(F, general, boolean)
            if spent + cost + c > budget:
                exhausted = True
                break
            affordable.append(F)
            cost += c

        try:
            results = ordered_map(lambda part: _search_range(spec.goal, part), _chunks(affordable, threads), threads)
        except BudgetExceeded as e:
            log.record(n, len(affordable), cost)
            return BudgetExhausted(spec, n, spent + cost, budget, log, reason=str(e))

        spent += cost
        log.record(n, len(affordable), cost, time.time() - start)
        for cm in results:
            if cm is not None:
                cm.log = log
                return _reverify(cm)
        if exhausted:
            return BudgetExhausted(spec, n, spent, budget, log)

    return NoneUpToBound(spec, log)


def _find_on_lattices(spec, budget, log):
    if isinstance(spec.goal, PrincipleSchema):
        seq = spec.goal.conclusion
    else:
        seq = spec.goal
    spent = 0
    for n in range(max(2, spec.min_size), spec.max_size + 1):
        count = 0
        for L in enumerate_lattices(spec.frame_class, n):
            count += 1
            spent += L.n ** len(atoms(seq.lhs, seq.rhs))
            if spent > budget:
                log.record(n, count, spent)
                return BudgetExhausted(spec, n, spent, budget, log)
            found = entails_on_lattice(L, seq.lhs, seq.rhs)
            if found is not None:
                log.record(n, count, spent)
                result = LatticeCountermodel(L, found, seq)
                result.log = log
                return result
        log.record(n, count, spent)
    return NoneUpToBound(spec, log)


def _hunt_requirements(principles):
    constraints, requires = [], []
    for p in principles:
        try:
            s = principle(p)
        except NameError:
            try:
                constraints.append(FrameCondition.lookup(p))
            except NameError:
                choices = [c.value for c in FrameCondition] + list(CONDITIONAL_PRINCIPLES)
                correction = did_you_mean(str(p), choices)
                hint = f", did you mean '{correction}'?" if correction else ""
                raise NameError(f"Unknown principle or constraint '{p}'{hint}") from None
            continue
        paired = [c for c, names in CONSTRAINT_PRINCIPLES.items() if s.name in names]
        if paired:
            constraints.extend(paired)
        else:
            requires.append(s.name)
    return tuple(dict.fromkeys(constraints)), tuple(dict.fromkeys(requires))


def qualified_collapse_hunt(principles=(), max_size: int = 3, budget: Optional[int] = None, threads=None):
    """Look for a conditional epistemic frame refuting ``q & (q -> <>(q & p)) |- p -> q``.

    Each entry of ``principles`` is a principle or a selection constraint.
    Principles paired with a constraint are enforced through it, the others
    by validating them on every candidate frame.
    """
    constraints, requires = _hunt_requirements(principles)
    spec = SearchSpec(
        principle("QualifiedCollapse"),
        FrameClass.CONDITIONAL,
        max_size,
        budget,
        constraints,
        requires,
    )
    LOG.debug("Qualified collapse hunt with constraints %s and principles %s", constraints, requires)
    return find_countermodel(spec, threads)

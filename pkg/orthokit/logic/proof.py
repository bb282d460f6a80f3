# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Derivations for orthologic, its epistemic extensions and conditional orthologics.

Rules are data: a rule is a list of premise patterns and one or more
alternative conclusion patterns, written in the formula syntax with
metavariables. Atoms of a pattern are general metavariables, and the
atoms ``a``, ``b`` and ``c`` are Boolean metavariables, which only match
Boolean formulas. A profile is the union of the rule sets of its base
logic and of its toggles.
"""

import enum
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from orthokit.logic.core import Base, OrthokitError, StructureError, ValidationError
from orthokit.logic.core.settings import SETTINGS
from orthokit.logic.formula import (
    Atom,
    BoolAtom,
    Cond,
    Consecution,
    FragmentTag,
    Neg,
    atoms,
    bool_atoms,
    conjunction,
    is_boolean,
    parse,
    parse_consecution,
    subformula_closure,
    substitute,
)
from orthokit.logic.frame import CompatibilityFrame, check_condition, is_epistemic
from orthokit.logic.semantics import (
    CONSTRAINT_PRINCIPLES,
    Countermodel,
    _evaluate,
    principle,
)
from orthokit.logic.utils import bitset, progress_bar
from orthokit.logic.utils.humanize import did_you_mean

LOG = logging.getLogger(__name__)

BOOL_METAVARIABLES = ("a", "b", "c")


@dataclass(frozen=True)
class Rule:
    id: str
    conclusions: Tuple[Consecution, ...]
    premises: Tuple[Consecution, ...] = ()
    description: str = ""

    @property
    def is_axiom(self):
        return not self.premises

    def formulas(self):
        for seq in self.premises + self.conclusions:
            yield seq.lhs
            yield seq.rhs

    @property
    def metavariables(self):
        fs = list(self.formulas())
        return atoms(*fs), bool_atoms(*fs)

    def __str__(self):
        conclusion = " or ".join(str(c) for c in self.conclusions)
        if self.premises:
            return f"if {'; '.join(str(p) for p in self.premises)} then {conclusion}"
        return conclusion


def _rule(id, text, premises=(), description=""):
    return Rule(
        id,
        (parse_consecution(text, BOOL_METAVARIABLES),),
        tuple(parse_consecution(p, BOOL_METAVARIABLES) for p in premises),
        description,
    )


ORTHO_RULES = [
    _rule("1", "p |- p"),
    _rule("2", "p & q |- p"),
    _rule("3", "p & q |- q"),
    _rule("4", "p |- ~~p"),
    _rule("5", "~~p |- p"),
    _rule("6", "p & ~p |- q"),
    _rule("7", "p |- r", premises=("p |- q", "q |- r"), description="transitivity"),
    _rule("8", "p |- q & r", premises=("p |- q", "p |- r"), description="adjunction"),
    _rule("9", "~q |- ~p", premises=("p |- q",), description="contraposition"),
]

MODAL_RULES = [
    _rule("10", "[]p |- []q", premises=("p |- q",), description="monotonicity of box"),
    _rule("11", "[]p & []q |- [](p & q)"),
    _rule("12", "r |- []top"),
]

EPISTEMIC_RULES = [
    _rule("13", "[]p |- p"),
    _rule("14", "~p & <>p |- bot", description="Wittgenstein's law"),
]

BOOLEAN_RULES = [
    _rule("15", "a & (b \\/ c) |- (a & b) \\/ (a & c)", description="Boolean distributivity"),
]

CONDITIONAL_RULES = [
    _rule("Cong", "p -> r |- q -> r", premises=("p |- q", "q |- p")),
    _rule("Nec", "top |- p -> q", premises=("top |- q",)),
]


def rk_rule(n: int) -> Rule:
    """``if q1 & ... & qn |- r then (p -> q1) & ... & (p -> qn) |- p -> r``."""
    qs = [Atom(f"q{k}") for k in range(1, n + 1)]
    p, r = Atom("p"), Atom("r")
    premise = Consecution(conjunction(qs), r)
    conclusion = Consecution(conjunction([Cond(p, q) for q in qs]), Cond(p, r))
    return Rule("RK", (conclusion,), (premise,), f"RK with {n} conjunct{'s' if n > 1 else ''}")


def principle_rule(name) -> Rule:
    s = principle(name)
    conclusions = tuple(seq for _, seq in s.consecutions())
    return Rule(s.name, conclusions, s.premise_consecutions, s.description or s.name)


class LogicBase(enum.Enum):
    O = "O"
    EO = "EO"
    EOPLUS = "EOplus"
    COND_MODAL = "CondModal"
    COND_EPISTEMIC = "CondEpistemic"

    @classmethod
    def lookup(cls, name):
        if isinstance(name, cls):
            return name
        for b in cls:
            if b.value.lower() == str(name).lower():
                return b
        correction = did_you_mean(str(name), [b.value for b in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown logic '{name}'{hint}")

    @property
    def is_epistemic(self):
        return self in (LogicBase.EO, LogicBase.EOPLUS, LogicBase.COND_EPISTEMIC)

    @property
    def is_conditional(self):
        return self in (LogicBase.COND_MODAL, LogicBase.COND_EPISTEMIC)


class LogicProfile:
    """A base logic together with a set of toggled principles.

    Profiles are written as ``Base+Toggle+Toggle``, e.g.
    ``CondModal+MustIntroduction+ModalizedMP+Flattening``.
    """

    def __init__(self, base, toggles: Sequence[str] = (), rk_arity: Optional[int] = None):
        self.base = LogicBase.lookup(base)
        self.toggles = tuple(sorted({principle(t).name for t in toggles}))
        self.rk_arity = SETTINGS.get("rk-arity-cap") if rk_arity is None else rk_arity

        rules = list(ORTHO_RULES)
        if self.base is not LogicBase.O:
            rules += MODAL_RULES
        if self.base.is_epistemic:
            rules += EPISTEMIC_RULES
        if self.base in (LogicBase.EOPLUS, LogicBase.COND_MODAL, LogicBase.COND_EPISTEMIC):
            rules += BOOLEAN_RULES
        if self.base.is_conditional:
            rules += CONDITIONAL_RULES
            rules += [rk_rule(n) for n in range(1, self.rk_arity + 1)]
        rules += [principle_rule(t) for t in self.toggles]

        self.rules: Dict[str, List[Rule]] = defaultdict(list)
        for r in rules:
            self.rules[r.id].append(r)
        self.rules = dict(self.rules)

    @classmethod
    def parse(cls, text):
        if isinstance(text, LogicProfile):
            return text
        base, *toggles = [t.strip() for t in str(text).split("+") if t.strip()]
        return cls(base, toggles)

    @property
    def rule_ids(self):
        return tuple(self.rules)

    def lookup(self, id) -> List[Rule]:
        try:
            return self.rules[str(id)]
        except KeyError:
            raise StructureError(f"Rule '{id}' is not enabled in {self}") from None

    def includes(self, other: "LogicProfile") -> bool:
        return set(other.rules) <= set(self.rules) and (
            "RK" not in other.rules or other.rk_arity <= self.rk_arity
        )

    def all_rules(self):
        for rules in self.rules.values():
            yield from rules

    def __str__(self):
        return "+".join((self.base.value,) + self.toggles)

    def __repr__(self):
        return f"LogicProfile({self})"

    def __eq__(self, other):
        return isinstance(other, LogicProfile) and str(self) == str(other) and self.rk_arity == other.rk_arity

    def __hash__(self):
        return hash(str(self))


# Matching


def _bind(pattern, f, binding, bool_names):
    """Extend ``binding`` so that ``pattern`` instantiates to ``f``; ``False`` on mismatch."""
    if isinstance(pattern, (Atom, BoolAtom)):
        if pattern.name in binding:
            return binding[pattern.name] == f
        if isinstance(pattern, BoolAtom) and is_boolean(f, bool_names) is not FragmentTag.BOOLEAN:
            return False
        binding[pattern.name] = f
        return True
    if type(pattern) is not type(f):
        return False
    return all(_bind(p, c, binding, bool_names) for p, c in zip(pattern.children, f.children))


def match(pattern: Consecution, seq: Consecution, binding=None, bool_names=()):
    """Return the extended binding when ``seq`` is an instance of ``pattern``, else ``None``."""
    binding = dict(binding or {})
    if _bind(pattern.lhs, seq.lhs, binding, bool_names) and _bind(pattern.rhs, seq.rhs, binding, bool_names):
        return binding
    return None


def rule_applies(rule: Rule, seq: Consecution, premises: Sequence[Consecution], bool_names=(), binding=None):
    if len(premises) != len(rule.premises):
        return None
    for conclusion in rule.conclusions:
        b = dict(binding or {})
        for pattern, p in zip(rule.premises, premises):
            b = match(pattern, p, b, bool_names)
            if b is None:
                break
        else:
            b = match(conclusion, seq, b, bool_names)
            if b is not None:
                return b
    return None


# Derivations


@dataclass
class Step:
    seq: Consecution
    by: str
    premises: Tuple[int, ...] = ()
    subst: Dict[str, str] = field(default_factory=dict)
    lemma: Optional[str] = None

    def to_document(self):
        doc = {"seq": str(self.seq), "by": self.by}
        if self.premises:
            doc["from"] = list(self.premises)
        if self.subst:
            doc["subst"] = dict(self.subst)
        if self.lemma:
            doc["lemma"] = self.lemma
        return doc


class Derivation(Base):
    """A list of justified consecutions.

    ``hypotheses`` make the derivation a derived rule: steps justified
    ``by: hypothesis`` must be one of them. ``proves`` lists the
    consecutions the derivation establishes, the last step by default.
    """

    def __init__(self, steps, profile=None, bool_atoms=(), hypotheses=(), proves=None, name=None):
        self.steps = list(steps)
        self.profile = None if profile is None else LogicProfile.parse(profile)
        self.bool_atoms = tuple(sorted(bool_atoms))
        self.hypotheses = tuple(hypotheses)
        self.name = name
        if proves is None:
            proves = [self.steps[-1].seq] if self.steps else []
        self.proves = tuple(proves)

    @property
    def conclusion(self) -> Consecution:
        return self.steps[-1].seq

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Derivation{label}({len(self.steps)} steps)"

    def to_document(self):
        doc = dict(kind="derivation")
        if self.name:
            doc["name"] = self.name
        if self.profile is not None:
            doc["profile"] = str(self.profile)
        if self.bool_atoms:
            doc["bool_atoms"] = list(self.bool_atoms)
        if self.hypotheses:
            doc["hypotheses"] = [str(h) for h in self.hypotheses]
        if list(self.proves) != [self.conclusion]:
            doc["proves"] = [str(p) for p in self.proves]
        doc["steps"] = [s.to_document() for s in self.steps]
        return doc

    @classmethod
    def from_document(cls, doc, name=None):
        bools = doc.get("bool_atoms", ())
        try:
            steps = [
                Step(
                    parse_consecution(s["seq"], bools),
                    str(s["by"]),
                    tuple(int(k) for k in s.get("from", ())),
                    dict(s.get("subst", {})),
                    s.get("lemma"),
                )
                for s in doc["steps"]
            ]
        except (KeyError, TypeError) as e:
            raise ValidationError(f"Malformed derivation document: {e!r}") from e
        proves = doc.get("proves")
        return cls(
            steps,
            profile=doc.get("profile"),
            bool_atoms=bools,
            hypotheses=[parse_consecution(h, bools) for h in doc.get("hypotheses", ())],
            proves=None if proves is None else [parse_consecution(p, bools) for p in proves],
            name=doc.get("name", name),
        )

    def to_dot(self):
        lines = ["digraph derivation {", "  node [shape=box];"]
        for k, s in enumerate(self.steps):
            label = str(s.seq).replace('"', '\\"')
            lines.append(f'  s{k} [label="{k}: {label}\\n({s.by})"];')
            for p in s.premises:
                lines.append(f"  s{p} -> s{k};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class BadStep:
    """The first step of a derivation that does not check."""

    def __init__(self, index, reason, step=None):
        self.index = index
        self.reason = reason
        self.step = step

    def __repr__(self):
        return f"BadStep({self.index}, {self.reason!r})"

    def __str__(self):
        where = "derivation" if self.index is None else f"step {self.index}"
        return f"{where}: {self.reason}"

    def to_document(self):
        return dict(step=self.index, reason=self.reason)


def _load_lemma(name):
    from orthokit.logic.fixtures import from_fixture

    d = from_fixture(f"derivations-{name}")
    if not isinstance(d, Derivation):
        raise ValidationError(f"Fixture '{name}' is not a derivation")
    return d


class _Checker:
    def __init__(self, lemmas=None):
        self.lemmas = {} if lemmas is None else dict(lemmas)
        self.accepted = {}

    def lemma(self, name):
        if name not in self.accepted:
            d = self.lemmas.get(name)
            if d is None:
                d = _load_lemma(name)
            if d.profile is None:
                raise ValidationError(f"Lemma '{name}' does not declare a profile")
            bad = self.check(d.profile, d)
            if bad is not None:
                raise ValidationError(f"Lemma '{name}' does not check: {bad}")
            self.accepted[name] = d
        return self.accepted[name]

    def check(self, profile, d: Derivation) -> Optional[BadStep]:
        bools = d.bool_atoms
        for k, step in enumerate(d.steps):
            if any(p >= k or p < 0 for p in step.premises):
                return BadStep(k, "premises must be earlier steps", step)
            premises = [d.steps[p].seq for p in step.premises]
            try:
                binding = {name: parse(text, bools) for name, text in step.subst.items()}
            except OrthokitError as e:
                return BadStep(k, f"malformed substitution: {e}", step)

            if step.by == "hypothesis":
                if step.seq not in d.hypotheses:
                    return BadStep(k, "not one of the hypotheses", step)
                continue

            if step.by == "lemma":
                if not step.lemma:
                    return BadStep(k, "lemma step without a lemma name", step)
                try:
                    lemma = self.lemma(step.lemma)
                except (NameError, OrthokitError) as e:
                    return BadStep(k, str(e), step)
                if not profile.includes(lemma.profile):
                    return BadStep(k, f"lemma '{step.lemma}' needs {lemma.profile}, not included in {profile}", step)
                rule = Rule(step.lemma, lemma.proves, lemma.hypotheses)
                if rule_applies(rule, step.seq, premises, bools, binding) is None:
                    return BadStep(k, f"not an instance of lemma '{step.lemma}'", step)
                continue

            try:
                candidates = profile.lookup(step.by)
            except StructureError as e:
                return BadStep(k, str(e), step)
            if not any(rule_applies(r, step.seq, premises, bools, binding) is not None for r in candidates):
                return BadStep(k, f"not an instance of rule {step.by}", step)

        for seq in d.proves:
            if seq not in [s.seq for s in d.steps]:
                return BadStep(None, f"{seq} is not derived")
        return None


def check_derivation(profile, d: Derivation, lemmas: Optional[Dict[str, Derivation]] = None) -> Optional[BadStep]:
    """Check every step of ``d`` under ``profile``; the first bad step, or ``None``.

    Lemma steps cite other derivations by name. They are looked up in
    ``lemmas`` first, then among the bundled derivation fixtures, and are
    checked under their own profile, which must be included in ``profile``.
    """
    profile = LogicProfile.parse(profile if profile is not None else d.profile)
    return _Checker(lemmas).check(profile, d)


# Saturation


class Unknown:
    """No derivation found within the bound; not a refutation."""

    def __init__(self, goal, facts, reason="saturated"):
        self.goal = goal
        self.facts = facts
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"Unknown({self.goal}, {self.facts} facts, {self.reason})"

    def to_document(self):
        return dict(result="unknown", goal=str(self.goal), facts=self.facts, reason=self.reason)


def default_bound(goal: Consecution, hints=()):
    """Subformulas of ``goal`` and of ``hints``, each with its double negation."""
    closure = subformula_closure(goal.lhs, goal.rhs, *hints)
    return tuple(dict.fromkeys(closure + tuple(Neg(Neg(f)) for f in closure)))


def _completions(binding, unbound, universe):
    if not unbound:
        yield binding
        return
    for values in itertools.product(universe, repeat=len(unbound)):
        b = dict(binding)
        b.update(zip(unbound, values))
        yield b


def _lhs_bindings(pattern, binding, universe, bool_names):
    """Bindings under which ``pattern`` instantiates to a member of ``universe``."""
    if all(v in binding for v in atoms(pattern) + bool_atoms(pattern)):
        yield binding
        return
    for f in universe:
        b = dict(binding)
        if _bind(pattern, f, b, bool_names):
            yield b


def saturate(profile, goal, bound=None, bool_names=(), max_rounds=50, hints=()):
    """Forward-close the rules of ``profile`` over consecutions between formulas of ``bound``.

    Without an explicit ``bound`` the universe is :func:`default_bound` of
    ``goal``, extended with the subformulas of ``hints``. Hints name the
    intermediate formulas a proof passes through, such as the instances of a
    toggled principle.

    Returns a :class:`Derivation` of ``goal`` that passes
    :func:`check_derivation`, or :class:`Unknown`.

    Raises
    ------
    ValidationError
        When ``bound`` does not contain both sides of ``goal``.
    """
    profile = LogicProfile.parse(profile)
    goal = parse_consecution(goal, bool_names)
    if bound is None:
        universe = default_bound(goal, [parse(f, bool_names) for f in hints])
    else:
        universe = tuple(dict.fromkeys(parse(f, bool_names) for f in bound))
    members = set(universe)
    if goal.lhs not in members or goal.rhs not in members:
        raise ValidationError(f"The bound is too small to state {goal}")

    bool_names = tuple(sorted(set(bool_names) | set(bool_atoms(goal.lhs, goal.rhs))))
    booleans = tuple(f for f in universe if is_boolean(f, bool_names) is FragmentTag.BOOLEAN)
    LOG.debug("Saturating %s over %d formulas", goal, len(universe))

    justification = {}
    by_lhs = defaultdict(list)
    order = []

    def add(seq, rule, premises):
        if seq in justification:
            return False
        justification[seq] = (rule.id, premises)
        by_lhs[seq.lhs].append(seq)
        order.append(seq)
        return True

    def instances(rule, premises):
        """Conclusions of ``rule`` for the given premise facts, with free metavariables ranging over the bound."""
        for conclusion in rule.conclusions:
            b = {}
            for pattern, p in zip(rule.premises, premises):
                b = match(pattern, p, b, bool_names)
                if b is None:
                    break
            if b is None:
                continue
            for b1 in _lhs_bindings(conclusion.lhs, b, universe, bool_names):
                general, boolean = atoms(conclusion.rhs), bool_atoms(conclusion.rhs)
                for b2 in _completions(b1, [v for v in general if v not in b1], universe):
                    for b3 in _completions(b2, [v for v in boolean if v not in b2], booleans):
                        seq = Consecution(substitute(conclusion.lhs, b3), substitute(conclusion.rhs, b3))
                        if seq.lhs in members and seq.rhs in members:
                            yield seq

    rules = list(profile.all_rules())
    # axioms do not depend on facts
    for rule in rules:
        if rule.is_axiom:
            for seq in instances(rule, ()):
                add(seq, rule, ())
    rules = [rule for rule in rules if not rule.is_axiom]

    for rnd in range(max_rounds):
        if goal in justification:
            return _extract(profile, goal, justification, bool_names)
        before = len(order)
        facts = list(order)
        for rule in rules:
            for combo in _premise_combinations(rule, facts, by_lhs, bool_names):
                for seq in instances(rule, combo):
                    add(seq, rule, combo)
            if goal in justification:
                break
        LOG.debug("Saturation round %d: %d facts", rnd, len(order))
        if len(order) == before:
            return Unknown(goal, len(order))
    if goal in justification:
        return _extract(profile, goal, justification, bool_names)
    return Unknown(goal, len(order), reason="round limit")


def _premise_combinations(rule, facts, by_lhs, bool_names):
    """Tuples of known facts matching the premise patterns of ``rule`` consistently."""

    def extend(k, binding, chosen):
        if k == len(rule.premises):
            yield tuple(chosen)
            return
        pattern = rule.premises[k]
        candidates = facts
        if all(v in binding for v in atoms(pattern.lhs) + bool_atoms(pattern.lhs)):
            candidates = by_lhs.get(substitute(pattern.lhs, binding), [])
        for seq in candidates:
            b = match(pattern, seq, binding, bool_names)
            if b is not None:
                yield from extend(k + 1, b, chosen + [seq])

    yield from extend(0, {}, [])


def _extract(profile, goal, justification, bool_names):
    steps = []
    index = {}

    def visit(seq):
        if seq in index:
            return index[seq]
        rule_id, premises = justification[seq]
        refs = tuple(visit(p) for p in premises)
        index[seq] = len(steps)
        steps.append(Step(seq, rule_id, refs))
        return index[seq]

    visit(goal)
    d = Derivation(steps, profile=profile, bool_atoms=bool_names, name=f"saturation of {goal}")
    LOG.debug("Saturation proved %s in %d steps", goal, len(steps))
    return d


# Soundness


class SoundnessReport:
    def __init__(self, profile, frame):
        self.profile = profile
        self.frame = frame
        self.checked = {}
        self.violations: List[Countermodel] = []

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"SoundnessReport({self.profile}, {self.frame!r}, violations={len(self.violations)})"

    def to_document(self):
        return dict(
            profile=str(self.profile),
            checked=dict(self.checked),
            violations=[v.to_document() for v in self.violations],
        )


def _require_frame_class(profile, F):
    if profile.base is not LogicBase.O and not (F.has_total_i or F.R is not None):
        raise StructureError(f"{profile} needs a modal frame, {F!r} has no i function")
    if profile.base.is_epistemic and not is_epistemic(F):
        raise StructureError(f"{profile} needs an epistemic frame")
    if profile.base.is_conditional and F.selection is None:
        raise StructureError(f"{profile} needs a selection function")
    for cond, names in CONSTRAINT_PRINCIPLES.items():
        if set(names) & set(profile.toggles) and check_condition(F, cond) is not None:
            raise StructureError(f"{profile} needs the {cond.value} constraint, which {F!r} fails")


def check_soundness(profile, F: CompatibilityFrame, samples: Optional[int] = None, seed: Optional[int] = None):
    """Validate every rule of ``profile`` on ``F`` with sampled semantic substitutions.

    Metavariables receive propositions of ``F`` (Boolean ones, members of
    the Boolean family). Rules with premises are checked per substitution:
    when the premises hold, so must the conclusion. Rules with at most
    ``samples`` substitutions are checked exhaustively.
    """
    profile = LogicProfile.parse(profile)
    samples = SETTINGS.get("soundness-samples") if samples is None else samples
    seed = SETTINGS.get("sampling-seed") if seed is None else seed
    _require_frame_class(profile, F)

    rng = np.random.default_rng(seed)
    report = SoundnessReport(profile, F)
    props = F.prop_family
    family = F.bool_family

    keyed = []
    for id, rules in profile.rules.items():
        for k, rule in enumerate(rules, start=1):
            keyed.append((id if len(rules) == 1 else f"{id}/{k}", rule))

    for key, rule in progress_bar(iterable=keyed, desc="Rules", total=len(keyed)):
        general, boolean = rule.metavariables
        if boolean and family is None:
            raise StructureError(f"Rule {rule.id} has Boolean metavariables but {F!r} has no Boolean family")
        names = list(general) + list(boolean)
        domains = [props] * len(general) + [family] * len(boolean)
        total = math.prod(len(d) for d in domains)

        if total <= samples:
            valuations = itertools.product(*domains)
        else:
            valuations = (tuple(d[int(rng.integers(len(d)))] for d in domains) for _ in range(samples))

        count = 0
        for values in valuations:
            count += 1
            v = dict(zip(names, values))
            failure = _rule_failure(F, rule, v, boolean)
            if failure is not None:
                report.violations.append(failure)
                break
        report.checked[key] = count

    LOG.debug("%r", report)
    return report


def _rule_failure(F, rule, v, boolean):
    cache = {}
    for p in rule.premises:
        if _evaluate(F, v, p.lhs, cache) & ~_evaluate(F, v, p.rhs, cache):
            return None
    for seq in rule.conclusions:
        failing = _evaluate(F, v, seq.lhs, cache) & ~_evaluate(F, v, seq.rhs, cache)
        if failing:
            return Countermodel(F, v, bitset.lowest(failing), seq, boolean, law=rule.id)
    return None

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Command line interface.

Every command prints a JSON document (or plain text for ``eval``,
``lattice-of --count-only`` and ``export-dot``) and exits with 0 when the
checked property holds, 1 on a countermodel or violation, 2 on a usage or
validation error and 3 when a budget runs out.
"""

import argparse
import logging
import os
import sys

import yaml

from orthokit.logic.core import BudgetExceeded, OrthokitError
from orthokit.logic.core.settings import SETTINGS
from orthokit.logic.fixtures import build, fixture_document, from_fixture, list_fixtures
from orthokit.logic.utils import dump_json, load_json_or_yaml

LOG = logging.getLogger(__name__)

OK = 0
NEGATIVE = 1
USAGE = 2
BUDGET = 3


def load(ref):
    """A document file, or failing that a fixture name."""
    if os.path.exists(ref):
        return build(load_json_or_yaml(ref))
    return from_fixture(ref)


def _frame(obj):
    return getattr(obj, "frame", obj)


def _names(text):
    if not text:
        return ()
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _print(document):
    print(dump_json(document))


def _print_result(result, holds=None):
    """Print ``result`` (a document-carrying value, or ``None`` for success) and return the exit code."""
    if result is None:
        _print(dict(result="holds") if holds is None else holds)
        return OK
    _print(result.to_document())
    return NEGATIVE


# Commands


def cmd_parse(args):
    from orthokit.logic.formula import atoms, bool_atoms, depth, is_boolean, parse, size, to_text

    bools = _names(args.bool)
    f = parse(args.formula, bools)
    _print(
        dict(
            formula=to_text(f),
            unicode=to_text(f, unicode=True),
            fragment=is_boolean(f, bools).value,
            atoms=list(atoms(f)),
            bool_atoms=list(bool_atoms(f)),
            size=size(f),
            depth=depth(f),
        )
    )
    return OK


def cmd_eval(args):
    M = load(args.model)
    if args.at is None:
        _print(dict(formula=args.formula, extension=M.extension(args.formula).names))
        return OK
    value = M.forces(args.at, args.formula)
    print("true" if value else "false")
    return OK if value else NEGATIVE


def cmd_entails(args):
    from orthokit.logic.formula import parse

    bools = _names(args.bool)
    if args.lattice is not None:
        from orthokit.logic.lattice import entails_on_lattice

        L = load(args.lattice)
        found = entails_on_lattice(L, parse(args.lhs, bools), parse(args.rhs, bools), bools)
        if found is None:
            _print(dict(result="holds"))
            return OK
        _print(dict(kind="lattice-countermodel", consecution=f"{args.lhs} |- {args.rhs}", valuation=found))
        return NEGATIVE

    from orthokit.logic.semantics import entails_on_frame

    obj = load(args.frame)
    bools = tuple(sorted(set(bools) | set(getattr(obj, "bool_atoms", ()))))
    return _print_result(entails_on_frame(_frame(obj), args.lhs, args.rhs, bools))


def cmd_frame_verify(args):
    from orthokit.logic.frame import EPISTEMIC_CONDITIONS, SELECTION_CONSTRAINTS, check_condition, check_families
    from orthokit.logic.semantics import verify_principle

    F = _frame(load(args.frame))
    conditions = list(args.condition or ())
    if not conditions and not args.principle:
        if F.has_total_i:
            conditions += [c.value for c in EPISTEMIC_CONDITIONS]
        if F.selection is not None:
            conditions += [c.value for c in SELECTION_CONSTRAINTS]

    report = dict(conditions={}, principles={})
    failed = False
    for c in conditions:
        w = check_condition(F, c)
        failed = failed or w is not None
        report["conditions"][c] = None if w is None else w.to_document()
    for p in args.principle or ():
        cm = verify_principle(F, p)
        failed = failed or cm is not None
        report["principles"][p] = None if cm is None else cm.to_document()
    if F.bool_family is not None or F.declares_prop_family:
        w = check_families(F)
        failed = failed or w is not None
        report["families"] = None if w is None else w.to_document()
    _print(report)
    return NEGATIVE if failed else OK


def cmd_lattice_of(args):
    from orthokit.logic.frame import proposition_lattice

    L = proposition_lattice(_frame(load(args.frame)))
    if args.count_only:
        print(L.n)
    else:
        _print(L.to_document())
    return OK


def cmd_represent(args):
    from orthokit.logic.frame import frame_from_lattice

    _print(frame_from_lattice(load(args.lattice)).to_document())
    return OK


def cmd_product(args):
    from orthokit.logic.frame import product
    from orthokit.logic.semantics import PossibilityModel

    first, second = load(args.first), load(args.second)
    if isinstance(first, PossibilityModel) and isinstance(second, PossibilityModel):
        _print(PossibilityModel.product(first, second, name=args.name).to_document())
    else:
        _print(product(_frame(first), _frame(second), name=args.name).to_document())
    return OK


def cmd_functionalize(args):
    from orthokit.logic.frame import relational_to_functional
    from orthokit.logic.semantics import PossibilityModel

    obj = load(args.frame)
    if isinstance(obj, PossibilityModel):
        _print(obj.functionalize().to_document())
    else:
        _print(relational_to_functional(obj).to_document())
    return OK


def cmd_proof_check(args):
    from orthokit.logic.proof import check_derivation

    d = load(args.derivation)
    return _print_result(check_derivation(args.profile, d), holds=dict(result="valid", proves=[str(p) for p in d.proves]))


def cmd_prove(args):
    from orthokit.logic.proof import saturate

    result = saturate(
        args.profile,
        args.goal,
        bound=args.bound or None,
        bool_names=_names(args.bool),
        hints=args.hint or (),
    )
    _print(result.to_document())
    return OK if result else NEGATIVE


def cmd_prob_verify(args):
    from orthokit.logic.probability import (
        OrthoMeasure,
        check_measure,
        check_measure_flatness,
        check_prob_condition,
        is_introspective,
    )

    obj = load(args.target)
    if isinstance(obj, OrthoMeasure):
        L = obj.lattice
        w = check_measure(L, obj)
        report = dict(measure=None if w is None else w.to_document())
        if L.box is not None:
            report["introspective"] = is_introspective(L, obj)
            flat = check_measure_flatness(L, obj)
            report["flatness"] = None if flat is None else flat.to_document()
        _print(report)
        return OK if w is None else NEGATIVE

    from orthokit.logic.probability import ProbCondition

    conditions = args.condition or [c.value for c in ProbCondition]
    report = {}
    failed = False
    for c in conditions:
        w = check_prob_condition(obj.frame, obj, c)
        failed = failed or w is not None
        report[c] = None if w is None else w.to_document()
    _print(report)
    return NEGATIVE if failed else OK


def cmd_search(args):
    from orthokit.logic.search import SearchSpec, find_countermodel, qualified_collapse_hunt

    if args.qualified_collapse:
        result = qualified_collapse_hunt(args.require or (), args.max_size, args.budget, args.threads)
    else:
        if args.spec is not None:
            spec = SearchSpec.from_document(load_json_or_yaml(args.spec))
        elif args.goal is not None:
            spec = SearchSpec(
                args.goal,
                args.frame_class,
                args.max_size,
                args.budget,
                tuple(args.constraint or ()),
                tuple(args.require or ()),
                _names(args.bool),
                lattices=args.lattices,
            )
        else:
            raise OrthokitError("search needs a goal, --spec or --qualified-collapse")
        result = find_countermodel(spec, args.threads)

    from orthokit.logic.search import BudgetExhausted, NoneUpToBound

    if isinstance(result, BudgetExhausted):
        _print(result.to_document())
        return BUDGET
    if isinstance(result, NoneUpToBound):
        _print(result.to_document())
        return OK
    doc = result.to_document()
    doc["log"] = result.log.to_document()
    _print(doc)
    return NEGATIVE


def cmd_principles(args):
    from orthokit.logic.semantics import PRINCIPLES, verify_principle

    if args.frame is None:
        _print({name: dict(text=str(s), description=s.description) for name, s in PRINCIPLES.items()})
        return OK

    F = _frame(load(args.frame))
    names = args.principle or list(PRINCIPLES)
    report = {}
    failed = False
    for name in names:
        cm = verify_principle(F, name)
        failed = failed or cm is not None
        report[name] = None if cm is None else cm.to_document()
    _print(report)
    return NEGATIVE if failed else OK


def cmd_export_dot(args):
    sys.stdout.write(load(args.target).to_dot())
    return OK


def cmd_fixtures(args):
    if args.emit is None:
        for name in list_fixtures():
            print(name)
        return OK
    document = fixture_document(args.emit)
    if not isinstance(document, dict):
        document = document.to_document()
    _print(document)
    return OK


# Parser


def _parser():
    parser = argparse.ArgumentParser(
        prog="orthokit-logic",
        description="Orthologic of epistemic modals: models, lattices, proofs, probabilities and countermodel search.",
    )
    parser.add_argument("--debug", action="store_true", help="log debug messages")
    parser.add_argument("--threads", type=int, default=None, help="worker threads for frame searches")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula")
    p.add_argument("formula")
    p.add_argument("--bool", help="comma separated Boolean atoms")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", help="evaluate a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--at", help="possibility; without it the extension is printed")
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("entails", help="check a consecution on a frame or a lattice")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--frame")
    where.add_argument("--lattice")
    p.add_argument("--bool", help="comma separated Boolean atoms")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("frame-verify", help="check frame conditions and principles")
    p.add_argument("--frame", required=True)
    p.add_argument("--condition", action="append")
    p.add_argument("--principle", action="append")
    p.set_defaults(func=cmd_frame_verify)

    p = sub.add_parser("lattice-of", help="the lattice of propositions of a frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_lattice_of)

    p = sub.add_parser("represent", help="the frame representing a lattice")
    p.add_argument("--lattice", required=True)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("product", help="product of two relational frames or models")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--name")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("functionalize", help="replace an accessibility relation by an i function")
    p.add_argument("--frame", required=True)
    p.set_defaults(func=cmd_functionalize)

    p = sub.add_parser("proof-check", help="check a derivation")
    p.add_argument("--derivation", required=True)
    p.add_argument("--profile", help="defaults to the profile the derivation declares")
    p.set_defaults(func=cmd_proof_check)

    p = sub.add_parser("prove", help="bounded forward proof search")
    p.add_argument("--profile", required=True)
    p.add_argument("--bound", action="append", help="formula allowed in the search (repeatable)")
    p.add_argument("--hint", action="append", help="formula whose subformulas join the default bound (repeatable)")
    p.add_argument("--bool", help="comma separated Boolean atoms")
    p.add_argument("goal")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("prob-verify", help="check a measure or a probabilistic frame")
    p.add_argument("target")
    p.add_argument("--condition", action="append")
    p.set_defaults(func=cmd_prob_verify)

    p = sub.add_parser("search", help="countermodel search by increasing size")
    p.add_argument("goal", nargs="?", help="consecution or principle name")
    p.add_argument("--spec", help="search document")
    p.add_argument("--class", dest="frame_class", default="epistemic")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--budget", type=int)
    p.add_argument("--constraint", action="append")
    p.add_argument("--require", action="append")
    p.add_argument("--bool", help="comma separated Boolean atoms")
    p.add_argument("--lattices", action="store_true", help="search lattices instead of frames")
    p.add_argument("--qualified-collapse", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("principles", help="list principles, or verify them on a frame")
    p.add_argument("--frame")
    p.add_argument("--principle", action="append")
    p.set_defaults(func=cmd_principles)

    p = sub.add_parser("export-dot", help="Graphviz rendering of a lattice, frame, model or derivation")
    p.add_argument("target")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("fixtures", help="list the fixtures, or print one")
    p.add_argument("--emit", metavar="NAME")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING)

    try:
        if args.threads is not None:
            with SETTINGS.temporary("number-of-search-threads", args.threads):
                return args.func(args)
        return args.func(args)
    except BudgetExceeded as e:
        print(f"orthokit-logic: {e}", file=sys.stderr)
        return BUDGET
    except (OrthokitError, NameError, ValueError, OSError, yaml.YAMLError) as e:
        LOG.debug("Command failed", exc_info=True)
        print(f"orthokit-logic: {e}", file=sys.stderr)
        return USAGE

"""Command-line entry point.

Every command prints one JSON document on stdout. Exit status is 0 when all
checks pass, 1 when a check fails (the document lists the failures with
witnesses) and 2 when the input cannot be used.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import factory
from .algebra import MisuseError
from .formats import SchemaError, Instance, dumps, emit_instance, parse_instance, report_document, write_atomic
from .gradings import (
    HypothesisError,
    fixed_subalgebra,
    graded_hypotheses,
    validate_action,
    validate_grading,
)
from .groups import GroupAxiomError
from .linalg import DimensionError
from .pipelines import bergman_isaacs_check, invariant_hypotheses, theorem1_construct, theorem2_construct
from .tower import BudgetExceeded, bounds_for, brute_force_level, build_tower

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, kind: str, message: str, path: Optional[str] = None, witness=None):
        super().__init__(message)
        self.kind, self.path, self.witness = kind, path, witness


def _load(path: str) -> tuple[Instance, str]:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as err:
        raise InputError("io", str(err)) from None
    try:
        return parse_instance(text), text
    except SchemaError as err:
        raise InputError("schema", str(err), err.path) from None
    except GroupAxiomError as err:
        raise InputError("group", str(err), "$.group", err.witness) from None


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        write_atomic(out, text)
    sys.stdout.write(text)


def _finish(command: str, body: dict, passed: bool, input_text: Optional[str], out: Optional[str] = None) -> int:
    body = dict(body, status="PASS" if passed else "FAIL")
    if not passed:
        body["failures"] = [c for c in body.get("checks", []) if not c["passed"]]
    _emit(report_document(command, body, input_text), out)
    return EXIT_OK if passed else EXIT_FAIL


def _require(inst: Instance, what: str, command: str):
    if getattr(inst, what) is None:
        raise InputError("missing", f"`{command}` needs the {what} block", f"$.{what}")
    return getattr(inst, what)


def cmd_validate(args) -> int:
    try:
        inst, text = _load(args.file)
    except InputError as err:
        if err.kind != "group":
            raise
        body = {"checks": [{"name": "group axioms", "passed": False, "witness": err.witness, "message": str(err)}]}
        return _finish("validate", body, False, None)
    alg = inst.algebra
    checks = []
    bad = alg.validate_associativity()
    checks.append({"name": "associativity", "passed": not bad, "witness": list(bad[0]) if bad else None})
    if inst.group is not None:
        checks.append({"name": "group axioms", "passed": True, "witness": None})
    if inst.series is not None:
        checks.append({"name": "prime series", "passed": True, "witness": None})
    if inst.grading is not None:
        checks.extend(c.to_dict() for c in validate_grading(alg, inst.grading).checks.checks)
    if inst.action is not None:
        checks.extend(c.to_dict() for c in validate_action(alg, inst.action).checks.checks)
    if inst.ideal is not None and not bad:
        checks.extend(_ideal_checks(inst))
    return _finish("validate", {"checks": checks}, all(c["passed"] for c in checks), text)


def _ideal_checks(inst: Instance) -> list[dict]:
    alg, i = inst.algebra, inst.ideal
    if inst.grading is not None:
        host, label = inst.grading.identity_component, "A_e"
    elif inst.action is not None and validate_action(alg, inst.action).ok:
        host, label = fixed_subalgebra(alg, inst.action), "A^G"
    else:
        host, label = alg.whole(), "A"
    inside = host.contains(i)
    two_sided = i.contains(alg.subspace_product(host, i)) and i.contains(alg.subspace_product(i, host))
    index = alg.nilpotency_index(i) if alg.is_multiplicatively_closed(i) else None
    return [
        {"name": f"ideal inside {label}", "passed": inside, "witness": None},
        {"name": f"ideal is two-sided in {label}", "passed": two_sided, "witness": None},
        {"name": "ideal is nilpotent", "passed": index is not None, "witness": {"index": index}},
    ]


def cmd_nilindex(args) -> int:
    inst, text = _load(args.file)
    alg = inst.algebra
    if args.subspace == "algebra":
        s = alg.whole()
    elif args.subspace == "ideal":
        s = _require(inst, "ideal", "nilindex --subspace ideal")
    elif args.subspace == "identity":
        s = _require(inst, "grading", "nilindex --subspace identity").identity_component
    else:
        s = fixed_subalgebra(alg, _require(inst, "action", "nilindex --subspace fixed"))
    if not alg.is_multiplicatively_closed(s):
        raise InputError("hypothesis", f"the {args.subspace} subspace is not closed under multiplication")
    index = alg.nilpotency_index(s)
    body = {"subspace": args.subspace, "dim": s.dim, "index": index if index is not None else "NOT_NILPOTENT"}
    _emit(report_document("nilindex", body, text), None)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.n < 1 or args.d < 1:
        raise InputError("arguments", "--n and --d must be positive")
    _emit(report_document("bounds", {"bounds": bounds_for(args.n, args.d).to_dict()}), None)
    return EXIT_OK


def cmd_theorem2(args) -> int:
    inst, text = _load(args.file)
    grading = _require(inst, "grading", "theorem2")
    hyp = graded_hypotheses(inst.algebra, grading, inst.ideal)
    rep = theorem2_construct(hyp, samples=args.samples, seed=args.seed)
    if args.dump_tower:
        write_atomic(args.dump_tower, dumps(report_document("tower", {"levels": rep.tower.dump()}, text)))
    body = rep.to_dict()
    body.update(n=hyp.n, d=hyp.d, m=hyp.m)
    return _finish("theorem2", body, rep.ok, text, args.output)


def cmd_theorem1(args) -> int:
    inst, text = _load(args.file)
    action = _require(inst, "action", "theorem1")
    hyp = invariant_hypotheses(inst.algebra, action, inst.ideal)
    rep = theorem1_construct(hyp, inst.series, samples=args.samples, seed=args.seed)
    body = rep.to_dict()
    body.update(n=hyp.n, d=hyp.d, m=hyp.m)
    return _finish("theorem1", body, rep.ok, text, args.output)


def cmd_tower_oracle(args) -> int:
    if not 1 <= args.max_w <= 4:
        raise InputError("arguments", "--max-w must be between 1 and 4")
    inst, text = _load(args.file)
    grading = _require(inst, "grading", "tower-oracle")
    hyp = graded_hypotheses(inst.algebra, grading, inst.ideal)
    tower = build_tower(hyp, W_override=args.max_w)
    checks = []
    for s in range(1, tower.N + 1):
        brute = brute_force_level(tower, s, args.max_w, budget=args.budget)
        mism = [g for g in tower.nonidentity() if brute[g] != tower.A(g, s)]
        checks.append({"name": f"level {s}", "passed": not mism,
                       "witness": {"grades": mism} if mism else None})
    return _finish("tower-oracle", {"W": args.max_w, "N": tower.N, "checks": checks},
                   all(c["passed"] for c in checks), text, args.output)


def cmd_bi_check(args) -> int:
    inst, text = _load(args.file)
    action = _require(inst, "action", "bi-check")
    rep = bergman_isaacs_check(inst.algebra, action)
    body = rep.to_dict()
    body["checks"] = [{"name": "index of A <= h^d", "passed": rep.ok, "witness": {"index": rep.index, "bound": rep.bound}}]
    return _finish("bi-check", body, rep.ok, text, args.output)


def cmd_gen(args) -> int:
    params = {k: v for k, v in {
        "k": args.k, "p": args.p, "order": args.order, "group": args.group, "max_dim": args.max_dim,
        "ideal": args.ideal, "d_max": args.d_max, "idempotents": args.idempotents, "signed": args.signed,
    }.items() if v is not None}
    if args.family == "path":
        if not args.quiver:
            raise InputError("arguments", "family 'path' needs --quiver JSON")
        params.update(json.loads(args.quiver))
    try:
        inst = factory.generate(args.family, args.seed, **params)
    except (KeyError, TypeError) as err:
        raise InputError("arguments", f"bad parameters: {err}") from None
    text = emit_instance(inst)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="almostnil", description="Nilpotent ideals for graded algebras and group actions.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run every applicable validator")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("nilindex", help="nilpotency index of a subspace")
    p.add_argument("file")
    p.add_argument("--subspace", choices=("algebra", "ideal", "fixed", "identity"), default="algebra")
    p.set_defaults(fn=cmd_nilindex)

    p = sub.add_parser("bounds", help="all numeric bounds for n and d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=cmd_bounds)

    for name, fn, samples in (("theorem2", cmd_theorem2, 1000), ("theorem1", cmd_theorem1, 200)):
        p = sub.add_parser(name, help=f"run the {name} construction and write a report")
        p.add_argument("file")
        p.add_argument("-o", "--output")
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--seed", type=int, default=0)
        if name == "theorem2":
            p.add_argument("--dump-tower")
        p.set_defaults(fn=fn)

    p = sub.add_parser("tower-oracle", help="compare brute-force enumeration with the span computation")
    p.add_argument("file")
    p.add_argument("--max-w", type=int, required=True)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_tower_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("family", choices=factory.FAMILIES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--group")
    p.add_argument("--max-dim", type=int)
    p.add_argument("--ideal")
    p.add_argument("--d-max", type=int)
    p.add_argument("--idempotents", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--signed", action="store_true", default=None)
    p.add_argument("--quiver", help='JSON: {"vertices":..,"arrows":[[s,t,grade],..],"truncation":..}')
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bi-check", help="compare the index of A with h^d")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_bi_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except InputError as err:
        err_doc = {"type": err.kind, "message": str(err), "path": err.path, "witness": err.witness}
    except (HypothesisError, MisuseError, BudgetExceeded, DimensionError, GroupAxiomError, ValueError) as err:
        err_doc = {"type": type(err).__name__, "message": str(err), "path": None, "witness": None}
    _emit(report_document(args.command, {"status": "INVALID_INPUT", "error": err_doc}), None)
    print(f"error: {err_doc['message']}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

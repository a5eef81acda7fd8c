"""Command-line front end: scenario files in, exact reports out.

Subcommands map one-to-one onto the library surface: wl-eval and
wl-axioms for weak lengths on presented abelian groups, biv-eval and
biv-check for the bivariant upgradings, mean and addition for the
Folner engine, and example/list-examples for the named scenarios.

Reports are deterministic: the same scenario and seed produce identical
bytes (keys sorted, no timestamps, floats only in the human-readable
table at 12 significant digits).  Exit codes: 0 success, 2 a checked
mathematical statement failed (counterexample found), 1 configuration
or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .bivariant import (
    BivariantSpec,
    bivariant_eval,
    check_upgrading_proper,
    cover_bivariant,
)
from .errors import ConfigurationError, DomainError
from .finabelian import FinAbGroup
from .groupring import GroupPresentation, ShiftModule, SubmodulePresentation
from .meanlen import FolnerBoxes, addition_report, default_n_max, ratio_sequence
from .registry import example_names, run_example
from .subsets import FiniteSubset
from .values import render_float
from .weaklength import AXIOMS, WeakLengthSpec, check_axiom, eval_weak_length

DEFAULT_SEED = 20260810
DEFAULT_BUDGET = 200


def _parse_group(data) -> FinAbGroup:
    return FinAbGroup(tuple(data.get("torsion", ())), data.get("free_rank", 0))


def _parse_set(group: FinAbGroup, coords_list) -> FiniteSubset:
    return FiniteSubset.of(group, [group.element(c) for c in coords_list])


def _parse_witness(module: ShiftModule, pairs_list) -> FiniteSubset:
    elems = [module.element([(tuple(g), tuple(c)) for g, c in pairs])
             for pairs in pairs_list]
    return FiniteSubset.of(module, elems)


def _load_scenario(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed scenario JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario: {exc}") from exc


def _require(scenario, key):
    if key not in scenario:
        raise ConfigurationError(f"scenario is missing the {key!r} field")
    return scenario[key]


def _threads_limit():
    raw = os.environ.get("MWL_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError("MWL_THREADS must be an integer")
    if value < 1:
        raise ConfigurationError("MWL_THREADS must be at least 1")
    return value


# -- table rendering ----------------------------------------------------


def _render_table(rows, header) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row) for row in rows)
    return lines


def _estimate_table(est_json) -> list[str]:
    rows = []
    for r in est_json["rows"]:
        value = r["count_or_value"]
        if value["kind"] == "log":
            shown = f"log {value['count']}"
            ratio = render_float(math.log(value["count"]) / r["folner_size"])
        elif value["kind"] == "rational":
            shown = f"{value['num']}/{value['den']}" if value["den"] != 1 else str(value["num"])
            ratio = render_float(value["num"] / value["den"] / r["folner_size"])
        else:
            shown, ratio = "+inf", "inf"
        rows.append([str(r["n"]), str(r["folner_size"]), shown, ratio, r["method"]])
    lines = _render_table(rows, ["n", "|F_n|", "value", "ratio~", "method"])
    flags = est_json["flags"]
    lines.append("flags: " + ", ".join(k for k, v in flags.items() if v))
    limit = est_json["limit"]
    if limit["certificate"]:
        lines.append(f"limit certificate: {limit['certificate']}"
                     + (" (exact)" if limit["exact"] else ""))
    if est_json["truncated_at"] is not None:
        lines.append(f"truncated at n = {est_json['truncated_at']} (set cap)")
    return lines


# -- subcommands --------------------------------------------------------


def _cmd_wl_eval(args):
    scenario = _load_scenario(args.scenario)
    group = _parse_group(_require(scenario, "group"))
    spec = WeakLengthSpec.from_json(_require(scenario, "weak_length"))
    subset = _parse_set(group, _require(scenario, "set"))
    value = eval_weak_length(spec, group, subset)
    report = {"result": {"value": value.to_json(), "group": str(group),
                         "set_size": len(subset), "weak_length": spec.to_json()}}
    table = [f"{spec} on a {len(subset)}-element subset of {group}: "
             f"{value} ~ {render_float(value.as_float())}"]
    return 0, report, table


def _cmd_wl_axioms(args):
    scenario = _load_scenario(args.scenario)
    spec = WeakLengthSpec.from_json(_require(scenario, "weak_length"))
    axioms = scenario.get("axioms", "all")
    if axioms == "all":
        axioms = list(AXIOMS)
    budget = args.budget or scenario.get("budget", DEFAULT_BUDGET)
    seed = args.seed if args.seed is not None else scenario.get("seed", DEFAULT_SEED)
    reports = [check_axiom(spec, axiom, seed, budget) for axiom in axioms]
    failed = [r for r in reports if not r.passed]
    table_rows = [[r.axiom, "pass" if r.passed else "FAIL", str(r.checked)]
                  for r in reports]
    table = _render_table(table_rows, ["axiom", "status", "samples"])
    for r in failed:
        table.append(f"counterexample for {r.axiom}: "
                     + json.dumps(r.counterexample, sort_keys=True))
    report = {"result": {"checks": [r.to_json() for r in reports],
                         "seed": seed, "budget": budget}}
    return (2 if failed else 0), report, table


def _cmd_biv_eval(args):
    scenario = _load_scenario(args.scenario)
    group = _parse_group(_require(scenario, "group"))
    spec = BivariantSpec.from_json(_require(scenario, "bivariant"))
    a = _parse_set(group, _require(scenario, "a"))
    b = _parse_set(group, _require(scenario, "b"))
    result = {"bivariant": spec.to_json(), "group": str(group)}
    if spec.kind == "cover_log":
        value, cover = cover_bivariant(group, a, b)
        result["value"] = value.to_json()
        result["witness_cover"] = [list(x.coords) for x in cover.sorted_elements()]
    else:
        value = bivariant_eval(spec, group, a, b)
        result["value"] = value.to_json()
    table = [f"{spec}(A, B) = {value} ~ {render_float(value.as_float())}"]
    if "witness_cover" in result:
        table.append(f"minimizing cover: {result['witness_cover']}")
    return 0, {"result": result}, table


def _cmd_biv_check(args):
    scenario = _load_scenario(args.scenario) if args.scenario else {}
    spec = BivariantSpec.from_json(scenario.get("bivariant", {"kind": "cover_log"}))
    budget = args.budget or scenario.get("budget", 100)
    seed = args.seed if args.seed is not None else scenario.get("seed", DEFAULT_SEED)
    report = check_upgrading_proper(spec, seed, budget)
    table = [f"proper-upgrading laws for {spec}: "
             f"{'pass' if report.passed else 'FAIL'} on {report.checked} instances"]
    if not report.passed:
        table.append("counterexample: " + json.dumps(report.counterexample, sort_keys=True))
    return (0 if report.passed else 2), {"result": report.to_json()}, table


def _mean_inputs(scenario, args):
    module = ShiftModule.from_json(_require(scenario, "module"))
    spec = WeakLengthSpec.from_json(_require(scenario, "weak_length"))
    folner = scenario.get("folner", {"kind": "boxes"})
    n_max = args.n_max or folner.get("n_max") or default_n_max(module)
    seq = FolnerBoxes(module.group, n_max)
    return module, spec, seq


def _cmd_mean(args):
    scenario = _load_scenario(args.scenario)
    module, spec, seq = _mean_inputs(scenario, args)
    witness = _parse_witness(module, _require(scenario, "witness"))
    est = ratio_sequence(module, witness, spec, seq)
    return 0, {"result": est.to_json()}, _estimate_table(est.to_json())


def _cmd_addition(args):
    scenario = _load_scenario(args.scenario)
    module, spec, seq = _mean_inputs(scenario, args)
    sub_data = _require(scenario, "submodule")
    if sub_data["closure"] == "coeff_subgroup":
        submodule = SubmodulePresentation.coeff_subgroup(sub_data["generators"])
    elif sub_data["closure"] == "principal_z":
        gens = [tuple((tuple(g), tuple(c)) for g, c in items)
                for items in sub_data["generators"]]
        submodule = SubmodulePresentation("principal_z", (), tuple(gens))
    else:
        raise ConfigurationError(f"unknown closure {sub_data['closure']!r}")
    witnesses = _require(scenario, "witnesses")
    w_sub = _parse_witness(module, _require(witnesses, "submodule"))
    w_total = _parse_witness(module, _require(witnesses, "total"))
    w_lift = _parse_witness(module, _require(witnesses, "quotient"))
    report = addition_report(module, submodule, w_sub, w_total, w_lift, spec, seq)
    table = [f"addition formula verdict: {report.verdict}",
             f"easy direction: {'holds' if report.easy_direction_ok else 'VIOLATED'}",
             "", "total module:"]
    table += _estimate_table(report.total.to_json())
    table += ["", "submodule:"]
    table += _estimate_table(report.submodule.to_json())
    table += ["", "quotient:"]
    table += _estimate_table(report.quotient.to_json())
    code = 0 if report.easy_direction_ok and report.verdict != "VALUES-DIFFER" else 2
    return code, {"result": report.to_json()}, table


def _cmd_example(args):
    if args.name == "list":
        return _cmd_list_examples(args)
    report = run_example(args.name, args.n_max)
    table = [f"example {report.name}: {'PASS' if report.passed else 'FAIL'}",
             report.description, ""]
    rows = [[("ok" if c.ok else "FAIL"), c.label, c.computed, c.expected]
            for c in report.checks]
    table += _render_table(rows, ["status", "check", "computed", "expected"])
    return (0 if report.passed else 2), {"result": report.to_json()}, table


def _cmd_list_examples(args):
    names = example_names()
    return 0, {"result": {"examples": names}}, list(names)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "both"], default="both")
    common.add_argument("--out", help="also write the JSON report to this path")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--n-max", type=int, default=None, dest="n_max")

    parser = argparse.ArgumentParser(
        prog="mwl",
        description="exact weak-length, bivariant-upgrading and mean-value toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, needs_scenario in (
        ("wl-eval", True), ("wl-axioms", True), ("biv-eval", True),
        ("biv-check", False), ("mean", True), ("addition", True),
    ):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--scenario", required=needs_scenario)

    p_example = sub.add_parser("example", parents=[common])
    p_example.add_argument("name")
    sub.add_parser("list-examples", parents=[common])
    return parser


_HANDLERS = {
    "wl-eval": _cmd_wl_eval,
    "wl-axioms": _cmd_wl_axioms,
    "biv-eval": _cmd_biv_eval,
    "biv-check": _cmd_biv_check,
    "mean": _cmd_mean,
    "addition": _cmd_addition,
    "example": _cmd_example,
    "list-examples": _cmd_list_examples,
}


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads_limit()  # validated; current kernels are single-threaded
        code, report, table = _HANDLERS[args.command](args)
    except (ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"command": args.command, **report, "exit_code": code}
    payload = json.dumps(report, sort_keys=True, indent=2)
    if args.format in ("json", "both"):
        print(payload)
    if args.format in ("table", "both"):
        print("\n".join(table))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    return code


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

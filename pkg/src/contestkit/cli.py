"""Command-line interface.

Exit codes: 0 on success, 1 when input fails validation (malformed files,
broken invariants, undefined values), 2 on usage errors (unknown flags,
missing arguments).  All file formats are the versioned JSON documents the
library modules define; `template` emits blank starting points for each.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from contestkit.errors import ContestkitError, InputError
from contestkit.formal import (
    DEFAULT_AGGREGATE_WEIGHTS,
    aggregate_contest,
    ledger_from_json,
    make_aggregate_weights,
    partition_modes,
    template_ledger,
)
from contestkit.jsonio import display_number, load_json_file
from contestkit.questionnaire import (
    ScoredAssessment,
    blank_sheet,
    score_assessment,
    sheet_from_json,
)
from contestkit.reporting import (
    REPORT_FORMATS,
    build_bundle,
    render_report,
    scenario_table_markdown,
    score_table_markdown,
)
from contestkit.scoring import (
    WeightConfig,
    default_weight_config,
    validate_weights,
    weights_from_json,
    weights_to_json,
)
from contestkit.store import WorkspaceStore
from contestkit.taxonomy import (
    LEVEL_VALUES,
    RELIANCE_VALUES,
    classify,
    default_catalog,
    matrix_grid_text,
    resolve_requirements,
)
from contestkit.whatif import (
    POLICIES,
    apply_scenario,
    scenario_from_json,
    template_scenario,
    with_policy,
)

TEMPLATE_KINDS = ("sheet", "weights", "scenario", "ledger")


def _print_json(document: dict) -> None:
    print(json.dumps(document, indent=2, ensure_ascii=True))


def _load_config(path: str | None) -> WeightConfig:
    if path is None:
        return default_weight_config()
    return weights_from_json(load_json_file(path), path)


def _score_sheet_file(path: str, config: WeightConfig) -> ScoredAssessment:
    sheet = sheet_from_json(load_json_file(path), path)
    return score_assessment(sheet, config)


# ---- subcommand handlers ----


def cmd_template(args) -> int:
    if args.kind == "sheet":
        _print_json(blank_sheet())
    elif args.kind == "weights":
        _print_json(weights_to_json(default_weight_config()))
    elif args.kind == "scenario":
        _print_json(template_scenario())
    else:
        _print_json(template_ledger())
    return 0


def cmd_score(args) -> int:
    config = _load_config(args.weights)
    scored = _score_sheet_file(args.sheet, config)
    bundle = build_bundle(scored, config)
    print(score_table_markdown(bundle))
    return 0


def _resolve_baseline_near(scenario_path: str):
    """Baseline resolver for file-based scenarios.

    Supports {'path': relative-or-absolute}, {'sheet': embedded document},
    and {'id': stored assessment} via the workspace.
    """
    base_dir = Path(scenario_path).resolve().parent

    def resolve(block: dict) -> ScoredAssessment:
        if "path" in block:
            target = Path(block["path"])
            if not target.is_absolute():
                target = base_dir / target
            sheet = sheet_from_json(load_json_file(target), str(target))
        elif "sheet" in block:
            sheet = sheet_from_json(block["sheet"], "baseline")
        elif "id" in block:
            store = WorkspaceStore()
            sheet = sheet_from_json(
                store.load("assessments", str(block["id"])), "baseline"
            )
        else:
            raise InputError(
                "scenario baseline must give a 'path', an embedded 'sheet', "
                "or a stored 'id'",
                "baseline",
            )
        return score_assessment(sheet)

    return resolve


def cmd_whatif(args) -> int:
    scenario = scenario_from_json(
        load_json_file(args.scenario), _resolve_baseline_near(args.scenario),
        args.scenario,
    )
    results = tuple(
        apply_scenario(with_policy(scenario, policy)) for policy in POLICIES
    )
    bundle = build_bundle(scenario.baseline, scenario_results=results)
    print(scenario_table_markdown(bundle))
    requested = next(r for r in results if r.policy == scenario.policy)
    print(
        f"\nScenario policy {scenario.policy}: total "
        f"{display_number(requested.new_total)}"
    )
    return 0


def cmd_taxonomy(args) -> int:
    catalog = default_catalog()
    if args.classify is not None:
        if args.reliance is None:
            print(
                "error: --classify needs --reliance (the reliance axis is "
                "context, not derived from scores)",
                file=sys.stderr,
            )
            return 2
        scored = _score_sheet_file(args.classify, default_weight_config())
        placement = classify(args.reliance, scored.cas.total)
        print(f"CAS total: {display_number(scored.cas.total)}")
        print(f"Reliance: {placement.reliance}")
        print(f"Contestability level: {placement.level}")
        if placement.flags:
            print(f"Flags: {', '.join(sorted(placement.flags))}")
        _print_cell_criteria(
            resolve_requirements(placement.reliance, placement.level, catalog),
            catalog,
        )
        return 0
    if args.reliance is not None or args.level is not None:
        if args.reliance is None or args.level is None:
            print(
                "error: requirements lookup needs both --reliance and --level",
                file=sys.stderr,
            )
            return 2
        cell = catalog.cell(args.reliance, args.level)
        requirements = resolve_requirements(args.reliance, args.level, catalog)
        print(f"Cell: reliance={args.reliance}, level={args.level}")
        if cell.flags:
            print(f"Flags: {', '.join(sorted(cell.flags))}")
        if cell.examples:
            print(f"Examples: {'; '.join(cell.examples)}")
        _print_cell_criteria(requirements, catalog)
        return 0
    print(matrix_grid_text(catalog))
    return 0


def _print_cell_criteria(criteria, catalog) -> None:
    cluster_names = {cluster.id: cluster.name for cluster in catalog.clusters}
    current = None
    for criterion in criteria:
        if criterion.cluster != current:
            current = criterion.cluster
            print(f"\n{cluster_names[current]}:")
        dims = ", ".join(criterion.dimensions)
        print(f"  - {criterion.name} ({dims})")


def cmd_ledger_eval(args) -> int:
    ledger = ledger_from_json(load_json_file(args.file), args.file)
    given = (args.alpha, args.beta, args.gamma)
    if any(value is not None for value in given):
        if any(value is None for value in given):
            print(
                "error: give all of --alpha/--beta/--gamma or none",
                file=sys.stderr,
            )
            return 2
        weights = make_aggregate_weights(args.alpha, args.beta, args.gamma)
    else:
        weights = DEFAULT_AGGREGATE_WEIGHTS
    result = aggregate_contest(ledger, weights)
    modes = partition_modes(ledger)
    if result.xlc.holds:
        print("XLC: holds (every decision has an actionable explanation for "
              "every stakeholder)")
    else:
        decision, stakeholder = result.xlc.counterexample
        print(
            f"XLC: fails at decision {decision!r} for stakeholder "
            f"{stakeholder!r}"
        )
    if result.slc.holds:
        print("SLC: holds (every stakeholder has a successful contestation)")
    else:
        print(
            f"SLC: fails — {result.slc.missing_stakeholder!r} has no "
            f"successful contestation"
        )
    for stakeholder in sorted(result.success_rates):
        rate = result.success_rates[stakeholder]
        print(f"Success rate {stakeholder}: {display_number(rate)}")
    print(f"Minimum success rate: {display_number(result.min_success_rate)}")
    for mode in sorted(modes):
        tally = modes[mode]
        rate = tally.success_rate
        rate_text = display_number(rate) if rate is not None else "undefined"
        print(
            f"Mode {mode}: {tally.successes}/{tally.attempts} successful "
            f"(rate {rate_text})"
        )
    print(f"Aggregate: {display_number(result.total)}")
    return 0


def cmd_report(args) -> int:
    config = _load_config(args.weights)
    scored = _score_sheet_file(args.sheet, config)
    bundle = build_bundle(scored, config)
    sys.stdout.buffer.write(render_report(bundle, args.format))
    sys.stdout.buffer.flush()
    return 0


def cmd_validate(args) -> int:
    document = load_json_file(args.file)
    if not isinstance(document, dict):
        raise InputError(f"{args.file}: document must be a JSON object")
    if "answers" in document:
        sheet_from_json(document, args.file)
        print(f"OK: {args.file} is a valid answer sheet")
    elif "modifications" in document:
        scenario_from_json(document, _resolve_baseline_near(args.file), args.file)
        print(f"OK: {args.file} is a valid scenario")
    elif "instance" in document:
        ledger_from_json(document, args.file)
        print(f"OK: {args.file} is a valid contestation ledger")
    elif "entries" in document:
        config = weights_from_json(document, args.file)
        report = validate_weights(config)
        if not report.ok:
            for violation in report.violations:
                print(f"invalid: {violation.message}", file=sys.stderr)
            return 1
        print(f"OK: {args.file} is a valid weight config")
    else:
        raise InputError(
            f"{args.file}: unrecognized document (expected an answer sheet, "
            f"scenario, ledger, or weight config)"
        )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from contestkit.service import create_app

    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        print(
            f"error: --addr must look like HOST:PORT, got {args.addr!r}",
            file=sys.stderr,
        )
        return 2
    store = WorkspaceStore(args.workspace)
    app = create_app(store, static_dir=args.ui)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


# ---- parser ----


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contestkit",
        description=(
            "Score, probe, and report on how contestable an automated "
            "decision system is."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_template = sub.add_parser(
        "template", help="emit a blank document to fill in"
    )
    p_template.add_argument(
        "--kind", choices=TEMPLATE_KINDS, default="sheet",
        help="document kind (default: sheet)",
    )
    p_template.set_defaults(handler=cmd_template)

    p_score = sub.add_parser("score", help="score an answer sheet")
    p_score.add_argument("sheet", help="answer-sheet JSON file")
    p_score.add_argument("--weights", help="weight-config JSON file")
    p_score.set_defaults(handler=cmd_score)

    p_whatif = sub.add_parser(
        "whatif", help="evaluate a what-if scenario under both policies"
    )
    p_whatif.add_argument("scenario", help="scenario JSON file")
    p_whatif.set_defaults(handler=cmd_whatif)

    p_tax = sub.add_parser(
        "taxonomy", help="browse the criteria matrix or classify a sheet"
    )
    p_tax.add_argument("--reliance", choices=RELIANCE_VALUES)
    p_tax.add_argument("--level", choices=LEVEL_VALUES)
    p_tax.add_argument(
        "--classify", metavar="SHEET",
        help="score a sheet and place it on the matrix (needs --reliance)",
    )
    p_tax.set_defaults(handler=cmd_taxonomy)

    p_ledger = sub.add_parser("ledger", help="formal contestation ledgers")
    ledger_sub = p_ledger.add_subparsers(dest="ledger_command", metavar="ACTION")
    p_eval = ledger_sub.add_parser("eval", help="evaluate a ledger file")
    p_eval.add_argument("file", help="ledger JSON file")
    p_eval.add_argument("--alpha", type=float, default=None)
    p_eval.add_argument("--beta", type=float, default=None)
    p_eval.add_argument("--gamma", type=float, default=None)
    p_eval.set_defaults(handler=cmd_ledger_eval)

    p_report = sub.add_parser("report", help="render a full report")
    p_report.add_argument("sheet", help="answer-sheet JSON file")
    p_report.add_argument(
        "--format", choices=REPORT_FORMATS, default="markdown"
    )
    p_report.add_argument("--weights", help="weight-config JSON file")
    p_report.set_defaults(handler=cmd_report)

    p_validate = sub.add_parser(
        "validate", help="check any toolkit document without scoring"
    )
    p_validate.add_argument("file", help="JSON document to validate")
    p_validate.set_defaults(handler=cmd_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument(
        "--addr", default="127.0.0.1:8000", help="bind address HOST:PORT"
    )
    p_serve.add_argument(
        "--workspace", default=None,
        help="workspace directory (default: $CONTESTKIT_WORKSPACE or "
             "./.contestkit)",
    )
    p_serve.add_argument(
        "--ui", default=None, help="directory of built UI assets to serve"
    )
    p_serve.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "handler", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except ContestkitError as exc:
        message = str(exc)
        field = getattr(exc, "field", None)
        if field:
            message += f" (field: {field})"
        print(f"error: {message}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line front end: ``g2sim <kind> [--key value ...] --out DIR``.

Exit status is 0 on success, 1 for invalid scenarios, 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from g2sim.scenario import (
    KINDS,
    SCHEMAS,
    ScenarioError,
    parse_scenario,
    run_scenario,
    scenario_from_mapping,
    write_outputs,
)

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def preset_names() -> list[str]:
    files = resources.files("g2sim").joinpath("presets").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load_preset(name: str) -> bytes:
    return resources.files("g2sim").joinpath("presets", f"{name}.json").read_bytes()


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2sim", description="Second-order correlation sweeps for BS and MZI setups.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file or a bundled reference-plot preset")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("scenario", nargs="?", help="path to a JSON scenario file")
    src.add_argument("--preset", choices=preset_names(), help="bundled reference-plot preset")
    run.add_argument("--out", help="output directory (default: scenario 'out' or '.')")
    run.add_argument("--seed", type=int, help="override the seed of stochastic kinds")

    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} sweep")
        p.add_argument("--config", help="JSON scenario file to start from")
        p.add_argument("--out", help="output directory (default: scenario 'out' or '.')")
        for key, spec in SCHEMAS[kind].items():
            conv = _parse_bool if spec.kind is bool else spec.kind
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=conv,
                           metavar=spec.kind.__name__.upper(),
                           help=f"default: {spec.default}")
    return parser


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            text = load_preset(args.preset) if args.preset else _read(args.scenario)
            scenario = parse_scenario(text)
            if args.seed is not None:
                if "seed" not in SCHEMAS[scenario.kind]:
                    raise ScenarioError(f"seed: kind {scenario.kind!r} takes no seed")
                scenario = scenario_from_mapping(
                    {"kind": scenario.kind, **scenario.params, "seed": args.seed})
        else:
            base = {}
            if args.config:
                cfg = parse_scenario(_read(args.config))
                if cfg.kind != args.command:
                    raise ScenarioError(f"kind: config is {cfg.kind!r}, subcommand is {args.command!r}")
                base = dict(cfg.params)
            overrides = {k: getattr(args, k) for k in SCHEMAS[args.command]
                         if getattr(args, k) is not None}
            scenario = scenario_from_mapping({**base, **overrides, "kind": args.command})
        table = run_scenario(scenario)
        out_dir = args.out or scenario.params.get("out", ".")
        csv_path, plot_path = write_outputs(table, scenario.kind, out_dir)
    except ScenarioError as exc:
        print(f"g2sim: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"g2sim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {csv_path} ({len(table.rows)} rows) and {plot_path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

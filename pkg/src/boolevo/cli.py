"""Command-line interface.

Subcommands: ``search`` (one run), ``campaign`` (repeated runs with exports),
``verify`` (inspect a truth table in hex), ``orbits`` and ``bounds`` (lookup
tables).  Every option can also come from an INI file via ``--config``; the
file supplies defaults and explicit command-line flags win.
"""

from __future__ import annotations

import argparse
import configparser
import sys

from .engine import RunConfig, run
from .harness import Campaign, SummaryRow, run_campaign, verify_hex
from .orbits import compute_orbits, orbit_count
from .truthtable import bounds


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="number of variables")
    parser.add_argument(
        "--encoding", choices=("bitstring", "float", "tree"), default="bitstring"
    )
    parser.add_argument(
        "--mode",
        choices=("general", "rs"),
        default="general",
        help="search the full space or only rotation-symmetric functions",
    )
    parser.add_argument("--algorithm", choices=("sst", "de"), default="sst")
    parser.add_argument("--population-size", type=int, default=50)
    parser.add_argument("--budget", type=int, default=100_000, dest="evaluation_budget")
    parser.add_argument("--p-mutation", type=float, default=0.5)
    parser.add_argument("--decode", type=int, default=3, help="bits per float entry")
    parser.add_argument("--max-depth", type=int, default=7)
    parser.add_argument("--max-nodes", type=int, default=500)
    parser.add_argument("--de-weight", type=float, default=0.5)
    parser.add_argument("--de-crossover", type=float, default=0.9)
    parser.add_argument("--ls", choices=("ls1", "ls2", "ls3"), default=None)
    parser.add_argument("--ls-fraction", type=float, default=0.05)
    parser.add_argument("--ls-trials", type=int, default=25)
    parser.add_argument("--target-nl", type=int, default=None, dest="target_nonlinearity")
    parser.add_argument("--time-limit", type=float, default=None)
    parser.add_argument("--label", default=None)


def _config_from_args(args, seed) -> RunConfig:
    return RunConfig(
        n=args.n,
        encoding=args.encoding,
        mode=args.mode,
        algorithm=args.algorithm,
        population_size=args.population_size,
        evaluation_budget=args.evaluation_budget,
        p_mutation=args.p_mutation,
        decode=args.decode,
        max_depth=args.max_depth,
        max_nodes=args.max_nodes,
        de_weight=args.de_weight,
        de_crossover=args.de_crossover,
        ls=args.ls,
        ls_fraction=args.ls_fraction,
        ls_trials=args.ls_trials,
        target_nonlinearity=args.target_nonlinearity,
        time_limit=args.time_limit,
        seed=seed,
        label=args.label,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolevo",
        description="Evolve Boolean functions with high nonlinearity.",
    )
    parser.add_argument("--config", help="INI file with per-subcommand defaults")
    commands = parser.add_subparsers(dest="command", required=True)

    search = commands.add_parser("search", help="run one evolutionary search")
    _add_run_options(search)
    search.add_argument("--seed", type=int, default=None)
    search.add_argument("--out", default=None, help="append the run record here (JSON lines)")

    campaign = commands.add_parser("campaign", help="repeat a search over many seeds")
    _add_run_options(campaign)
    campaign.add_argument("--runs", type=int, default=30)
    campaign.add_argument("--seed-base", type=int, default=0)
    campaign.add_argument("--workers", type=int, default=1)
    campaign.add_argument(
        "--out", default=None, help="directory for runs.jsonl, summary.csv, boxplot.csv"
    )

    verify = commands.add_parser("verify", help="report properties of a hex truth table")
    verify.add_argument("hex", help="truth table, 2**n / 4 hex digits")
    verify.add_argument("--n", type=int, required=True)

    orbits = commands.add_parser("orbits", help="rotation-orbit structure of {0,1}^n")
    orbits.add_argument("--n", type=int, required=True)
    orbits.add_argument("--list", action="store_true", help="print every representative")

    bounds_cmd = commands.add_parser("bounds", help="nonlinearity bounds for odd n")
    bounds_cmd.add_argument("--n", type=int, required=True)

    return parser


def _load_ini_defaults(path: str, command: str) -> dict:
    ini = configparser.ConfigParser()
    read = ini.read(path)
    if not read:
        raise OSError(f"cannot read config file {path!r}")
    if command not in ini:
        return {}
    # keys use flag spelling without the leading dashes; values stay strings
    # so argparse applies each option's type exactly as it would on the CLI
    return dict(ini[command].items())


def _apply_ini_defaults(subparser, defaults: dict, command: str) -> None:
    dest_by_flag = {}
    for action in subparser._actions:
        for option in action.option_strings:
            dest_by_flag[option.lstrip("-")] = action.dest
    resolved = {}
    unknown = []
    for key, value in defaults.items():
        flag = key.replace("_", "-")
        if flag in dest_by_flag:
            resolved[dest_by_flag[flag]] = value
        else:
            unknown.append(key)
    if unknown:
        raise ValueError(f"unknown config keys for {command}: {sorted(unknown)}")
    subparser.set_defaults(**resolved)
    for action in subparser._actions:
        if action.dest in resolved and action.required:
            action.required = False


def _find_command(argv: list[str]) -> str | None:
    for token in argv:
        if token in ("search", "campaign", "verify", "orbits", "bounds"):
            return token
    return None


def _summary_lines(rows: list[SummaryRow]) -> list[str]:
    out = []
    for row in rows:
        out.append(
            f"{row.label}: runs={row.num_runs} max={row.max_fitness:.4f} "
            f"avg={row.avg_fitness:.4f} std={row.std_fitness:.4f} "
            f"best_nl={row.max_nonlinearity}"
        )
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            command = _find_command(argv)
            if command is None:
                parser.error("a subcommand is required")
            defaults = _load_ini_defaults(known.config, command)
            if defaults:
                sub = parser._subparsers._group_actions[0].choices[command]  # type: ignore[union-attr]
                _apply_ini_defaults(sub, defaults, command)
        args = parser.parse_args(argv)
        return _dispatch(args)
    except (ValueError, LookupError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "search":
        record = run(_config_from_args(args, args.seed))
        print(f"label          {record.label}")
        print(f"seed           {record.seed}")
        print(f"evaluations    {record.evaluations}")
        print(f"stop reason    {record.stop_reason}")
        print(f"best fitness   {record.best_fitness:.6f}")
        print(f"best nl        {record.best_nonlinearity}")
        print(f"truth table    {record.best_truth_table}")
        print(f"wall time      {record.wall_time_s:.2f}s")
        if args.out:
            with open(args.out, "a", encoding="utf-8") as handle:
                handle.write(record.to_json() + "\n")
            print(f"record appended to {args.out}")
        return 0

    if args.command == "campaign":
        config = _config_from_args(args, None)
        campaign = Campaign(
            config=config,
            num_runs=args.runs,
            seed_base=args.seed_base,
            workers=args.workers,
        )
        records, rows = run_campaign(campaign, out_dir=args.out)
        reached = sum(1 for r in records if r.target_reached)
        for line in _summary_lines(rows):
            print(line)
        if config.target_nonlinearity is not None:
            print(f"target reached in {reached}/{len(records)} runs")
        if args.out:
            print(f"artefacts written to {args.out}")
        return 0

    if args.command == "verify":
        report = verify_hex(args.hex, args.n)
        p = report.properties
        print(f"n                  {p.n}")
        print(f"nonlinearity       {p.nonlinearity}")
        print(f"balanced           {'yes' if p.balanced else 'no'} (weight {p.hamming_weight})")
        print(f"max |W|            {p.max_abs_walsh} (x{p.num_max_values})")
        print(f"fitness            {p.fitness:.6f}")
        print(f"rotation symmetric {'yes' if report.rotation_symmetric else 'no'}")
        for line in report.classification:
            print(line)
        return 0

    if args.command == "orbits":
        table = compute_orbits(args.n)
        print(f"n               {args.n}")
        print(f"orbits          {orbit_count(args.n)}")
        print(f"largest orbit   {int(table.orbit_sizes.max())}")
        print(f"fixed points    {int((table.orbit_sizes == 1).sum())}")
        if args.list:
            for rep, size in zip(table.representatives, table.orbit_sizes):
                print(f"{int(rep):>6}  size {int(size)}")
        return 0

    if args.command == "bounds":
        b = bounds(args.n)
        print(f"n               {b.n}")
        print(f"quadratic       {b.quadratic}")
        print(f"best known      {b.best_known}")
        print(f"upper bound     {b.upper}")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

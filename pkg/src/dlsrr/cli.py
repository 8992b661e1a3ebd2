"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 scenario or runtime failure,
3 tables ran but at least one quantity missed its tolerance.
"""
import argparse
import dataclasses
import sys

from dlsrr import flight, scenario_io, thermal


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for
    # scenario/runtime failures and wants 1 here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    parser = _Parser(
        prog="dlsrr",
        description=(
            "Flight and aerothermal simulation of a drone-launched "
            "short-range rocket."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    sub.required = True
    descriptions = {
        "ascent": "powered ascent to apogee",
        "impact": "ascent plus warhead descent to the ground",
        "thermal": "wall-temperature histories over the burn",
        "sweep": "best firing angle across release conditions",
        "tables": "recompute bundled reference tables and check tolerances",
    }
    for name in scenario_io.SUBCOMMANDS:
        p = sub.add_parser(name, help=descriptions[name])
        p.add_argument("--scenario", required=True, metavar="FILE",
                       help="scenario document to run")
        p.add_argument("--out", required=True, metavar="DIR",
                       help="directory for CSV output and report.txt")
        p.add_argument("--dt", type=float, default=None, metavar="S",
                       help="integrator step in seconds (overrides the scenario)")
        p.add_argument("--qk", choices=sorted(thermal.QK_VARIANTS),
                       default="klein",
                       help="stagnation heating constant variant")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        scenario = scenario_io.parse_scenario(args.scenario)
        if args.dt is not None:
            if args.dt <= 0.0:
                raise scenario_io.ScenarioError("--dt must be positive")
            scenario = dataclasses.replace(scenario, dt=args.dt)
        constants = thermal.constants_for(args.qk)
        report = scenario_io.run(
            args.subcommand, scenario, args.out, constants=constants
        )
    except (scenario_io.ScenarioError, flight.SimulationError,
            flight.OptimizationError, ValueError, OSError) as exc:
        print(f"dlsrr: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_text())
    return 0 if report.ok else 3


if __name__ == "__main__":
    raise SystemExit(main())

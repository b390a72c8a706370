"""Command-line front end.

Subcommands: run a scenario file, sweep a parameter (optionally through a
squeezing spectrum), emit conditional-ellipse figure data, and write out the
built-in scenario files.  Exit codes: 0 success, 1 usage or parse error,
2 physics violation, 3 output I/O error.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .builders import build_symmetric_scheme
from .criteria import conditional_ellipse
from .errors import PhysicsError, ScenarioError
from .output import ellipse_csv, report_csv, report_json, sweep_csv
from .runner import run, sweep, sweep_spectrum
from .scenario import parse_scenario
from .spectrum import SqueezingSpectrum

BUILTIN_SCENARIOS = ("paper.pol", "symmetric.pol")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def builtin_text(name: str) -> str:
    return resources.files("cvpol").joinpath(f"data/{name}").read_text(encoding="utf-8")


def _read_scenario(path: str) -> tuple[str, str]:
    """Return (name, text); bare built-in names resolve to the bundled files."""
    p = Path(path)
    if p.exists():
        return p.name, p.read_text(encoding="utf-8")
    if path in BUILTIN_SCENARIOS:
        return path, builtin_text(path)
    raise UsageError(f"scenario file not found: {path}")


def _parse_sets(pairs: list[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep or not name:
            raise UsageError(f"--set expects NAME=VALUE, got {pair!r}")
        try:
            overrides[name] = float(raw)
        except ValueError:
            raise UsageError(f"--set value for {name!r} is not a number: {raw!r}")
    return overrides


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _cmd_run(args) -> int:
    name, text = _read_scenario(args.file)
    spec = parse_scenario(text)
    report = run(spec, _parse_sets(args.set))
    if args.format == "json":
        rendered = report_json(report, name)
    else:
        rendered = report_csv(report, name)
    _write(rendered, args.out)
    return 0


def _parse_spectrum(raw: str) -> SqueezingSpectrum:
    parts = raw.split(":")
    if len(parts) != 3:
        raise UsageError("--spectrum expects VMIN:VMAX:CORNER_MHZ")
    try:
        v_min, v_max, corner = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--spectrum values are not numbers: {raw!r}")
    return SqueezingSpectrum(v_min, v_max, corner)


def _cmd_sweep(args) -> int:
    name, text = _read_scenario(args.file)
    spec = parse_scenario(text)
    overrides = _parse_sets(args.set)
    if args.spectrum is not None:
        table = sweep_spectrum(spec, _parse_spectrum(args.spectrum),
                               args.from_, args.to, args.steps, overrides,
                               freq_name=args.param)
    else:
        table = sweep(spec, args.param, args.from_, args.to, args.steps, overrides)
    _write(sweep_csv(table), args.out)
    return 0


def _cmd_fig4(args) -> int:
    v = args.squeezing
    if not 0.0 < v <= 1.0:
        raise PhysicsError(f"squeezed variance must lie in (0, 1], got {v}")
    built = build_symmetric_scheme(alpha=args.alpha, v_plus=v, v_minus=1.0 / v)
    points = [
        conditional_ellipse(built.register, built.beam_x, built.beam_y, index)
        for index in (1, 2, 3)
    ]
    _write(ellipse_csv(points), args.out)
    return 0


def _cmd_init(args) -> int:
    target = Path(args.dir)
    target.mkdir(parents=True, exist_ok=True)
    for name in BUILTIN_SCENARIOS:
        destination = target / name
        if destination.exists() and not args.force:
            raise OSError(f"{destination} exists; use --force to overwrite")
        destination.write_text(builtin_text(name), encoding="utf-8", newline="\n")
        print(f"wrote {destination}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="cvpol",
        description="Gaussian polarization-entanglement simulator and criteria calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file and print its report")
    p_run.add_argument("file", help="scenario file path, or a built-in name "
                                    f"({', '.join(BUILTIN_SCENARIOS)})")
    p_run.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                       help="override a scenario parameter (repeatable)")
    p_run.add_argument("--format", choices=("json", "csv"), default="json")
    p_run.add_argument("--out", default=None, help="output path (default: stdout)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep a parameter and write CSV rows")
    p_sweep.add_argument("file")
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="from_", type=float, required=True)
    p_sweep.add_argument("--to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--set", action="append", default=[], metavar="NAME=VALUE")
    p_sweep.add_argument("--spectrum", default=None, metavar="VMIN:VMAX:CORNER_MHZ",
                         help="treat the swept parameter as a sideband frequency in "
                              "MHz and feed vplus/vminus from this Lorentzian model")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig4 = sub.add_parser("fig4", help="emit conditional-knowledge ellipse CSV "
                                         "for the four-squeezer scheme")
    p_fig4.add_argument("--squeezing", type=float, default=0.1,
                        help="pure squeezed variance V in (0, 1]")
    p_fig4.add_argument("--alpha", type=float, default=10.0,
                        help="overall beam amplitude scale")
    p_fig4.add_argument("--out", default=None)
    p_fig4.set_defaults(func=_cmd_fig4)

    p_init = sub.add_parser("init", help="write the built-in scenario files")
    p_init.add_argument("--dir", default=".")
    p_init.add_argument("--force", action="store_true")
    p_init.set_defaults(func=_cmd_init)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        # argparse already printed its own usage text; print anything else
        if str(exc):
            sys.stderr.write(f"error: {exc}\n")
        return 1
    except ScenarioError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except PhysicsError as exc:
        sys.stderr.write(f"physics error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

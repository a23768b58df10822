"""Command-line entry point: ``ghostlight <command> ...``.

Exit codes: 0 success, 1 configuration/usage error, 2 numerical or domain
error, 3 verification failure.
"""

import argparse
import dataclasses
import sys
import warnings

from . import __version__
from .errors import ConfigError, GhostlightError
from .experiments import export
from .experiments.presets import PRESETS, preset
from .experiments.runner import run_scenario, run_series, verify
from .experiments.scenario import load_scenario
from .source import BlackbodySpectrumParams, coherence_fit

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _parser():
    p = _Parser(prog="ghostlight", description="Thermal-light ghost imaging simulator.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="run one scenario and write its scan CSV")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out")
    sim.add_argument("--engine", choices=("reduced", "brute"))
    sim.add_argument("--emit-plot", action="store_true")

    pre = sub.add_parser("preset", help="run a named scenario or sweep")
    pre.add_argument("name", choices=sorted(PRESETS))
    pre.add_argument("--out")
    pre.add_argument("--engine", choices=("reduced", "brute"))
    pre.add_argument("--emit-plot", action="store_true")

    sw = sub.add_parser("sweep", help="run the [sweep] of a config and write V/Q rows")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", required=True)
    sw.add_argument("--emit-plot", action="store_true")

    ver = sub.add_parser("verify", help="compare the reduced and brute engines")
    ver.add_argument("--config", required=True)
    ver.add_argument("--rtol", type=float)

    bb = sub.add_parser("blackbody", help="fit the coherence width of blackbody light")
    bb.add_argument("--temperature", type=float, required=True)
    bb.add_argument("--mode", choices=("scalar", "transverse"), default="scalar")
    return p


def _log(msg):
    print(msg, file=sys.stderr)


def _emit_scan(scenario, out, emit_plot, engine=None):
    if engine is not None:
        scenario = dataclasses.replace(scenario, engine=dataclasses.replace(scenario.engine, engine=engine))
    result = run_scenario(scenario)
    text = export.scan_csv(result.scan)
    if out:
        export.write_text(out, text)
        if emit_plot:
            export.write_text(export.plot_path(out), export.gnuplot_scan(out, scenario.name or "scan"))
    else:
        sys.stdout.write(text)
    q = "n/a" if result.Q is None else f"{result.Q:.6g}"
    peaks = ", ".join(f"{p:.6g}" for p in result.peaks) or "none"
    _log(f"V = {result.V:.6g}  Q = {q}  peaks(mm) = {peaks}")
    return EXIT_OK


def _emit_sweep(scenario, out, emit_plot):
    sweep = scenario.sweep
    series = run_series(scenario)
    paths = []
    for value, rows in series.items():
        text = export.sweep_csv(rows)
        if value is None:
            path = out
        else:
            path = export.series_path(out, sweep.series_parameter, value) if out else None
        if path:
            export.write_text(path, text)
            paths.append(path)
        else:
            sys.stdout.write(f"# {sweep.series_parameter} = {value:g}\n{text}")
        failed = sum(1 for r in rows if r.error)
        if failed:
            _log(f"{failed} sweep row(s) failed; see the error column")
    if emit_plot and paths:
        labels = ["" if v is None else f"{sweep.series_parameter.split('.')[-1]}={v:g}" for v in series]
        target = export.plot_path(out)
        export.write_text(target, export.gnuplot_sweep(paths, sweep.parameter, labels))
    return EXIT_OK


def _run(args):
    if args.command == "simulate":
        return _emit_scan(load_scenario(args.config), args.out, args.emit_plot, args.engine)
    if args.command == "preset":
        scenario = preset(args.name)
        if scenario.sweep is not None:
            if args.engine:
                scenario = dataclasses.replace(
                    scenario, engine=dataclasses.replace(scenario.engine, engine=args.engine)
                )
            return _emit_sweep(scenario, args.out, args.emit_plot)
        return _emit_scan(scenario, args.out, args.emit_plot, args.engine)
    if args.command == "sweep":
        scenario = load_scenario(args.config)
        if scenario.sweep is None:
            raise ConfigError("config has no [sweep] section", "sweep")
        return _emit_sweep(scenario, args.out, args.emit_plot)
    if args.command == "verify":
        if args.rtol is not None and not args.rtol > 0:
            raise ConfigError("rtol must be positive", "--rtol")
        report = verify(load_scenario(args.config), args.rtol)
        print(f"gamma {report.gamma:.3e}  I1 {report.I1:.3e}  I2 {report.I2:.3e}  rtol {report.rtol:.1e}")
        print("PASS" if report.passed else "FAIL")
        return EXIT_OK if report.passed else EXIT_VERIFY
    if args.command == "blackbody":
        fit = coherence_fit(BlackbodySpectrumParams(args.temperature, mode=args.mode))
        print(f"{fit.sigma_g:.17g}")
        _log(f"sigma_g = {fit.sigma_g:.6g} mm at T = {args.temperature:g} K (fit RMS {fit.rms:.3g})")
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv=None):
    args = _parser().parse_args(argv)
    warnings.simplefilter("ignore", category=Warning)
    try:
        return _run(args)
    except ConfigError as exc:
        _log(f"config error: {exc}")
        return EXIT_CONFIG
    except GhostlightError as exc:
        where = getattr(exc, "config_path", None)
        prefix = f"{where}: " if where else ""
        _log(f"numerical error: {prefix}{exc}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    pdmsusy CONFIG.json {spectrum,partners,verify,sweep} [--out PATH]

Data goes to stdout (or ``--out``); diagnostics go to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .config import DEFAULT_SWEEP, RunConfig, parse_config
from .errors import PDMError
from .numerics import build_system, lowest_eigenvalues
from .susy import Coulomb, analytic_spectrum, mass_correction_vm, partner_potentials
from .verify import level_spread, resolve_coulomb_index, run_all
from .mass import mass_jet, u_of_x

COMMANDS = ("spectrum", "partners", "verify", "sweep")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def fmt(value) -> str:
    return format(float(value), ".12g")


def _table(header: list[str], rows: list[list], output_format: str) -> str:
    if output_format == "json":
        records = [dict(zip(header, row)) for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def spectrum_table(config: RunConfig) -> str:
    system = build_system(config.family, config.mass, config.ordering, config.grid_for())
    numeric = lowest_eigenvalues(system.h_minus, config.k)
    offset = 1
    if isinstance(config.family, Coulomb) and config.k > 1:
        offset, _ = resolve_coulomb_index(system, max(config.k, 3))
    rows = []
    for n, e in enumerate(numeric):
        exact = analytic_spectrum(config.family, n, offset)
        rows.append([n, float(e), float(exact), float(abs(e - exact))])
    return _table(["n", "E_numeric", "E_analytic", "abs_err"], rows, config.format)


def partners_table(config: RunConfig) -> str:
    grid = config.grid_for()
    x = grid.nodes
    mass, ordering = config.mass, config.ordering
    p = partner_potentials(config.family, mass, ordering, x)
    vm24, vm25 = mass_correction_vm(mass, ordering, x)
    columns = [x, mass_jet(mass, x, 0).value, u_of_x(mass, x), p.w, p.v_minus, p.v_plus, vm24, vm25]
    rows = [[float(c[i]) for c in columns] for i in range(len(x))]
    return _table(["x", "m", "u", "W", "V_minus", "V_plus", "Vm_eq24", "Vm_eq25"], rows, config.format)


def sweep_table(config: RunConfig) -> str:
    deltas = config.sweep or DEFAULT_SWEEP
    spectra, rows = [], []
    for d in deltas:
        cfg = RunConfig(config.family, d, config.epsilon, config.grid, config.k,
                        config.tolerances, config.sweep, config.format)
        system = build_system(cfg.family, cfg.mass, cfg.ordering, cfg.grid_for())
        values = lowest_eigenvalues(system.h_minus, config.k)
        spectra.append(values)
        rows.extend([float(d), n, float(e)] for n, e in enumerate(values))
    spread, level = level_spread(spectra)
    rows.append(["max_spread", level, spread])
    return _table(["delta", "n", "E_numeric"], rows, config.format)


def execute(command: str, config: RunConfig) -> tuple[int, str]:
    """Run a command; returns (exit code, data text)."""
    if command == "verify":
        report = run_all(config)
        text = json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n"
        return (EXIT_OK if report.overall else EXIT_FAILED), text
    producers = {"spectrum": spectrum_table, "partners": partners_table, "sweep": sweep_table}
    return EXIT_OK, producers[command](config)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pdmsusy", description=__doc__.splitlines()[0])
    parser.add_argument("config", help="JSON configuration file")
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("--out", type=Path, help="write data here instead of stdout")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    config_path, command = args.config, args.command
    if config_path in COMMANDS and command not in COMMANDS:
        config_path, command = command, config_path
    if command not in COMMANDS:
        print(f"pdmsusy: unknown command {command!r}; expected one of {', '.join(COMMANDS)}", file=sys.stderr)
        return EXIT_USAGE

    try:
        text = Path(config_path).read_text(encoding="utf-8")
        config = parse_config(text)
        code, data = execute(command, config)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"pdmsusy: cannot read {config_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PDMError as exc:
        print(f"pdmsusy: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out is not None:
        try:
            args.out.write_text(data, encoding="utf-8")
        except OSError as exc:
            print(f"pdmsusy: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(data)
    if code == EXIT_FAILED:
        print("pdmsusy: verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point.

``curveflow run --config FILE`` simulates a scenario and writes snapshot CSV
files plus two SVG plots; ``curveflow eoc --config FILE`` runs a convergence
ladder and writes the table as text and CSV.

Exit status is 0 on success, 1 for configuration errors and 2 when the
solver fails.
"""
import argparse
import logging
import os
import sys

from .eoc import eoc_study, format_table, write_csv
from .errors import ConfigError, CurveFlowError
from .evolve import simulate
from .io import (eoc_config, interface_svg, prepare_out_dir, read_config, run_config,
                 snapshot_name, solute_svg, write_snapshot)
from .scenarios import get_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2

log = logging.getLogger("curveflow")


def cmd_run(cfg):
    """Simulate ``cfg`` and write its output files; returns the list of paths."""
    scen = get_scenario(cfg.scenario)
    out = prepare_out_dir(cfg.out)
    _, _, snaps = simulate(scen, cfg.J, cfg.N, cfg.T, cfg.alpha, snapshot_times=cfg.snapshots,
                           normalize_tangent=cfg.normalize_tangent,
                           project_endpoints=cfg.project_endpoints)
    paths = []
    for t, X, W in snaps:
        path = os.path.join(out, snapshot_name(t))
        write_snapshot(path, X.mesh.nodes, X.values, W.values)
        paths.append(path)
    if snaps:
        rho = snaps[0][1].mesh.nodes
        plot_data = [(t, X.values, W.values) for t, X, W in snaps]
        for name, draw in (("interface.svg", lambda p: interface_svg(p, plot_data, scen.boundaries)),
                           ("solute.svg", lambda p: solute_svg(p, plot_data, rho))):
            path = os.path.join(out, name)
            draw(path)
            paths.append(path)
    return paths


def cmd_eoc(cfg):
    """Run the ladder in ``cfg``; returns ``(table, paths)``."""
    out = prepare_out_dir(cfg.out)
    table = eoc_study(cfg.scenario, cfg.levels, cfg.T, cfg.alpha, skip_final=cfg.skip_final,
                      jobs=cfg.jobs, caption=cfg.caption,
                      normalize_tangent=cfg.normalize_tangent)
    txt = os.path.join(out, "eoc_table.txt")
    with open(txt, "w") as fh:
        fh.write(format_table(table))
    csv_path = os.path.join(out, "eoc_table.csv")
    write_csv(table, csv_path)
    return table, [txt, csv_path]


def build_parser():
    parser = argparse.ArgumentParser(prog="curveflow", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a scenario")
    run.add_argument("--config", required=True)
    run.add_argument("--scenario")
    run.add_argument("--J")
    run.add_argument("--N")
    run.add_argument("--T")
    run.add_argument("--alpha")
    run.add_argument("--out")

    eoc = sub.add_parser("eoc", help="run a convergence ladder")
    eoc.add_argument("--config", required=True)
    eoc.add_argument("--out")
    eoc.add_argument("--jobs")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; those are config errors here
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s")
    try:
        values = read_config(args.config)
        if args.command == "run":
            overrides = {k: getattr(args, k) for k in ("scenario", "J", "N", "T", "alpha", "out")}
            cfg = run_config(values, overrides)
        else:
            cfg = eoc_config(values, {"out": args.out, "jobs": args.jobs})
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "run":
            paths = cmd_run(cfg)
        else:
            table, paths = cmd_eoc(cfg)
            sys.stdout.write(format_table(table))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CurveFlowError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    for p in paths:
        log.info("wrote %s", p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

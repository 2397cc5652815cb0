"""Command-line front end: run sweeps, emit CSV tables, manifests, plot scripts.

Commands: orbit (concurrence and t-vector vs rapidity for a preset or config
file), twr (rotation-angle tables), verify (acceptance suite), presets.
Exit codes: 0 ok, 1 failed verification, 2 config error, 3 numerical failure.
"""

import argparse
import csv
import hashlib
import json
import math
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .errors import ConfigError, NumericalError
from .momentum import ModelKind
from .scenarios import (
    DEFAULT_TWR_MOMENTA,
    ScenarioConfig,
    orbit,
    preset,
    preset_summary,
    rotation_type,
    twr_samples,
    twr_surface,
    zero_crossings,
)
from .verify import format_report, run as run_verify

__all__ = ["main", "RunManifest", "load_config_file", "config_text"]

_CONFIG_KEYS = (
    "model",
    "sigma_over_m",
    "p_centers",
    "q_centers",
    "xi_max",
    "xi_samples",
    "nodes_per_axis",
    "truncation",
    "spin_state",
)


def _num(x: float) -> str:
    return f"{float(x):.12g}"


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated components, got {text!r}")
    try:
        return tuple(float(s) for s in parts)
    except ValueError:
        raise ConfigError(f"non-numeric momentum component in {text!r}") from None


def _parse_centers(text: str) -> tuple[tuple[float, float, float], ...]:
    triples = [s for s in (chunk.strip() for chunk in text.split(";")) if s]
    if not triples:
        raise ConfigError("empty center list")
    return tuple(_parse_triple(t) for t in triples)


def load_config_file(path: str | Path) -> ScenarioConfig:
    """Parse a flat key = value scenario file into a fully resolved config."""
    path = Path(path)
    raw: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path.name}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, value = (s.strip() for s in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path.name}:{lineno}: unknown key {key!r}; valid keys: {', '.join(_CONFIG_KEYS)}")
        if key in raw:
            raise ConfigError(f"{path.name}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    for required in ("model", "p_centers", "q_centers"):
        if required not in raw:
            raise ConfigError(f"{path.name}: missing required key {required!r}")
    try:
        kind = ModelKind(raw["model"])
    except ValueError:
        valid = ", ".join(k.value for k in ModelKind)
        raise ConfigError(f"unknown model {raw['model']!r}; valid models: {valid}") from None

    def scalar(key: str, cast, default):
        if key not in raw:
            return default
        try:
            return cast(raw[key])
        except ValueError:
            raise ConfigError(f"{path.name}: key {key!r} needs a {cast.__name__}, got {raw[key]!r}") from None

    return ScenarioConfig(
        name=path.stem,
        kind=kind,
        p_centers=_parse_centers(raw["p_centers"]),
        q_centers=_parse_centers(raw["q_centers"]),
        sigma=scalar("sigma_over_m", float, 1.0),
        xi_max=scalar("xi_max", float, 6.5),
        xi_samples=scalar("xi_samples", int, 66),
        nodes_per_axis=scalar("nodes_per_axis", int, 41),
        truncation=scalar("truncation", float, 5.0),
        spin_state=raw.get("spin_state", "phi+"),
    )


def config_text(config: ScenarioConfig) -> str:
    """Canonical key = value serialization; hashing it identifies the run."""

    def centers(cs):
        return "; ".join(",".join(_num(v) for v in c) for c in cs)

    pairs = {
        "model": config.kind.value,
        "sigma_over_m": _num(config.sigma),
        "p_centers": centers(config.p_centers),
        "q_centers": centers(config.q_centers),
        "xi_max": _num(config.xi_max),
        "xi_samples": str(config.xi_samples),
        "nodes_per_axis": str(config.nodes_per_axis),
        "truncation": _num(config.truncation),
        "spin_state": config.spin_state,
    }
    return "".join(f"{key} = {pairs[key]}\n" for key in sorted(pairs))


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record written next to every data file."""

    tool: str
    version: str
    command: str
    scenario: dict
    config_sha256: str
    grid: dict | None
    xi_schedule: dict
    wall_time_s: float
    outputs: list[str]

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(asdict(self), indent=2) + "\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _resolve_scenario(spec: str) -> ScenarioConfig:
    if Path(spec).is_file():
        return load_config_file(spec)
    return preset(spec)


def _orbit_plot_scripts(outdir: Path, title: str) -> list[str]:
    common = 'set datafile separator ","\nset xlabel "rapidity"\nset grid\n'
    orbit_plt = (
        common
        + f'set title "{title}: t-vector orbit"\n'
        + 'set ylabel "correlation tensor diagonal"\nset yrange [-1.1:1.1]\n'
        + 'plot "orbit.csv" every ::1 using 1:3 with lines title "t_xx", \\\n'
        + '     "orbit.csv" every ::1 using 1:4 with lines title "t_yy", \\\n'
        + '     "orbit.csv" every ::1 using 1:5 with lines title "t_zz"\n'
        + "pause -1\n"
    )
    conc_plt = (
        common
        + f'set title "{title}: concurrence"\n'
        + 'set ylabel "concurrence"\nset yrange [0:1.05]\n'
        + 'plot "orbit.csv" every ::1 using 1:2 with lines notitle\n'
        + "pause -1\n"
    )
    (outdir / "orbit.plt").write_text(orbit_plt)
    (outdir / "concurrence.plt").write_text(conc_plt)
    return ["orbit.plt", "concurrence.plt"]


def cmd_orbit(args) -> int:
    config = _resolve_scenario(args.scenario).with_overrides(
        sigma=args.sigma,
        nodes_per_axis=args.nodes,
        truncation=args.truncation,
        xi_max=args.xi_max,
        xi_samples=args.xi_samples,
        spin_state=args.spin_state,
    )
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    points = orbit(config)
    wall = time.perf_counter() - start

    rows = [
        [
            _num(p.xi),
            _num(p.concurrence),
            _num(p.t[0]),
            _num(p.t[1]),
            _num(p.t[2]),
            "true" if p.bell_diagonal else "false",
        ]
        for p in points
    ]
    _write_csv(outdir / "orbit.csv", ["xi", "concurrence", "t_xx", "t_yy", "t_zz", "bell_diagonal"], rows)
    outputs = ["orbit.csv"] + _orbit_plot_scripts(outdir, config.name)

    manifest = RunManifest(
        tool="boostlab",
        version=__version__,
        command="orbit",
        scenario={
            "name": config.name,
            "model": config.kind.value,
            "sigma_over_m": config.sigma,
            "p_centers": [list(c) for c in config.p_centers],
            "q_centers": [list(c) for c in config.q_centers],
            "boost_axis": list(config.boost_axis),
            "spin_state": config.spin_state,
            "rotation_type": rotation_type(config).classification,
            "validated_xi_max": config.validated_xi_max,
        },
        config_sha256=_sha256(config_text(config)),
        grid={"nodes_per_axis": config.nodes_per_axis, "truncation": config.truncation},
        xi_schedule={"min": 0.0, "max": config.xi_max, "samples": config.xi_samples},
        wall_time_s=wall,
        outputs=outputs,
    )
    manifest.write(outdir / "manifest.json")

    final = points[-1]
    print(f"scenario {config.name}: {len(points)} points, xi in [0, {config.xi_max:g}]")
    crossings = zero_crossings(points)
    if crossings:
        print("concurrence zero crossings at xi = " + ", ".join(f"{x:.3g}" for x in crossings))
    print(f"final concurrence {final.concurrence:.4g}, t = ({final.t[0]:.4g}, {final.t[1]:.4g}, {final.t[2]:.4g})")
    if config.validated_xi_max is not None and config.xi_max > config.validated_xi_max:
        print(f"note: points beyond xi = {config.validated_xi_max:g} are outside the validated range")
    print("wrote " + ", ".join(str(outdir / name) for name in outputs + ["manifest.json"]))
    return 0


def _twr_surface_run(args, outdir: Path):
    xi_max = 4.0 if args.xi_max is None else args.xi_max
    xis, thetas, omega = twr_surface(
        (args.xi_min, xi_max), (args.theta_min, args.theta_max), (args.samples, args.samples)
    )
    rows = [
        [_num(xi), _num(th), _num(omega[i, j])]
        for i, xi in enumerate(xis)
        for j, th in enumerate(thetas)
    ]
    _write_csv(outdir / "twr_surface.csv", ["xi", "theta", "omega"], rows)
    plt = (
        'set datafile separator ","\n'
        f"set dgrid3d {len(xis)},{len(thetas)}\n"
        'set xlabel "rapidity"\nset ylabel "angle between boosts"\nset zlabel "rotation angle"\n'
        'set hidden3d\n'
        'splot "twr_surface.csv" every ::1 using 1:2:3 with lines notitle\n'
        "pause -1\n"
    )
    (outdir / "twr_surface.plt").write_text(plt)
    scenario = {
        "mode": "surface",
        "xi_range": [args.xi_min, xi_max],
        "theta_range": [args.theta_min, args.theta_max],
        "samples": args.samples,
    }
    text = "".join(f"{k} = {scenario[k]}\n" for k in sorted(scenario))
    return scenario, text, ["twr_surface.csv", "twr_surface.plt"]


def _twr_samples_run(args, outdir: Path):
    momenta = tuple(_parse_triple(m) for m in args.momentum) if args.momentum else DEFAULT_TWR_MOMENTA
    xi_max = 6.5 if args.xi_max is None else args.xi_max
    xis, curves = twr_samples(momenta, xi_max, args.xi_samples)
    rows = [
        [label, _num(xi), _num(om)]
        for label, angles in curves
        for xi, om in zip(xis, angles)
    ]
    _write_csv(outdir / "twr_samples.csv", ["momentum", "xi", "omega"], rows)
    clauses = ", \\\n     ".join(
        f'"twr_samples.csv" every ::1 using 2:(strcol(1) eq "{label}" ? $3 : NaN) with lines title "{label}"'
        for label, _ in curves
    )
    plt = (
        'set datafile separator ","\n'
        'set xlabel "rapidity"\nset ylabel "rotation angle"\nset grid\n'
        f"plot {clauses}\n"
        "pause -1\n"
    )
    (outdir / "twr_samples.plt").write_text(plt)
    scenario = {
        "mode": "samples",
        "momenta": [list(m) for m in momenta],
        "xi_max": xi_max,
        "xi_samples": args.xi_samples,
    }
    text = "".join(f"{k} = {scenario[k]}\n" for k in sorted(scenario))
    return scenario, text, ["twr_samples.csv", "twr_samples.plt"]


def cmd_twr(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    if args.mode == "surface":
        scenario, text, outputs = _twr_surface_run(args, outdir)
    else:
        scenario, text, outputs = _twr_samples_run(args, outdir)
    manifest = RunManifest(
        tool="boostlab",
        version=__version__,
        command="twr",
        scenario=scenario,
        config_sha256=_sha256(text),
        grid=None,
        xi_schedule={
            "min": args.xi_min if args.mode == "surface" else 0.0,
            "max": scenario.get("xi_range", [None, scenario.get("xi_max")])[-1],
            "samples": scenario.get("samples", scenario.get("xi_samples")),
        },
        wall_time_s=time.perf_counter() - start,
        outputs=outputs,
    )
    manifest.write(outdir / "manifest.json")
    print("wrote " + ", ".join(str(outdir / name) for name in outputs + ["manifest.json"]))
    return 0


def cmd_verify(args) -> int:
    results = run_verify(args.level, args.nodes, args.truncation)
    print(format_report(results, verbose=args.level == "full"))
    return 0 if all(r.passed for r in results) else 1


def cmd_presets(_args) -> int:
    rows = []
    for name, note in preset_summary():
        config = preset(name)
        label = rotation_type(config).classification
        rows.append((name, config.kind.value, label, note))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    for row in rows:
        print("  ".join(col.ljust(w) for col, w in zip(row[:3], widths)) + "  " + row[3])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boostlab",
        description="Boost-induced spin dynamics of massive two-particle states.",
    )
    parser.add_argument("--version", action="version", version=f"boostlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_orbit = sub.add_parser("orbit", help="sweep rapidity, write concurrence and t-vector tables")
    p_orbit.add_argument("scenario", help="preset name or path to a key = value config file")
    p_orbit.add_argument("-o", "--outdir", default=".", help="output directory (default: current)")
    p_orbit.add_argument("--sigma", type=float, help="override momentum spread sigma/m")
    p_orbit.add_argument("--nodes", type=int, help="override quadrature nodes per axis")
    p_orbit.add_argument("--truncation", type=float, help="override box half-width in sigmas")
    p_orbit.add_argument("--xi-max", type=float, help="override largest rapidity")
    p_orbit.add_argument("--xi-samples", type=int, help="override schedule length")
    p_orbit.add_argument(
        "--spin-state", choices=["phi+", "phi-", "psi+", "psi-"], help="override initial Bell state"
    )
    p_orbit.set_defaults(func=cmd_orbit)

    p_twr = sub.add_parser("twr", help="tabulate Wigner rotation angles")
    p_twr.add_argument("--mode", choices=["surface", "samples"], default="surface")
    p_twr.add_argument("-o", "--outdir", default=".", help="output directory (default: current)")
    p_twr.add_argument("--xi-min", type=float, default=0.0, help="surface mode: smallest rapidity")
    p_twr.add_argument("--xi-max", type=float, help="largest rapidity (default 4 surface, 6.5 samples)")
    p_twr.add_argument("--theta-min", type=float, default=0.0, help="surface mode: smallest boost angle")
    p_twr.add_argument("--theta-max", type=float, default=math.pi, help="surface mode: largest boost angle")
    p_twr.add_argument("--samples", type=int, default=60, help="surface mode: samples per axis")
    p_twr.add_argument("--xi-samples", type=int, default=66, help="samples mode: schedule length")
    p_twr.add_argument(
        "--momentum",
        action="append",
        metavar="PX,PY,PZ",
        help="samples mode: momentum to track (repeatable; default four reference momenta)",
    )
    p_twr.set_defaults(func=cmd_twr)

    p_verify = sub.add_parser("verify", help="run the acceptance suite")
    p_verify.add_argument("--level", choices=["fast", "full"], default="fast")
    p_verify.add_argument("--nodes", type=int, help="override quadrature nodes per axis")
    p_verify.add_argument("--truncation", type=float, help="override box half-width in sigmas")
    p_verify.set_defaults(func=cmd_verify)

    p_presets = sub.add_parser("presets", help="list scenario presets")
    p_presets.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

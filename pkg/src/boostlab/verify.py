"""Acceptance checks: quantitative anchors and structural channel properties.

Each criterion produces one pass/fail line built from named sub-checks with
measured and expected values, so failures are diagnosable from the report
alone. ``fast`` runs the structural property suite; ``full`` adds every
quantitative anchor plus the grid-convergence study.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelBuilder, boost_spin_state, boost_spin_state_direct
from .kinematics import BoostSpec, wigner_angle, wigner_angle_from_composition
from .momentum import build_grid, normalize
from .scenarios import OrbitPoint, orbit, preset, preset_names, zero_crossings
from .spin import BELL_T_VECTORS, bell_state, concurrence, t_vector

__all__ = ["Check", "CriterionResult", "AcceptanceContext", "run", "format_report", "CRITERIA"]


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    measured: str
    expected: str


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class AcceptanceContext:
    """Caches orbit sweeps so criteria can share them; honors grid overrides."""

    def __init__(self, nodes_per_axis: int | None = None, truncation: float | None = None):
        self.nodes_per_axis = nodes_per_axis
        self.truncation = truncation
        self._orbits: dict[tuple, list[OrbitPoint]] = {}

    def config(self, name: str, sigma: float | None = None, nodes: int | None = None):
        cfg = preset(name).with_overrides(
            sigma=sigma, nodes_per_axis=nodes or self.nodes_per_axis, truncation=self.truncation
        )
        return cfg

    def orbit(self, name: str, sigma: float | None = None, nodes: int | None = None) -> list[OrbitPoint]:
        key = (name, sigma, nodes or self.nodes_per_axis, self.truncation)
        if key not in self._orbits:
            self._orbits[key] = orbit(self.config(name, sigma, nodes))
        return self._orbits[key]

    def state_at(self, name: str, xi: float, sigma: float | None = None) -> np.ndarray:
        cfg = self.config(name, sigma)
        model = cfg.model()
        grid = build_grid(model, cfg.nodes_per_axis, cfg.truncation)
        normalize(model, grid)
        return boost_spin_state(model, cfg.initial_state(), xi, grid)


def _within(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


def _first_zero(points: list[OrbitPoint], lo: float = 0.0, hi: float | None = None, touch: float = 0.03):
    """First rapidity where concurrence reaches zero, or the location of a
    near-zero tangential minimum (below ``touch``) if no sample hits zero."""
    window = [p for p in points if p.xi >= lo and (hi is None or p.xi <= hi + 1e-9)]
    crossings = zero_crossings(window)
    if crossings:
        return crossings[0]
    dips = min(window, key=lambda p: p.concurrence)
    if dips.concurrence <= touch:
        return dips.xi
    return None


def _fmt(x: float) -> str:
    return f"{x:.4g}"


def _fmt_vec(v) -> str:
    return "(" + ", ".join(f"{x:.3f}" for x in np.asarray(v, dtype=float)) + ")"


def _criterion_eprb(ctx: AcceptanceContext) -> CriterionResult:
    checks = []
    pts1 = ctx.orbit("eprb", sigma=1.0)
    cmin = min(p.concurrence for p in pts1)
    checks.append(Check("sigma=1 concurrence floor", cmin >= 0.98, f"min C = {_fmt(cmin)}", ">= 0.98"))
    pts4 = ctx.orbit("eprb", sigma=4.0)
    tail = [p for p in pts4 if p.xi >= 1.0 - 1e-9]
    diffs = [b.concurrence - a.concurrence for a, b in zip(tail, tail[1:])]
    strict = all(d < 0.0 for d in diffs)
    checks.append(
        Check(
            "sigma=4 strictly decreasing beyond xi=1",
            strict,
            f"max step = {_fmt(max(diffs))}",
            "< 0 at every step",
        )
    )
    return CriterionResult(1, "eprb-invariance", tuple(checks))


def _criterion_ri1(ctx: AcceptanceContext) -> CriterionResult:
    pts = ctx.orbit("fsigma-ri1")
    valid = [p for p in pts if p.xi <= 4.8 + 1e-9]
    checks = []
    crossing = _first_zero(valid, lo=1.0)
    ok = crossing is not None and _within(crossing, 2.7, 0.15)
    checks.append(Check("loss of entanglement", ok, f"xi = {_fmt(crossing) if crossing else 'none'}", "2.7 +/- 0.15"))
    after = [p for p in valid if crossing is not None and p.xi > crossing]
    peak = max(after, key=lambda p: p.concurrence) if after else None
    ok_val = peak is not None and _within(peak.concurrence, 0.64, 0.05)
    ok_loc = peak is not None and _within(peak.xi, 4.16, 0.25)
    checks.append(
        Check(
            "revival peak value",
            ok_val,
            f"C = {_fmt(peak.concurrence) if peak else 'none'}",
            "0.64 +/- 0.05",
        )
    )
    checks.append(
        Check("revival peak location", ok_loc, f"xi = {_fmt(peak.xi) if peak else 'none'}", "near 4.16 (+/- 0.25)")
    )
    return CriterionResult(2, "fsigma-ri1-revival", tuple(checks))


def _criterion_rii(ctx: AcceptanceContext) -> CriterionResult:
    pts = ctx.orbit("fsigma-rii")
    checks = []
    crossing = _first_zero(pts, lo=1.0)
    ok = crossing is not None and _within(crossing, 2.6, 0.15)
    checks.append(Check("separable point", ok, f"xi = {_fmt(crossing) if crossing else 'none'}", "2.6 +/- 0.15"))
    final = pts[-1]
    checks.append(
        Check("re-entangled at xi=6.5", final.concurrence >= 0.85, f"C = {_fmt(final.concurrence)}", ">= 0.85")
    )
    target = np.array([0.89, -0.99, 0.90])
    dev = np.abs(final.t - target).max()
    checks.append(
        Check("final t-vector", dev <= 0.02, f"t = {_fmt_vec(final.t)}", f"{_fmt_vec(target)} +/- 0.02 each")
    )
    checks.append(
        Check(
            "concurrence at maximum rotation",
            _within(final.concurrence, 0.89, 0.02),
            f"C = {_fmt(final.concurrence)}",
            "0.89 +/- 0.02",
        )
    )
    return CriterionResult(3, "fsigma-rii-retrace", tuple(checks))


def _criterion_rij(ctx: AcceptanceContext) -> CriterionResult:
    pts = ctx.orbit("fsigma-rij")
    checks = []
    window = [p for p in pts if 2.3 - 1e-9 <= p.xi <= 3.1 + 1e-9]
    worst = max(p.concurrence for p in window)
    checks.append(
        Check("separable window [2.3, 3.1]", worst == 0.0, f"max C = {_fmt(worst)}", "exactly 0 at every sample")
    )
    rho = ctx.state_at("fsigma-rij", 2.73)
    tnorm = float(np.linalg.norm(t_vector(rho)))
    checks.append(Check("maximally mixed at xi=2.73", tnorm <= 0.05, f"|t| = {_fmt(tnorm)}", "<= 0.05"))
    final = pts[-1]
    dist = float(np.linalg.norm(final.t - np.array([-1.0, 1.0, 1.0])))
    checks.append(Check("final t-vector near (-1, 1, 1)", dist <= 0.15, f"|t - target| = {_fmt(dist)}", "<= 0.15"))
    return CriterionResult(4, "fsigma-rij-separable-window", tuple(checks))


def _criterion_axis(ctx: AcceptanceContext) -> CriterionResult:
    checks = []
    c_p4 = ctx.orbit("axis-p4")[-1].concurrence
    checks.append(Check("(0,0,4) sigma=1 final C", _within(c_p4, 0.90, 0.03), f"C = {_fmt(c_p4)}", "0.90 +/- 0.03"))
    c_0 = ctx.orbit("axis-0")[-1].concurrence
    checks.append(Check("origin sigma=1 final C", _within(c_0, 0.45, 0.03), f"C = {_fmt(c_0)}", "0.45 +/- 0.03"))
    cross1 = _first_zero(ctx.orbit("axis-m4"), lo=1.0)
    ok1 = cross1 is not None and _within(cross1, 3.75, 0.15)
    checks.append(
        Check("(0,0,-4) sigma=1 loss", ok1, f"xi = {_fmt(cross1) if cross1 else 'none'}", "3.75 +/- 0.15")
    )
    cross4 = _first_zero(ctx.orbit("axis-m4", sigma=4.0), lo=0.5)
    ok4 = cross4 is not None and _within(cross4, 2.2, 0.15)
    checks.append(
        Check("(0,0,-4) sigma=4 loss", ok4, f"xi = {_fmt(cross4) if cross4 else 'none'}", "2.2 +/- 0.15")
    )
    return CriterionResult(5, "axis-centered-anchors", tuple(checks))


def _criterion_fcross(ctx: AcceptanceContext) -> CriterionResult:
    pts = ctx.orbit("fcross-large")
    checks = []
    tail = [p for p in pts if p.xi > 2.4 + 1e-9]
    worst = max(p.concurrence for p in tail)
    checks.append(Check("no revival beyond xi=2.4", worst == 0.0, f"max C = {_fmt(worst)}", "exactly 0"))
    final = pts[-1]
    dist = float(np.linalg.norm(final.t - np.array([0.0, 0.0, 1.0])))
    checks.append(Check("final t-vector near (0, 0, 1)", dist <= 0.15, f"|t - target| = {_fmt(dist)}", "<= 0.15"))
    return CriterionResult(6, "fcross-large-decoherence", tuple(checks))


def _criterion_ent(ctx: AcceptanceContext) -> CriterionResult:
    pts = ctx.orbit("ent-rii")
    checks = []
    final = pts[-1]
    checks.append(
        Check("saturation at xi=6.5", _within(final.concurrence, 0.79, 0.03), f"C = {_fmt(final.concurrence)}", "0.79 +/- 0.03")
    )
    near = min(pts, key=lambda p: abs(p.xi - 2.8))
    dist = float(np.linalg.norm(near.t - np.array([1.0, 1.0, -1.0])))
    checks.append(
        Check("passes (1, 1, -1) at xi=2.8", dist <= 0.10, f"|t - target| = {_fmt(dist)}", "<= 0.10")
    )
    cs = np.array([p.concurrence for p in pts])
    dip_regions = 0
    in_dip = False
    recovered = True
    for c in cs:
        if c < 0.35 and not in_dip and recovered:
            dip_regions += 1
            in_dip = True
            recovered = False
        elif c >= 0.6:
            in_dip = False
            recovered = True
        elif c >= 0.35:
            in_dip = False
    checks.append(Check("double dip", dip_regions >= 2, f"{dip_regions} dip(s) below 0.35", ">= 2"))
    return CriterionResult(7, "ent-rii-double-dip", tuple(checks))


def _criterion_twr(ctx: AcceptanceContext) -> CriterionResult:
    checks = []
    omega = np.degrees(wigner_angle(float(np.arcsinh(100.0)), 6.5, 2.967))
    checks.append(
        Check("large-boost anchor", _within(omega, 163.0, 1.0), f"omega = {omega:.3f} deg", "163 +/- 1 deg")
    )
    worst = 0.0
    for xi1 in np.linspace(0.15, 3.0, 20):
        for xi2 in np.linspace(0.15, 3.0, 20):
            for theta in np.linspace(0.05, 3.0, 20):
                b1 = BoostSpec(float(xi1), (float(np.sin(theta)), 0.0, float(np.cos(theta))))
                b2 = BoostSpec(float(xi2), (0.0, 0.0, 1.0))
                w_comp, _ = wigner_angle_from_composition(b1, b2)
                worst = max(worst, abs(w_comp - wigner_angle(float(xi1), float(xi2), float(theta))))
    checks.append(
        Check("formula vs composition on 20^3 grid", worst < 1e-10, f"max dev = {worst:.2e}", "< 1e-10")
    )
    min_step = np.inf
    for theta in (0.5, 1.5, 2.5, 3.0):
        for xi2 in (0.8, 2.0, 6.5):
            omegas = [wigner_angle(x, xi2, theta) for x in np.linspace(0.0, 6.5, 200)]
            min_step = min(min_step, float(np.diff(omegas).min()))
    checks.append(
        Check("monotone in rapidity", min_step >= -1e-12, f"smallest step = {min_step:.2e}", ">= -1e-12")
    )
    return CriterionResult(8, "twr-anchors", tuple(checks))


def _criterion_properties(ctx: AcceptanceContext) -> CriterionResult:
    checks = []
    worst_trace = 0.0
    worst_eig = 0.0
    worst_ident = 0.0
    for name in preset_names():
        cfg = ctx.config(name)
        model = cfg.model()
        grid = build_grid(model, cfg.nodes_per_axis, cfg.truncation)
        normalize(model, grid)
        builder = ChannelBuilder(model, grid)
        rho0 = cfg.initial_state()
        for xi in (0.0, 3.25, 6.5):
            raw = builder.channel(xi).apply(rho0)
            sym = 0.5 * (raw + raw.conj().T)
            worst_trace = max(worst_trace, abs(float(np.trace(sym).real) - 1.0))
            worst_eig = max(worst_eig, float(-np.linalg.eigvalsh(sym).min()))
        ident = boost_spin_state(model, rho0, 0.0, grid, builder=builder)
        worst_ident = max(worst_ident, float(np.abs(ident - rho0).max()))
    checks.append(Check("trace preservation", worst_trace <= 1e-9, f"max |tr - 1| = {worst_trace:.2e}", "<= 1e-9"))
    checks.append(Check("positivity", worst_eig <= 1e-9, f"min eigenvalue = {-worst_eig:.2e}", ">= -1e-9"))
    checks.append(Check("identity at xi=0", worst_ident <= 1e-12, f"max dev = {worst_ident:.2e}", "<= 1e-12"))

    worst_direct = 0.0
    for name in ("eprb", "axis-0", "fsigma-rii", "fcross-large", "ent-rii"):
        cfg = preset(name)
        model = cfg.model()
        grid = build_grid(model, 11, cfg.truncation)
        normalize(model, grid)
        rho0 = cfg.initial_state()
        a = boost_spin_state(model, rho0, 3.25, grid)
        b = boost_spin_state_direct(model, rho0, 3.25, grid)
        worst_direct = max(worst_direct, float(np.abs(a - b).max()))
    checks.append(
        Check("factorized vs direct (11 nodes)", worst_direct < 1e-10, f"max dev = {worst_direct:.2e}", "< 1e-10")
    )

    rng = np.random.default_rng(7)
    worst_lu = 0.0
    for _ in range(50):
        z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = z @ z.conj().T
        rho /= np.trace(rho).real
        us = []
        for _ in range(2):
            q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            us.append(q * (np.diagonal(r) / np.abs(np.diagonal(r))))
        local = np.kron(us[0], us[1])
        worst_lu = max(worst_lu, abs(concurrence(local @ rho @ local.conj().T) - concurrence(rho)))
    checks.append(Check("local-unitary invariance", worst_lu < 1e-10, f"max dev = {worst_lu:.2e}", "< 1e-10"))

    table_exact = all(
        np.array_equal(t_vector(bell_state(k)), BELL_T_VECTORS[k]) for k in BELL_T_VECTORS
    )
    checks.append(Check("Bell t-vector table", table_exact, "exact" if table_exact else "deviates", "exact"))

    cfg = ctx.config("fsigma-rii")
    model = cfg.model()
    grid = build_grid(model, cfg.nodes_per_axis, cfg.truncation)
    n_run = normalize(model, grid)
    refined = build_grid(model, 2 * cfg.nodes_per_axis, cfg.truncation)
    n_ref = normalize(model, refined)
    model.normalization = n_run
    drift = abs(n_ref / n_run - 1.0)
    checks.append(
        Check("normalization grid consistency", drift <= 1e-3, f"|N_fine/N - 1| = {drift:.2e}", "<= 1e-3")
    )
    return CriterionResult(9, "channel-properties", tuple(checks))


def _criterion_convergence(ctx: AcceptanceContext) -> CriterionResult:
    base_nodes = ctx.nodes_per_axis or 41
    coarse = ctx.orbit("fsigma-rii", nodes=base_nodes)
    fine = ctx.orbit("fsigma-rii", nodes=2 * base_nodes - 1)
    dev = max(abs(a.concurrence - b.concurrence) for a, b in zip(coarse, fine))
    check = Check(
        f"{base_nodes} vs {2 * base_nodes - 1} nodes per axis",
        dev < 1e-3,
        f"max |dC| = {dev:.2e}",
        "< 1e-3",
    )
    return CriterionResult(10, "grid-convergence", (check,))


CRITERIA = {
    1: _criterion_eprb,
    2: _criterion_ri1,
    3: _criterion_rii,
    4: _criterion_rij,
    5: _criterion_axis,
    6: _criterion_fcross,
    7: _criterion_ent,
    8: _criterion_twr,
    9: _criterion_properties,
    10: _criterion_convergence,
}

FAST_CRITERIA = (9,)
FULL_CRITERIA = tuple(range(1, 11))


def run(level: str = "fast", nodes_per_axis: int | None = None, truncation: float | None = None):
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    ctx = AcceptanceContext(nodes_per_axis, truncation)
    indices = FAST_CRITERIA if level == "fast" else FULL_CRITERIA
    return [CRITERIA[i](ctx) for i in indices]


def format_report(results, verbose: bool = True) -> str:
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"[{status}] {res.index:2d} {res.name}")
        for check in res.checks:
            if verbose or not check.passed:
                mark = "ok" if check.passed else "FAIL"
                lines.append(f"       - {check.label}: {check.measured} (expected {check.expected}) [{mark}]")
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)

"""Scenario presets and sweep drivers: orbits in t-space and TWR tables.

Every preset boosts along +z, starts from a Bell state and sweeps rapidity
over a uniform schedule. The lobe geometries place large momenta mostly
antiparallel to the boost so the Wigner rotations are large; transverse
mirror pairs make the induced single-particle rotations come in +/- pairs.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import ChannelBuilder, boost_spin_state
from .errors import ConfigError, NumericalError, OrbitError, UnknownPresetError
from .kinematics import rotation_angle, wigner_angle, wigner_unitary
from .momentum import MomentumModel, ModelKind, build_grid, make_model, normalize
from .spin import bell_state, concurrence, is_bell_diagonal, t_vector

__all__ = [
    "ScenarioConfig",
    "OrbitPoint",
    "RotationType",
    "preset",
    "preset_names",
    "preset_summary",
    "rotation_type",
    "orbit",
    "zero_crossings",
    "twr_surface",
    "twr_samples",
    "DEFAULT_TWR_MOMENTA",
]

CONCURRENCE_FLOOR = 1e-6

# large-momentum lobe centers shared by the f_Sigma / f_x / entangled presets:
# transverse offset 17.13 in x or y, longitudinal component -98.5
_PX = (17.13, 0.0, -98.5)
_PXM = (-17.13, 0.0, -98.5)
_PY = (0.0, 17.13, -98.5)
_PYM = (0.0, -17.13, -98.5)

DEFAULT_TWR_MOMENTA = ((3.0, 0.0, 0.0), (3.0, 0.0, -4.0), (3.0, 0.0, -98.0), (8.0, 0.0, -98.0))


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved inputs of one sweep."""

    name: str
    kind: ModelKind
    p_centers: tuple[tuple[float, float, float], ...]
    q_centers: tuple[tuple[float, float, float], ...]
    sigma: float = 1.0
    boost_axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    xi_max: float = 6.5
    xi_samples: int = 66
    nodes_per_axis: int = 41
    truncation: float = 5.0
    spin_state: str = "phi+"
    from_preset: bool = False
    validated_xi_max: float | None = None

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ConfigError("sigma must be positive")
        if self.xi_max <= 0.0 or self.xi_samples < 2:
            raise ConfigError("xi schedule needs xi_max > 0 and at least 2 samples")
        if self.from_preset and self.xi_max > 7.0:
            raise ConfigError("presets are validated for xi_max <= 7")

    def model(self) -> MomentumModel:
        return make_model(self.kind, self.p_centers, self.q_centers, self.sigma)

    def xi_schedule(self) -> np.ndarray:
        return np.linspace(0.0, self.xi_max, self.xi_samples)

    def initial_state(self) -> np.ndarray:
        return bell_state(self.spin_state)

    def with_overrides(self, **kw) -> "ScenarioConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


@dataclass(frozen=True)
class OrbitPoint:
    xi: float
    concurrence: float
    t: np.ndarray
    bell_diagonal: bool
    rho: np.ndarray


@dataclass(frozen=True)
class RotationType:
    """Which single-particle rotations the lobe geometry induces under the boost."""

    classification: str  # one of "R*1", "Ri*Ri", "Ri*Rj", "mixed"
    axes: tuple[str | None, str | None]

    def label(self) -> str:
        parts = ["1" if a is None else ("R_?" if a == "mixed" else f"R_{a.upper()}") for a in self.axes]
        return f"{parts[0]} x {parts[1]}"


_PRESETS: dict[str, ScenarioConfig] = {}


def _register(name: str, kind: ModelKind, p_centers, q_centers, sigma: float = 1.0, **kw):
    _PRESETS[name] = ScenarioConfig(
        name=name,
        kind=kind,
        p_centers=tuple(tuple(map(float, c)) for c in p_centers),
        q_centers=tuple(tuple(map(float, c)) for c in q_centers),
        sigma=sigma,
        from_preset=True,
        **kw,
    )


_register("eprb", ModelKind.EPRB, [(17.13, 0.0, 0.0)], [(-17.13, 0.0, 0.0)])
_register("fsigma-ri1", ModelKind.SUM_TWO_LOBES, [_PX, _PXM], [(0.0, 0.0, -98.5)], validated_xi_max=4.8)
_register("fsigma-rii", ModelKind.SUM_TWO_LOBES, [_PX, _PXM], [_PX, _PXM])
_register("fsigma-rij", ModelKind.SUM_TWO_LOBES, [_PY, _PYM], [_PX, _PXM])
_register("axis-p4", ModelKind.AXIS_CENTERED, [(0.0, 0.0, 4.0)], [(0.0, 0.0, 4.0)])
_register("axis-0", ModelKind.AXIS_CENTERED, [(0.0, 0.0, 0.0)], [(0.0, 0.0, 0.0)])
_register("axis-m4", ModelKind.AXIS_CENTERED, [(0.0, 0.0, -4.0)], [(0.0, 0.0, -4.0)])
_register("axis-extreme", ModelKind.AXIS_CENTERED, [(0.0, 0.0, -98.5)], [(0.0, 0.0, -98.5)])
_register("fcross-large", ModelKind.CROSS_FOUR_LOBES, [_PY, _PYM, _PX, _PXM], [_PY, _PYM, _PX, _PXM])
_register(
    "fcross-axis-model",
    ModelKind.CROSS_FOUR_LOBES,
    [(0.0, 3.0, 0.0), (0.0, -3.0, 0.0), (3.0, 0.0, 0.0), (-3.0, 0.0, 0.0)],
    [(0.0, 3.0, 0.0), (0.0, -3.0, 0.0), (3.0, 0.0, 0.0), (-3.0, 0.0, 0.0)],
    sigma=0.25,
)
_register("ent-rii", ModelKind.ENTANGLED_PHI_PLUS, [_PY, _PYM], [_PY, _PYM])
_register("ent-rij", ModelKind.ENTANGLED_PHI_PLUS, [_PY, _PYM], [_PX, _PXM])

_PRESET_NOTES = {
    "eprb": "product state, opposite momenta on the x axis; boost-invariant entanglement probe",
    "fsigma-ri1": "two mirrored lobes on particle 1, single lobe on particle 2 (R x 1 geometry)",
    "fsigma-rii": "mirrored x-offset lobes on both particles (same rotation axis)",
    "fsigma-rij": "mirrored y-offset vs x-offset lobes (different rotation axes)",
    "axis-p4": "both Gaussians centered at (0, 0, 4) on the boost axis",
    "axis-0": "both Gaussians centered at the origin",
    "axis-m4": "both Gaussians centered at (0, 0, -4), opposing the boost",
    "axis-extreme": "both Gaussians centered at (0, 0, -98.5)",
    "fcross-large": "four lobes per particle spanning both transverse planes",
    "fcross-axis-model": "four-lobe stand-in for an axis-centered packet, sigma = 0.25",
    "ent-rii": "momentum-entangled pair, both rotation axes equal",
    "ent-rij": "momentum-entangled pair, different rotation axes",
}


def preset_names() -> list[str]:
    return list(_PRESETS)


def preset(name: str) -> ScenarioConfig:
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; available: {', '.join(_PRESETS)}"
        ) from None


def preset_summary() -> list[tuple[str, str]]:
    return [(name, _PRESET_NOTES[name]) for name in _PRESETS]


def _particle_axis(centers: np.ndarray, boost_axis: np.ndarray):
    """Rotation-axis label induced by a lobe set: None for identity, else 'x'/'y'/'z'/'mixed'."""
    axes = []
    for c in centers:
        cross = np.cross(boost_axis, c)
        norm = np.linalg.norm(cross)
        if norm < 1e-9:
            continue  # collinear lobe: no rotation
        axes.append(cross / norm)
    if not axes:
        return None
    ref = axes[0]
    for a in axes[1:]:
        if abs(abs(a @ ref) - 1.0) > 1e-9:
            return "mixed"
    unit = np.eye(3)
    for label, e in zip("xyz", unit):
        if abs(abs(ref @ e) - 1.0) < 1e-9:
            return label
    return "mixed"


def rotation_type(config: ScenarioConfig) -> RotationType:
    """Classify the per-particle rotations the delta-lobe geometry induces."""
    boost_axis = np.asarray(config.boost_axis, dtype=float)
    a1 = _particle_axis(np.asarray(config.p_centers, dtype=float), boost_axis)
    a2 = _particle_axis(np.asarray(config.q_centers, dtype=float), boost_axis)
    if "mixed" in (a1, a2):
        cls = "mixed"
    elif a1 is None and a2 is None:
        cls = "mixed"  # both trivial: fits no pure class
    elif a1 is None or a2 is None:
        cls = "R*1"
    elif a1 == a2:
        cls = "Ri*Ri"
    else:
        cls = "Ri*Rj"
    return RotationType(cls, (a1, a2))


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("BOOSTLAB_THREADS", "1"))
    return max(1, workers)


def orbit(config: ScenarioConfig, workers: int | None = None) -> list[OrbitPoint]:
    """Sweep the schedule and report concurrence and t-vector per rapidity.

    Concurrence below 1e-6 is reported as exactly 0. Deterministic output:
    points are assembled in schedule order regardless of worker count.
    """
    model = config.model()
    grid = build_grid(model, config.nodes_per_axis, config.truncation)
    normalize(model, grid)
    builder = ChannelBuilder(model, grid)
    rho0 = config.initial_state()
    schedule = config.xi_schedule()

    def point(xi: float) -> OrbitPoint:
        try:
            rho = boost_spin_state(model, rho0, xi, grid, builder=builder)
        except NumericalError as exc:
            raise OrbitError(f"sweep failed at xi={xi:g}: {exc}") from exc
        c = concurrence(rho)
        if c < CONCURRENCE_FLOOR:
            c = 0.0
        return OrbitPoint(float(xi), c, t_vector(rho), is_bell_diagonal(rho), rho)

    n_workers = _worker_count(workers)
    if n_workers == 1:
        return [point(xi) for xi in schedule]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(point, schedule))


def zero_crossings(points: list[OrbitPoint]) -> list[float]:
    """Rapidities where concurrence enters or leaves zero, linearly interpolated."""
    crossings = []
    for a, b in zip(points, points[1:]):
        if (a.concurrence > 0.0) == (b.concurrence > 0.0):
            continue
        span = b.concurrence - a.concurrence
        crossings.append(a.xi + (0.0 - a.concurrence) / span * (b.xi - a.xi))
    return crossings


def twr_surface(xi_range=(0.0, 4.0), theta_range=(0.0, np.pi), samples=(60, 60)):
    """Equal-rapidity Wigner angle omega(xi, xi, theta) on a rectangular grid."""
    xi_lo, xi_hi = map(float, xi_range)
    th_lo, th_hi = map(float, theta_range)
    n_xi, n_th = samples if isinstance(samples, tuple) else (int(samples), int(samples))
    if xi_hi <= xi_lo or th_hi <= th_lo:
        raise ConfigError("ranges must satisfy lo < hi")
    if n_xi < 2 or n_th < 2:
        raise ConfigError("need at least 2 samples per axis")
    xis = np.linspace(xi_lo, xi_hi, n_xi)
    thetas = np.linspace(th_lo, th_hi, n_th)
    omega = np.empty((n_xi, n_th))
    for i, xi in enumerate(xis):
        for j, th in enumerate(thetas):
            omega[i, j] = wigner_angle(xi, xi, th)
    return xis, thetas, omega


def twr_samples(momenta=DEFAULT_TWR_MOMENTA, xi_max: float = 6.5, xi_samples: int = 66):
    """Wigner rotation angle versus boost rapidity for fixed sample momenta."""
    if xi_max <= 0.0 or xi_samples < 2:
        raise ConfigError("xi schedule needs xi_max > 0 and at least 2 samples")
    xis = np.linspace(0.0, xi_max, xi_samples)
    curves = []
    for p in momenta:
        p = np.asarray(p, dtype=float)
        if p.shape != (3,):
            raise ConfigError("sample momenta must be three-vectors")
        angles = np.array([rotation_angle(wigner_unitary(x, p)) for x in xis])
        label = "(" + ",".join(f"{v:g}" for v in p) + ")"
        curves.append((label, angles))
    return xis, curves

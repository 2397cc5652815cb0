"""Gaussian momentum wavepackets for a pair of particles, plus quadrature.

Amplitudes are built from isotropic Gaussian lobes

    g(p, p0) = exp(-|p - p0|^2 / (4 sigma^2))

so |g|^2 has standard deviation sigma per axis. A two-particle model is a
sum of product terms, each term a lobe combination for particle 1 times one
for particle 2; the product kinds use a single term, the entangled kind two
correlated terms. Integrals use the Lorentz-invariant measure d^3p / (2 E(p)),
discretized on a uniform midpoint grid over a per-particle bounding box.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericalError

__all__ = [
    "GaussianLobe",
    "ModelKind",
    "MomentumModel",
    "ParticleGrid",
    "QuadratureGrid",
    "lobe_amplitude",
    "make_model",
    "model_amplitude",
    "build_grid",
    "normalize",
]


@dataclass(frozen=True)
class GaussianLobe:
    """One Gaussian lobe: center three-momentum and width sigma > 0."""

    center: tuple[float, float, float]
    sigma: float

    def __post_init__(self):
        if len(self.center) != 3:
            raise ValueError("lobe center must be a three-vector")
        if not self.sigma > 0.0:
            raise ValueError("lobe width must be positive")


class ModelKind(enum.Enum):
    EPRB = "eprb"
    AXIS_CENTERED = "axis_centered"
    SUM_TWO_LOBES = "sum_two_lobes"
    CROSS_FOUR_LOBES = "cross_four_lobes"
    ENTANGLED_PHI_PLUS = "entangled_phi_plus"


_PRODUCT_KINDS = (ModelKind.EPRB, ModelKind.AXIS_CENTERED, ModelKind.SUM_TWO_LOBES, ModelKind.CROSS_FOUR_LOBES)


def lobe_amplitude(lobe: GaussianLobe, p):
    """Evaluate g(p, center); p may be a single (3,) point or an (N, 3) batch."""
    p = np.asarray(p, dtype=float)
    d = p - np.asarray(lobe.center, dtype=float)
    return np.exp(-np.sum(d * d, axis=-1) / (4.0 * lobe.sigma**2))


@dataclass
class MomentumModel:
    """Two-particle momentum amplitude as a sum of lobe-product terms.

    normalization holds the squared-norm N of the raw amplitude under the
    invariant measure on a specific grid; it is set by ``normalize`` and
    consumed wherever N^(-1/2) scaling is needed.
    """

    kind: ModelKind
    lobes1: tuple[GaussianLobe, ...]
    lobes2: tuple[GaussianLobe, ...]
    sigma: float
    normalization: float | None = field(default=None, compare=False)

    def product_terms(self) -> list[tuple[tuple[GaussianLobe, ...], tuple[GaussianLobe, ...]]]:
        """Terms (lobes for particle 1, lobes for particle 2) of the amplitude."""
        if self.kind is ModelKind.ENTANGLED_PHI_PLUS:
            return [((self.lobes1[0],), (self.lobes2[0],)), ((self.lobes1[1],), (self.lobes2[1],))]
        return [(self.lobes1, self.lobes2)]

    def centers(self, particle: int) -> np.ndarray:
        lobes = self.lobes1 if particle == 1 else self.lobes2
        return np.array([lobe.center for lobe in lobes], dtype=float)


def _as_centers(centers) -> list[tuple[float, float, float]]:
    arr = np.atleast_2d(np.asarray(centers, dtype=float))
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ConfigError("lobe centers must be three-vectors")
    return [tuple(row) for row in arr]


def _mirror_check(a, b) -> bool:
    # mirrored in exactly the components where they differ, sign-flipped there
    diff = ~np.isclose(a, b, atol=1e-9)
    return bool(np.all(np.isclose(a[diff], -b[diff], atol=1e-9))) and bool(diff.any())


def make_model(kind: ModelKind | str, p_centers, q_centers, sigma: float) -> MomentumModel:
    """Construct a momentum model from explicit per-particle lobe centers.

    EPRB and the axis-centered kind take one center per particle; the two-lobe
    kind takes one or two (two must form a mirror pair); the four-lobe kind
    takes four per particle; the entangled kind takes two per particle, paired
    by position into two correlated product terms.
    """
    try:
        kind = ModelKind(kind)
    except ValueError:
        valid = ", ".join(k.value for k in ModelKind)
        raise ConfigError(f"unknown model {kind!r}; valid models: {valid}") from None
    if not sigma > 0.0:
        raise ConfigError("sigma must be positive")
    pc, qc = _as_centers(p_centers), _as_centers(q_centers)
    counts = {
        ModelKind.EPRB: ((1,), (1,)),
        ModelKind.AXIS_CENTERED: ((1,), (1,)),
        ModelKind.SUM_TWO_LOBES: ((1, 2), (1, 2)),
        ModelKind.CROSS_FOUR_LOBES: ((4,), (4,)),
        ModelKind.ENTANGLED_PHI_PLUS: ((2,), (2,)),
    }[kind]
    if len(pc) not in counts[0] or len(qc) not in counts[1]:
        raise ConfigError(f"{kind.value} expects {counts[0]} lobes for p and {counts[1]} for q")
    if kind is ModelKind.EPRB and not np.allclose(np.asarray(pc[0]) + np.asarray(qc[0]), 0.0, atol=1e-9):
        raise ConfigError("eprb requires q0 = -p0")
    if kind is ModelKind.SUM_TWO_LOBES:
        for centers in (pc, qc):
            if len(centers) == 2 and not _mirror_check(np.asarray(centers[0]), np.asarray(centers[1])):
                raise ConfigError("two-lobe centers must form a mirror pair")
    lobes1 = tuple(GaussianLobe(c, sigma) for c in pc)
    lobes2 = tuple(GaussianLobe(c, sigma) for c in qc)
    return MomentumModel(kind, lobes1, lobes2, sigma)


def _combination(lobes: tuple[GaussianLobe, ...], p):
    total = lobe_amplitude(lobes[0], p)
    for lobe in lobes[1:]:
        total = total + lobe_amplitude(lobe, p)
    return total


def model_amplitude(model: MomentumModel, p, q) -> float:
    """Normalized two-particle amplitude N^(-1/2) f(p, q) at a single point."""
    if model.normalization is None:
        raise ConfigError("model is not normalized; call normalize(model, grid) first")
    total = 0.0
    for lobes_p, lobes_q in model.product_terms():
        total += float(_combination(lobes_p, p)) * float(_combination(lobes_q, q))
    return total / np.sqrt(model.normalization)


@dataclass(frozen=True)
class ParticleGrid:
    """Uniform midpoint grid for one particle's momentum integrals."""

    axes: tuple[np.ndarray, np.ndarray, np.ndarray]
    cell_volume: float

    @property
    def node_count(self) -> int:
        return len(self.axes[0]) * len(self.axes[1]) * len(self.axes[2])

    def nodes(self) -> np.ndarray:
        """All grid nodes as an (N, 3) array, z fastest."""
        gx, gy, gz = np.meshgrid(*self.axes, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel(), gz.ravel()])

    def weights(self, nodes: np.ndarray | None = None) -> np.ndarray:
        """Invariant-measure weights Delta^3 p / (2 E) per node."""
        if nodes is None:
            nodes = self.nodes()
        e = np.sqrt(1.0 + np.sum(nodes * nodes, axis=1))
        return self.cell_volume / (2.0 * e)


@dataclass(frozen=True)
class QuadratureGrid:
    """Per-particle midpoint grids plus the parameters that produced them."""

    particle1: ParticleGrid
    particle2: ParticleGrid
    nodes_per_axis: int
    truncation: float


def _particle_grid(centers: np.ndarray, sigma: float, nodes_per_axis: int, truncation: float) -> ParticleGrid:
    radius = truncation * sigma
    lo = centers.min(axis=0) - radius
    hi = centers.max(axis=0) + radius
    h = (hi - lo) / nodes_per_axis
    axes = tuple(lo[k] + (np.arange(nodes_per_axis) + 0.5) * h[k] for k in range(3))
    return ParticleGrid(axes, float(np.prod(h)))


def build_grid(model: MomentumModel, nodes_per_axis: int = 41, truncation: float = 5.0) -> QuadratureGrid:
    """Axis-aligned bounding-box grid covering every lobe center to truncation*sigma."""
    if truncation < 3.0:
        raise ConfigError("truncation below 3 sigma under-covers the lobes")
    if nodes_per_axis < 2:
        raise ConfigError("nodes_per_axis must be at least 2")
    return QuadratureGrid(
        _particle_grid(model.centers(1), model.sigma, nodes_per_axis, truncation),
        _particle_grid(model.centers(2), model.sigma, nodes_per_axis, truncation),
        nodes_per_axis,
        truncation,
    )


def term_amplitudes(model: MomentumModel, pgrid: ParticleGrid, particle: int) -> np.ndarray:
    """Per-term lobe-combination values on a particle grid, shape (terms, N)."""
    nodes = pgrid.nodes()
    terms = model.product_terms()
    out = np.empty((len(terms), nodes.shape[0]))
    for m, term in enumerate(terms):
        out[m] = _combination(term[particle - 1], nodes)
    return out


def gram_matrix(amps: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Pairwise invariant-measure overlaps of term amplitudes, shape (T, T)."""
    return (amps * weights) @ amps.T


def normalize(model: MomentumModel, grid: QuadratureGrid) -> float:
    """Compute and store the squared norm N of the raw amplitude on the grid.

    N is the double invariant-measure integral of |f|^2; with it stored,
    model_amplitude and the spin channel are unit-normalized on this grid by
    construction.
    """
    a1 = term_amplitudes(model, grid.particle1, 1)
    a2 = term_amplitudes(model, grid.particle2, 2)
    g1 = gram_matrix(a1, grid.particle1.weights())
    g2 = gram_matrix(a2, grid.particle2.weights())
    raw = float(np.sum(g1 * g2))
    if raw < 1e-300:
        raise NumericalError("degenerate momentum model: raw norm underflows")
    model.normalization = raw
    return raw

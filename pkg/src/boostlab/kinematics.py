"""Relativistic kinematics for massive spin-1/2 particles, in units m = 1.

Four-vectors are ordered (E, px, py, pz) with metric signature (+,-,-,-).
Boosts are parametrized by rapidity xi and a unit axis; the default axis is
+z, which is the configuration the spinor Wigner rotation below is written
for.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

__all__ = [
    "BoostSpec",
    "energy",
    "boost_matrix",
    "boost_momentum",
    "wigner_angle",
    "wigner_angle_from_composition",
    "wigner_unitary",
    "wigner_unitaries",
    "rotation_angle",
    "rotation_axis",
]

_AXIS_TOL = 1e-12


@dataclass(frozen=True)
class BoostSpec:
    """A pure Lorentz boost: rapidity xi >= 0 along a unit three-vector."""

    rapidity: float
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if not np.isfinite(self.rapidity):
            raise ValueError("rapidity must be finite")
        n = np.asarray(self.axis, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > _AXIS_TOL:
            raise ValueError("axis must be a unit three-vector")

    @property
    def velocity(self) -> np.ndarray:
        return np.tanh(self.rapidity) * np.asarray(self.axis, dtype=float)


def energy(p) -> float:
    """On-shell energy sqrt(1 + |p|^2) of a three-momentum, m = 1."""
    p = np.asarray(p, dtype=float)
    return float(np.sqrt(1.0 + p @ p))


def boost_matrix(boost: BoostSpec) -> np.ndarray:
    """4x4 matrix of the pure boost, acting on (E, px, py, pz) columns."""
    n = np.asarray(boost.axis, dtype=float)
    ch, sh = np.cosh(boost.rapidity), np.sinh(boost.rapidity)
    lam = np.eye(4)
    lam[0, 0] = ch
    lam[0, 1:] = sh * n
    lam[1:, 0] = sh * n
    lam[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(n, n)
    return lam


def boost_momentum(boost: BoostSpec, p) -> np.ndarray:
    """Spatial part of the boosted four-momentum of an on-shell particle."""
    p = np.asarray(p, dtype=float)
    four = np.empty(4)
    four[0] = energy(p)
    four[1:] = p
    return (boost_matrix(boost) @ four)[1:]


def wigner_angle(xi1: float, xi2: float, theta: float) -> float:
    """Rotation angle produced by composing two non-collinear boosts.

    xi1, xi2 are the rapidities of the two boosts and theta the angle
    between their directions. Follows the half-angle form
    tan(omega/2) = sin(theta) / (cos(theta) + D) with
    D = sqrt(((g1+1)/(g1-1)) ((g2+1)/(g2-1))), g_i = cosh(xi_i).
    Returns omega in [0, pi); 0 when either boost is degenerate.
    """
    if xi1 <= 0.0 or xi2 <= 0.0:
        return 0.0
    g1, g2 = np.cosh(xi1), np.cosh(xi2)
    d = np.sqrt((g1 + 1.0) / (g1 - 1.0) * (g2 + 1.0) / (g2 - 1.0))
    return float(2.0 * np.arctan2(np.sin(theta), np.cos(theta) + d))


def _rotation_block(mat: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Extract the 3x3 rotation from a Lorentz matrix expected to be R (x) 1."""
    if abs(mat[0, 0] - 1.0) > tol or np.abs(mat[0, 1:]).max() > tol or np.abs(mat[1:, 0]).max() > tol:
        raise NumericalError("residual matrix is not a pure spatial rotation")
    r = mat[1:, 1:]
    if np.abs(r @ r.T - np.eye(3)).max() > tol:
        raise NumericalError("extracted rotation block fails orthogonality")
    return r


def wigner_angle_from_composition(b1: BoostSpec, b2: BoostSpec):
    """Oracle for ``wigner_angle`` via explicit 4x4 composition.

    Forms M = boost_matrix(b2) @ boost_matrix(b1), removes the residual pure
    boost carried by the image of the rest four-velocity and reads the angle
    off the remaining rotation. Returns (omega, axis); axis is None for the
    degenerate (collinear or zero-rapidity) case where omega ~ 0.
    """
    m = boost_matrix(b2) @ boost_matrix(b1)
    u = m[:, 0]
    v3 = u[1:] / u[0]
    speed = np.linalg.norm(v3)
    if speed < 1e-300:
        rot = _rotation_block(m)
    else:
        undo = BoostSpec(float(np.arctanh(speed)), tuple(-v3 / speed))
        rot = _rotation_block(boost_matrix(undo) @ m)
    s = 0.5 * np.array([rot[2, 1] - rot[1, 2], rot[0, 2] - rot[2, 0], rot[1, 0] - rot[0, 1]])
    sin_w = np.linalg.norm(s)
    cos_w = 0.5 * (np.trace(rot) - 1.0)
    omega = float(np.arctan2(sin_w, cos_w))
    if sin_w < 1e-12:
        return omega, None
    return omega, s / sin_w


def wigner_unitaries(xi: float, momenta: np.ndarray) -> np.ndarray:
    """SU(2) Wigner rotations for a +z boost, vectorized over momenta (N, 3).

    Entries follow the spinor representation of the little-group element for
    a boost of rapidity xi along +z acting on momentum p:

        U = [[alpha, beta (px - i py)], [-beta (px + i py), alpha]]

    with alpha = sqrt((E+1)/(E'+1)) (cosh(xi/2) + pz sinh(xi/2)/(E+1)),
    beta = sinh(xi/2)/sqrt((E+1)(E'+1)) and E' = E cosh(xi) + pz sinh(xi).
    """
    momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
    px, py, pz = momenta[:, 0], momenta[:, 1], momenta[:, 2]
    e = np.sqrt(1.0 + px * px + py * py + pz * pz)
    e_boosted = e * np.cosh(xi) + pz * np.sinh(xi)
    ch, sh = np.cosh(xi / 2.0), np.sinh(xi / 2.0)
    alpha = np.sqrt((e + 1.0) / (e_boosted + 1.0)) * (ch + pz / (e + 1.0) * sh)
    beta = sh / np.sqrt((e + 1.0) * (e_boosted + 1.0))
    u = np.empty((momenta.shape[0], 2, 2), dtype=complex)
    u[:, 0, 0] = alpha
    u[:, 0, 1] = beta * (px - 1j * py)
    u[:, 1, 0] = -beta * (px + 1j * py)
    u[:, 1, 1] = alpha
    return u


def wigner_unitary(xi: float, p) -> np.ndarray:
    """2x2 SU(2) Wigner rotation for a +z boost acting on momentum p."""
    return wigner_unitaries(xi, np.asarray(p, dtype=float).reshape(1, 3))[0]


def rotation_angle(u: np.ndarray) -> float:
    """Rotation angle in [0, pi) of an SU(2) matrix of the Wigner form."""
    return float(2.0 * np.arctan2(abs(u[0, 1]), u[0, 0].real))


def rotation_axis(u: np.ndarray):
    """Unit rotation axis of an SU(2) matrix u = cos(w/2) + i sin(w/2) n.sigma.

    Returns None when the rotation is within ~1e-12 of the identity. Note the
    positive-angle axis of the equivalent SO(3) rotation is -n.
    """
    nx = u[0, 1].imag
    ny = u[0, 1].real
    nz = u[0, 0].imag
    s = np.array([nx, ny, nz])
    norm = np.linalg.norm(s)
    if norm < 1e-12:
        return None
    return s / norm

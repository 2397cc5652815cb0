"""Two-qubit spin-state analysis: Bell states, concurrence, correlation data.

Density matrices are 4x4 complex arrays in the product basis
|00>, |01>, |10>, |11>. The diagonal of the correlation tensor,
t_i = Tr[rho sigma_i (x) sigma_i], locates Bell-diagonal states inside the
tetrahedron with vertices at the four Bell states; the separable states among
them fill the octahedron |t_x| + |t_y| + |t_z| <= 1.
"""

import numpy as np

from .errors import ConfigError

__all__ = [
    "PAULI",
    "BELL_KETS",
    "BELL_T_VECTORS",
    "bell_ket",
    "bell_state",
    "validate_density_matrix",
    "concurrence",
    "concurrence_eigenvalues",
    "t_vector",
    "correlation_data",
    "bell_diagonality_deviation",
    "is_bell_diagonal",
    "in_separable_octahedron",
]

PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

_SQRT_HALF = 1.0 / np.sqrt(2.0)

_BELL_PATTERNS = {
    "phi+": np.array([1.0, 0.0, 0.0, 1.0]),
    "phi-": np.array([1.0, 0.0, 0.0, -1.0]),
    "psi+": np.array([0.0, 1.0, 1.0, 0.0]),
    "psi-": np.array([0.0, 1.0, -1.0, 0.0]),
}

BELL_KETS = {kind: v.astype(complex) * _SQRT_HALF for kind, v in _BELL_PATTERNS.items()}

BELL_T_VECTORS = {
    "phi+": np.array([1.0, -1.0, 1.0]),
    "phi-": np.array([-1.0, 1.0, 1.0]),
    "psi+": np.array([1.0, 1.0, -1.0]),
    "psi-": np.array([-1.0, -1.0, -1.0]),
}

_SIGMA_YY = np.kron(PAULI["y"], PAULI["y"])


def bell_ket(kind: str) -> np.ndarray:
    try:
        return BELL_KETS[kind].copy()
    except KeyError:
        raise ConfigError(f"unknown Bell state {kind!r}; choose from {sorted(BELL_KETS)}") from None


def bell_state(kind: str) -> np.ndarray:
    """Density matrix (projector) of the named Bell state.

    Built from the integer amplitude pattern so entries are exactly +/-0.5
    and the correlation diagonal reproduces BELL_T_VECTORS exactly.
    """
    bell_ket(kind)  # validates the name
    v = _BELL_PATTERNS[kind]
    return np.outer(v, v).astype(complex) / 2.0


def validate_density_matrix(rho: np.ndarray, herm_tol: float = 1e-8, trace_tol: float = 1e-6) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ConfigError("expected a 4x4 two-qubit density matrix")
    if np.abs(rho - rho.conj().T).max() > herm_tol:
        raise ConfigError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        raise ConfigError("density matrix trace deviates from 1")
    return rho


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def concurrence_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Descending square-root eigenvalues of rho rho~ via the Hermitian form.

    rho~ is the spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x)
    sigma_y); the eigenvalues of rho rho~ equal those of the Hermitian PSD
    matrix sqrt(rho) rho~ sqrt(rho), which is what gets diagonalized here.
    """
    rho = validate_density_matrix(rho)
    flipped = _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    root = _psd_sqrt(rho)
    core = root @ flipped @ root
    core = 0.5 * (core + core.conj().T)
    vals = np.clip(np.linalg.eigvalsh(core), 0.0, None)
    return np.sqrt(vals)[::-1]


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state."""
    lam = concurrence_eigenvalues(rho)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def t_vector(rho: np.ndarray) -> np.ndarray:
    """Diagonal (t_xx, t_yy, t_zz) of the correlation tensor."""
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(rho @ np.kron(PAULI[k], PAULI[k])).real for k in "xyz"])


def correlation_data(rho: np.ndarray):
    """Local Bloch vectors r, s and the full 3x3 correlation tensor T."""
    rho = np.asarray(rho, dtype=complex)
    eye = np.eye(2, dtype=complex)
    r = np.array([np.trace(rho @ np.kron(PAULI[k], eye)).real for k in "xyz"])
    s = np.array([np.trace(rho @ np.kron(eye, PAULI[k])).real for k in "xyz"])
    t = np.array([[np.trace(rho @ np.kron(PAULI[a], PAULI[b])).real for b in "xyz"] for a in "xyz"])
    return r, s, t


def bell_diagonality_deviation(rho: np.ndarray) -> float:
    """Largest magnitude among r, s and off-diagonal T entries; 0 iff Bell diagonal."""
    r, s, t = correlation_data(rho)
    off = t - np.diag(np.diag(t))
    return float(max(np.abs(r).max(), np.abs(s).max(), np.abs(off).max()))


def is_bell_diagonal(rho: np.ndarray, tol: float = 1e-6) -> bool:
    return bell_diagonality_deviation(rho) < tol


def in_separable_octahedron(t: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether a Bell-diagonal t-vector lies in the separable octahedron."""
    t = np.asarray(t, dtype=float)
    return bool(np.abs(t).sum() <= 1.0 + tol)

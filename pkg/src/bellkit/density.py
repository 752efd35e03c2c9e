"""Two-qubit density matrices and entanglement measures.

States live in the computational basis (uu, ud, du, dd) unless a
function says otherwise.  The "magic" basis is the phased Bell basis

    e1 = Phi+,  e2 = i Phi-,  e3 = i Psi+,  e4 = Psi-

in which every real unit combination is maximally entangled.
Bell-diagonal states are stored as probability 4-vectors ordered by the
two-bit labels (Phi+, Psi+, Phi-, Psi-), i.e. p[0] is the fidelity F to
the standard Phi+ state.
"""

from __future__ import annotations

import math

import numpy as np

_S2 = 1.0 / math.sqrt(2.0)

PHI_PLUS_VEC = np.array([_S2, 0, 0, _S2], dtype=complex)
PSI_PLUS_VEC = np.array([0, _S2, _S2, 0], dtype=complex)
PHI_MINUS_VEC = np.array([_S2, 0, 0, -_S2], dtype=complex)
PSI_MINUS_VEC = np.array([0, _S2, -_S2, 0], dtype=complex)

#: Columns are the Bell states in two-bit label order 00, 01, 10, 11.
BELL_BASIS = np.column_stack(
    [PHI_PLUS_VEC, PSI_PLUS_VEC, PHI_MINUS_VEC, PSI_MINUS_VEC])

#: Columns are e1..e4 of the magic basis.
MAGIC_BASIS = np.column_stack(
    [PHI_PLUS_VEC, 1j * PHI_MINUS_VEC, 1j * PSI_PLUS_VEC, PSI_MINUS_VEC])


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def h_bound(f: float) -> float:
    """Entanglement-of-formation lower bound from the fully entangled fraction."""
    if not 0.0 <= f <= 1.0:
        raise ValueError("f must lie in [0, 1]")
    if f < 0.5:
        return 0.0
    return binary_entropy(0.5 + math.sqrt(f * (1.0 - f)))


def check_density_matrix(M: np.ndarray, atol: float = 1e-12) -> None:
    """Validate Hermiticity, unit trace, and positivity (within tolerance)."""
    M = np.asarray(M)
    if M.shape != (4, 4):
        raise ValueError("density matrix must be 4x4")
    if np.abs(M - M.conj().T).max() > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(M).real - 1.0) > atol:
        raise ValueError("density matrix trace is not 1")
    if np.linalg.eigvalsh(M).min() < -1e-10:
        raise ValueError("density matrix has a negative eigenvalue")


def validate_bell_diagonal(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError("Bell-diagonal state must be a probability 4-vector")
    if p.min() < 0 or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("Bell-diagonal entries must be nonnegative and sum to 1")
    return p


def werner(F: float) -> np.ndarray:
    """Bell-diagonal 4-vector with weight F on the standard state, rest equal."""
    if not 0.0 <= F <= 1.0:
        raise ValueError("fidelity must lie in [0, 1]")
    q = (1.0 - F) / 3.0
    return np.array([F, q, q, q])


def maximally_mixed() -> np.ndarray:
    """The garbage state: identity / 4."""
    return np.eye(4, dtype=complex) / 4.0


def bell_diagonal_to_density(p) -> np.ndarray:
    p = validate_bell_diagonal(p)
    return BELL_BASIS @ np.diag(p.astype(complex)) @ BELL_BASIS.conj().T


def product_psi_plus_mixture(p: float) -> np.ndarray:
    """The non-Bell-diagonal mixture (1-p)|uu><uu| + p|Psi+><Psi+|."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    uu = np.zeros(4, dtype=complex)
    uu[0] = 1.0
    return (1.0 - p) * np.outer(uu, uu.conj()) + \
        p * np.outer(PSI_PLUS_VEC, PSI_PLUS_VEC.conj())


def to_magic_basis(M: np.ndarray) -> np.ndarray:
    """Rewrite a computational-basis density matrix in the magic basis."""
    return MAGIC_BASIS.conj().T @ np.asarray(M) @ MAGIC_BASIS


def magic_coefficients(v: np.ndarray) -> np.ndarray:
    """Components of a computational-basis pure state along e1..e4."""
    return MAGIC_BASIS.conj().T @ np.asarray(v)


def fully_entangled_fraction(M: np.ndarray) -> float:
    """Largest overlap of M with any maximally entangled state.

    Equals the largest eigenvalue of the real part of M written in the
    magic basis, where the maximally entangled states are exactly the
    real unit vectors.
    """
    Mm = to_magic_basis(M)
    return float(np.linalg.eigvalsh((Mm + Mm.conj().T).real / 2.0).max())


def pure_entanglement(v: np.ndarray) -> float:
    """Entropy of entanglement of a two-qubit pure state.

    Computed from the magic-basis components a_j as
    H(1/2 (1 + sqrt(1 - C^2))) with C = |sum_j a_j^2| (squares of the
    complex components, not of their moduli).
    """
    v = np.asarray(v, dtype=complex)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("pure state must be normalized")
    alpha = magic_coefficients(v)
    C = abs(np.sum(alpha ** 2))
    C = min(C, 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - C * C)))


def von_neumann_entropy(x) -> float:
    """Base-2 entropy of a Bell-diagonal 4-vector or a density matrix."""
    x = np.asarray(x)
    if x.ndim == 1:
        ev = validate_bell_diagonal(x)
    else:
        ev = np.linalg.eigvalsh(x)
    ev = ev[ev > 1e-15]
    return float(-(ev * np.log2(ev)).sum())


def eof_bell_diagonal(p) -> float:
    """Exact entanglement of formation of a Bell-diagonal state: h(max p)."""
    p = validate_bell_diagonal(p)
    return h_bound(float(p.max()))


def _closure_phases(p_sorted: np.ndarray) -> np.ndarray:
    """Phases theta with sum_j p_j exp(i theta_j) = 0, for descending p, max <= 1/2.

    Treats the four weights as a closed polygon with sides p1, p2 and
    p3 + p4 (the last two collinear); p1 <= 1/2 guarantees the triangle
    inequality, so closure always exists.
    """
    a, b = p_sorted[0], p_sorted[1]
    c = p_sorted[2] + p_sorted[3]
    if a == 0.0:
        return np.zeros(4)
    if b == 0.0:
        # then c == 0 and a == 1 > 1/2: excluded by the caller
        raise ValueError("no closure for a point mass")
    cosg = (a * a + b * b - c * c) / (2.0 * a * b)
    beta = math.pi - math.acos(min(1.0, max(-1.0, cosg)))
    rest = -(a + b * complex(math.cos(beta), math.sin(beta)))
    gamma = math.atan2(rest.imag, rest.real) if abs(rest) > 1e-15 else 0.0
    return np.array([0.0, beta, gamma, gamma])


def minimal_ensemble(p) -> list:
    """A minimum-entanglement pure-state ensemble realizing a Bell-diagonal state.

    Returns [(weight, state_vector), ...] in the computational basis.
    For max p >= 1/2 the eight members sqrt(p1)|e1> + i(+-sqrt(p2)|e2>
    +- sqrt(p3)|e3> +- sqrt(p4)|e4>) (largest weight first) each carry
    entanglement h(max p); for max p < 1/2 phase factors closing
    sum_j p_j exp(i theta_j) = 0 make all eight members unentangled.
    """
    p = validate_bell_diagonal(p)
    order = np.argsort(-p, kind="stable")
    ps = p[order]
    if ps[0] >= 1.0 - 1e-15:
        return [(1.0, MAGIC_BASIS[:, order[0]].copy())]
    roots = np.sqrt(ps).astype(complex)
    if ps[0] >= 0.5:
        coeff0 = np.array([roots[0], 1j * roots[1], 1j * roots[2], 1j * roots[3]])
    else:
        half = np.exp(0.5j * _closure_phases(ps))
        coeff0 = roots * half
    members = []
    for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1),
                  (-1, 1, 1), (-1, 1, -1), (-1, -1, 1), (-1, -1, -1)):
        coeff = coeff0 * np.array([1, *signs])
        vec = np.zeros(4, dtype=complex)
        for k in range(4):
            vec += coeff[k] * MAGIC_BASIS[:, order[k]]
        members.append((0.125, vec))
    return members


def ensemble_mixture(members) -> np.ndarray:
    """Density matrix sum_k w_k |v_k><v_k| of an ensemble."""
    M = np.zeros((4, 4), dtype=complex)
    for w, v in members:
        M += w * np.outer(v, np.conj(v))
    return M


def random_density_matrix(rng, rank: int = 4) -> np.ndarray:
    """Random mixed state from a complex Ginibre factor A A^dagger / tr."""
    A = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    M = A @ A.conj().T
    return M / np.trace(M).real


def random_pure_state(rng, dim: int = 4) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def format_density(M: np.ndarray) -> str:
    """Serialize as 16 whitespace-separated re,im pairs in row-major order."""
    M = np.asarray(M, dtype=complex)
    return " ".join(f"{z.real:.12g},{z.imag:.12g}" for z in M.ravel())

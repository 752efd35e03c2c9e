"""Discrete twirl groups and averaged bilateral conjugation.

A twirl replaces a two-qubit state M by the average of U^dag M U over a
discrete set of bilateral rotations U = u (x) u.  The 12-element
tetrahedral set projects any state to Werner form (singlet weight kept,
everything else isotropic); the 4-element orthorhombic set only kills
Bell-basis off-diagonals; the two 3-element sets map Bell-diagonal
states to Werner form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import BELL_BASIS

_I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

TWIRL_KINDS = ("T12", "D2", "TRIPLE", "AXES")


def bilateral_rotation(axis: str) -> np.ndarray:
    """B_axis = exp(-i pi sigma/4) applied to both qubits."""
    u = np.cos(np.pi / 4) * _I2 - 1j * np.sin(np.pi / 4) * _SIGMA[axis]
    return np.kron(u, u)


def _word(letters: str) -> np.ndarray:
    # letters are applied left to right in time, so the matrix product
    # runs right to left ("xy" = By @ Bx)
    out = np.eye(4, dtype=complex)
    for ax in letters:
        out = bilateral_rotation(ax) @ out
    return out


_WORDS = {
    "T12": ["", "xx", "yy", "zz", "xy", "yz", "zx", "yx",
            "xyxy", "yzyz", "zxzx", "yxyx"],
    "D2": ["", "xx", "yy", "zz"],
    "TRIPLE": ["", "xxxy", "xxxz"],
    "AXES": ["x", "y", "z"],
}


@dataclass
class TwirlGroup:
    kind: str
    elements: list


def twirl_group(kind: str) -> TwirlGroup:
    if kind not in TWIRL_KINDS:
        raise ValueError(f"unknown twirl kind {kind!r}")
    return TwirlGroup(kind, [_word(w) for w in _WORDS[kind]])


def apply_twirl(M: np.ndarray, group: TwirlGroup) -> np.ndarray:
    """Arithmetic average of the rotated matrices (1/N) sum U^dag M U."""
    M = np.asarray(M, dtype=complex)
    out = np.zeros_like(M)
    for U in group.elements:
        out += U.conj().T @ M @ U
    return out / len(group.elements)


_UNILATERAL_Y = np.kron(SIGMA_Y, _I2)


def modified_twirl(M: np.ndarray) -> np.ndarray:
    """Twirl that fixes the standard Phi+ component and equalizes the rest.

    Unilateral sigma_y (swapping Phi+ with Psi-), the tetrahedral twirl,
    then unilateral sigma_y again.
    """
    M = _UNILATERAL_Y @ np.asarray(M, dtype=complex) @ _UNILATERAL_Y.conj().T
    M = apply_twirl(M, twirl_group("T12"))
    return _UNILATERAL_Y.conj().T @ M @ _UNILATERAL_Y


def bell_basis_matrix(M: np.ndarray) -> np.ndarray:
    """Rewrite a computational-basis matrix in the Bell basis (label order)."""
    return BELL_BASIS.conj().T @ np.asarray(M) @ BELL_BASIS

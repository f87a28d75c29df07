"""Qubit-only observables: reduced density matrix, populations, negativity, fidelity.

The 8x8 qubit density matrix lives on the basis
``{|ggg>, |gge>, |geg>, |egg>, |gee>, |ege>, |eeg>, |eee>}``, grouped by the
number of excited qubits.  Because the total excitation number is fixed,
qubit configurations with different excitation counts can never share a
field configuration, so the reduced matrix is block diagonal in excitation
number by construction; the GHZ fidelity consequently equals
(P_eee + P_ggg)/2 identically, which the test suite uses as a cross-check
between independent code paths.

Negativity follows the doubled convention: each one-vs-two cut contributes
sum(|eig| - eig) over the partial-transpose eigenvalues, i.e. twice the
textbook absolute sum of negative eigenvalues, and the tripartite value is
the geometric mean of the three cuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import field_configurations

# qubit basis order: excitation number ascending, then ascending binary
# pattern (qubit 1 = most significant bit)
QUBIT_BASIS = (
    (0, 0, 0),
    (0, 0, 1),
    (0, 1, 0),
    (1, 0, 0),
    (0, 1, 1),
    (1, 0, 1),
    (1, 1, 0),
    (1, 1, 1),
)
_GGG, _EEE = 0, 7
_ONE_EXCITED = (1, 2, 3)
_TWO_EXCITED = (4, 5, 6)


def _partial_transpose_maps():
    """Index maps out[i, j] = rho[i', j'] with the cut qubit's bra/ket swapped."""
    position = {bits: k for k, bits in enumerate(QUBIT_BASIS)}
    maps = []
    for cut in range(3):
        src_i = np.empty((8, 8), dtype=int)
        src_j = np.empty((8, 8), dtype=int)
        for i in range(8):
            for j in range(8):
                bi, bj = list(QUBIT_BASIS[i]), list(QUBIT_BASIS[j])
                bi[cut], bj[cut] = bj[cut], bi[cut]
                src_i[i, j] = position[tuple(bi)]
                src_j[i, j] = position[tuple(bj)]
        maps.append((src_i, src_j))
    return tuple(maps)


_PT_MAPS = _partial_transpose_maps()


@dataclass(frozen=True)
class Populations:
    p_eee: float
    p_eeg: float
    p_egg: float
    p_ggg: float

    def total(self) -> float:
        return self.p_eee + self.p_eeg + self.p_egg + self.p_ggg


@dataclass(frozen=True)
class NegativityResult:
    per_cut: tuple[float, float, float]
    tripartite: float


def reduce_qubits(state: np.ndarray, n_modes: int) -> np.ndarray:
    """Trace the field out of a three-excitation amplitude vector.

    rho[q, q'] = sum_f A[q, f] conj(A[q', f]) over field configurations f.
    The canonical basis layout keeps, for each excitation count, one
    contiguous slab per qubit pattern with identical field ordering, so each
    diagonal block is a small Gram matrix of a reshaped slice.  Entries
    between different excitation counts are exactly zero: those
    configurations never share a field state.
    """
    state = np.asarray(state)
    # field width for k excited qubits is the number of (3-k)-photon configurations
    w2 = field_configurations(1, n_modes)
    w1 = field_configurations(2, n_modes)
    w0 = field_configurations(3, n_modes)
    expected = 1 + 3 * w2 + 3 * w1 + w0
    if len(state) != expected:
        raise ValueError(
            f"state has {len(state)} amplitudes, expected {expected} for n_modes={n_modes}"
        )
    rho = np.zeros((8, 8), dtype=complex)
    # (rho indices per canonical enumeration order, offset, field width)
    blocks = [
        ((_EEE,), 0, 1),
        (_TWO_EXCITED, 1, w2),
        (_ONE_EXCITED, 1 + 3 * w2, w1),
        ((_GGG,), 1 + 3 * w2 + 3 * w1, w0),
    ]
    for rho_idx, offset, width in blocks:
        slab = state[offset : offset + len(rho_idx) * width].reshape(len(rho_idx), width)
        gram = slab @ slab.conj().T
        for a, ra in enumerate(rho_idx):
            for b, rb in enumerate(rho_idx):
                rho[ra, rb] = gram[a, b]
    return rho


def populations(rho: np.ndarray) -> Populations:
    """Diagonal populations grouped by the number of excited qubits."""
    diag = np.real(np.diag(rho))
    return Populations(
        p_eee=float(diag[_EEE]),
        p_eeg=float(diag[list(_TWO_EXCITED)].sum()),
        p_egg=float(diag[list(_ONE_EXCITED)].sum()),
        p_ggg=float(diag[_GGG]),
    )


def partial_transpose(rho: np.ndarray, cut: int) -> np.ndarray:
    """Transpose the indices of one qubit (0, 1, or 2) in an 8x8 density matrix."""
    if cut not in (0, 1, 2):
        raise ValueError("cut must be 0, 1, or 2")
    src_i, src_j = _PT_MAPS[cut]
    return rho[src_i, src_j]


def hermitian_eigenvalues(matrix: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a small Hermitian matrix by cyclic Jacobi rotations.

    Each rotation zeroes one off-diagonal pair with a unitary that absorbs
    the pair's complex phase; sweeps repeat until the off-diagonal Frobenius
    norm drops below ``tol``.  On these fixed 8x8 matrices robustness
    matters more than asymptotic speed.
    """
    h = np.array(matrix, dtype=complex)
    n = h.shape[0]
    if h.shape != (n, n):
        raise ValueError("matrix must be square")

    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(h[p, q]) ** 2 for p in range(n) for q in range(p + 1, n)))
        if off < tol:
            return np.sort(np.real(np.diag(h)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = h[p, q]
                r = abs(hpq)
                if r < 1e-150:
                    # cannot affect the tolerance, and dividing by a
                    # subnormal modulus overflows
                    h[p, q] = 0.0
                    h[q, p] = 0.0
                    continue
                w = hpq / r
                app = h[p, p].real
                aqq = h[q, q].real
                angle = 0.5 * math.atan2(2.0 * r, app - aqq)
                c = math.cos(angle)
                s = math.sin(angle)
                # rotation columns: |p> -> c|p> + s conj(w)|q>, |q> -> -s w|p> + c|q>
                col_p = c * h[:, p] + s * np.conj(w) * h[:, q]
                col_q = -s * w * h[:, p] + c * h[:, q]
                h[:, p], h[:, q] = col_p, col_q
                row_p = c * h[p, :] + s * w * h[q, :]
                row_q = -s * np.conj(w) * h[p, :] + c * h[q, :]
                h[p, :], h[q, :] = row_p, row_q
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
    off = math.sqrt(sum(abs(h[p, q]) ** 2 for p in range(n) for q in range(p + 1, n)))
    raise ArithmeticError(
        f"Jacobi sweep did not converge in {max_sweeps} sweeps; "
        f"remaining off-diagonal norm {off:.3e}"
    )


def negativity(rho: np.ndarray) -> NegativityResult:
    """Per-cut and tripartite negativity of a three-qubit density matrix.

    Each cut's value is sum(|eig| - eig) over the partial-transpose
    eigenvalues (the doubled convention); the tripartite negativity is the
    geometric mean over the cuts A|BC, B|AC, C|AB.
    """
    per_cut = []
    for cut in range(3):
        eigs = hermitian_eigenvalues(partial_transpose(rho, cut))
        per_cut.append(float(np.sum(np.abs(eigs) - eigs)))
    product = per_cut[0] * per_cut[1] * per_cut[2]
    return NegativityResult(tuple(per_cut), float(np.cbrt(product)))


def ghz_fidelity(rho: np.ndarray) -> float:
    """Uhlmann fidelity against the maximally coherent three-qubit state.

    The target (|ggg> + |eee>)/sqrt(2) is pure, so the general
    root-matrix formula collapses exactly to the overlap
    <GHZ| rho |GHZ> = (rho_ggg,ggg + rho_eee,eee + 2 Re rho_eee,ggg) / 2;
    no approximation is involved.
    """
    value = 0.5 * (rho[_GGG, _GGG].real + rho[_EEE, _EEE].real) + rho[_EEE, _GGG].real
    return float(min(1.0, max(0.0, value)))


def ghz_projector() -> np.ndarray:
    """Density matrix of (|ggg> + |eee>)/sqrt(2) on the qubit basis."""
    psi = np.zeros(8, dtype=complex)
    psi[_GGG] = psi[_EEE] = 1.0 / math.sqrt(2.0)
    return np.outer(psi, psi.conj())

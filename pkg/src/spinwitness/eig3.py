"""Eigenvalues of 3x3 Hermitian matrices.

The trigonometric solution of the characteristic cubic is used when the
spectrum is well separated; near-degenerate spectra fall back to cyclic
complex Jacobi rotations, where the closed form loses digits.
"""

from __future__ import annotations

import math

import numpy as np

DEGENERACY_RTOL = 1e-12


def eigvalsh3(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian 3x3 matrix, sorted descending."""
    a = _hermitian_part(m)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.zeros(3)
    vals = _closed_form(a, scale)
    if vals is None:
        vals, _ = jacobi_eigh(a)
    return np.sort(vals)[::-1]


def _closed_form(a: np.ndarray, scale: float):
    q = float(np.real(np.trace(a))) / 3.0
    off = abs(a[0, 1]) ** 2 + abs(a[0, 2]) ** 2 + abs(a[1, 2]) ** 2
    diag = np.real(np.diag(a)) - q
    p2 = float(np.sum(diag**2)) + 2.0 * off
    p = math.sqrt(p2 / 6.0)
    if p <= DEGENERACY_RTOL * scale:
        return None
    b = (a - q * np.eye(3)) / p
    r = float(np.real(np.linalg.det(b))) / 2.0
    # r = +-1 means a double root; acos is ill-conditioned there
    if 1.0 - abs(r) < 1e3 * DEGENERACY_RTOL:
        return None
    phi = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return np.array([e1, 3.0 * q - e1 - e3, e3])


def jacobi_eigh(m: np.ndarray, tol: float = 1e-15, max_sweeps: int = 50):
    """Cyclic Jacobi for a small Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors in the columns.
    """
    a = _hermitian_part(m).astype(complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[i, k]) ** 2 for i in range(n) for k in range(n) if i != k))
        if off <= tol * max(1.0, float(np.max(np.abs(np.diag(a))))):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) == 0.0:
                    continue
                # remove the phase, then a real Jacobi rotation
                phase = apq / abs(apq)
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * math.atan2(2.0 * abs(apq), aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
                v = v @ rot
    return np.real(np.diag(a)).copy(), v


def _hermitian_part(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return (a + a.conj().T) / 2.0

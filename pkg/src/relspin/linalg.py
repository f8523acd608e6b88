"""Dense complex linear algebra for the small (dimension <= 16) operators used here.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Tensor factors are
ordered left to right: factor 0 is the leftmost factor of a Kronecker product.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from math import hypot, prod

import numpy as np

from .constants import TOL
from .errors import DimensionMismatch, NotConverged, NotHermitian


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {m.shape}")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_defect(a: np.ndarray) -> float:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return np.inf
    return float(np.max(np.abs(a - dagger(a)), initial=0.0))


def is_hermitian(a: np.ndarray, tol: float = TOL.EPS_HERM) -> bool:
    a = as_matrix(a)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    return hermiticity_defect(a) <= tol * scale


def kron(a, b, *more) -> np.ndarray:
    """Kronecker product of two or more matrices (or vectors)."""
    out = np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    for m in more:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def kron_all(factors: Iterable) -> np.ndarray:
    factors = list(factors)
    if not factors:
        raise DimensionMismatch("kron_all needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.linalg.norm(off))


def hermitian_eigen(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending
    order and the matching orthonormal eigenvectors as the columns of the
    second array, so that ``h @ V == V @ diag(w)``.

    Raises :class:`NotHermitian` if ``h`` fails the symmetry check and
    :class:`NotConverged` if the sweep cap is hit.
    """
    a = as_matrix(h)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch(f"square matrix required, got {a.shape}")
    if not is_hermitian(a):
        raise NotHermitian(f"max|A - A^dagger| = {hermiticity_defect(a):.3e}")
    a = 0.5 * (a + dagger(a))
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    tiny = np.finfo(float).tiny

    for _ in range(TOL.MAX_SWEEPS):
        if _off_norm(a) < TOL.EPS_JACOBI * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tiny:
                    continue
                # phase e^{-i phi} makes the (p, q) element real, then a real Jacobi rotation kills it
                phase = np.conj(apq) / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + hypot(1.0, tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * phase, c * phase]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    else:
        if _off_norm(a) >= TOL.EPS_JACOBI * scale:
            raise NotConverged(f"Jacobi did not converge in {TOL.MAX_SWEEPS} sweeps")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def singular_values(a) -> np.ndarray:
    """Singular values (descending) by one-sided Jacobi orthogonalisation of the columns.

    Accurate to about ``eps * ||a||`` in absolute terms, including the small ones,
    which is what squaring into ``a^dagger a`` would lose.
    """
    u = as_matrix(a).copy()
    n = u.shape[1]
    for _ in range(TOL.MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(np.vdot(u[:, p], u[:, p]).real)
                beta = float(np.vdot(u[:, q], u[:, q]).real)
                gamma = complex(np.vdot(u[:, p], u[:, q]))
                mag = abs(gamma)
                if mag <= 1e-15 * np.sqrt(alpha * beta) or mag == 0.0:
                    continue
                rotated = True
                wq = u[:, q] * (np.conj(gamma) / mag)
                zeta = (beta - alpha) / (2.0 * mag)
                t = (1.0 if zeta >= 0.0 else -1.0) / (abs(zeta) + hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                up = u[:, p].copy()
                u[:, p] = c * up - s * wq
                u[:, q] = s * up + c * wq
        if not rotated:
            break
    else:
        raise NotConverged(f"one-sided Jacobi did not converge in {TOL.MAX_SWEEPS} sweeps")
    return np.sort(np.linalg.norm(u, axis=0))[::-1]


def eigvalsh(h) -> np.ndarray:
    return hermitian_eigen(h)[0]


def hermitian_function(h, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum."""
    w, v = hermitian_eigen(h)
    return (v * f(w)) @ dagger(v)


def psd_sqrt(h) -> np.ndarray:
    return hermitian_function(h, lambda w: np.sqrt(np.clip(w, 0.0, None)))


def _check_dims(n: int, dims: Sequence[int]) -> list[int]:
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or prod(dims) != n:
        raise DimensionMismatch(f"factor dims {dims} do not multiply to {n}")
    return dims


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every factor not in ``keep``.

    The kept factors stay in ascending index order in the result, whatever
    order ``keep`` lists them in.
    """
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {rho.shape}")
    dims = _check_dims(rho.shape[0], dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"keep={keep} is not a nonempty subset of range({n})")
    drop = [i for i in range(n) if i not in keep]

    t = rho.reshape(dims + dims)
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    dk = prod(dims[i] for i in keep)
    dd = prod(dims[i] for i in drop)
    t = t.transpose(perm).reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def partial_transpose(rho, dims: Sequence[int], subsystem=1) -> np.ndarray:
    """Transpose the indices of one tensor factor.

    ``subsystem`` is a factor index, or ``"A"``/``"B"`` for bipartite ``dims``.
    """
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {rho.shape}")
    dims = _check_dims(rho.shape[0], dims)
    if isinstance(subsystem, str):
        if len(dims) != 2 or subsystem not in ("A", "B"):
            raise DimensionMismatch("subsystem 'A'/'B' requires exactly two factors")
        subsystem = 0 if subsystem == "A" else 1
    n = len(dims)
    if not 0 <= subsystem < n:
        raise DimensionMismatch(f"no factor {subsystem} among {n}")
    t = rho.reshape(dims + dims)
    perm = list(range(2 * n))
    perm[subsystem], perm[n + subsystem] = perm[n + subsystem], perm[subsystem]
    return t.transpose(perm).reshape(rho.shape)

"""Real symmetric eigensolvers.

Two routes are provided and are meant to check each other:

* Sturm-sequence bisection on symmetric tridiagonal matrices
  (:func:`sturm_count`, :func:`eigen_sym_tridiag`, :func:`eigen_sym_tridiag_many`);
* Householder reduction of a dense symmetric matrix followed either by the
  bisection above (values only) or by implicit-shift QL (values and vectors),
  see :func:`eigen_sym_dense`.

Everything works in float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

EPS = np.finfo(float).eps
PIVMIN = 1e-300
_BLOCK = 32


@dataclass(frozen=True)
class SymTridiagonal:
    """Symmetric tridiagonal matrix stored as diagonal and first off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float).ravel()
        off = np.array(self.offdiag, dtype=float).ravel()
        if diag.size == 0:
            raise DomainError("empty matrix")
        if off.size != diag.size - 1:
            raise DomainError(f"offdiag has length {off.size}, expected {diag.size - 1}")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise DomainError("non-finite matrix entry")
        diag.flags.writeable = False
        off.flags.writeable = False
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def dim(self) -> int:
        return self.diag.size

    def gershgorin(self) -> tuple[float, float]:
        r = np.zeros(self.dim)
        a = np.abs(self.offdiag)
        r[:-1] += a
        r[1:] += a
        return float(np.min(self.diag - r)), float(np.max(self.diag + r))

    def to_dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        k = np.arange(self.dim - 1)
        out[k, k + 1] = self.offdiag
        out[k + 1, k] = self.offdiag
        return out


@dataclass(frozen=True)
class SymDense:
    """Dense real symmetric matrix; symmetry is checked exactly, never enforced."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DomainError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("non-finite matrix entry")
        if not np.array_equal(a, a.T):
            raise DomainError("matrix is not symmetric")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _sturm_counts(diag, off2, x):
    """Counts of eigenvalues below each x for a batch of padded matrices.

    diag has shape (B, d), off2 (squared couplings) shape (B, d-1), x shape (B, K).
    """
    x = np.asarray(x, dtype=float)
    q = diag[:, :1] - x
    q[np.abs(q) < PIVMIN] = -PIVMIN
    count = (q < 0).astype(np.int64)
    t = np.empty_like(q)
    for i in range(1, diag.shape[1]):
        np.divide(off2[:, i - 1 : i], q, out=t)
        np.subtract(diag[:, i : i + 1] - x, t, out=q)
        q[np.abs(q) < PIVMIN] = -PIVMIN
        count += q < 0
    return count


def sturm_count(m: SymTridiagonal, x: float) -> int:
    """Number of eigenvalues of ``m`` strictly below ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"non-finite shift {x!r}")
    c = _sturm_counts(m.diag[None, :], (m.offdiag**2)[None, :], np.array([[x]]))
    return int(c[0, 0])


def eigen_sym_tridiag_many(mats) -> list[np.ndarray]:
    """Eigenvalues of several tridiagonal matrices, bisected together.

    Matrices are padded to a common size with decoupled diagonal entries lying
    above every Gershgorin interval, so the padding never enters a count.
    """
    mats = list(mats)
    if not mats:
        return []
    out: list[np.ndarray | None] = [None] * len(mats)
    todo = []
    for idx, m in enumerate(mats):
        if m.dim == 1 or not np.any(m.offdiag):
            out[idx] = np.sort(m.diag)
        else:
            todo.append(idx)
    if not todo:
        return out

    dmax = max(mats[i].dim for i in todo)
    bounds = np.array([mats[i].gershgorin() for i in todo])
    width = bounds[:, 1] - bounds[:, 0]
    scale = np.maximum(width, np.max(np.abs(bounds), axis=1))
    pad = bounds[:, 1].max() + 2.0 * scale.max() + 1.0

    B = len(todo)
    diag = np.full((B, dmax), pad)
    off2 = np.zeros((B, dmax - 1))
    valid = np.zeros((B, dmax), dtype=bool)
    for b, i in enumerate(todo):
        m = mats[i]
        diag[b, : m.dim] = m.diag
        off2[b, : m.dim - 1] = m.offdiag**2
        valid[b, : m.dim] = True

    slack = 4.0 * EPS * scale * dmax + PIVMIN
    lo = np.repeat((bounds[:, 0] - slack)[:, None], dmax, axis=1)
    hi = np.repeat((bounds[:, 1] + slack)[:, None], dmax, axis=1)
    k = np.arange(dmax)[None, :]
    tol_w = (1e-12 * width)[:, None]

    for _ in range(400):
        mid = 0.5 * (lo + hi)
        tol = np.maximum(tol_w, 1e-14 * np.abs(mid))
        active = valid & (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        c = _sturm_counts(diag, off2, mid)
        above = c > k
        hi = np.where(active & above, mid, hi)
        lo = np.where(active & ~above, mid, lo)

    vals = 0.5 * (lo + hi)
    for b, i in enumerate(todo):
        # bisection on a monotone count already yields sorted values; sort guards ties
        out[i] = np.sort(vals[b, : mats[i].dim])
    return out


def eigen_sym_tridiag(m: SymTridiagonal) -> np.ndarray:
    """All eigenvalues of ``m`` in nondecreasing order, by Sturm bisection."""
    return eigen_sym_tridiag_many([m])[0]


def _reflector(x):
    """Unit v and alpha with (I - 2 v v^T) x = alpha e_1, or (None, x[0])."""
    tail = np.linalg.norm(x[1:])
    if tail == 0.0:
        return None, float(x[0])
    sigma = math.hypot(float(x[0]), tail)
    alpha = -math.copysign(sigma, x[0])
    v = x.copy()
    v[0] -= alpha
    v /= np.linalg.norm(v)
    return v, alpha


def householder_tridiagonalize(a, want_q: bool = False):
    """Reduce a symmetric matrix to tridiagonal form, ``a = Q T Q^T``.

    Blocked in panels of 32 columns so the trailing updates are matrix
    products. Returns ``(diag, offdiag, Q)`` with ``Q`` None unless requested.
    """
    A = np.array(a, dtype=float)
    n = A.shape[0]
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    refl = [None] * max(n - 2, 0)

    k = 0
    while k < n - 2:
        nb = min(_BLOCK, n - 2 - k)
        V = np.zeros((n - k, nb))
        W = np.zeros((n - k, nb))
        for i in range(nb):
            j = k + i
            col = A[j:, j] - V[i:, :i] @ W[i, :i] - W[i:, :i] @ V[i, :i]
            d[j] = col[0]
            v, alpha = _reflector(col[1:])
            e[j] = alpha
            if v is None:
                continue
            refl[j] = v
            Vs, Ws = V[i + 1 :, :i], W[i + 1 :, :i]
            p = A[j + 1 :, j + 1 :] @ v - Vs @ (Ws.T @ v) - Ws @ (Vs.T @ v)
            V[i + 1 :, i] = v
            W[i + 1 :, i] = 2.0 * p - 2.0 * (v @ p) * v
        s = k + nb
        A[s:, s:] -= V[nb:] @ W[nb:].T + W[nb:] @ V[nb:].T
        k = s

    if n >= 2:
        d[n - 2] = A[n - 2, n - 2]
        e[n - 2] = A[n - 1, n - 2]
    d[n - 1] = A[n - 1, n - 1]

    Q = None
    if want_q:
        Q = np.eye(n)
        for j in range(n - 3, -1, -1):
            v = refl[j]
            if v is None:
                continue
            block = Q[j + 1 :, j + 1 :]
            block -= 2.0 * np.outer(v, v @ block)
    return d, e, Q


def ql_implicit(diag, offdiag, z=None):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    ``z`` (d x d) is rotated along; pass the Householder ``Q`` to obtain
    eigenvectors of the original dense matrix. Output is unsorted.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag
    zt = None if z is None else np.array(z, dtype=float).T.copy()

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 60:
                raise ArithmeticError(f"QL iteration did not converge for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if zt is not None:
                    f_row = zt[i + 1].copy()
                    zt[i + 1] = s * zt[i] + c * f_row
                    zt[i] = c * zt[i] - s * f_row
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, (None if zt is None else zt.T)


def eigen_sym_dense(m, want_vectors: bool = False):
    """Eigenvalues (and optionally orthonormal eigenvectors) of a dense symmetric matrix.

    Values only: Householder reduction then Sturm bisection. With vectors:
    Householder with accumulated ``Q`` then implicit QL; columns of the
    returned matrix are eigenvectors matching the sorted values.
    """
    if not isinstance(m, SymDense):
        m = SymDense(m)
    a = m.entries
    if m.dim == 1:
        vals = a[0].copy()
        return (vals, np.ones((1, 1))) if want_vectors else vals
    d, e, Q = householder_tridiagonalize(a, want_q=want_vectors)
    if not want_vectors:
        return eigen_sym_tridiag(SymTridiagonal(d, e))
    vals, vecs = ql_implicit(d, e, Q)
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]

"""Two-site Bose-Hubbard model (Bose-Einstein condensate dimer).

    H = U11 N1^2 + U12 N1 N2 + U22 N2^2 + mu1 N1 + mu2 N2 - (E_J/2)(a1^+ a2 + a2^+ a1)

The Hamiltonian conserves N = N1 + N2. In the sector of fixed N the Fock
states |N-m, m>, m = 0..N (m bosons in mode 2), span an (N+1)-dimensional
space in which H is tridiagonal.

Two independent solution routes are kept:

* :func:`spectrum` diagonalizes the tridiagonal sector matrix by bisection;
* :func:`spectrum_via_recursion` finds the zeros of the top coefficient of
  the three-term recursion for the expansion coefficients of the eigenstate
  in the monomial basis (a1^+)^{N-m} (a2^+)^m |0>, evaluated through its
  first-order continued-fraction form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields

import numpy as np
from scipy.special import gammaln

from .errors import (
    BracketingFailure,
    BreakdownAtTrialEnergy,
    DomainError,
    IntegrableDegenerate,
    NotAnEigenvalue,
)
from .linalg import EPS, SymTridiagonal, eigen_sym_tridiag


@dataclass(frozen=True)
class TwoModeCouplings:
    """Couplings of the dimer. ``ej`` is the tunneling scale (tables call it Omega)."""

    u11: float = 0.0
    u22: float = 0.0
    u12: float = 0.0
    mu1: float = 0.0
    mu2: float = 0.0
    ej: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v):
                raise DomainError(f"{f.name} must be finite, got {v!r}")
            object.__setattr__(self, f.name, v)


@dataclass(frozen=True)
class TwoModeSector:
    n_total: int

    def __post_init__(self):
        if int(self.n_total) != self.n_total or self.n_total < 0:
            raise DomainError(f"particle number must be a nonnegative integer, got {self.n_total!r}")

    @property
    def dimension(self) -> int:
        return self.n_total + 1

    def occupations(self):
        """(N1, N2) for each basis index m."""
        m = np.arange(self.dimension)
        return self.n_total - m, m


@dataclass
class RecursionState:
    """Continued-fraction data at one trial energy.

    ``log_alpha[m]`` and ``sign_alpha[m]`` hold alpha_m for m = 0..N+1 with
    alpha_0 = 1; ``ys[m]`` is Y_m, ``xs[m]`` is X_m.
    """

    e_trial: float
    xs: np.ndarray
    ys: np.ndarray
    log_alpha: np.ndarray
    sign_alpha: np.ndarray


class Regime(str, enum.Enum):
    RABI = "Rabi"
    JOSEPHSON = "Josephson"
    FOCK = "Fock"
    UNCLASSIFIED = "Unclassified"


def _diag_values(c: TwoModeCouplings, n: int, m):
    m = np.asarray(m, dtype=float)
    return (
        c.u11 * n * n
        + (c.u11 + c.u22 - c.u12) * m * m
        + (c.u12 - 2.0 * c.u11) * m * n
        + c.mu1 * n
        + (c.mu2 - c.mu1) * m
    )


def diag_element(c: TwoModeCouplings, n: int, m: int) -> float:
    """Diagonal energy of |N-m, m>."""
    if not 0 <= m <= n:
        raise DomainError(f"basis index m={m} outside 0..{n}")
    return float(_diag_values(c, n, m))


def build_sector(c: TwoModeCouplings, n: int) -> SymTridiagonal:
    n = TwoModeSector(n).n_total
    m = np.arange(n + 1)
    off = -(c.ej / 2.0) * np.sqrt((m[:-1] + 1.0) * (n - m[:-1]))
    return SymTridiagonal(_diag_values(c, n, m), off)


def spectrum(c: TwoModeCouplings, n: int) -> np.ndarray:
    """Sorted energies of the N-particle sector (length N+1)."""
    return eigen_sym_tridiag(build_sector(c, n))


def _x_values(c: TwoModeCouplings, n: int, e):
    """X_m for m = 0..N, one row per trial energy; shape (len(e), N+1)."""
    m = np.arange(n + 1)
    diag = _diag_values(c, n, m)
    e = np.atleast_1d(np.asarray(e, dtype=float))
    return 2.0 * (diag[None, :] - e[:, None]) / (c.ej * (m[None, :] + 1.0))


def _ratios(c: TwoModeCouplings, n: int, e):
    """Products X_m Y_m = alpha_{m+1}/alpha_m, shape (len(e), N+1).

    Also returns the index of the first exact zero (X_m or Y_m) per row, -1 if none.
    """
    X = _x_values(c, n, e)
    Y = np.empty_like(X)
    Y[:, 0] = 1.0
    broken = np.where(X[:, 0] == 0.0, 0, -1)
    with np.errstate(divide="ignore", invalid="ignore"):
        for m in range(1, n + 1):
            Y[:, m] = 1.0 + (m - n - 1.0) / ((m + 1.0) * X[:, m] * X[:, m - 1] * Y[:, m - 1])
            # an underflowing product X_m X_{m-1} Y_{m-1} is as bad as an exact zero
            hit = (broken < 0) & ((X[:, m] == 0.0) | (Y[:, m] == 0.0) | ~np.isfinite(Y[:, m]))
            broken[hit] = m
    with np.errstate(invalid="ignore"):
        return X * Y, X, Y, broken


def recursion_state(c: TwoModeCouplings, n: int, e: float) -> RecursionState:
    if c.ej == 0.0:
        raise IntegrableDegenerate("E_J = 0: the Hamiltonian is already diagonal")
    n = TwoModeSector(n).n_total
    r, X, Y, broken = _ratios(c, n, [e])
    if broken[0] >= 0:
        raise BreakdownAtTrialEnergy(e, int(broken[0]))
    r = r[0]
    log_alpha = np.concatenate([[0.0], np.cumsum(np.log(np.abs(r)))])
    sign_alpha = np.concatenate([[1.0], np.cumprod(np.sign(r))])
    return RecursionState(float(e), X[0], Y[0], log_alpha, sign_alpha)


def alpha_top(c: TwoModeCouplings, n: int, e: float) -> tuple[float, float]:
    """alpha_{N+1}(E) as (sign, log|alpha_{N+1}|); zero exactly at the energies of the sector."""
    st = recursion_state(c, n, e)
    return float(st.sign_alpha[-1]), float(st.log_alpha[-1])


def _count_below(c: TwoModeCouplings, n: int, e, nudge: float):
    """Number of energies below each trial value, read off the continued fraction.

    alpha_m is the m-th leading principal minor of (H - E) up to the factor
    (E_J/2)^m m!, so sign changes of the sequence sgn(E_J)^m alpha_m count
    the roots below E.
    """
    e = np.array(e, dtype=float)
    for _ in range(8):
        r, _, _, broken = _ratios(c, n, e)
        bad = broken >= 0
        if not bad.any():
            break
        e[bad] += nudge
    else:
        raise BreakdownAtTrialEnergy(float(e[bad][0]), int(broken[bad][0]))
    return np.sum(np.sign(c.ej) * r < 0, axis=1)


def spectrum_via_recursion(c: TwoModeCouplings, n: int) -> np.ndarray:
    """Sorted energies as the N+1 roots of alpha_{N+1}(E) = 0."""
    if c.ej == 0.0:
        raise IntegrableDegenerate("E_J = 0: use spectrum(), the sector is already diagonal")
    n = TwoModeSector(n).n_total
    if n < 1:
        raise DomainError("recursion route needs at least one particle")
    lo0, hi0 = build_sector(c, n).gershgorin()
    width = hi0 - lo0
    nudge = 4.0 * EPS * width
    lo0 -= 8 * nudge
    hi0 += 8 * nudge

    counts = _count_below(c, n, [lo0, hi0], nudge)
    if counts[0] != 0 or counts[1] != n + 1:
        raise BracketingFailure(
            f"expected 0 and {n + 1} roots at the interval ends, got {counts.tolist()}",
            grid=np.array([lo0, hi0]),
            counts=counts,
        )

    k = np.arange(n + 1)
    lo = np.full(n + 1, lo0)
    hi = np.full(n + 1, hi0)
    tol = 1e-11 * width
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        active = (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        above = _count_below(c, n, mid, nudge) > k
        hi = np.where(active & above, mid, hi)
        lo = np.where(active & ~above, mid, lo)

    return 0.5 * (lo + hi)


def eigenvector(c: TwoModeCouplings, n: int, e: float) -> np.ndarray:
    """Normalized eigenvector over the orthonormal Fock states |N-m, m>, m = 0..N.

    ``e`` is first polished to the nearby root; the coefficients come from the
    forward three-term recursion with alpha_0 = 1, converted from the monomial
    basis by the norm sqrt((N-m)! m!) of each monomial state.
    """
    if c.ej == 0.0:
        raise IntegrableDegenerate("E_J = 0: eigenvectors are Fock states")
    n = TwoModeSector(n).n_total
    lo0, hi0 = build_sector(c, n).gershgorin()
    width = max(hi0 - lo0, abs(c.ej))
    nudge = 4.0 * EPS * width
    delta = 1e-6 * width
    below, above = _count_below(c, n, [e - delta, e + delta], nudge)
    if above == below:
        raise NotAnEigenvalue(f"E={e!r} is not within {delta:.3g} of an energy of the N={n} sector")

    # polish to the root with index `below` (closest one in the window)
    lo, hi = e - delta, e + delta
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        if _count_below(c, n, [mid], nudge)[0] > below:
            hi = mid
        else:
            lo = mid
    e = 0.5 * (lo + hi)

    X = _x_values(c, n, [e])[0]
    m = np.arange(n + 1)
    norm = 0.5 * (gammaln(n - m + 1.0) + gammaln(m + 1.0))

    # forward from alpha_0 = 1
    fwd = _log_sequence(lambda k, cur, prev: X[k] * cur + (k - n - 1.0) / (k + 1.0) * prev, n)
    # backward from alpha_{N+1} = 0, alpha_N = 1
    bwd = _log_sequence(lambda k, cur, prev: (prev - X[n - k] * cur) * (n - k + 1.0) / (-k - 1.0), n)
    lf, sf = fwd[0] + norm, fwd[1]
    lb, sb = bwd[0][::-1] + norm, bwd[1][::-1]
    return _splice(build_sector(c, n), e, lf, sf, lb, sb)


def _log_sequence(step, n):
    """Run a three-term recursion for n steps from (prev, cur) = (0, 1), tracking log|.| and sign."""
    log_a = np.full(n + 1, -np.inf)
    sign_a = np.zeros(n + 1)
    log_a[0], sign_a[0] = 0.0, 1.0
    prev, cur, scale = 0.0, 1.0, 0.0
    for k in range(n):
        prev, cur = cur, step(k, cur, prev)
        big = abs(cur)
        if big > 1e150:
            prev /= big
            cur /= big
            scale += math.log(big)
        if cur != 0.0:
            log_a[k + 1] = math.log(abs(cur)) + scale
            sign_a[k + 1] = math.copysign(1.0, cur)
    return log_a, sign_a


def _splice(mat: SymTridiagonal, e, lf, sf, lb, sb):
    """Join the forward run (m <= k) to the rescaled backward run (m > k).

    Both runs satisfy every row of (H - E)v = 0 except one; after the splice
    only row k is unmatched, and k is chosen to minimize its relative residual.
    """
    n = mat.dim - 1
    if n == 0:
        return np.ones(1)
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        # log of sum of squares of forward part up to k, relative to f_k
        cum_f = np.logaddexp.accumulate(2.0 * lf)
        tail_b = np.logaddexp.accumulate((2.0 * lb)[::-1])[::-1]
        k = np.arange(n + 1)
        tail_next = np.append(tail_b[1:], -np.inf)
        log_norm2 = np.logaddexp(cum_f - 2.0 * lf, tail_next - 2.0 * lb)

        left = np.zeros(n + 1)
        left[1:] = mat.offdiag * sf[:-1] * sf[1:] * np.exp(lf[:-1] - lf[1:])
        right = np.zeros(n + 1)
        right[:-1] = mat.offdiag * sb[1:] * sb[:-1] * np.exp(lb[1:] - lb[:-1])
        resid = np.abs(mat.diag - e + left + right)
        score = resid / np.exp(0.5 * log_norm2)
    ok = np.isfinite(lf) & np.isfinite(lb) & np.isfinite(score)
    if not ok.any():
        raise ArithmeticError("no usable splice point for the eigenvector recursion")
    k_best = int(k[ok][np.argmin(score[ok])])

    log_v = np.where(k <= k_best, lf, lb + (lf[k_best] - lb[k_best]))
    sign = np.where(k <= k_best, sf, sb * sf[k_best] * sb[k_best])
    v = sign * np.exp(log_v - np.max(log_v[np.isfinite(log_v)]))
    v[~np.isfinite(log_v)] = 0.0
    return v / np.linalg.norm(v)


def classify_regime(c: TwoModeCouplings, n: int, spread: float = 0.5) -> Regime:
    """Rabi / Josephson / Fock classification for U ~ U11 ~ U22 ~ -U12/2.

    Returns ``Regime.UNCLASSIFIED`` when (U11, U22, -U12/2) differ from their
    mean by more than ``spread`` relative to it.
    """
    if n < 1:
        raise DomainError("regimes are defined for N >= 1")
    if c.ej == 0.0:
        return Regime.FOCK
    trio = np.array([c.u11, c.u22, -c.u12 / 2.0])
    mean = trio.mean()
    if mean == 0.0 or (trio.max() - trio.min()) / abs(mean) > spread:
        return Regime.UNCLASSIFIED
    u = np.mean(np.abs(trio))
    ratio = u / abs(c.ej)
    if ratio < 1.0 / n:
        return Regime.RABI
    if ratio > n:
        return Regime.FOCK
    return Regime.JOSEPHSON

"""Atomic-molecular three-mode condensate.

    H0 = sum_{x<=y} U_xy N_x N_y + sum_x mu_x N_x + Omega (a^+ b^+ c + c^+ b a)

with x, y in {a, b, c}. H0 conserves the total atomic number
N_a + N_b + 2 N_c and the imbalance I = N_a - N_b; in a sector of fixed
(atoms, I) it is tridiagonal in the molecule number n.

Adding H1 = a^+ b + b^+ a keeps the atomic number but mixes imbalances
I and I +- 2, leaving a dense block per atomic number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .linalg import SymDense, SymTridiagonal, eigen_sym_dense, eigen_sym_tridiag_many


@dataclass(frozen=True)
class ThreeModeCouplings:
    uaa: float = 0.0
    ubb: float = 0.0
    ucc: float = 0.0
    uab: float = 0.0
    uac: float = 0.0
    ubc: float = 0.0
    mua: float = 0.0
    mub: float = 0.0
    muc: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v):
                raise DomainError(f"{f.name} must be finite, got {v!r}")
            object.__setattr__(self, f.name, v)

    def diagonal(self, l, m, n):
        """Number-operator part of H0 on |l, m, n>."""
        return (
            self.uaa * l * l
            + self.ubb * m * m
            + self.ucc * n * n
            + self.uab * l * m
            + self.uac * l * n
            + self.ubc * m * n
            + self.mua * l
            + self.mub * m
            + self.muc * n
        )


class ThreeModeBasisState(NamedTuple):
    l: int
    m: int
    n: int

    @property
    def n_atoms(self) -> int:
        return self.l + self.m + 2 * self.n

    @property
    def imbalance(self) -> int:
        return self.l - self.m


@dataclass(frozen=True)
class ThreeModeSector:
    """Sector of fixed atomic number and imbalance, basis ordered by molecule number."""

    n_atoms: int
    i_imbalance: int

    def __post_init__(self):
        na, i = self.n_atoms, self.i_imbalance
        if na < 0 or abs(i) > na or (na + i) % 2:
            raise DomainError(f"no states with atomic number {na} and imbalance {i}")

    @property
    def dimension(self) -> int:
        return (self.n_atoms - abs(self.i_imbalance)) // 2 + 1

    @property
    def basis(self) -> list[ThreeModeBasisState]:
        na, i = self.n_atoms, self.i_imbalance
        return [
            ThreeModeBasisState((na - 2 * n + i) // 2, (na - 2 * n - i) // 2, n)
            for n in range(self.dimension)
        ]

    def occupations(self):
        n = np.arange(self.dimension)
        l = (self.n_atoms - 2 * n + self.i_imbalance) // 2
        m = (self.n_atoms - 2 * n - self.i_imbalance) // 2
        return l, m, n


def _check_atoms(n_atoms):
    if int(n_atoms) != n_atoms or n_atoms < 0:
        raise DomainError(f"atomic number must be a nonnegative integer, got {n_atoms!r}")
    return int(n_atoms)


def restricted_dimension(n_atoms: int) -> int:
    """Number of states with the given atomic number and I >= 0."""
    na = _check_atoms(n_atoms)
    if na % 2:
        return (na * na + 4 * na + 3) // 8
    return (na * na + 6 * na + 8) // 8


def full_sector_dimension(n_atoms: int) -> int:
    """Number of states with the given atomic number, any imbalance."""
    na = _check_atoms(n_atoms)
    if na % 2:
        return (na * na + 4 * na + 3) // 4
    return (na * na + 4 * na + 4) // 4


def imbalances(n_atoms: int, nonnegative: bool = True) -> list[int]:
    na = _check_atoms(n_atoms)
    start = na % 2 if nonnegative else -na
    return list(range(start, na + 1, 2))


def build_integrable_sector(c: ThreeModeCouplings, n_atoms: int, i_imbalance: int) -> SymTridiagonal:
    l, m, n = ThreeModeSector(n_atoms, i_imbalance).occupations()
    l, m, n = l.astype(float), m.astype(float), n.astype(float)
    # <l-1, m-1, n+1| c^+ b a |l, m, n> = sqrt(l m (n+1))
    off = c.omega * np.sqrt((n[:-1] + 1.0) * l[:-1] * m[:-1])
    return SymTridiagonal(c.diagonal(l, m, n), off)


def spectrum_integrable(c: ThreeModeCouplings, n_atoms: int, nonnegative: bool = True):
    """Per-imbalance spectra of H0 as a list of ((atoms, I), sorted energies)."""
    labels = [(n_atoms, i) for i in imbalances(n_atoms, nonnegative)]
    mats = [build_integrable_sector(c, *lab) for lab in labels]
    return list(zip(labels, eigen_sym_tridiag_many(mats)))


def spectrum_integrable_restricted(c: ThreeModeCouplings, n_atoms: int):
    """Spectra of every (atoms, I >= 0) sector; total length is restricted_dimension."""
    return spectrum_integrable(c, n_atoms, nonnegative=True)


def full_basis(n_atoms: int) -> list[ThreeModeBasisState]:
    """All states of the given atomic number, lexicographic in (n, l)."""
    na = _check_atoms(n_atoms)
    return [
        ThreeModeBasisState(l, na - 2 * n - l, n)
        for n in range(na // 2 + 1)
        for l in range(na - 2 * n + 1)
    ]


def build_nonintegrable_sector(c: ThreeModeCouplings, n_atoms: int, h1_strength: float = 1.0) -> SymDense:
    """Dense H0 + h1_strength * (a^+ b + b^+ a) at fixed atomic number.

    ``h1_strength`` defaults to the unit coefficient of the model; other values
    exist for testing (0 recovers H0).
    """
    na = _check_atoms(n_atoms)
    states = np.array(full_basis(na), dtype=np.int64).reshape(-1, 3)
    l, m, n = states.T
    dim = len(states)
    # offset of the first state with molecule number n
    offset = np.concatenate([[0], np.cumsum(na - 2 * np.arange(na // 2 + 1) + 1)])

    def index(ll, nn):
        return offset[nn] + ll

    H = np.zeros((dim, dim))
    rows = np.arange(dim)
    H[rows, rows] = c.diagonal(l.astype(float), m.astype(float), n.astype(float))

    # c^+ b a : (l, m, n) -> (l-1, m-1, n+1)
    sel = (l > 0) & (m > 0)
    src = rows[sel]
    dst = index(l[sel] - 1, n[sel] + 1)
    val = c.omega * np.sqrt(l[sel] * m[sel] * (n[sel] + 1.0))
    H[dst, src] = val
    H[src, dst] = val

    # a^+ b : (l, m, n) -> (l+1, m-1, n)
    sel = m > 0
    src = rows[sel]
    dst = index(l[sel] + 1, n[sel])
    val = h1_strength * np.sqrt((l[sel] + 1.0) * m[sel])
    H[dst, src] = val
    H[src, dst] = val
    return SymDense(H)


def spectrum_nonintegrable(c: ThreeModeCouplings, n_atoms: int, h1_strength: float = 1.0) -> np.ndarray:
    return eigen_sym_dense(build_nonintegrable_sector(c, n_atoms, h1_strength))

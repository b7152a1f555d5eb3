"""Coupling sets for the benchmark runs.

Table I: dimer couplings for the density of states (Rabi, Josephson, Fock).
Table II: dimer couplings for the level-spacing study.
Table III: three-mode couplings, used for both H0 and H0 + H1.

Names are ``<table>.<symbol>``; every symbol also has ASCII aliases.
The dimer tables list the tunneling scale as Omega; it is stored as ``ej``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .three_mode import ThreeModeCouplings
from .two_mode import TwoModeCouplings

TWO_MODE = "two_mode"
THREE_MODE = "three_mode"
NONINTEGRABLE = "three_mode_nonintegrable"
MODELS = (TWO_MODE, THREE_MODE, NONINTEGRABLE)

SYMBOL_ALIASES = {
    "*": ("star",),
    "•": ("dot", "bullet"),
    "×": ("x", "cross"),
    "+": ("plus",),
    "▲": ("tri", "ftri", "up"),
    "■": ("sq", "square"),
    "▼": ("dtri", "down"),
    "♦": ("dia", "diamond"),
}


@dataclass(frozen=True)
class Preset:
    table: str
    symbol: str
    couplings: object

    @property
    def name(self) -> str:
        return f"{self.table}.{self.symbol}"

    @property
    def models(self) -> tuple[str, ...]:
        if isinstance(self.couplings, TwoModeCouplings):
            return (TWO_MODE,)
        return (THREE_MODE, NONINTEGRABLE)

    def as_dict(self) -> dict:
        return {"name": self.name, "models": list(self.models), "couplings": asdict(self.couplings)}


def _two(symbol, u11, u22, u12, mu1, mu2, omega, table):
    return Preset(table, symbol, TwoModeCouplings(u11, u22, u12, mu1, mu2, omega))


TABLE_I = [
    _two("▲", 0.01, 0.01, -0.02, 0.01, -0.01, 100, "I"),
    _two("■", 2.0, 2.0, -4.0, 1.0, -1.0, 1.0, "I"),
    _two("•", 100, 100, -200, 10, -10, 0.01, "I"),
]

TABLE_II = [
    _two("*", 0.01, 0.003, 0.0, 0.0, 0.0, 100, "II"),
    _two("•", 2.0, 0.7, 0.0, 0.0, 0.0, 1.0, "II"),
    _two("×", 100, 88, 0.0, 0.0, 0.0, 0.01, "II"),
    _two("+", 3.1, -0.14, 0.001, 15.0, -2.0, 0.5, "II"),
    _two("▲", -0.2, 0.4, 10.0, 0.0, 4.67, 10.0, "II"),
    _two("■", 66.0, 28.0, 0.3, 3.14, 143, 0.24, "II"),
    _two("♦", 0.34, 3.45, 0.0, 0.12, 0.11, 15, "II"),
]

# columns: uaa, ubb, ucc, uab, uac, ubc, mua, mub, muc, omega
_TABLE_III_COLUMNS = {
    "*": (0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0, 0.0, 0.0, 100.0),
    "•": (1.618,) * 10,
    "×": (1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.001),
    "+": (1.0, -3.0, 15.0, -1.0, 0.5, 15.0, 1.0, -1.0, -5.0, 10.0),
    "▲": (0.018, -0.82, 9.55, 0.23, 0.0, 15.0, 0.4447, -0.61, 0.8939, -8.0),
    "■": (2.0, -19.95, 0.0, 10.0, 0.01, -3.0, 0.0, -5.0, 1.3, 0.1),
    "▼": (0.0, -1.0, 12.0, 40.0, 30.0, -2.0, -15.0, -28.0, -4.0, 127),
    "♦": (22.145, 4.0, 0.3, -2.29, -36.9, 0.91, -2.0, 5.0, 10.34, 13.7),
}
TABLE_III = [Preset("III", sym, ThreeModeCouplings(*vals)) for sym, vals in _TABLE_III_COLUMNS.items()]

ALL = TABLE_I + TABLE_II + TABLE_III

# main group and remaining columns of the spacing runs
DIMER_MAIN = [p.name for p in TABLE_II[:3]]
THREE_MODE_MAIN = [p.name for p in TABLE_III[:4]]


def _lookup():
    table = {}
    for p in ALL:
        table[p.name] = p
        for alias in SYMBOL_ALIASES[p.symbol]:
            table[f"{p.table}.{alias}"] = p
    return table


_BY_NAME = _lookup()


def names() -> list[str]:
    return [p.name for p in ALL]


def get(name: str) -> Preset:
    try:
        return _BY_NAME[name]
    except KeyError:
        valid = ", ".join(sorted(_BY_NAME))
        raise KeyError(f"unknown preset {name!r}; valid names: {valid}") from None

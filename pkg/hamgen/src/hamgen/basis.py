"""STO-3G basis data and contracted Gaussian basis functions.

Built-in elements cover the hydrogen/lithium chemistry this generator
targets. Exponents follow the standard STO-3G scheme: universal
primitives scaled by the squared Slater zeta of each shell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ToolchainMissing

ANGSTROM_TO_BOHR = 1.8897259886

ATOMIC_NUMBER = {"H": 1, "He": 2, "Li": 3}

# shell -> (exponents, contraction coefficients); sp shells share exponents
STO3G = {
    "H": [
        ("s", [3.42525091, 0.62391373, 0.16885540],
         {"s": [0.15432897, 0.53532814, 0.44463454]}),
    ],
    "He": [
        ("s", [6.36242139, 1.15892300, 0.31364979],
         {"s": [0.15432897, 0.53532814, 0.44463454]}),
    ],
    "Li": [
        ("s", [16.1195750, 2.9362007, 0.7946505],
         {"s": [0.15432897, 0.53532814, 0.44463454]}),
        ("sp", [0.6362897, 0.1478601, 0.0480887],
         {"s": [-0.09996723, 0.39951283, 0.70011547],
          "p": [0.15591627, 0.60768372, 0.39195739]}),
    ],
}


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def primitive_norm(alpha: float, lmn) -> float:
    l, m, n = lmn
    num = (2 * alpha / math.pi) ** 0.75 * (4 * alpha) ** ((l + m + n) / 2)
    den = math.sqrt(
        _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    return num / den


@dataclass
class BasisFunction:
    """Contracted Cartesian Gaussian: sum of primitive-normalized terms."""

    center: np.ndarray  # bohr
    lmn: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms and contraction scale

    def __post_init__(self):
        from .integrals import contracted_overlap

        self.center = np.asarray(self.center, dtype=float)
        self.exponents = np.asarray(self.exponents, dtype=float)
        raw = np.asarray(self.coefficients, dtype=float) * np.array(
            [primitive_norm(a, self.lmn) for a in self.exponents]
        )
        self.coefficients = raw
        self_overlap = contracted_overlap(self, self)
        self.coefficients = raw / math.sqrt(self_overlap)


_P_DIRECTIONS = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def build_basis(atoms):
    """Basis functions for [(symbol, xyz_bohr)] geometry; AO order is
    per atom, shells in data order, p shells expanded as x, y, z."""
    functions = []
    for symbol, center in atoms:
        if symbol not in STO3G:
            raise ToolchainMissing(
                f"no built-in STO-3G data for element {symbol!r}"
            )
        for shell, exps, coeffs in STO3G[symbol]:
            functions.append(BasisFunction(center, (0, 0, 0), exps, coeffs["s"]))
            if shell == "sp":
                for lmn in _P_DIRECTIONS:
                    functions.append(BasisFunction(center, lmn, exps, coeffs["p"]))
    return functions


def nuclear_repulsion(atoms) -> float:
    e = 0.0
    for i, (sym_i, ri) in enumerate(atoms):
        for j, (sym_j, rj) in enumerate(atoms):
            if j <= i:
                continue
            dist = float(np.linalg.norm(np.asarray(ri) - np.asarray(rj)))
            e += ATOMIC_NUMBER[sym_i] * ATOMIC_NUMBER[sym_j] / dist
    return e


def total_nuclear_charge(atoms) -> int:
    return sum(ATOMIC_NUMBER[s] for s, _ in atoms)

"""Quantum expectations that source the scenario targets.

Small dense complex linear algebra: tensor products of Pauli matrices,
state-vector expectations, and the two-particle singlet correlation.
This is the one corner of the package that uses floating point; the
values computed here enter the exact solvers only as re-entered exact
constants (for example ``-sqrt(3)/2``), so no verdict depends on a
float.

Basis convention: |+> and |-> are the σ_z eigenstates, the first
particle is the most significant tensor factor, matching the atom
ordering used by the event spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import cos, sqrt

import numpy as np

from .errors import SizeLimitError, SpaceError

TOLERANCE = 1e-12

MAX_PARTICLES = 10

_PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True, eq=False)
class SpinOperator:
    """Tensor product of per-particle Pauli components."""

    matrix: np.ndarray
    factors: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitudes over 2^k basis states."""

    amplitudes: np.ndarray

    def __post_init__(self):
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > TOLERANCE:
            raise ValueError(f"state norm {norm} differs from 1 beyond {TOLERANCE}")

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]


def build_operator(factors) -> SpinOperator:
    """Tensor product of Pauli components, one per particle in order."""
    factors = tuple(str(f).lower() for f in factors)
    if not 1 <= len(factors) <= MAX_PARTICLES:
        raise SizeLimitError(
            f"{len(factors)} particles outside the supported range 1..{MAX_PARTICLES}"
        )
    matrix = None
    for f in factors:
        if f not in _PAULI:
            raise SpaceError(f"unknown Pauli component {f!r}; use x, y, z or i")
        matrix = _PAULI[f] if matrix is None else np.kron(matrix, _PAULI[f])
    if float(np.abs(matrix - matrix.conj().T).max()) > TOLERANCE:
        raise AssertionError("Pauli tensor product must be Hermitian")
    return SpinOperator(matrix, factors)


def expectation_value(state: StateVector, operator: SpinOperator) -> float:
    """<psi| Op |psi>, checked real within tolerance."""
    if state.dimension != operator.dimension:
        raise SpaceError(
            f"state dimension {state.dimension} != operator dimension {operator.dimension}"
        )
    value = complex(np.vdot(state.amplitudes, operator.matrix @ state.amplitudes))
    if abs(value.imag) > TOLERANCE:
        raise ValueError(f"expectation has imaginary part {value.imag}")
    return value.real


def singlet_correlation(theta: float) -> float:
    """Two-particle spin correlation at relative analyzer angle theta (radians)."""
    return -cos(theta)


#: The four three-particle spin-product observables of the GHZ argument.
GHZ_OPERATOR_FACTORS = {
    "A": ("x", "y", "y"),
    "B": ("y", "x", "y"),
    "C": ("y", "y", "x"),
    "D": ("x", "x", "x"),
}


def ghz_operators() -> dict[str, SpinOperator]:
    return {name: build_operator(f) for name, f in GHZ_OPERATOR_FACTORS.items()}


def _basis_state(entries: dict[int, complex], dimension: int) -> StateVector:
    amplitudes = np.zeros(dimension, dtype=complex)
    for index, amplitude in entries.items():
        amplitudes[index] = amplitude
    return StateVector(amplitudes)


def ghz_state_mermin() -> StateVector:
    """(|+++> - |--->)/sqrt(2): gives (1, 1, 1, -1) on the four observables."""
    return _basis_state({0b000: 1 / sqrt(2), 0b111: -1 / sqrt(2)}, 8)


def ghz_state_alternate() -> StateVector:
    """(|++-> + |--+>)/sqrt(2): a commonly printed variant.

    Direct computation shows this state yields a different sign pattern
    on the four observables than the Mermin-convention state, but the
    product relation E(A) E(B) E(C) = -E(D), which is all the
    contradiction argument needs, holds for both.  Shipping both makes
    the discrepancy inspectable.
    """
    return _basis_state({0b001: 1 / sqrt(2), 0b110: 1 / sqrt(2)}, 8)


BUILTIN_STATES = {
    "mermin": ghz_state_mermin,
    "alternate": ghz_state_alternate,
}


def ghz_expectations(state: StateVector) -> dict[str, float]:
    """Expectations of the four spin-product observables in one state."""
    return {
        name: expectation_value(state, op) for name, op in ghz_operators().items()
    }


def nearest_exact_form(value: float, tolerance: float = 1e-9) -> str | None:
    """Readable exact form p/q or (p/q)·sqrt(d), d in {2, 3}, if nearby.

    Searches denominators up to 64; returns None when nothing matches
    within the tolerance.  Annotation only, never used in decisions.
    """
    candidates: list[tuple[float, str]] = []
    for d, scale, suffix in ((1, 1.0, ""), (2, sqrt(2), "*sqrt(2)"), (3, sqrt(3), "*sqrt(3)")):
        reduced = value / scale
        for q in range(1, 65):
            p = round(reduced * q)
            approx = p / q * scale
            if abs(approx - value) <= tolerance:
                frac = Fraction(p, q)
                if frac == 0:
                    text = "0"
                elif suffix and abs(frac) == 1:
                    text = ("-" if frac < 0 else "") + suffix[1:]
                elif suffix:
                    text = f"{frac}{suffix}"
                else:
                    text = str(frac)
                candidates.append((abs(approx - value), text))
                break
    if not candidates:
        return None
    candidates.sort(key=lambda c: (c[0], len(c[1])))
    return candidates[0][1]

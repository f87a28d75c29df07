"""Occupation-number basis of a fixed-excitation sector for qubits coupled to cavity modes.

The sector is spanned by all states with a fixed total number of excitations
shared between two-level emitters (occupation 0 or 1) and bosonic cavity
modes (occupation 0..E).  States are enumerated in a canonical order: first
by the number of excited qubits, descending, then lexicographically on the
qubit pattern, then lexicographically on the mode occupations.  That order
puts the all-excited, zero-photon state first and keeps every group of basis
states with the same qubit pattern contiguous, which the reduced-density-
matrix code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb


@dataclass(frozen=True)
class BasisState:
    """One occupation pattern: binary qubit occupations plus per-mode photon counts."""

    qubits: tuple[int, ...]
    modes: tuple[int, ...]

    def __post_init__(self):
        if any(q not in (0, 1) for q in self.qubits):
            raise ValueError(f"qubit occupations must be 0 or 1, got {self.qubits}")
        if any(m < 0 for m in self.modes):
            raise ValueError(f"mode occupations must be non-negative, got {self.modes}")

    @property
    def excitations(self) -> int:
        return sum(self.qubits) + sum(self.modes)


@dataclass(frozen=True)
class SectorDimensions:
    atoms: int
    excitations: int
    modes: int
    dimension: int


def _validate_sector(atoms: int, excitations: int, modes: int) -> None:
    if atoms < 0 or excitations < 0:
        raise ValueError("atoms and excitations must be non-negative")
    if modes < 1:
        raise ValueError("at least one cavity mode is required")


def count_amplitudes(atoms: int, excitations: int, modes: int) -> int:
    """Number of basis states in the sector, in exact integer arithmetic.

    Counts, for every possible number ``i`` of excited qubits, the ways to
    choose which qubits are excited times the ways to distribute the
    remaining ``excitations - i`` photons over ``modes`` modes.  Python
    integers are unbounded, so the result cannot silently wrap.
    """
    _validate_sector(atoms, excitations, modes)
    return sum(
        comb(atoms, i) * comb(excitations - i + modes - 1, modes - 1)
        for i in range(min(atoms, excitations) + 1)
    )


def _qubit_patterns(atoms: int, excited: int) -> list[tuple[int, ...]]:
    patterns = []
    for positions in combinations(range(atoms), excited):
        bits = [0] * atoms
        for p in positions:
            bits[p] = 1
        patterns.append(tuple(bits))
    patterns.sort()
    return patterns


def _mode_occupations(photons: int, modes: int):
    # ascending lexicographic: first mode fills last
    if modes == 1:
        yield (photons,)
        return
    for first in range(photons + 1):
        for rest in _mode_occupations(photons - first, modes - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_basis(atoms: int, excitations: int, modes: int) -> tuple[BasisState, ...]:
    """All basis states of the sector in canonical order.

    The list length always equals :func:`count_amplitudes`.  The first state
    for a sector with ``excitations <= atoms`` has all excitations on the
    qubits and an empty field.
    """
    _validate_sector(atoms, excitations, modes)
    states = []
    for excited in range(min(atoms, excitations), -1, -1):
        for qubits in _qubit_patterns(atoms, excited):
            for occ in _mode_occupations(excitations - excited, modes):
                states.append(BasisState(qubits, occ))
    return tuple(states)


@lru_cache(maxsize=None)
def _index_map(atoms: int, excitations: int, modes: int) -> dict[BasisState, int]:
    return {state: k for k, state in enumerate(enumerate_basis(atoms, excitations, modes))}


def index_of(state: BasisState, excitations: int = 3) -> int:
    """Ordinal of ``state`` in the canonical enumeration of its sector.

    The sector is inferred from the shape of ``state`` plus the expected
    ``excitations`` count; a state whose occupations do not sum to that
    count lies outside the sector and raises ``ValueError``.
    """
    table = _index_map(len(state.qubits), excitations, len(state.modes))
    try:
        return table[state]
    except KeyError:
        raise ValueError(
            f"state {state} is not in the {excitations}-excitation sector"
        ) from None


def sector_dimensions(atoms: int, excitations: int, modes: int) -> SectorDimensions:
    return SectorDimensions(atoms, excitations, modes, count_amplitudes(atoms, excitations, modes))


def field_configurations(photons: int, modes: int) -> int:
    """Ways to distribute ``photons`` indistinguishable photons over ``modes`` modes."""
    return comb(photons + modes - 1, modes - 1)

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringqed.hilbert import (
    BasisState,
    count_amplitudes,
    enumerate_basis,
    field_configurations,
    index_of,
    sector_dimensions,
)


def brute_force_states(atoms, excitations, modes):
    """Independent oracle: enumerate every occupation pattern and keep the sector."""
    found = set()
    for qubits in itertools.product((0, 1), repeat=atoms):
        for occ in itertools.product(range(excitations + 1), repeat=modes):
            if sum(qubits) + sum(occ) == excitations:
                found.add((qubits, occ))
    return found


def test_counts_match_reported_values():
    assert count_amplitudes(2, 2, 1) == 4
    assert count_amplitudes(3, 3, 3) == 38
    assert count_amplitudes(3, 3, 7) == 190


def test_count_single_mode_three_qubits():
    # frozen from the brute-force oracle
    assert len(brute_force_states(3, 3, 1)) == 8
    assert count_amplitudes(3, 3, 1) == 8


def test_count_no_excitations_is_vacuum_only():
    assert count_amplitudes(3, 0, 5) == 1


@pytest.mark.parametrize("modes", range(1, 9))
def test_count_agrees_with_brute_force(modes):
    assert count_amplitudes(3, 3, modes) == len(brute_force_states(3, 3, modes))


def test_count_rejects_bad_arguments():
    with pytest.raises(ValueError):
        count_amplitudes(-1, 3, 1)
    with pytest.raises(ValueError):
        count_amplitudes(3, 3, 0)


def test_enumerate_single_mode_layout():
    states = enumerate_basis(3, 3, 1)
    assert len(states) == 8
    assert states[0] == BasisState((1, 1, 1), (0,))
    assert [s.qubits for s in states[1:4]] == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert all(s.modes == (1,) for s in states[1:4])
    assert [s.qubits for s in states[4:7]] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert all(s.modes == (2,) for s in states[4:7])
    assert states[7] == BasisState((0, 0, 0), (3,))


def test_enumerate_large_window_length():
    # dimension evaluated independently from the counting sum
    expected = sum(
        __import__("math").comb(3, i) * __import__("math").comb(3 - i + 30, 30)
        for i in range(4)
    )
    assert expected == 7038
    assert len(enumerate_basis(3, 3, 31)) == 7038


def test_first_state_is_all_excited():
    for modes in (1, 2, 5, 9):
        first = enumerate_basis(3, 3, modes)[0]
        assert first.qubits == (1, 1, 1)
        assert sum(first.modes) == 0


@pytest.mark.parametrize("modes", range(1, 9))
def test_enumeration_complete_and_distinct(modes):
    states = enumerate_basis(3, 3, modes)
    assert len(states) == count_amplitudes(3, 3, modes)
    seen = {(s.qubits, s.modes) for s in states}
    assert len(seen) == len(states)
    assert seen == brute_force_states(3, 3, modes)
    assert all(s.excitations == 3 for s in states)


def test_index_round_trip_three_modes():
    states = enumerate_basis(3, 3, 3)
    assert [index_of(s) for s in states] == list(range(38))


def test_index_of_all_excited_is_zero():
    assert index_of(BasisState((1, 1, 1), (0, 0, 0, 0, 0))) == 0


def test_index_of_rejects_wrong_excitation_number():
    with pytest.raises(ValueError):
        index_of(BasisState((1, 1, 0), (0, 0, 0)))


def test_basis_state_validates_occupations():
    with pytest.raises(ValueError):
        BasisState((0, 2, 0), (1,))
    with pytest.raises(ValueError):
        BasisState((1, 1, 1), (-1,))


def test_sector_dimensions():
    dims = sector_dimensions(3, 3, 7)
    assert (dims.atoms, dims.excitations, dims.modes, dims.dimension) == (3, 3, 7, 190)


def test_field_configurations():
    assert field_configurations(0, 5) == 1
    assert field_configurations(1, 5) == 5
    assert field_configurations(3, 31) == 5456


@settings(max_examples=60, deadline=None)
@given(
    atoms=st.integers(min_value=0, max_value=4),
    excitations=st.integers(min_value=0, max_value=4),
    modes=st.integers(min_value=1, max_value=5),
)
def test_enumeration_properties(atoms, excitations, modes):
    states = enumerate_basis(atoms, excitations, modes)
    assert len(states) == count_amplitudes(atoms, excitations, modes)
    assert len(set(states)) == len(states)
    assert all(s.excitations == excitations for s in states)
    for k, s in enumerate(states):
        assert index_of(s, excitations) == k

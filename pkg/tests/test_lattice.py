# tests/test_lattice.py
import itertools

import pytest

from models.errors import DimensionMismatchError
from models.lattice import (
    Lattice,
    forces_zero,
    lattice_contains,
    lattice_coordinates,
    lattice_drop,
    lattice_equal,
    lattice_extend,
    lattice_from_generators,
    lattice_includes,
    positive_part,
)


def test_canonical_bases():
    assert lattice_from_generators([2, 3], [(2, 0), (0, 1)]).vectors() == [(2, 0), (0, 1)]
    assert lattice_from_generators([2], []).is_zero()
    assert lattice_from_generators([2, 3], [(1, 1), (3, 1)]).vectors() == [(1, 1), (0, 2)]


def test_bad_generators_are_rejected():
    with pytest.raises(DimensionMismatchError):
        lattice_from_generators([2, 3], [(1, 2, 3)])
    with pytest.raises(DimensionMismatchError):
        lattice_from_generators([2, 2], [])


def test_membership():
    H = lattice_from_generators([2, 3], [(2, 0), (0, 1)])
    assert lattice_contains(H, (4, 5))
    assert not lattice_contains(H, (3, 0))
    assert lattice_contains(Lattice.zero([2, 3]), (0, 0))
    assert not lattice_contains(Lattice.zero([2, 3]), (0, 1))
    with pytest.raises(DimensionMismatchError):
        lattice_contains(H, (1,))


def test_coordinates_reconstruct_the_vector():
    H = lattice_from_generators([2, 3, 5], [(1, 2, 3), (0, 4, 1), (2, 0, 2)])
    v = (3, 10, 7)
    coefficients = lattice_coordinates(H, v)
    assert coefficients is not None
    rebuilt = [sum(c * b[j] for c, b in zip(coefficients, H.vectors())) for j in range(3)]
    assert tuple(rebuilt) == v


def test_membership_matches_coefficient_search():
    generators = [(2, 1, 0), (0, 3, 1)]
    H = lattice_from_generators([2, 3, 5], generators)
    reachable = {
        tuple(a * g + b * h for g, h in zip(*generators))
        for a in range(-10, 11)
        for b in range(-10, 11)
    }
    for x in range(-4, 5):
        for y in range(-4, 5):
            for z in range(-4, 5):
                assert lattice_contains(H, (x, y, z)) == ((x, y, z) in reachable)


def test_generator_order_does_not_matter():
    generators = [(1, 2, 3), (0, 4, 1), (2, 0, 2), (3, 6, 9)]
    expected = lattice_from_generators([2, 3, 5], generators)
    for shuffled in itertools.permutations(generators):
        assert lattice_from_generators([2, 3, 5], shuffled) == expected


def test_equality():
    first = lattice_from_generators([2, 3], [(2, 0), (0, 1)])
    second = lattice_from_generators([2, 3], [(2, 1), (0, 1)])
    assert lattice_equal(first, second)
    assert first == second
    assert not lattice_equal(lattice_from_generators([2], [(1,)]), lattice_from_generators([2], [(2,)]))
    assert lattice_equal(Lattice.zero([2]), Lattice.zero([2]))
    with pytest.raises(DimensionMismatchError):
        lattice_equal(Lattice.zero([2]), Lattice.zero([3]))


def test_inclusion():
    assert lattice_includes(Lattice.full([2]), lattice_from_generators([2], [(2,)]))
    assert not lattice_includes(lattice_from_generators([2], [(2,)]), Lattice.full([2]))


def test_extend_and_drop():
    H = lattice_from_generators([2], [(2,)])
    assert lattice_extend(H, [2, 3], "zero").vectors() == [(2, 0)]
    assert lattice_extend(H, [2, 3], "full").vectors() == [(2, 0), (0, 1)]
    assert lattice_extend(H, [3, 2], "zero").vectors() == [(0, 2)]
    with pytest.raises(DimensionMismatchError):
        lattice_extend(H, [3])
    assert lattice_drop(lattice_from_generators([2, 3], [(2, 1)]), 3) == H


def test_forces_zero():
    H = lattice_from_generators([2, 3], [(0, 1)])
    assert forces_zero(H, 2)
    assert not forces_zero(H, 3)


def test_string_forms():
    assert str(Lattice.full([2])) == "Z"
    assert str(lattice_from_generators([2], [(2,)])) == "2Z"
    assert str(Lattice.zero([2])) == "0"
    assert str(Lattice.full([2, 3])) == "Z^2"
    assert str(lattice_from_generators([2, 3], [(2, 1)])) == "<(2,1)>"


@pytest.mark.parametrize("vectors, expected", [
    ([(1, -1)], []),
    ([(1, 0), (0, 1)], [(1, 0), (0, 1)]),
    ([(2, 1)], [(2, 1)]),
    ([(1, -1), (0, 2)], [(1, 1), (0, 2)]),
    ([(1, -1, 0), (0, 0, 3)], [(0, 0, 3)]),
])
def test_positive_part(vectors, expected):
    support = [2, 3, 5][:len(vectors[0])]
    H = positive_part(lattice_from_generators(support, vectors))
    assert H == lattice_from_generators(support, expected)


def test_positive_part_contains_every_nonnegative_vector():
    H = lattice_from_generators([2, 3], [(3, -2), (1, 1)])
    plus = positive_part(H)
    for a in range(6):
        for b in range(6):
            assert lattice_contains(plus, (a, b)) == lattice_contains(H, (a, b))

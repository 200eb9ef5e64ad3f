import random

import pytest

from puiseux_lengths import kernels
from puiseux_lengths.kernels import bits_to_list, list_to_bits, sumset_bits

from oracles import brute_lengths

BACKENDS = kernels.backends()


def random_atoms(rng):
    return sorted(rng.sample(range(1, 25), rng.randint(1, 4)))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_length_table_against_brute_force(name):
    impl = BACKENDS[name]
    rng = random.Random(11)
    for _ in range(40):
        atoms = random_atoms(rng)
        table = impl.length_table(atoms, 60)
        for n in range(0, 61, 7):
            assert set(bits_to_list(table[n])) == brute_lengths(atoms, n)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_backends_agree():
    rng = random.Random(5)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(200):
        atoms = random_atoms(rng)
        n = rng.randint(0, 400)
        assert py.length_bits(atoms, n) == cy.length_bits(atoms, n)
        assert py.length_table(atoms, 80) == cy.length_table(atoms, 80)
        target = list_to_bits(sorted(rng.sample(range(2, 9), rng.randint(1, 3))))
        assert py.find_realizing_element(atoms, target, 8, 200) == cy.find_realizing_element(atoms, target, 8, 200)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_realizing_element_examples(name):
    impl = BACKENDS[name]
    assert impl.find_realizing_element([2, 3], list_to_bits([2, 3]), 3, 100) == 6
    assert impl.find_realizing_element([2, 3], list_to_bits([9]), 9, 10) == -1
    assert impl.find_realizing_element([2, 4], list_to_bits([2]), 2, 100) == -2  # 4 = 2 + 2


def test_bit_helpers_roundtrip():
    assert bits_to_list(list_to_bits([0, 3, 64, 200])) == [0, 3, 64, 200]
    assert bits_to_list(sumset_bits(list_to_bits([1, 2]), list_to_bits([0, 5]))) == [1, 2, 6, 7]
    assert sumset_bits(0, 7) == 0


def test_backend_name():
    assert kernels.BACKEND in BACKENDS

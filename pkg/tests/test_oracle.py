"""The brute-force subgroup-lattice oracle against the closed forms."""

import pytest

from genusfields import abelian, characters as ch, genus_number as gn, oracle
from genusfields.errors import BoundExceededError


def test_subgroup_counts_cyclic():
    for n in (1, 2, 6, 12, 30, 48):
        g = abelian.group_from_cyclic_orders([n] if n > 1 else [])
        assert len(oracle.enumerate_subgroups(g)) \
            == oracle.count_subgroups_cyclic(n)


@pytest.mark.parametrize("orders,count", [
    ((2, 2), 5),
    ((2, 4), 8),
    ((2, 2, 2), 16),
    ((3, 3), 6),
    ((2, 6), 10),
])
def test_subgroup_counts_small_groups(orders, count):
    g = abelian.group_from_cyclic_orders(list(orders))
    assert len(oracle.enumerate_subgroups(g)) == count


def test_enumerated_sets_are_subgroups():
    g = abelian.group_from_cyclic_orders([4, 6])
    for s in oracle.enumerate_subgroups(g):
        assert g.identity in s
        for a in s:
            for b in s:
                assert g.add(a, b) in s
        assert g.order % len(s) == 0


def test_enumeration_bound():
    g = abelian.group_from_cyclic_orders([2] * 13)
    with pytest.raises(BoundExceededError):
        oracle.enumerate_subgroups(g)


def test_lattice_caches_and_orders_deterministically():
    amb = ch.numeric_ambient(40)
    a = oracle.enumerate_subfields(amb)
    b = oracle.enumerate_subfields(amb)
    assert a is b
    sizes = [len(s) for s in a.subgroups]
    assert sizes == sorted(sizes)


@pytest.mark.parametrize("n", [8, 15, 24, 45, 56, 63])
def test_oracle_matches_closed_forms_exhaustively(n):
    amb = ch.numeric_ambient(n)
    lattice = oracle.enumerate_subfields(amb)
    for s in lattice.subgroups:
        x = ch.CharacterGroup(
            amb, abelian.subgroup_from_generators(amb.group, sorted(s)))
        assert oracle.maximal_extended_search(x) \
            == gn.extended_genus_characters(x)
        assert oracle.maximal_genus_search(x) == gn.genus_characters(x)


def test_oracle_fixture_values_for_quadratic_fields():
    # degrees of the genus fields of Q(sqrt(-5)) and Q(sqrt(3)), found by
    # exhaustive search rather than the component formulas
    for d, genus_deg, gap in ((-20, 4, 1), (12, 2, 2)):
        chi = ch.kronecker_character(d)
        x = ch.character_group(chi.ambient, [chi])
        genus = oracle.maximal_genus_search(x)
        extended = oracle.maximal_extended_search(x)
        assert genus.order == genus_deg
        assert extended.order // genus.order == gap

"""Tests for the finite abelian group lattice calculus."""

import random
from math import gcd, lcm, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genusfields import abelian as ab
from genusfields.errors import (
    AmbientMismatchError,
    BoundExceededError,
    DimensionError,
)


def cyclic(n):
    return ab.FiniteAbelianGroup((n,))


def sub_elements(sub):
    return sub.elements()


class TestGroupBasics:
    def test_invariant_chain_enforced(self):
        with pytest.raises(ValueError):
            ab.FiniteAbelianGroup((4, 6))
        with pytest.raises(ValueError):
            ab.FiniteAbelianGroup((1, 2))

    def test_order_bound(self):
        with pytest.raises(BoundExceededError):
            ab.FiniteAbelianGroup((2 ** 64,))

    def test_trivial_group(self):
        assert ab.TRIVIAL_GROUP.order == 1
        assert ab.TRIVIAL_GROUP.rank == 0

    def test_element_order(self):
        g = ab.FiniteAbelianGroup((2, 4))
        assert g.element_order((0, 0)) == 1
        assert g.element_order((1, 2)) == 2
        assert g.element_order((1, 1)) == 4

    def test_group_from_cyclic_orders(self):
        assert ab.group_from_cyclic_orders([2, 3]).invariant_factors == (6,)
        assert ab.group_from_cyclic_orders([2, 4]).invariant_factors == (2, 4)
        assert ab.group_from_cyclic_orders([1, 1]) == ab.TRIVIAL_GROUP


class TestSubgroupFromGenerators:
    def test_cyclic_order_three(self):
        # sigma^4 inside C12 generates the order-3 subgroup
        h = ab.subgroup_from_generators(cyclic(12), [(4,)])
        assert h.order == 3

    def test_empty_generators(self):
        h = ab.subgroup_from_generators(cyclic(12), [])
        assert h.order == 1

    def test_rank_two_example(self):
        g = ab.FiniteAbelianGroup((2, 4))
        h = ab.subgroup_from_generators(g, [(1, 0), (0, 2)])
        assert h.order == 4
        assert sub_elements(h) == {(0, 0), (1, 0), (0, 2), (1, 2)}

    def test_wrong_length_generator(self):
        with pytest.raises(DimensionError):
            ab.subgroup_from_generators(cyclic(12), [(1, 0)])

    def test_canonical_equality(self):
        g = ab.FiniteAbelianGroup((2, 4))
        h = ab.subgroup_from_generators(g, [(1, 2), (0, 2)])
        h2 = ab.subgroup_from_generators(g, list(sub_elements(h)))
        assert h == h2

    def test_membership(self):
        g = ab.FiniteAbelianGroup((2, 4, 8))
        h = ab.subgroup_from_generators(g, [(1, 1, 2), (0, 2, 0)])
        els = sub_elements(h)
        for x in g.elements():
            assert h.contains(x) == (x in els)


class TestMeetAndJoin:
    def test_cyclic_meet_lcm(self):
        # in C12 the meet of <4> and <6> is <lcm(4,6)> = <12>, trivial
        g = cyclic(12)
        a = ab.subgroup_from_generators(g, [(4,)])
        b = ab.subgroup_from_generators(g, [(6,)])
        assert ab.intersect(a, b).order == 1

    def test_meet_idempotent(self):
        g = cyclic(12)
        a = ab.subgroup_from_generators(g, [(4,)])
        assert ab.intersect(a, a) == a

    def test_meet_rank_two(self):
        g = ab.FiniteAbelianGroup((2, 4))
        a = ab.subgroup_from_generators(g, [(1, 2)])
        b = ab.subgroup_from_generators(g, [(0, 1)])
        got = ab.intersect(a, b)
        assert sub_elements(got) == sub_elements(a) & sub_elements(b)

    def test_cyclic_join_gcd(self):
        # join of <4> and <6> in C12 is <gcd(4,6)> = <2>, order 6
        g = cyclic(12)
        a = ab.subgroup_from_generators(g, [(4,)])
        b = ab.subgroup_from_generators(g, [(6,)])
        j = ab.product(a, b)
        assert j.order == 6
        assert j == ab.subgroup_from_generators(g, [(2,)])

    def test_join_with_trivial(self):
        g = cyclic(12)
        a = ab.subgroup_from_generators(g, [(4,)])
        assert ab.product(a, ab.trivial_subgroup(g)) == a

    def test_join_in_units_mod_16(self):
        u = ab.unit_group(16)
        a = ab.subgroup_from_generators(u.group, [u.dlog(15)])
        b = ab.subgroup_from_generators(u.group, [u.dlog(9)])
        j = ab.product(a, b)
        assert j.order == 4
        assert {u.exp(x) for x in sub_elements(j)} == {1, 7, 9, 15}

    def test_ambient_mismatch(self):
        a = ab.trivial_subgroup(cyclic(12))
        b = ab.trivial_subgroup(cyclic(10))
        with pytest.raises(AmbientMismatchError):
            ab.intersect(a, b)
        with pytest.raises(AmbientMismatchError):
            ab.product(a, b)


class TestIndexStructureQuotient:
    def test_index_extremes(self):
        g = cyclic(12)
        assert ab.trivial_subgroup(g).index == 12
        assert ab.full_subgroup(g).index == 1
        assert ab.subgroup_from_generators(g, [(2,)]).index == 2

    def test_is_cyclic(self):
        u = ab.unit_group(16)
        assert ab.is_cyclic(ab.trivial_subgroup(u.group))
        klein = ab.subgroup_from_generators(u.group, [u.dlog(15), u.dlog(7)])
        assert not ab.is_cyclic(klein)
        assert ab.is_cyclic(ab.subgroup_from_generators(u.group, [u.dlog(3)]))

    def test_quotient_mod_16(self):
        u = ab.unit_group(16)
        by_minus_one = ab.subgroup_from_generators(u.group, [u.dlog(15)])
        assert ab.quotient_structure(by_minus_one).invariant_factors == (4,)
        by_nine = ab.subgroup_from_generators(u.group, [u.dlog(9)])
        assert ab.quotient_structure(by_nine).invariant_factors == (2, 2)
        assert ab.quotient_structure(ab.full_subgroup(u.group)) == ab.TRIVIAL_GROUP

    def test_structure_orders(self):
        g = ab.FiniteAbelianGroup((2, 4, 4))
        rng = random.Random(7)
        els = list(g.elements())
        for _ in range(25):
            h = ab.subgroup_from_generators(g, rng.sample(els, 2))
            assert h.structure().order == h.order
            assert ab.quotient_structure(h).order == h.index


class TestClosedForms:
    """Exact lcm/gcd closed forms for subgroups of a cyclic group."""

    @pytest.mark.parametrize("n", [12, 36, 100, 210, 1000])
    def test_divisor_pairs(self, n):
        g = cyclic(n)
        for j1 in range(1, n + 1):
            if n % j1:
                continue
            for j2 in range(1, n + 1):
                if n % j2:
                    continue
                a = ab.subgroup_from_generators(g, [(j1,)])
                b = ab.subgroup_from_generators(g, [(j2,)])
                meet = ab.intersect(a, b)
                join = ab.product(a, b)
                l = lcm(j1, j2)
                assert meet == ab.subgroup_from_generators(g, [(l % n,)])
                assert join == ab.subgroup_from_generators(g, [(gcd(j1, j2),)])

    def test_cyclic_index_identity_exhaustive(self):
        # [G : H1 H2] = gcd([G:H1], [G:H2]) for every cyclic G of order <= 200
        for n in range(2, 201):
            g = cyclic(n)
            divisors = [d for d in range(1, n + 1) if n % d == 0]
            subs = {d: ab.subgroup_from_generators(g, [(d,)]) for d in divisors}
            for j1 in divisors:
                for j2 in divisors:
                    join = ab.product(subs[j1], subs[j2])
                    assert join.index == gcd(subs[j1].index, subs[j2].index)


@st.composite
def group_and_elements(draw, max_rank=3, max_order=256, count=2):
    rank = draw(st.integers(1, max_rank))
    facs = []
    d = 1
    for _ in range(rank):
        mult = draw(st.integers(1, 4))
        d = d * mult if facs else draw(st.integers(2, 8))
        facs.append(max(d, 2))
        d = facs[-1]
    while prod(facs) > max_order:
        facs.pop()
    if not facs:
        facs = [2]
    g = ab.FiniteAbelianGroup(tuple(facs))
    vecs = [tuple(draw(st.integers(0, f - 1)) for f in facs)
            for _ in range(count)]
    return g, vecs


class TestLatticeLaws:
    @given(group_and_elements(count=4))
    @settings(max_examples=120, deadline=None)
    def test_meet_join_against_enumeration(self, data):
        g, vecs = data
        a = ab.subgroup_from_generators(g, vecs[:2])
        b = ab.subgroup_from_generators(g, vecs[2:])
        ea, eb = sub_elements(a), sub_elements(b)
        assert sub_elements(ab.intersect(a, b)) == ea & eb
        j = ab.product(a, b)
        assert sub_elements(j) >= ea | eb
        assert len(sub_elements(j)) == j.order

    @given(group_and_elements(count=3))
    @settings(max_examples=120, deadline=None)
    def test_absorption(self, data):
        g, vecs = data
        a = ab.subgroup_from_generators(g, vecs[:2])
        b = ab.subgroup_from_generators(g, vecs[2:])
        assert ab.product(a, ab.intersect(a, b)) == a
        assert ab.intersect(a, ab.product(a, b)) == a

    @given(group_and_elements(count=2))
    @settings(max_examples=80, deadline=None)
    def test_order_index_product(self, data):
        g, vecs = data
        a = ab.subgroup_from_generators(g, vecs)
        assert a.order * a.index == g.order
        assert a.structure().order == a.order
        assert ab.quotient_structure(a).order == a.index


class TestOrderTwoJoinIdentity:
    """[S1 I meet S2 I : (S1 meet S2) I] divides |I| for order-2 I."""

    def _check(self, g, s1, s2, i):
        lhs = ab.intersect(ab.product(s1, i), ab.product(s2, i))
        rhs = ab.product(ab.intersect(s1, s2), i)
        assert rhs.order <= lhs.order
        q, r = divmod(lhs.order, rhs.order)
        assert r == 0
        assert i.order % q == 0

    def test_randomized(self):
        rng = random.Random(20260823)
        ambients = [
            ab.FiniteAbelianGroup((2, 2, 4)),
            ab.FiniteAbelianGroup((4, 8)),
            ab.FiniteAbelianGroup((2, 4, 8)),
            ab.FiniteAbelianGroup((2, 2, 2, 4)),
            ab.FiniteAbelianGroup((8, 8)),
            ab.FiniteAbelianGroup((2, 6, 12)),
        ]
        trials = 0
        while trials < 10 ** 4:
            g = rng.choice(ambients)
            els = list(g.elements())
            order2 = [x for x in els if g.element_order(x) == 2]
            s1 = ab.subgroup_from_generators(g, rng.sample(els, 2))
            s2 = ab.subgroup_from_generators(g, rng.sample(els, 2))
            i = ab.subgroup_from_generators(g, [rng.choice(order2)])
            self._check(g, s1, s2, i)
            trials += 1


class TestUnitGroups:
    def test_structures(self):
        assert ab.unit_group(16).group.invariant_factors == (2, 4)
        assert ab.unit_group(5).group.invariant_factors == (4,)
        assert ab.unit_group(20).group.invariant_factors == (2, 4)
        assert ab.unit_group(2).group == ab.TRIVIAL_GROUP
        assert ab.unit_group(8).group.invariant_factors == (2, 2)

    def test_two_power_structure(self):
        for k in range(3, 11):
            assert ab.unit_group(2 ** k).group.invariant_factors == (2, 2 ** (k - 2))

    def test_round_trip_exhaustive(self):
        for n in range(2, 200):
            u = ab.unit_group(n)
            count = 0
            for x in u.residues():
                assert u.exp(u.dlog(x)) == x
                count += 1
            assert count == u.order

    def test_dlog_is_homomorphism(self):
        u = ab.unit_group(360)
        rng = random.Random(3)
        units = list(u.residues())
        for _ in range(200):
            x, y = rng.choice(units), rng.choice(units)
            assert u.dlog(x * y % 360) == u.group.add(u.dlog(x), u.dlog(y))

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            ab.unit_group(1)
        with pytest.raises(BoundExceededError):
            ab.unit_group(10 ** 6 + 1)

    def test_generators_round_trip(self):
        u = ab.unit_group(63)
        gens = u.generators
        assert len(gens) == u.group.rank
        for i, g in enumerate(gens):
            vec = u.dlog(g)
            assert vec == tuple(1 if j == i else 0 for j in range(u.group.rank))


class TestPrimePowerUnitLattice:
    """Index identity [G : H1 H2] = gcd of indices for odd prime powers."""

    @pytest.mark.parametrize("pm", [27, 125, 343, 1331, 1849, 9, 49, 1681])
    def test_exhaustive_over_divisor_subgroups(self, pm):
        u = ab.unit_group(pm)
        g = u.group
        assert g.rank == 1
        n = g.order
        subs = [ab.subgroup_from_generators(g, [(d,)])
                for d in range(1, n + 1) if n % d == 0]
        for a in subs:
            for b in subs:
                j = ab.product(a, b)
                assert j.index == gcd(a.index, b.index)

from itertools import combinations, product
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from skewmorph.groups import (
    InvalidFactorError,
    SizeGuardError,
    abelian_group_presentations,
    compose,
    cycles,
    enumerate_automorphisms,
    enumerate_subgroups,
    invert,
    make_group,
    multiplicative_order,
    parse_group_literal,
    perm_order,
    perm_power,
    quotient_group,
    subgroup_from_members,
    subgroup_generated_by,
)

small_factors = st.lists(st.integers(2, 6), min_size=0, max_size=3).filter(
    lambda fs: prod(fs) <= 48
)


def test_make_group_basics():
    assert make_group([6]).order == 6
    assert make_group([]).order == 1
    g = make_group([2, 4])
    assert g.order == 8
    assert g.index_of((1, 3)) == 7
    assert g.coords(7) == (1, 3)


@pytest.mark.parametrize("bad", [[1], [0], [-2], [2, 1]])
def test_make_group_rejects_factors_below_two(bad):
    with pytest.raises(InvalidFactorError):
        make_group(bad)


def test_add_examples():
    assert make_group([6]).add(4, 5) == 3
    g = make_group([2, 4])
    assert g.add(g.index_of((1, 3)), g.index_of((1, 2))) == g.index_of((0, 1))


def test_element_order_examples():
    assert make_group([9]).element_order(3) == 3
    assert make_group([6]).element_order(5) == 6
    assert make_group([6]).element_order(0) == 1


def test_out_of_range_indices_raise():
    g = make_group([6])
    with pytest.raises(IndexError):
        g.add(0, 6)
    with pytest.raises(IndexError):
        g.element_order(-1)


@given(small_factors, st.data())
@settings(max_examples=60, deadline=None)
def test_group_laws(factors, data):
    g = make_group(factors)
    n = g.order
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    c = data.draw(st.integers(0, n - 1))
    assert g.add(a, 0) == a
    assert g.add(a, b) == g.add(b, a)
    assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
    assert g.add(a, g.neg(a)) == 0


def test_addition_is_group_table_exhaustively_small():
    for factors in ([4], [2, 2], [2, 4], [3, 3], [16], [2, 2, 2]):
        g = make_group(factors)
        n = g.order
        for a in range(n):
            assert g.add(a, 0) == a
            assert g.add(a, g.neg(a)) == 0
        if n <= 16:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))


def _subgroups_by_pairs(g):
    """Independent oracle: closures of all subsets generated by <= 2 elements."""
    found = set()
    elements = list(range(g.order))
    for gens in [()] + [(x,) for x in elements] + list(combinations(elements, 2)):
        span = {0}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in span:
                continue
            new = {g.add(s, g.scalar(t, x)) for s in span for t in range(g.element_order(x))}
            span |= new
            frontier.extend(new)
        closed = span
        while True:
            bigger = {g.add(a, b) for a in closed for b in closed}
            if bigger <= closed:
                break
            closed |= bigger
        found.add(frozenset(closed))
    return found


def test_enumerate_subgroups_examples():
    assert len(enumerate_subgroups(make_group([6]))) == 4
    assert len(enumerate_subgroups(make_group([]))) == 1
    g33 = make_group([3, 3])
    subs = enumerate_subgroups(g33)
    assert len(subs) == 6
    assert {frozenset(s.members) for s in subs} == _subgroups_by_pairs(g33)


def test_enumerate_subgroups_sorted_and_lagrange():
    g = make_group([2, 4])
    subs = enumerate_subgroups(g)
    sizes = [s.size for s in subs]
    assert sizes == sorted(sizes)
    for s in subs:
        assert g.order % s.size == 0
        assert 0 in s.members


def test_subgroup_guard():
    with pytest.raises(SizeGuardError):
        enumerate_subgroups(make_group([17, 17]), guard=256)


def _gl2_count(p):
    """Invertible 2x2 matrices over F_p, by brute force."""
    count = 0
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p != 0:
            count += 1
    return count


def test_enumerate_automorphisms_counts():
    assert len(enumerate_automorphisms(make_group([9]))) == 6
    assert len(enumerate_automorphisms(make_group([2]))) == 1
    assert len(enumerate_automorphisms(make_group([3, 3]))) == _gl2_count(3) == 48


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 24, 30])
def test_cyclic_automorphism_count_is_totient(n):
    phi = sum(1 for t in range(1, n + 1) if gcd(t, n) == 1)
    assert len(enumerate_automorphisms(make_group([n]))) == phi


def test_automorphisms_form_a_group():
    for factors in ([6], [2, 4], [3, 3]):
        g = make_group(factors)
        autos = {a.table for a in enumerate_automorphisms(g)}
        for t1 in autos:
            assert invert(t1) in autos
            for t2 in autos:
                assert compose(t1, t2) in autos


def test_perm_power_and_order():
    ident = tuple(range(6))
    assert perm_order(ident) == 1
    table = tuple((-x - 3 * x * (x - 1) // 2) % 9 for x in range(9))
    assert sorted(map(len, cycles(table))) == [1, 2, 6]
    assert perm_order(table) == 6
    assert perm_power(table, 6) == tuple(range(9))
    assert perm_power(table, -1) == invert(table)
    assert perm_power(table, 7) == table


def test_quotient_group_examples():
    g6 = make_group([6])
    q, proj = quotient_group(g6, subgroup_generated_by(g6, [3]))
    assert q.factors == (3,)
    q2, _ = quotient_group(g6, range(6))
    assert q2.factors == ()
    g24 = make_group([2, 4])
    q3, _ = quotient_group(g24, subgroup_generated_by(g24, [g24.index_of((0, 2))]))
    assert q3.factors == (2, 2)


def test_quotient_rejects_non_closed():
    g = make_group([6])
    with pytest.raises(ValueError):
        quotient_group(g, [0, 1])


@given(small_factors, st.data())
@settings(max_examples=30, deadline=None)
def test_quotient_projection_is_surjective_homomorphism(factors, data):
    g = make_group(factors)
    subs = enumerate_subgroups(g)
    sub = data.draw(st.sampled_from(subs))
    q, proj = quotient_group(g, sub)
    assert set(proj) == set(range(q.order))
    assert sorted(x for x in range(g.order) if proj[x] == proj[0]) == list(sub.members)
    for a in range(g.order):
        for b in range(g.order):
            assert proj[g.add(a, b)] == q.add(proj[a], proj[b])


def test_subgroup_generators_are_minimal_for_cyclic():
    g = make_group([2, 3])  # cyclic of order 6 in split form
    whole = subgroup_from_members(g, range(6))
    assert len(whole.generators) == 1


def test_parse_group_literal():
    assert parse_group_literal("Z6").factors == (6,)
    assert parse_group_literal("z2xZ4").factors == (2, 4)
    assert parse_group_literal("Z1").factors == ()
    for bad in ("", "Q5", "Z", "Z0", "Z6+Z2"):
        with pytest.raises(InvalidFactorError):
            parse_group_literal(bad)


def test_abelian_group_presentations():
    assert [g.factors for g in abelian_group_presentations(1)] == [()]
    assert [g.factors for g in abelian_group_presentations(8)] == [(2, 2, 2), (2, 4), (8,)]
    assert len(abelian_group_presentations(16)) == 5


def test_multiplicative_order():
    assert multiplicative_order(2, 9) == 6
    assert multiplicative_order(1, 1) == 1
    with pytest.raises(ValueError):
        multiplicative_order(3, 9)

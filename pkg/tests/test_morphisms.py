import pytest
from hypothesis import given, settings, strategies as st

from skewmorph.groups import (
    Automorphism,
    enumerate_automorphisms,
    make_group,
    subgroup_generated_by,
)
from skewmorph.morphisms import (
    SkewMorphismRejection,
    conjugate,
    core,
    core_of_translations,
    equivalence_classes,
    identity_morphism,
    is_corefree_cyclic_part,
    is_reciprocal_pair,
    is_smooth,
    kernel,
    quotient_skew,
    skew_product_group,
    skew_type,
    try_validate,
    validate,
)

Z6 = make_group([6])
Z9 = make_group([9])

PNS9_TABLE = tuple((-x - 3 * x * (x - 1) // 2) % 9 for x in range(9))
CSM6_TABLE = (0, 3, 2, 5, 4, 1)


@pytest.fixture(scope="module")
def pns9():
    return validate(Z9, PNS9_TABLE)


@pytest.fixture(scope="module")
def csm6():
    return validate(Z6, CSM6_TABLE)


def test_identity_is_a_skew_morphism():
    sm = validate(Z6, tuple(range(6)))
    assert sm.order == 1
    assert sm.power == (0,) * 6
    assert sm.is_automorphism


def test_pns9_matches_closed_forms(pns9):
    assert pns9.order == 6
    assert pns9.power == tuple((1 - 2 * x) % 6 for x in range(9))
    assert not is_smooth(pns9)
    assert kernel(pns9).members == (0, 3, 6)
    assert core(pns9).members == (0, 3, 6)
    assert skew_type(pns9) == 3


def test_validate_rejects_swap():
    with pytest.raises(SkewMorphismRejection) as err:
        validate(make_group([4]), (0, 1, 3, 2))
    assert err.value.reason == "no-power"
    assert err.value.element == 1
    assert err.value.witness == 1


def test_validate_rejects_moved_identity_and_non_bijection():
    with pytest.raises(SkewMorphismRejection) as err:
        validate(Z6, (1, 0, 2, 3, 4, 5))
    assert err.value.reason == "identity-moved"
    with pytest.raises(SkewMorphismRejection) as err:
        validate(Z6, (0, 0, 2, 3, 4, 5))
    assert err.value.reason == "not-bijection"


def test_defining_identity_holds_pointwise(pns9, csm6):
    for sm in (pns9, csm6):
        g = sm.group
        for a in range(g.order):
            pw = sm.power_tables[sm.power[a]]
            for b in range(g.order):
                assert sm.perm[g.add(a, b)] == g.add(sm.perm[a], pw[b])


def test_power_at_identity_is_one(pns9, csm6):
    for sm in (pns9, csm6):
        assert sm.power[0] == 1 % sm.order


def test_csm6_invariants(csm6):
    assert csm6.order == 3
    assert is_smooth(csm6)
    assert csm6.power == tuple(pow(2, x, 3) for x in range(6))
    assert kernel(csm6).members == (0, 2, 4)
    assert skew_type(csm6) == 2


def test_smoothness_constant_on_cycles(pns9, csm6):
    from skewmorph.groups import cycles

    for sm in (pns9, csm6):
        expected = all(
            len({sm.power[x] for x in cyc}) == 1 for cyc in cycles(sm.perm)
        )
        assert is_smooth(sm) == expected


def test_automorphisms_are_smooth_with_full_kernel():
    for theta in enumerate_automorphisms(Z6):
        sm = validate(Z6, theta.table)
        assert sm.is_automorphism
        assert is_smooth(sm)
        assert kernel(sm).size == 6
        assert skew_type(sm) == 1


def test_skew_product_group_orders(pns9):
    ident = identity_morphism(Z6)
    spg = skew_product_group(ident)
    assert spg.order == 6
    spg9 = skew_product_group(pns9)
    assert spg9.order == 54
    spg9.verify_closure()
    five = validate(Z6, tuple((5 * x) % 6 for x in range(6)))
    assert skew_product_group(five).order == 12


def test_skew_product_inverses(pns9):
    spg = skew_product_group(pns9)
    for pair in spg.pairs:
        inv = spg.inverse_pair(pair)
        assert spg.compose_pairs(pair, inv) == (0, 0)
        assert spg.compose_pairs(inv, pair) == (0, 0)


def test_core_of_translations(pns9):
    ident = identity_morphism(Z6)
    spg = skew_product_group(ident)
    assert core_of_translations(spg).members == tuple(range(6))
    assert is_corefree_cyclic_part(spg)
    spg9 = skew_product_group(pns9)
    assert core_of_translations(spg9).members == (0, 3, 6)
    assert is_corefree_cyclic_part(spg9)


def test_quotient_skew_edge_cases(pns9):
    same = quotient_skew(pns9, subgroup_generated_by(Z9, []))
    assert same.perm == pns9.perm
    trivial = quotient_skew(pns9, subgroup_generated_by(Z9, [1]))
    assert trivial.group.order == 1
    q = quotient_skew(pns9, subgroup_generated_by(Z9, [3]))
    assert q.group.factors == (3,)
    assert q.perm == (0, 2, 1)
    assert q.is_automorphism


def test_quotient_skew_rejects_non_invariant_partition():
    five = validate(Z6, tuple((5 * x) % 6 for x in range(6)))
    sub = subgroup_generated_by(Z6, [3])
    quotient_skew(five, sub)  # negation respects every subgroup
    csm = validate(Z6, CSM6_TABLE)
    with pytest.raises(SkewMorphismRejection) as err:
        quotient_skew(csm, sub)  # cosets of {0,3} are shuffled by the orbit (1 3 5)
    assert err.value.reason == "coset-partition"


def test_conjugate_by_identity(pns9):
    ident = Automorphism(Z9, tuple(range(9)))
    assert conjugate(pns9, ident).perm == pns9.perm


def test_conjugate_pns9_by_doubling(pns9):
    theta = Automorphism(Z9, tuple((2 * x) % 9 for x in range(9)))
    conj = conjugate(pns9, theta)
    # direct transport of the table through x -> 2x
    inv = tuple((5 * x) % 9 for x in range(9))
    expected = tuple(theta.table[pns9.perm[inv[x]]] for x in range(9))
    assert conj.perm == expected
    assert conj.order == pns9.order
    assert skew_type(conj) == skew_type(pns9)
    assert is_smooth(conj) == is_smooth(pns9)
    assert kernel(conj).size == kernel(pns9).size


@given(st.sampled_from(enumerate_automorphisms(Z9)))
@settings(max_examples=6, deadline=None)
def test_conjugation_preserves_invariants(theta):
    sm = validate(Z9, PNS9_TABLE)
    conj = conjugate(sm, theta)
    assert conj.order == sm.order
    assert is_smooth(conj) == is_smooth(sm)
    assert skew_type(conj) == skew_type(sm)


def test_equivalence_classes_on_nse_outputs():
    from skewmorph.constructions import nse_construct, nse_params_range

    morphs = [nse_construct(3, d, nu, r) for (d, nu, r) in nse_params_range(3)]
    classes = equivalence_classes(morphs)
    assert [len(c) for c in classes] == [4]  # one conjugation orbit


def test_reciprocal_identity_pairs():
    for m, n in ((1, 1), (3, 5), (4, 6)):
        a = identity_morphism(make_group([m] if m > 1 else []))
        b = identity_morphism(make_group([n] if n > 1 else []))
        assert is_reciprocal_pair(a, b)


def test_reciprocal_unique_pair_for_z3():
    from skewmorph.enumeration import brute_force_oracle

    morphs = brute_force_oracle(make_group([3])).morphisms
    hits = [
        (a.perm, b.perm)
        for a in morphs
        for b in morphs
        if is_reciprocal_pair(a, b)
    ]
    assert len(hits) == 1
    assert hits[0] == (tuple(range(3)), tuple(range(3)))


def test_reciprocal_fails_for_pns_pair(pns9):
    assert not is_reciprocal_pair(pns9, pns9)  # 6 does not divide 9


def test_reciprocal_requires_cyclic_groups(pns9):
    other = identity_morphism(make_group([2, 2]))
    with pytest.raises(ValueError):
        is_reciprocal_pair(pns9, other)


def test_try_validate_matches_validate():
    assert try_validate(make_group([4]), (0, 1, 3, 2)) is None
    sm = try_validate(Z9, PNS9_TABLE)
    assert sm is not None and sm.order == 6


def test_power_equal_iff_kernel_coset_corrected_reading():
    """pi(a) = pi(b) exactly when a - b lies in the kernel.

    This is the corrected reading of the congruence (the source statement
    degenerates to a tautology); checked exhaustively over every enumerated
    morphism of a spread of groups up to order 32.
    """
    from skewmorph.enumeration import cached_enumeration

    for factors in ((6,), (9,), (12,), (2, 4), (3, 3), (32,)):
        group = make_group(factors)
        n = group.order
        for sm in cached_enumeration(factors).morphisms:
            ker = set(kernel(sm).members)
            for a in range(n):
                for b in range(n):
                    assert (sm.power[a] == sm.power[b]) == (group.sub(a, b) in ker)


def test_kernel_nontrivial_for_nontrivial_groups():
    from skewmorph.enumeration import cached_enumeration

    for factors in ((4,), (9,), (2, 4), (3, 3), (16,)):
        for sm in cached_enumeration(factors).morphisms:
            assert kernel(sm).size > 1


def test_automorphism_iff_power_constant_one():
    from skewmorph.enumeration import cached_enumeration
    from skewmorph.groups import is_homomorphism

    for factors in ((9,), (2, 4), (3, 3)):
        group = make_group(factors)
        for sm in cached_enumeration(factors).morphisms:
            assert sm.is_automorphism == is_homomorphism(group, sm.perm)

import pytest

from skewmorph.constructions import (
    DirectProductRejection,
    ParameterRejection,
    csm_construct,
    csm_params,
    direct_product,
    enumerate_csm_params,
    nonsmooth_witness,
    nse_construct,
    nse_params_range,
    pns_witness_odd,
    pns_witness_two,
    root_construct,
    root_params,
    tau,
)
from skewmorph.groups import make_group, parse_group_literal
from skewmorph.morphisms import identity_morphism, is_smooth, kernel, skew_type


def test_tau():
    assert tau(1, 2) == 2
    assert tau(2, 3) == 1 + 2 + 4


def test_csm_z6_example():
    sm = csm_construct(csm_params(6, 2, 1, 1, 2))
    assert sm.perm == (0, 3, 2, 5, 4, 1)
    assert sm.order == 3
    assert sm.power == tuple(pow(2, x, 3) for x in range(6))
    assert is_smooth(sm)
    assert skew_type(sm) == 2


def test_csm_rejects_r_zero():
    with pytest.raises(ParameterRejection) as err:
        csm_params(6, 2, 0, 1, 2)
    assert err.value.condition == "b"


def test_csm_rejects_bad_k():
    with pytest.raises(ParameterRejection):
        csm_params(6, 4, 1, 1, 2)
    with pytest.raises(ParameterRejection):
        csm_params(6, 6, 1, 1, 2)


def test_enumerate_csm_params_small():
    tuples = [(p.k, p.r, p.s, p.t) for p in enumerate_csm_params(6)]
    assert (2, 1, 1, 2) in tuples
    assert enumerate_csm_params(4) == []
    assert enumerate_csm_params(5) == []


@pytest.mark.parametrize("n", range(2, 21))
def test_csm_outputs_are_proper_smooth(n):
    seen = set()
    for params in enumerate_csm_params(n):
        sm = csm_construct(params)  # internal assertions check order/type/power
        assert is_smooth(sm)
        assert sm.is_proper
        seen.add(sm.perm)
    # distinct tuples may repeat morphisms but never disagree
    assert len(seen) <= max(1, len(enumerate_csm_params(n)))


def test_root_z9_witness():
    params = root_params(9, 3, 8)
    assert (params.ell, params.w, params.w_inv, params.order) == (1, 2, 2, 6)
    sm = root_construct(params)
    assert sm.perm == tuple((-x - 3 * x * (x - 1) // 2) % 9 for x in range(9))
    assert sm.power == tuple((1 - 2 * x) % 6 for x in range(9))
    square = tuple(sm.perm[sm.perm[x]] for x in range(9))
    assert square == tuple((7 * x) % 9 for x in range(9))


def test_root_z32_witness():
    sm = root_construct(root_params(32, 4, 31))
    assert sm.order == 8
    assert sm.power == tuple((1 - 2 * x) % 8 for x in range(32))
    assert not is_smooth(sm)


def test_root_rejections():
    with pytest.raises(ParameterRejection):
        root_params(9, 2, 8)  # 2k^2 = 8 does not divide 9
    with pytest.raises(ParameterRejection):
        root_params(9, 3, 7)  # 7 is not -1 mod 3


def test_root_sweep_squares_are_automorphisms():
    from skewmorph.morphisms import try_validate

    found = 0
    for n in range(4, 37):
        for k in range(2, 7):
            for s in range(1, n):
                try:
                    params = root_params(n, k, s)
                except ParameterRejection:
                    continue
                sm = root_construct(params)
                found += 1
                square = tuple(sm.perm[sm.perm[x]] for x in range(n))
                sq = try_validate(sm.group, square)
                assert sq is not None and sq.is_automorphism
                assert sm.order == params.order == 2 * params.k * params.ell
                assert skew_type(sm) == params.k
    assert found > 0


def test_pns_witness_odd():
    sm = pns_witness_odd(3, 2)
    assert sm.power[1] == 5  # -1 mod 6
    assert sm.power[sm.perm[1]] == 3
    assert not is_smooth(sm)
    with pytest.raises(ParameterRejection):
        pns_witness_odd(3, 1)
    with pytest.raises(ParameterRejection):
        pns_witness_odd(4, 2)


def test_pns_witness_two():
    sm = pns_witness_two(5)
    assert sm.group.order == 32
    assert sm.order == 8
    assert sm.power[1] == 7
    assert sm.power[sm.perm[1]] == 3
    with pytest.raises(ParameterRejection):
        pns_witness_two(4)


def test_nse_z3_all_triples():
    outs = {}
    for (d, nu, r) in nse_params_range(3):
        sm = nse_construct(3, d, nu, r)
        assert sm.order == 6
        assert not is_smooth(sm)
        assert kernel(sm).members == (0, 3, 6)
        k = 2  # multiplicative order of 2 mod 3
        assert sm.power == tuple((1 + j * nu * k) % 6 for i in range(3) for j in range(3))
        outs[(d, nu, r)] = sm.perm
    assert len(nse_params_range(3)) == 4
    assert len(set(outs.values())) == 4


def test_nse_power_jump_at_x_generator():
    sm = nse_construct(3, 1, 1, 2)
    x = 1  # element (0, 1)
    assert sm.power[x] != sm.power[sm.perm[x]]


def test_nse_rejections():
    with pytest.raises(ParameterRejection):
        nse_construct(2, 1, 1, 1)
    with pytest.raises(ParameterRejection):
        nse_construct(3, 0, 1, 2)
    with pytest.raises(ParameterRejection):
        nse_construct(3, 1, 1, 1)


def test_direct_product_with_identity():
    pns = pns_witness_odd(3, 2)
    prod = direct_product(pns, identity_morphism(make_group([2])))
    assert prod.group.factors == (9, 2)
    assert prod.order == 6
    assert not is_smooth(prod)


def test_direct_product_rejection_witness():
    pns = pns_witness_odd(3, 2)
    with pytest.raises(DirectProductRejection) as err:
        direct_product(pns, pns)
    assert err.value.side == "left"
    assert err.value.element == 1


def test_direct_product_smooth_iff_both_smooth():
    from skewmorph.enumeration import cached_enumeration

    z9 = cached_enumeration((9,)).morphisms
    z2 = cached_enumeration((2,)).morphisms
    for a in z9:
        for b in z2:
            try:
                prod = direct_product(a, b)
            except DirectProductRejection:
                continue
            assert is_smooth(prod) == (is_smooth(a) and is_smooth(b))


@pytest.mark.parametrize(
    "literal,expected_order",
    [("Z18", 6), ("Z3xZ3", 6), ("Z32", 8), ("Z32xZ2", 8), ("Z9xZ2", 6), ("Z3xZ6", 6)],
)
def test_nonsmooth_witness_found(literal, expected_order):
    group = parse_group_literal(literal)
    w = nonsmooth_witness(group)
    assert w is not None
    assert w.group == group
    assert not is_smooth(w)
    assert w.order == expected_order


@pytest.mark.parametrize("literal", ["Z15", "Z16", "Z2xZ2", "Z4xZ4", "Z30"])
def test_nonsmooth_witness_none(literal):
    assert nonsmooth_witness(parse_group_literal(literal)) is None

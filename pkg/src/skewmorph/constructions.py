"""Closed-form skew morphism families for cyclic groups and Z_p x Z_p.

Each constructor evaluates an explicit formula, then revalidates the table
and asserts the advertised order, skew-type, kernel and power function.
A failed parameter condition raises ParameterRejection naming the
condition; a failed assertion would mean the implementation disagrees
with the closed forms and is allowed to crash loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .groups import (
    AbelianGroup,
    factorint,
    invert,
    make_group,
    multiplicative_order,
    permute_factors,
    primary_split,
)
from .morphisms import (
    SkewMorphism,
    identity_morphism,
    is_smooth,
    kernel,
    relabel,
    skew_type,
    try_validate,
    validate,
)


class ParameterRejection(ValueError):
    """Constructor parameters violate a stated condition."""

    def __init__(self, condition: str, detail: str):
        self.condition = condition
        super().__init__(f"condition {condition}: {detail}")


class FamilyConsistencyError(RuntimeError):
    """A uniqueness or existence guarantee of a closed-form family failed."""


def _geometric_sum(base: int, terms: int, modulus: int) -> int:
    """1 + base + ... + base**(terms-1) mod modulus (0 terms -> 0)."""
    total, p = 0, 1
    for _ in range(terms):
        total = (total + p) % modulus
        p = (p * base) % modulus
    return total


def tau(s: int, t: int) -> int:
    """Sum of s**(i-1) for i = 1..t."""
    return sum(s ** (i - 1) for i in range(1, t + 1))


# ---------------------------------------------------------------------------
# Smooth family for cyclic groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CsmParams:
    """Parameters (n, k, r, s, t) of the proper smooth cyclic family."""

    n: int
    k: int
    r: int
    s: int
    t: int
    order: int  # the derived m


def _csm_order(n: int, k: int, r: int, s: int) -> int:
    """Smallest m >= 1 with r * (1 + s + ... + s**(m-1)) = 0 mod n/k."""
    q = n // k
    total, p = 0, 1
    for m in range(1, q * multiplicative_order(s % q if q > 1 else 0, q) + 2):
        total = (total + p) % q
        p = (p * s) % q
        if (r * total) % q == 0:
            return m
    raise AssertionError("geometric order search did not terminate")


def csm_params(n: int, k: int, r: int, s: int, t: int) -> CsmParams:
    """Canonicalize and check conditions (a)-(d) of the smooth family."""
    if n < 2:
        raise ParameterRejection("k", f"no proper divisors of n={n}")
    if k <= 1 or k >= n or n % k != 0:
        raise ParameterRejection("k", f"k={k} is not a proper divisor > 1 of n={n}")
    q = n // k
    r %= q
    s %= q
    if gcd(s, q) != 1:
        raise ParameterRejection("s", f"s={s} is not a unit mod n/k={q}")
    m = _csm_order(n, k, r, s)
    t %= m if m > 1 else 1
    if m == 1 or gcd(t, m) != 1:
        raise ParameterRejection("b", f"t={t} is not a unit mod m={m}")
    if multiplicative_order(t, m) != k:
        raise ParameterRejection("b", f"t={t} does not have multiplicative order k={k} mod m={m}")
    tv = _geometric_sum(s, t, q)  # tau(s, t) mod n/k
    lhs = (s - 1) % q
    rhs = (r * _geometric_sum(tv, k, q)) % q
    if lhs != rhs:
        raise ParameterRejection("c", f"s-1 != r*(tau^k-1)/(tau-1) mod n/k for {(n, k, r, s, t)}")
    if pow(s, t - 1, q) != 1 % q:
        raise ParameterRejection("d", f"s^(t-1) != 1 mod n/k for {(n, k, r, s, t)}")
    return CsmParams(n, k, r, s, t, m)


def csm_construct(params: CsmParams) -> SkewMorphism:
    """phi(x) = x + r*k*(tau^x - 1)/(tau - 1) mod n, via the geometric sum."""
    n, k, r = params.n, params.k, params.r
    tv = tau(params.s, params.t)
    table = tuple((x + r * k * _geometric_sum(tv, x, n)) % n for x in range(n))
    sm = validate(make_group([n]), table)
    assert sm.order == params.order, "smooth family order disagrees with condition (a)"
    assert skew_type(sm) == k, "smooth family skew-type disagrees with k"
    assert is_smooth(sm), "smooth family produced a non-smooth morphism"
    expected_power = tuple(pow(params.t, x, sm.order) for x in range(n))
    assert sm.power == expected_power, "smooth family power function is not t^x"
    return sm


def enumerate_csm_params(n: int, guard: int = 128) -> list[CsmParams]:
    """All parameter tuples passing (a)-(d), in lexicographic (k, r, s, t) order.

    Distinct tuples may define equal morphisms; deduplication is left to the
    caller at the table level.
    """
    if n > guard:
        raise ParameterRejection("n", f"n={n} exceeds guard {guard}")
    found = []
    for k in range(2, n):
        if n % k != 0:
            continue
        q = n // k
        for r in range(q):
            for s in range(q):
                if gcd(s, q) != 1:
                    continue
                m = _csm_order(n, k, r, s)
                for t in range(m):
                    if gcd(t, m) != 1:
                        continue
                    try:
                        found.append(csm_params(n, k, r, s, t))
                    except ParameterRejection:
                        continue
    return found


# ---------------------------------------------------------------------------
# Square roots of automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootParams:
    n: int
    k: int
    s: int
    ell: int
    w: int
    w_inv: int
    order: int  # 2 * k * ell


def root_params(n: int, k: int, s: int) -> RootParams:
    if k < 1 or n < 2:
        raise ParameterRejection("a", f"need n >= 2, k >= 1, got n={n}, k={k}")
    s %= n
    if k % 2 == 1:
        if n % (k * k) != 0:
            raise ParameterRejection("a", f"k^2={k*k} does not divide n={n}")
        if gcd(s, n) != 1:
            raise ParameterRejection("a", f"s={s} is not a unit mod n")
    else:
        if n % (2 * k * k) != 0:
            raise ParameterRejection("a", f"2k^2={2*k*k} does not divide n={n}")
        if gcd(s, n // 2) != 1:
            raise ParameterRejection("a", f"s={s} is not a unit mod n/2")
    if (s + 1) % k != 0:
        raise ParameterRejection("b", f"s={s} is not -1 mod k={k}")
    q = n // k
    so = multiplicative_order(s % q if q > 1 else 0, q)
    if so % 2 != 0:
        raise ParameterRejection("b", f"s has odd multiplicative order {so} mod n/k")
    ell = so // 2
    # w = (k/n)(s^(2l) - 1) - l*s(s-1)/2 mod k; the first term is an exact
    # integer because s^(2l) = 1 mod n/k.
    w = ((pow(s, 2 * ell) - 1) // q - ell * (s * (s - 1) // 2)) % k
    if gcd(w, k) != 1:
        raise ParameterRejection("b", f"w={w} is not a unit mod k={k}")
    w_inv = pow(w, -1, k) if k > 1 else 0
    return RootParams(n, k, s, ell, w, w_inv, 2 * k * ell)


def root_construct(params: RootParams) -> SkewMorphism:
    """phi(x) = s*x - x(x-1)*n/(2k) mod n; phi^2 is an automorphism."""
    n, k, s = params.n, params.k, params.s
    step = n // k
    table = tuple((s * x - (x * (x - 1) // 2) * step) % n for x in range(n))
    sm = validate(make_group([n]), table)
    assert sm.order == params.order, "square-root family order is not 2kl"
    assert skew_type(sm) == k, "square-root family skew-type is not k"
    m = sm.order
    expected_power = tuple((1 + 2 * x * params.w_inv * params.ell) % m for x in range(n))
    assert sm.power == expected_power, "square-root family power function mismatch"
    square = tuple(sm.perm[sm.perm[x]] for x in range(n))
    sq = try_validate(sm.group, square)
    assert sq is not None and sq.is_automorphism, "phi^2 is not an automorphism"
    return sm


def pns_witness_odd(p: int, e: int) -> SkewMorphism:
    """Non-smooth witness on Z_{p^e}: phi(x) = -x - p^(e-1) x(x-1)/2, order 2p."""
    if p < 3 or any(p % d == 0 for d in range(2, p)):
        raise ParameterRejection("p", f"p={p} is not an odd prime")
    if e < 2:
        raise ParameterRejection("e", f"need e >= 2, got {e}")
    n = p**e
    sm = root_construct(root_params(n, p, n - 1))
    assert not is_smooth(sm)
    m = sm.order
    assert sm.power[1] == (m - 1) and sm.power[sm.perm[1]] == 3 % m
    return sm


def pns_witness_two(e: int) -> SkewMorphism:
    """Non-smooth witness on Z_{2^e} (e >= 5): phi(x) = -x - 2^(e-3) x(x-1), order 8."""
    if e < 5:
        raise ParameterRejection("e", f"need e >= 5, got {e}")
    n = 2**e
    sm = root_construct(root_params(n, 4, n - 1))
    assert not is_smooth(sm)
    assert sm.order == 8 and sm.power[1] == 7 and sm.power[sm.perm[1]] == 3
    return sm


# ---------------------------------------------------------------------------
# Proper skew morphisms of Z_p x Z_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NseParams:
    p: int
    d: int
    nu: int
    r: int
    k: int  # multiplicative order of r mod p
    b: int  # kernel element a^b, found by search


def nse_construct(p: int, d: int, nu: int, r: int) -> SkewMorphism:
    """The proper skew morphism of Z_p x Z_p with parameters (d, nu, r).

    Basis (a, x) with a = (1,0) and x = (0,1); the image of a^i x^j has
    x-exponent r*j and a-exponent r*i + d*j(j-1)*r*nu/2 + beta*j, where
    b = a^beta is the unique kernel element making the table validate.
    """
    if p < 3 or any(p % q == 0 for q in range(2, p)):
        raise ParameterRejection("p", f"p={p} is not an odd prime")
    if not 1 <= d < p or not 1 <= nu < p:
        raise ParameterRejection("d/nu", f"d={d}, nu={nu} must lie in [1, p)")
    if not 2 <= r < p:
        raise ParameterRejection("r", f"r={r} must lie in [2, p)")
    group = make_group([p, p])
    k = multiplicative_order(r, p)
    m = p * k
    inv2 = pow(2, -1, p)
    expected_power = tuple((1 + j * nu * k) % m for i in range(p) for j in range(p))
    # A second beta can validate too, but its table realizes a different
    # parameter triple; the advertised power function pins down the right one.
    hits: list[SkewMorphism] = []
    for beta in range(p):
        table = []
        for i in range(p):
            for j in range(p):
                ai = (r * i + d * r * nu * inv2 * j * (j - 1) + beta * j) % p
                table.append(ai * p + (r * j) % p)
        sm = try_validate(group, tuple(table))
        if sm is not None and sm.order == m and sm.power == expected_power:
            hits.append(sm)
    if len(hits) != 1:
        raise FamilyConsistencyError(
            f"expected exactly one kernel element b for (p,d,nu,r)=({p},{d},{nu},{r}), got {len(hits)}"
        )
    sm = hits[0]
    assert kernel(sm).members == tuple(i * p for i in range(p)), "kernel is not <a>"
    assert not is_smooth(sm), "Z_p x Z_p proper morphism should be non-smooth"
    return sm


def nse_params_range(p: int) -> list[tuple[int, int, int]]:
    """All admissible (d, nu, r) triples for Z_p x Z_p."""
    return [
        (d, nu, r)
        for d in range(1, p)
        for nu in range(1, p)
        for r in range(2, p)
    ]


# ---------------------------------------------------------------------------
# Direct products and non-smooth witnesses
# ---------------------------------------------------------------------------


class DirectProductRejection(ValueError):
    """The gcd criterion fails; carries a witness element."""

    def __init__(self, side: str, element: int, value: int, modulus: int):
        self.side = side
        self.element = element
        super().__init__(
            f"power {value} at {side} element {element} is not 1 mod gcd {modulus}"
        )


def direct_product(sm_a: SkewMorphism, sm_b: SkewMorphism) -> SkewMorphism:
    """phi x psi on A x B; accepted iff both power functions are 1 mod gcd of orders."""
    d = gcd(sm_a.order, sm_b.order)
    one = 1 % d
    for a in range(sm_a.group.order):
        if sm_a.power[a] % d != one:
            raise DirectProductRejection("left", a, sm_a.power[a], d)
    for b in range(sm_b.group.order):
        if sm_b.power[b] % d != one:
            raise DirectProductRejection("right", b, sm_b.power[b], d)
    product = make_group(sm_a.group.factors + sm_b.group.factors)
    nb = sm_b.group.order
    table = tuple(
        sm_a.perm[a] * nb + sm_b.perm[b]
        for a in range(sm_a.group.order)
        for b in range(nb)
    )
    sm = try_validate(product, table)
    assert sm is not None, "direct product passed the criterion but failed validation"
    for a in range(sm_a.group.order):
        for b in range(nb):
            pw = sm.power[a * nb + b]
            assert (pw - sm_a.power[a]) % sm_a.order == 0
            assert (pw - sm_b.power[b]) % sm_b.order == 0
    return sm


def _witness_plan(primary: AbelianGroup) -> tuple[str, tuple, list[int]] | None:
    """Pick a non-smooth seed among the primary factors.

    Returns (kind, args, positions) with positions the factor indices the
    seed consumes, or None when none of the witness families applies.
    """
    factors = primary.factors
    by_prime: dict[int, list[int]] = {}
    for idx, f in enumerate(factors):
        (p, e), = factorint(f).items()
        by_prime.setdefault(p, []).append(idx)
    for p in sorted(by_prime):
        if p == 2:
            continue
        for idx in by_prime[p]:
            (_, e), = factorint(factors[idx]).items()
            if e >= 2:
                return ("pns_odd", (p, e), [idx])
        if len(by_prime[p]) >= 2:
            return ("nse", (p,), by_prime[p][:2])
    for idx in by_prime.get(2, []):
        (_, e), = factorint(factors[idx]).items()
        if e >= 5:
            return ("pns_two", (e,), [idx])
    return None


def nonsmooth_witness(group: AbelianGroup) -> SkewMorphism | None:
    """A validated non-smooth skew morphism of `group`, or None.

    None is a guarantee only for cyclic groups of smooth-only order; for
    non-cyclic groups it just means the constructions at hand do not apply.
    The witness is built on a convenient factorization and carried back to
    `group` along an explicit isomorphism.
    """
    primary, fwd, back = primary_split(group)
    plan = _witness_plan(primary)
    if plan is None:
        return None
    kind, args, positions = plan
    rest = [i for i in range(len(primary.factors)) if i not in positions]
    arranged, fwd2, _ = permute_factors(primary, positions + rest)

    if kind == "pns_odd":
        seed = pns_witness_odd(*args)
    elif kind == "pns_two":
        seed = pns_witness_two(*args)
    else:
        (p,) = args
        seed = nse_construct(p, 1, 1, 2)

    rest_group = make_group(arranged.factors[len(positions):])
    witness = direct_product(seed, identity_morphism(rest_group))
    assert witness.group == arranged

    iso = invert(tuple(fwd2[fwd[x]] for x in range(group.order)))
    out = relabel(witness, iso, group)
    assert not is_smooth(out)
    return out

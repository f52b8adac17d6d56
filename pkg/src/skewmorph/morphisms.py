"""Skew morphism validation and the derived invariants.

A skew morphism of an abelian group A is a permutation phi of A fixing 0
such that phi(a + b) = phi(a) + phi^pi(a)(b) for some integer-valued power
function pi.  Validation derives pi from the permutation table; everything
else (kernel, core, smoothness, skew product group, quotients, conjugation,
reciprocity) is computed from the validated pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .groups import (
    AbelianGroup,
    Automorphism,
    Subgroup,
    compose,
    crt_pair,
    cycles,
    enumerate_automorphisms,
    invert,
    is_bijection,
    quotient_group,
    subgroup_from_members,
)


class SkewMorphismRejection(ValueError):
    """A permutation failed skew-morphism validation.

    `reason` is one of 'not-bijection', 'identity-moved', 'no-power';
    `element`/`witness` carry the smallest failing a (and b, if available).
    """

    def __init__(self, reason: str, element: int | None = None, witness: int | None = None):
        self.reason = reason
        self.element = element
        self.witness = witness
        detail = ""
        if element is not None:
            detail = f" at a={element}"
            if witness is not None:
                detail += f", b={witness}"
        super().__init__(f"{reason}{detail}")


@dataclass(frozen=True)
class SkewMorphism:
    group: AbelianGroup
    perm: tuple[int, ...]
    order: int
    power: tuple[int, ...]  # canonical residues in [0, order)

    @cached_property
    def is_automorphism(self) -> bool:
        one = 1 % self.order
        return all(v == one for v in self.power)

    @property
    def is_proper(self) -> bool:
        return not self.is_automorphism

    @cached_property
    def power_tables(self) -> list[tuple[int, ...]]:
        """perm**j for j in 0..order-1."""
        tables = [tuple(range(self.group.order))]
        for _ in range(self.order - 1):
            tables.append(compose(self.perm, tables[-1]))
        return tables

    def sort_key(self) -> tuple[int, ...]:
        return self.perm


def _cycle_positions(perm: Sequence[int]) -> tuple[list[list[int]], list[tuple[int, int]]]:
    cycs = cycles(perm)
    pos: list[tuple[int, int]] = [(0, 0)] * len(perm)
    for ci, cyc in enumerate(cycs):
        for off, x in enumerate(cyc):
            pos[x] = (ci, off)
    return cycs, pos


def _derive_power(group: AbelianGroup, perm: Sequence[int], explain: bool):
    """Shared validation core; returns (order, power) or a rejection triple."""
    n = group.order
    if not is_bijection(perm, n):
        return None, ("not-bijection", None, None)
    if perm[0] != 0:
        return None, ("identity-moved", 0, None)
    cycs, pos = _cycle_positions(perm)
    m = 1
    for cyc in cycs:
        m = lcm(m, len(cyc))
    add = group.add_table
    neg = group.neg_list
    power = []
    for a in range(n):
        row = add[a]
        shift_row = add[neg[perm[a]]]
        # displacement D_a(b) = perm[a+b] - perm[a]; must equal perm**j.
        # j is pinned by the shift of D_a on one representative per cycle,
        # merged by CRT, then verified pointwise.
        res, mod = 0, 1
        ok = True
        for cyc in cycs:
            rep = cyc[0]
            y = shift_row[perm[row[rep]]]
            ci, off = pos[y]
            if cycs[ci] is not cyc:
                ok = False
                break
            merged = crt_pair(res, mod, (off - pos[rep][1]) % len(cyc), len(cyc))
            if merged is None:
                ok = False
                break
            res, mod = merged
        if ok:
            j = res % m
            for b in range(n):
                y = shift_row[perm[row[b]]]
                ci, off = pos[b]
                cyc = cycs[ci]
                if cyc[(off + j) % len(cyc)] != y:
                    ok = False
                    break
        if not ok:
            if not explain:
                return None, ("no-power", a, None)
            return None, ("no-power", a, _smallest_power_witness(group, perm, cycs, pos, m, a))
        power.append(j)
    return (m, tuple(power)), None


def _smallest_power_witness(group, perm, cycs, pos, m, a) -> int:
    """Smallest b at which no remaining power of perm matches D_a."""
    add = group.add_table
    neg = group.neg_list
    row = add[a]
    shift_row = add[neg[perm[a]]]
    candidates = set(range(m))
    for b in range(group.order):
        y = shift_row[perm[row[b]]]
        ci, off = pos[b]
        cyc = cycs[ci]
        L = len(cyc)
        keep = {j for j in candidates if cyc[(off + j) % L] == y}
        if not keep:
            return b
        candidates = keep
    return group.order - 1  # unreachable for a genuinely failing a


def try_validate(group: AbelianGroup, perm: Sequence[int]) -> SkewMorphism | None:
    """Fast validation; None instead of an exception on rejection."""
    result, _ = _derive_power(group, tuple(perm), explain=False)
    if result is None:
        return None
    m, power = result
    return SkewMorphism(group, tuple(perm), m, power)


def validate(group: AbelianGroup, perm: Sequence[int]) -> SkewMorphism:
    """Validate a permutation table and derive its power function.

    Raises SkewMorphismRejection carrying the smallest failing element.
    """
    result, failure = _derive_power(group, tuple(perm), explain=True)
    if result is None:
        raise SkewMorphismRejection(*failure)
    m, power = result
    return SkewMorphism(group, tuple(perm), m, power)


def identity_morphism(group: AbelianGroup) -> SkewMorphism:
    n = group.order
    return SkewMorphism(group, tuple(range(n)), 1, (0,) * n)


def as_skew_morphism(theta: Automorphism) -> SkewMorphism:
    sm = try_validate(theta.group, theta.table)
    assert sm is not None and sm.is_automorphism
    return sm


def is_smooth(sm: SkewMorphism) -> bool:
    power = sm.power
    return all(power[sm.perm[a]] == power[a] for a in range(sm.group.order))


def kernel(sm: SkewMorphism) -> Subgroup:
    one = 1 % sm.order
    members = [a for a in range(sm.group.order) if sm.power[a] == one]
    return subgroup_from_members(sm.group, members)


def core(sm: SkewMorphism) -> Subgroup:
    """Intersection of phi^i(Ker phi) over i = 1..order."""
    ker = set(kernel(sm).members)
    img = set(ker)
    out = set(ker)  # the i = order term is Ker itself
    for _ in range(1, sm.order):
        img = {sm.perm[x] for x in img}
        out &= img
    return subgroup_from_members(sm.group, out)


def skew_type(sm: SkewMorphism) -> int:
    return sm.group.order // kernel(sm).size


def power_of(sm: SkewMorphism, j: int) -> tuple[int, ...]:
    return sm.power_tables[j % sm.order]


def conjugate(sm: SkewMorphism, theta: Automorphism) -> SkewMorphism:
    """theta . phi . theta^-1, revalidated (always succeeds for automorphisms)."""
    if theta.group != sm.group:
        raise ValueError("automorphism acts on a different group")
    table = compose(theta.table, compose(sm.perm, theta.inverse.table))
    out = try_validate(sm.group, table)
    assert out is not None, "conjugate of a skew morphism failed validation"
    return out


def equivalence_classes(morphisms: Sequence[SkewMorphism]) -> list[list[SkewMorphism]]:
    """Partition a list of skew morphisms into conjugation-equivalence classes.

    Two morphisms are equivalent when some automorphism conjugates one to
    the other; the input need not be closed under the action.
    """
    if not morphisms:
        return []
    group = morphisms[0].group
    if any(sm.group != group for sm in morphisms):
        raise ValueError("morphisms live on different groups")
    autos = enumerate_automorphisms(group)
    by_perm = {sm.perm: sm for sm in morphisms}
    unassigned = set(by_perm)
    classes: list[list[SkewMorphism]] = []
    for perm in sorted(by_perm):
        if perm not in unassigned:
            continue
        sm = by_perm[perm]
        orbit = {conjugate(sm, theta).perm for theta in autos}
        members = sorted(orbit & unassigned)
        unassigned -= orbit
        classes.append([by_perm[p] for p in members])
    return classes


def relabel(sm: SkewMorphism, iso: Sequence[int], target: AbelianGroup) -> SkewMorphism:
    """Transport along a group isomorphism given as an element table."""
    back = invert(iso)
    table = tuple(iso[sm.perm[back[x]]] for x in range(target.order))
    out = try_validate(target, table)
    assert out is not None, "transport along an isomorphism failed validation"
    return out


# ---------------------------------------------------------------------------
# Power-function arithmetic in the skew product group
# ---------------------------------------------------------------------------


def power_prefix_sums(sm: SkewMorphism) -> list[list[int]]:
    """sigma[i][b] = sum of pi(phi^t(b)) for t < i, reduced mod order.

    These exponents drive the coset rule phi^i . L_b = L_{phi^i(b)} . phi^sigma.
    """
    m = sm.order
    n = sm.group.order
    sig = [[0] * n]
    cur = list(range(n))
    for _ in range(m):
        row = sig[-1]
        nxt = [(row[b] + sm.power[cur[b]]) % m for b in range(n)]
        sig.append(nxt)
        cur = [sm.perm[x] for x in cur]
    return sig


@dataclass(frozen=True)
class SkewProductGroup:
    """The permutation group L_A<phi> with elements named (a, i) = L_a . phi^i."""

    morphism: SkewMorphism
    pairs: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.pairs)

    @cached_property
    def _sigma(self) -> list[list[int]]:
        return power_prefix_sums(self.morphism)

    def compose_pairs(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        (a, i), (b, j) = x, y
        sm = self.morphism
        return (
            sm.group.add_table[a][sm.power_tables[i][b]],
            (self._sigma[i][b] + j) % sm.order,
        )

    def inverse_pair(self, x: tuple[int, int]) -> tuple[int, int]:
        a, i = x
        sm = self.morphism
        b = sm.power_tables[(-i) % sm.order][sm.group.neg_list[a]]
        j = (-self._sigma[i][b]) % sm.order
        return (b, j)

    def pair_table(self, x: tuple[int, int]) -> tuple[int, ...]:
        """The actual permutation of A named by the pair."""
        a, i = x
        sm = self.morphism
        row = sm.group.add_table[a]
        pw = sm.power_tables[i]
        return tuple(row[pw[v]] for v in range(sm.group.order))

    def verify_closure(self) -> None:
        """Exhaustive check that pair arithmetic matches permutation composition."""
        tables = {p: self.pair_table(p) for p in self.pairs}
        known = {t: p for p, t in tables.items()}
        assert len(known) == len(self.pairs), "pair names collide as permutations"
        for p in self.pairs:
            for q in self.pairs:
                composed = compose(tables[p], tables[q])
                assert known.get(composed) == self.compose_pairs(p, q)


def skew_product_group(sm: SkewMorphism) -> SkewProductGroup:
    """Build L_A<phi>; verifies that the |A|*|phi| pair names are distinct."""
    n = sm.group.order
    pairs = tuple((a, i) for a in range(n) for i in range(sm.order))
    spg = SkewProductGroup(sm, pairs)
    seen = set()
    for p in pairs:
        t = spg.pair_table(p)
        assert t not in seen, "skew product factorization is not exact"
        seen.add(t)
    assert len(seen) == n * sm.order
    return spg


def core_of_translations(spg: SkewProductGroup) -> Subgroup:
    """Largest B <= A with L_B normal in the skew product group.

    Computed at the permutation level: a belongs iff every phi-power
    conjugate of the translation by a is again a translation by a member.
    The translation subgroup is normalized by translations (A abelian), so
    phi-power conjugates decide normality.
    """
    sm = spg.morphism
    n = sm.group.order
    add = sm.group.add_table
    surviving = []
    for a in range(n):
        ok = True
        for i in range(1, sm.order):
            pw = sm.power_tables[i]
            pw_inv = sm.power_tables[sm.order - i]
            # conj(x) = phi^-i(a + phi^i(x)); translation iff equals x + conj(0)
            base = pw_inv[add[a][pw[0]]]
            row = add[base]
            if any(pw_inv[add[a][pw[x]]] != row[x] for x in range(1, n)):
                ok = False
                break
        if ok:
            surviving.append(a)
    sub = subgroup_from_members(sm.group, surviving)
    return sub


def is_corefree_cyclic_part(spg: SkewProductGroup) -> bool:
    """Whether <phi> contains no nontrivial subgroup normal in the product group.

    Intersects the translation conjugates of <phi>: phi^j survives iff
    L_a . phi^j . L_a^-1 is a power of phi for every a.
    """
    sm = spg.morphism
    n = sm.group.order
    add = sm.group.add_table
    neg = sm.group.neg_list
    power_index = {sm.power_tables[j]: j for j in range(sm.order)}
    surviving = set(range(sm.order))
    for a in range(n):
        row = add[a]
        neg_a = neg[a]
        keep = set()
        for j in surviving:
            pw = sm.power_tables[j]
            conj = tuple(row[pw[add[neg_a][x]]] for x in range(n))
            if conj in power_index:
                keep.add(j)
        surviving = keep
        if surviving == {0}:
            break
    return surviving == {0}


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


def quotient_skew(sm: SkewMorphism, sub: Subgroup | Iterable[int]) -> SkewMorphism:
    """The induced skew morphism on A/B when phi permutes the cosets of B.

    Raises SkewMorphismRejection('coset-partition', a) when phi does not
    respect the partition.  Validation of the induced table and the power
    congruence pi_bar(a_bar) = pi(a) mod |phi_bar| are asserted: they are
    guaranteed whenever the partition comes from a normal subgroup of the
    product group, so a failure here means a validation bug.
    """
    quotient, proj = quotient_group(sm.group, sub)
    n = sm.group.order
    induced: dict[int, int] = {}
    for a in range(n):
        src, dst = proj[a], proj[sm.perm[a]]
        if induced.setdefault(src, dst) != dst:
            raise SkewMorphismRejection("coset-partition", a)
    table = tuple(induced[c] for c in range(quotient.order))
    out = try_validate(quotient, table)
    assert out is not None, "induced map on a phi-invariant partition failed validation"
    for a in range(n):
        assert (sm.power[a] - out.power[proj[a]]) % out.order == 0, (
            "quotient power function disagrees with the original"
        )
    return out


# ---------------------------------------------------------------------------
# Reciprocal pairs (cyclic groups only)
# ---------------------------------------------------------------------------


def is_reciprocal_pair(sm: SkewMorphism, sm_tilde: SkewMorphism) -> bool:
    """Order-divisibility plus the crossed power conditions for (Z_m, Z_n)."""
    if not sm.group.is_cyclic or not sm_tilde.group.is_cyclic:
        raise ValueError("reciprocal pairs are defined for cyclic groups")
    m = sm.group.order
    n = sm_tilde.group.order
    if n % sm.order != 0 or m % sm_tilde.order != 0:
        return False
    for x in range(m):
        val = sm_tilde.power_tables[(-x) % sm_tilde.order][n - 1] if n > 1 else 0
        if (sm.power[x] + val) % sm.order != 0:
            return False
    for y in range(n):
        val = sm.power_tables[(-y) % sm.order][m - 1] if m > 1 else 0
        if (sm_tilde.power[y] + val) % sm_tilde.order != 0:
            return False
    return True

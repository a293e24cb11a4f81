"""Finite rings: CRT-canonical commutative rings, generic table rings, and the
unit/idempotent/ideal machinery every other module leans on.

A "commutative ring" for the rest of the library is anything exposing
elements()/add/neg/mul/zero/one/size; FiniteCommRing and CommTableRing both
qualify, so hand-entered CRT rings and centers of ambient table rings run
through one code path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import abgrp
from .caps import Caps, DEFAULT_CAPS
from .errors import NotIdempotent


def _prime_power_split(m: int) -> List[int]:
    out = []
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


class FiniteCommRing:
    """Product of Z/m_i with m_i prime powers; elements are residue tuples."""

    __slots__ = ("moduli", "size", "zero", "one")

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(int(m) for m in moduli)
        for m in self.moduli:
            if m < 2 or len(_prime_power_split(m)) != 1:
                raise ValueError(f"modulus {m} is not a prime power >= 2")
        size = 1
        for m in self.moduli:
            size *= m
        self.size = size
        self.zero = (0,) * len(self.moduli)
        self.one = (1,) * len(self.moduli)

    def elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return tuple((x * y) % m for x, y, m in zip(a, b, self.moduli))

    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == e

    def idempotents(self) -> List[tuple]:
        # exactly the 0/1 tuples in CRT form
        return [tuple(bits) for bits in itertools.product((0, 1), repeat=len(self.moduli))]

    def __eq__(self, other):
        return isinstance(other, FiniteCommRing) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"FiniteCommRing{self.moduli}"


def comm_ring(moduli: Sequence[int], caps: Caps = DEFAULT_CAPS) -> FiniteCommRing:
    """CRT-split and canonically sort the moduli, then build the ring."""
    split: List[int] = []
    for m in moduli:
        if int(m) < 2:
            raise ValueError(f"modulus {m} must be >= 2")
        split.extend(_prime_power_split(int(m)))
    split.sort()
    size = 1
    for m in split:
        size *= m
    caps.check("commutative ring size", size, "ring_size")
    return FiniteCommRing(split)


class FiniteRing:
    """Finite (possibly noncommutative) ring from addition and multiplication tables."""

    def __init__(self, add_table, mul_table, zero: int, one: int,
                 subring: Sequence[int] | None = None, validate: bool = True,
                 caps: Caps = DEFAULT_CAPS):
        self.add_table = tuple(tuple(int(v) for v in row) for row in add_table)
        self.mul_table = tuple(tuple(int(v) for v in row) for row in mul_table)
        self.size = len(self.add_table)
        caps.check("table ring size", self.size, "ring_size")
        self.zero = int(zero)
        self.one = int(one)
        self.subring = tuple(sorted(int(v) for v in subring)) if subring is not None else None
        self._neg = None
        if validate:
            problems = recheck_ring_axioms(self)
            if problems:
                raise ValueError("not a ring: " + problems[0])
            if self.subring is not None:
                problems = check_subring(self, self.subring)
                if problems:
                    raise ValueError("embedded subring invalid: " + problems[0])
        self._neg = self._negation_table()

    def _negation_table(self):
        neg = [None] * self.size
        for a in range(self.size):
            neg[a] = self.add_table[a].index(self.zero)
        return tuple(neg)

    def elements(self):
        return range(self.size)

    def add(self, a, b):
        return self.add_table[a][b]

    def neg(self, a):
        if self._neg is None:
            return self.add_table[a].index(self.zero)
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self.mul_table[a][b]

    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == e

    def __repr__(self):
        return f"FiniteRing(size={self.size})"


def recheck_ring_axioms(r) -> List[str]:
    """Exhaustive ring-axiom scan; empty list means all axioms hold."""
    problems: List[str] = []
    els = list(r.elements())
    for a in els:
        if r.add(r.zero, a) != a:
            problems.append(f"0+{a} != {a}")
        if r.mul(r.one, a) != a or r.mul(a, r.one) != a:
            problems.append(f"1 is not an identity at {a}")
        if not any(r.add(a, b) == r.zero for b in els):
            problems.append(f"{a} has no additive inverse")
    for a in els:
        for b in els:
            if r.add(a, b) != r.add(b, a):
                problems.append(f"addition not commutative at ({a},{b})")
                break
    for a in els:
        for b in els:
            for c in els:
                if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)):
                    problems.append(f"addition not associative at ({a},{b},{c})")
                if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)):
                    problems.append(f"multiplication not associative at ({a},{b},{c})")
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)):
                    problems.append(f"left distributivity fails at ({a},{b},{c})")
                if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)):
                    problems.append(f"right distributivity fails at ({a},{b},{c})")
            if problems:
                return problems
    return problems


def check_subring(r: FiniteRing, subset: Sequence[int]) -> List[str]:
    problems = []
    sub = set(subset)
    if r.zero not in sub or r.one not in sub:
        problems.append("subring must contain zero and one")
    for a in sub:
        if r.neg(a) not in sub:
            problems.append(f"subring not closed under negation at {a}")
        for b in sub:
            if r.add(a, b) not in sub:
                problems.append(f"subring not closed under + at ({a},{b})")
            if r.mul(a, b) not in sub:
                problems.append(f"subring not closed under * at ({a},{b})")
    return problems


class CommTableRing:
    """A commutative subring of a FiniteRing, seen through the common ring protocol.

    Used for centers of ambient rings so partial actions and cohomology run on
    them exactly as on CRT rings.
    """

    def __init__(self, ambient: FiniteRing, subset: Sequence[int]):
        self.ambient = ambient
        self._elements = tuple(sorted(set(int(v) for v in subset)))
        problems = check_subring(ambient, self._elements)
        if problems:
            raise ValueError(problems[0])
        for a in self._elements:
            for b in self._elements:
                if ambient.mul(a, b) != ambient.mul(b, a):
                    raise ValueError(f"subset is not commutative at ({a},{b})")
        self.zero = ambient.zero
        self.one = ambient.one
        self.size = len(self._elements)

    def elements(self):
        return self._elements

    def add(self, a, b):
        return self.ambient.add(a, b)

    def neg(self, a):
        return self.ambient.neg(a)

    def sub(self, a, b):
        return self.ambient.sub(a, b)

    def mul(self, a, b):
        return self.ambient.mul(a, b)

    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == e


def idempotents(k) -> List:
    """Central idempotents of a commutative ring (generic scan fallback)."""
    if isinstance(k, FiniteCommRing):
        return k.idempotents()
    return sorted(e for e in k.elements() if k.mul(e, e) == e)


def ideal_elements(k, e) -> List:
    """Elements of the ideal K*e, i.e. all a with a*e = a."""
    if not k.is_idempotent(e):
        raise NotIdempotent(f"{e} is not idempotent")
    return sorted(a for a in k.elements() if k.mul(a, e) == a)


def units(k, e) -> List:
    """Units of the ideal K*e: u with u*e = u and u*v = e for some v.

    For e = 0 this is the trivial monoid {0} with identity 0.
    """
    ideal = ideal_elements(k, e)
    ideal_set = set(ideal)
    out = []
    for u in ideal:
        if any(k.mul(u, v) == e for v in ideal_set):
            out.append(u)
    return out


def ideal_inverse(k, e, u):
    """Inverse of u inside the unit group of K*e."""
    for v in ideal_elements(k, e):
        if k.mul(u, v) == e:
            return v
    raise ValueError(f"{u} is not invertible in the ideal at {e}")


def center(s) -> List:
    """Center of a finite ring: all z commuting with every element."""
    els = list(s.elements())
    return sorted(z for z in els if all(s.mul(z, a) == s.mul(a, z) for a in els))


@dataclass
class UnitGroupData:
    """Invariant-factor view of the unit group U(K*e) with coordinate maps."""

    group: abgrp.FinAbGroup
    identity: object
    gens: List  # gens[i] has multiplicative order group.invariant_factors[i]
    to_coords: Dict

    def from_coords(self, coords: Tuple[int, ...], k, e):
        acc = self.identity
        for g, c in zip(self.gens, coords):
            for _ in range(c):
                acc = k.mul(acc, g)
        return acc


def _mult_order(k, e, u) -> int:
    n = 1
    acc = u
    while acc != e:
        acc = k.mul(acc, u)
        n += 1
    return n


def _decompose_units(k, e, elems: List) -> List[Tuple[object, int]]:
    """Generators (element, order) with orders forming a descending divisor chain."""
    if len(elems) == 1:
        return []
    by_order = [(_mult_order(k, e, u), u) for u in elems]
    d, a = max(by_order, key=lambda t: (t[0], t[1]))
    powers = [e]
    for _ in range(d - 1):
        powers.append(k.mul(powers[-1], a))
    power_set = set(powers)
    # cosets of <a>
    coset_of: Dict[object, frozenset] = {}
    for u in elems:
        if u in coset_of:
            continue
        cs = frozenset(k.mul(u, p) for p in powers)
        for v in cs:
            coset_of[v] = cs
    quotient_elems = sorted(set(coset_of.values()), key=lambda c: sorted(c)[0])

    class _Quot:
        def mul(self, c1, c2):
            u = sorted(c1)[0]
            v = sorted(c2)[0]
            return coset_of[k.mul(u, v)]

    q = _Quot()
    q_id = coset_of[e]
    rest = _decompose_units(q, q_id, quotient_elems)
    out = [(a, d)]
    for coset, korder in rest:
        u = sorted(coset)[0]
        # u^korder lands in <a>; shift by a power of a so the lift has exact order
        uk = e
        for _ in range(korder):
            uk = k.mul(uk, u)
        s = powers.index(uk)
        assert s % korder == 0, "lift exponent not divisible (library bug)"
        t = (-(s // korder)) % (d // korder)
        lifted = u
        for _ in range(t):
            lifted = k.mul(lifted, a)
        out.append((lifted, korder))
    return out


def unit_group_structure(k, e, caps: Caps = DEFAULT_CAPS) -> UnitGroupData:
    """Invariant-factor decomposition of U(K*e) with element<->vector maps.

    Computed by a generic order-profile search (no number theory); the
    coordinate bijection is verified by full reconstruction.
    """
    elems = units(k, e)
    caps.check(f"unit group of ideal at {e}", len(elems), "unit_group")
    gens_desc = _decompose_units(k, e, elems)
    gens_desc = [(g, d) for g, d in gens_desc if d > 1]
    gens_desc.reverse()  # ascending divisor chain, matching FinAbGroup
    orders = [d for _, d in gens_desc]
    group = abgrp.FinAbGroup(orders)
    gens = [g for g, _ in gens_desc]
    to_coords: Dict = {}
    for coords in itertools.product(*(range(d) for d in orders)):
        acc = e
        for g, c in zip(gens, coords):
            for _ in range(c):
                acc = k.mul(acc, g)
        assert acc not in to_coords, "unit group decomposition not a direct sum (library bug)"
        to_coords[acc] = coords
    assert len(to_coords) == len(elems), "reconstruction does not cover the unit group"
    return UnitGroupData(group=group, identity=e, gens=gens, to_coords=to_coords)

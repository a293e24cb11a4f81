"""Finite groups as validated multiplication tables, identity pinned at index 0."""

from __future__ import annotations

from typing import List, Sequence

from .caps import Caps, DEFAULT_CAPS
from .errors import NoIdentity, NoInverse, NotAPermutationRow, NotAssociative


class FiniteGroup:
    """Finite group on elements 0..order-1 given by its multiplication table.

    Index 0 is the identity; `inv` is the inverse table. Instances are
    immutable after construction and safe to share between workers.
    """

    __slots__ = ("order", "table", "inverse", "name")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", _validated: bool = False):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.name = name or f"table<{self.order}>"
        if not _validated:
            _validate_table(self.table)
        self.inverse = _inverse_table(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def prod(self, xs: Sequence[int]) -> int:
        acc = 0
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _validate_table(table) -> None:
    n = len(table)
    if n == 0:
        raise NoIdentity("empty table has no identity element")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAPermutationRow(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not (0 <= v < n):
                raise NotAPermutationRow(f"entry table[{i}][{j}]={v} out of range 0..{n - 1}")
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise NoIdentity(f"element 0 is not an identity: fails at element {a}")
    for a in range(n):
        if sorted(table[a]) != list(range(n)):
            raise NotAPermutationRow(f"row {a} is not a permutation")
        col = [table[b][a] for b in range(n)]
        if sorted(col) != list(range(n)):
            raise NotAPermutationRow(f"column {a} is not a permutation")
    for a in range(n):
        if 0 not in table[a]:
            raise NoInverse(f"element {a} has no inverse")
        b = table[a].index(0)
        if table[b][a] != 0:
            raise NoInverse(f"element {a}: right inverse {b} is not a left inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAssociative(f"associativity fails at triple ({a}, {b}, {c})")


def _inverse_table(table) -> tuple:
    return tuple(row.index(0) for row in table)


def group_from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate a multiplication table and return the group."""
    return FiniteGroup(table, name=name)


def cyclic(n: int, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    caps.check("cyclic group order", n, "group_order")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"C{n}", _validated=True)


def direct_product(g: FiniteGroup, h: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Product group; element index = a * |H| + b (lexicographic pair encoding)."""
    order = g.order * h.order
    caps.check("product group order", order, "group_order")
    m = h.order

    def enc(a: int, b: int) -> int:
        return a * m + b

    table = [
        [
            enc(g.table[a1][a2], h.table[b1][b2])
            for a2 in range(g.order)
            for b2 in range(h.order)
        ]
        for a1 in range(g.order)
        for b1 in range(h.order)
    ]
    return FiniteGroup(table, name=f"{g.name}x{h.name}", _validated=True)


def dihedral(n: int, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Dihedral group of order 2n; element r^a s^k encoded as a + n*k."""
    if n < 1:
        raise ValueError(f"dihedral parameter must be >= 1, got {n}")
    caps.check("dihedral group order", 2 * n, "group_order")

    def mul(x: int, y: int) -> int:
        a, k = x % n, x // n
        b, l = y % n, y // n
        # (r^a s^k)(r^b s^l) = r^(a + b*(-1)^k) s^(k+l)
        a2 = (a + (b if k == 0 else -b)) % n
        return a2 + n * ((k + l) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return FiniteGroup(table, name=f"D{n}", _validated=True)


def recheck_axioms(g: FiniteGroup) -> List[str]:
    """Brute-force re-check of the group axioms; empty list means all pass."""
    problems: List[str] = []
    n = g.order
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
                    problems.append(f"associativity fails at ({a},{b},{c})")
    for a in range(n):
        if g.mul(0, a) != a or g.mul(a, 0) != a:
            problems.append(f"identity fails at {a}")
        if g.mul(a, g.inv(a)) != 0 or g.mul(g.inv(a), a) != 0:
            problems.append(f"inverse fails at {a}")
    return problems

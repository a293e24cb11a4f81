"""Partial representations of a group into finite monoids and into the monoid
of R-subbimodules of an ambient ring extension R <= S, plus the structures
they induce: the partial action alpha* on corner subsets and the partial
action on the center of R via unit decompositions.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import abgrp, crossed, ring as ringmod
from .caps import Caps, DEFAULT_CAPS
from .errors import InvalidRep, NoDecomposition, NotASubbimodule
from .group import FiniteGroup
from .paction import TwistedUnitalPartialAction, UnitalPartialAction
from .ring import CommTableRing, FiniteRing


class FiniteMonoid:
    """Finite monoid from a multiplication table with a designated identity."""

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.size = len(self.table)
        self.identity = int(identity)
        problems = self.recheck()
        if problems:
            raise ValueError(problems[0])

    def recheck(self) -> List[str]:
        problems = []
        n = self.size
        for a in range(n):
            if self.table[self.identity][a] != a or self.table[a][self.identity] != a:
                problems.append(f"identity fails at {a}")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        problems.append(f"not associative at ({a},{b},{c})")
                        return problems
        return problems

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self):
        return range(self.size)


class PartialRep:
    """A map theta: G -> monoid subject to the partial-representation axioms."""

    def __init__(self, group: FiniteGroup, monoid: FiniteMonoid, theta: Dict[int, int]):
        self.group = group
        self.monoid = monoid
        self.theta = {int(x): int(theta[x]) for x in range(group.order)}

    def t(self, x: int) -> int:
        return self.theta[x]

    def eps(self, x: int) -> int:
        return self.monoid.mul(self.theta[x], self.theta[self.group.inv(x)])


def validate_prep(rep: PartialRep) -> List[str]:
    """Check axioms (i)-(iii); on success assert the derived identities.

    The derived identities (idempotent epsilons commuting, theta_x eps_y =
    eps_xy theta_x, theta_x theta_y = eps_x theta_xy = theta_xy eps_{y^-1})
    are theorems given (i)-(iii); their failure is a library bug, so they are
    asserted rather than reported.
    """
    g, m = rep.group, rep.monoid
    report: List[str] = []
    if rep.t(0) != m.identity:
        report.append(f"theta_1 = {rep.t(0)} is not the monoid identity")
    for x in g.elements():
        for y in g.elements():
            yi = g.inv(y)
            lhs = m.mul(m.mul(rep.t(x), rep.t(y)), rep.t(yi))
            rhs = m.mul(rep.t(g.mul(x, y)), rep.t(yi))
            if lhs != rhs:
                report.append(f"axiom (ii) fails at (x={x}, y={y})")
            xi = g.inv(x)
            lhs = m.mul(rep.t(xi), m.mul(rep.t(x), rep.t(y)))
            rhs = m.mul(rep.t(xi), rep.t(g.mul(x, y)))
            if lhs != rhs:
                report.append(f"axiom (iii) fails at (x={x}, y={y})")
    if report:
        return report
    for x in g.elements():
        xi = g.inv(x)
        assert m.mul(m.mul(rep.t(x), rep.t(xi)), rep.t(x)) == rep.t(x), \
            f"theta theta^- theta != theta at {x} (library bug)"
        ex = rep.eps(x)
        assert m.mul(ex, ex) == ex, f"eps_{x} not idempotent (library bug)"
        for y in g.elements():
            ey = rep.eps(y)
            assert m.mul(ex, ey) == m.mul(ey, ex), \
                f"eps_{x} eps_{y} do not commute (library bug)"
            assert m.mul(rep.t(x), ey) == m.mul(rep.eps(g.mul(x, y)), rep.t(x)), \
                f"theta_x eps_y != eps_xy theta_x at ({x},{y}) (library bug)"
            txy = m.mul(rep.t(x), rep.t(y))
            assert txy == m.mul(ex, rep.t(g.mul(x, y))), \
                f"theta_x theta_y != eps_x theta_xy at ({x},{y}) (library bug)"
            assert txy == m.mul(rep.t(g.mul(x, y)), rep.eps(g.inv(y))), \
                f"theta_x theta_y != theta_xy eps_(y^-1) at ({x},{y}) (library bug)"
    return report


class MonoidCornerAction:
    """The partial action alpha*_x(s) = theta_x s theta_{x^-1} on the corners
    S_x = eps_x S eps_x of the monoid."""

    def __init__(self, rep: PartialRep):
        self.rep = rep
        self.group = rep.group
        self.monoid = rep.monoid
        m, g = rep.monoid, rep.group
        self.subsets: Dict[int, Tuple[int, ...]] = {}
        for x in g.elements():
            ex = rep.eps(x)
            self.subsets[x] = tuple(sorted({m.mul(m.mul(ex, s), ex) for s in m.elements()}))
        self.maps: Dict[int, Dict[int, int]] = {}
        for x in g.elements():
            xi = g.inv(x)
            self.maps[x] = {
                s: m.mul(m.mul(rep.t(x), s), rep.t(xi)) for s in self.subsets[xi]
            }


def validate_corner_action(act: MonoidCornerAction) -> List[str]:
    """The general partial-action axioms (not necessarily unital) on corner subsets."""
    g, m = act.group, act.monoid
    report: List[str] = []
    if set(act.subsets[0]) != set(m.elements()):
        report.append("S_1 is not the whole monoid")
    for s in act.subsets[0]:
        if act.maps[0][s] != s:
            report.append("alpha*_1 is not the identity")
            break
    for x in g.elements():
        xi = g.inv(x)
        dom, cod = act.subsets[xi], set(act.subsets[x])
        img = [act.maps[x][s] for s in dom]
        if len(set(img)) != len(img) or set(img) != cod:
            report.append(f"alpha*_{x} is not a bijection S_{xi} -> S_{x}")
        for s in dom:
            if act.maps[xi][act.maps[x][s]] != s:
                report.append(f"alpha*_{xi} is not inverse to alpha*_{x} at {s}")
            for t in dom:
                if act.maps[x][m.mul(s, t)] != m.mul(act.maps[x][s], act.maps[x][t]):
                    report.append(f"alpha*_{x} not multiplicative at ({s},{t})")
    for x in g.elements():
        for y in g.elements():
            yi = g.inv(y)
            both = set(act.subsets[y]) & set(act.subsets[g.inv(x)])
            pre = [act.maps[yi][s] for s in both]
            tgt = set(act.subsets[g.inv(g.mul(x, y))])
            for s in pre:
                if s not in tgt:
                    report.append(f"domain axiom (ii) fails at (x={x}, y={y}, s={s})")
            for s in pre:
                lhs = act.maps[x].get(act.maps[y].get(s))
                rhs = act.maps[g.mul(x, y)].get(s)
                if lhs is None or rhs is None or lhs != rhs:
                    report.append(f"composition axiom (iii) fails at (x={x}, y={y}, s={s})")
    return report


def induced_alpha_star(rep: PartialRep) -> MonoidCornerAction:
    """Build and re-validate the corner partial action of a valid rep."""
    problems = validate_prep(rep)
    if problems:
        raise InvalidRep(problems[0])
    act = MonoidCornerAction(rep)
    problems = validate_corner_action(act)
    assert not problems, f"induced corner action invalid (library bug): {problems[0]}"
    return act


# ---------------------------------------------------------------------------
# subbimodules of an ambient ring extension


def additive_closure(s: FiniteRing, seed) -> FrozenSet[int]:
    seen = {s.zero}
    frontier = [s.zero]
    gens = sorted(set(seed))
    while frontier:
        nxt = []
        for a in frontier:
            for v in gens:
                b = s.add(a, v)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def bimodule_span(s: FiniteRing, r_elems: Sequence[int], gens) -> FrozenSet[int]:
    """Smallest R-subbimodule of S containing the generators."""
    current = additive_closure(s, gens)
    while True:
        extra = set()
        for m in current:
            for r in r_elems:
                for v in (s.mul(r, m), s.mul(m, r)):
                    if v not in current:
                        extra.add(v)
        if not extra:
            return current
        current = additive_closure(s, current | extra)


def is_subbimodule(s: FiniteRing, r_elems: Sequence[int], m: FrozenSet[int]) -> bool:
    if s.zero not in m:
        return False
    for a in m:
        if s.neg(a) not in m:
            return False
        for b in m:
            if s.add(a, b) not in m:
                return False
        for r in r_elems:
            if s.mul(r, a) not in m or s.mul(a, r) not in m:
                return False
    return True


def subset_product(s: FiniteRing, m: FrozenSet[int], n: FrozenSet[int]) -> FrozenSet[int]:
    """MN = additive closure of the pairwise products."""
    return additive_closure(s, {s.mul(a, b) for a in m for b in n})


def product(s: FiniteRing, r_elems: Sequence[int], m: FrozenSet[int],
            n: FrozenSet[int]) -> FrozenSet[int]:
    """Product in the monoid S_R(S); inputs must be R-subbimodules."""
    if not is_subbimodule(s, r_elems, m):
        raise NotASubbimodule("left factor is not an R-subbimodule")
    if not is_subbimodule(s, r_elems, n):
        raise NotASubbimodule("right factor is not an R-subbimodule")
    out = subset_product(s, m, n)
    assert is_subbimodule(s, r_elems, out), "product left the subbimodule monoid (library bug)"
    return out


class SubBimoduleRep:
    """Theta: G -> S_R(S) by explicit element sets, with idempotents 1_x in R.

    `base_ring`/`iota` are carried when the rep was constructed from a
    commutative coefficient ring (theta_from_twisted), so induced structures
    can be compared entrywise with the defining data.
    """

    def __init__(self, ambient: FiniteRing, group: FiniteGroup,
                 theta: Dict[int, FrozenSet[int]], idem: Dict[int, int],
                 base_ring=None, iota: Optional[Dict] = None):
        if ambient.subring is None:
            raise ValueError("ambient ring must carry an embedded subring R")
        self.ambient = ambient
        self.group = group
        self.theta = {int(x): frozenset(theta[x]) for x in range(group.order)}
        self.idem = {int(x): int(idem[x]) for x in range(group.order)}
        self.base_ring = base_ring
        self.iota = dict(iota) if iota else None

    @property
    def r_elems(self) -> Tuple[int, ...]:
        return self.ambient.subring

    def r_one_ideal(self, x: int) -> FrozenSet[int]:
        s = self.ambient
        return frozenset(s.mul(r, self.idem[x]) for r in self.r_elems)


def validate_srs_rep(rep: SubBimoduleRep) -> List[str]:
    """All SubBimoduleRep invariants: subbimodule closure, the unital condition
    Theta_x Theta_{x^-1} = R 1_x with 1_x central in R, the partial-representation
    axioms in S_R(S), and u_x 1_y = 1_{xy} u_x."""
    s, g = rep.ambient, rep.group
    rr = rep.r_elems
    report: List[str] = []
    for x in g.elements():
        if not is_subbimodule(s, rr, rep.theta[x]):
            report.append(f"Theta_{x} is not an R-subbimodule")
    for x in g.elements():
        e = rep.idem[x]
        if e not in set(rr):
            report.append(f"1_{x} is not in R")
        if s.mul(e, e) != e:
            report.append(f"1_{x} is not idempotent")
        if any(s.mul(e, r) != s.mul(r, e) for r in rr):
            report.append(f"1_{x} is not central in R")
    if report:
        return report
    if rep.theta[0] != frozenset(rr):
        report.append("Theta_1 != R")
    if rep.idem[0] != s.one:
        report.append("1_1 is not the unity")
    for x in g.elements():
        xi = g.inv(x)
        got = subset_product(s, rep.theta[x], rep.theta[xi])
        if got != rep.r_one_ideal(x):
            report.append(f"Theta_{x} Theta_{{{xi}}} != R 1_{x}")
    for x in g.elements():
        for y in g.elements():
            yi = g.inv(y)
            lhs = subset_product(s, subset_product(s, rep.theta[x], rep.theta[y]), rep.theta[yi])
            rhs = subset_product(s, rep.theta[g.mul(x, y)], rep.theta[yi])
            if lhs != rhs:
                report.append(f"rep axiom (ii) fails in S_R(S) at (x={x}, y={y})")
            xi = g.inv(x)
            lhs = subset_product(s, rep.theta[xi], subset_product(s, rep.theta[x], rep.theta[y]))
            rhs = subset_product(s, rep.theta[xi], rep.theta[g.mul(x, y)])
            if lhs != rhs:
                report.append(f"rep axiom (iii) fails in S_R(S) at (x={x}, y={y})")
    for x in g.elements():
        for y in g.elements():
            e_y, e_xy = rep.idem[y], rep.idem[g.mul(x, y)]
            for u in sorted(rep.theta[x]):
                if s.mul(u, e_y) != s.mul(e_xy, u):
                    report.append(f"u 1_{y} != 1_{{{g.mul(x, y)}}} u at x={x}, u={u}")
    return report


def theta_from_twisted(tpa: TwistedUnitalPartialAction, caps: Caps = DEFAULT_CAPS) -> SubBimoduleRep:
    """Theta(x) = D_x delta_x inside S = the partial crossed product of tpa."""
    gr = crossed.build_crossed_product(tpa, caps=caps)
    s, enc, _ = crossed.to_finite_ring(gr, caps=caps)
    g = gr.group
    k = tpa.ring

    def embed(x: int, u) -> int:
        parts = [gr.zero_of(y) for y in g.elements()]
        parts[x] = u
        return enc(tuple(parts))

    theta = {x: frozenset(embed(x, u) for u in gr.components[x]) for x in g.elements()}
    idem = {x: embed(0, tpa.base.idem[x]) for x in g.elements()}
    iota = {a: embed(0, a) for a in k.elements()}
    rep = SubBimoduleRep(s, g, theta, idem, base_ring=k, iota=iota)
    problems = validate_srs_rep(rep)
    assert not problems, f"constructed rep invalid (library bug): {problems[0]}"
    return rep


def decompose_unit(rep: SubBimoduleRep, x: int, alternate: bool = False
                   ) -> List[Tuple[int, int]]:
    """Pairs (w, w') in Theta_x x Theta_{x^-1} with sum of products equal to 1_x.

    Found by solving the integer linear system over the additive group of S;
    the first solution under the deterministic pair ordering is returned.
    With alternate=True a second, genuinely different valid decomposition is
    produced (a canceling pair is appended), for decomposition-independence
    checks.
    """
    s, g = rep.ambient, rep.group
    xi = g.inv(x)
    target = rep.idem[x]
    if target == s.zero:
        return []
    coords = ringmod.AdditiveCoords(list(s.elements()), s.add, s.zero)
    pairs = sorted((u, v) for u in rep.theta[x] for v in rep.theta[xi])
    cols = [coords.to_coords[s.mul(u, v)] for (u, v) in pairs]
    mat = [[cols[j][i] for j in range(len(pairs))] for i in range(len(coords.orders))]
    sol = abgrp.solve_mod(mat, coords.to_coords[target], coords.orders)
    if sol is None:
        raise NoDecomposition(f"1_{x} is not a sum of products from Theta_{x} Theta_{{{xi}}}")
    out: List[Tuple[int, int]] = []
    order_add = {}
    for (u, v), c in zip(pairs, sol):
        c = c % _additive_order_bound(coords, u, order_add, s)
        if c == 0:
            continue
        acc = s.zero
        for _ in range(c):
            acc = s.add(acc, u)
        if acc != s.zero:
            out.append((acc, v))
    total = s.zero
    for u, v in out:
        total = s.add(total, s.mul(u, v))
    assert total == target, "decomposition does not sum to 1_x (library bug)"
    if alternate:
        u0 = max(rep.theta[x])
        v0 = max(rep.theta[xi])
        if s.mul(u0, v0) != s.zero or len(rep.theta[x]) > 1:
            out = out + [(u0, v0), (s.neg(u0), v0)]
    return out


def _additive_order_bound(coords, u, cache, s) -> int:
    if u not in cache:
        n, acc = 1, u
        while acc != s.zero:
            acc = s.add(acc, u)
            n += 1
        cache[u] = n
    return cache[u]


def center_of_subring(s: FiniteRing, r_elems: Sequence[int]) -> List[int]:
    return sorted(z for z in r_elems if all(s.mul(z, r) == s.mul(r, z) for r in r_elems))


def induced_center_action(rep: SubBimoduleRep,
                          decompositions: Optional[Dict[int, List[Tuple[int, int]]]] = None
                          ) -> UnitalPartialAction:
    """The partial action alpha_x(r) = sum of w_x r w_{x^-1} on Z(R), validated.

    The result is independent of the unit decompositions used; callers may pass
    explicit ones to exercise that invariant.
    """
    problems = validate_srs_rep(rep)
    if problems:
        raise InvalidRep(problems[0])
    s, g = rep.ambient, rep.group
    z_elems = center_of_subring(s, rep.r_elems)
    zring = CommTableRing(s, z_elems)
    if decompositions is None:
        decompositions = {x: decompose_unit(rep, x) for x in g.elements()}
    idem = {x: rep.idem[x] for x in g.elements()}
    maps: Dict[int, Dict[int, int]] = {}
    for x in g.elements():
        xi = g.inv(x)
        dom = ringmod.ideal_elements(zring, idem[xi])
        table = {}
        for r in dom:
            acc = s.zero
            for u, v in decompositions[x]:
                acc = s.add(acc, s.mul(s.mul(u, r), v))
            table[r] = acc
        maps[x] = table
    pa = UnitalPartialAction(g, zring, idem, maps)
    from .paction import validate_paction
    problems = validate_paction(pa)
    assert not problems, f"induced center action invalid (library bug): {problems[0]}"
    return pa

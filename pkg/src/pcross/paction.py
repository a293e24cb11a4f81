"""Unital and twisted unital partial actions of a finite group on a finite
commutative ring, with validators that report violations instead of raising.
"""

from __future__ import annotations

import warnings
from typing import Dict, List, Sequence

from . import ring as ringmod
from .errors import DegenerateAction
from .group import FiniteGroup
from .ring import FiniteCommRing, comm_ring, ideal_elements


class UnitalPartialAction:
    """Domains K*1_x and partial isomorphisms alpha_x stored as lookup tables.

    maps[x] is the table of alpha_x on the ideal K*1_{x^-1}; tables are used
    uniformly for hand-entered and constructed actions.
    """

    def __init__(self, group: FiniteGroup, ring, idem: Dict[int, object],
                 maps: Dict[int, Dict[object, object]]):
        self.group = group
        self.ring = ring
        self.idem = {int(x): idem[x] for x in range(group.order)}
        self.maps = {int(x): dict(maps[x]) for x in range(group.order)}
        self._ideals: Dict[object, List] = {}
        for x in group.elements():
            dom = self.ideal_of(self.idem[group.inv(x)])
            got = sorted(self.maps[x].keys())
            if got != dom:
                raise ValueError(
                    f"alpha_{x} table domain does not match the ideal of 1_{{{group.inv(x)}^-1}}"
                )

    def one_x(self, x: int):
        return self.idem[x]

    def ideal_of(self, e) -> List:
        key = e
        if key not in self._ideals:
            self._ideals[key] = ideal_elements(self.ring, e)
        return self._ideals[key]

    def apply(self, x: int, a):
        """alpha_x(a) for a already in the ideal K*1_{x^-1}."""
        return self.maps[x][a]

    def act(self, x: int, a):
        """alpha_x(a * 1_{x^-1}) for arbitrary a; the form used by all formulas."""
        k = self.ring
        return self.maps[x][k.mul(a, self.idem[self.group.inv(x)])]

    def idem_chain(self, xs: Sequence[int]):
        """Product 1_{x1} 1_{x1x2} ... over the running leading products."""
        k = self.ring
        acc = k.one
        run = 0
        for x in xs:
            run = self.group.mul(run, x)
            acc = k.mul(acc, self.idem[run])
        return acc


def validate_paction(pa: UnitalPartialAction) -> List[str]:
    """Check every partial-action axiom; returns violation strings with witnesses.

    Empty report means the action is valid. Ordering is deterministic
    (lexicographic in (x, y, a)).
    """
    g, k = pa.group, pa.ring
    report: List[str] = []
    if pa.idem[0] != k.one:
        report.append(f"1_1 = {pa.idem[0]} is not the unity of K")
    for x in g.elements():
        e = pa.idem[x]
        if k.mul(e, e) != e:
            report.append(f"1_{x} = {e} is not idempotent")
    if report:
        return report
    for a in pa.ideal_of(k.one):
        if pa.maps[0][a] != a:
            report.append(f"alpha_1({a}) = {pa.maps[0][a]} is not the identity map")
    for x in g.elements():
        xi = g.inv(x)
        dom = pa.ideal_of(pa.idem[xi])
        cod = set(pa.ideal_of(pa.idem[x]))
        image = [pa.maps[x][a] for a in dom]
        if len(set(image)) != len(image):
            report.append(f"alpha_{x} not injective")
        if set(image) != cod:
            report.append(f"alpha_{x} image is not the ideal K*1_{x}")
        if pa.maps[x][pa.idem[xi]] != pa.idem[x]:
            report.append(f"alpha_{x}(1_{{{xi}}}) != 1_{x}")
        for a in dom:
            for b in dom:
                if pa.maps[x][k.add(a, b)] != k.add(pa.maps[x][a], pa.maps[x][b]):
                    report.append(f"alpha_{x} not additive at ({a},{b})")
                if pa.maps[x][k.mul(a, b)] != k.mul(pa.maps[x][a], pa.maps[x][b]):
                    report.append(f"alpha_{x} not multiplicative at ({a},{b})")
    for x in g.elements():
        for y in g.elements():
            lhs = pa.act(x, pa.idem[y])
            rhs = k.mul(pa.idem[x], pa.idem[g.mul(x, y)])
            if lhs != rhs:
                report.append(
                    f"alpha_{x}(1_{y} 1_{{{g.inv(x)}}}) = {lhs} != 1_{x} 1_{{{g.mul(x, y)}}} = {rhs}"
                )
    for x in g.elements():
        for y in g.elements():
            xy = g.mul(x, y)
            for a in k.elements():
                lhs = pa.act(x, pa.act(y, a))
                rhs = k.mul(pa.act(xy, a), pa.idem[x])
                if lhs != rhs:
                    report.append(f"composition fails at (x={x}, y={y}, a={a}): {lhs} != {rhs}")
    for x in g.elements():
        xi = g.inv(x)
        for a in pa.ideal_of(pa.idem[xi]):
            if pa.maps[xi][pa.maps[x][a]] != a:
                report.append(f"alpha_{{{xi}}} is not the inverse of alpha_{x} at {a}")
    return report


def global_action(group: FiniteGroup, ring, maps: Dict[int, Dict[object, object]]) -> UnitalPartialAction:
    """Wrap a family of automorphisms of the whole ring (all 1_x = 1)."""
    idem = {x: ring.one for x in group.elements()}
    return UnitalPartialAction(group, ring, idem, maps)


def identity_global_action(group: FiniteGroup, ring) -> UnitalPartialAction:
    table = {a: a for a in ring.elements()}
    return global_action(group, ring, {x: dict(table) for x in group.elements()})


def restrict_global(beta: UnitalPartialAction, e) -> UnitalPartialAction:
    """Restrict a validated global action on a CRT ring to the corner ideal L*e.

    K = L*e is returned in CRT-canonical form again (the kept slots); emits a
    DegenerateAction warning if every non-identity 1_x vanishes.
    """
    g = beta.group
    L = beta.ring
    if not isinstance(L, FiniteCommRing):
        raise ValueError("restrict_global needs a CRT-form commutative ring")
    if any(beta.idem[x] != L.one for x in g.elements()):
        raise ValueError("restrict_global needs a global action (all 1_x = 1)")
    if not L.is_idempotent(e):
        raise ValueError(f"{e} is not idempotent")
    keep = [i for i, b in enumerate(e) if b == 1]
    K = comm_ring([L.moduli[i] for i in keep]) if keep else comm_ring([2])
    if not keep:
        raise ValueError("restriction to the zero ideal is empty")

    def proj(a):
        return tuple(a[i] for i in keep)

    def inj(b):
        out = [0] * len(L.moduli)
        for pos, i in enumerate(keep):
            out[i] = b[pos]
        return tuple(out)

    idem = {}
    for x in g.elements():
        idem[x] = proj(L.mul(e, beta.maps[x][e]))
    maps = {}
    for x in g.elements():
        xi = g.inv(x)
        dom = ideal_elements(K, idem[xi])
        maps[x] = {a: proj(L.mul(beta.maps[x][inj(a)], e)) for a in dom}
    pa = UnitalPartialAction(g, K, idem, maps)
    if all(idem[x] == K.zero for x in g.elements() if x != 0) and g.order > 1:
        warnings.warn("restriction produced an all-trivial ideal family", DegenerateAction)
    return pa


def invariants(pa: UnitalPartialAction) -> List:
    """The invariant subring {s : alpha_x(s 1_{x^-1}) = s 1_x for all x}."""
    k = pa.ring
    out = []
    for s in k.elements():
        if all(pa.act(x, s) == k.mul(s, pa.idem[x]) for x in pa.group.elements()):
            out.append(s)
    out.sort()
    sset = set(out)
    assert k.zero in sset and k.one in sset, "invariants must contain 0 and 1"
    for a in out:
        for b in out:
            assert k.add(a, b) in sset, f"invariants not closed under + at ({a},{b})"
            assert k.mul(a, b) in sset, f"invariants not closed under * at ({a},{b})"
    return out


class TwistedUnitalPartialAction:
    """A unital partial action together with a twist omega_{x,y} in U(K 1_x 1_xy)."""

    def __init__(self, base: UnitalPartialAction, twist: Dict[tuple, object]):
        self.base = base
        g = base.group
        self.twist = {(int(x), int(y)): twist[(x, y)] for x in g.elements() for y in g.elements()}

    @property
    def group(self):
        return self.base.group

    @property
    def ring(self):
        return self.base.ring

    def omega(self, x: int, y: int):
        return self.twist[(x, y)]


def trivial_twist(pa: UnitalPartialAction) -> TwistedUnitalPartialAction:
    k, g = pa.ring, pa.group
    tw = {(x, y): k.mul(pa.idem[x], pa.idem[g.mul(x, y)])
          for x in g.elements() for y in g.elements()}
    return TwistedUnitalPartialAction(pa, tw)


def twist_shape_report(tpa: TwistedUnitalPartialAction) -> List[str]:
    """Membership-only checks: every omega_{x,y} a unit of K 1_x 1_{xy}."""
    g, k, pa = tpa.group, tpa.ring, tpa.base
    report = []
    for x in g.elements():
        for y in g.elements():
            e = k.mul(pa.idem[x], pa.idem[g.mul(x, y)])
            if tpa.omega(x, y) not in set(ringmod.units(k, e)):
                report.append(
                    f"omega_({x},{y}) = {tpa.omega(x, y)}: twist value outside unit group of ideal"
                )
    return report


def validate_twisted(tpa: TwistedUnitalPartialAction) -> List[str]:
    """Base validity plus twist membership, normalization and the 2-cocycle identity."""
    g, k, pa = tpa.group, tpa.ring, tpa.base
    report = validate_paction(pa)
    report += twist_shape_report(tpa)
    if report:
        return report
    for x in g.elements():
        if tpa.omega(0, x) != pa.idem[x]:
            report.append(f"omega_(1,{x}) = {tpa.omega(0, x)} != 1_{x}")
        if tpa.omega(x, 0) != pa.idem[x]:
            report.append(f"omega_({x},1) = {tpa.omega(x, 0)} != 1_{x}")
    for x in g.elements():
        for y in g.elements():
            for z in g.elements():
                lhs = k.mul(pa.act(x, tpa.omega(y, z)), tpa.omega(x, g.mul(y, z)))
                rhs = k.mul(tpa.omega(g.mul(x, y), z), tpa.omega(x, y))
                if lhs != rhs:
                    report.append(f"2-cocycle identity fails at ({x},{y},{z}): {lhs} != {rhs}")
    return report

"""Partial group cohomology with coefficients in a finite commutative ring.

Cochains are functions on group tuples whose value at (x1,...,xn) is a unit of
the ideal cut out by 1_{x1} 1_{x1x2} ... 1_{x1...xn}; inverses are always taken
inside that ideal's unit group, never globally.

The groups Z^n, B^n, H^n are computed along two independent routes: integer
linear algebra on unit-group coordinates (Smith normal form) and brute-force
enumeration of all cochains when the counts are small enough. The two must
agree; `cohomology(..., method="both")` checks that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import abgrp, ring as ringmod
from .abgrp import FinAbGroup
from .caps import Caps, DEFAULT_CAPS
from .errors import InvalidCochain, NotACocycle, SizeCapExceeded
from .paction import UnitalPartialAction


def group_tuples(g, n: int):
    return itertools.product(range(g.order), repeat=n)


@dataclass(frozen=True)
class Cochain:
    pa: UnitalPartialAction
    degree: int
    values: dict = field(compare=False)

    def value(self, t: tuple):
        return self.values[t]

    def key(self) -> tuple:
        """Canonical ordering key: values in lexicographic tuple order."""
        ts = sorted(self.values.keys())
        return tuple(self.values[t] for t in ts)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.values == other.values)

    def __hash__(self):
        return hash((self.degree, self.key()))


class UnitContext:
    """Caches of ideal unit groups for one partial action."""

    def __init__(self, pa: UnitalPartialAction, caps: Caps = DEFAULT_CAPS):
        self.pa = pa
        self.k = pa.ring
        self.caps = caps
        self._units: Dict = {}
        self._inv: Dict = {}
        self._ugs: Dict = {}

    def units(self, e) -> List:
        if e not in self._units:
            self._units[e] = ringmod.units(self.k, e)
        return self._units[e]

    def unit_set(self, e) -> set:
        return set(self.units(e))

    def inv(self, e, u):
        key = (e, u)
        if key not in self._inv:
            self._inv[key] = ringmod.ideal_inverse(self.k, e, u)
        return self._inv[key]

    def ugs(self, e) -> ringmod.UnitGroupData:
        if e not in self._ugs:
            self._ugs[e] = ringmod.unit_group_structure(self.k, e, self.caps)
        return self._ugs[e]

    def tuple_idem(self, t: tuple):
        return self.pa.idem_chain(t)


def unit_cochain(pa: UnitalPartialAction, n: int) -> Cochain:
    vals = {t: pa.idem_chain(t) for t in group_tuples(pa.group, n)}
    return Cochain(pa, n, vals)


def cochain_from_values(pa: UnitalPartialAction, n: int, values: dict,
                        ctx: Optional[UnitContext] = None) -> Cochain:
    """Build a cochain, checking the unit-membership condition at every tuple."""
    ctx = ctx or UnitContext(pa)
    vals = {}
    for t in group_tuples(pa.group, n):
        if t not in values:
            raise InvalidCochain(f"missing value at tuple {t}")
        v = values[t]
        if v not in ctx.unit_set(ctx.tuple_idem(t)):
            raise InvalidCochain(f"value {v} at tuple {t} is not a unit of its ideal")
        vals[t] = v
    return Cochain(pa, n, vals)


def cochain_mul(f: Cochain, g: Cochain) -> Cochain:
    assert f.degree == g.degree
    k = f.pa.ring
    return Cochain(f.pa, f.degree, {t: k.mul(v, g.values[t]) for t, v in f.values.items()})


def cochain_inv(f: Cochain, ctx: Optional[UnitContext] = None) -> Cochain:
    ctx = ctx or UnitContext(f.pa)
    vals = {t: ctx.inv(ctx.tuple_idem(t), v) for t, v in f.values.items()}
    return Cochain(f.pa, f.degree, vals)


def coboundary(pa: UnitalPartialAction, f: Cochain, ctx: Optional[UnitContext] = None) -> Cochain:
    """The partial coboundary: alpha_{x1}(f(x2..) 1_{x1^-1}) times the alternating
    products over merged tuples, inverses taken in the corresponding ideals."""
    ctx = ctx or UnitContext(pa)
    g, k = pa.group, pa.ring
    n = f.degree
    # membership of f itself, with a witnessing tuple
    for t in group_tuples(g, n):
        if f.values[t] not in ctx.unit_set(ctx.tuple_idem(t)):
            raise InvalidCochain(f"value at tuple {t} is not a unit of its ideal")
    out = {}
    for t in group_tuples(g, n + 1):
        val = pa.act(t[0], f.values[t[1:]])
        for i in range(1, n + 1):
            merged = t[:i - 1] + (g.mul(t[i - 1], t[i]),) + t[i + 1:]
            v = f.values[merged]
            if i % 2 == 1:
                v = ctx.inv(ctx.tuple_idem(merged), v)
            val = k.mul(val, v)
        last = f.values[t[:n]]
        if n % 2 == 0:  # exponent (-1)^(n+1)
            last = ctx.inv(ctx.tuple_idem(t[:n]), last)
        val = k.mul(val, last)
        out[t] = val
    result = Cochain(pa, n + 1, out)
    for t in group_tuples(g, n + 1):
        assert out[t] in ctx.unit_set(ctx.tuple_idem(t)), \
            f"coboundary left its ideal at {t} (library bug)"
    return result


def is_cocycle(f: Cochain, ctx: Optional[UnitContext] = None) -> bool:
    return coboundary(f.pa, f, ctx) == unit_cochain(f.pa, f.degree + 1)


def is_normalized(f: Cochain) -> bool:
    """True iff f agrees with the unit cochain on every tuple containing 1."""
    pa = f.pa
    for t, v in f.values.items():
        if 0 in t and v != pa.idem_chain(t):
            return False
    return True


def normalize_2cocycle(sigma: Cochain, ctx: Optional[UnitContext] = None
                       ) -> Tuple[Cochain, Cochain]:
    """Return (sigma', beta) with sigma' normalized, sigma = sigma' * d(beta).

    beta is the 1-cochain that is trivial away from 1 and sigma(1,1) at 1.
    """
    ctx = ctx or UnitContext(sigma.pa)
    if sigma.degree != 2 or not is_cocycle(sigma, ctx):
        raise NotACocycle("normalize_2cocycle needs a 2-cocycle")
    pa = sigma.pa
    beta_vals = {(x,): pa.idem[x] for x in pa.group.elements()}
    beta_vals[(0,)] = sigma.values[(0, 0)]
    beta = Cochain(pa, 1, beta_vals)
    sigma_p = cochain_mul(sigma, cochain_inv(coboundary(pa, beta, ctx), ctx))
    assert is_normalized(sigma_p), "normalization failed (library bug)"
    assert cochain_mul(sigma_p, coboundary(pa, beta, ctx)) == sigma
    return sigma_p, beta


# ---------------------------------------------------------------------------
# coordinates for C^n and the two computation routes


class _Coords:
    """Additive coordinates for C^n: one unit-group block per tuple, lex order."""

    def __init__(self, pa: UnitalPartialAction, n: int, ctx: UnitContext):
        self.pa = pa
        self.n = n
        self.ctx = ctx
        self.tuples = list(group_tuples(pa.group, n))
        self.blocks = []  # (tuple, UnitGroupData, offset)
        self.orders: List[int] = []
        off = 0
        for t in self.tuples:
            ugs = ctx.ugs(ctx.tuple_idem(t))
            self.blocks.append((t, ugs, off))
            self.orders.extend(ugs.group.invariant_factors)
            off += ugs.group.rank
        self.dim = off

    def count(self) -> int:
        total = 1
        for t, ugs, _ in self.blocks:
            total *= len(ugs.to_coords)
        return total

    def to_vec(self, f: Cochain) -> List[int]:
        out = []
        for t, ugs, _ in self.blocks:
            out.extend(ugs.to_coords[f.values[t]])
        return out

    def from_vec(self, vec: Sequence[int]) -> Cochain:
        vals = {}
        k = self.pa.ring
        for t, ugs, off in self.blocks:
            coords = tuple(vec[off + i] % d
                           for i, d in enumerate(ugs.group.invariant_factors))
            vals[t] = ugs.from_coords(coords, k, ugs.identity)
        return Cochain(self.pa, self.n, vals)

    def generator(self, j: int) -> Cochain:
        vec = [0] * self.dim
        vec[j] = 1
        return self.from_vec(vec)


def _delta_matrix(pa, src: _Coords, dst: _Coords, ctx: UnitContext) -> List[List[int]]:
    cols = []
    for j in range(src.dim):
        img = coboundary(pa, src.generator(j), ctx)
        cols.append(dst.to_vec(img))
    return [[cols[j][i] for j in range(src.dim)] for i in range(dst.dim)]


@dataclass
class CohomologyResult:
    n: int
    c_group: FinAbGroup
    z_group: FinAbGroup
    b_group: FinAbGroup
    h_group: FinAbGroup
    representative: Callable[[tuple], Cochain]
    class_of: Callable[[Cochain], tuple]
    method: str

    @property
    def orders(self):
        return {"C": self.c_group.order, "Z": self.z_group.order,
                "B": self.b_group.order, "H": self.h_group.order}


def _snf_route(pa, n: int, ctx: UnitContext, caps: Caps) -> CohomologyResult:
    cn = _Coords(pa, n, ctx)
    cn1 = _Coords(pa, n + 1, ctx)
    m_out = _delta_matrix(pa, cn, cn1, ctx)
    r = cn.dim
    diag = [[cn.orders[i] if i == j else 0 for i in range(r)] for j in range(r)]
    z_gens = abgrp.kernel_lattice_gens(m_out, cn1.orders)
    if n >= 1:
        cm1 = _Coords(pa, n - 1, ctx)
        m_in = _delta_matrix(pa, cm1, cn, ctx)
        b_gens = [[m_in[i][j] for i in range(r)] for j in range(len(m_in[0]) if m_in else 0)]
    else:
        b_gens = []
    b_all = b_gens + diag
    sq_z = abgrp.subquotient(z_gens, diag, r)
    sq_b = abgrp.subquotient(b_all, diag, r)
    sq_h = abgrp.subquotient(z_gens, b_all, r)
    assert sq_z.group.order % sq_b.group.order == 0
    assert sq_h.group.order == sq_z.group.order // sq_b.group.order, "|H| != |Z|/|B|"

    c_group = FinAbGroup(abgrp.normalized_factors(cn.orders))

    b_elements = None
    if sq_b.group.order <= caps.cochain_enum:
        b_elements = [cn.from_vec(sq_b.include(e)) for e in sq_b.group.elements()]

    def representative(h: tuple) -> Cochain:
        f = cn.from_vec(sq_h.include(h))
        if b_elements is None:
            return f
        candidates = [cochain_mul(f, b) for b in b_elements]
        normalized = [c for c in candidates if is_normalized(c)]
        pool = normalized if normalized else candidates
        return min(pool, key=lambda c: c.key())

    def class_of(f: Cochain) -> tuple:
        if f.degree != n:
            raise ValueError(f"expected a {n}-cochain")
        if not is_cocycle(f, ctx):
            raise NotACocycle(f"not a {n}-cocycle")
        return sq_h.coords(cn.to_vec(f))

    return CohomologyResult(n, c_group, sq_z.group, sq_b.group, sq_h.group,
                            representative, class_of, "snf")


def _enumerate_cochains(pa, n: int, ctx: UnitContext, cap: int) -> List[Cochain]:
    coords = _Coords(pa, n, ctx)
    total = coords.count()
    if total > cap:
        raise SizeCapExceeded(f"|C^{n}| enumeration", total, cap)
    unit_lists = [ctx.units(ctx.tuple_idem(t)) for t in coords.tuples]
    out = []
    for combo in itertools.product(*unit_lists):
        vals = dict(zip(coords.tuples, combo))
        out.append(Cochain(pa, n, vals))
    return out


class _KeyMul:
    """Multiplicative group adapter over hashable cochain keys, so the generic
    abelian-group decomposition from the ring module applies to cochains."""

    def __init__(self, by_key):
        self.by_key = by_key

    def mul(self, a, b):
        return cochain_mul(self.by_key[a], self.by_key[b]).key()


def _enum_route(pa, n: int, ctx: UnitContext, caps: Caps) -> CohomologyResult:
    all_n = _enumerate_cochains(pa, n, ctx, caps.cochain_enum)
    unit_n = unit_cochain(pa, n)
    z_list = [f for f in all_n if coboundary(pa, f, ctx) == unit_cochain(pa, n + 1)]
    if n >= 1:
        all_prev = _enumerate_cochains(pa, n - 1, ctx, caps.cochain_enum)
        b_set = {coboundary(pa, f, ctx) for f in all_prev}
    else:
        b_set = {unit_n}
    assert b_set <= set(z_list), "B not inside Z (library bug)"

    def group_structure(elems: List[Cochain], identity: Cochain) -> FinAbGroup:
        by_key = {f.key(): f for f in elems}
        adapter = _KeyMul(by_key)
        decomp = ringmod._decompose_units(adapter, identity.key(), sorted(by_key.keys()))
        orders = sorted(d for _, d in decomp if d > 1)
        return FinAbGroup(orders)

    z_group = group_structure(z_list, unit_n)
    b_group = group_structure(sorted(b_set, key=lambda f: f.key()), unit_n)

    # cosets of B inside Z
    coset_of: Dict[tuple, int] = {}
    coset_reps: List[Cochain] = []
    for f in sorted(z_list, key=lambda f: f.key()):
        if f.key() in coset_of:
            continue
        cid = len(coset_reps)
        members = [cochain_mul(f, b) for b in b_set]
        normalized = [c for c in members if is_normalized(c)]
        pool = normalized if normalized else members
        coset_reps.append(min(pool, key=lambda c: c.key()))
        for c in members:
            coset_of[c.key()] = cid

    # structure of H as the quotient group on coset ids
    class _QuotMul:
        def mul(self, a, b):
            return coset_of[cochain_mul(coset_reps[a], coset_reps[b]).key()]

    qm = _QuotMul()
    id_cid = coset_of[unit_n.key()]
    decomp = ringmod._decompose_units(qm, id_cid, list(range(len(coset_reps))))
    h_orders = sorted(d for _, d in decomp if d > 1)
    h_group = FinAbGroup(h_orders)
    assert h_group.order == z_group.order // b_group.order

    # coordinates on H: enumerate products of the quotient generators
    order_items = sorted((d, c) for c, d in decomp if d > 1)
    gen_orders = [d for d, _ in order_items]
    gen_ids = [c for _, c in order_items]
    coords_of_cid: Dict[int, tuple] = {}
    for coords in itertools.product(*(range(d) for d in gen_orders)):
        cid = id_cid
        for gcid, c in zip(gen_ids, coords):
            for _ in range(c):
                cid = qm.mul(cid, gcid)
        coords_of_cid[cid] = coords
    assert len(coords_of_cid) == len(coset_reps)
    cid_of_coords = {v: k for k, v in coords_of_cid.items()}

    def representative(h: tuple) -> Cochain:
        return coset_reps[cid_of_coords[tuple(h)]]

    def class_of(f: Cochain) -> tuple:
        if f.degree != n:
            raise ValueError(f"expected a {n}-cochain")
        if f.key() not in coset_of:
            raise NotACocycle(f"not a {n}-cocycle")
        return coords_of_cid[coset_of[f.key()]]

    c_group = FinAbGroup(abgrp.normalized_factors(
        [d for t in group_tuples(pa.group, n)
         for d in ctx.ugs(ctx.tuple_idem(t)).group.invariant_factors]))
    return CohomologyResult(n, c_group, z_group, b_group, h_group,
                            representative, class_of, "enum")


def cohomology(pa: UnitalPartialAction, n: int, method: str = "both",
               caps: Caps = DEFAULT_CAPS, ctx: Optional[UnitContext] = None) -> CohomologyResult:
    """Compute C^n, Z^n, B^n, H^n with representatives and the class map.

    method: "snf", "enum", or "both" (SNF result returned, enumeration result
    cross-checked against it when |C^n| is under the enumeration cap).
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n > caps.degree:
        raise SizeCapExceeded("cohomology degree", n, caps.degree)
    ctx = ctx or UnitContext(pa, caps)
    if method == "snf":
        return _snf_route(pa, n, ctx, caps)
    if method == "enum":
        return _enum_route(pa, n, ctx, caps)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    snf = _snf_route(pa, n, ctx, caps)
    try:
        enum = _enum_route(pa, n, ctx, caps)
    except SizeCapExceeded:
        return snf
    assert snf.z_group == enum.z_group, f"Z^{n} mismatch: {snf.z_group} vs {enum.z_group}"
    assert snf.b_group == enum.b_group, f"B^{n} mismatch: {snf.b_group} vs {enum.b_group}"
    assert snf.h_group == enum.h_group, f"H^{n} mismatch: {snf.h_group} vs {enum.h_group}"
    # compatible class maps: enumeration representatives sort into SNF classes bijectively
    seen = set()
    for h in enum.h_group.elements():
        seen.add(snf.class_of(enum.representative(h)))
    assert len(seen) == enum.h_group.order, "class maps of the two routes disagree"
    return snf


def cohomologous(f: Cochain, fp: Cochain, caps: Caps = DEFAULT_CAPS,
                 ctx: Optional[UnitContext] = None) -> Optional[Cochain]:
    """Witness g with f = fp * coboundary(g), or None when no witness exists.

    Solved two ways (integer system on coordinates, enumeration of C^(n-1) when
    under cap); the verdicts must agree.
    """
    if f.degree != fp.degree:
        raise ValueError("cochains of different degree")
    n = f.degree
    if n < 1:
        raise ValueError("cohomologous needs degree >= 1")
    pa = f.pa
    ctx = ctx or UnitContext(pa, caps)
    if not is_cocycle(f, ctx) or not is_cocycle(fp, ctx):
        raise NotACocycle("both arguments must be cocycles")
    q = cochain_mul(f, cochain_inv(fp, ctx))
    cm1 = _Coords(pa, n - 1, ctx)
    cn = _Coords(pa, n, ctx)
    m_in = _delta_matrix(pa, cm1, cn, ctx)
    sol = abgrp.solve_mod(m_in, cn.to_vec(q), cn.orders)
    witness = None
    if sol is not None:
        g = cm1.from_vec(sol)
        assert cochain_mul(fp, coboundary(pa, g, ctx)) == f, "solver witness fails (library bug)"
        witness = g
    if cm1.count() <= caps.cochain_enum:
        found = None
        for g in _enumerate_cochains(pa, n - 1, ctx, caps.cochain_enum):
            if coboundary(pa, g, ctx) == q:
                found = g
                break
        assert (found is None) == (witness is None), \
            "enumeration and linear-system routes disagree on cohomologousness"
    return witness


# ---------------------------------------------------------------------------
# monoid-valued 1-cocycles (the PicS_0 leg)


class MonoidPartialSetting:
    """A finite commutative monoid with idempotents e_x and partial maps on the
    ideals e_x M, satisfying the partial-action axioms at monoid level."""

    def __init__(self, group, table: Sequence[Sequence[int]], identity: int,
                 idem: Dict[int, int], maps: Dict[int, Dict[int, int]]):
        self.group = group
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.size = len(self.table)
        self.identity = int(identity)
        self.idem = {int(x): int(idem[x]) for x in range(group.order)}
        self.maps = {int(x): {int(a): int(b) for a, b in maps[x].items()}
                     for x in range(group.order)}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def ideal(self, e: int) -> List[int]:
        return sorted(m for m in range(self.size) if self.mul(m, e) == m)

    def local_units(self, e: int) -> List[int]:
        ideal = self.ideal(e)
        return [u for u in ideal if any(self.mul(u, v) == e for v in ideal)]

    def local_inverse(self, e: int, u: int) -> int:
        for v in self.ideal(e):
            if self.mul(u, v) == e:
                return v
        raise ValueError(f"{u} not a local unit at {e}")


def validate_monoid_setting(s: MonoidPartialSetting) -> List[str]:
    report: List[str] = []
    n = s.size
    for a in range(n):
        if s.mul(s.identity, a) != a or s.mul(a, s.identity) != a:
            report.append(f"identity fails at {a}")
        for b in range(n):
            if s.mul(a, b) != s.mul(b, a):
                report.append(f"monoid not commutative at ({a},{b})")
            for c in range(n):
                if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)):
                    report.append(f"monoid not associative at ({a},{b},{c})")
    if report:
        return report
    g = s.group
    if s.idem[0] != s.identity:
        report.append("e_1 is not the monoid identity")
    for x in g.elements():
        e = s.idem[x]
        if s.mul(e, e) != e:
            report.append(f"e_{x} not idempotent")
    if report:
        return report
    for a in s.ideal(s.identity):
        if s.maps[0].get(a) != a:
            report.append("alpha*_1 is not the identity")
            break
    for x in g.elements():
        xi = g.inv(x)
        dom = s.ideal(s.idem[xi])
        if sorted(s.maps[x].keys()) != dom:
            report.append(f"alpha*_{x} domain is not the ideal of e_{xi}")
            continue
        img = [s.maps[x][a] for a in dom]
        if sorted(set(img)) != s.ideal(s.idem[x]):
            report.append(f"alpha*_{x} is not onto the ideal of e_{x}")
        for a in dom:
            for b in dom:
                if s.maps[x][s.mul(a, b)] != s.mul(s.maps[x][a], s.maps[x][b]):
                    report.append(f"alpha*_{x} not multiplicative at ({a},{b})")
    if report:
        return report

    def act(x, m):
        return s.maps[x][s.mul(m, s.idem[s.group.inv(x)])]

    for x in g.elements():
        for y in g.elements():
            if act(x, s.idem[y]) != s.mul(s.idem[x], s.idem[g.mul(x, y)]):
                report.append(f"alpha*_{x}(e_{y} e) != e_{x} e_{{{g.mul(x, y)}}}")
            for m in range(s.size):
                if act(x, act(y, m)) != s.mul(act(g.mul(x, y), m), s.idem[x]):
                    report.append(f"composition fails at (x={x}, y={y}, m={m})")
    return report


def z1_monoid(setting: MonoidPartialSetting, caps: Caps = DEFAULT_CAPS) -> List[Dict[int, int]]:
    """All monoid-valued 1-cocycles g with g_x a local unit of e_x M and
    alpha*_x(g_y e_{x^-1}) g_{xy}^{-1} g_x = e_x e_{xy}."""
    problems = validate_monoid_setting(setting)
    if problems:
        raise ValueError("invalid monoid setting: " + problems[0])
    s = setting
    g = s.group
    local = {x: s.local_units(s.idem[x]) for x in g.elements()}
    total = 1
    for x in g.elements():
        total *= len(local[x])
    caps.check("monoid 1-cocycle search", total, "cochain_enum")

    def act(x, m):
        return s.maps[x][s.mul(m, s.idem[g.inv(x)])]

    out = []
    for combo in itertools.product(*(local[x] for x in g.elements())):
        cand = dict(zip(g.elements(), combo))
        ok = True
        for x in g.elements():
            for y in g.elements():
                xy = g.mul(x, y)
                lhs = s.mul(s.mul(act(x, cand[y]), s.local_inverse(s.idem[xy], cand[xy])), cand[x])
                if lhs != s.mul(s.idem[x], s.idem[xy]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            assert cand[0] == s.identity, "1-cocycle not normalized (library bug)"
            out.append(cand)
    return out


def random_cochain(pa: UnitalPartialAction, n: int, rng,
                   ctx: Optional[UnitContext] = None) -> Cochain:
    """Uniform random n-cochain from a caller-supplied random.Random."""
    ctx = ctx or UnitContext(pa)
    vals = {}
    for t in group_tuples(pa.group, n):
        us = ctx.units(ctx.tuple_idem(t))
        vals[t] = us[rng.randrange(len(us))]
    return Cochain(pa, n, vals)

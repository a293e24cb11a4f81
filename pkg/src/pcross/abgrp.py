"""Finite abelian groups and homomorphisms via exact integer Smith normal form.

Everything here runs on plain Python ints: unimodular transforms can blow up
intermediate entries even for small inputs, so no fixed-width arithmetic is
allowed anywhere in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import NotASubgroup

Matrix = List[List[int]]


def eye(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[] for _ in a]
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(row) == k for row in a), "shape mismatch"
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a: Matrix, v: Sequence[int]) -> List[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


class _SnfWork:
    """Mutable SNF state: D plus both transforms and their exact inverses."""

    def __init__(self, a: Matrix):
        self.m = len(a)
        self.n = len(a[0]) if a else 0
        self.d = [list(map(int, row)) for row in a]
        self.u = eye(self.m)
        self.uinv = eye(self.m)
        self.v = eye(self.n)
        self.vinv = eye(self.n)

    def row_swap(self, i, j):
        if i == j:
            return
        self.d[i], self.d[j] = self.d[j], self.d[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for r in range(self.m):
            self.uinv[r][i], self.uinv[r][j] = self.uinv[r][j], self.uinv[r][i]

    def row_add(self, i, j, q):
        # row_i += q * row_j
        if q == 0:
            return
        di, dj = self.d[i], self.d[j]
        for c in range(self.n):
            di[c] += q * dj[c]
        ui, uj = self.u[i], self.u[j]
        for c in range(self.m):
            ui[c] += q * uj[c]
        for r in range(self.m):
            self.uinv[r][j] -= q * self.uinv[r][i]

    def row_neg(self, i):
        self.d[i] = [-x for x in self.d[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in range(self.m):
            self.uinv[r][i] = -self.uinv[r][i]

    def col_swap(self, i, j):
        if i == j:
            return
        for r in range(self.m):
            self.d[r][i], self.d[r][j] = self.d[r][j], self.d[r][i]
        for r in range(self.n):
            self.v[r][i], self.v[r][j] = self.v[r][j], self.v[r][i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def col_add(self, j, i, q):
        # col_j += q * col_i
        if q == 0:
            return
        for r in range(self.m):
            self.d[r][j] += q * self.d[r][i]
        for r in range(self.n):
            self.v[r][j] += q * self.v[r][i]
        vi = self.vinv[i]
        vj = self.vinv[j]
        for c in range(self.n):
            vi[c] -= q * vj[c]

    def col_neg(self, j):
        for r in range(self.m):
            self.d[r][j] = -self.d[r][j]
        for r in range(self.n):
            self.v[r][j] = -self.v[r][j]
        self.vinv[j] = [-x for x in self.vinv[j]]


def _snf_full(a: Matrix) -> _SnfWork:
    w = _SnfWork(a)
    m, n, d = w.m, w.n, w.d
    t = 0
    while t < min(m, n):
        # global minimal-abs pivot in the remaining submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        w.row_swap(t, pivot[0])
        w.col_swap(t, pivot[1])
        while True:
            # clear column t and row t modulo the pivot
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    w.row_add(i, t, -(d[i][t] // d[t][t]))
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    w.col_add(j, t, -(d[t][j] // d[t][t]))
            resid = [(abs(d[i][t]), i, True) for i in range(t + 1, m) if d[i][t] != 0]
            resid += [(abs(d[t][j]), j, False) for j in range(t + 1, n) if d[t][j] != 0]
            if resid:
                # a remainder survived; bring the smallest one into the pivot seat
                _, k, is_row = min(resid)
                if is_row:
                    w.row_swap(t, k)
                else:
                    w.col_swap(t, k)
                continue
            # pivot must divide the rest of the submatrix
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % d[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            w.row_add(t, bad, 1)
        if d[t][t] < 0:
            w.row_neg(t)
        t += 1
    return w


def smith_normal_form(a: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*A*V = D diagonal, divisibility chain, U, V unimodular.

    The products and the unimodularity of U and V are verified exactly before
    returning.
    """
    w = _snf_full(a)
    assert mat_mul(w.u, w.uinv) == eye(w.m), "U not unimodular"
    assert mat_mul(w.v, w.vinv) == eye(w.n), "V not unimodular"
    assert mat_mul(mat_mul(w.u, [list(map(int, r)) for r in a]), w.v) == w.d, "UAV != D"
    k = min(w.m, w.n)
    for i in range(k - 1):
        if w.d[i + 1][i + 1] != 0 and w.d[i][i] != 0:
            assert w.d[i + 1][i + 1] % w.d[i][i] == 0, "divisibility chain broken"
    return w.u, w.d, w.v


class FinAbGroup:
    """Finite abelian group in invariant-factor form d1 | d2 | ... | dr.

    Elements are tuples of residues modulo the factors; the empty factor list
    is the trivial group with sole element ().
    """

    __slots__ = ("invariant_factors",)

    def __init__(self, invariant_factors: Sequence[int]):
        facs = tuple(int(d) for d in invariant_factors)
        for d in facs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(facs, facs[1:]):
            if b % a != 0:
                raise ValueError(f"not a divisibility chain: {a} does not divide {b}")
        self.invariant_factors = facs

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def zero(self) -> tuple:
        return (0,) * self.rank

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: tuple) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def reduce(self, v: Sequence[int]) -> tuple:
        return tuple(x % d for x, d in zip(v, self.invariant_factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"C{d}" for d in self.invariant_factors)

    def __repr__(self):
        return f"FinAbGroup({list(self.invariant_factors)})"


def normalized_factors(orders: Sequence[int]) -> List[int]:
    """Invariant factors of a product of cyclic groups of the given orders."""
    orders = [int(d) for d in orders if int(d) != 1]
    if not orders:
        return []
    n = len(orders)
    diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
    _, d, _ = smith_normal_form(diag)
    return [d[i][i] for i in range(n) if d[i][i] not in (0, 1)]


@dataclass
class Presentation:
    """Z^n modulo the column span of a relation matrix, with witness maps.

    project: Z^n vector -> group element; lift: group element -> Z^n vector
    with project(lift(e)) == e.
    """

    ambient_rank: int
    group: FinAbGroup
    project: Callable[[Sequence[int]], tuple]
    lift: Callable[[tuple], List[int]]


def cokernel_presentation(n: int, rel_cols: Matrix) -> Presentation:
    """Present Z^n / colspan(R); R given as an n x k matrix (k may be 0)."""
    if n == 0:
        g = FinAbGroup([])
        return Presentation(0, g, lambda v: (), lambda e: [])
    if not rel_cols or not rel_cols[0]:
        rel = [[0] for _ in range(n)]
    else:
        rel = rel_cols
        assert len(rel) == n, "relation matrix row count must equal ambient rank"
    w = _snf_full(rel)
    diag = [w.d[i][i] if i < min(w.m, w.n) else 0 for i in range(n)]
    for i, d in enumerate(diag):
        if d == 0:
            raise ValueError("quotient is infinite (free rank > 0); only finite groups are supported")
    keep = [i for i, d in enumerate(diag) if d != 1]
    group = FinAbGroup([diag[i] for i in keep])
    u = w.u
    uinv = w.uinv

    def project(v: Sequence[int]) -> tuple:
        y = mat_vec(u, list(v))
        return tuple(y[i] % diag[i] for i in keep)

    def lift(e: tuple) -> List[int]:
        y = [0] * n
        for pos, i in enumerate(keep):
            y[i] = e[pos]
        return mat_vec(uinv, y)

    return Presentation(n, group, project, lift)


def kernel_lattice_gens(m: Matrix, cod_orders: Sequence[int]) -> List[List[int]]:
    """Generators of {x in Z^r : Mx = 0 modulo the codomain orders}.

    M is s x r; cod_orders has length s. Returned as a list of Z^r vectors.
    """
    s = len(cod_orders)
    r = len(m[0]) if m else 0
    if s == 0:
        return eye(r)
    b = [[m[i][j] for j in range(r)] + [cod_orders[i] if i == k else 0 for k in range(s)]
         for i in range(s)]
    w = _snf_full(b)
    rank = sum(1 for i in range(min(w.m, w.n)) if w.d[i][i] != 0)
    gens = []
    for j in range(rank, w.n):
        col = [w.v[i][j] for i in range(w.n)]
        gens.append(col[:r])
    return gens


def solve_mod(m: Matrix, b: Sequence[int], cod_orders: Sequence[int]) -> Optional[List[int]]:
    """One integer solution x of Mx = b modulo the codomain orders, or None."""
    s = len(cod_orders)
    r = len(m[0]) if m else 0
    aug = [[m[i][j] for j in range(r)] + [cod_orders[i] if i == k else 0 for k in range(s)]
           for i in range(s)]
    w = _snf_full(aug)
    rhs = mat_vec(w.u, list(b))
    y = [0] * w.n
    for i in range(w.m):
        d = w.d[i][i] if i < min(w.m, w.n) else 0
        if d == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % d != 0:
                return None
            y[i] = rhs[i] // d
    z = mat_vec(w.v, y)
    return z[:r]


@dataclass
class Subquotient:
    """span(N)/span(D) inside Z^r, with witness maps in ambient coordinates."""

    group: FinAbGroup
    include: Callable[[tuple], List[int]]  # group element -> Z^r vector
    coords: Callable[[Sequence[int]], tuple]  # Z^r vector in span(N) -> group element


def subquotient(num_gens: List[List[int]], den_gens: List[List[int]], r: int) -> Subquotient:
    """Structure of span(num)/span(den) in Z^r; span(den) must lie in span(num)."""
    if not num_gens:
        num_gens = [[0] * r]
    nmat = [[num_gens[k][i] for k in range(len(num_gens))] for i in range(r)]
    w = _snf_full(nmat)
    diag = [w.d[i][i] for i in range(min(w.m, w.n))]
    rank = sum(1 for d in diag if d != 0)
    # basis of span(num): columns uinv * (d_j e_j)
    basis = [[w.uinv[i][j] * diag[j] for j in range(rank)] for i in range(r)]

    def in_basis(vec: Sequence[int]) -> List[int]:
        y = mat_vec(w.u, list(vec))
        out = []
        for j in range(rank):
            if y[j] % diag[j] != 0:
                raise NotASubgroup("vector is not in the spanned subgroup")
            out.append(y[j] // diag[j])
        for j in range(rank, r):
            if y[j] != 0:
                raise NotASubgroup("vector is not in the spanned subgroup")
        return out

    den_in_basis = [in_basis(v) for v in den_gens] if den_gens else []
    rel = [[den_in_basis[k][i] for k in range(len(den_in_basis))] for i in range(rank)] \
        if den_in_basis else [[0] for _ in range(rank)]
    pres = cokernel_presentation(rank, rel)

    def include(e: tuple) -> List[int]:
        y = pres.lift(e)
        return [sum(basis[i][j] * y[j] for j in range(rank)) for i in range(r)]

    def coords(vec: Sequence[int]) -> tuple:
        return pres.project(in_basis(vec))

    return Subquotient(pres.group, include, coords)


class AbHom:
    """Homomorphism between finite abelian groups as an integer matrix.

    Columns are the images of the domain generators written in codomain
    coordinates. Well-definedness (matrix * d_i e_i = 0 in the codomain) is
    checked on construction.
    """

    def __init__(self, domain: FinAbGroup, codomain: FinAbGroup, matrix: Matrix):
        self.domain = domain
        self.codomain = codomain
        self.matrix = [list(map(int, row)) for row in matrix]
        assert len(self.matrix) == codomain.rank
        assert all(len(row) == domain.rank for row in self.matrix)
        for i, d in enumerate(domain.invariant_factors):
            for k, c in enumerate(codomain.invariant_factors):
                if (self.matrix[k][i] * d) % c != 0:
                    raise ValueError(
                        f"matrix does not define a homomorphism: column {i} times {d} "
                        f"is nonzero in codomain coordinate {k}"
                    )

    def apply(self, a: tuple) -> tuple:
        v = mat_vec(self.matrix, list(a))
        return self.codomain.reduce(v)


def hom_kernel(h: AbHom) -> Tuple[FinAbGroup, Callable[[tuple], tuple]]:
    """Kernel with an inclusion map into the domain; |ker|*|im| = |dom| verified."""
    r = h.domain.rank
    dom_orders = list(h.domain.invariant_factors)
    gens = kernel_lattice_gens(h.matrix, list(h.codomain.invariant_factors))
    den = [[dom_orders[i] if i == k else 0 for i in range(r)] for k in range(r)]
    sq = subquotient(gens, den, r)

    def include(e: tuple) -> tuple:
        return h.domain.reduce(sq.include(e))

    img, _ = hom_image(h)
    assert sq.group.order * img.order == h.domain.order, "|ker|*|im| != |domain|"
    return sq.group, include


def hom_image(h: AbHom) -> Tuple[FinAbGroup, Callable[[tuple], tuple]]:
    """Image with an inclusion map into the codomain."""
    s = h.codomain.rank
    cod_orders = list(h.codomain.invariant_factors)
    num = [[h.matrix[i][j] for i in range(s)] for j in range(h.domain.rank)]
    den = [[cod_orders[i] if i == k else 0 for i in range(s)] for k in range(s)]
    sq = subquotient(num + den, den, s)

    def include(e: tuple) -> tuple:
        return h.codomain.reduce(sq.include(e))

    return sq.group, include


def span_subgroup(g: FinAbGroup, gens: Sequence[tuple]) -> List[tuple]:
    """All elements generated by `gens` (additive closure)."""
    seen = {g.zero()}
    frontier = [g.zero()]
    while frontier:
        nxt = []
        for a in frontier:
            for v in gens:
                b = g.add(a, v)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def quotient(g: FinAbGroup, subgroup_elements: Sequence[tuple]) -> Tuple[FinAbGroup, Callable[[tuple], tuple]]:
    """G / H for an explicit subgroup H, with the projection map.

    Raises NotASubgroup if the listed elements are not closed under the group
    operations.
    """
    hset = set(subgroup_elements)
    if g.zero() not in hset:
        raise NotASubgroup("subgroup does not contain 0")
    for a in hset:
        if g.neg(a) not in hset:
            raise NotASubgroup(f"subgroup not closed under negation at {a}")
        for b in hset:
            if g.add(a, b) not in hset:
                raise NotASubgroup(f"subgroup not closed under addition at {a}+{b}")
    r = g.rank
    dom_orders = list(g.invariant_factors)
    rel_vecs = [list(v) for v in sorted(hset)]
    rel_vecs += [[dom_orders[i] if i == k else 0 for i in range(r)] for k in range(r)]
    rel = [[rel_vecs[k][i] for k in range(len(rel_vecs))] for i in range(r)]
    pres = cokernel_presentation(r, rel)

    def project(a: tuple) -> tuple:
        return pres.project(list(a))

    return pres.group, project

"""Finite abelian groups presented by invariant factors, and their subgroups.

A group with invariant factors (d_1, ..., d_k), d_1 | d_2 | ... | d_k, is
Z/d_1 x ... x Z/d_k; elements are integer tuples reduced componentwise.
A subgroup is stored as the Hermite normal form of the integer lattice
generated by its generators together with the relation lattice
diag(d_1, ..., d_k).  The HNF is unique for a given lattice, so two
Subgroup values compare equal exactly when the subgroups coincide.

Also provides the unit groups (Z/nZ)* with exact discrete logarithms,
which is the finite-level model used everywhere a p-adic unit group
appears in the degree formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .errors import AmbientMismatchError, BoundExceededError, DimensionError

ORDER_BOUND = 2 ** 63
UNIT_GROUP_BOUND = 10 ** 6


# ---------------------------------------------------------------------------
# Integer matrix normal forms

def hnf(rows, ncols):
    """Canonical row Hermite normal form of the lattice spanned by `rows`.

    Returns a tuple of nonzero rows, echelon from the left: each pivot is
    positive and the entries above a pivot are reduced into [0, pivot).
    """
    m = [list(r) for r in rows if any(r)]
    pivots = []
    row = 0
    for col in range(ncols):
        # gcd-eliminate column `col` below `row`
        while True:
            nz = [i for i in range(row, len(m)) if m[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(m[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = m[i][col] // m[i0][col]
                m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
        nz = [i for i in range(row, len(m)) if m[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        m[row], m[i0] = m[i0], m[row]
        if m[row][col] < 0:
            m[row] = [-a for a in m[row]]
        piv = m[row][col]
        for i in range(row):
            q = m[i][col] // piv
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    return tuple(tuple(r) for r in m[:row])


def hnf_with_transform(rows, ncols):
    """HNF together with a unimodular U such that U * M = H (zero rows kept).

    Returns (hrows, urows) where hrows includes the trailing zero rows and
    urows is the transform over the original row list.
    """
    m = [list(r) for r in rows]
    n = len(m)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    row = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(row, n) if m[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(m[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = m[i][col] // m[i0][col]
                m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
                u[i] = [a - q * b for a, b in zip(u[i], u[i0])]
        nz = [i for i in range(row, n) if m[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        m[row], m[i0] = m[i0], m[row]
        u[row], u[i0] = u[i0], u[row]
        if m[row][col] < 0:
            m[row] = [-a for a in m[row]]
            u[row] = [-a for a in u[row]]
        piv = m[row][col]
        for i in range(row):
            q = m[i][col] // piv
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[row])]
        row += 1
    return [tuple(r) for r in m], [tuple(r) for r in u]


def smith_normal_form(rows, ncols):
    """Diagonal entries of the Smith normal form (nonzero ones only)."""
    m = [list(r) for r in rows if any(r)]
    diag = []
    top = 0
    nrows = len(m)
    while top < nrows and top < ncols:
        # locate a nonzero entry in the submatrix
        pos = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                a = abs(m[i][j])
                if a and (best is None or a < best):
                    best = a
                    pos = (i, j)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            m[top], m[i0] = m[i0], m[top]
            for r in m:
                r[top], r[j0] = r[j0], r[top]
            piv = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                q = m[i][top] // piv
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                if m[i][top]:
                    dirty = True
            for j in range(top + 1, ncols):
                q = m[top][j] // piv
                if q:
                    for i in range(nrows):
                        m[i][j] -= q * m[i][top]
                if m[top][j]:
                    dirty = True
            if not dirty:
                # enforce divisibility of the remaining block by the pivot
                bad = None
                for i in range(top + 1, nrows):
                    for j in range(top + 1, ncols):
                        if m[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                m[top] = [a + b for a, b in zip(m[top], m[bad])]
            pos = None
            best = None
            for i in range(top, nrows):
                for j in range(top, ncols):
                    a = abs(m[i][j])
                    if a and (best is None or a < best):
                        best = a
                        pos = (i, j)
        diag.append(abs(m[top][top]))
        top += 1
    return diag


def snf_with_transform(a_rows, ncols):
    """Smith normal form with transforms: returns (U, diag, V), U*A*V = D."""
    m = [list(r) for r in a_rows]
    nrows = len(m)
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        m[dst] = [a - q * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for r in m:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    top = 0
    while top < nrows and top < ncols:
        pos = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                a = abs(m[i][j])
                if a and (best is None or a < best):
                    best = a
                    pos = (i, j)
        if pos is None:
            break
        while True:
            swap_rows(top, pos[0])
            swap_cols(top, pos[1])
            piv = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                q = m[i][top] // piv
                if q:
                    addmul_row(i, top, q)
                if m[i][top]:
                    dirty = True
            for j in range(top + 1, ncols):
                q = m[top][j] // piv
                if q:
                    addmul_col(j, top, q)
                if m[top][j]:
                    dirty = True
            if not dirty:
                bad = None
                for i in range(top + 1, nrows):
                    if any(m[i][j] % piv for j in range(top + 1, ncols)):
                        bad = i
                        break
                if bad is None:
                    break
                m[top] = [a + b for a, b in zip(m[top], m[bad])]
                u[top] = [a + b for a, b in zip(u[top], u[bad])]
            pos = None
            best = None
            for i in range(top, nrows):
                for j in range(top, ncols):
                    a = abs(m[i][j])
                    if a and (best is None or a < best):
                        best = a
                        pos = (i, j)
        if m[top][top] < 0:
            m[top] = [-a for a in m[top]]
            u[top] = [-a for a in u[top]]
        top += 1
    diag = [m[i][i] for i in range(top)]
    return u, diag, v


def unimodular_inverse(v):
    """Inverse of an integer matrix with determinant +-1."""
    n = len(v)
    aug = [list(v[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    h, u = hnf_with_transform(aug, 2 * n)
    # the left block of h is the identity up to sign handling in hnf
    inv = [list(r[n:]) for r in h]
    for i, r in enumerate(h):
        if r[i] != 1:
            raise ValueError("matrix is not unimodular")
    return [tuple(r) for r in inv]


# ---------------------------------------------------------------------------
# Groups and subgroups

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k, each d_i > 1."""

    invariant_factors: tuple

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        for d in facs:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if prod(facs, start=1) > ORDER_BOUND:
            raise BoundExceededError("group order exceeds the desk-scale bound")

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def order(self):
        return prod(self.invariant_factors, start=1)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def identity(self):
        return (0,) * self.rank

    def reduce(self, vec):
        if len(vec) != self.rank:
            raise DimensionError(
                f"expected vector of length {self.rank}, got {len(vec)}")
        return tuple(int(a) % d for a, d in zip(vec, self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % d
                     for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def scale(self, x, c):
        return tuple((a * c) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = o * (d // gcd(a, d)) // gcd(o, d // gcd(a, d))
        return o

    def elements(self):
        for vec in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield vec

    def is_cyclic_group(self):
        return self.rank <= 1

    def __str__(self):
        if not self.invariant_factors:
            return "C1"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


TRIVIAL_GROUP = FiniteAbelianGroup(())


def group_from_cyclic_orders(orders):
    """Invariant-factor group isomorphic to the product of C_orders[i]."""
    orders = [o for o in orders if o > 1]
    if not orders:
        return TRIVIAL_GROUP
    diag = smith_normal_form(
        [[orders[i] if i == j else 0 for j in range(len(orders))]
         for i in range(len(orders))],
        len(orders))
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FiniteAbelianGroup in canonical lattice form."""

    ambient: FiniteAbelianGroup
    lattice: tuple  # canonical HNF rows of the full-rank sublattice of Z^k
    order: int

    def __post_init__(self):
        if self.ambient.order % self.order:
            raise ValueError("subgroup order must divide the ambient order")

    @property
    def index(self):
        return self.ambient.order // self.order

    def contains(self, vec):
        """Membership test by triangular reduction against the HNF rows."""
        v = list(self.ambient.reduce(vec))
        k = self.ambient.rank
        row = 0
        for col in range(k):
            if row < len(self.lattice) and self.lattice[row][col]:
                piv = self.lattice[row][col]
                if v[col] % piv:
                    return False
                q = v[col] // piv
                v = [a - q * b for a, b in zip(v, self.lattice[row])]
                row += 1
            elif v[col]:
                return False
        return not any(v)

    def elements(self):
        """All elements, generated from the lattice rows."""
        seen = {self.ambient.identity}
        frontier = [self.ambient.identity]
        gens = [self.ambient.reduce(r) for r in self.lattice]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.ambient.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def structure(self):
        """Invariant factors of the subgroup itself."""
        rows = _square_lattice(self)
        k = self.ambient.rank
        if k == 0:
            return TRIVIAL_GROUP
        # relation matrix C with C * rows = diag(d): the subgroup is Z^k / C
        c = _solve_upper(rows, self.ambient.invariant_factors, k)
        diag = smith_normal_form(c, k)
        return FiniteAbelianGroup(tuple(d for d in diag if d > 1))

    def __str__(self):
        return f"subgroup of order {self.order} in {self.ambient}"


def _square_lattice(sub):
    """HNF rows padded/checked to a full-rank k x k upper triangular matrix."""
    k = sub.ambient.rank
    rows = list(sub.lattice)
    if len(rows) != k:
        raise ValueError("subgroup lattice must be full rank")
    return rows


def _solve_upper(rows, ds, k):
    """Integer C with C * rows = diag(ds), rows upper triangular full rank."""
    c = []
    for i in range(k):
        target = [ds[i] if j == i else 0 for j in range(k)]
        coeffs = [0] * k
        for col in range(k):
            piv = rows[col][col]
            if target[col] % piv:
                raise ValueError("relation lattice is not contained in subgroup lattice")
            q = target[col] // piv
            coeffs[col] = q
            if q:
                target = [a - q * b for a, b in zip(target, rows[col])]
        if any(target):
            raise ValueError("failed to express relations in the lattice basis")
        c.append(coeffs)
    return c


def subgroup_from_generators(ambient, gens):
    """Smallest subgroup of `ambient` containing every generator."""
    k = ambient.rank
    rows = []
    for g in gens:
        if len(g) != k:
            raise DimensionError(
                f"generator of length {len(g)} in a rank-{k} group")
        rows.append(ambient.reduce(g))
    rows.extend([ambient.invariant_factors[i] if j == i else 0
                 for j in range(k)] for i in range(k))
    lattice = hnf(rows, k)
    det = prod((lattice[i][i] for i in range(len(lattice))), start=1)
    return Subgroup(ambient, lattice, ambient.order // det)


def trivial_subgroup(ambient):
    return subgroup_from_generators(ambient, [])


def full_subgroup(ambient):
    gens = []
    for i in range(ambient.rank):
        e = [0] * ambient.rank
        e[i] = 1
        gens.append(tuple(e))
    return subgroup_from_generators(ambient, gens)


def _check_same_ambient(a, b):
    if a.ambient != b.ambient:
        raise AmbientMismatchError("subgroups live in different ambient groups")


def product(a, b):
    """Join (internal product) of two subgroups of the same ambient group."""
    _check_same_ambient(a, b)
    return subgroup_from_generators(a.ambient, list(a.lattice) + list(b.lattice))


def intersect(a, b):
    """Set-theoretic intersection of two subgroups of the same ambient group."""
    _check_same_ambient(a, b)
    ra, rb = list(a.lattice), list(b.lattice)
    k = a.ambient.rank
    if k == 0:
        return trivial_subgroup(a.ambient)
    stacked = [list(r) for r in ra] + [[-x for x in r] for r in rb]
    h, u = hnf_with_transform(stacked, k)
    gens = []
    for hrow, urow in zip(h, u):
        if any(hrow):
            continue
        # urow splits as (coeffs over a | coeffs over b); u*A = v*B lies in both
        vec = [0] * k
        for c, r in zip(urow[:len(ra)], ra):
            vec = [x + c * y for x, y in zip(vec, r)]
        gens.append(a.ambient.reduce(vec))
    return subgroup_from_generators(a.ambient, gens)


def index(sub):
    return sub.index


def is_cyclic(sub):
    return sub.structure().rank <= 1


def quotient_structure(sub):
    """Invariant factors of ambient/sub via the Smith normal form."""
    k = sub.ambient.rank
    if k == 0:
        return TRIVIAL_GROUP
    diag = smith_normal_form(list(sub.lattice), k)
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


class GeneratorPresentation:
    """Normalization of a direct product of cyclic factors to invariant form.

    Given the orders of independent generators g_1, ..., g_r (the group is
    the internal direct product of the <g_i>), exposes the invariant-factor
    group and the exact change of coordinates both ways.
    """

    def __init__(self, raw_orders):
        self.raw_orders = [int(o) for o in raw_orders]
        r = len(self.raw_orders)
        if r == 0:
            self.group = TRIVIAL_GROUP
            self._kept = []
            return
        rel = [[self.raw_orders[i] if i == j else 0 for j in range(r)]
               for i in range(r)]
        _, diag, v = snf_with_transform(rel, r)
        self._v = [tuple(row) for row in v]
        self._vinv = unimodular_inverse(self._v)
        self._diag = diag
        self._kept = [i for i, d in enumerate(diag) if d > 1]
        self.group = FiniteAbelianGroup(tuple(diag[i] for i in self._kept))

    def to_canonical(self, raw_vec):
        """Exponent vector on raw generators -> canonical GroupElement."""
        if not self.raw_orders:
            return ()
        full = [sum(raw_vec[i] * self._v[i][j] for i in range(len(raw_vec)))
                % self._diag[j]
                for j in range(len(self._diag))]
        return tuple(full[i] for i in self._kept)

    def from_canonical(self, vec):
        """Canonical GroupElement -> exponent vector on raw generators."""
        vec = self.group.reduce(vec)
        if not self.raw_orders:
            return ()
        full = [0] * len(self._diag)
        for slot, i in enumerate(self._kept):
            full[i] = vec[slot]
        return tuple(
            sum(full[j] * self._vinv[j][i] for j in range(len(full)))
            % self.raw_orders[i]
            for i in range(len(self.raw_orders)))


def divisors(n):
    """Sorted list of positive divisors."""
    out = [1]
    for p, a in factorize(n):
        out = [d * p ** e for d in out for e in range(a + 1)]
    return sorted(out)


def abelian_basis(elements, identity, mul):
    """Independent generators of a finite abelian group given concretely.

    `elements` is the full element list, `mul` the group law.  Returns
    (gens, orders, dlog) where the group is the internal direct product of
    the <gens[i]> (orders non-increasing) and dlog maps every element to
    its exponent vector.

    Generators are extracted greedily by maximal order in the quotient by
    the current span; maximality is what makes the power of the new
    element landing in the span divisible by its coset order, so the span
    always extends as a direct product.
    """
    total = len(elements)

    def power(x, e):
        r = x if e & 1 else identity
        e >>= 1
        while e:
            x = mul(x, x)
            if e & 1:
                r = mul(r, x)
            e >>= 1
        return r

    primes = [p for p, _ in factorize(total)]

    def order_of(x):
        o = total
        for l in primes:
            while o % l == 0 and power(x, o // l) == identity:
                o //= l
        return o

    gens = []
    orders = []
    dlog = {identity: ()}
    while len(dlog) < total:
        best = None
        best_c = 0
        for b in elements:
            if b in dlog:
                continue
            for c in divisors(order_of(b)):
                if power(b, c) in dlog:
                    break
            if c > best_c:
                best, best_c = b, c
        b, c = best, best_c
        v = dlog[power(b, c)]
        adjusted = b
        for g, o, vi in zip(gens, orders, v):
            if vi % c:
                raise ValueError("generator extraction lost independence")
            adjusted = mul(adjusted, power(g, (-(vi // c)) % o))
        span = list(dlog.items())
        step = identity
        for j in range(1, c):
            step = mul(step, adjusted)
            for x, vec in span:
                dlog[mul(x, step)] = vec + (j,)
        for x, vec in span:
            dlog[x] = vec + (0,)
        gens.append(adjusted)
        orders.append(c)
    return gens, orders, dlog


# ---------------------------------------------------------------------------
# Unit groups (Z/nZ)*

def factorize(n):
    """Prime factorization by trial division, as a list of (p, a) pairs."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(p, a):
    """Smallest primitive root modulo p^a for odd p."""
    m = p ** a
    phi = (p - 1) * p ** (a - 1)
    fac = [q for q, _ in factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // q, m) != 1 for q in fac):
            return g
        g += 1


def _prime_power_generators(p, a):
    """Generators (with orders) of (Z/p^a Z)*."""
    if p == 2:
        if a == 1:
            return []
        if a == 2:
            return [(3, 2)]
        return [(2 ** a - 1, 2), (5, 2 ** (a - 2))]
    return [(_primitive_root(p, a), (p - 1) * p ** (a - 1))]


class UnitGroup:
    """(Z/nZ)* with an invariant-factor presentation and exact dlog/exp."""

    def __init__(self, n):
        if not 2 <= n <= UNIT_GROUP_BOUND:
            raise BoundExceededError(f"modulus {n} outside [2, {UNIT_GROUP_BOUND}]")
        self.modulus = n
        self.factorization = factorize(n)
        raw_gens = []
        raw_orders = []
        self._component_slices = []
        for p, a in self.factorization:
            q = p ** a
            cof = n // q
            start = len(raw_gens)
            for g, order in _prime_power_generators(p, a):
                lifted = _crt_pair(g, q, 1, cof) if cof > 1 else g % n
                raw_gens.append(lifted)
                raw_orders.append(order)
            self._component_slices.append((p, a, start, len(raw_gens)))
        self._raw_gens = raw_gens
        self._raw_orders = raw_orders
        r = len(raw_gens)
        if r == 0:
            self.group = TRIVIAL_GROUP
            self._v = []
            self._vinv = []
            self._kept = []
        else:
            rel = [[raw_orders[i] if i == j else 0 for j in range(r)]
                   for i in range(r)]
            _, diag, v = snf_with_transform(rel, r)
            self._v = [tuple(r_) for r_ in v]
            self._vinv = unimodular_inverse(self._v)
            self._diag = diag
            self._kept = [i for i, d in enumerate(diag) if d > 1]
            self.group = FiniteAbelianGroup(tuple(diag[i] for i in self._kept))
        self._dlog_tables = None

    @property
    def order(self):
        return self.group.order

    @property
    def generators(self):
        """Residues mapping to the standard basis of the invariant factors."""
        return tuple(self.exp(tuple(1 if j == i else 0
                                    for j in range(self.group.rank)))
                     for i in range(self.group.rank))

    def residues(self):
        n = self.modulus
        return (u for u in range(1, n) if gcd(u, n) == 1)

    def _tables(self):
        if self._dlog_tables is None:
            tables = []
            n = self.modulus
            for p, a, start, stop in self._component_slices:
                q = p ** a
                table = {}
                gens = [(self._raw_gens[i] % q, self._raw_orders[i])
                        for i in range(start, stop)]
                if not gens:
                    table[1 % q] = ()
                else:
                    for exps in itertools.product(*(range(o) for _, o in gens)):
                        v = 1
                        for (g, _), e in zip(gens, exps):
                            v = v * pow(g, e, q) % q
                        table[v] = exps
                tables.append((q, start, stop, table))
            self._dlog_tables = tables
        return self._dlog_tables

    def dlog(self, u):
        """Exponent vector of the unit u on the canonical generators."""
        n = self.modulus
        u %= n
        if gcd(u, n) != 1:
            raise ValueError(f"{u} is not a unit modulo {n}")
        raw = [0] * len(self._raw_gens)
        for q, start, stop, table in self._tables():
            exps = table[u % q]
            raw[start:stop] = exps
        if not self._raw_gens:
            return ()
        full = [sum(raw[i] * self._v[i][j] for i in range(len(raw))) % self._diag[j]
                for j in range(len(self._diag))]
        return tuple(full[i] for i in self._kept)

    def exp(self, vec):
        """Inverse of dlog: unit with the given exponent vector."""
        vec = self.group.reduce(vec)
        if not self._raw_gens:
            return 1 % self.modulus
        full = [0] * len(self._diag)
        for slot, i in enumerate(self._kept):
            full[i] = vec[slot]
        raw = [sum(full[j] * self._vinv[j][i] for j in range(len(full)))
               % self._raw_orders[i]
               for i in range(len(self._raw_gens))]
        out = 1
        for g, e in zip(self._raw_gens, raw):
            out = out * pow(g, e, self.modulus) % self.modulus
        return out


def _crt_pair(a1, m1, a2, m2):
    """x mod m1*m2 with x = a1 (m1), x = a2 (m2); m1, m2 coprime."""
    inv = pow(m1, -1, m2)
    return (a1 + m1 * ((a2 - a1) * inv % m2)) % (m1 * m2)


@lru_cache(maxsize=512)
def unit_group(n):
    """Cached constructor for (Z/nZ)* with structure and discrete logs."""
    return UnitGroup(n)

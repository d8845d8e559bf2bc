"""Exact integer linear algebra: Smith normal form, finitely generated
abelian groups, and homology of complexes of such groups.

Everything is done with Python's arbitrary-precision integers, so there is
no overflow to guard against.  Matrices are small (tens to a few hundred
rows), which keeps the classical SNF algorithm comfortably fast once unit
pivots are swept first.

Conventions used throughout the package:

* A finitely generated abelian group is presented by a tuple of generator
  ``orders``: ``0`` means an infinite-cyclic generator, ``d >= 2`` a
  generator of order ``d``.  Free generators come first in normal form.
* A homomorphism is an integer matrix acting on generator coordinate
  columns; torsion coordinates are read modulo their order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence


Matrix = tuple[tuple[int, ...], ...]


class NonComposable(Exception):
    """Middle objects of a would-be complex differ."""


class NotAComplex(Exception):
    """Composite of consecutive differentials is nonzero."""


class NotChainMap(Exception):
    """A map of complexes fails to commute with the differentials."""


# ---------------------------------------------------------------------------
# plain integer matrices


def mat(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("shape mismatch")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: int, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    r, c = shape(a)
    if len(v) != c:
        raise ValueError("shape mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return b
    if not b:
        return a
    if len(a) != len(b):
        raise ValueError("row mismatch")
    return tuple(ra + rb for ra, rb in zip(a, b))


def det(a: Matrix) -> int:
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n, c = shape(a)
    if n != c:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular integer matrix; the carrier for all boundary data."""

    data: Matrix

    def __post_init__(self):
        if self.data and any(len(r) != len(self.data[0]) for r in self.data):
            raise ValueError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(mat_mul(self.data, other.data))


# ---------------------------------------------------------------------------
# Smith normal form


class _Transforms:
    """Row/column transforms of an SNF run, with inverses kept in step.

    Row op U := E U entails Uinv := Uinv E^-1 (a column op), and dually for
    V, so everything stays in integers; no matrix is ever inverted after
    the fact.
    """

    def __init__(self, n_r: int, n_c: int):
        self.left = [list(r) for r in identity(n_r)]
        self.left_inv = [list(r) for r in identity(n_r)]
        self.right = [list(r) for r in identity(n_c)]
        self.right_inv = [list(r) for r in identity(n_c)]

    def swap_rows(self, a, b):
        self.left[a], self.left[b] = self.left[b], self.left[a]
        for row in self.left_inv:
            row[a], row[b] = row[b], row[a]

    def swap_cols(self, a, b):
        for row in self.right:
            row[a], row[b] = row[b], row[a]
        self.right_inv[a], self.right_inv[b] = (
            self.right_inv[b],
            self.right_inv[a],
        )

    def add_row(self, i, t, q):
        """row_i -= q row_t."""
        li, lt = self.left[i], self.left[t]
        for j in range(len(li)):
            li[j] -= q * lt[j]
        for row in self.left_inv:
            row[t] += q * row[i]

    def add_col(self, j, t, q):
        """col_j -= q col_t."""
        for row in self.right:
            row[j] -= q * row[t]
        rj, rt = self.right_inv[j], self.right_inv[t]
        for k in range(len(rt)):
            rt[k] += q * rj[k]

    def negate_row(self, i):
        self.left[i] = [-x for x in self.left[i]]
        for row in self.left_inv:
            row[i] = -row[i]


def _unit_sweep(m, tf: "_Transforms", start):
    """Eliminate with +-1 pivots first; this keeps entry growth tame."""
    n_r, n_c = len(m), len(m[0]) if m else 0
    t = start
    while t < min(n_r, n_c):
        pivot = None
        for i in range(t, n_r):
            for j in range(t, n_c):
                if m[i][j] in (1, -1):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return t
        _pivot_to(m, tf, pivot, t)
        _clear_with_pivot(m, tf, t)
        if all(m[t][j] == 0 for j in range(t + 1, n_c)) and all(
            m[i][t] == 0 for i in range(t + 1, n_r)
        ):
            t += 1
    return t


def _pivot_to(m, tf: "_Transforms", src, t):
    i, j = src
    if i != t:
        m[t], m[i] = m[i], m[t]
        tf.swap_rows(t, i)
    if j != t:
        for row in m:
            row[t], row[j] = row[j], row[t]
        tf.swap_cols(t, j)


def _clear_with_pivot(m, tf: "_Transforms", t):
    n_r, n_c = len(m), len(m[0])
    p = m[t][t]
    for i in range(n_r):
        if i != t and m[i][t] != 0:
            q = m[i][t] // p if p in (1, -1) else _nearest_quotient(m[i][t], p)
            if q:
                mi, mt = m[i], m[t]
                for j in range(n_c):
                    mi[j] -= q * mt[j]
                tf.add_row(i, t, q)
    for j in range(n_c):
        if j != t and m[t][j] != 0:
            q = m[t][j] // p if p in (1, -1) else _nearest_quotient(m[t][j], p)
            if q:
                for i in range(n_r):
                    m[i][j] -= q * m[i][t]
                tf.add_col(j, t, q)


def _nearest_quotient(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def snf_full(
    m: Matrix | IntMatrix,
) -> tuple[Matrix, Matrix, Matrix, Matrix, Matrix]:
    """Smith normal form with transforms and their inverses.

    Returns (s, u, v, uinv, vinv) with u*m*v = s; s is diagonal with
    nonnegative entries d_1 | d_2 | ... .  Pivots are chosen of minimal
    absolute value with a deterministic (row, col) tie-break so normal
    forms are reproducible.
    """
    if isinstance(m, IntMatrix):
        m = m.data
    n_r = len(m)
    n_c = len(m[0]) if m else 0
    a = [list(row) for row in m]
    tf = _Transforms(n_r, n_c)
    if n_r and n_c:
        t = _unit_sweep(a, tf, 0)
        while t < min(n_r, n_c):
            pivot = None
            best = None
            for i in range(t, n_r):
                for j in range(t, n_c):
                    x = abs(a[i][j])
                    if x and (best is None or x < best):
                        best, pivot = x, (i, j)
            if pivot is None:
                break
            _pivot_to(a, tf, pivot, t)
            _clear_with_pivot(a, tf, t)
            if any(a[t][j] for j in range(t + 1, n_c)) or any(
                a[i][t] for i in range(t + 1, n_r)
            ):
                continue
            # force divisibility d_t | everything below
            stuck = False
            for i in range(t + 1, n_r):
                for j in range(t + 1, n_c):
                    if a[i][j] % a[t][t] != 0:
                        for jj in range(n_c):
                            a[t][jj] += a[i][jj]
                        tf.add_row(t, i, -1)
                        stuck = True
                        break
                if stuck:
                    break
            if not stuck:
                t += 1
    for i in range(min(n_r, n_c)):
        if a[i][i] < 0:
            for j in range(n_c):
                a[i][j] = -a[i][j]
            tf.negate_row(i)
    freeze = lambda rows: tuple(tuple(r) for r in rows)
    return (
        freeze(a),
        freeze(tf.left),
        freeze(tf.right),
        freeze(tf.left_inv),
        freeze(tf.right_inv),
    )


def snf(m: Matrix | IntMatrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: (s, u, v) with u*m*v = s; see snf_full."""
    s, u, v, _, _ = snf_full(m)
    return s, u, v


def snf_diagonal(m: Matrix) -> list[int]:
    s, _, _ = snf(m)
    return [s[i][i] for i in range(min(shape(s)))]


def invert_unimodular(u: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n, c = shape(u)
    if n != c:
        raise ValueError("not square")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(u)]
    # fraction-free solve via rational elimination; result is integral
    frac = [[Fraction(x) for x in row] for row in aug]
    for k in range(n):
        piv = next(i for i in range(k, n) if frac[i][k] != 0)
        frac[k], frac[piv] = frac[piv], frac[k]
        inv = 1 / frac[k][k]
        frac[k] = [x * inv for x in frac[k]]
        for i in range(n):
            if i != k and frac[i][k] != 0:
                f = frac[i][k]
                frac[i] = [x - f * y for x, y in zip(frac[i], frac[k])]
    out = []
    for row in frac:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in vals))
    return tuple(out)


def solve_exact(a: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution x of a x = b, or None if none exists."""
    s, u, v = snf(a)
    n_r, n_c = shape(a)
    ub = mat_vec(u, tuple(b))
    y = [0] * n_c
    for i in range(n_r):
        d = s[i][i] if i < min(n_r, n_c) else 0
        if i < n_c and d:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
        elif ub[i] != 0:
            return None
    return mat_vec(v, y)


def kernel_basis(a: Matrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel lattice of a."""
    n_r, n_c = shape(a)
    if n_c == 0:
        return []
    s, _, v = snf(a)
    rank = sum(1 for i in range(min(n_r, n_c)) if s[i][i] != 0)
    cols = transpose(v)
    return [cols[j] for j in range(rank, n_c)]


def column_space_basis(gens: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Basis of the lattice spanned by the given vectors in Z^dim.

    With u g v = s diagonal, the nonzero columns of g v form a basis: they
    are the columns of u^-1 s, and v is unimodular.
    """
    if not gens:
        return []
    g = transpose(mat(gens))  # dim x k
    s, _, v = snf(g)
    gv = mat_mul(g, v)
    cols = transpose(gv)
    out = []
    for i in range(min(len(g), len(g[0]) if g else 0)):
        if s[i][i]:
            out.append(cols[i])
    return out


# ---------------------------------------------------------------------------
# finitely generated abelian groups


def _normalize_orders(orders: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Invariant factors of a direct sum of cyclic groups Z/o (o=0 free)."""
    rank = sum(1 for o in orders if o == 0)
    torsion = [o for o in orders if o not in (0, 1)]
    if any(o < 0 for o in orders):
        raise ValueError("negative order")
    if not torsion:
        return rank, ()
    # repeatedly replace pairs by (gcd, lcm) until the chain divides
    ds = sorted(torsion)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds) - 1):
            a, b = ds[i], ds[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                ds[i], ds[i + 1] = g, a * b // g
                changed = True
        ds.sort()
    ds = [d for d in ds if d > 1]
    return rank, tuple(ds)


@dataclass(frozen=True)
class FgAbelian:
    """A f.g. abelian group given by generator orders (0 = infinite).

    ``orders`` is the presentation actually used for coordinates; two groups
    compare equal when their invariant-factor normal forms agree.
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))

    @staticmethod
    def normal(rank: int, factors: Sequence[int] = ()) -> "FgAbelian":
        factors = tuple(factors)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must divide in turn")
        if any(f < 2 for f in factors):
            raise ValueError("invariant factors are at least 2")
        return FgAbelian((0,) * rank + factors)

    @staticmethod
    def zero() -> "FgAbelian":
        return FgAbelian(())

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def rank(self) -> int:
        return _normalize_orders(self.orders)[0]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return _normalize_orders(self.orders)[1]

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if not self.is_finite:
            return None
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def reduce_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % o if o else x for x, o in zip(v, self.orders))

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite:
            raise ValueError("infinite group")
        coords: list[tuple[int, ...]] = [()]
        for o in self.orders:
            coords = [c + (x,) for c in coords for x in range(o)]
        return coords

    def direct_sum(self, other: "FgAbelian") -> "FgAbelian":
        return FgAbelian(self.orders + other.orders)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FgAbelian):
            return NotImplemented
        return _normalize_orders(self.orders) == _normalize_orders(other.orders)

    def __hash__(self):
        return hash(_normalize_orders(self.orders))

    def __str__(self) -> str:
        rank, factors = _normalize_orders(self.orders)
        parts = ["Z"] * rank + [f"Z/{d}" for d in factors]
        return " + ".join(parts) if parts else "0"


def direct_sum(groups: Sequence[FgAbelian]) -> FgAbelian:
    orders: tuple[int, ...] = ()
    for g in groups:
        orders = orders + g.orders
    return FgAbelian(orders)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism of f.g. abelian groups as a matrix on generators."""

    dom: FgAbelian
    cod: FgAbelian
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.cod.ngens or any(
            len(row) != self.dom.ngens for row in self.matrix
        ):
            raise ValueError(
                f"matrix is {shape(self.matrix)}, "
                f"expected {self.cod.ngens}x{self.dom.ngens}"
            )
        object.__setattr__(self, "matrix", _reduce_matrix(self.matrix, self.cod))
        for j, o in enumerate(self.dom.orders):
            if o == 0:
                continue
            img = tuple(o * self.matrix[i][j] for i in range(self.cod.ngens))
            if any(
                (x % co if co else x) for x, co in zip(img, self.cod.orders)
            ):
                raise ValueError("matrix does not respect torsion")

    @staticmethod
    def zero(dom: FgAbelian, cod: FgAbelian) -> "AbHom":
        return AbHom(dom, cod, zeros(cod.ngens, dom.ngens))

    @staticmethod
    def identity(g: FgAbelian) -> "AbHom":
        return AbHom(g, g, identity(g.ngens))

    @staticmethod
    def scalar(g: FgAbelian, c: int) -> "AbHom":
        return AbHom(g, g, mat_scale(c, identity(g.ngens)))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.dom.ngens:
            raise ValueError("bad vector length")
        out = tuple(
            sum(row[j] * v[j] for j in range(self.dom.ngens))
            for row in self.matrix
        )
        return self.cod.reduce_vec(out)

    def compose(self, first: "AbHom") -> "AbHom":
        """self after first."""
        if first.cod.orders != self.dom.orders:
            raise NonComposable("middle objects differ")
        mid = self.dom.ngens
        m = tuple(
            tuple(
                sum(self.matrix[i][k] * first.matrix[k][j] for k in range(mid))
                for j in range(first.dom.ngens)
            )
            for i in range(self.cod.ngens)
        )
        return AbHom(first.dom, self.cod, m)

    def __add__(self, other: "AbHom") -> "AbHom":
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ValueError("mismatched homs")
        return AbHom(self.dom, self.cod, mat_add(self.matrix, other.matrix))

    def __neg__(self) -> "AbHom":
        return AbHom(self.dom, self.cod, mat_scale(-1, self.matrix))

    def scale(self, c: int) -> "AbHom":
        return AbHom(self.dom, self.cod, mat_scale(c, self.matrix))

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.matrix)

    def equals(self, other: "AbHom") -> bool:
        return (
            self.dom.orders == other.dom.orders
            and self.cod.orders == other.cod.orders
            and self.matrix == other.matrix
        )

    def direct_sum(self, other: "AbHom") -> "AbHom":
        dom = self.dom.direct_sum(other.dom)
        cod = self.cod.direct_sum(other.cod)
        m = [
            list(row) + [0] * other.dom.ngens for row in self.matrix
        ] + [[0] * self.dom.ngens + list(row) for row in other.matrix]
        return AbHom(dom, cod, mat(m))


def _reduce_matrix(m: Matrix, cod: FgAbelian) -> Matrix:
    return tuple(
        tuple(x % o if o else x for x in row) for row, o in zip(m, cod.orders)
    )


def block_hom(
    dom: FgAbelian,
    cod: FgAbelian,
    dom_slices: Sequence[tuple[int, int]],
    cod_slices: Sequence[tuple[int, int]],
    blocks: dict[tuple[int, int], AbHom],
) -> AbHom:
    """Assemble an AbHom from blocks indexed by (cod_summand, dom_summand)."""
    m = [[0] * dom.ngens for _ in range(cod.ngens)]
    for (bi, bj), h in blocks.items():
        r0, _ = cod_slices[bi]
        c0, _ = dom_slices[bj]
        for i, row in enumerate(h.matrix):
            for j, x in enumerate(row):
                m[r0 + i][c0 + j] += x
    return AbHom(dom, cod, mat(m))


# ---------------------------------------------------------------------------
# homology of complexes of f.g. abelian groups


def _relation_columns(g: FgAbelian) -> list[tuple[int, ...]]:
    cols = []
    for i, o in enumerate(g.orders):
        if o:
            cols.append(tuple(o if j == i else 0 for j in range(g.ngens)))
    return cols


@dataclass
class HomologyClassData:
    """A homology group together with coordinates on the chain level.

    ``lift`` maps normal-form generators to chain vectors; ``project`` sends
    a cycle (chain vector) to its homology class in normal-form coordinates.
    """

    group: FgAbelian
    chain: FgAbelian
    _basis: Matrix  # n x r, columns span the cycle lattice
    _gen_coords: Matrix  # r x ngens, homology generators in basis coords
    _proj: Callable[[Sequence[int]], tuple[int, ...]]

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.group.ngens:
            raise ValueError("bad coordinate length")
        w = mat_vec(self._gen_coords, coords)
        return mat_vec(self._basis, w)

    def project(self, chain_vec: Sequence[int]) -> tuple[int, ...]:
        return self._proj(chain_vec)


def homology_at(d_in: AbHom | None, d_out: AbHom | None) -> HomologyClassData:
    """Homology ker(d_out)/im(d_in) of a two-step complex at the middle.

    Either map may be None (interpreted as the zero map from/to 0).  Raises
    NonComposable when the middle objects differ and NotAComplex when
    d_out . d_in is nonzero.
    """
    if d_in is None and d_out is None:
        raise ValueError("need at least one differential")
    middle = d_in.cod if d_in is not None else d_out.dom
    if d_in is not None and d_out is not None:
        if d_in.cod.orders != d_out.dom.orders:
            raise NonComposable("middle objects differ")
        if not d_out.compose(d_in).is_zero():
            raise NotAComplex("d_out . d_in != 0")
    n = middle.ngens
    rel_mid = _relation_columns(middle)
    # cycle lattice: preimage of the codomain relations under d_out
    if d_out is None or d_out.cod.ngens == 0:
        cycle_gens = [tuple(identity(n)[i]) for i in range(n)]
    else:
        rel_cod = _relation_columns(d_out.cod)
        stacked = d_out.matrix
        if rel_cod:
            stacked = hstack(stacked, transpose(mat(rel_cod)))
        cycle_gens = [k[:n] for k in kernel_basis(stacked)]
    basis_cols = column_space_basis(cycle_gens + rel_mid, n)
    r = len(basis_cols)
    basis = transpose(mat(basis_cols)) if basis_cols else zeros(n, 0)
    solve_in_basis = _cached_solver(basis)
    # relations: boundaries and the middle torsion expressed in the basis
    rel_vecs = list(rel_mid)
    if d_in is not None:
        for j in range(d_in.dom.ngens):
            rel_vecs.append(tuple(d_in.matrix[i][j] for i in range(n)))
    rel_in_basis = []
    for v in rel_vecs:
        w = solve_in_basis(v)
        if w is None:
            raise NotAComplex("boundary does not lie in the cycle lattice")
        rel_in_basis.append(w)
    relmat = transpose(mat(rel_in_basis)) if rel_in_basis else zeros(r, 0)
    s, u, _, uinv, _ = snf_full(relmat)
    sr, sc = shape(s)
    orders = []
    kept = []
    for i in range(r):
        d = s[i][i] if i < min(sr, sc) else 0
        if d == 1:
            continue
        orders.append(d)
        kept.append(i)
    free = [i for i, o in zip(kept, orders) if o == 0]
    tors = [i for i, o in zip(kept, orders) if o != 0]
    sel = free + tors
    sel_orders = tuple([0] * len(free) + [orders[kept.index(i)] for i in tors])
    group = FgAbelian(sel_orders)
    gen_coords = transpose(mat([transpose(uinv)[i] for i in sel])) if sel else zeros(r, 0)

    def proj(vec: Sequence[int], _solve=solve_in_basis, _u=u, _sel=tuple(sel),
             _group=group) -> tuple[int, ...]:
        w = _solve(vec)
        if w is None:
            raise ValueError("vector is not a cycle")
        coords = mat_vec(_u, w)
        out = tuple(coords[i] for i in _sel)
        return _group.reduce_vec(out)

    return HomologyClassData(group, middle, basis, gen_coords, proj)


def _cached_solver(a: Matrix) -> Callable[[Sequence[int]], tuple[int, ...] | None]:
    """Solver for a x = b reusing one SNF of a across many right-hand sides."""
    s, u, v = snf(a)
    n_r, n_c = shape(a)

    def solve(b: Sequence[int]) -> tuple[int, ...] | None:
        ub = mat_vec(u, tuple(b))
        y = [0] * n_c
        for i in range(n_r):
            d = s[i][i] if i < min(n_r, n_c) else 0
            if i < n_c and d:
                if ub[i] % d != 0:
                    return None
                y[i] = ub[i] // d
            elif ub[i] != 0:
                return None
        return mat_vec(v, y)

    return solve


@dataclass
class ChainComplexAb:
    """A chain complex of f.g. abelian groups, indexed by integer degrees.

    ``diff[n]`` is the boundary C_n -> C_{n-1}.  Degrees not present are 0.
    """

    groups: dict[int, FgAbelian]
    diff: dict[int, AbHom]

    def __post_init__(self):
        for n, d in self.diff.items():
            if d.dom.orders != self.groups.get(n, FgAbelian(())).orders:
                raise ValueError(f"differential at {n} has wrong domain")
            if d.cod.orders != self.groups.get(n - 1, FgAbelian(())).orders:
                raise ValueError(f"differential at {n} has wrong codomain")

    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def check(self) -> None:
        for n in self.diff:
            above = self.diff.get(n + 1)
            if above is not None and not self.diff[n].compose(above).is_zero():
                raise NotAComplex(f"d.d != 0 at degree {n + 1}")

    def homology(self, n: int) -> HomologyClassData:
        g = self.groups.get(n)
        if g is None or g.ngens == 0:
            trivial = FgAbelian(())
            return HomologyClassData(
                trivial, trivial, (), (), lambda v: ()
            )
        d_in = self.diff.get(n + 1)
        d_out = self.diff.get(n)
        if d_in is None and d_out is None:
            d_out = AbHom.zero(g, FgAbelian(()))
        return homology_at(d_in, d_out)


class ReducedComplex:
    """A chain complex of f.g. abelian groups with unit entries swept out.

    Gaussian elimination of complexes: whenever a differential entry is an
    isomorphism of cyclic summands (equal orders, invertible coefficient),
    the pair of generators cancels and the neighbouring entries pick up the
    usual correction term.  The elimination steps are recorded so chains
    can be projected into, and lifted out of, the reduced complex; homology
    classes therefore keep coordinates in the original chain groups while
    all Smith normal forms run on the small core.
    """

    def __init__(self, groups: dict[int, FgAbelian], diffs: dict[int, AbHom]):
        self.orders: dict[int, tuple[int, ...]] = {
            n: g.orders for n, g in groups.items()
        }
        self.alive: dict[int, list[bool]] = {
            n: [True] * len(o) for n, o in self.orders.items()
        }
        self.d: dict[int, dict[tuple[int, int], int]] = {}
        for n, h in diffs.items():
            sparse = {}
            for i, row in enumerate(h.matrix):
                for j, x in enumerate(row):
                    if x:
                        sparse[(i, j)] = x
            self.d[n] = sparse
        # steps: (degree, source_idx, target_idx, pinv, gamma, beta)
        self.steps: list[tuple[int, int, int, int, dict, dict]] = []
        self._reduce()
        self._homology: dict[int, HomologyClassData] = {}

    def _invertible(self, order: int, v: int) -> int | None:
        if order == 0:
            return v if v in (1, -1) else None
        if gcd(v % order, order) == 1:
            return pow(v % order, -1, order)
        return None

    def _reduce(self) -> None:
        changed = True
        while changed:
            changed = False
            for n in sorted(self.d):
                pivot = None
                for (i, j), v in self.d[n].items():
                    if self.orders[n][j] != self.orders[n - 1][i]:
                        continue
                    pinv = self._invertible(self.orders[n][j], v)
                    if pinv is not None:
                        pivot = (i, j, pinv)
                        break
                if pivot is None:
                    continue
                self._cancel(n, *pivot)
                changed = True

    def _cancel(self, n: int, pi: int, pj: int, pinv: int) -> None:
        dn = self.d[n]
        gamma = {j: v for (i, j), v in dn.items() if i == pi and j != pj}
        beta = {i: v for (i, j), v in dn.items() if j == pj and i != pi}
        tgt_orders = self.orders[n - 1]
        for j, gv in gamma.items():
            for i, bv in beta.items():
                corr = bv * pinv * gv
                o = tgt_orders[i]
                new = dn.get((i, j), 0) - corr
                if o:
                    new %= o
                if new:
                    dn[(i, j)] = new
                elif (i, j) in dn:
                    del dn[(i, j)]
        for key in [k for k in dn if k[0] == pi or k[1] == pj]:
            del dn[key]
        if n + 1 in self.d:
            for key in [k for k in self.d[n + 1] if k[0] == pj]:
                del self.d[n + 1][key]
        if n - 1 in self.d:
            for key in [k for k in self.d[n - 1] if k[1] == pi]:
                del self.d[n - 1][key]
        self.alive[n][pj] = False
        self.alive[n - 1][pi] = False
        self.steps.append((n, pj, pi, pinv, gamma, beta))

    # -- chain maps between full and reduced coordinates --------------------

    def project_full(self, n: int, vec) -> list[int]:
        """Apply the elimination steps to a degree-n chain vector."""
        v = list(vec)
        orders = self.orders[n]
        for d, s, t, pinv, gamma, beta in self.steps:
            if d == n:
                v[s] = 0
            elif d - 1 == n:
                if v[t]:
                    for i2, bv in beta.items():
                        v[i2] -= bv * pinv * v[t]
                        if orders[i2]:
                            v[i2] %= orders[i2]
                v[t] = 0
        return v

    def lift_full(self, n: int, vec) -> list[int]:
        """Undo the elimination steps on a reduced degree-n chain vector."""
        v = list(vec)
        orders = self.orders[n]
        for d, s, t, pinv, gamma, beta in reversed(self.steps):
            if d == n:
                acc = 0
                for j2, gv in gamma.items():
                    if v[j2]:
                        acc += gv * v[j2]
                val = -pinv * acc
                if orders[s]:
                    val %= orders[s]
                v[s] = val
            elif d - 1 == n:
                v[t] = 0
        return v

    # -- homology -------------------------------------------------------------

    def _alive_indices(self, n: int) -> list[int]:
        return [i for i, a in enumerate(self.alive.get(n, [])) if a]

    def _reduced_group(self, n: int) -> FgAbelian:
        return FgAbelian(tuple(self.orders[n][i] for i in self._alive_indices(n)))

    def _reduced_diff(self, n: int) -> AbHom | None:
        if n not in self.d:
            return None
        src = self._alive_indices(n)
        tgt = self._alive_indices(n - 1)
        src_pos = {idx: k for k, idx in enumerate(src)}
        tgt_pos = {idx: k for k, idx in enumerate(tgt)}
        m = [[0] * len(src) for _ in range(len(tgt))]
        for (i, j), v in self.d[n].items():
            m[tgt_pos[i]][src_pos[j]] = v
        return AbHom(self._reduced_group(n), self._reduced_group(n - 1), mat(m))

    def homology(self, n: int) -> "WrappedHomology":
        if n in self._homology:
            return self._homology[n]
        if n not in self.orders or not self._alive_indices(n):
            trivial = FgAbelian(())
            data = WrappedHomology(trivial, lambda c: (), lambda v: ())
            self._homology[n] = data
            return data
        d_in = self._reduced_diff(n + 1) if n + 1 in self.orders else None
        d_out = self._reduced_diff(n)
        if d_in is None and d_out is None:
            d_out = AbHom.zero(self._reduced_group(n), FgAbelian(()))
        core = homology_at(d_in, d_out)
        sel = self._alive_indices(n)

        def lift(coords, _core=core, _sel=sel, _n=n):
            small = _core.lift(coords)
            v = [0] * len(self.orders[_n])
            for k, idx in enumerate(_sel):
                v[idx] = small[k]
            return tuple(self.lift_full(_n, v))

        def project(vec, _core=core, _sel=sel, _n=n):
            v = self.project_full(_n, vec)
            return _core.project(tuple(v[idx] for idx in _sel))

        data = WrappedHomology(core.group, lift, project)
        self._homology[n] = data
        return data


@dataclass
class WrappedHomology:
    """Homology data exposing lift/project in ambient chain coordinates."""

    group: FgAbelian
    _lift: Callable
    _project: Callable

    def lift(self, coords) -> tuple[int, ...]:
        return self._lift(coords)

    def project(self, vec) -> tuple[int, ...]:
        return self._project(vec)


def induced_on_homology(
    f: AbHom, src: HomologyClassData, tgt: HomologyClassData
) -> AbHom:
    """Map induced on homology by a chain-level map in one degree.

    ``f`` must send the source chain group to the target chain group and be
    compatible with the differentials (the caller checks chain-map-ness
    across degrees; here we only need cycles to land on cycles, which is
    verified by the projection step).
    """
    cols = []
    for k in range(src.group.ngens):
        e = tuple(1 if i == k else 0 for i in range(src.group.ngens))
        v = src.lift(e)
        cols.append(tgt.project(f(v)))
    m = transpose(mat(cols)) if cols else zeros(tgt.group.ngens, 0)
    return AbHom(src.group, tgt.group, m)


def check_chain_map(
    f_by_degree: dict[int, AbHom],
    src: ChainComplexAb,
    tgt: ChainComplexAb,
) -> None:
    for n, f in f_by_degree.items():
        below = f_by_degree.get(n - 1)
        ds = src.diff.get(n)
        dt = tgt.diff.get(n)
        if ds is None and dt is None:
            continue
        lhs = dt.compose(f) if dt is not None else None
        rhs = below.compose(ds) if (below is not None and ds is not None) else None
        if lhs is None and rhs is None:
            continue
        if lhs is None or rhs is None:
            probe = lhs if lhs is not None else rhs
            if not probe.is_zero():
                raise NotChainMap(f"square at degree {n} does not commute")
        elif not lhs.equals(rhs):
            raise NotChainMap(f"square at degree {n} does not commute")

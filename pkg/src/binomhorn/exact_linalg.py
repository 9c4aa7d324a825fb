"""Arbitrary-precision integer and rational linear algebra.

Everything here is exact: matrices hold Python ints, rational elimination
uses fractions.Fraction.  No floating point anywhere.  Provides Smith and
Hermite normal forms, integer kernels, lattice saturation and indices, and
the small rational solvers the geometry layer needs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from itertools import combinations


class IntMatrix:
    """Immutable integer matrix, row-major."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ValueError("ragged rows")
        self.data = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0

    @staticmethod
    def identity(n):
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r, c):
        return IntMatrix([[0] * c for _ in range(r)])

    @staticmethod
    def from_columns(cols, nrows=None):
        cols = list(cols)
        if not cols:
            return IntMatrix.zero(nrows or 0, 0)
        n = len(cols[0])
        return IntMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.nrows))

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def transpose(self):
        return IntMatrix([[self.data[i][j] for i in range(self.nrows)]
                          for j in range(self.ncols)])

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ot = other.transpose().data
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                          for row in self.data])

    def mul_vec(self, v):
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.data)

    def submatrix(self, rows, cols):
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows])

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]})"

    def tolist(self):
        return [list(r) for r in self.data]


# -- elementary exact helpers -------------------------------------------------

def _ff(a, k):
    """Falling factorial a (a-1) ... (a-k+1); k >= 0.  Works for Fractions."""
    out = Fraction(1) if isinstance(a, Fraction) else 1
    for i in range(k):
        out *= a - i
    return out


def _rising(a, k):
    """Rising factorial a (a+1) ... (a+k-1); k >= 0."""
    out = Fraction(1) if isinstance(a, Fraction) else 1
    for i in range(k):
        out *= a + i
    return out


def frac_rank(rows):
    """Rank over the rationals of a list-of-rows matrix (ints or Fractions)."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def frac_solve(rows, rhs):
    """One exact solution x of M x = rhs over Q, or None if inconsistent.

    Free variables are set to zero.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(nr)]
    pivots = []
    rank = 0
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(nr):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, nr):
        if aug[i][nc] != 0:
            return None
    x = [Fraction(0)] * nc
    for i, col in enumerate(pivots):
        x[col] = aug[i][nc]
    return tuple(x)


def frac_nullspace(rows, ncols):
    """Basis of the rational right null space of a list-of-rows matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def bareiss_det(m: IntMatrix):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- Smith normal form ---------------------------------------------------------

def smith_normal_form(m: IntMatrix):
    """Smith normal form with transforms: returns (U, D, V), U m V = D.

    U, V are unimodular; D is diagonal with nonnegative entries d_1 | d_2 | ...
    Pivot choice: smallest absolute nonzero entry of the remaining block.
    """
    a = [list(row) for row in m.data]
    nr, nc = m.nrows, m.ncols
    U = [list(row) for row in IntMatrix.identity(nr).data]
    V = [list(row) for row in IntMatrix.identity(nc).data]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot now alone in its row and column; enforce divisibility
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return IntMatrix(U), IntMatrix(a), IntMatrix(V)


def invariant_factors(m: IntMatrix):
    """Nonzero diagonal entries of the Smith form of m."""
    _, d, _ = smith_normal_form(m)
    out = []
    for i in range(min(d.nrows, d.ncols)):
        if d.data[i][i] != 0:
            out.append(d.data[i][i])
    return tuple(out)


def int_rank(m: IntMatrix):
    """Rank over the rationals."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return frac_rank([list(r) for r in m.data])


# -- Hermite normal form -------------------------------------------------------

def row_hnf(m: IntMatrix):
    """Canonical row Hermite normal form, zero rows stripped.

    Pivots are positive, entries above a pivot lie in [0, pivot), and the
    row lattice is unchanged.  Uniqueness makes the result a canonical
    representative of the row lattice.
    """
    rows = [list(r) for r in m.data]
    nr, nc = m.nrows, m.ncols
    pr = 0
    for col in range(nc):
        if pr >= nr:
            break
        while True:
            nz = [i for i in range(pr, nr) if rows[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pr], rows[i0] = rows[i0], rows[pr]
            clean = True
            for i in range(pr + 1, nr):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[pr][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
                    if rows[i][col] != 0:
                        clean = False
            if clean:
                break
        if pr < nr and rows[pr][col] != 0:
            if rows[pr][col] < 0:
                rows[pr] = [-x for x in rows[pr]]
            for i in range(pr):
                q = rows[i][col] // rows[pr][col]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
            pr += 1
    return IntMatrix(rows[:pr]) if pr else IntMatrix.zero(0, nc)


def column_hnf(m: IntMatrix):
    """Column-style Hermite normal form (transpose of row_hnf of transpose)."""
    return row_hnf(m.transpose()).transpose()


# -- lattices ------------------------------------------------------------------

class LatticeBasis:
    """A sublattice of Z^n given by an independent list of column vectors.

    The basis is canonicalized to column-style Hermite normal form on
    construction, so two LatticeBasis objects describe the same lattice
    exactly when they compare equal.
    """

    __slots__ = ("ambient_dim", "vectors")

    def __init__(self, ambient_dim, vectors):
        ambient_dim = int(ambient_dim)
        vecs = [tuple(int(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length != ambient dimension")
        if vecs:
            h = column_hnf(IntMatrix.from_columns(vecs))
            cols = h.columns()
            if len(cols) != len(vecs):
                raise ValueError("vectors are linearly dependent")
            vecs = cols
        self.ambient_dim = ambient_dim
        self.vectors = tuple(vecs)

    @property
    def rank(self):
        return len(self.vectors)

    def matrix(self):
        return IntMatrix.from_columns(self.vectors, nrows=self.ambient_dim)

    def contains(self, v):
        """Exact membership test for an integer (or rational) vector."""
        if len(v) != self.ambient_dim:
            raise ValueError("ambient mismatch")
        coeffs = self.coordinates(v)
        return coeffs is not None

    def coordinates(self, v):
        """Integer coordinates of v in this basis, or None if v is outside."""
        if not self.vectors:
            return () if all(x == 0 for x in v) else None
        sol = frac_solve([list(row) for row in self.matrix().data], list(v))
        if sol is None:
            return None
        if any(x.denominator != 1 for x in sol):
            return None
        # the matrix has full column rank, so the solution is unique
        return tuple(int(x) for x in sol)

    def __eq__(self, other):
        return (isinstance(other, LatticeBasis)
                and self.ambient_dim == other.ambient_dim
                and self.vectors == other.vectors)

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"LatticeBasis(dim={self.ambient_dim}, vectors={list(self.vectors)})"


def kernel_basis(m: IntMatrix):
    """Basis of the integer right kernel ker_Z(m) = {u : m u = 0}.

    The kernel of an integer matrix is saturated by construction.  Returns
    a LatticeBasis with ambient dimension m.ncols (empty list if trivial).
    """
    if m.ncols == 0:
        return LatticeBasis(0, [])
    if m.nrows == 0:
        return LatticeBasis(m.ncols, IntMatrix.identity(m.ncols).columns())
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(d.nrows, d.ncols)) if d.data[i][i] != 0)
    cols = [v.column(j) for j in range(r, m.ncols)]
    return LatticeBasis(m.ncols, cols)


def left_kernel_basis(m: IntMatrix):
    """Basis of {y : y m = 0} as a LatticeBasis in Z^(nrows)."""
    return kernel_basis(m.transpose())


def saturation(l: LatticeBasis):
    """Saturation sat(L) = (Q L) intersect Z^n, as a LatticeBasis.

    Computed as the integer kernel of a matrix whose rational kernel is the
    span of L, so the result is saturated by construction and contains L.
    """
    if not l.vectors:
        return l
    w = l.matrix()
    t = left_kernel_basis(w)  # rows y with y w = 0
    if not t.vectors:
        # L spans Q^n: saturation is all of Z^n
        return LatticeBasis(l.ambient_dim, IntMatrix.identity(l.ambient_dim).columns())
    tm = IntMatrix.from_columns(t.vectors, nrows=l.ambient_dim).transpose()
    return kernel_basis(tm)


def lattice_index(l: LatticeBasis):
    """Index |sat(L)/L|, computed two independent ways that must agree."""
    if not l.vectors:
        return 1
    via_snf = index_via_invariant_factors(l)
    via_minors = index_via_minor_gcd(l)
    if via_snf != via_minors:  # pragma: no cover - cross-oracle safety net
        raise AssertionError(
            f"lattice index oracles disagree: {via_snf} vs {via_minors}")
    return via_snf


def index_via_invariant_factors(l: LatticeBasis):
    """Product of the invariant factors of the basis matrix."""
    if not l.vectors:
        return 1
    facs = invariant_factors(l.matrix())
    out = 1
    for f in facs:
        out *= f
    return out


def index_via_minor_gcd(l: LatticeBasis):
    """Gcd of all maximal minors of the basis matrix."""
    if not l.vectors:
        return 1
    m = l.matrix()
    k = len(l.vectors)
    g = 0
    for rows in combinations(range(m.nrows), k):
        sub = m.submatrix(rows, range(k))
        g = gcd(g, abs(bareiss_det(sub)))
    if g == 0:
        raise ValueError("basis matrix has rank below its column count")
    return g


def solve_integer(m: IntMatrix, b):
    """One integer solution x of m x = b, or None if none exists."""
    u, d, v = smith_normal_form(m)
    ub = u.mul_vec(tuple(b))
    rdim = min(d.nrows, d.ncols)
    y = [0] * m.ncols
    for i in range(m.nrows):
        di = d.data[i][i] if i < rdim else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return v.mul_vec(tuple(y))

"""Block decompositions of B and their toral/Andean classification.

A row subset Jbar (never a singleton) forces the column set through its
block: the columns of B meeting Jbar.  The block M on (Jbar x those
columns) must be mixed with no more rows than columns; the remaining
block B_J on the complementary rows and columns determines a sublattice
whose saturation is compared against the kernel of A_J.  The class is
read off ranks alone: toral exactly when rank(A_J) = |J| - rank(B_J),
which for square M is equivalent to det(M) != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimitError
from .exact_linalg import (
    IntMatrix,
    LatticeBasis,
    bareiss_det,
    int_rank,
    kernel_basis,
    lattice_index,
    saturation,
)
from .model import HornInput

MAX_ROWS = 30


def _column_is_mixed(col):
    return any(x > 0 for x in col) and any(x < 0 for x in col)


@dataclass(frozen=True)
class Decomposition:
    """One admissible block decomposition of B.

    Index sets are 0-based and sorted; ``label`` renders them 1-based for
    reports.  ``L_basis`` is the saturation of the column span of B_J
    inside Z^J (coordinates indexed by J in increasing order).
    """

    rowset_Jbar: tuple
    colset_M: tuple
    J: tuple
    M: IntMatrix
    N: IntMatrix
    B_J: IntMatrix
    A_J: IntMatrix
    A_Jbar: IntMatrix
    q: int
    p: int
    klass: str  # "toral" | "andean"
    L_basis: LatticeBasis
    g: int

    @property
    def is_toral(self):
        return self.klass == "toral"

    @property
    def label(self):
        inner = ",".join(str(i + 1) for i in self.rowset_Jbar)
        return "Jbar={" + inner + "}"


def enumerate_decompositions(hi: HornInput) -> list[Decomposition]:
    """All block decompositions of B, classified, sorted by (|Jbar|, Jbar).

    The empty row set is always admissible (M empty, B_J = B) and always
    toral.  Row sets of size one are skipped: a single-row block is never
    mixed.  Row sets whose block has more rows than columns are skipped
    as well.
    """
    B, A = hi.B, hi.A
    n, m, d = hi.n, hi.m, hi.d
    if n > MAX_ROWS:
        raise SizeLimitError(f"B has {n} > {MAX_ROWS} rows")
    out = []
    for mask in range(1 << n):
        jbar = tuple(i for i in range(n) if mask >> i & 1)
        q = len(jbar)
        if q == 1:
            continue
        jbar_set = set(jbar)
        colset = tuple(k for k in range(m)
                       if any(B.data[i][k] != 0 for i in jbar))
        p = len(colset)
        if q > p:
            continue
        M = B.submatrix(jbar, colset)
        if not all(_column_is_mixed(M.column(j)) for j in range(p)):
            continue
        J = tuple(i for i in range(n) if i not in jbar_set)
        other_cols = tuple(k for k in range(m) if k not in colset)
        B_J = B.submatrix(J, other_cols)
        N = B.submatrix(J, colset)
        A_J = A.submatrix(range(d), J)
        A_Jbar = A.submatrix(range(d), jbar)
        rank_BJ = int_rank(B_J)
        assert rank_BJ == m - p, "columns through B_J must stay independent"
        rank_AJ = int_rank(A_J)
        klass = "toral" if rank_AJ == len(J) - rank_BJ else "andean"
        L = saturation(LatticeBasis(len(J), B_J.columns()))
        g = lattice_index(LatticeBasis(len(J), B_J.columns()))
        if klass == "toral":
            assert q == p, "toral blocks are square"
            assert q == 0 or bareiss_det(M) != 0, "toral blocks are invertible"
            assert rank_AJ == d, "toral A_J has full rank"
            assert L == kernel_basis(A_J), "toral lattice is the full kernel"
        out.append(Decomposition(
            rowset_Jbar=jbar, colset_M=colset, J=J, M=M, N=N, B_J=B_J,
            A_J=A_J, A_Jbar=A_Jbar, q=q, p=p, klass=klass, L_basis=L, g=g))
    out.sort(key=lambda dec: (len(dec.rowset_Jbar), dec.rowset_Jbar))
    return out


@dataclass(frozen=True)
class AndeanReport:
    """Directions (column spans of A_J over Andean decompositions) and the
    generic-holonomicity verdict.

    Directions are canonical saturated lattice bases of the rational
    column spans; integer translates are not computed, so the set is a
    superset description of where holonomicity can fail.
    """

    directions: tuple  # tuple of LatticeBasis, deduplicated, sorted
    generically_holonomic: bool


def andean_report(decomps, d: int) -> AndeanReport:
    dirs = {}
    for dec in decomps:
        if dec.is_toral:
            continue
        span = saturation(LatticeBasis(d, []) if dec.A_J.ncols == 0
                          else _column_span_basis(dec.A_J))
        dirs[span.vectors] = span
    directions = tuple(dirs[k] for k in sorted(dirs))
    holonomic = all(len(b.vectors) < d for b in directions)
    return AndeanReport(directions=directions, generically_holonomic=holonomic)


def _column_span_basis(m: IntMatrix) -> LatticeBasis:
    """An independent generating subset of the columns of m, as a lattice."""
    cols = []
    rank = 0
    for j in range(m.ncols):
        trial = cols + [m.column(j)]
        r = int_rank(IntMatrix.from_columns(trial, nrows=m.nrows))
        if r > rank:
            cols.append(m.column(j))
            rank = r
    return LatticeBasis(m.nrows, cols)

"""Validation of the defining matrices of a binomial Horn system.

The input is an integer matrix B (n x m, full column rank) whose integer
column span must be mixed: every nonzero vector in it has a strictly
positive and a strictly negative entry.  A companion matrix A spans the
left kernel of B; its columns generate a pointed cone.  Mixedness and
pointedness are decided exactly by Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConventionError
from .exact_linalg import (
    IntMatrix,
    LatticeBasis,
    int_rank,
    invariant_factors,
    left_kernel_basis,
    row_hnf,
)


# -- exact linear feasibility ----------------------------------------------

def _fm_feasible(rows, rhs):
    """Decide { x : rows[i] . x >= rhs[i] } != empty by Fourier-Motzkin.

    Returns (True, x) with a rational witness, or (False, lam) with a
    nonnegative rational Farkas certificate: sum lam_i rows[i] = 0 and
    sum lam_i rhs[i] > 0.
    """
    nvars = len(rows[0]) if rows else 0
    # each inequality carries its multiplier vector over the original rows
    ineqs = []
    for i, (row, c) in enumerate(zip(rows, rhs)):
        mult = [Fraction(0)] * len(rows)
        mult[i] = Fraction(1)
        ineqs.append(([Fraction(x) for x in row], Fraction(c), mult))

    stages = []  # per eliminated variable: the inequalities used for bounds
    for var in range(nvars - 1, -1, -1):
        pos, neg, zero = [], [], []
        for coeffs, c, mult in ineqs:
            if coeffs[var] > 0:
                pos.append((coeffs, c, mult))
            elif coeffs[var] < 0:
                neg.append((coeffs, c, mult))
            else:
                zero.append((coeffs, c, mult))
        stages.append((var, pos, neg))
        new = list(zero)
        for pc, pcst, pmult in pos:
            for nc, ncst, nmult in neg:
                a, b = pc[var], -nc[var]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                cst = b * pcst + a * ncst
                mult = [b * x + a * y for x, y in zip(pmult, nmult)]
                coeffs[var] = Fraction(0)
                if all(x == 0 for x in coeffs) and cst > 0:
                    return False, tuple(mult)
                new.append((coeffs, cst, mult))
        # drop duplicate inequalities up to positive scaling
        seen = {}
        for coeffs, cst, mult in new:
            scale = next((abs(x) for x in coeffs if x != 0), None)
            if scale is None:
                scale = abs(cst) if cst != 0 else Fraction(1)
            key = (tuple(x / scale for x in coeffs), cst / scale)
            if key not in seen:
                seen[key] = (coeffs, cst, mult)
        ineqs = list(seen.values())

    for coeffs, c, mult in ineqs:
        if c > 0:
            return False, tuple(mult)

    # feasible: back-substitute, picking any value between the bounds
    x = [Fraction(0)] * nvars
    for var, pos, neg in reversed(stages):
        lo, hi = None, None
        for coeffs, c, _ in pos:
            # coeffs[var] * x_var >= c - rest  with positive coefficient
            rest = sum(coeffs[j] * x[j] for j in range(nvars) if j != var)
            bound = (c - rest) / coeffs[var]
            lo = bound if lo is None or bound > lo else lo
        for coeffs, c, _ in neg:
            rest = sum(coeffs[j] * x[j] for j in range(nvars) if j != var)
            bound = (c - rest) / coeffs[var]
            hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            x[var] = Fraction(0)
        elif lo is None:
            x[var] = hi
        elif hi is None:
            x[var] = lo
        else:
            x[var] = (lo + hi) / 2
    return True, tuple(x)


def _clear_denominators(v):
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd, lcm
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# -- validation reports ------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    certificate: tuple | None = None  # unmixed vector in the column span


def validate_B(B: IntMatrix) -> ValidationReport:
    """Accept B iff rank(B) equals its column count and the rational column
    span meets the nonnegative orthant only in 0.

    On rejection the report carries a primitive integer certificate: a
    nonzero vector v >= 0 in the column span.
    """
    n, m = B.nrows, B.ncols
    if m == 0:
        return ValidationReport(ok=True)
    if int_rank(B) != m:
        return ValidationReport(ok=False, reason=f"rank(B) < {m}")
    # search for c with B c >= 0 and (B c)_i >= 1 for some coordinate i
    rows = [list(B.row(i)) for i in range(n)]
    for i in range(n):
        sys_rows = list(rows)
        rhs = [0] * n
        sys_rows.append(rows[i])
        rhs.append(1)
        feasible, witness = _fm_feasible(sys_rows, rhs)
        if feasible:
            v = tuple(sum(Fraction(B.data[r][j]) * witness[j] for j in range(m))
                      for r in range(n))
            cert = _clear_denominators(v)
            return ValidationReport(
                ok=False,
                reason="column span contains the unmixed vector "
                       f"{list(cert)}",
                certificate=cert,
            )
    return ValidationReport(ok=True)


@dataclass(frozen=True)
class PointedReport:
    pointed: bool
    functional: tuple | None = None   # h with h . a_j > 0 for all j
    combination: tuple | None = None  # nonneg lambda with sum lambda_j a_j = 0


def is_pointed(A: IntMatrix) -> PointedReport:
    """Decide whether the columns of A lie in a common open half-space.

    True comes with a rational functional h (h . a_j > 0 for every column);
    false comes with a nontrivial nonnegative combination of columns
    summing to zero.
    """
    d, n = A.nrows, A.ncols
    if n == 0:
        return PointedReport(pointed=True, functional=tuple([Fraction(0)] * d))
    if any(all(A.data[i][j] == 0 for i in range(d)) for j in range(n)):
        j = next(j for j in range(n)
                 if all(A.data[i][j] == 0 for i in range(d)))
        lam = [Fraction(0)] * n
        lam[j] = Fraction(1)
        return PointedReport(pointed=False, combination=tuple(lam))
    rows = [[A.data[i][j] for i in range(d)] for j in range(n)]  # a_j as rows
    rhs = [1] * n
    feasible, witness = _fm_feasible(rows, rhs)
    if feasible:
        return PointedReport(pointed=True, functional=witness)
    return PointedReport(pointed=False, combination=witness)


def compute_A(B: IntMatrix) -> IntMatrix:
    """Canonical A for a validated B: the row Hermite basis of the left
    kernel {y : y B = 0}.

    The rows span the full (saturated) left kernel, so the Smith form of
    the result has all invariant factors 1, and the output is a
    deterministic function of B.
    """
    report = validate_B(B)
    if not report.ok:
        raise ConventionError(f"B rejected: {report.reason}",
                              certificate=report.certificate)
    lk = left_kernel_basis(B)
    if not lk.vectors:
        return IntMatrix.zero(0, B.nrows)
    rows = [list(v) for v in lk.vectors]
    return row_hnf(IntMatrix(rows))


@dataclass(frozen=True)
class HornInput:
    """A validated pair (B, A) with derived sizes and certificates."""

    B: IntMatrix
    A: IntMatrix
    n: int
    m: int
    d: int
    pointed_functional: tuple
    a_spans_standard_lattice: bool
    a_column_index: int  # index of ZA inside Z^d (1 when spanning)

    @property
    def beta_dim(self):
        return self.d


def make_horn_input(B: IntMatrix, A: IntMatrix | None = None) -> HornInput:
    """Validate B (and A when supplied) and assemble a HornInput.

    A supplied A must satisfy A B = 0, have full rank d = n - m, and have
    nonzero columns generating a pointed cone.  Whether its columns span
    all of Z^d is recorded but not enforced: published systems are often
    written with an A whose column lattice has finite index in Z^d, and
    every quantity computed here is normalized against the relevant
    lattice rather than Z^d.
    """
    report = validate_B(B)
    if not report.ok:
        raise ConventionError(f"B rejected: {report.reason}",
                              certificate=report.certificate)
    n, m = B.nrows, B.ncols
    d = n - m
    if A is None:
        A = compute_A(B)
    else:
        if A.shape != (d, n):
            raise ConventionError(
                f"A has shape {A.shape}, expected {(d, n)}")
        if not A.mul(B).is_zero():
            raise ConventionError("A B != 0")
        if int_rank(A) != d:
            raise ConventionError(f"rank(A) != {d}")
    if d == 0:
        return HornInput(B=B, A=A, n=n, m=m, d=0,
                         pointed_functional=(),
                         a_spans_standard_lattice=True, a_column_index=1)
    pr = is_pointed(A)
    if not pr.pointed:
        raise ConventionError(
            "columns of A do not lie in an open half-space; "
            f"vanishing combination {list(pr.combination)}")
    facs = invariant_factors(A)
    idx = 1
    for f in facs:
        idx *= f
    spans = len(facs) == d and idx == 1
    return HornInput(B=B, A=A, n=n, m=m, d=d,
                     pointed_functional=pr.functional,
                     a_spans_standard_lattice=spans,
                     a_column_index=idx)


@dataclass(frozen=True)
class Parameter:
    """An exact rational parameter vector in the A-coordinates."""

    beta: tuple

    def __init__(self, beta):
        object.__setattr__(self, "beta", tuple(Fraction(b) for b in beta))

    def __len__(self):
        return len(self.beta)

    def __iter__(self):
        return iter(self.beta)

    def __getitem__(self, i):
        return self.beta[i]


def lattice_contains_columns(l: LatticeBasis, m: IntMatrix) -> bool:
    """True when every column of m lies in the lattice l."""
    return all(l.contains(m.column(j)) for j in range(m.ncols))

"""Construction and verification of truncated Puiseux solution bases.

For every square-invertible block decomposition, every bounded component
representative gamma contributes solutions of the form

    x_Jbar^gamma  sum_v  c_v x_Jbar^{M v} partial_J^{-N v} (f),

where the c_v come from the unique component polynomial normalized to 1
at gamma, and f runs over truncated hypergeometric series for the
column configuration A_J at the shifted parameter.  The number of inner
series per decomposition is the normalized volume, realized through a
fixed triangulation of the cone over A_J; lattice-index many character
twists multiply the count up to the full generic rank when a cyclotomic
order is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Scalar
from .decomp import Decomposition, andean_report, enumerate_decompositions
from .errors import (
    BinomHornError,
    InfiniteRankError,
    ResonanceError,
    VeryGenericError,
)
from .exact_linalg import (
    IntMatrix,
    LatticeBasis,
    _ff,
    _rising,
    column_hnf,
    frac_solve,
    smith_normal_form,
)
from .geometry import (
    cone_triangulation,
    normalized_volume,
    very_generic_check,
    _shift_beta,
)
from .model import HornInput
from .series import (
    BinomialOp,
    EulerOp,
    PuiseuxSeries,
    Support,
    ThetaOp,
    Truncation,
    antiderivative_shift,
    apply_operator,
)
from .subgraph import Component, bounded_atlas


# -- polynomial solutions attached to bounded components ------------------------

def component_polynomial(M: IntMatrix, gamma, component: Component) -> PuiseuxSeries:
    """The unique polynomial solution of the column binomial system of M
    supported on the given bounded component, normalized to 1 at gamma.

    Coefficients propagate along edges by the exact two-sided derivative
    relation; every coefficient is nonzero.
    """
    if not component.bounded:
        raise BinomHornError("component polynomial needs a bounded component")
    gamma = tuple(int(x) for x in gamma)
    pts = set(component.points)
    if gamma not in pts:
        raise BinomHornError("gamma is not a vertex of the component")
    lam = {gamma: Fraction(1)}
    frontier = [gamma]
    cols = [M.column(j) for j in range(M.ncols)]
    while frontier:
        new_frontier = []
        for u in frontier:
            for w in cols:
                wp = tuple(max(x, 0) for x in w)
                wm = tuple(max(-x, 0) for x in w)
                up = tuple(a + b for a, b in zip(u, w))
                if up in pts and up not in lam:
                    num = _point_ff(u, wm)
                    den = _point_ff(up, wp)
                    assert num != 0 and den != 0, "edge factorials are positive"
                    lam[up] = lam[u] * num / den
                    new_frontier.append(up)
                down = tuple(a - b for a, b in zip(u, w))
                if down in pts and down not in lam:
                    num = _point_ff(u, wp)
                    den = _point_ff(down, wm)
                    assert num != 0 and den != 0, "edge factorials are positive"
                    lam[down] = lam[u] * num / den
                    new_frontier.append(down)
        frontier = new_frontier
    if set(lam) != pts:
        raise BinomHornError("component is not edge-connected")
    assert all(v != 0 for v in lam.values()), "all coefficients are nonzero"
    return PuiseuxSeries(M.nrows, lam)


def _point_ff(point, u):
    out = 1
    for x, k in zip(point, u):
        if k:
            out *= _ff(x, k)
    return out


# -- truncated hypergeometric series --------------------------------------------

def _l1_ball(r, T):
    if r == 0:
        yield ()
        return
    for first in range(-T, T + 1):
        for rest in _l1_ball(r - 1, T - abs(first)):
            yield (first,) + rest


def gamma_series(A_J: IntMatrix, L: LatticeBasis, v, T: int,
                 character=None, field_order: int = 1,
                 offset=None) -> PuiseuxSeries:
    """Hypergeometric series with coefficients normalized at the base
    exponent v, truncated to lattice word length at most T.

    The term at lattice offset u carries the falling-factorial /
    shifted-rising-factorial coefficient ratio; an optional character on
    the lattice multiplies each term.  A vanishing denominator raises
    ResonanceError naming the witness coordinate.

    With an integer ``offset`` w the result realizes the inverse
    derivative partial^{-w} of the unshifted series in the solution-space
    sense: the term at u sits at exponent v + w + u and carries the ratio
    of Gamma values at v + 1 and v + w + u + 1 in each coordinate.  This
    differs from integrating term by term exactly when the unshifted
    series has terms on an integration boundary (an integer coordinate
    reaching zero), where honest antiderivatives leave the solution
    space.
    """
    nj = A_J.ncols
    v = tuple(Fraction(x) for x in v)
    if len(v) != nj:
        raise ValueError("exponent length mismatch")
    if L.ambient_dim != nj:
        raise ValueError("lattice ambient mismatch")
    w = tuple(int(x) for x in offset) if offset is not None else (0,) * nj
    if len(w) != nj:
        raise ValueError("offset length mismatch")
    for vec in L.vectors:
        if any(x != 0 for x in A_J.mul_vec(vec)):
            raise BinomHornError("lattice is not in the kernel of A_J")
    terms = {}
    for k in sorted(_l1_ball(L.rank, T)):
        u = tuple(sum(k[i] * L.vectors[i][t] for i in range(L.rank))
                  for t in range(nj))
        num = Fraction(1)
        den = Fraction(1)
        for j in range(nj):
            t = w[j] + u[j]
            if t > 0:
                f = _rising(v[j] + 1, t)
                if f == 0:
                    raise ResonanceError(
                        "rising factorial vanished at coordinate "
                        f"{j + 1} for offset {list(u)}",
                        term=u, coordinate=j)
                den *= f
            elif t < 0:
                num *= _ff(v[j], -t)
        if num == 0:
            continue
        c = Scalar.rational(num / den, field_order)
        if character is not None:
            c = c * character(u)
        if not c.is_zero():
            terms[tuple(a + b + x for a, b, x in zip(v, w, u))] = c
    base = tuple(a + b for a, b in zip(v, w))
    return PuiseuxSeries(
        nj, terms, field_order=field_order,
        truncation=Truncation(basis=L.vectors, bound=T),
        support=Support(alpha=base, translates=((0,) * nj,)))


def embed_series(f: PuiseuxSeries, n: int, positions) -> PuiseuxSeries:
    """Place a series on a subset of a larger variable set (zeros elsewhere)."""
    positions = list(positions)
    if len(positions) != f.nvars:
        raise ValueError("position count mismatch")

    def up(vec, fill=Fraction(0)):
        full = [fill] * n
        for pos, j in enumerate(positions):
            full[j] = vec[pos]
        return tuple(full)

    terms = {up(e): c for e, c in f.terms.items()}
    trunc = None
    if f.truncation is not None:
        trunc = Truncation(
            basis=tuple(up(b, 0) for b in f.truncation.basis),
            bound=f.truncation.bound)
    support = None
    if f.support is not None:
        support = Support(alpha=up(f.support.alpha),
                          translates=tuple(up(t, 0)
                                           for t in f.support.translates))
    return PuiseuxSeries(n, terms, field_order=f.field_order,
                         truncation=trunc, support=support)


# -- assembling one solution -----------------------------------------------------

def _assemble_pieces(dec: Decomposition, gamma, G: PuiseuxSeries, n,
                     piece_builder, field_order, truncation, alpha):
    """Shared assembly skeleton: sum the monomial-times-inner-series pieces
    over the component points, tracking the sheet translates."""
    gamma = tuple(int(x) for x in gamma)
    result_terms = {}
    translates = []
    for pt, c in sorted(G.terms.items()):
        offset = [int(pt[t] - gamma[t]) for t in range(dec.q)]
        v = _solve_integer_exact(dec.M, offset)
        nv = dec.N.mul_vec(v) if dec.q else ()
        piece = piece_builder(v, nv)
        mono = [Fraction(0)] * n
        for t, j in enumerate(dec.rowset_Jbar):
            mono[j] = Fraction(pt[t])
        piece = piece.shift_exponents(mono)
        for e, coeff in piece.terms.items():
            cur = result_terms.get(e)
            val = coeff * c
            result_terms[e] = val if cur is None else cur + val
        lift = [0] * n
        for t, j in enumerate(dec.rowset_Jbar):
            lift[j] = pt[t]
        for pos, j in enumerate(dec.J):
            lift[j] = nv[pos] if dec.q else 0
        translates.append(tuple(lift))
    support = None
    if alpha is not None:
        support = Support(alpha=alpha, translates=tuple(sorted(translates)))
    return PuiseuxSeries(n, result_terms, field_order=field_order,
                         truncation=truncation, support=support)


def assemble_solution(dec: Decomposition, gamma, G: PuiseuxSeries,
                      f: PuiseuxSeries) -> PuiseuxSeries:
    """Attach the component polynomial G at gamma to an inner solution f.

    f must already live on the full variable set, supported on the J
    coordinates.  Every monomial x_Jbar^{gamma + M v} of G multiplies the
    series partial_J^{-N v}(f), realized term by term; with no mixed
    block (q = 0) the result is f itself.  Term-by-term shifts agree with
    the solution-space inverse derivative whenever f has no term on an
    integration boundary; the basis pipeline routes around that caveat by
    rebuilding each shifted piece through gamma_series with an offset.
    """
    n = len(dec.J) + dec.q
    if f.nvars != n:
        raise ValueError("inner solution must live on all variables")

    def build(v, nv):
        shift = [0] * n
        for pos, j in enumerate(dec.J):
            shift[j] = nv[pos] if dec.q else 0
        return antiderivative_shift(f, shift)

    alpha = f.support.alpha if f.support is not None else None
    return _assemble_pieces(dec, gamma, G, n, build, f.field_order,
                            f.truncation, alpha)


def _assemble_via_gamma(dec: Decomposition, gamma, G: PuiseuxSeries, n,
                        v_local, T, character, field_order):
    """Assembly with every inverse-derivative factor realized exactly as a
    shifted hypergeometric series (Gamma-ratio coefficients against the
    unshifted base exponent)."""

    def build(v, nv):
        local = gamma_series(dec.A_J, dec.L_basis, v_local, T,
                             character=character, field_order=field_order,
                             offset=nv if dec.q else None)
        return embed_series(local, n, dec.J)

    base = [Fraction(0)] * n
    for pos, j in enumerate(dec.J):
        base[j] = Fraction(v_local[pos])
    trunc = Truncation(
        basis=tuple(_embed_vec(vec, n, dec.J) for vec in dec.L_basis.vectors),
        bound=T)
    return _assemble_pieces(dec, gamma, G, n, build, field_order, trunc,
                            tuple(base))


def _embed_vec(vec, n, positions):
    full = [0] * n
    for pos, j in enumerate(positions):
        full[j] = vec[pos]
    return tuple(full)


def _solve_integer_exact(M: IntMatrix, rhs):
    if M.nrows == 0:
        return ()
    sol = frac_solve([list(r) for r in M.data], rhs)
    if sol is None or any(x.denominator != 1 for x in sol):
        raise BinomHornError("point is not on the component lattice")
    return tuple(int(x) for x in sol)


# -- characters ------------------------------------------------------------------

def component_characters(dec: Decomposition, field_order: int):
    """The lattice_index(B_J) characters of sat(Z B_J) trivial on Z B_J.

    Returns a list of (index tuple, callable) pairs; the callable maps an
    ambient lattice vector to a Scalar root of unity.  Requires every
    invariant factor of the inclusion to divide the cyclotomic order.
    """
    L = dec.L_basis
    r = L.rank
    if r == 0 or dec.g == 1:
        return [((), lambda u: Scalar.one(field_order))]
    coords = []
    for col in dec.B_J.columns():
        k = L.coordinates(col)
        if k is None:
            raise AssertionError("B_J column outside its saturation")
        coords.append(k)
    C = IntMatrix.from_columns(coords, nrows=r)
    U, D, _ = smith_normal_form(C)
    ds = [D.data[i][i] for i in range(r)]
    if any(x == 0 for x in ds):
        raise AssertionError("sublattice has full rank inside its saturation")
    nontrivial = [i for i, x in enumerate(ds) if x > 1]
    for i in nontrivial:
        if field_order % ds[i] != 0:
            raise BinomHornError(
                f"cyclotomic order {field_order} does not contain the "
                f"required roots of unity (need order {ds[i]})")
    indices = [()]
    for i in nontrivial:
        indices = [t + (k,) for t in indices for k in range(ds[i])]

    def make(t):
        def char(u):
            y = L.coordinates(u)
            if y is None:
                raise BinomHornError("character argument outside the lattice")
            z = U.mul_vec(y)
            exp = 0
            for pos, i in enumerate(nontrivial):
                exp += t[pos] * z[i] * (field_order // ds[i])
            return Scalar.root_of_unity(field_order, exp)
        return char

    return [(t, make(t)) for t in indices]


# -- the solution basis ------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    """One basis element with its combinatorial provenance."""

    series: PuiseuxSeries
    decomposition: str
    rowset: tuple       # 1-based rows of the mixed block
    gamma: tuple
    simplex: tuple      # 1-based column indices of the inner simplex
    character: tuple
    support_rank: int   # dimension of the support lattice

    @property
    def is_monomial(self):
        return self.series.num_terms() == 1


def _cell_exponents(dec: Decomposition, sigma, cell_volume, beta_shifted):
    """The cell_volume exponent choices attached to one triangulation cell.

    sigma lists positions (within J) of a column basis.  Exponents take
    nonnegative integer values on the complementary positions, one choice
    per coset of the projected kernel lattice, and solve the linear
    system on sigma.
    """
    nj = len(dec.J)
    comp = [t for t in range(nj) if t not in set(sigma)]
    L = dec.L_basis
    if len(comp) != L.rank:
        raise AssertionError("complement size must match the lattice rank")
    reps = [()]
    if comp:
        proj = [tuple(vec[t] for t in comp) for vec in L.vectors]
        H = column_hnf(IntMatrix.from_columns(proj))
        if H.ncols != len(comp):
            raise AssertionError("projected lattice must have full rank")
        diag = [H.data[i][i] for i in range(len(comp))]
        reps = [()]
        for dd in diag:
            reps = [t + (i,) for t in reps for i in range(dd)]
    if len(reps) != cell_volume:
        raise AssertionError(
            f"coset count {len(reps)} != cell volume {cell_volume}")
    d = dec.A_J.nrows
    sigma_rows = [[dec.A_J.data[i][t] for t in sigma] for i in range(d)]
    out = []
    for a in sorted(reps):
        rhs = list(beta_shifted)
        for pos, t in enumerate(comp):
            for i in range(d):
                rhs[i] -= dec.A_J.data[i][t] * a[pos]
        sol = frac_solve(sigma_rows, rhs)
        if sol is None:
            raise AssertionError("simplex system must be solvable")
        v = [Fraction(0)] * nj
        for pos, t in enumerate(sigma):
            v[t] = sol[pos]
        for pos, t in enumerate(comp):
            v[t] = Fraction(a[pos])
        out.append(tuple(v))
    return out


def solution_basis(hi: HornInput, beta, T: int = 6, field_root: int = 1,
                   cap: int = 1000) -> list[Solution]:
    """Truncated local solution basis at a very generic rational parameter.

    With field_root = 1 only the character-trivial representatives are
    emitted (one per decomposition, gamma, and triangulation cell coset);
    a cyclotomic order materializes all lattice-index twists, bringing
    the count up to the generic rank.
    """
    beta = tuple(Fraction(b) for b in beta)
    if len(beta) != hi.d:
        raise ValueError(f"beta must have length {hi.d}")
    decomps = enumerate_decompositions(hi)
    rep = andean_report(decomps, hi.d)
    if not rep.generically_holonomic:
        raise InfiniteRankError(
            "generically non-holonomic: a full-dimensional Andean "
            "direction is present")
    torals = [dec for dec in decomps if dec.is_toral]
    atlases = {dec.rowset_Jbar: bounded_atlas(dec.M, cap=cap) for dec in torals}
    violations = []
    for dec in torals:
        vg = very_generic_check(beta, dec, atlases[dec.rowset_Jbar])
        for gamma, facet in vg.violations:
            violations.append((dec.label, gamma, facet))
    if violations:
        raise VeryGenericError(
            "parameter is not very generic; integral support-function "
            f"values at {violations}", violations=violations)
    out = []
    for dec in torals:
        atlas = atlases[dec.rowset_Jbar]
        cells = cone_triangulation(dec.A_J)
        total = sum(vol for _, vol in cells)
        if total != normalized_volume(dec.A_J).value:
            raise AssertionError("triangulation volume mismatch")
        chars = component_characters(dec, field_root) if field_root > 1 \
            else [((), lambda u: Scalar.one(1))]
        for gamma in atlas.representatives:
            comp = next(c for c in atlas.bounded_components
                        if gamma in c.points)
            G = component_polynomial(dec.M, gamma, comp)
            beta_shifted = _shift_beta(beta, dec, gamma)
            for sigma, cellvol in cells:
                for v in _cell_exponents(dec, sigma, cellvol, beta_shifted):
                    for tchar, charfn in chars:
                        F = _assemble_via_gamma(
                            dec, gamma, G, hi.n, v, T,
                            charfn if tchar else None, field_root)
                        out.append(Solution(
                            series=F,
                            decomposition=dec.label,
                            rowset=tuple(i + 1 for i in dec.rowset_Jbar),
                            gamma=gamma,
                            simplex=tuple(dec.J[t] + 1 for t in sigma),
                            character=tchar,
                            support_rank=dec.L_basis.rank))
    out.sort(key=lambda srec: (srec.rowset, srec.gamma, srec.simplex,
                               srec.character))
    return out


# -- verification ---------------------------------------------------------------

@dataclass(frozen=True)
class OperatorCheck:
    operator: str
    ok: bool
    interior_residual: tuple
    boundary_residual: tuple


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checks: tuple


def verify_annihilation(ops, s: PuiseuxSeries) -> VerificationReport:
    """Apply each operator; exact inputs must map to the zero series, and
    truncated inputs must have an empty interior residual.

    A result term is interior when every preimage exponent the operator
    could have pulled it from is either outside the declared support (so
    the full series holds nothing there) or within the generated word
    bound.  Terms with an out-of-bound preimage are reported separately
    as boundary residual: they are expected casualties of truncation.
    """
    checks = []
    for op in ops:
        applied = apply_operator(op, s)
        if s.truncation is None:
            interior = tuple(applied.sorted_terms())
            boundary = ()
        else:
            if isinstance(op, BinomialOp):
                shifts = [op.u_plus]
                if not op.lam.is_zero():
                    shifts.append(op.u_minus)
            elif isinstance(op, EulerOp):
                shifts = [(0,) * s.nvars]
            elif isinstance(op, ThetaOp):
                ek = [0] * s.nvars
                ek[op.k] = 1
                shifts = [(0,) * s.nvars, tuple(ek)]
            else:
                raise TypeError(f"unknown operator type {type(op)!r}")
            interior_list, boundary_list = [], []
            for z, c in applied.sorted_terms():
                covered = all(
                    _covered(s, tuple(a + b for a, b in zip(z, sh)))
                    for sh in shifts)
                (interior_list if covered else boundary_list).append((z, c))
            interior = tuple(interior_list)
            boundary = tuple(boundary_list)
        desc = op.describe() if hasattr(op, "describe") else repr(op)
        checks.append(OperatorCheck(operator=desc, ok=not interior,
                                    interior_residual=interior,
                                    boundary_residual=boundary))
    return VerificationReport(ok=all(c.ok for c in checks),
                              checks=tuple(checks))


def _covered(s: PuiseuxSeries, y):
    """True when the full series value at exponent y is known exactly:
    either y is off every declared sheet, or it lies within the word bound."""
    trunc = s.truncation
    if s.support is None:
        return True
    for b in s.support.sheet_bases():
        word = trunc.word_length(tuple(a - bb for a, bb in zip(y, b)))
        if word is not None and word > trunc.bound:
            return False
    return True

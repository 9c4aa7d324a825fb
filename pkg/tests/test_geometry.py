import random
from fractions import Fraction

import pytest

from binomhorn import (
    IntMatrix,
    bounded_atlas,
    enumerate_decompositions,
    facet_support_functions,
    make_horn_input,
    normalized_volume,
    very_generic_check,
)
from binomhorn.errors import BinomHornError
from binomhorn.exact_linalg import bareiss_det, int_rank
from binomhorn.geometry import cone_triangulation, own_lattice_coordinates


def test_volume_erdelyi(A_erd):
    assert normalized_volume(A_erd).value == 3
    assert normalized_volume(A_erd.submatrix([0, 1], [0, 3])).value == 1


def test_volume_unit_simplex():
    assert normalized_volume(IntMatrix.identity(3)).value == 1


def test_volume_scaled_simplex():
    # [[3,0],[0,3]] spans the lattice 3Z x 3Z; relative to it the volume is 1
    assert normalized_volume(IntMatrix([[3, 0], [0, 3]])).value == 1


def test_volume_ds(A_ds):
    assert normalized_volume(A_ds).value == 3


def test_volume_gauss(B_gauss):
    hi = make_horn_input(B_gauss)
    assert normalized_volume(hi.A).value == 2


def test_volume_degenerate():
    with pytest.raises(BinomHornError):
        normalized_volume(IntMatrix([[0], [0]]))


def hull_edge_volume_2d(A):
    """Independent oracle for d = 2: walk the hull boundary of the column
    points (in own-lattice coordinates) away from the origin and sum the
    |det| of consecutive edge simplices."""
    _, coords = own_lattice_coordinates(A)
    pts = sorted(set(coords))
    origin = (0, 0)
    allpts = [origin] + [tuple(p) for p in pts]
    hull = _convex_hull_2d(allpts)
    i0 = hull.index(origin)
    ordered = hull[i0 + 1:] + hull[:i0]
    total = 0
    for a, b in zip(ordered, ordered[1:]):
        total += abs(a[0] * b[1] - a[1] * b[0])
    return total


def _convex_hull_2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def test_volume_additivity_oracle_2d():
    rng = random.Random(31)
    tried = 0
    while tried < 30:
        n = rng.randint(2, 5)
        A = IntMatrix([[rng.randint(0, 4) + 1 for _ in range(n)],
                       [rng.randint(-3, 3) for _ in range(n)]])
        if int_rank(A) != 2:
            continue
        tried += 1
        assert normalized_volume(A).value == hull_edge_volume_2d(A)


def test_volume_unimodular_invariance():
    # acceptance 7(d): invariance under 50 random unimodular transforms
    rng = random.Random(41)
    done = 0
    while done < 50:
        d = rng.choice([2, 3])
        n = rng.randint(d, d + 3)
        A = IntMatrix([[rng.randint(-4, 4) for _ in range(n)]
                       for _ in range(d)])
        if int_rank(A) == 0:
            continue
        base = normalized_volume(A).value
        U = _random_unimodular(rng, d)
        assert abs(bareiss_det(U)) == 1
        assert normalized_volume(U.mul(A)).value == base
        perm = list(range(n))
        rng.shuffle(perm)
        Ap = IntMatrix([[A.data[i][j] for j in perm] for i in range(d)])
        assert normalized_volume(Ap).value == base
        done += 1


def _random_unimodular(rng, d):
    U = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for _ in range(6):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(d):
            U[i][k] += c * U[j][k]
    return IntMatrix(U)


def test_cone_triangulation_sums_to_volume(A_erd, A_ds):
    for A in (A_erd, A_ds):
        cells = cone_triangulation(A)
        assert sum(v for _, v in cells) == normalized_volume(A).value


def test_support_functions_erdelyi(A_erd):
    sfs = facet_support_functions(A_erd)
    values = sorted(tuple(sf.nu) for sf in sfs)
    # the two facets give the coordinate functionals beta_1 and beta_2
    assert values == [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]


def test_support_functions_scaled():
    sfs = facet_support_functions(IntMatrix([[3, 0], [0, 3]]))
    values = sorted(tuple(sf.nu) for sf in sfs)
    assert values == [(Fraction(0), Fraction(1, 3)), (Fraction(1, 3), Fraction(0))]


def test_support_functions_identity():
    sfs = facet_support_functions(IntMatrix.identity(2))
    values = sorted(tuple(sf.nu) for sf in sfs)
    assert values == [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]


def test_support_function_defining_properties(A_erd, A_ds):
    for A in (A_erd, A_ds):
        lattice, _ = own_lattice_coordinates(A)
        for sf in facet_support_functions(A):
            vals = [sf.value(A.column(j)) for j in range(A.ncols)]
            assert all(v >= 0 for v in vals)
            zero_set = tuple(j for j, v in enumerate(vals) if v == 0)
            assert zero_set == sf.facet
            # primitivity: values on a lattice basis generate exactly Z
            gens = [sf.value(v) for v in lattice.vectors]
            from math import gcd
            den = 1
            for g in gens:
                den = den * g.denominator // gcd(den, g.denominator)
            assert den == 1  # all values integral
            g_all = 0
            for g in gens:
                g_all = gcd(g_all, int(g))
            assert g_all == 1


def test_support_functions_rank_error(B_nh, A_nh):
    with pytest.raises(BinomHornError):
        facet_support_functions(A_nh.submatrix([0, 1], [2, 3]))


def test_very_generic_erdelyi(B_erd, A_erd):
    hi = make_horn_input(B_erd, A_erd)
    decs = enumerate_decompositions(hi)
    atlases = {d.rowset_Jbar: bounded_atlas(d.M) for d in decs}
    beta = (Fraction(1, 2), Fraction(1, 3))
    d23 = decs[1]
    rep = very_generic_check(beta, d23, atlases[(1, 2)])
    assert rep.ok
    # the shifted values are 1/6 and 1/9
    sfs = facet_support_functions(d23.A_J)
    vals = sorted(sf.value(beta) for sf in sfs)
    assert vals == [Fraction(1, 9), Fraction(1, 6)]
    # beta = (1, 2) fails on the empty decomposition: a support value is 2
    rep_bad = very_generic_check((Fraction(1), Fraction(2)), decs[0],
                                 atlases[()])
    assert not rep_bad.ok
    assert rep_bad.violations


def test_very_generic_shift_invariance(B_erd, A_erd):
    # adding A_J gamma for integer gamma never changes nonresonance
    hi = make_horn_input(B_erd, A_erd)
    dec = enumerate_decompositions(hi)[0]
    sfs = facet_support_functions(dec.A_J)
    rng = random.Random(59)
    for _ in range(20):
        beta = (Fraction(rng.randint(1, 9), 7), Fraction(rng.randint(1, 9), 5))
        gamma = [rng.randint(-3, 3) for _ in range(4)]
        shifted = tuple(
            beta[i] + sum(dec.A_J.data[i][t] * gamma[t] for t in range(4))
            for i in range(2))
        for sf in sfs:
            assert (sf.value(beta).denominator == 1) == \
                   (sf.value(shifted).denominator == 1)

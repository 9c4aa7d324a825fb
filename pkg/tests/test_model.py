import random
from fractions import Fraction

import pytest

from binomhorn import (
    ConventionError,
    IntMatrix,
    Parameter,
    compute_A,
    is_pointed,
    kernel_basis,
    make_horn_input,
    validate_B,
)
from binomhorn.exact_linalg import LatticeBasis, int_rank, invariant_factors


def test_validate_accepts_fixtures(B_erd, B_gauss, B_ds, B_nh, B_him):
    for B in (B_erd, B_gauss, B_ds, B_nh, B_him):
        assert validate_B(B).ok


def test_validate_rejects_unmixed_column():
    vr = validate_B(IntMatrix([[1], [0], [0]]))
    assert not vr.ok
    assert vr.certificate == (1, 0, 0)


def test_validate_rejects_rank_deficient():
    vr = validate_B(IntMatrix([[1, 2], [-1, -2], [1, 2]]))
    assert not vr.ok
    assert "rank" in vr.reason


def test_validate_rejects_hidden_unmixed_combination():
    # each column is mixed but their sum is (1, 0, 1) >= 0
    B = IntMatrix([[2, -1], [-1, 1], [1, 0]])
    vr = validate_B(B)
    assert not vr.ok
    v = vr.certificate
    assert any(x > 0 for x in v) and not any(x < 0 for x in v)
    from binomhorn.exact_linalg import frac_solve
    assert frac_solve([list(r) for r in B.data], list(v)) is not None


def test_validate_rejects_square_full_rank():
    # m = n: the rational column span is everything, never mixed
    vr = validate_B(IntMatrix([[1, 0], [0, 1]]))
    assert not vr.ok


def test_compute_a_defining_property(B_erd, B_nh, B_ds, B_gauss):
    for B in (B_erd, B_nh, B_ds, B_gauss):
        A = compute_A(B)
        assert A.mul(B).is_zero()
        assert int_rank(A) == B.nrows - B.ncols
        # columns span the full standard lattice
        assert invariant_factors(A) == (1,) * A.nrows
        # and the kernel of A contains every column of B
        ker = kernel_basis(A)
        for k in range(B.ncols):
            assert ker.contains(B.column(k))


def test_compute_a_b_nh_is_row_equivalent_to_published(B_nh, A_nh):
    A = compute_A(B_nh)
    mine = LatticeBasis(4, [tuple(r) for r in A.data])
    published = LatticeBasis(4, [tuple(r) for r in A_nh.data])
    assert mine == published  # same row lattice, hence unimodularly equivalent


def test_compute_a_b_erd_vs_published(B_erd, A_erd):
    # the published matrix spans an index-3 sublattice of the left kernel,
    # so it is rationally but not unimodularly row-equivalent to compute_A
    A = compute_A(B_erd)
    mine = LatticeBasis(4, [tuple(r) for r in A.data])
    for r in A_erd.data:
        assert mine.contains(tuple(r))
    published = LatticeBasis(4, [tuple(r) for r in A_erd.data])
    assert not all(published.contains(v) for v in mine.vectors)
    assert int_rank(A_erd) == int_rank(A) == 2


def test_compute_a_deterministic(B_erd):
    assert compute_A(B_erd) == compute_A(B_erd)
    assert repr(compute_A(B_erd)) == repr(compute_A(B_erd))


def test_is_pointed_a_erd(A_erd):
    pr = is_pointed(A_erd)
    assert pr.pointed
    h = pr.functional
    for j in range(4):
        assert sum(h[i] * A_erd.data[i][j] for i in range(2)) > 0
    # h = (1,1) works and gives the value 3 on every column
    assert all(sum(A_erd.data[i][j] for i in range(2)) == 3 for j in range(4))


def test_is_pointed_opposite_vectors():
    pr = is_pointed(IntMatrix([[1, -1], [0, 0]]))
    assert not pr.pointed
    lam = pr.combination
    assert any(x > 0 for x in lam) and all(x >= 0 for x in lam)
    # the combination really sums to zero
    assert lam[0] * 1 + lam[1] * (-1) == 0


def test_is_pointed_a_him(A_him):
    assert is_pointed(A_him).pointed


def test_mixedness_pointedness_equivalence():
    # random pointed A: its kernel B always validates
    rng = random.Random(5)
    produced = 0
    while produced < 20:
        d = rng.randint(1, 2)
        n = rng.randint(d + 1, d + 3)
        A = IntMatrix([[rng.randint(-3, 3) for _ in range(n)]
                       for _ in range(d)])
        if int_rank(A) != d or not is_pointed(A).pointed:
            continue
        B = IntMatrix.from_columns(kernel_basis(A).vectors, nrows=n)
        if B.ncols != n - d:
            continue
        assert validate_B(B).ok
        produced += 1


def test_make_horn_input_accepts_published_pairs(B_erd, A_erd, B_ds, A_ds,
                                                 B_nh, A_nh, B_him, A_him):
    for B, A in ((B_erd, A_erd), (B_ds, A_ds), (B_nh, A_nh), (B_him, A_him)):
        hi = make_horn_input(B, A)
        assert hi.d == B.nrows - B.ncols
        assert hi.A == A
    # the published Erdelyi A spans an index 3 column lattice
    assert make_horn_input(B_erd, A_erd).a_column_index == 3
    assert make_horn_input(B_ds, A_ds).a_column_index == 1


def test_make_horn_input_rejects_bad_a(B_erd):
    with pytest.raises(ConventionError):
        make_horn_input(B_erd, IntMatrix([[1, 0, 0, 0], [0, 1, 0, 0]]))
    with pytest.raises(ConventionError):
        make_horn_input(B_erd, IntMatrix([[3, 2, 1, 0]]))


def test_make_horn_input_rejects_bad_b():
    with pytest.raises(ConventionError):
        make_horn_input(IntMatrix([[1], [0]]))


def test_parameter_parsing():
    p = Parameter(["1/2", Fraction(1, 3)])
    assert p.beta == (Fraction(1, 2), Fraction(1, 3))
    assert len(p) == 2

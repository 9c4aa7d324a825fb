import random
from itertools import product

import pytest

from binomhorn import CapExceededError, IntMatrix, bounded_atlas, component_of
from binomhorn.exact_linalg import bareiss_det


# -- independent oracle: component search restricted to a box -------------------

def box_component(M, seed, hi):
    """BFS component of seed within [0, hi]^q; exact when the true component
    stays strictly inside the box."""
    q = M.nrows
    cols = [M.column(j) for j in range(M.ncols)]
    steps = [c for c in cols] + [tuple(-x for x in c) for c in cols]
    seen = {seed}
    queue = [seed]
    while queue:
        u = queue.pop()
        for s in steps:
            v = tuple(a + b for a, b in zip(u, s))
            if all(0 <= x <= hi for x in v) and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def has_comparable_pair(points):
    pts = sorted(points)
    for i, u in enumerate(pts):
        for v in pts[i + 1:]:
            if all(a <= b for a, b in zip(u, v)):
                return True
    return False


def random_mixed_invertible(rng, q):
    while True:
        m = [[rng.randint(-3, 3) for _ in range(q)] for _ in range(q)]
        M = IntMatrix(m)
        ok = all(any(M.data[i][j] > 0 for i in range(q))
                 and any(M.data[i][j] < 0 for i in range(q))
                 for j in range(q))
        if ok and bareiss_det(M) != 0:
            return M


def test_component_m3_degree_one(M3):
    c = component_of(M3, (0, 0, 1))
    assert c.bounded
    assert set(c.points) == {p for p in product(range(2), repeat=3)
                             if sum(p) == 1}


def test_component_m3_degree_four_unbounded(M3):
    c = component_of(M3, (4, 0, 0))
    assert not c.bounded
    u, v = c.witness
    assert u != v and all(a <= b for a, b in zip(u, v))
    assert u in c.points and v in c.points


def test_component_m_erd23_witness(M_erd23):
    c = component_of(M_erd23, (1, 0))
    assert not c.bounded
    assert c.witness == ((1, 0), (2, 1))


def test_atlas_m3(M3):
    atlas = bounded_atlas(M3)
    assert atlas.mu == 4
    assert [c.size for c in atlas.bounded_components] == [1, 3, 6, 10]
    for n, comp in enumerate(atlas.bounded_components):
        assert set(comp.points) == {p for p in product(range(n + 1), repeat=3)
                                    if sum(p) == n}


def test_atlas_m_erd23(M_erd23):
    atlas = bounded_atlas(M_erd23)
    assert atlas.mu == 1
    assert atlas.representatives == ((0, 0),)
    assert atlas.unbounded_min_gens == ((0, 1), (1, 0))


def test_atlas_empty_matrix():
    atlas = bounded_atlas(IntMatrix.zero(0, 0))
    assert atlas.mu == 1
    assert atlas.representatives == ((),)


def test_atlas_cap_error():
    # columns (1,-1) and (-1,1): every antidiagonal is a bounded component,
    # so there are infinitely many and closure never certifies
    M = IntMatrix([[1, -1], [-1, 1]])
    with pytest.raises(CapExceededError):
        bounded_atlas(M, cap=12)


def test_dickson_equivalence_against_box_oracle():
    # acceptance 7(a): bounded <=> no comparable pair, cross-checked in a box.
    # A standalone mixed invertible M may still have infinitely many bounded
    # components (only blocks of valid systems are guaranteed finiteness), so
    # capped instances are accepted as the documented error path and skipped.
    rng = random.Random(101)
    checked = 0
    done = 0
    atlases = []
    while done < 50:
        q = rng.choice([2, 3])
        M = random_mixed_invertible(rng, q)
        try:
            atlas = bounded_atlas(M, cap=25)
        except CapExceededError:
            continue
        done += 1
        atlases.append((M, atlas))
        for comp in atlas.bounded_components:
            assert not has_comparable_pair(comp.points)
            if max(max(p) for p in comp.points) <= 8:
                # component fits well inside the box: oracle sees it whole
                assert box_component(M, comp.points[0], 12) == set(comp.points)
                checked += 1
        seed = tuple(rng.randint(0, 2) for _ in range(q))
        c = component_of(M, seed)
        if not c.bounded:
            u, v = c.witness
            assert u != v and all(a <= b for a, b in zip(u, v))
    assert checked >= 50  # the singleton at the origin alone gives one per M
    # acceptance 7(e): up-closure of the unbounded union in the explored box
    for M, atlas in atlases:
        q = M.nrows
        level = atlas.closure_level
        for p, is_bounded in atlas.classification.items():
            if is_bounded:
                continue
            for i in range(q):
                up = p[:i] + (p[i] + 1,) + p[i + 1:]
                if sum(up) <= level and up in atlas.classification:
                    assert atlas.classification[up] is False


def test_partition_inside_box(M3, M_erd23):
    # bounded components are disjoint and cover exactly the complement of
    # the staircase over the minimal generators
    for M in (M3, M_erd23):
        atlas = bounded_atlas(M)
        q = M.nrows
        level = atlas.closure_level
        union = {}
        for ci, comp in enumerate(atlas.bounded_components):
            for p in comp.points:
                assert p not in union
                union[p] = ci
        for p in (pt for pt in product(range(level + 1), repeat=q)
                  if sum(pt) <= level):
            in_upset = any(all(a >= b for a, b in zip(p, g))
                           for g in atlas.unbounded_min_gens)
            assert in_upset == (p not in union)


def test_mu_invariance_row_permutation_and_column_negation():
    rng = random.Random(17)
    for _ in range(12):
        q = rng.choice([2, 3])
        M = random_mixed_invertible(rng, q)
        try:
            mu = bounded_atlas(M, cap=25).mu
        except CapExceededError:
            continue
        perm = list(range(q))
        rng.shuffle(perm)
        Mp = IntMatrix([[M.data[perm[i]][j] for j in range(q)]
                        for i in range(q)])
        assert bounded_atlas(Mp, cap=25).mu == mu
        j = rng.randrange(q)
        Mn = IntMatrix([[(-1 if k == j else 1) * M.data[i][k]
                         for k in range(q)] for i in range(q)])
        assert bounded_atlas(Mn, cap=25).mu == mu

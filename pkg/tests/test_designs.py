"""Finite fields, Steiner systems, planes, MOLS, transversal designs."""

import itertools

import pytest

from pentgeo.designs import (
    Gdd,
    SteinerSystem,
    affine_plane,
    field,
    mols,
    prime_power,
    projective_plane,
    single_block_system,
    sts,
    uniform_gdd,
    verify_gdd,
    verify_steiner,
)
from pentgeo.errors import (
    FieldTooLarge,
    GroupPairCovered,
    Inadmissible,
    NoConstructionAvailable,
    NotPrimePower,
    PairDoubled,
    PairMissing,
    ParameterDomain,
    TooManySquares,
)

PRIME_POWERS_TO_49 = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49)


def all_pairs_once(blocks, points):
    seen = set()
    for blk in blocks:
        for p in itertools.combinations(sorted(blk), 2):
            assert p not in seen
            seen.add(p)
    want = set(itertools.combinations(range(points), 2))
    assert seen == want


def test_prime_power():
    assert prime_power(4) == (2, 2)
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(97) == (97, 1)
    assert prime_power(6) is None
    assert prime_power(12) is None
    assert prime_power(1) is None
    assert prime_power(0) is None


def test_field_known_products():
    assert field(4).mul(2, 2) == 3
    assert field(9).mul(3, 3) == 2


def test_field_inverses():
    for q in (5, 8, 9, 27):
        f = field(q)
        for a in range(1, q):
            assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ParameterDomain):
        field(5).inv(0)


def test_field_distributive_spot():
    f = field(16)
    for a in range(16):
        for b in range(16):
            assert f.mul(2, f.add(a, b)) == f.add(f.mul(2, a), f.mul(2, b))


def test_every_small_prime_power_builds():
    for q in PRIME_POWERS_TO_49:
        assert field(q).q == q


def test_field_rejections():
    for q in (6, 10, 12, 15):
        with pytest.raises(NotPrimePower):
            field(q)
    for q in (53, 64, 121):
        with pytest.raises(FieldTooLarge):
            field(q)


@pytest.mark.parametrize("w", [3, 7, 9, 13, 15, 19, 21, 25, 27, 31])
def test_sts(w):
    system = sts(w)
    assert system.k == 3 and system.w == w
    assert len(system.blocks) == w * (w - 1) // 6
    all_pairs_once(system.blocks, w)


def test_sts_rejects_inadmissible():
    for w in (2, 5, 11, 17):
        with pytest.raises(Inadmissible):
            sts(w)


def test_single_block_system():
    system = single_block_system(4)
    assert system.blocks == frozenset({(0, 1, 2, 3)})
    verify_steiner(system)
    with pytest.raises(ParameterDomain):
        single_block_system(1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_affine_plane(q):
    plane = affine_plane(q)
    assert plane.k == q and plane.w == q * q
    assert len(plane.blocks) == q * (q + 1)
    all_pairs_once(plane.blocks, q * q)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_projective_plane(q):
    plane = projective_plane(q)
    assert plane.k == q + 1 and plane.w == q * q + q + 1
    assert len(plane.blocks) == q * q + q + 1
    all_pairs_once(plane.blocks, plane.w)


def test_mols_are_orthogonal_latin_squares():
    squares = mols(5, 3)
    assert len(squares) == 3
    for sq in squares:
        for row in sq:
            assert sorted(row) == list(range(5))
        for col in zip(*sq):
            assert sorted(col) == list(range(5))
    for a, b in itertools.combinations(squares, 2):
        pairs = {(a[x][y], b[x][y]) for x in range(5) for y in range(5)}
        assert len(pairs) == 25


def test_mols_errors():
    with pytest.raises(TooManySquares):
        mols(4, 4)
    with pytest.raises(ParameterDomain):
        mols(4, 0)
    with pytest.raises(NotPrimePower):
        mols(6, 1)


@pytest.mark.parametrize("k,g", [(3, 2), (3, 5), (3, 14), (4, 3), (4, 5), (5, 4)])
def test_uniform_gdd(k, g):
    design = uniform_gdd(k, g)
    assert design.k == k
    assert design.n == k * g
    assert design.group_type() == {g: k}
    assert len(design.blocks) == g * g
    verify_gdd(design)


def test_uniform_gdd_errors():
    with pytest.raises(ParameterDomain):
        uniform_gdd(2, 4)
    with pytest.raises(ParameterDomain):
        uniform_gdd(3, 1)
    with pytest.raises(NoConstructionAvailable):
        uniform_gdd(4, 6)  # needs MOLS of side 6
    with pytest.raises(NoConstructionAvailable):
        uniform_gdd(5, 2)  # needs 3 MOLS of side 2


def test_verify_steiner_negatives():
    good = sts(7)
    missing = SteinerSystem(k=3, w=7, blocks=frozenset(list(good.blocks)[:-1]))
    with pytest.raises(PairMissing):
        verify_steiner(missing)

    doubled = SteinerSystem(k=3, w=9, blocks=sts(9).blocks | {(0, 1, 8)})
    with pytest.raises(PairDoubled):
        verify_steiner(doubled)

    with pytest.raises(ParameterDomain):
        verify_steiner(SteinerSystem(k=3, w=2, blocks=frozenset()))
    with pytest.raises(ParameterDomain):
        verify_steiner(SteinerSystem(k=3, w=7, blocks=frozenset({(0, 1)})))


def test_verify_gdd_negatives():
    base = uniform_gdd(3, 3)

    overlap = Gdd(k=3, groups=((0, 1), (1, 2)), blocks=frozenset())
    with pytest.raises(ParameterDomain):
        verify_gdd(overlap)

    gappy = Gdd(k=3, groups=((0, 1), (3, 4)), blocks=frozenset())
    with pytest.raises(ParameterDomain):
        verify_gdd(gappy)

    intra = Gdd(k=3, groups=((0, 1), (2, 3), (4, 5)), blocks=frozenset({(0, 1, 2)}))
    with pytest.raises(GroupPairCovered):
        verify_gdd(intra)

    doubled = Gdd(k=3, groups=base.groups, blocks=base.blocks | {(0, 4, 8)})
    with pytest.raises(PairDoubled):
        verify_gdd(doubled)

    short = Gdd(k=3, groups=base.groups, blocks=frozenset(list(base.blocks)[:-1]))
    with pytest.raises(PairMissing):
        verify_gdd(short)

    bad_block = Gdd(k=3, groups=base.groups, blocks=frozenset({(0, 3)}))
    with pytest.raises(ParameterDomain):
        verify_gdd(bad_block)


def test_gdd_group_type_mixed():
    d = Gdd(k=3, groups=((0, 1), (2, 3), (4, 5, 6)), blocks=frozenset())
    assert d.group_type() == {2: 2, 3: 1}
    assert d.n == 7

"""Finite groupoids: validation errors that name the broken cell, the
cyclic nerve, sectors, the inertia groupoid and the loop reduction."""

import pytest

from orbistar.groupoids import (GroupoidError, burghelea_space,
                                convolution_algebra, disjoint_union,
                                inertia_groupoid, isotropy_conjugacy_count,
                                loops, object_orbits, one_object_groupoid,
                                sectors, transformation_groupoid,
                                validate_groupoid,
                                verify_reduction_chain_map,
                                verify_sector_decomposition)
from orbistar.homology import cyclic_group_table

Z2_TABLE = cyclic_group_table(2)
S3_PERMS = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
_S3_INDEX = {p: i for i, p in enumerate(S3_PERMS)}
S3_TABLE = [[_S3_INDEX[tuple(p[q[x]] for x in range(3))] for q in S3_PERMS]
            for p in S3_PERMS]
S3_PERMS = [list(p) for p in S3_PERMS]

Z2_POINT = transformation_groupoid(1, [[0], [0]], Z2_TABLE)
Z2_SWAP = transformation_groupoid(2, [[0, 1], [1, 0]], Z2_TABLE)
S3_THREE = transformation_groupoid(3, S3_PERMS, S3_TABLE)


def test_s3_table_is_a_group():
    one_object_groupoid(S3_TABLE)  # validates all axioms


def test_perms_realize_the_table():
    for g in range(6):
        for h in range(6):
            composed = [S3_PERMS[g][S3_PERMS[h][x]] for x in range(3)]
            assert composed == S3_PERMS[S3_TABLE[g][h]]


def test_broken_associativity_names_the_triple():
    # Klein four-group table with one composition cell corrupted: every
    # unit and inverse law still holds, only associativity can catch it
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    table[1][2] = 0  # should be 3
    compose = {(g, h): table[g][h] for g in range(4) for h in range(4)}
    with pytest.raises(GroupoidError) as err:
        validate_groupoid(1, [0] * 4, [0] * 4, [0], [0, 1, 2, 3], compose)
    assert "associativity" in str(err.value) or "!= unit" in str(err.value)


def test_wrong_endpoints_detected():
    # a single non-identity loop at one of two objects, composed wrongly
    with pytest.raises(GroupoidError):
        validate_groupoid(2, [0, 1, 0], [0, 1, 0], [0, 1], [0, 1, 2],
                          {(0, 0): 0, (1, 1): 1, (0, 2): 2, (2, 0): 2,
                           (2, 2): 1})  # (2,2) lands at the wrong object


def test_burghelea_space_counts():
    # one object, Z/2: strings are unconstrained words
    assert len(burghelea_space(Z2_POINT, 1)) == 4
    # two swapped points: cyclic composability pins the second arrow
    assert len(burghelea_space(Z2_SWAP, 1)) == 4


def test_sectors_of_presets():
    assert len(sectors(Z2_POINT)) == 2
    assert len(sectors(Z2_SWAP)) == 1
    assert len(sectors(S3_THREE)) == 2


def test_object_orbits_and_isotropy():
    assert object_orbits(Z2_SWAP) == [(0, 1)]
    assert isotropy_conjugacy_count(Z2_SWAP, 0) == 1
    assert object_orbits(S3_THREE) == [(0, 1, 2)]
    # stabilizer of a point is Z/2: two conjugacy classes
    assert isotropy_conjugacy_count(S3_THREE, 0) == 2


@pytest.mark.parametrize("G,expected_hh0",
                         [(Z2_POINT, 2), (Z2_SWAP, 1), (S3_THREE, 2)])
def test_sector_decomposition(G, expected_hh0):
    report = verify_sector_decomposition(G)
    assert report["ok"], report
    assert report["hh0"] == expected_hh0
    assert all(d == 1 for d in report["per_sector"])


@pytest.mark.parametrize("G", [Z2_POINT, Z2_SWAP, S3_THREE])
def test_reduction_is_chain_map(G):
    assert verify_reduction_chain_map(G, 2)["ok"]


@pytest.mark.parametrize("G", [Z2_POINT, Z2_SWAP, S3_THREE])
def test_inertia_theta(G):
    inert = inertia_groupoid(G)
    assert inert.theta_central()
    orders = inert.theta_orders()
    assert len(orders) == len(loops(G))
    assert all(o >= 1 for o in orders)


def test_inertia_of_swap_is_transitive_on_trivial_sector():
    inert = inertia_groupoid(Z2_SWAP)
    # 4 loops in Z2_SWAP? no: loops are the two units only
    assert len(inert.base_loops) == len(loops(Z2_SWAP))
    assert sorted(map(len, object_orbits(inert.groupoid))) == \
        sorted(len(s.members) for s in sectors(Z2_SWAP))


def test_disjoint_union_adds_sectors():
    both = disjoint_union(Z2_POINT, Z2_SWAP)
    assert len(sectors(both)) == len(sectors(Z2_POINT)) + len(sectors(Z2_SWAP))
    report = verify_sector_decomposition(both)
    assert report["ok"]


def test_convolution_algebra_unit():
    A = convolution_algebra(S3_THREE)
    assert A.dim == S3_THREE.n_arrows

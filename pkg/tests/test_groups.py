"""Finite matrix groups: closure, conjugacy data, fixed-space splittings
and Molien-type invariant dimension counts."""

from fractions import Fraction

import pytest

from orbistar.groups import (GroupClosureError, conjugacy_classes,
                             fixed_subspace_decomposition, generate_group,
                             molien_dims, trace_sym_power, trace_wedge_power)
from orbistar.scalars import Cyclotomic

ORDER = 12


def cyc(rows, order=ORDER):
    return [[Cyclotomic.from_rational(v, order) for v in row] for row in rows]


MINUS_I = [[-1, 0], [0, -1]]
ROT4 = [[0, -1], [1, 0]]
S3_GENS = [
    # permutation matrices for (12) and (123), doubled on R^3 (+) R^3
    [[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
     [0, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]],
    [[0, 0, 1, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0],
     [0, 0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]],
]


def test_closure_sizes():
    assert len(generate_group([cyc(MINUS_I)], ORDER)) == 2
    assert len(generate_group([cyc(ROT4, 4)], 4)) == 4
    assert len(generate_group([cyc(g) for g in S3_GENS], ORDER)) == 6


def test_closure_bound():
    with pytest.raises(GroupClosureError):
        generate_group([cyc(ROT4, 4)], 4, max_order=3)


def test_singular_generator_rejected():
    with pytest.raises(ValueError):
        generate_group([cyc([[1, 1], [1, 1]])], ORDER)


def test_table_consistency():
    group = generate_group([cyc(ROT4, 4)], 4)
    n = len(group)
    for i in range(n):
        assert group.multiply(i, group.inverse(i)) == group.identity
        assert group.multiply(group.identity, i) == i


def test_conjugacy_classes_s3():
    group = generate_group([cyc(g) for g in S3_GENS], ORDER)
    classes = conjugacy_classes(group)
    sizes = sorted(len(c.members) for c in classes)
    assert sizes == [1, 2, 3]
    for cls in classes:
        assert len(cls.members) * len(cls.centralizer) == 6


def test_fixed_space_decomposition():
    fixed = fixed_subspace_decomposition(cyc([[1, 0], [0, -1]]), ORDER)
    assert fixed.fixed_dim == 1
    assert fixed.codimension == 1
    assert fixed.gamma_perp == [[Cyclotomic.from_rational(-1, ORDER)]]
    full = fixed_subspace_decomposition(cyc(MINUS_I), ORDER)
    assert full.fixed_dim == 0 and full.codimension == 2


def test_rotation_has_no_real_fixed_vectors():
    fixed = fixed_subspace_decomposition(cyc(ROT4, 4), 4)
    assert fixed.fixed_dim == 0


def test_sym_and_wedge_traces():
    m = cyc([[2, 0], [0, 3]])
    assert trace_sym_power(m, 2, ORDER) == \
        Cyclotomic.from_rational(4 + 6 + 9, ORDER)
    assert trace_wedge_power(m, 2, ORDER) == Cyclotomic.from_rational(6, ORDER)
    assert trace_wedge_power(m, 0, ORDER) == Cyclotomic.one(ORDER)


def test_molien_z2_even_polynomials():
    group = generate_group([cyc(MINUS_I)], ORDER)
    identity_fixed = fixed_subspace_decomposition(
        cyc([[1, 0], [0, 1]]), ORDER)
    dims = [molien_dims(group, [0, 1], identity_fixed, 0, d)
            for d in range(5)]
    assert dims == [1, 0, 3, 0, 5]


def test_molien_s3_invariant_functions():
    group = generate_group([cyc(g) for g in S3_GENS], ORDER)
    identity_fixed = fixed_subspace_decomposition(
        group.element(group.identity), ORDER)
    everyone = list(range(len(group)))
    # degree 1: the doubled rep has two copies of x+y+z
    assert molien_dims(group, everyone, identity_fixed, 0, 1) == 2

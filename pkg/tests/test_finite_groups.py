"""Finite group tables, seminorms and isometric actions."""
import itertools
from fractions import Fraction

import pytest

from conftest import make_space, split_space
from nafree.errors import InputError, PreconditionError
from nafree.finite_groups import (
    FiniteGroupTable,
    IsometricAction,
    SeminormTable,
    metric_from_seminorm,
    seminorm_from_action,
    seminorm_from_subgroup,
    subgroup_from_seminorm,
)


def test_cyclic_group_axioms():
    g = FiniteGroupTable.cyclic(4)
    assert g.order == 4
    assert g.identity == 0
    assert g.inv[1] == 3
    assert not g.is_boolean()
    assert FiniteGroupTable.boolean_power(2).is_boolean()


def test_non_associative_table_rejected():
    # mul[a][b] = a (right projection) has no two-sided identity
    with pytest.raises(InputError):
        FiniteGroupTable(((0, 0), (1, 1)))


def test_from_permutations_closes():
    table, elems = FiniteGroupTable.from_permutations([(1, 0, 2), (0, 2, 1)])
    assert table.order == 6  # the two transpositions generate S_3
    assert elems[table.identity] == (0, 1, 2)


def test_seminorm_from_subgroup_z4():
    g = FiniteGroupTable.cyclic(4)
    p = seminorm_from_subgroup(g, {0, 2})
    assert p.value == (0, 1, 0, 1)
    assert seminorm_from_subgroup(g, range(4)).value == (0, 0, 0, 0)
    assert seminorm_from_subgroup(g, {0}).value == (0, 1, 1, 1)


def test_seminorm_from_non_subgroup_rejected():
    with pytest.raises(PreconditionError):
        seminorm_from_subgroup(FiniteGroupTable.cyclic(4), {0, 1})


def test_subgroup_from_seminorm_levels():
    g = FiniteGroupTable.cyclic(4)
    p = seminorm_from_subgroup(g, {0, 2})
    assert subgroup_from_seminorm(p, 1).elements == frozenset({0, 2})
    assert subgroup_from_seminorm(p, 5).elements == frozenset(range(4))
    norm = seminorm_from_subgroup(g, {0})
    assert subgroup_from_seminorm(norm, Fraction(1, 2)).elements == frozenset({0})
    with pytest.raises(PreconditionError):
        subgroup_from_seminorm(p, 0)


def test_subgroup_seminorm_round_trip():
    g = FiniteGroupTable.cyclic(6)
    for h in ({0}, {0, 3}, {0, 2, 4}, set(range(6))):
        p = seminorm_from_subgroup(g, h)
        assert subgroup_from_seminorm(p, 1).elements == frozenset(h)


def test_subgroup_from_abelian_seminorm_is_normal():
    g = FiniteGroupTable.cyclic(4)
    p = seminorm_from_subgroup(g, {0, 2})
    assert p.is_invariant()
    assert subgroup_from_seminorm(p, 1).is_normal


def test_seminorm_table_validation():
    g = FiniteGroupTable.cyclic(2)
    with pytest.raises(InputError):
        SeminormTable(g, (1, 0))  # p(e) != 0
    g4 = FiniteGroupTable.cyclic(4)
    with pytest.raises(InputError):
        SeminormTable(g4, (0, 1, 1, 2))  # p(3) != p(3^-1)
    with pytest.raises(InputError):
        SeminormTable(g4, (0, 1, 3, 1))  # p(1+1) > max


def _swap_action():
    sp = make_space([[0, 1], [1, 0]], names=("p", "q"))
    g = FiniteGroupTable.cyclic(2)
    return IsometricAction(g, sp, ((0, 1), (1, 0)))


def test_seminorm_from_action_swap():
    act = _swap_action()
    p = seminorm_from_action(act, 0)
    assert p.value == (0, 1)


def test_seminorm_from_action_fixing_basepoint():
    sp = split_space()
    g = FiniteGroupTable.cyclic(2)
    act = IsometricAction(g, sp, ((0, 1, 2, 3), (0, 1, 3, 2)))  # fixes p, q
    assert seminorm_from_action(act, 0).value == (0, 0)


def test_trivial_action_gives_zero_seminorm():
    sp = split_space()
    g = FiniteGroupTable.cyclic(1)
    act = IsometricAction(g, sp, ((0, 1, 2, 3),))
    assert seminorm_from_action(act, 2).value == (0,)


def test_non_isometric_action_rejected():
    sp = make_space([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    g = FiniteGroupTable.cyclic(2)
    with pytest.raises(PreconditionError):
        IsometricAction(g, sp, ((0, 1, 2), (0, 2, 1)))  # d(0,1)=1 but d(0,2)=2


def test_action_table_group_consistency_checked():
    sp = make_space([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    g = FiniteGroupTable.cyclic(2)
    with pytest.raises(InputError):
        IsometricAction(g, sp, ((0, 1, 2), (1, 2, 0)))  # 3-cycle is not order 2


def test_metric_from_seminorm_discrete():
    g = FiniteGroupTable.cyclic(2)
    out = metric_from_seminorm(SeminormTable(g, (0, 1)))
    assert out.is_metric
    assert out.dist == ((0, 1), (1, 0))


def test_metric_from_seminorm_pseudometric_flagged():
    g = FiniteGroupTable.cyclic(4)
    out = metric_from_seminorm(SeminormTable(g, (0, 1, 0, 1)))
    assert not out.is_metric
    assert out.dist[0][2] == 0


def test_metric_from_seminorm_invariance_and_restriction():
    g = FiniteGroupTable.cyclic(6)
    p = seminorm_from_subgroup(g, {0, 3})
    out = metric_from_seminorm(p)
    e = g.identity
    for x in range(g.order):
        assert out.dist[e][x] == p.value[x]
    for a, x, y in itertools.product(range(g.order), repeat=3):
        assert out.dist[g.op(a, x)][g.op(a, y)] == out.dist[x][y]

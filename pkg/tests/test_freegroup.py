"""Free group words, quotient kernels, [V_psi] balls and the Graev delta."""
import itertools
import random
from fractions import Fraction

import pytest

from conftest import all_partitions
from nafree.abelian import AbelianWord
from nafree.boolean import BooleanWord
from nafree.errors import CapExceeded, PreconditionError
from nafree.freegroup import (
    FreeWord,
    PsiAssignment,
    SymmetrizedSpace,
    check_grau_conditions,
    eps_tilde_membership,
    fg_invert,
    fg_multiply,
    graev_delta_bruteforce,
    project_to_abelian,
    project_to_boolean,
    quotient_hom,
    v_psi_ball,
)
from nafree.spaces import Partition


def fw(letters, alphabet=3):
    return FreeWord(tuple(letters), alphabet)


def test_multiply_and_invert():
    x, y, z = ((i, 1) for i in range(3))
    assert fg_multiply(fw([x, y]), fw([(1, -1), z])) == fw([x, z])
    w = fw([x, y, (0, -1)])
    assert fg_multiply(w, fg_invert(w)).is_identity()
    assert fg_multiply(fw([]), w) == w


def test_free_reduction_canonical():
    assert fw([(0, 1), (0, -1)]).is_identity()
    assert fw([(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]) == fw([(2, 1)])


def test_multiplication_associative_random():
    rng = random.Random(17)
    words = [
        fw([(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))])
        for _ in range(30)
    ]
    for _ in range(60):
        a, b, c = (rng.choice(words) for _ in range(3))
        assert fg_multiply(fg_multiply(a, b), c) == fg_multiply(a, fg_multiply(b, c))


def test_quotient_hom_examples():
    joined = Partition((frozenset({0, 1}), frozenset({2})), 3)
    assert quotient_hom(fw([(0, 1), (1, -1)]), joined).is_identity()
    split = Partition.discrete(3)
    img = quotient_hom(fw([(0, 1), (1, 1)]), split)
    assert img.letters == ((0, 1), (1, 1))
    conj = fw([(0, 1), (2, 1), (0, -1)])
    assert len(quotient_hom(conj, joined)) == 3


def test_quotient_hom_is_homomorphism():
    rng = random.Random(23)
    part = Partition((frozenset({0, 2}), frozenset({1})), 3)
    words = [
        fw([(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))])
        for _ in range(25)
    ]
    for u, v in itertools.product(words[:10], repeat=2):
        assert quotient_hom(fg_multiply(u, v), part) == fg_multiply(
            quotient_hom(u, part), quotient_hom(v, part)
        )


def test_eps_tilde_membership_examples():
    joined = Partition((frozenset({0, 1}), frozenset({2})), 3)
    assert eps_tilde_membership(fw([(0, 1), (1, -1)]), joined)
    conj = fw([(2, 1), (0, 1), (1, -1), (2, -1)])
    assert eps_tilde_membership(conj, joined)
    across = Partition((frozenset({0}), frozenset({1, 2})), 3)
    assert not eps_tilde_membership(fw([(0, 1), (1, -1)]), across)


def test_kernel_chain_inclusion():
    # finer partition => smaller kernel
    fine = Partition((frozenset({0, 1}), frozenset({2})), 3)
    coarse = Partition.indiscrete(3)
    rng = random.Random(31)
    for _ in range(200):
        w = fw([(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))])
        if eps_tilde_membership(w, fine):
            assert eps_tilde_membership(w, coarse)


def test_v_psi_ball_constant_matches_kernel():
    for n in (2, 3):
        for part in all_partitions(n):
            ball = v_psi_ball(PsiAssignment(part), n, 4)
            for w in _words_up_to(n, 4):
                assert (w in ball) == eps_tilde_membership(w, part)


def _words_up_to(alphabet, max_len):
    out = [FreeWord((), alphabet)]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for t in frontier:
            for p in range(alphabet):
                for s in (1, -1):
                    if t and t[-1] == (p, -s):
                        continue
                    nt = t + ((p, s),)
                    nxt.append(nt)
                    out.append(FreeWord(nt, alphabet))
        frontier = nxt
    return out


def test_v_psi_ball_trivial_cases():
    sing = Partition.discrete(3)
    assert v_psi_ball(PsiAssignment(sing), 3, 4) == frozenset({FreeWord((), 3)})
    whole = Partition.indiscrete(3)
    assert v_psi_ball(PsiAssignment(whole), 3, 0) == frozenset({FreeWord((), 3)})
    with pytest.raises(CapExceeded):
        v_psi_ball(PsiAssignment(whole), 3, 99)


def test_v_psi_ball_with_override_semi_decides():
    # only the conjugator z = generator 2 carries a non-trivial partition,
    # so the generators of [V_psi] are exactly the z-conjugated pairs
    joined = Partition((frozenset({0, 1}), frozenset({2})), 3)
    sing = Partition.discrete(3)
    psi = PsiAssignment(sing, ((FreeWord(((2, 1),), 3), joined),))
    ball = v_psi_ball(psi, 3, 4)
    conj = fw([(2, 1), (0, 1), (1, -1), (2, -1)])
    assert conj in ball
    assert fw([(0, 1), (1, -1)]) not in ball


def _discrete_dbar(n):
    size = 2 * n + 1
    rows = [[Fraction(0 if i == j else 1) for j in range(size)] for i in range(size)]
    return SymmetrizedSpace(n, tuple(tuple(r) for r in rows))


def _dbar_from_pairs(n, entries, default=Fraction(2)):
    """Build a symmetrized matrix from distances on half the index set."""
    size = 2 * n + 1
    rows = [[default] * size for _ in range(size)]
    sp = SymmetrizedSpace.__new__(SymmetrizedSpace)  # only for inv_index math

    def inv(i):
        if i == 2 * n:
            return i
        return i + n if i < n else i - n

    for (i, j), v in entries.items():
        for a, b in ((i, j), (inv(i), inv(j))):
            rows[a][b] = rows[b][a] = Fraction(v)
    for i in range(size):
        rows[i][i] = Fraction(0)
    return SymmetrizedSpace(n, tuple(tuple(r) for r in rows))


def test_check_grau_conditions_discrete():
    chk = check_grau_conditions(_discrete_dbar(2))
    assert chk.ok
    assert chk.strong_pattern  # all unit distances trivially match the max pattern


def test_check_grau_conditions_violation():
    n = 1
    rows = [
        [0, 1, 1],
        [1, 0, 2],
        [1, 2, 0],
    ]
    dbar = SymmetrizedSpace(n, tuple(tuple(Fraction(v) for v in r) for r in rows))
    chk = check_grau_conditions(dbar)
    assert not chk.ok and chk.violation is not None


def test_delta_extends_metric_on_letters():
    dbar = _discrete_dbar(2)
    x = FreeWord(((0, 1),), 2)
    y = FreeWord(((1, 1),), 2)
    assert graev_delta_bruteforce(x, y, dbar) == dbar.d(0, 1)
    assert graev_delta_bruteforce(x, x, dbar) == 0


def test_delta_identity_vs_product():
    dbar = _discrete_dbar(2)
    xy = FreeWord(((0, 1), (1, 1)), 2)
    e = FreeWord((), 2)
    val = graev_delta_bruteforce(xy, e, dbar)
    # some trivial word t1 t2 = e must be matched letterwise; with all
    # distances 1 the bottleneck is 1
    assert val == 1


def test_delta_bi_invariance_small():
    dbar = _discrete_dbar(1)
    words = _words_up_to(1, 2)
    for u, v, t in itertools.product(words, repeat=3):
        base = graev_delta_bruteforce(u, v, dbar)
        assert graev_delta_bruteforce(fg_multiply(t, u), fg_multiply(t, v), dbar) == base
        assert graev_delta_bruteforce(fg_multiply(u, t), fg_multiply(v, t), dbar) == base


def test_delta_cap_and_conditions_enforced():
    dbar = _discrete_dbar(1)
    long = FreeWord(((0, 1),) * 8, 1)
    with pytest.raises(CapExceeded):
        graev_delta_bruteforce(long, FreeWord((), 1), dbar)
    bad_rows = [[0, 1, 1], [1, 0, 2], [1, 2, 0]]
    bad = SymmetrizedSpace(1, tuple(tuple(Fraction(v) for v in r) for r in bad_rows))
    with pytest.raises(PreconditionError):
        graev_delta_bruteforce(FreeWord((), 1), FreeWord((), 1), bad)


def test_projections():
    wrd = fw([(0, 1), (1, 1), (0, -1)])
    assert project_to_abelian(wrd) == AbelianWord.from_dict({1: 1}, 3)
    assert project_to_boolean(wrd) == BooleanWord(frozenset({1}), 3)
    sq = fw([(0, 1), (0, 1)])
    assert project_to_abelian(sq) == AbelianWord.from_dict({0: 2}, 3)
    assert project_to_boolean(sq) == BooleanWord(frozenset(), 3)
    e = fw([])
    assert project_to_abelian(e).is_zero()
    assert project_to_boolean(e).is_zero()


def test_projections_commute_with_quotient():
    from nafree.boolean import eps_subgroup_membership

    rng = random.Random(41)
    for part in all_partitions(3):
        for _ in range(40):
            w = fw([(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))])
            if eps_tilde_membership(w, part):
                assert eps_subgroup_membership(project_to_boolean(w), part)

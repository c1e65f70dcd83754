"""Independent brute-force oracles for the membership and norm rules.

These deliberately avoid the decision procedures they certify: the Boolean
oracle closes the generator set under addition, the abelian oracle searches
bounded integer combinations, and the free-group oracle closes conjugated
generators under multiplication.
"""
from __future__ import annotations

import itertools

from .abelian import AbelianWord, ab_add, ab_negate, lh
from .boolean import BooleanWord, bool_add
from .freegroup import FreeWord, PsiAssignment, v_psi_ball
from .spaces import Partition


def boolean_membership_closure(u: BooleanWord, eps: Partition) -> bool:
    """Close {x+y : x,y epsilon-equivalent} under addition, restricted to
    words supported inside supp(u) joined with the blocks meeting it."""
    relevant: set[int] = set(u.points)
    for block in eps.blocks:
        if block & u.points:
            relevant |= block
    gens = [
        BooleanWord(frozenset({x, y}), u.ground)
        for block in eps.blocks
        for x, y in itertools.combinations(sorted(block & relevant), 2)
    ]
    zero = BooleanWord.zero(u.ground)
    visited = {zero}
    queue = [zero]
    while queue:
        w = queue.pop()
        for g in gens:
            nxt = bool_add(w, g)
            if nxt.points <= relevant and nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)
    return u in visited


def abelian_membership_search(w: AbelianWord, eps: Partition) -> bool:
    """Search integer combinations of in-block generators x - y with total
    mass at most lh(w)."""
    if w.is_zero():
        return True
    budget = lh(w)
    gens = [
        AbelianWord(((x, 1), (y, -1)), w.ground)
        for block in eps.blocks
        for x, y in itertools.combinations(sorted(block), 2)
    ]

    def rec(i: int, acc: AbelianWord, mass: int) -> bool:
        if acc == w:
            return True
        if i == len(gens):
            return False
        for c in range(-(budget - mass), budget - mass + 1):
            term = acc
            if c > 0:
                for _ in range(c):
                    term = ab_add(term, gens[i])
            elif c < 0:
                for _ in range(-c):
                    term = ab_add(term, ab_negate(gens[i]))
            if rec(i + 1, term, mass + abs(c)):
                return True
        return False

    return rec(0, AbelianWord.zero(w.ground), 0)


def free_membership_closure(w: FreeWord, eps: Partition, cap: int) -> bool:
    """Membership of w in the bounded conjugate-generator closure of eps."""
    ball = v_psi_ball(PsiAssignment(default=eps), w.alphabet, cap, max_cap=cap)
    return w in ball

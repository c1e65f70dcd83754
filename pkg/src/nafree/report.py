"""Workspace-scoped property suite behind the `report` CLI command.

Each row re-checks one of the core claims of the construction on the loaded
space, exhaustively at desk scale, and reports pass/fail.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .abelian import (
    AbelianWord,
    ab_add,
    bn_avoidance_check,
    bn_interior_witness,
    enumerate_Bn,
    lh,
)
from .boolean import (
    BooleanWord,
    ball_equals_subgroup,
    bool_add,
    graev_norm_bruteforce,
    graev_norm_fast,
    support,
)
from .duality import universal_extension
from .errors import PreconditionError
from .finite_groups import FiniteGroupTable
from .freegroup import FreeWord, PsiAssignment, _all_words, eps_tilde_membership, v_psi_ball
from .serialize import Workspace, format_rational
from .spaces import Partition

CLAIMS = ("claim5", "claim6", "claim7", "l_eps", "t_AE2", "fbaire", "sbaire", "duality")

REPORT_WORD_LIMIT = 6  # exhaustive pools use at most 2^6 words


def _word_pool(n: int) -> list[BooleanWord]:
    pts = list(range(min(n, REPORT_WORD_LIMIT)))
    return [
        BooleanWord(frozenset(c), n)
        for k in range(len(pts) + 1)
        for c in itertools.combinations(pts, k)
    ]


def _check_claim5(ws: Workspace) -> tuple[bool, str]:
    pool = _word_pool(ws.space.size)
    norms = {u: graev_norm_fast(u, ws.aug).value for u in pool}
    for u, nu in norms.items():
        if (nu == 0) != u.is_zero():
            return False, f"norm vanishes off zero at {sorted(u.points)}"
    for u, v in itertools.combinations(pool, 2):
        if graev_norm_fast(bool_add(u, v), ws.aug).value > max(norms[u], norms[v]):
            return False, f"ultra inequality fails at {sorted(u.points)}, {sorted(v.points)}"
    return True, f"{len(pool)} words, all pairs"


def _check_claim6(ws: Workspace) -> tuple[bool, str]:
    n = ws.space.size
    for x, y in itertools.combinations(range(n), 2):
        u = BooleanWord(frozenset({x, y}), n)
        if graev_norm_fast(u, ws.aug).value != ws.space.d(x, y):
            return False, f"||{{{x},{y}}}|| != d({x},{y})"
    for x in range(n):
        u = BooleanWord(frozenset({x}), n)
        if graev_norm_fast(u, ws.aug).value != ws.aug.d(x, ws.aug.zero):
            return False, f"||{{{x}}}|| != d({x}, zero)"
    return True, f"{n * (n - 1) // 2} pairs and {n} singletons"


def _check_claim7(ws: Workspace) -> tuple[bool, str]:
    pool = [u for u in _word_pool(ws.space.size) if not u.is_zero()]
    for u in pool:
        supp = sorted(support(u))
        lower = min(
            (ws.aug.d(a, b) for a, b in itertools.combinations(supp, 2)),
            default=Fraction(0),
        )
        if graev_norm_fast(u, ws.aug).value < lower:
            return False, f"lower bound fails at {sorted(u.points)}"
    return True, f"{len(pool)} nonzero words"


def _check_l_eps(ws: Workspace) -> tuple[bool, str]:
    cap = 4
    words = list(_all_words(ws.space.size, cap))
    count = 0
    for part in ws.chains["balls"].partitions:
        ball = v_psi_ball(PsiAssignment(default=part), ws.space.size, cap, max_cap=cap)
        for w in words:
            if eps_tilde_membership(w, part) != (w in ball):
                return False, f"kernel mismatch at partition {part.blocks}"
            count += 1
    return True, f"{count} word/partition checks at cap {cap}"


def _check_t_AE2(ws: Workspace) -> tuple[bool, str]:
    vals = sorted(v for v in ws.space.values() if v < 1)
    grid = [Fraction(0)] + vals + [Fraction(1)]
    thresholds = [
        (a + b) / 2 for a, b in zip(grid, grid[1:]) if a != b
    ]
    pool = _word_pool(ws.space.size)
    for eps in thresholds:
        rep = ball_equals_subgroup(ws.aug, eps, pool)
        if not rep.passed:
            return False, f"ball/subgroup mismatch at eps = {format_rational(eps)}"
    return True, f"{len(thresholds)} thresholds x {len(pool)} words"


def _check_fbaire(ws: Workspace) -> tuple[bool, str]:
    n = ws.space.size
    if n < 2:
        return True, "skipped: needs two points"
    w = AbelianWord(((0, 2), (1, 2)), n)
    rep = bn_avoidance_check(w, 3, ws.chains["balls"])
    if not rep.passed:
        return False, "coset met the length ball"
    return True, f"|B_3| = {rep.ball_size} cosets checked empty"


def _check_sbaire(ws: Workspace) -> tuple[bool, str]:
    n = ws.space.size
    if n < 2:
        return True, "skipped: needs two points"
    eps = Partition.indiscrete(n)
    count = 0
    for w in enumerate_Bn(2, n):
        if w.supp() == frozenset(range(n)):
            continue  # no generator start point left outside the support
        v = bn_interior_witness(w, 2, eps)
        if lh(ab_add(w, v)) != lh(w) + 2:
            return False, f"witness did not raise the length at {w.coeffs}"
        count += 1
    return True, f"{count} interior witnesses"


def _check_duality(ws: Workspace) -> tuple[bool, str]:
    n = min(ws.space.size, 4)
    z2 = FiniteGroupTable.cyclic(2)
    count = 0
    for images in itertools.product(range(2), repeat=n):
        universal_extension(images, z2, n)  # raises on any failed identity
        count += 1
    return True, f"{count} maps X -> Z2 extended and verified"


_CHECKS = {
    "claim5": _check_claim5,
    "claim6": _check_claim6,
    "claim7": _check_claim7,
    "l_eps": _check_l_eps,
    "t_AE2": _check_t_AE2,
    "fbaire": _check_fbaire,
    "sbaire": _check_sbaire,
    "duality": _check_duality,
}


def run_report(ws: Workspace, only: str | None = None) -> dict[str, dict]:
    claims = CLAIMS if only is None else (only,)
    if only is not None and only not in _CHECKS:
        raise PreconditionError(f"unknown claim {only!r}; choose from {', '.join(CLAIMS)}")
    rows = {}
    for claim in claims:
        try:
            passed, detail = _CHECKS[claim](ws)
        except PreconditionError as exc:
            passed, detail = False, str(exc)
        rows[claim] = {"passed": passed, "detail": detail}
    return rows

"""The free abelian group A(X): word length and finite-scale checks of the
closedness / empty-interior lemmas behind noncompleteness."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CapExceeded, InputError, PreconditionError
from .spaces import Partition, PartitionChain

DEFAULT_BN_CAP = 6


@dataclass(frozen=True)
class AbelianWord:
    """Integer combination of points, stored as sorted (point, coeff) pairs
    with no zero coefficients; the empty tuple is the zero element."""

    coeffs: tuple[tuple[int, int], ...]
    ground: int

    def __post_init__(self):
        items = tuple(sorted((p, int(c)) for p, c in self.coeffs if c != 0))
        object.__setattr__(self, "coeffs", items)
        seen = set()
        for p, _ in items:
            if not 0 <= p < self.ground:
                raise InputError(f"point {p} outside 0..{self.ground - 1}")
            if p in seen:
                raise InputError(f"duplicate point {p}")
            seen.add(p)

    @classmethod
    def zero(cls, ground: int) -> "AbelianWord":
        return cls((), ground)

    @classmethod
    def from_dict(cls, d: dict[int, int], ground: int) -> "AbelianWord":
        return cls(tuple(d.items()), ground)

    def coeff(self, p: int) -> int:
        for q, c in self.coeffs:
            if q == p:
                return c
        return 0

    def supp(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs


def ab_add(u: AbelianWord, v: AbelianWord) -> AbelianWord:
    if u.ground != v.ground:
        raise PreconditionError("words over different spaces")
    acc = dict(u.coeffs)
    for p, c in v.coeffs:
        acc[p] = acc.get(p, 0) + c
    return AbelianWord.from_dict(acc, u.ground)


def ab_negate(u: AbelianWord) -> AbelianWord:
    return AbelianWord(tuple((p, -c) for p, c in u.coeffs), u.ground)


def lh(w: AbelianWord) -> int:
    """Word length: the sum of absolute coefficients; lh(0) = 0."""
    return sum(abs(c) for _, c in w.coeffs)


def class_sums(w: AbelianWord, eps: Partition) -> tuple[int, ...]:
    """Per-block coefficient sums: the image of w in the free abelian group
    over the blocks."""
    sums = [0] * len(eps.blocks)
    for p, c in w.coeffs:
        sums[eps.block_index(p)] += c
    return tuple(sums)


def ab_eps_membership(w: AbelianWord, eps: Partition) -> bool:
    """w lies in <{x - y : x,y epsilon-equivalent}> iff all class sums vanish."""
    return all(s == 0 for s in class_sums(w, eps))


def enumerate_Bn(n: int, ground: int, cap: int = DEFAULT_BN_CAP) -> list[AbelianWord]:
    """All words of length <= n over the ground set."""
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    out: list[AbelianWord] = []

    def rec(point: int, budget: int, acc: list[tuple[int, int]]) -> None:
        if point == ground:
            out.append(AbelianWord(tuple(acc), ground))
            return
        for c in range(-budget, budget + 1):
            if c != 0:
                acc.append((point, c))
            rec(point + 1, budget - abs(c), acc)
            if c != 0:
                acc.pop()

    rec(0, n, [])
    return out


@dataclass(frozen=True)
class AvoidanceReport:
    """Exhaustive verification that a coset of <eps> misses the length ball."""

    partition: Partition
    ball_size: int
    checked: tuple[tuple[AbelianWord, bool], ...]  # (v, member of w - v in <eps>)

    @property
    def passed(self) -> bool:
        return all(not m for _, m in self.checked)


def bn_avoidance_check(
    w: AbelianWord, n: int, base: PartitionChain, cap: int = DEFAULT_BN_CAP
) -> AvoidanceReport:
    """Find a separating chain level and verify (w + <eps>) avoids B_n by
    enumerating the whole ball."""
    if lh(w) <= n:
        raise PreconditionError(f"lh(w) = {lh(w)} must exceed n = {n}")
    eps: Optional[Partition] = None
    for _, part in base:
        if part.separates(w.supp()):
            eps = part
            break
    if eps is None:
        raise PreconditionError("no chain level separates the support of w")
    ball = enumerate_Bn(n, w.ground, cap)
    checked = tuple((v, ab_eps_membership(ab_add(w, ab_negate(v)), eps)) for v in ball)
    return AvoidanceReport(partition=eps, ball_size=len(ball), checked=checked)


def bn_interior_witness(w: AbelianWord, n: int, eps: Partition) -> AbelianWord:
    """A single generator +-(x - y) of <eps> with lh(w + v) = lh(w) + 2.

    Requires an epsilon-equivalent pair (x, y) with x outside supp(w); the
    sign is chosen so neither new letter cancels.
    """
    if lh(w) > n:
        raise PreconditionError(f"lh(w) = {lh(w)} must be <= n = {n}")
    supp = w.supp()
    for block in eps.blocks:
        if len(block) < 2:
            continue
        outside = sorted(block - supp)
        if not outside:
            continue
        x = outside[0]
        y = next(p for p in sorted(block) if p != x)
        if w.coeff(y) > 0:
            v = AbelianWord(((x, -1), (y, 1)), w.ground)  # y - x
        else:
            v = AbelianWord(((x, 1), (y, -1)), w.ground)  # x - y
        assert lh(ab_add(w, v)) == lh(w) + 2
        return v
    raise PreconditionError(
        "no usable generator: every multi-point block lies inside supp(w)"
    )

"""The free Boolean group B(X): configuration calculus and Graev ultra-norm.

Elements of B(X) are finite subsets of X under symmetric difference.  The
adjoined zero element of the augmented space is the point index `ground`
(one past the base points); configurations live over that extended index set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import CapExceeded, InputError, PreconditionError
from .finite_groups import IsometricAction
from .spaces import AugmentedSpace, Partition, PartitionChain, ball_partition

DEFAULT_ENUM_CAP = 12


@dataclass(frozen=True)
class BooleanWord:
    """A finite subset of the base points 0..ground-1; zero word is empty."""

    points: frozenset[int]
    ground: int

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))
        if any(not 0 <= p < self.ground for p in self.points):
            raise InputError(f"points {sorted(self.points)} outside 0..{self.ground - 1}")

    @classmethod
    def zero(cls, ground: int) -> "BooleanWord":
        return cls(frozenset(), ground)

    def is_zero(self) -> bool:
        return not self.points

    def __len__(self) -> int:
        return len(self.points)


def bool_add(u: BooleanWord, v: BooleanWord) -> BooleanWord:
    if u.ground != v.ground:
        raise PreconditionError("words over different spaces")
    return BooleanWord(u.points ^ v.points, u.ground)


def support(u: BooleanWord) -> frozenset[int]:
    """The word's points, padded with the zero index when the count is odd."""
    if u.is_zero():
        raise PreconditionError("support is defined only for nonzero words")
    if len(u.points) % 2 == 0:
        return u.points
    return u.points | {u.ground}


@dataclass(frozen=True)
class Configuration:
    """A finite list of point pairs over the augmented index set.

    Represents the Boolean word given by the symmetric-difference sum of all
    entries (the zero index contributes nothing).  Pairs are stored with the
    smaller index first; pair order is irrelevant to the d-length.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(tuple(sorted(p)) for p in self.pairs)
        object.__setattr__(self, "pairs", norm)

    def word(self, ground: int) -> BooleanWord:
        acc: set[int] = set()
        for a, b in self.pairs:
            for t in (a, b):
                if t != ground:
                    acc ^= {t}
        return BooleanWord(frozenset(acc), ground)

    def entries(self) -> list[int]:
        return [t for p in self.pairs for t in p]

    def is_normal(self) -> bool:
        ent = self.entries()
        return len(ent) == len(set(ent))


def phi(config: Configuration, space: AugmentedSpace) -> Fraction:
    """The d-length: max pair distance; 0 for the empty configuration."""
    best = Fraction(0)
    for a, b in config.pairs:
        if not (0 <= a < space.size and 0 <= b < space.size):
            raise InputError(f"pair ({a},{b}) outside the augmented space")
        v = space.d(a, b)
        if v > best:
            best = v
    return best


def reduce_configuration(config: Configuration) -> Configuration:
    """Apply trivial-pair deletion, inversion and chain reduction to a fixpoint.

    The result is normal, represents the same word, and never has a larger
    d-length (chain reduction is bounded by the strong triangle inequality).
    """
    pairs = [tuple(p) for p in config.pairs]
    changed = True
    while changed:
        changed = False
        pairs = [p for p in pairs if p[0] != p[1]]
        found = None
        for i, j in itertools.combinations(range(len(pairs)), 2):
            shared = set(pairs[i]) & set(pairs[j])
            if shared:
                found = (i, j, shared.pop())
                break
        if found is not None:
            i, j, t = found
            a = pairs[i][0] if pairs[i][1] == t else pairs[i][1]
            b = pairs[j][0] if pairs[j][1] == t else pairs[j][1]
            rest = [p for k, p in enumerate(pairs) if k not in (i, j)]
            pairs = rest + [(a, b)]
            changed = True
    return Configuration(tuple(pairs))


def _pairings(points: list[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i in range(len(rest)):
        partner = rest[i]
        remaining = rest[:i] + rest[i + 1 :]
        for tail in _pairings(remaining):
            yield ((first, partner),) + tail


def enumerate_normal_configurations(
    u: BooleanWord, cap: int = DEFAULT_ENUM_CAP
) -> list[Configuration]:
    """All perfect pairings of supp(u), one orientation per pair.

    Count is (2k-1)!! for |supp(u)| = 2k.
    """
    supp = sorted(support(u))
    if len(supp) > cap:
        raise CapExceeded(f"|supp(u)| = {len(supp)} exceeds enumeration cap {cap}")
    return [Configuration(p) for p in _pairings(supp)]


@dataclass(frozen=True)
class NormCertificate:
    value: Fraction
    witness: Configuration
    algorithm: str
    basepoint: int


def graev_norm_bruteforce(
    u: BooleanWord, space: AugmentedSpace, cap: int = DEFAULT_ENUM_CAP
) -> NormCertificate:
    """Minimum d-length over all normal u-configurations."""
    bp = space.base.basepoint
    if u.is_zero():
        return NormCertificate(Fraction(0), Configuration(()), "brute", bp)
    best_val: Optional[Fraction] = None
    best_cfg: Optional[Configuration] = None
    for cfg in enumerate_normal_configurations(u, cap):
        v = phi(cfg, space)
        if best_val is None or v < best_val:
            best_val, best_cfg = v, cfg
    return NormCertificate(best_val, best_cfg, "brute", bp)


def graev_norm_fast(u: BooleanWord, space: AugmentedSpace) -> NormCertificate:
    """Block-parity threshold algorithm for the Graev ultra-norm.

    A pairing with max edge <= r exists iff every class of the relation
    d <= r holds an even number of support points (ball relations of an
    ultra-metric are transitive).  The norm is the smallest such threshold
    among the pairwise support distances.
    """
    bp = space.base.basepoint
    if u.is_zero():
        return NormCertificate(Fraction(0), Configuration(()), "fast", bp)
    supp = sorted(support(u))
    thresholds = sorted({space.d(a, b) for a, b in itertools.combinations(supp, 2)})
    for r in thresholds:
        classes: list[list[int]] = []
        reps: list[int] = []
        for p in supp:
            for i, rep in enumerate(reps):
                if space.d(p, rep) <= r:
                    classes[i].append(p)
                    break
            else:
                reps.append(p)
                classes.append([p])
        if all(len(c) % 2 == 0 for c in classes):
            pairs = tuple(
                (c[i], c[i + 1]) for c in classes for i in range(0, len(c), 2)
            )
            return NormCertificate(r, Configuration(pairs), "fast", bp)
    raise AssertionError("even support size guarantees a feasible threshold")


def graev_metric(u: BooleanWord, v: BooleanWord, space: AugmentedSpace) -> Fraction:
    """The norm metric ||u + v||; translation invariant."""
    return graev_norm_fast(bool_add(u, v), space).value


def eps_subgroup_membership(u: BooleanWord, eps: Partition) -> bool:
    """u lies in the subgroup generated by {x+y : x,y epsilon-equivalent}
    iff every block holds an even number of points of u."""
    counts = [0] * len(eps.blocks)
    for p in u.points:
        counts[eps.block_index(p)] += 1
    return all(c % 2 == 0 for c in counts)


def separating_entourage(u: BooleanWord, base: PartitionChain) -> Optional[Partition]:
    """Coarsest chain level separating the points of u pairwise, or None."""
    if u.is_zero():
        raise PreconditionError("the zero word has nothing to separate")
    for _, part in base:
        if part.separates(u.points):
            return part
    return None


def closedness_witness(u: BooleanWord, base: PartitionChain) -> Optional[Partition]:
    """A chain level whose coset u + <eps> misses the embedded copy of X.

    Verified exactly: eps_subgroup_membership(u + {x}, eps) must fail for
    every base point x.
    """
    if len(u) == 1:
        raise PreconditionError("u is in the image of X; no witness exists")
    for _, part in base:
        if all(
            not eps_subgroup_membership(bool_add(u, BooleanWord(frozenset({x}), u.ground)), part)
            for x in range(u.ground)
        ):
            return part
    return None


@dataclass(frozen=True)
class BallSubgroupReport:
    """Per-word comparison of the open norm ball with the parity subgroup."""

    eps: Fraction
    rows: tuple[tuple[BooleanWord, bool, bool], ...]  # (word, norm < eps, member)

    @property
    def passed(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def ball_equals_subgroup(
    space: AugmentedSpace, eps_value, word_pool
) -> BallSubgroupReport:
    """Check ||u|| < eps  <=>  u in <{x+y : d(x,y) < eps}> over a word pool."""
    eps = Fraction(eps_value)
    if not 0 < eps < 1:
        raise PreconditionError(f"threshold must lie in (0,1), got {eps}")
    n = space.base.size
    blocks: list[list[int]] = []
    reps: list[int] = []
    for p in range(n):
        for i, rep in enumerate(reps):
            if space.base.d(p, rep) < eps:
                blocks[i].append(p)
                break
        else:
            reps.append(p)
            blocks.append([p])
    part = Partition(tuple(frozenset(b) for b in blocks), n)
    rows = []
    for u in word_pool:
        in_ball = graev_norm_fast(u, space).value < eps
        member = eps_subgroup_membership(u, part)
        rows.append((u, in_ball, member))
    return BallSubgroupReport(eps=eps, rows=tuple(rows))


def lift_action(action: IsometricAction, g: int, u: BooleanWord) -> BooleanWord:
    """Pointwise image g.u = {g.x : x in u}; an automorphism of B(X)."""
    if u.ground != action.space.size:
        raise PreconditionError("word does not live over the action's space")
    return BooleanWord(frozenset(action.apply(g, x) for x in u.points), u.ground)

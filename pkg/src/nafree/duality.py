"""Finite-scale Stone duality: the clopen algebra, its character group, the
evaluation embedding, the universal property, and inverse systems of finite
Boolean quotients along a partition chain.

For a finite ground set every subset is clopen, so the clopen algebra is the
full power set (bitmasks) under symmetric difference, and "dense subgroup"
statements sharpen to equalities checked exhaustively.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .boolean import BooleanWord
from .errors import CapExceeded, InputError, PreconditionError
from .finite_groups import FiniteGroupTable
from .freegroup import FreeWord, quotient_hom
from .spaces import Partition, PartitionChain

DEFAULT_DUAL_CAP = 12


@dataclass(frozen=True)
class ClopenAlgebra:
    """All subsets of 0..ground-1 as a Boolean group under xor of bitmasks."""

    ground: int

    @property
    def order(self) -> int:
        return 1 << self.ground

    def add(self, f: int, g: int) -> int:
        return f ^ g


@dataclass(frozen=True)
class Character:
    """A homomorphism from the clopen algebra to Z_2, stored as the subset S
    with chi_S(f) = |S & f| mod 2."""

    mask: int
    ground: int

    def __call__(self, f: int) -> int:
        return bin(self.mask & f).count("1") % 2

    def __add__(self, other: "Character") -> "Character":
        if self.ground != other.ground:
            raise PreconditionError("characters over different ground sets")
        return Character(self.mask ^ other.mask, self.ground)


def dual_group(algebra: ClopenAlgebra, cap: int = DEFAULT_DUAL_CAP) -> list[Character]:
    """All 2^n characters; additivity holds by construction of the bitmask
    pairing and is spot-verified here."""
    if algebra.ground > cap:
        raise CapExceeded(f"ground size {algebra.ground} exceeds cap {cap}")
    chars = [Character(s, algebra.ground) for s in range(algebra.order)]
    for chi in chars:
        for f, g in ((1, 1), (algebra.order - 1, 1)):
            f %= algebra.order
            if chi(f ^ g) != (chi(f) + chi(g)) % 2:
                raise AssertionError("character additivity broke")
    return chars


def evaluation_delta(x: int, ground: int) -> Character:
    """delta_x = chi_{{x}}: evaluation of clopen indicators at x."""
    if not 0 <= x < ground:
        raise InputError(f"point {x} outside 0..{ground - 1}")
    return Character(1 << x, ground)


@dataclass(frozen=True)
class UniversalExtension:
    """The unique homomorphism from the character group extending a map on
    the evaluation image of X."""

    images: tuple[int, ...]  # f(x) per base point, as elements of G
    group: FiniteGroupTable
    ground: int

    def apply(self, chi: Character) -> int:
        acc = self.group.identity
        for x in range(self.ground):
            if chi.mask >> x & 1:
                acc = self.group.op(acc, self.images[x])
        return acc


def universal_extension(
    f: Sequence[int], group: FiniteGroupTable, ground: int
) -> UniversalExtension:
    """Extend f: X -> G to the character group by linearity over GF(2).

    G must be Boolean (exponent <= 2); the homomorphism property is checked
    exhaustively at this scale.
    """
    if not group.is_boolean():
        raise PreconditionError("target group must have exponent at most 2")
    if len(f) != ground:
        raise InputError("image list does not match the ground set")
    ext = UniversalExtension(tuple(f), group, ground)
    size = 1 << ground
    img = [group.identity] * size
    for s in range(1, size):
        low = s & -s
        img[s] = group.op(img[s ^ low], f[low.bit_length() - 1])
    for s in range(size):
        row = group.mul[img[s]]
        if [img[s ^ t] for t in range(size)] != [row[b] for b in img]:
            raise AssertionError("extension failed to be a homomorphism")
    for x in range(ground):
        if img[1 << x] != f[x] or ext.apply(evaluation_delta(x, ground)) != f[x]:
            raise AssertionError("extension does not restrict to f")
    return ext


@dataclass(frozen=True)
class QuotientHom:
    """A homomorphism F(X/eps) -> Q given by generator images, pulled back
    along the quotient map; a member of the finite-index local base."""

    eps: Partition
    target: FiniteGroupTable
    generator_images: tuple[int, ...]  # one image per block

    def image_of_block_word(self, w: FreeWord) -> int:
        acc = self.target.identity
        for b, s in w.letters:
            g = self.generator_images[b] if s == 1 else self.target.inv[self.generator_images[b]]
            acc = self.target.op(acc, g)
        return acc

    def contains(self, w: FreeWord) -> bool:
        """Membership of w in the pulled-back kernel subgroup of F(X)."""
        return self.image_of_block_word(quotient_hom(w, self.eps)) == self.target.identity

    @property
    def index_bound(self) -> int:
        return self.target.order


def local_base_SPro(
    eps: Partition, target: FiniteGroupTable, cap: int = 4096
) -> list[QuotientHom]:
    """All homomorphisms F(X/eps) -> Q as generator assignments."""
    k = len(eps.blocks)
    total = target.order**k
    if total > cap:
        raise CapExceeded(f"{total} homomorphisms exceed cap {cap}")
    return [
        QuotientHom(eps, target, images)
        for images in itertools.product(range(target.order), repeat=k)
    ]


@dataclass(frozen=True)
class InverseSystem:
    """Finite Boolean quotients B(X/eps_i) along a chain, with bonding maps
    from finer to coarser levels."""

    chain: PartitionChain

    def __post_init__(self):
        parts = self.chain.partitions
        for coarse, fine in zip(parts, parts[1:]):
            if not fine.refines(coarse):
                raise InputError("chain partitions must refine monotonically")

    @property
    def depth(self) -> int:
        return len(self.chain)

    def level_group_size(self, i: int) -> int:
        return len(self.chain.partitions[i].blocks)

    def bond(self, i: int, u: BooleanWord) -> BooleanWord:
        """Send an element of B(X/eps_{i+1}) to B(X/eps_i) by mapping each
        fine block generator to the coarser block containing it."""
        fine = self.chain.partitions[i + 1]
        coarse = self.chain.partitions[i]
        if u.ground != len(fine.blocks):
            raise PreconditionError("element is not over the finer quotient")
        acc: set[int] = set()
        for fb in u.points:
            rep = min(fine.blocks[fb])
            acc ^= {coarse.block_index(rep)}
        return BooleanWord(frozenset(acc), len(coarse.blocks))

    def skip_bond(self, i: int, j: int, u: BooleanWord) -> BooleanWord:
        """Compose consecutive bonds from level j down to level i (i <= j)."""
        for level in range(j - 1, i - 1, -1):
            u = self.bond(level, u)
        return u

    def project_from_base(self, u: BooleanWord, i: int) -> BooleanWord:
        """Image of an element of B(X) in the level-i quotient."""
        part = self.chain.partitions[i]
        acc: set[int] = set()
        for p in u.points:
            acc ^= {part.block_index(p)}
        return BooleanWord(frozenset(acc), len(part.blocks))

    def thread_check(self, thread: Sequence[BooleanWord]) -> bool:
        """Accept exactly bond-consistent sequences, one element per level,
        ordered coarse to fine."""
        if len(thread) != self.depth:
            raise PreconditionError("thread length must equal the chain depth")
        for i, u in enumerate(thread):
            if u.ground != self.level_group_size(i):
                raise PreconditionError(f"thread entry {i} is over the wrong quotient")
        return all(self.bond(i, thread[i + 1]) == thread[i] for i in range(self.depth - 1))


def inverse_system_build(chain: PartitionChain) -> InverseSystem:
    return InverseSystem(chain)

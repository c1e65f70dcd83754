"""Finite ultra-metric spaces, partitions and pseudometric combinators.

Points are dense integers 0..n-1; display names live in a side table on the
space.  All distances are exact `fractions.Fraction` values, so threshold
comparisons and ties are decided exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, PreconditionError

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(Fraction(v) for v in row))
    return tuple(out)


@dataclass(frozen=True)
class MetricViolation:
    """First failed axiom of an ultra-metric candidate matrix."""

    kind: str  # "diagonal" | "positivity" | "symmetry" | "strong_triangle"
    points: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.points}: {self.detail}"


def validate_ultrametric(rows: Sequence[Sequence]) -> Optional[MetricViolation]:
    """Check the three ultra-metric axioms; return the first violation or None.

    Structural problems (non-square matrix, negative or malformed entries)
    raise InputError instead of being reported as violations.
    """
    try:
        m = _as_matrix(rows)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational entry: {exc}") from exc
    n = len(m)
    for row in m:
        if len(row) != n:
            raise InputError("matrix is not square")
    for i in range(n):
        for j in range(n):
            if m[i][j] < 0:
                raise InputError(f"negative entry at ({i},{j})")
    for i in range(n):
        if m[i][i] != 0:
            return MetricViolation("diagonal", (i,), f"d({i},{i}) = {m[i][i]} != 0")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                return MetricViolation(
                    "symmetry", (i, j), f"d({i},{j}) = {m[i][j]} != {m[j][i]} = d({j},{i})"
                )
            if m[i][j] == 0:
                return MetricViolation("positivity", (i, j), f"d({i},{j}) = 0 for {i} != {j}")
    for i, j, k in itertools.permutations(range(n), 3):
        bound = max(m[i][j], m[j][k])
        if m[i][k] > bound:
            return MetricViolation(
                "strong_triangle",
                (i, j, k),
                f"d({i},{k}) = {m[i][k]} > max(d({i},{j}), d({j},{k})) = {bound}",
            )
    return None


@dataclass(frozen=True)
class UltraMetricSpace:
    """Finite point set with an exact ultra-metric distance matrix."""

    dist: Matrix
    names: tuple[str, ...] = ()
    basepoint: int = 0

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(len(self.dist))))
        object.__setattr__(self, "dist", _as_matrix(self.dist))
        if len(self.names) != len(self.dist):
            raise InputError("name table does not match matrix size")
        if "0" in self.names:
            raise InputError('point name "0" is reserved for the adjoined zero element')
        if not 0 <= self.basepoint < len(self.dist):
            raise InputError(f"basepoint {self.basepoint} out of range")
        bad = validate_ultrametric(self.dist)
        if bad is not None:
            raise InputError(f"not an ultra-metric: {bad}")

    @property
    def size(self) -> int:
        return len(self.dist)

    def d(self, p: int, q: int) -> Fraction:
        return self.dist[p][q]

    def values(self) -> list[Fraction]:
        """Distinct nonzero distance values, ascending."""
        vals = {self.dist[i][j] for i in range(self.size) for j in range(i + 1, self.size)}
        return sorted(vals)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown point name {name!r}") from None


@dataclass(frozen=True)
class AugmentedSpace:
    """An ultra-metric space with an adjoined zero element at index `size-1`.

    The zero element sits at distance max(d(x, basepoint), 1) from every x,
    which keeps the extended matrix an ultra-metric.
    """

    base: UltraMetricSpace
    dist: Matrix

    @property
    def size(self) -> int:
        return len(self.dist)

    @property
    def zero(self) -> int:
        return self.base.size

    @property
    def names(self) -> tuple[str, ...]:
        return self.base.names + ("0",)

    def d(self, p: int, q: int) -> Fraction:
        return self.dist[p][q]

    def values(self) -> list[Fraction]:
        vals = {self.dist[i][j] for i in range(self.size) for j in range(i + 1, self.size)}
        return sorted(vals)


def extend_with_zero(space: UltraMetricSpace, x0: int | None = None) -> AugmentedSpace:
    """Adjoin the zero element with d(x, 0) = max(d(x, x0), 1)."""
    if x0 is None:
        x0 = space.basepoint
    if not 0 <= x0 < space.size:
        raise PreconditionError(f"basepoint {x0} not in space")
    n = space.size
    zrow = tuple(max(space.d(x, x0), Fraction(1)) for x in range(n))
    rows = [space.dist[i] + (zrow[i],) for i in range(n)]
    rows.append(zrow + (Fraction(0),))
    dist = tuple(rows)
    bad = validate_ultrametric(dist)
    if bad is not None:  # cannot happen for a valid base space
        raise PreconditionError(f"zero extension broke the ultra-metric: {bad}")
    return AugmentedSpace(base=space, dist=dist)


@dataclass(frozen=True)
class Partition:
    """Equivalence relation on 0..ground-1, stored as sorted disjoint blocks."""

    blocks: tuple[frozenset[int], ...]
    ground: int
    _block_of: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        object.__setattr__(self, "blocks", blocks)
        seen: dict[int, int] = {}
        for i, b in enumerate(blocks):
            if not b:
                raise InputError("empty block")
            for p in b:
                if p in seen:
                    raise InputError(f"point {p} occurs in two blocks")
                seen[p] = i
        if set(seen) != set(range(self.ground)):
            raise InputError("blocks do not cover the ground set 0..n-1")
        object.__setattr__(self, "_block_of", seen)

    @classmethod
    def discrete(cls, ground: int) -> "Partition":
        return cls(tuple(frozenset({p}) for p in range(ground)), ground)

    @classmethod
    def indiscrete(cls, ground: int) -> "Partition":
        return cls((frozenset(range(ground)),), ground)

    def block_index(self, p: int) -> int:
        try:
            return self._block_of[p]
        except KeyError:
            raise InputError(f"point {p} outside the partition ground set") from None

    def same_block(self, p: int, q: int) -> bool:
        return self.block_index(p) == self.block_index(q)

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self sits inside a block of other."""
        if self.ground != other.ground:
            return False
        return all(
            other.same_block(min(b), p) for b in self.blocks for p in b
        )

    def separates(self, points: frozenset[int] | set[int]) -> bool:
        idx = [self.block_index(p) for p in points]
        return len(idx) == len(set(idx))


@dataclass(frozen=True)
class PartitionChain:
    """Strictly decreasing thresholds with partitions that refine downward."""

    levels: tuple[tuple[Fraction, Partition], ...]

    def __post_init__(self):
        levels = tuple((Fraction(t), p) for t, p in self.levels)
        object.__setattr__(self, "levels", levels)
        for (t1, p1), (t2, p2) in zip(levels, levels[1:]):
            if not t2 < t1:
                raise InputError(f"thresholds must strictly decrease: {t1} then {t2}")
            if not p2.refines(p1):
                raise InputError(f"level {t2} does not refine level {t1}")

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    @property
    def partitions(self) -> tuple[Partition, ...]:
        return tuple(p for _, p in self.levels)


def ball_partition(space, r) -> Partition:
    """Partition by the relation d(p,q) <= r; transitive by strong triangle."""
    r = Fraction(r)
    if r < 0:
        raise PreconditionError(f"negative radius {r}")
    n = space.size
    blocks: list[list[int]] = []
    reps: list[int] = []
    for p in range(n):
        for i, rep in enumerate(reps):
            if space.d(p, rep) <= r:
                blocks[i].append(p)
                break
        else:
            reps.append(p)
            blocks.append([p])
    return Partition(tuple(frozenset(b) for b in blocks), n)


def strict_ball_partition(space, r) -> Partition:
    """Partition by the relation d(p,q) < r (also transitive)."""
    r = Fraction(r)
    if r <= 0:
        raise PreconditionError(f"radius must be positive, got {r}")
    n = space.size
    blocks: list[list[int]] = []
    reps: list[int] = []
    for p in range(n):
        for i, rep in enumerate(reps):
            if space.d(p, rep) < r:
                blocks[i].append(p)
                break
        else:
            reps.append(p)
            blocks.append([p])
    return Partition(tuple(frozenset(b) for b in blocks), n)


def ball_chain(space: UltraMetricSpace) -> PartitionChain:
    """The full chain of ball partitions, one level per distance value plus
    a discrete level at threshold 0."""
    levels = []
    for v in sorted(space.values(), reverse=True):
        levels.append((v, ball_partition(space, v)))
    levels.append((Fraction(0), Partition.discrete(space.size)))
    return PartitionChain(tuple(levels))


@dataclass(frozen=True)
class CombinedMetric:
    """Result of the weighted sup-combination of a pseudometric family."""

    dist: Matrix
    separates: bool


def _check_ultra_pseudometric(m: Matrix, bound: Fraction) -> None:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise InputError("pseudometric matrix is not square")
    for i in range(n):
        if m[i][i] != 0:
            raise InputError(f"nonzero diagonal at {i}")
        for j in range(n):
            if m[i][j] < 0 or m[i][j] > bound:
                raise InputError(f"entry ({i},{j}) = {m[i][j]} outside [0, {bound}]")
            if m[i][j] != m[j][i]:
                raise InputError(f"asymmetric at ({i},{j})")
    for i, j, k in itertools.permutations(range(n), 3):
        if m[i][k] > max(m[i][j], m[j][k]):
            raise InputError(f"strong triangle fails at ({i},{j},{k})")


def combine_pseudometrics(family: Sequence[Sequence[Sequence]]) -> CombinedMetric:
    """d(x,y) = max_n 2^-n * d_n(x,y) for a finite family d_1, d_2, ...

    Each member must be an ultra-pseudometric bounded by 1.  If the family
    fails to separate some pair the result is only a pseudometric; that is
    reported via `separates`, never silently coerced.
    """
    mats = [_as_matrix(m) for m in family]
    if not mats:
        raise PreconditionError("empty pseudometric family")
    n = len(mats[0])
    for m in mats:
        if len(m) != n:
            raise InputError("pseudometric matrices have mixed sizes")
        _check_ultra_pseudometric(m, Fraction(1))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(max(Fraction(1, 2 ** (k + 1)) * m[i][j] for k, m in enumerate(mats)))
        rows.append(tuple(row))
    dist = tuple(rows)
    separates = all(dist[i][j] > 0 for i in range(n) for j in range(i + 1, n))
    return CombinedMetric(dist=dist, separates=separates)

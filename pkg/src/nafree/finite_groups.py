"""Explicit finite groups, ultra-seminorm tables and their conversions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .spaces import UltraMetricSpace, Matrix


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group given by its full multiplication table.

    Group axioms are verified on construction; identity and inverses are
    derived from the table.
    """

    mul: tuple[tuple[int, ...], ...]
    identity: int = field(init=False)
    inv: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.mul)
        table = tuple(tuple(row) for row in self.mul)
        object.__setattr__(self, "mul", table)
        for row in table:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise InputError("multiplication table is not a square over 0..n-1")
        ident = None
        for e in range(n):
            if all(table[e][g] == g and table[g][e] == g for g in range(n)):
                ident = e
                break
        if ident is None:
            raise InputError("no identity element")
        inv = []
        for g in range(n):
            gi = next((h for h in range(n) if table[g][h] == ident), None)
            if gi is None or table[gi][g] != ident:
                raise InputError(f"element {g} has no two-sided inverse")
            inv.append(gi)
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InputError(f"associativity fails at ({a},{b},{c})")
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "inv", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.mul)

    def op(self, g: int, h: int) -> int:
        return self.mul[g][h]

    def is_boolean(self) -> bool:
        """Every element has order at most 2."""
        return all(self.op(g, g) == self.identity for g in range(self.order))

    def is_subgroup(self, subset) -> bool:
        s = frozenset(subset)
        if not s or self.identity not in s:
            return False
        return all(self.op(a, self.inv[b]) in s for a in s for b in s)

    def is_normal(self, subset) -> bool:
        s = frozenset(subset)
        return self.is_subgroup(s) and all(
            self.op(self.op(a, h), self.inv[a]) in s for a in range(self.order) for h in s
        )

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        return cls(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))

    @classmethod
    def direct_product(cls, a: "FiniteGroupTable", b: "FiniteGroupTable") -> "FiniteGroupTable":
        na, nb = a.order, b.order
        idx = lambda i, j: i * nb + j
        rows = []
        for i, j in itertools.product(range(na), range(nb)):
            rows.append(
                tuple(idx(a.op(i, k), b.op(j, l)) for k, l in itertools.product(range(na), range(nb)))
            )
        return cls(tuple(rows))

    @classmethod
    def boolean_power(cls, k: int) -> "FiniteGroupTable":
        """(Z_2)^k with elements as bitmasks 0..2^k-1 under xor."""
        n = 1 << k
        return cls(tuple(tuple(i ^ j for j in range(n)) for i in range(n)))

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]]) -> tuple["FiniteGroupTable", tuple[tuple[int, ...], ...]]:
        """Close a set of permutations under composition.

        Returns the group table and the element list (permutation tuples),
        with composition (p*q)(x) = p(q(x)).
        """
        deg = len(perms[0]) if perms else 0
        ident = tuple(range(deg))
        elems = [ident]
        seen = {ident}
        queue = [tuple(p) for p in perms]
        for p in queue:
            if sorted(p) != list(range(deg)):
                raise InputError(f"{p} is not a permutation of 0..{deg - 1}")
        while queue:
            p = queue.pop()
            if p in seen:
                continue
            seen.add(p)
            elems.append(p)
            for q in list(seen):
                for comp in (tuple(p[q[x]] for x in range(deg)), tuple(q[p[x]] for x in range(deg))):
                    if comp not in seen:
                        queue.append(comp)
        elems = [ident] + sorted(e for e in seen if e != ident)
        pos = {e: i for i, e in enumerate(elems)}
        table = tuple(
            tuple(pos[tuple(p[q[x]] for x in range(deg))] for q in elems) for p in elems
        )
        return cls(table), tuple(elems)


@dataclass(frozen=True)
class SeminormTable:
    """An ultra-seminorm on a finite group, tabulated per element."""

    group: FiniteGroupTable
    value: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.value)
        object.__setattr__(self, "value", vals)
        g = self.group
        if len(vals) != g.order:
            raise InputError("value table size mismatch")
        if vals[g.identity] != 0:
            raise InputError("p(e) != 0")
        for x in range(g.order):
            if vals[x] < 0:
                raise InputError(f"negative value at {x}")
            if vals[g.inv[x]] != vals[x]:
                raise InputError(f"p({x}) != p(inverse)")
        for x, y in itertools.product(range(g.order), repeat=2):
            if vals[g.op(x, y)] > max(vals[x], vals[y]):
                raise InputError(f"ultra inequality fails at ({x},{y})")

    def is_norm(self) -> bool:
        return all(v > 0 for i, v in enumerate(self.value) if i != self.group.identity)

    def is_invariant(self) -> bool:
        g = self.group
        return all(
            self.value[g.op(g.op(a, x), g.inv[a])] == self.value[x]
            for a in range(g.order)
            for x in range(g.order)
        )


def seminorm_from_subgroup(group: FiniteGroupTable, subgroup) -> SeminormTable:
    """The {0,1} seminorm vanishing exactly on the subgroup."""
    s = frozenset(subgroup)
    if not group.is_subgroup(s):
        raise PreconditionError(f"{sorted(s)} is not a subgroup")
    vals = tuple(Fraction(0) if g in s else Fraction(1) for g in range(group.order))
    return SeminormTable(group, vals)


@dataclass(frozen=True)
class SubgroupResult:
    elements: frozenset[int]
    is_normal: bool


def subgroup_from_seminorm(p: SeminormTable, eps) -> SubgroupResult:
    """H_eps = {g : p(g) < eps}, verified to be a subgroup."""
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    h = frozenset(g for g in range(p.group.order) if p.value[g] < eps)
    if not p.group.is_subgroup(h):  # impossible for a valid seminorm
        raise PreconditionError("sublevel set is not a subgroup")
    return SubgroupResult(elements=h, is_normal=p.group.is_normal(h))


@dataclass(frozen=True)
class IsometricAction:
    """A finite group acting by isometries on an ultra-metric space.

    `table[g][x]` is the image of point x under group element g.  Isometry
    and consistency with the group table are verified once at construction.
    """

    group: FiniteGroupTable
    space: UltraMetricSpace
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tbl = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", tbl)
        g, sp = self.group, self.space
        n = sp.size
        if len(tbl) != g.order or any(len(row) != n for row in tbl):
            raise InputError("action table shape mismatch")
        if tbl[g.identity] != tuple(range(n)):
            raise InputError("identity does not act trivially")
        for a in range(g.order):
            for x, y in itertools.combinations(range(n), 2):
                if sp.d(tbl[a][x], tbl[a][y]) != sp.d(x, y):
                    raise PreconditionError(
                        f"element {a} is not an isometry: moves pair ({x},{y})"
                    )
        for a, b in itertools.product(range(g.order), repeat=2):
            for x in range(n):
                if tbl[g.op(a, b)][x] != tbl[a][tbl[b][x]]:
                    raise InputError(f"action inconsistent with group table at ({a},{b},{x})")

    def apply(self, g: int, x: int) -> int:
        return self.table[g][x]


def seminorm_from_action(action: IsometricAction, x0: int) -> SeminormTable:
    """p(g) = d(x0, g.x0) for an isometric action."""
    sp = action.space
    if not 0 <= x0 < sp.size:
        raise PreconditionError(f"x0 = {x0} not in the space")
    vals = tuple(sp.d(x0, action.apply(g, x0)) for g in range(action.group.order))
    return SeminormTable(action.group, vals)


@dataclass(frozen=True)
class MetricFromSeminorm:
    dist: Matrix
    is_metric: bool  # False flags a pseudometric (p vanished off the identity)


def metric_from_seminorm(p: SeminormTable) -> MetricFromSeminorm:
    """d(x,y) = p(x^-1 y); left invariant by construction."""
    g = p.group
    rows = tuple(
        tuple(p.value[g.op(g.inv[x], y)] for y in range(g.order)) for x in range(g.order)
    )
    return MetricFromSeminorm(dist=rows, is_metric=p.is_norm())

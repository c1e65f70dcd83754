"""Free group word calculus, quotients onto free groups of partitions, and
a brute-force Graev-type ultra-metric on words.

Letters are (point id, sign) with sign +-1; words are kept freely reduced.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

from .abelian import AbelianWord
from .boolean import BooleanWord
from .errors import CapExceeded, InputError, PreconditionError
from .spaces import Matrix, Partition, validate_ultrametric

Letter = tuple[int, int]

DEFAULT_CLOSURE_CAP = 8
DEFAULT_DELTA_CAP = 6
CLOSURE_SLACK = 2


def _reduce(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for p, s in letters:
        if out and out[-1][0] == p and out[-1][1] == -s:
            out.pop()
        else:
            out.append((p, s))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word over the alphabet 0..alphabet-1."""

    letters: tuple[Letter, ...]
    alphabet: int

    def __post_init__(self):
        red = _reduce(tuple((int(p), int(s)) for p, s in self.letters))
        object.__setattr__(self, "letters", red)
        for p, s in red:
            if not 0 <= p < self.alphabet:
                raise InputError(f"letter {p} outside 0..{self.alphabet - 1}")
            if s not in (1, -1):
                raise InputError(f"exponent {s} must be +-1")

    @classmethod
    def identity(cls, alphabet: int) -> "FreeWord":
        return cls((), alphabet)

    @classmethod
    def generator(cls, p: int, alphabet: int, sign: int = 1) -> "FreeWord":
        return cls(((p, sign),), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters


def fg_multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    if u.alphabet != v.alphabet:
        raise PreconditionError("words over different alphabets")
    return FreeWord(u.letters + v.letters, u.alphabet)


def fg_invert(u: FreeWord) -> FreeWord:
    return FreeWord(tuple((p, -s) for p, s in reversed(u.letters)), u.alphabet)


def quotient_hom(w: FreeWord, eps: Partition) -> FreeWord:
    """Replace each letter by its block and reduce: the induced homomorphism
    onto the free group over the blocks."""
    if w.alphabet != eps.ground:
        raise PreconditionError("word alphabet does not match the partition")
    letters = tuple((eps.block_index(p), s) for p, s in w.letters)
    return FreeWord(letters, len(eps.blocks))


def eps_tilde_membership(w: FreeWord, eps: Partition) -> bool:
    """Membership in the normal subgroup generated by the conjugated
    epsilon-generators: exactly the kernel of the quotient homomorphism."""
    return quotient_hom(w, eps).is_identity()


@dataclass(frozen=True)
class PsiAssignment:
    """Finitely supported assignment of a partition to every free word."""

    default: Partition
    overrides: tuple[tuple[FreeWord, Partition], ...] = ()

    def at(self, w: FreeWord) -> Partition:
        for key, part in self.overrides:
            if key == w:
                return part
        return self.default


def _all_words(alphabet: int, max_len: int) -> Iterator[FreeWord]:
    """All freely reduced words of length <= max_len."""
    frontier = [FreeWord.identity(alphabet)]
    yield frontier[0]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for p in range(alphabet):
                for s in (1, -1):
                    if w.letters and w.letters[-1] == (p, -s):
                        continue
                    ext = FreeWord(w.letters + ((p, s),), alphabet)
                    nxt.append(ext)
                    yield ext
        frontier = nxt


def _raw_words(alphabet: int, max_len: int) -> list[tuple[Letter, ...]]:
    """All freely reduced letter tuples of length <= max_len."""
    out: list[tuple[Letter, ...]] = [()]
    frontier: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for p in range(alphabet):
                for s in (1, -1):
                    if w and w[-1] == (p, -s):
                        continue
                    nxt.append(w + ((p, s),))
        out.extend(nxt)
        frontier = nxt
    return out


def _constant_closure(
    eps: Partition, alphabet: int, length_cap: int
) -> frozenset[tuple[Letter, ...]]:
    """Exact ball of the subgroup generated by conjugated eps-generators.

    Decided top-down: a reduced word lies in the closure iff deleting some
    adjacent pair x^s y^-s with x, y eps-equivalent (each deletion is right
    multiplication by an inverse conjugated generator) leads to the empty
    word.  Any shorter representative is reachable this way, so within the
    cap the search is complete, not merely a semi-decision.
    """
    memo: dict[tuple[Letter, ...], bool] = {(): True}

    def decide(w: tuple[Letter, ...]) -> bool:
        if w in memo:
            return memo[w]
        memo[w] = False  # guards against revisiting along the recursion
        ok = False
        for i in range(len(w) - 1):
            (x, s), (y, t) = w[i], w[i + 1]
            if t == -s and eps.same_block(x, y):
                if decide(_reduce(w[:i] + w[i + 2 :])):
                    ok = True
                    break
        memo[w] = ok
        return ok

    return frozenset(w for w in _raw_words(alphabet, length_cap) if decide(w))


def v_psi_ball(
    psi: PsiAssignment, alphabet: int, length_cap: int, max_cap: int = DEFAULT_CLOSURE_CAP
) -> frozenset[FreeWord]:
    """Ball of the subgroup generated by {w g w^-1 : g an in-block pair}.

    For a constant assignment the ball is computed exactly (deletion search,
    see _constant_closure).  For finitely many overrides the closure is a
    bounded semi-decision: presence proves membership, absence at the cap
    proves nothing.
    """
    if length_cap > max_cap:
        raise CapExceeded(f"length cap {length_cap} exceeds maximum {max_cap}")
    if not psi.overrides:
        raw = _constant_closure(psi.default, alphabet, length_cap)
        return frozenset(FreeWord(w, alphabet) for w in raw)
    internal = length_cap + CLOSURE_SLACK
    gens: set[tuple[Letter, ...]] = set()
    for w in _raw_words(alphabet, length_cap // 2 + 1):
        part = psi.at(FreeWord(w, alphabet))
        winv = tuple((p, -s) for p, s in reversed(w))
        for block in part.blocks:
            for x, y in itertools.combinations(sorted(block), 2):
                for pair in (((x, -1), (y, 1)), ((x, 1), (y, -1)),
                             ((y, -1), (x, 1)), ((y, 1), (x, -1))):
                    conj = _reduce(w + pair + winv)
                    if conj and len(conj) <= internal:
                        gens.add(conj)
    visited: set[tuple[Letter, ...]] = {()} | gens
    queue = list(visited)
    while queue:
        w = queue.pop()
        for g in gens:
            nxt = _reduce(w + g)
            if len(nxt) <= internal and nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)
    return frozenset(FreeWord(w, alphabet) for w in visited if len(w) <= length_cap)


@dataclass(frozen=True)
class SymmetrizedSpace:
    """An ultra-metric on X union X^-1 union {e} for the Graev construction.

    Indexing: 0..n-1 are the base letters, n..2n-1 their inverses, 2n is e.
    """

    n: int
    dist: Matrix

    def __post_init__(self):
        object.__setattr__(
            self, "dist", tuple(tuple(Fraction(v) for v in row) for row in self.dist)
        )
        if len(self.dist) != 2 * self.n + 1:
            raise InputError("matrix must cover X, the inverses and e")

    @property
    def e(self) -> int:
        return 2 * self.n

    def inv_index(self, i: int) -> int:
        if i == self.e:
            return i
        return i + self.n if i < self.n else i - self.n

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def letter_index(self, letter: Letter) -> int:
        p, s = letter
        return p if s == 1 else p + self.n


@dataclass(frozen=True)
class GrauCheck:
    ok: bool
    violation: Optional[str]
    strong_pattern: bool  # d(x^-1, y) = max(d(x,e), d(y,e)) throughout


def check_grau_conditions(dbar: SymmetrizedSpace) -> GrauCheck:
    """Verify the inversion-compatibility identities plus ultra-metric
    validity; flag the stronger max-pattern when it holds."""
    bad = validate_ultrametric(dbar.dist)
    if bad is not None:
        return GrauCheck(False, f"not an ultra-metric: {bad}", False)
    half = list(range(dbar.n)) + [dbar.e]
    for i, j in itertools.product(half, repeat=2):
        ii, ji = dbar.inv_index(i), dbar.inv_index(j)
        if dbar.d(ii, ji) != dbar.d(i, j):
            return GrauCheck(
                False, f"d(inv {i}, inv {j}) = {dbar.d(ii, ji)} != d({i},{j}) = {dbar.d(i, j)}", False
            )
        if dbar.d(ii, j) != dbar.d(i, ji):
            return GrauCheck(
                False, f"d(inv {i}, {j}) = {dbar.d(ii, j)} != d({i}, inv {j}) = {dbar.d(i, ji)}", False
            )
    strong = all(
        dbar.d(dbar.inv_index(i), j) == max(dbar.d(i, dbar.e), dbar.d(j, dbar.e))
        for i, j in itertools.product(range(dbar.n), repeat=2)
    )
    return GrauCheck(True, None, strong)


def _trivial_sequences(alphabet: tuple[int, ...], length: int, dbar: SymmetrizedSpace):
    """All index sequences of the given length over the alphabet whose word
    freely reduces to e.  Cached per (alphabet, length)."""
    key = (alphabet, length, dbar.n)
    cache = _trivial_sequences.cache
    if key in cache:
        return cache[key]
    out: list[tuple[int, ...]] = []

    def rec(stack: tuple[int, ...], seq: list[int], remaining: int) -> None:
        if remaining == 0:
            if not stack:
                out.append(tuple(seq))
            return
        if len(stack) > remaining:
            return
        for a in alphabet:
            if a == dbar.e:
                nstack = stack
            elif stack and stack[-1] == dbar.inv_index(a):
                nstack = stack[:-1]
            else:
                nstack = stack + (a,)
            seq.append(a)
            rec(nstack, seq, remaining - 1)
            seq.pop()

    rec((), [], length)
    cache[key] = out
    return out


_trivial_sequences.cache = {}


def _delta_word(
    w: FreeWord, dbar: SymmetrizedSpace, alphabet: tuple[int, ...]
) -> Fraction:
    """min over trivial words t (same padded length, letters from the given
    alphabet) of the max letterwise distance to w."""
    if w.is_identity():
        return Fraction(0)
    m = len(w)
    target = m if m % 2 == 0 else m + 1
    widx = [dbar.letter_index(l) for l in w.letters]
    paddings = []
    for positions in itertools.combinations(range(target), target - m):
        seq = []
        it = iter(widx)
        for i in range(target):
            seq.append(dbar.e if i in positions else next(it))
        paddings.append(seq)
    best: Optional[Fraction] = None
    dist = dbar.dist
    for t in _trivial_sequences(alphabet, target, dbar):
        for seq in paddings:
            cost = Fraction(0)
            for i in range(target):
                v = dist[seq[i]][t[i]]
                if v > cost:
                    cost = v
                    if best is not None and cost >= best:
                        break
            else:
                if best is None or cost < best:
                    best = cost
    assert best is not None
    return best


def word_alphabet(w: FreeWord, dbar: SymmetrizedSpace, extra: Sequence[int] = ()) -> tuple[int, ...]:
    """Indices of letters(w), their inverses and e, plus optional extras."""
    s = {dbar.e}
    for p, _ in w.letters:
        s.add(p)
        s.add(p + dbar.n)
    for p in extra:
        s.add(p)
        s.add(p + dbar.n)
    return tuple(sorted(s))


def graev_delta_bruteforce(
    u: FreeWord,
    v: FreeWord,
    dbar: SymmetrizedSpace,
    cap: int = DEFAULT_DELTA_CAP,
    extra_letters: Sequence[int] = (),
) -> Fraction:
    """Brute-force Graev-type ultra-metric: delta(u, v) as a bottleneck
    matching between u^-1 v (padded with e) and trivial words over the
    restricted alphabet."""
    check = check_grau_conditions(dbar)
    if not check.ok:
        raise PreconditionError(f"symmetrized metric invalid: {check.violation}")
    w = fg_multiply(fg_invert(u), v)
    if len(w) > cap:
        raise CapExceeded(f"reduced length {len(w)} exceeds cap {cap}")
    return _delta_word(w, dbar, word_alphabet(w, dbar, extra_letters))


def project_to_boolean(w: FreeWord) -> BooleanWord:
    """Support of the odd-exponent-sum letters."""
    parity: dict[int, int] = {}
    for p, s in w.letters:
        parity[p] = parity.get(p, 0) ^ 1
    return BooleanWord(frozenset(p for p, odd in parity.items() if odd), w.alphabet)


def project_to_abelian(w: FreeWord) -> AbelianWord:
    """Signed letter sums."""
    acc: dict[int, int] = {}
    for p, s in w.letters:
        acc[p] = acc.get(p, 0) + s
    return AbelianWord.from_dict(acc, w.alphabet)

"""Set partitions, ordered set partitions and the counting functions built on them.

Partitions are immutable and always held in canonical form (blocks sorted,
blocks ordered by their minimum), so equality and hashing are structural.
Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .config import DomainError, check_cap

Block = tuple[int, ...]


# ---------------------------------------------------------------------------
# text form


def _format_blocks(blocks: Sequence[Block], wide: bool) -> str:
    sep = "," if wide else ""
    return "|".join(sep.join(str(e) for e in b) for b in blocks)


def _parse_blocks(text: str, n: int | None = None) -> list[Block]:
    text = text.strip()
    if not text:
        raise DomainError("empty partition string")
    wide = "," in text or (n is not None and n > 9)
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise DomainError(f"empty block in {text!r}")
        tokens = chunk.split(",") if wide else list(chunk)
        try:
            blocks.append(tuple(int(t) for t in tokens))
        except ValueError:
            raise DomainError(f"bad element in {text!r}") from None
    return blocks


def format_set(elements: Iterable[int], n: int | None = None) -> str:
    elements = sorted(elements)
    wide = (n if n is not None else max(elements, default=0)) > 9
    return ("," if wide else "").join(str(e) for e in elements)


def parse_set(text: str, n: int | None = None) -> frozenset[int]:
    (block,) = _parse_blocks(text, n)
    if len(set(block)) != len(block):
        raise DomainError(f"repeated element in {text!r}")
    return frozenset(block)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class SetPartition:
    """An unordered set partition of ``{1, ..., n}``."""

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen = [e for b in blocks for e in b]
        if any(not b for b in blocks):
            raise DomainError("set partition has an empty block")
        if sorted(seen) != list(range(1, self.n + 1)):
            raise DomainError(f"blocks {self.blocks} do not partition [{self.n}]")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        blocks = _parse_blocks(text, n)
        size = sum(len(b) for b in blocks) if n is None else n
        return cls(size, tuple(blocks))

    @classmethod
    def finest(cls, n: int) -> "SetPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def coarsest(cls, n: int) -> "SetPartition":
        return cls(n, (tuple(range(1, n + 1)),))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return _format_blocks(self.blocks, self.n > 9)

    def block_of(self) -> dict[int, int]:
        """Map each element to the index of its block."""
        return {e: i for i, b in enumerate(self.blocks) for e in b}

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def refines(self, other: "SetPartition") -> bool:
        """True if every block of ``self`` lies inside a block of ``other``."""
        if self.n != other.n:
            raise DomainError("partitions of different ground sets")
        where = other.block_of()
        return all(len({where[e] for e in b}) == 1 for b in self.blocks)


@dataclass(frozen=True)
class OrderedSetPartition:
    """A sequence of disjoint nonempty blocks whose union is ``ground``."""

    blocks: tuple[Block, ...]
    ground: frozenset[int] = None  # type: ignore[assignment]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise DomainError("ordered set partition has an empty block")
        elements = [e for b in blocks for e in b]
        if len(elements) != len(set(elements)):
            raise DomainError(f"blocks {self.blocks} are not disjoint")
        ground = frozenset(elements) if self.ground is None else frozenset(self.ground)
        if ground != frozenset(elements):
            raise DomainError(f"blocks {self.blocks} do not cover {sorted(ground)}")
        if not ground:
            raise DomainError("ordered set partition of the empty set")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "ground", ground)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "OrderedSetPartition":
        return cls(tuple(_parse_blocks(text, n)))

    @classmethod
    def from_permutation(cls, word: Sequence[int]) -> "OrderedSetPartition":
        return cls(tuple((e,) for e in word))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return _format_blocks(self.blocks, max(self.ground) > 9)

    def position(self) -> dict[int, int]:
        """Map each element to its (0-based) block index."""
        return {e: i for i, b in enumerate(self.blocks) for e in b}

    def is_fine(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def inverse_word(self, n: int) -> list[int]:
        """For an OSP of [n] with singleton blocks, the inverse permutation (1-based)."""
        if not self.is_fine() or self.ground != frozenset(range(1, n + 1)):
            raise DomainError(f"{self} is not a permutation of [{n}]")
        pos = self.position()
        return [pos[i] + 1 for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# enumeration


def _restricted_growth(size: int) -> Iterator[list[int]]:
    word = [0] * size
    maxima = [0] * size

    def rec(i: int) -> Iterator[list[int]]:
        if i == size:
            yield word
            return
        for v in range(maxima[i - 1] + 2):
            word[i] = v
            maxima[i] = max(maxima[i - 1], v)
            yield from rec(i + 1)

    if size == 0:
        yield []
        return
    yield from rec(1)


def _partitions_of(elements: Sequence[int]) -> Iterator[tuple[Block, ...]]:
    elements = sorted(elements)
    for word in _restricted_growth(len(elements)):
        blocks: list[list[int]] = [[] for _ in range(max(word, default=-1) + 1)]
        for e, v in zip(elements, word):
            blocks[v].append(e)
        yield tuple(tuple(b) for b in blocks)


def enumerate_set_partitions(n: int) -> Iterator[SetPartition]:
    """Yield every set partition of [n] once, in restricted-growth order."""
    check_cap("set_partitions", n)
    return iter_set_partitions(n)


def iter_set_partitions(n: int) -> Iterator[SetPartition]:
    """Uncapped form of :func:`enumerate_set_partitions`; callers enforce their own cap."""
    for blocks in _partitions_of(range(1, n + 1)):
        yield SetPartition(n, blocks)


def enumerate_ordered_set_partitions(ground: Iterable[int]) -> Iterator[OrderedSetPartition]:
    ground = frozenset(ground)
    if not ground:
        raise DomainError("cannot enumerate ordered set partitions of the empty set")
    for blocks in _partitions_of(sorted(ground)):
        for order in itertools.permutations(blocks):
            yield OrderedSetPartition(order, ground)


def refinements(sigma: SetPartition) -> Iterator[SetPartition]:
    """Every partition tau with tau <= sigma in the refinement order."""
    for parts in itertools.product(*(list(_partitions_of(b)) for b in sigma.blocks)):
        yield SetPartition(sigma.n, tuple(blk for part in parts for blk in part))


# ---------------------------------------------------------------------------
# counting functions


@lru_cache(maxsize=None)
def fubini(m: int) -> int:
    if m < 0:
        raise DomainError("fubini of a negative number")
    if m == 0:
        return 1
    return sum(math.comb(m, k) * fubini(m - k) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def stirling2(m: int, p: int) -> int:
    if m < 0 or p < 0:
        raise DomainError("stirling2 of a negative number")
    if m == 0 or p == 0:
        return int(m == p)
    return p * stirling2(m - 1, p) + stirling2(m - 1, p - 1)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def forest_count(m: int) -> int:
    """Number of labeled forests on m vertices (rooted at the tree containing vertex 1)."""
    if m == 0:
        return 1
    return sum(math.comb(m - 1, k - 1) * cayley(k) * forest_count(m - k) for k in range(1, m + 1))


def cayley(m: int) -> int:
    """m^(m-2), the number of labeled trees on m vertices, evaluated exactly (1 for m=1)."""
    value = Fraction(m) ** (m - 2)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral tree count for m={m}")
    return value.numerator


# ---------------------------------------------------------------------------
# operations on ordered set partitions


def restrict_osp(pi: OrderedSetPartition, K: Iterable[int]) -> OrderedSetPartition:
    K = frozenset(K)
    if not K:
        raise DomainError("restriction to the empty set")
    if not K <= pi.ground:
        raise DomainError(f"{sorted(K)} is not a subset of the ground set of {pi}")
    blocks = [tuple(e for e in b if e in K) for b in pi.blocks]
    return OrderedSetPartition(tuple(b for b in blocks if b), K)


def reverse_osp(pi: OrderedSetPartition) -> OrderedSetPartition:
    return OrderedSetPartition(pi.blocks[::-1], pi.ground)


def is_adjacent_refinement(pi: OrderedSetPartition, coarser: OrderedSetPartition) -> bool:
    """True iff every block of ``coarser`` is a union of consecutive blocks of ``pi``."""
    if pi.ground != coarser.ground:
        raise DomainError("ordered set partitions over different ground sets")
    i = 0
    for target in coarser.blocks:
        target = set(target)
        collected: set[int] = set()
        while collected != target:
            if i == len(pi.blocks) or not set(pi.blocks[i]) <= target:
                return False
            collected |= set(pi.blocks[i])
            i += 1
    return i == len(pi.blocks)


# ---------------------------------------------------------------------------
# partition lattice


def join_partitions(sigma: SetPartition, tau: SetPartition) -> SetPartition:
    """Finest common coarsening of two partitions (union-find over both block systems)."""
    if sigma.n != tau.n:
        raise DomainError(f"join of partitions of [{sigma.n}] and [{tau.n}]")
    parent = list(range(sigma.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in itertools.chain(sigma.blocks, tau.blocks):
        root = find(block[0])
        for e in block[1:]:
            parent[find(e)] = root
    groups: dict[int, list[int]] = {}
    for e in range(1, sigma.n + 1):
        groups.setdefault(find(e), []).append(e)
    return SetPartition(sigma.n, tuple(tuple(g) for g in groups.values()))


def mobius_to_top(sigma: SetPartition) -> int:
    """mu(sigma, 1) in the partition lattice; [sigma, 1] is a partition lattice on the blocks."""
    k = len(sigma)
    return (-1) ** (k - 1) * math.factorial(k - 1)


def tree_weight(pi: SetPartition) -> int:
    """Number of forests whose components are exactly the blocks of ``pi``."""
    return math.prod(cayley(len(b)) for b in pi.blocks)


def forest_sum_by_refinements(sigma: SetPartition) -> int:
    return sum(tree_weight(tau) for tau in refinements(sigma))


def forest_sum(sigma: SetPartition) -> int:
    """Sum of tree weights over refinements of ``sigma``: a product of per-block forest counts."""
    return math.prod(forest_count(len(b)) for b in sigma.blocks)

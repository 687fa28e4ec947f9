"""Uniform set families over a palette [ell] and the Property B / Property K checks.

Element sets are bitmasks: bit ``x - 1`` stands for element ``x``.  All I/O is
1-indexed; masks never leave the package unconverted.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

MAX_ELL = 64
MAX_CANONICAL_ELL = 12


class UnsupportedParameters(ValueError):
    """Raised when parameters are valid but outside what an exact routine handles."""


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for x in elems:
        m |= 1 << (x - 1)
    return m


def elems_of(mask: int) -> tuple[int, ...]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def lex_less(a: int, b: int) -> bool:
    """True if set ``a`` precedes ``b`` in lexicographic order of sorted tuples.

    Only meaningful for sets of equal size: the smaller set is the one holding
    the least element of the symmetric difference.
    """
    d = a ^ b
    return d != 0 and (d & -d & a) != 0


def lex_key(mask: int, ell: int) -> int:
    """Integer key that sorts equal-size masks in lexicographic order."""
    # reverse the bits so element 1 is most significant, then invert
    r = 0
    for i in range(ell):
        if mask >> i & 1:
            r |= 1 << (ell - 1 - i)
    return -r


def k_subsets(ell: int, k: int) -> list[int]:
    """All k-subsets of [ell] as masks, in lexicographic order."""
    return [mask_of(c) for c in combinations(range(1, ell + 1), k)]


@dataclass(frozen=True)
class GroundParams:
    k: int
    ell: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.ell, int)):
            raise TypeError("k and ell must be integers")
        if not 1 <= self.k <= self.ell:
            raise ValueError(f"need 1 <= k <= ell, got k={self.k}, ell={self.ell}")
        if self.ell > MAX_ELL:
            raise ValueError(f"ell={self.ell} exceeds {MAX_ELL}")

    @property
    def full(self) -> int:
        return (1 << self.ell) - 1


@dataclass(frozen=True)
class SetFamily:
    """A k-uniform family of distinct blocks over [ell], blocks kept in lex order."""

    params: GroundParams
    blocks: tuple[int, ...]

    def __post_init__(self):
        k, full = self.params.k, self.params.full
        for b in self.blocks:
            if b & ~full:
                raise ValueError(f"block {elems_of(b)} leaves [{self.params.ell}]")
            if b.bit_count() != k:
                raise ValueError(f"block {elems_of(b)} does not have {k} elements")
        if len(set(self.blocks)) != len(self.blocks):
            raise ValueError("duplicate blocks")
        ordered = tuple(sorted(self.blocks, key=lambda m: lex_key(m, self.params.ell)))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def from_sets(cls, k: int, ell: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        params = GroundParams(k, ell)
        blocks = []
        for s in sets:
            s = list(s)
            if len(set(s)) != len(s):
                raise ValueError(f"repeated element in {s}")
            if any(not 1 <= x <= ell for x in s):
                raise ValueError(f"element out of range 1..{ell} in {s}")
            blocks.append(mask_of(s))
        return cls(params, tuple(blocks))

    @classmethod
    def complete(cls, k: int, ell: int) -> "SetFamily":
        return cls(GroundParams(k, ell), tuple(k_subsets(ell, k)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.blocks)

    def sets(self) -> list[list[int]]:
        return [list(elems_of(b)) for b in self.blocks]

    def to_json(self) -> dict:
        return {"ell": self.params.ell, "k": self.params.k, "sets": self.sets()}

    @classmethod
    def from_json(cls, data: dict | str) -> "SetFamily":
        if isinstance(data, str):
            data = json.loads(data)
        for s in data["sets"]:
            if list(s) != sorted(s):
                raise ValueError(f"set {s} is not sorted ascending")
        return cls.from_sets(int(data["k"]), int(data["ell"]), data["sets"])

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, elems_of(b))) + "}" for b in self.blocks)
        return f"SetFamily(k={self.params.k}, ell={self.params.ell}, [{body}])"


@dataclass(frozen=True)
class PropertyWitness:
    kind: str  # "B" or "K"
    witness: int

    @property
    def elements(self) -> tuple[int, ...]:
        return elems_of(self.witness)

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.elements)}


def is_property_b_witness(blocks: Sequence[int], b: int) -> bool:
    return all(f & b and f & b != f for f in blocks)


def is_property_k_witness(blocks: Sequence[int], kset: int) -> bool:
    return all(f & kset for f in blocks)


def has_property_b(fam: SetFamily) -> Optional[PropertyWitness]:
    """First set meeting every block and containing none, by size then lex order."""
    blocks = fam.blocks
    ell = fam.params.ell
    for size in range(ell + 1):
        for c in combinations(range(1, ell + 1), size):
            b = mask_of(c)
            if is_property_b_witness(blocks, b):
                return PropertyWitness("B", b)
    return None


def has_property_k(fam: SetFamily) -> Optional[PropertyWitness]:
    """Lex-first (k-1)-subset of [ell] that intersects every block, if any."""
    blocks = fam.blocks
    p = fam.params
    for c in combinations(range(1, p.ell + 1), p.k - 1):
        kset = mask_of(c)
        if is_property_k_witness(blocks, kset):
            return PropertyWitness("K", kset)
    return None


def _min_image(cells: tuple[int, ...], g: int) -> int:
    """Least image of block g over relabellings that send cell i onto the i-th label interval."""
    img = 0
    offset = 0
    for cell in cells:
        c = (g & cell).bit_count()
        img |= ((1 << c) - 1) << offset
        offset += cell.bit_count()
    return img


def _refine(cells: tuple[int, ...], g: int) -> tuple[int, ...]:
    out = []
    for cell in cells:
        inside, outside = cell & g, cell & ~g
        if inside:
            out.append(inside)
        if outside:
            out.append(outside)
    return tuple(out)


def canonical_blocks(blocks: Sequence[int], ell: int) -> tuple[int, ...]:
    """Lexicographically least image of ``blocks`` under permutations of [ell].

    Builds the image one position at a time.  A state is an ordered partition
    of [ell] (cell i owns the i-th run of labels) plus the blocks not yet
    placed; each step keeps only the states that realise the smallest next
    block, so the search never enumerates the full symmetric group.
    """
    if not blocks:
        return ()
    k = blocks[0].bit_count()
    if len(blocks) == math.comb(ell, k):
        return tuple(k_subsets(ell, k))
    full = (1 << ell) - 1
    states = {((full,), frozenset(blocks))}
    image: list[int] = []
    for _ in range(len(blocks)):
        best = None
        nxt: set = set()
        for cells, rest in states:
            for g in rest:
                img = _min_image(cells, g)
                if best is None or lex_less(img, best):
                    best = img
                    nxt = {(_refine(cells, g), rest - {g})}
                elif img == best:
                    nxt.add((_refine(cells, g), rest - {g}))
        image.append(best)
        states = nxt
    return tuple(image)


def canonical_form(fam: SetFamily) -> SetFamily:
    if fam.params.ell > MAX_CANONICAL_ELL:
        raise UnsupportedParameters(
            f"exact canonical form limited to ell <= {MAX_CANONICAL_ELL}, got {fam.params.ell}"
        )
    return SetFamily(fam.params, canonical_blocks(fam.blocks, fam.params.ell))


def permute(fam: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Image of ``fam`` under the relabelling x -> perm[x-1] (perm is 1-indexed values)."""
    blocks = tuple(mask_of(perm[x - 1] for x in elems_of(b)) for b in fam.blocks)
    return SetFamily(fam.params, blocks)

"""Exact extremal numbers M(k, ell) and R(k, ell).

Both numbers are minimum set covers.  For R the universe is every
(k-1)-subset K of [ell] and block F covers K when F and K are disjoint.  For M
the universe is every B subset of [ell] up to complement and F covers B when F
is inside B or disjoint from it.  A family lacks the property exactly when it
covers its universe.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .setfam import (
    GroundParams,
    SetFamily,
    UnsupportedParameters,
    canonical_blocks,
    elems_of,
    has_property_b,
    has_property_k,
    k_subsets,
    lex_key,
)

MAX_EXACT_ELL = 12
# prefix canonicalisation is used up to this palette size, first-block
# normalisation beyond it
MAX_ORBIT_PRUNING_ELL = 9


class Infinity(enum.Enum):
    INFINITE = "infinite"

    def __str__(self) -> str:
        return "infinite"


INFINITE = Infinity.INFINITE


class Status(str, enum.Enum):
    EXACT = "exact"
    INFINITE = "infinite"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0


@dataclass
class ExtremalResult:
    quantity: str  # "M" or "R"
    params: GroundParams
    value: Union[int, Infinity, None]
    witness: Optional[SetFamily] = None
    stats: SearchStats = field(default_factory=SearchStats)
    lower: Optional[int] = None
    upper: Optional[int] = None
    canonical_witness_count: Optional[int] = None

    @property
    def status(self) -> Status:
        if self.value is INFINITE:
            return Status.INFINITE
        if self.value is None:
            return Status.INCONCLUSIVE
        return Status.EXACT

    def to_json(self) -> dict:
        if self.value is INFINITE:
            value = "infinite"
        else:
            value = self.value
        out = {
            "quantity": self.quantity,
            "k": self.params.k,
            "ell": self.params.ell,
            "status": self.status.value,
            "value": value,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "nodes": self.stats.nodes,
            "seconds": self.stats.seconds,
        }
        if self.status is Status.INCONCLUSIVE:
            out["bracket"] = [self.lower, self.upper]
        if self.canonical_witness_count is not None:
            out["canonical_witness_count"] = self.canonical_witness_count
        return out


@dataclass(frozen=True)
class BracketValue:
    exact: Fraction
    approx: float


class BudgetExhausted(Exception):
    pass


class _CoverSearch:
    """Minimum cover of a bitmask universe by a fixed list of blocks.

    ``covers[i]`` is the universe mask covered by block ``blocks[i]``.  The
    search is depth-first, branching on the blocks that cover the lowest
    uncovered element, with partial families memoised by their canonical form
    (or by the plain block set past the orbit-pruning limit).
    """

    def __init__(self, blocks, covers, universe, ell, budget, orbit_pruning=True):
        self.blocks = blocks
        self.covers = covers
        self.universe = universe
        self.ell = ell
        self.deadline = time.monotonic() + budget
        self.orbit_pruning = orbit_pruning
        self.nodes = 0
        n_elems = universe.bit_length()
        self.candidates = [
            [i for i, c in enumerate(covers) if c >> e & 1] for e in range(n_elems)
        ]

    def _key(self, chosen):
        if not self.orbit_pruning:
            return frozenset(chosen)
        if 2 * len(chosen) > len(self.blocks):
            # relabellings fix the set of all blocks, so complements are as good a key
            rest = set(range(len(self.blocks))).difference(chosen)
            return "c", canonical_blocks([self.blocks[i] for i in rest], self.ell)
        return canonical_blocks([self.blocks[i] for i in chosen], self.ell)

    def _tick(self):
        self.nodes += 1
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def greedy(self) -> list[int]:
        chosen = []
        covered = 0
        while covered != self.universe:
            best = max(
                range(len(self.covers)),
                key=lambda i: ((self.covers[i] & ~covered).bit_count(), -i),
            )
            chosen.append(best)
            covered |= self.covers[best]
        return chosen

    def search(self, size: int, collect: bool = False):
        """Covers with exactly ``size`` blocks, as canonical block tuples.

        With ``collect`` false, stops at the first cover found.
        """
        self.seen = set()
        self.found = []
        self._size = size
        self._collect = collect
        root = [0] if not self.orbit_pruning else []
        if root:
            if size == 0:
                return []
            self.seen.add(self._key(root))
            self._dfs(root, self.covers[0])
        else:
            self._dfs([], 0)
        return self.found

    def _dfs(self, chosen, covered) -> bool:
        self._tick()
        uncovered = self.universe & ~covered
        if not uncovered:
            if len(chosen) == self._size:
                fam = canonical_blocks([self.blocks[i] for i in chosen], self.ell)
                if fam not in self.found:
                    self.found.append(fam)
                return not self._collect
            return False
        left = self._size - len(chosen)
        if left <= 0:
            return False
        need = uncovered.bit_count()
        gains = sorted(((c & uncovered).bit_count() for c in self.covers), reverse=True)
        if sum(gains[:left]) < need:
            return False
        e = (uncovered & -uncovered).bit_length() - 1
        for i in self.candidates[e]:
            nxt = chosen + [i]
            key = self._key(nxt)
            if key in self.seen:
                continue
            self.seen.add(key)
            if self._dfs(nxt, covered | self.covers[i]):
                return True
        return False


def _check_exact(params: GroundParams):
    if params.k < 2:
        raise UnsupportedParameters("extremal numbers need k >= 2")
    if params.ell > MAX_EXACT_ELL:
        raise UnsupportedParameters(f"exact search limited to ell <= {MAX_EXACT_ELL}")


def _r_instance(params: GroundParams):
    k, ell = params.k, params.ell
    blocks = k_subsets(ell, k)
    ksets = k_subsets(ell, k - 1)
    covers = []
    for f in blocks:
        c = 0
        for j, kset in enumerate(ksets):
            if not f & kset:
                c |= 1 << j
        covers.append(c)
    return blocks, covers, (1 << len(ksets)) - 1


def _m_instance(params: GroundParams):
    k, ell = params.k, params.ell
    blocks = k_subsets(ell, k)
    # one representative per complement pair: the subsets avoiding element ell
    reps = range(1 << (ell - 1))
    covers = []
    for f in blocks:
        c = 0
        for j, b in enumerate(reps):
            if f & b == f or not f & b:
                c |= 1 << j
        covers.append(c)
    return blocks, covers, (1 << len(reps)) - 1


def _solve(quantity, params, instance, start, budget, enumerate_witnesses):
    t0 = time.monotonic()
    blocks, covers, universe = instance
    search = _CoverSearch(
        blocks, covers, universe, params.ell, budget,
        orbit_pruning=params.ell <= MAX_ORBIT_PRUNING_ELL,
    )
    greedy = search.greedy()
    upper = len(greedy)
    upper_witness = SetFamily(params, tuple(blocks[i] for i in greedy))
    lower = max(start, 1)
    best = canonical_blocks(upper_witness.blocks, params.ell)
    result = ExtremalResult(quantity, params, None)
    try:
        size = lower
        while size < upper:
            found = search.search(size)
            if found:
                upper = size
                best = found[0]
                break
            lower = size + 1
            size += 1
    except BudgetExhausted:
        result.lower, result.upper = lower, upper
        result.witness = upper_witness
        result.stats = SearchStats(search.nodes, time.monotonic() - t0)
        return result
    result.value = upper
    result.witness = SetFamily(params, best)
    if upper == len(blocks):
        # only the complete family has that many blocks
        result.canonical_witness_count = 1
    elif enumerate_witnesses and params.ell <= MAX_ORBIT_PRUNING_ELL:
        try:
            fams = {SetFamily(params, f) for f in search.search(upper, collect=True)}
        except BudgetExhausted:
            # value is proven; keep the first canonical witness
            fams = None
        if fams:
            result.witness = min(fams, key=lambda s: [lex_key(b, params.ell) for b in s.blocks])
            result.canonical_witness_count = len(fams)
    result.stats = SearchStats(search.nodes, time.monotonic() - t0)
    return result


def compute_R(params: GroundParams, budget: float = 60.0,
              enumerate_witnesses: bool = True) -> ExtremalResult:
    """Least number of k-subsets of [ell] with no (k-1)-set meeting all of them."""
    _check_exact(params)
    k, ell = params.k, params.ell
    if ell <= 2 * k - 2:
        return ExtremalResult("R", params, INFINITE)
    start = max(k, math.ceil(lower_bound_R(params).exact))
    return _solve("R", params, _r_instance(params), start, budget, enumerate_witnesses)


def compute_M(params: GroundParams, budget: float = 60.0,
              enumerate_witnesses: bool = True) -> ExtremalResult:
    """Least number of k-subsets of [ell] with no Property B set."""
    _check_exact(params)
    k, ell = params.k, params.ell
    if ell <= 2 * k - 2:
        return ExtremalResult("M", params, INFINITE)
    # each block covers 2**(ell-k) of the 2**(ell-1) complement classes
    start = 2 ** (k - 1)
    # a (k-1)-set meeting every block is one colour class of a proper
    # 2-colouring, so M >= R >= the factorial lower bound
    start = max(start, math.ceil(lower_bound_R(params).exact))
    return _solve("M", params, _m_instance(params), start, budget, enumerate_witnesses)


def _check_bracket_domain(params: GroundParams):
    if params.k < 2 or params.ell < 2 * params.k - 1:
        raise ValueError(f"bracket needs k >= 2 and ell >= 2k-1, got {params}")


def lower_bound_R(params: GroundParams) -> BracketValue:
    """ell!(ell-2k+1)! / ((ell-k)!(ell-k+1)!) as an exact rational."""
    _check_bracket_domain(params)
    k, ell = params.k, params.ell
    f = math.factorial
    exact = Fraction(f(ell) * f(ell - 2 * k + 1), f(ell - k) * f(ell - k + 1))
    return BracketValue(exact, float(exact))


def upper_bound_R(params: GroundParams) -> BracketValue:
    """Lower bound times ln C(ell, k-1); ``exact`` carries the rational factor only."""
    low = lower_bound_R(params)
    factor = math.log(math.comb(params.ell, params.k - 1))
    return BracketValue(low.exact, float(low.exact) * factor)


def naive_R_oracle(params: GroundParams) -> ExtremalResult:
    """R(k, ell) by plain enumeration of subfamilies in order of size."""
    k, ell = params.k, params.ell
    if k < 2 or k > 3 or math.comb(ell, k) > 20:
        raise UnsupportedParameters("brute force needs 2 <= k <= 3 and C(ell, k) <= 20")
    t0 = time.monotonic()
    blocks = [frozenset(c) for c in combinations(range(1, ell + 1), k)]
    ksets = [frozenset(c) for c in combinations(range(1, ell + 1), k - 1)]
    nodes = 0
    for r in range(len(blocks) + 1):
        for fam in combinations(blocks, r):
            nodes += 1
            if not any(all(f & K for f in fam) for K in ksets):
                wit = SetFamily.from_sets(k, ell, [sorted(f) for f in fam])
                return ExtremalResult("R", params, r, wit,
                                      SearchStats(nodes, time.monotonic() - t0))
    return ExtremalResult("R", params, INFINITE, None,
                          SearchStats(nodes, time.monotonic() - t0))


def verify_witness(result: ExtremalResult) -> bool:
    """The witness has the declared size and lacks the property."""
    if result.status is not Status.EXACT or result.witness is None:
        return False
    if len(result.witness) != result.value:
        return False
    check = has_property_k if result.quantity == "R" else has_property_b
    return check(result.witness) is None


def describe(result: ExtremalResult) -> str:
    p = result.params
    head = f"{result.quantity}({p.k},{p.ell})"
    if result.status is Status.INFINITE:
        return f"{head} = infinite"
    if result.status is Status.INCONCLUSIVE:
        return f"{head} in [{result.lower}, {result.upper}] (budget exhausted)"
    sets = " ".join("".join(map(str, elems_of(b))) if p.ell < 10 else str(list(elems_of(b)))
                    for b in result.witness.blocks)
    return f"{head} = {result.value}  witness: {sets}"

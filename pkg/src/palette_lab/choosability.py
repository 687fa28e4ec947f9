"""(k, ell)-choosability of small graphs.

The adversary search enumerates list-assignments up to two symmetries:
relabelling the palette, and reordering the lists on false twins (mutually
non-adjacent vertices with the same neighbourhood).  On a twin class the
adversary never gains from repeating a list, because a repeated vertex can
copy its twin's colour, so each class draws distinct lists whenever enough
exist.  Vertices of degree below k are peeled off first; they can always be
coloured last.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence

from .setfam import GroundParams, elems_of, k_subsets, mask_of

DEFAULT_MAX_ASSIGNMENTS = 10**8
# colour-permutation tables are built up to this palette size
MAX_PERM_ELL = 8


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    bipartition: Optional[tuple[frozenset, frozenset]] = None

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} leaves 0..{self.n - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.bipartition is not None:
            a, b = (frozenset(s) for s in self.bipartition)
            if a & b or (a | b) != frozenset(range(self.n)):
                raise GraphError("bipartition must split the vertex set")
            for u, v in norm:
                if (u in a) == (v in a):
                    raise GraphError(f"edge {(u, v)} does not cross the bipartition")
            object.__setattr__(self, "bipartition", (a, b))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], bipartition=None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if len(set((min(e), max(e)) for e in edges)) != len(edges):
            raise GraphError("duplicate edge")
        return cls(n, frozenset(edges), bipartition)

    @property
    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def induced(self, vertices: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        edges = frozenset((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos)
        return Graph(len(vertices), edges)

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": sorted([list(e) for e in self.edges])}
        if self.bipartition is not None:
            out["bipartition"] = [sorted(self.bipartition[0]), sorted(self.bipartition[1])]
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        if "n" not in data or "edges" not in data:
            raise GraphError("graph JSON needs 'n' and 'edges'")
        for e in data["edges"]:
            if len(e) != 2:
                raise GraphError(f"edge {e} is not a pair")
        return cls.from_edges(int(data["n"]), data["edges"], data.get("bipartition"))


def complete_bipartite(a: int, b: int) -> Graph:
    edges = frozenset((i, a + j) for i in range(a) for j in range(b))
    return Graph(a + b, edges, (frozenset(range(a)), frozenset(range(a, a + b))))


def cycle(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


@dataclass(frozen=True)
class ListAssignment:
    params: GroundParams
    lists: tuple[int, ...]

    def __post_init__(self):
        for m in self.lists:
            if m & ~self.params.full or m.bit_count() != self.params.k:
                raise ValueError(f"list {elems_of(m)} is not a {self.params.k}-subset of [{self.params.ell}]")

    @classmethod
    def from_lists(cls, k: int, ell: int, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        masks = []
        for lst in lists:
            lst = list(lst)
            if len(set(lst)) != len(lst) or any(not 1 <= x <= ell for x in lst):
                raise ValueError(f"bad list {lst}")
            masks.append(mask_of(lst))
        return cls(GroundParams(k, ell), tuple(masks))

    def to_json(self) -> dict:
        return {"k": self.params.k, "ell": self.params.ell,
                "lists": [list(elems_of(m)) for m in self.lists]}

    @classmethod
    def from_json(cls, data: dict | str) -> "ListAssignment":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_lists(int(data["k"]), int(data["ell"]), data["lists"])


@dataclass(frozen=True)
class Colouring:
    colour: tuple[int, ...]

    def to_json(self) -> dict:
        return {"colour": list(self.colour)}


def is_proper_l_colouring(g: Graph, l: ListAssignment, c: Colouring) -> bool:
    if len(c.colour) != g.n:
        return False
    if any(not (l.lists[v] >> (c.colour[v] - 1)) & 1 for v in range(g.n)):
        return False
    return all(c.colour[u] != c.colour[v] for u, v in g.edges)


def find_l_colouring(g: Graph, l: ListAssignment) -> Optional[Colouring]:
    """A proper L-colouring, or None.

    Backtracking on the vertex with the fewest remaining colours (lowest index
    on ties), trying colours in increasing order; vertices left with one
    colour are assigned immediately.
    """
    if len(l.lists) != g.n:
        raise ValueError("assignment does not cover the graph")
    adj = g.adjacency
    n = g.n
    res = _colour(adj, list(l.lists), [0] * n, (1 << n) - 1)
    if res is None:
        return None
    return Colouring(tuple(c.bit_length() for c in res))


def _assign(adj, dom, col, free, v, c):
    """Colour v with the single-bit colour c; returns new free mask or -1 on wipe-out."""
    col[v] = c
    free &= ~(1 << v)
    nb = adj[v] & free
    while nb:
        low = nb & -nb
        u = low.bit_length() - 1
        nb ^= low
        if dom[u] & c:
            dom[u] &= ~c
            if not dom[u]:
                return -1
    return free


def _colour(adj, dom, col, free):
    # forced moves
    changed = True
    while changed:
        changed = False
        rest = free
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            d = dom[v]
            if not d:
                return None
            if d & (d - 1) == 0:
                free = _assign(adj, dom, col, free, v, d)
                if free < 0:
                    return None
                changed = True
                break
    if not free:
        return col
    best, best_size = -1, 99
    rest = free
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        s = dom[v].bit_count()
        if s < best_size:
            best, best_size = v, s
    d = dom[best]
    while d:
        c = d & -d
        d ^= c
        dom2, col2 = dom[:], col[:]
        f2 = _assign(adj, dom2, col2, free, best, c)
        if f2 < 0:
            continue
        res = _colour(adj, dom2, col2, f2)
        if res is not None:
            return res
    return None


def k_core(g: Graph, k: int) -> list[int]:
    """Vertices surviving repeated deletion of vertices with degree below k."""
    adj = g.adjacency
    alive = set(range(g.n))
    deg = {v: adj[v].bit_count() for v in alive}
    stack = [v for v in alive if deg[v] < k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        nb = adj[v]
        for u in list(alive):
            if nb >> u & 1:
                deg[u] -= 1
                if deg[u] < k:
                    stack.append(u)
    return sorted(alive)


def degeneracy(g: Graph) -> int:
    d = 0
    while k_core(g, d + 1):
        d += 1
    return d


def twin_classes(g: Graph) -> list[list[int]]:
    """False-twin classes, largest first, ties by least vertex."""
    groups: dict[int, list[int]] = {}
    for v, nb in enumerate(g.adjacency):
        groups.setdefault(nb, []).append(v)
    return sorted(groups.values(), key=lambda c: (-len(c), c[0]))


class Status(str, enum.Enum):
    CHOOSABLE = "choosable"
    NOT_CHOOSABLE = "not_choosable"
    INCONCLUSIVE = "inconclusive"


@dataclass
class ChoosabilityVerdict:
    status: Status
    params: GroundParams
    witness: Optional[ListAssignment] = None
    assignments_checked: int = 0
    seconds: float = 0.0
    note: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "k": self.params.k,
            "ell": self.params.ell,
            "witness": self.witness.to_json() if self.witness else None,
            "assignments_checked": self.assignments_checked,
            "seconds": self.seconds,
            "note": self.note,
        }


class _Budget(Exception):
    pass


@dataclass
class _Counter:
    deadline: float
    limit: int
    checked: int = 0

    def tick(self):
        self.checked += 1
        if self.checked > self.limit:
            raise _Budget("assignment limit")
        if self.checked & 255 == 0 and time.monotonic() > self.deadline:
            raise _Budget("time budget")


def _perm_tables(lists: list[int], ell: int) -> list[tuple[int, ...]]:
    index = {m: i for i, m in enumerate(lists)}
    tables = []
    for p in permutations(range(ell)):
        tab = []
        for m in lists:
            img = 0
            for x in range(ell):
                if m >> x & 1:
                    img |= 1 << p[x]
            tab.append(index[img])
        tables.append(tuple(tab))
    return tables


def _orbit_reps(candidates, group):
    """(rep, stabiliser) pairs, reps being the least members of their orbits."""
    marked = set()
    out = []
    for t in candidates:
        if t in marked:
            continue
        stab = []
        for sigma in group:
            img = tuple(sorted(sigma[i] for i in t))
            marked.add(img)
            if img == t:
                stab.append(sigma)
        out.append((t, stab))
    return out


def _complete_bipartite_sides(g: Graph, classes) -> bool:
    if len(classes) != 2:
        return False
    a, b = classes
    return len(g.edges) == len(a) * len(b)


def _bipartite_colourable(a_lists, b_lists) -> bool:
    """Colourability of a complete bipartite graph given per-side lists."""
    seen = set()
    for choice in product(*[[1 << (x - 1) for x in elems_of(m)] for m in a_lists]):
        used = 0
        for c in choice:
            used |= c
        if used in seen:
            continue
        seen.add(used)
        if all(m & ~used for m in b_lists):
            return True
    return False


def _fill(size: int, ncands: int):
    """Candidate index tuples for a twin class of ``size`` vertices."""
    if size <= ncands:
        return list(combinations(range(ncands), size))
    return [tuple(range(ncands))]


def _expand(t: tuple, size: int) -> list[int]:
    return [t[i % len(t)] for i in range(size)]


def decide_kl_choosable(
    g: Graph,
    params: GroundParams,
    budget: float = 60.0,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    symmetry: bool = True,
    peel: bool = True,
) -> ChoosabilityVerdict:
    """Exhaustive adversary search for a (k, ell)-list-assignment with no proper colouring.

    ``symmetry=False`` walks every assignment in product order and is meant
    as a reference; ``peel=False`` keeps low-degree vertices in the search.
    """
    t0 = time.monotonic()
    if not isinstance(g, Graph):
        raise GraphError("expected a Graph")
    k, ell = params.k, params.ell
    counter = _Counter(t0 + budget, max_assignments)
    lists = k_subsets(ell, k)
    verdict = ChoosabilityVerdict(Status.CHOOSABLE, params)
    try:
        if symmetry:
            failing = _reduced_search(g, k, ell, lists, counter, verdict, peel)
        else:
            failing = _plain_search(g, k, ell, lists, counter)
    except _Budget as exc:
        verdict.status = Status.INCONCLUSIVE
        verdict.note = str(exc)
        failing = None
    if failing is not None:
        verdict.status = Status.NOT_CHOOSABLE
        verdict.witness = ListAssignment(params, tuple(failing))
    verdict.assignments_checked = counter.checked
    verdict.seconds = time.monotonic() - t0
    return verdict


def _plain_search(g, k, ell, lists, counter):
    params = GroundParams(k, ell)
    for idx in product(range(len(lists)), repeat=g.n):
        counter.tick()
        la = ListAssignment(params, tuple(lists[i] for i in idx))
        if find_l_colouring(g, la) is None:
            return list(la.lists)
    return None


def _reduced_search(g, k, ell, lists, counter, verdict, peel=True):
    core = k_core(g, k) if peel else list(range(g.n))
    if not core:
        verdict.note = f"degeneracy below {k}"
        return None
    sub = g.induced(core)
    classes = twin_classes(sub)
    ncands = len(lists)
    if ell <= MAX_PERM_ELL:
        group = _perm_tables(lists, ell)
    else:
        group = [tuple(range(ncands))]
    bip = _complete_bipartite_sides(sub, classes)
    params = GroundParams(k, ell)

    def leaf(choice):
        counter.tick()
        per_vertex = [0] * sub.n
        for cls, t in zip(classes, choice):
            for v, i in zip(cls, _expand(t, len(cls))):
                per_vertex[v] = lists[i]
        if bip:
            a = [per_vertex[v] for v in classes[0]]
            b = [per_vertex[v] for v in classes[1]]
            ok = _bipartite_colourable(a, b)
        else:
            ok = find_l_colouring(sub, ListAssignment(params, tuple(per_vertex))) is not None
        return None if ok else per_vertex

    def dfs(j, stab, choice):
        if j == len(classes):
            return leaf(choice)
        for t, sub_stab in _orbit_reps(_fill(len(classes[j]), ncands), stab):
            res = dfs(j + 1, sub_stab, choice + [t])
            if res is not None:
                return res
        return None

    bad = dfs(0, group, [])
    if bad is None:
        return None
    full = [lists[0]] * g.n
    for v, m in zip(core, bad):
        full[v] = m
    return full


def decide_choosable(g: Graph, k: int, budget: float = 60.0,
                     max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> ChoosabilityVerdict:
    """k-choosability, decided as (k, max(n, k))-choosability."""
    ell = max(g.n, k)
    return decide_kl_choosable(g, GroundParams(k, ell), budget, max_assignments)

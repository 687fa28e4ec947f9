"""All graphs on n vertices up to isomorphism, grown one vertex at a time.

Each graph on n-1 vertices is extended by a new vertex joined to every
possible neighbourhood, and children are kept only when their canonical code
is new.  Canonical codes maximise the upper-triangle adjacency word over the
labellings that list vertices by nonincreasing degree.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .choosability import Graph


def _code(n: int, adj: list[int], order: tuple[int, ...]) -> int:
    code = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> order[j] & 1)
    return code


def _degree_orders(adj: list[int]):
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    groups = {}
    for v in range(n):
        groups.setdefault(deg[v], []).append(v)
    blocks = [groups[d] for d in sorted(groups, reverse=True)]
    for parts in product(*(permutations(b) for b in blocks)):
        yield tuple(v for p in parts for v in p)


def canonical_code(g: Graph) -> tuple[int, int]:
    adj = g.adjacency
    # maximise, so that the canonical labelling puts edges early
    return g.n, max(_code(g.n, adj, o) for o in _degree_orders(adj))


def graph_from_code(n: int, code: int) -> Graph:
    edges = []
    bit = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                edges.append((i, j))
            bit -= 1
    return Graph(n, frozenset(edges))


@lru_cache(maxsize=None)
def graphs_on(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, frozenset()),)
    out = {}
    for parent in graphs_on(n - 1):
        for r in range(n):
            for nbrs in combinations(range(n - 1), r):
                child = Graph(n, parent.edges | {(u, n - 1) for u in nbrs})
                code = canonical_code(child)
                out.setdefault(code, None)
    return tuple(graph_from_code(n, c) for _, c in sorted(out))


def graphs_up_to(n_max: int) -> list[Graph]:
    out = []
    for n in range(1, n_max + 1):
        out.extend(graphs_on(n))
    return out

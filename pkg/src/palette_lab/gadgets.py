"""Constructive list-assignments and the hitting-set colouring of bipartite graphs."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .choosability import Colouring, Graph, ListAssignment, complete_bipartite
from .setfam import GroundParams, SetFamily, elems_of, has_property_b, has_property_k, mask_of

MAX_KMM = 4


class PreconditionError(ValueError):
    def __init__(self, message: str, witness: Optional[tuple[int, ...]] = None):
        super().__init__(message)
        self.witness = witness


class Claim(str, enum.Enum):
    UNCOLOURABLE = "uncolourable"
    COLOURABLE = "colourable"


@dataclass(frozen=True)
class GadgetOutput:
    graph: Graph
    assignment: ListAssignment
    claim: Claim

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "assignment": self.assignment.to_json(),
            "claim": self.claim.value,
        }


def hard_bipartite_assignment(fam: SetFamily, n1: Optional[int] = None,
                              n2: Optional[int] = None) -> GadgetOutput:
    """K_{n1,n2} with both sides listing the blocks of a family without Property B.

    Sides default to |fam| vertices; larger sides repeat the blocks cyclically.
    """
    wit = has_property_b(fam)
    if wit is not None:
        raise PreconditionError(
            f"family has Property B, witness {list(wit.elements)}", wit.elements
        )
    m = len(fam)
    n1 = m if n1 is None else n1
    n2 = m if n2 is None else n2
    if n1 < m or n2 < m:
        raise PreconditionError(f"both sides need at least {m} vertices")
    blocks = fam.blocks
    lists = [blocks[i % m] for i in range(n1)] + [blocks[i % m] for i in range(n2)]
    return GadgetOutput(
        complete_bipartite(n1, n2),
        ListAssignment(fam.params, tuple(lists)),
        Claim.UNCOLOURABLE,
    )


def kmm_assignment(m: int) -> GadgetOutput:
    """K_{m, m^m} over [m^2]: disjoint left lists, right lists are all transversals."""
    if not 1 <= m <= MAX_KMM:
        raise ValueError(f"m must be in 1..{MAX_KMM}")
    left = [tuple(range(i * m + 1, (i + 1) * m + 1)) for i in range(m)]
    right = [mask_of(t) for t in product(*left)]
    lists = [mask_of(l) for l in left] + right
    return GadgetOutput(
        complete_bipartite(m, m**m),
        ListAssignment(GroundParams(m, m * m), tuple(lists)),
        Claim.UNCOLOURABLE,
    )


def property_k_colouring(g: Graph, l: ListAssignment) -> Colouring:
    """Colour A inside the lex-first hitting (k-1)-set K of the A-lists, and B outside it."""
    if g.bipartition is None:
        raise ValueError("graph needs an explicit bipartition")
    side_a, side_b = g.bipartition
    a_lists = sorted({l.lists[u] for u in side_a})
    fam = SetFamily(l.params, tuple(a_lists))
    wit = has_property_k(fam)
    if wit is None:
        raise PreconditionError("A-side lists have no hitting set of size k-1")
    kset = wit.witness
    colour = [0] * g.n
    for u in side_a:
        colour[u] = elems_of(l.lists[u] & kset)[0]
    for v in side_b:
        colour[v] = elems_of(l.lists[v] & ~kset)[0]
    return Colouring(tuple(colour))


def hitting_set_used(g: Graph, l: ListAssignment) -> tuple[int, ...]:
    """The (k-1)-set chosen by ``property_k_colouring``."""
    side_a = g.bipartition[0]
    fam = SetFamily(l.params, tuple(sorted({l.lists[u] for u in side_a})))
    wit = has_property_k(fam)
    if wit is None:
        raise PreconditionError("A-side lists have no hitting set of size k-1")
    return wit.elements

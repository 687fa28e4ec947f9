from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from palette_lab.setfam import SetFamily


def brute_canonical(sets, ell):
    """Least image of a family under all relabellings, as sorted tuples."""
    best = None
    for p in permutations(range(1, ell + 1)):
        img = sorted(tuple(sorted(p[x - 1] for x in s)) for s in sets)
        if best is None or img < best:
            best = img
    return best


@st.composite
def families(draw, max_ell=6, min_k=1, max_k=3):
    ell = draw(st.integers(min_value=2, max_value=max_ell))
    k = draw(st.integers(min_value=min_k, max_value=min(max_k, ell)))
    allsets = list(combinations(range(1, ell + 1), k))
    chosen = draw(st.lists(st.sampled_from(allsets), unique=True, max_size=min(len(allsets), 12)))
    return SetFamily.from_sets(k, ell, chosen)


@pytest.fixture
def triangle_family():
    return SetFamily.from_sets(2, 3, [[1, 2], [1, 3], [2, 3]])

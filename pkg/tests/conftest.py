"""Shared brute-force references and instance helpers for the test suite.

The brute-force functions here work straight from definitions (subset
enumeration over bitmasks) and deliberately share no code with the
library's dynamic programs.
"""

from __future__ import annotations

import itertools

import hypothesis.strategies as st

from equiforest import Forest, ForestError
from equiforest.generators import FamilySpec, gen_family


def edge_bitmasks(forest: Forest) -> list[int]:
    return [(1 << u) | (1 << v) for u, v in forest.edges]


def stable_masks(forest: Forest):
    """All stable vertex subsets, as bitmasks."""
    ems = edge_bitmasks(forest)
    for mask in range(1 << forest.n):
        if all(mask & em != em for em in ems):
            yield mask


def brute_alpha(forest: Forest) -> int:
    return max(mask.bit_count() for mask in stable_masks(forest))


def brute_alpha_x(forest: Forest, x: int) -> int:
    xbit = 1 << x
    return max(
        mask.bit_count() for mask in stable_masks(forest) if mask & xbit
    )


def brute_min_overlap(forest: Forest, v: int, size: int, in_b) -> int | None:
    """Minimum |R intersect B| over stable sets R of exactly `size`
    vertices containing v, or None."""
    vbit = 1 << v
    bmask = 0
    for u, flag in enumerate(in_b):
        if flag:
            bmask |= 1 << u
    best = None
    for mask in stable_masks(forest):
        if mask & vbit and mask.bit_count() == size:
            overlap = (mask & bmask).bit_count()
            if best is None or overlap < best:
                best = overlap
    return best


def brute_equitable_exists(forest: Forest, k: int) -> bool:
    """Exists an equitable k-coloring; plain recursion over vertices."""
    n = forest.n
    base, extra = divmod(n, k)
    caps = [base] * (k - extra) + [base + 1] * extra
    counts = [0] * k
    assignment = [0] * n
    adjacency = forest.adjacency

    def go(v: int) -> bool:
        if v == n:
            return True
        for c in range(1, k + 1):
            if counts[c - 1] == caps[c - 1]:
                continue
            if any(assignment[w] == c for w in adjacency[v]):
                continue
            assignment[v] = c
            counts[c - 1] += 1
            if go(v + 1):
                return True
            assignment[v] = 0
            counts[c - 1] -= 1
        return False

    return go(0)


def all_labeled_forests(n: int):
    """Every labeled forest on n vertices (acyclic subsets of K_n edges)."""
    pairs = list(itertools.combinations(range(n), 2))
    for count in range(n):
        for subset in itertools.combinations(pairs, count):
            try:
                yield Forest.from_edges(n, subset)
            except ForestError:
                continue


def forest_from_profile(parts) -> Forest:
    """Disjoint union of components realizing the given (x, y) side
    profiles: (1, 0) is a singleton, otherwise a double star whose
    2-coloring sides have sizes exactly x and y."""
    edges = []
    offset = 0
    for x, y in parts:
        if (x, y) == (1, 0):
            offset += 1
            continue
        c0, c1 = offset, offset + 1
        edges.append((c0, c1))
        nxt = offset + 2
        for _ in range(y - 1):  # leaves of c0 sit on the odd side
            edges.append((c0, nxt))
            nxt += 1
        for _ in range(x - 1):  # leaves of c1 sit on the even side
            edges.append((c1, nxt))
            nxt += 1
        offset = nxt
    return Forest.from_edges(offset, edges)


def component_profiles(max_n: int):
    """Every multiset of side profiles with total order <= max_n."""
    options = [(1, 0)]
    for m in range(2, max_n + 1):
        options.extend((x, m - x) for x in range(1, m))

    def rec(start: int, budget: int, acc: list):
        yield tuple(acc)
        for i in range(start, len(options)):
            size = sum(options[i])
            if size <= budget:
                acc.append(options[i])
                yield from rec(i, budget - size, acc)
                acc.pop()

    for combo in rec(0, max_n, []):
        if combo:
            yield combo


@st.composite
def forests(draw, max_n: int = 30, max_components: int = 4):
    n = draw(st.integers(1, max_n))
    c = draw(st.integers(1, min(max_components, n)))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_family(FamilySpec("random_forest", (n, c), seed))


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 30):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_family(FamilySpec("random_tree", (n,), seed))

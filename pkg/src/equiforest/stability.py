"""Stability numbers on forests: maximum stable sets, per-vertex stability,
the coloring-number lower bound they induce, and a size-constrained
stable-set search that minimizes overlap with one bipartition side.

All dynamic programs run iteratively over a rooted orientation (root =
smallest id per component) so deep path-like trees cannot hit recursion
limits, and all arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forest import Bipartition, Forest

_INF = 1 << 30


def _component_dp(adjacency, alive, visited, parent, in_take, out_take, root):
    """Fill the take/skip tables for root's component; returns its DFS order."""
    visited[root] = 1
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not visited[w] and (alive is None or alive[w]):
                visited[w] = 1
                parent[w] = u
                order.append(w)
                stack.append(w)
    for u in reversed(order):
        taken = 1
        skipped = 0
        p = parent[u]
        for w in adjacency[u]:
            if w != p and (alive is None or alive[w]):
                taken += out_take[w]
                iw = in_take[w]
                ow = out_take[w]
                skipped += iw if iw > ow else ow
        in_take[u] = taken
        out_take[u] = skipped
    return order


def _mis_size(adjacency, alive=None) -> int:
    """Maximum stable-set size over the vertices marked alive (all if None)."""
    n = len(adjacency)
    visited = bytearray(n)
    in_take = [0] * n
    out_take = [0] * n
    parent = [-1] * n
    total = 0
    for root in range(n):
        if visited[root] or (alive is not None and not alive[root]):
            continue
        _component_dp(adjacency, alive, visited, parent, in_take, out_take, root)
        r_in, r_out = in_take[root], out_take[root]
        total += r_in if r_in > r_out else r_out
    return total


def _mis_witness(adjacency, alive=None) -> list[int]:
    """One maximum stable set; ties prefer including the vertex closer to
    its component root (roots are the smallest ids), so the result is
    deterministic and biased toward small ids."""
    n = len(adjacency)
    visited = bytearray(n)
    in_take = [0] * n
    out_take = [0] * n
    parent = [-1] * n
    chosen: list[int] = []
    for root in range(n):
        if visited[root] or (alive is not None and not alive[root]):
            continue
        _component_dp(adjacency, alive, visited, parent, in_take, out_take, root)
        walk = [(root, True)]
        while walk:
            u, allowed = walk.pop()
            take_u = allowed and in_take[u] >= out_take[u]
            if take_u:
                chosen.append(u)
            for w in adjacency[u]:
                if parent[w] == u and (alive is None or alive[w]):
                    walk.append((w, not take_u))
    return chosen


def alpha(forest: Forest) -> int:
    """Stability number: the maximum size of a stable set."""
    return _mis_size(forest.adjacency)


def max_stable_set(forest: Forest) -> frozenset[int]:
    """One maximum stable set (deterministic witness for alpha)."""
    return frozenset(_mis_witness(forest.adjacency))


def _alive_without_closed_neighborhood(forest: Forest, x: int) -> bytearray:
    alive = bytearray([1]) * forest.n
    alive[x] = 0
    for w in forest.adjacency[x]:
        alive[w] = 0
    return alive


def alpha_x(forest: Forest, x: int) -> int:
    """Maximum size of a stable set containing x: 1 plus the stability
    number of the forest with the closed neighborhood of x removed."""
    if not 0 <= x < forest.n:
        raise ValueError(f"vertex {x} out of range")
    return 1 + _mis_size(forest.adjacency, _alive_without_closed_neighborhood(forest, x))


def max_stable_set_containing(forest: Forest, x: int) -> frozenset[int]:
    """Deterministic witness for alpha_x."""
    if not 0 <= x < forest.n:
        raise ValueError(f"vertex {x} out of range")
    rest = _mis_witness(forest.adjacency, _alive_without_closed_neighborhood(forest, x))
    return frozenset([x, *rest])


@dataclass(frozen=True)
class LowerBoundReport:
    """max over vertices x of ceil((n+1)/(alpha_x+1)), with one achiever."""

    value: int
    vertex: int | None
    vertex_alpha: int | None


def lower_bound(forest: Forest) -> LowerBoundReport:
    """Least k any equitable coloring can use, from per-vertex stability.

    The empty forest reports 0.  The achieving vertex is the smallest id
    among maximizers.
    """
    n = forest.n
    if n == 0:
        return LowerBoundReport(0, None, None)
    adjacency = forest.adjacency
    best = 0
    best_vertex = None
    best_alpha = None
    for x in range(n):
        ax = alpha_x(forest, x)
        bound = (n + ax + 1) // (ax + 1)  # ceil((n+1)/(ax+1)), exact integers
        if bound > best:
            best, best_vertex, best_alpha = bound, x, ax
    return LowerBoundReport(best, best_vertex, best_alpha)


@dataclass(frozen=True)
class MajorVertexReport:
    """Outcome of checking that a vertex forcing more than 3 classes is
    the unique vertex of maximum degree."""

    applicable: bool
    ok: bool
    bound: int
    unique_max_degree_vertex: int | None = None
    high_vertices: tuple[int, ...] = ()
    max_degree_vertices: tuple[int, ...] = ()


def major_vertex_check(forest: Forest) -> MajorVertexReport:
    """If some vertex has ceil((n+1)/(alpha_x+1)) > 3, every such vertex
    must be the unique maximum-degree vertex; report the check's outcome.

    ok=False signals an implementation bug (the property is a theorem);
    the report then carries the offending vertices as a counterexample
    payload.
    """
    n = forest.n
    if n == 0:
        raise ValueError("major vertex check needs n >= 1")
    bounds = []
    for x in range(n):
        ax = alpha_x(forest, x)
        bounds.append((n + ax + 1) // (ax + 1))
    top = max(bounds)
    high = tuple(x for x in range(n) if bounds[x] > 3)
    if not high:
        return MajorVertexReport(applicable=False, ok=True, bound=top)
    dmax = forest.max_degree
    dset = tuple(v for v in range(n) if len(forest.adjacency[v]) == dmax)
    ok = len(dset) == 1 and all(x == dset[0] for x in high)
    return MajorVertexReport(
        applicable=True,
        ok=ok,
        bound=top,
        unique_max_degree_vertex=dset[0] if len(dset) == 1 else None,
        high_vertices=high,
        max_degree_vertices=dset,
    )


def _merge_min(a: list[int], b: list[int]) -> list[int]:
    out = [_INF] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai >= _INF:
            continue
        for j, bj in enumerate(b):
            if bj >= _INF:
                continue
            v = ai + bj
            if v < out[i + j]:
                out[i + j] = v
    return out


def _rooted_component(adjacency, root):
    order = [root]
    parent = {root: -1}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                stack.append(w)
    children = {u: [w for w in adjacency[u] if w != parent[u]] for u in order}
    return order, children


class _MinOverlapUnit:
    """Size-indexed min-B-count tables for one component."""

    def __init__(self, adjacency, root: int, cost, force_root: bool):
        self.root = root
        self.force_root = force_root
        self.cost = cost
        self.order, self.children = _rooted_component(adjacency, root)
        self.in_tab: dict[int, list[int]] = {}
        self.out_tab: dict[int, list[int]] = {}
        for u in reversed(self.order):
            taken = [_INF, cost[u]]
            skipped = [0]
            for c in self.children[u]:
                taken = _merge_min(taken, self.out_tab[c])
                skipped = _merge_min(skipped, self._best(c))
            self.in_tab[u] = taken
            self.out_tab[u] = skipped

    def _best(self, u: int) -> list[int]:
        tin, tout = self.in_tab[u], self.out_tab[u]
        return [
            min(
                tin[s] if s < len(tin) else _INF,
                tout[s] if s < len(tout) else _INF,
            )
            for s in range(max(len(tin), len(tout)))
        ]

    def table(self) -> list[int]:
        return self.in_tab[self.root] if self.force_root else self._best(self.root)

    def reconstruct(self, total_size: int, chosen: list[int]) -> None:
        """Append the vertices of one optimal selection of `total_size`."""
        root_state = "in"
        if not self.force_root:
            tin, tout = self.in_tab[self.root], self.out_tab[self.root]
            vin = tin[total_size] if total_size < len(tin) else _INF
            vout = tout[total_size] if total_size < len(tout) else _INF
            root_state = "in" if vin <= vout else "out"
        stack = [(self.root, root_state, total_size)]
        while stack:
            u, state, s = stack.pop()
            kids = self.children[u]
            if state == "in":
                chosen.append(u)
                prefixes = [[_INF, self.cost[u]]]
                for c in kids:
                    prefixes.append(_merge_min(prefixes[-1], self.out_tab[c]))
            else:
                prefixes = [[0]]
                for c in kids:
                    prefixes.append(_merge_min(prefixes[-1], self._best(c)))
            remaining = s
            for idx in range(len(kids) - 1, -1, -1):
                c = kids[idx]
                child_tab = self.out_tab[c] if state == "in" else self._best(c)
                target = prefixes[idx + 1][remaining]
                for sc in range(min(remaining, len(child_tab) - 1) + 1):
                    left = remaining - sc
                    if left >= len(prefixes[idx]):
                        continue
                    if prefixes[idx][left] + child_tab[sc] == target:
                        break
                else:  # pragma: no cover - table consistency guarantees a split
                    raise AssertionError("inconsistent reconstruction tables")
                if state == "in":
                    stack.append((c, "out", sc))
                else:
                    tin = self.in_tab[c]
                    pick_in = sc < len(tin) and tin[sc] == child_tab[sc]
                    stack.append((c, "in" if pick_in else "out", sc))
                remaining -= sc


def stable_set_of_size_min_b(
    forest: Forest, v: int, size: int, side: Bipartition
) -> frozenset[int] | None:
    """A stable set of exactly `size` vertices containing v that minimizes
    overlap with side B, or None when v lies in no stable set that large.

    Size-indexed tree DP per component; components not containing v
    contribute their own tables through a knapsack combination.
    Reconstruction is deterministic, biased toward small vertex ids.
    """
    n = forest.n
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range")
    if size < 1:
        raise ValueError("size must be >= 1")
    if size > n:
        return None
    adjacency = forest.adjacency
    cost = [0 if flag else 1 for flag in side.in_a]
    comps = forest.components()
    units = [_MinOverlapUnit(adjacency, v, cost, force_root=True)]
    v_comp = forest.component_id[v]
    for cid, comp in enumerate(comps):
        if cid != v_comp:
            units.append(_MinOverlapUnit(adjacency, comp[0], cost, force_root=False))

    prefixes = [[0]]
    for unit in units:
        prefixes.append(_merge_min(prefixes[-1], unit.table()))
    final = prefixes[-1]
    if size >= len(final) or final[size] >= _INF:
        return None

    chosen: list[int] = []
    remaining = size
    for idx in range(len(units) - 1, -1, -1):
        unit_tab = units[idx].table()
        target = prefixes[idx + 1][remaining]
        for su in range(min(remaining, len(unit_tab) - 1) + 1):
            left = remaining - su
            if left >= len(prefixes[idx]) or unit_tab[su] >= _INF:
                continue
            if prefixes[idx][left] + unit_tab[su] == target:
                break
        else:  # pragma: no cover - table consistency guarantees a split
            raise AssertionError("inconsistent knapsack tables")
        if su:
            units[idx].reconstruct(su, chosen)
        remaining -= su
    result = frozenset(chosen)
    if len(result) != size or v not in result:  # pragma: no cover - sanity
        raise AssertionError("reconstruction produced a wrong-sized set")
    return result

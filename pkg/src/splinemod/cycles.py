"""Closed-form generating sets for cycles and the order-class merge.

Three families of cycles admit explicit generating sets without any lattice
computation: connected graphs with a single edge label, cycles labeled by
powers of one zero divisor, and cycles with two label values whose lcm is
the modulus.  The first two are minimum outright; the last is upgraded by
``mgs_merge``, which pairs generators whose additive orders fall in coprime
order classes and sums each pair.

Rotation preconditions are applied automatically and recorded, so vectors
are always reported on the caller's vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import factorize, lcm
from .errors import (
    HypothesisViolated,
    NotACycle,
    NotConnected,
    NotPowerFamily,
    NotSingleLabel,
    PreconditionViolated,
)
from .graph import EdgeLabeledGraph, spline_check

Vec = tuple[int, ...]


@dataclass(frozen=True)
class GeneratingSet:
    splines: tuple[Vec, ...]  # first member is the trivial spline
    minimum: bool
    provenance: str
    rotation: int = 0  # cycle rotation applied to meet the closed form's labeling


@dataclass(frozen=True)
class CycleInstance:
    """A cycle in the conventional indexing: edge i joins positions i, i+1 mod n.

    ``order[p]`` is the original vertex index at cycle position p; labels are
    gcd-reduced.  Positions follow the graph's vertex order where possible.
    """

    graph: EdgeLabeledGraph
    order: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def modulus(self) -> int:
        return self.graph.modulus


def is_connected(G: EdgeLabeledGraph) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for a, b, _ in G.edges:
                other = None
                if a == v and b not in seen:
                    other = b
                elif b == v and a not in seen:
                    other = a
                if other is not None:
                    seen.add(other)
                    nxt.append(other)
        frontier = nxt
    return len(seen) == G.n


def cycle_instance(G: EdgeLabeledGraph) -> CycleInstance:
    """Arrange a cycle graph into consecutive-position form by walking it."""
    n = G.n
    if n < 3 or len(G.edges) != n:
        raise NotACycle(f"expected an n-cycle, got {n} vertices and {len(G.edges)} edges")
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for u, v, label in G.edges:
        adj[u].append((v, label))
        adj[v].append((u, label))
    if any(len(nb) != 2 for nb in adj.values()):
        raise NotACycle("every vertex of a cycle has exactly two neighbors")
    # Walk from v1 toward its lower-indexed neighbor (deterministic).
    order = [0]
    labels = []
    prev, cur = None, 0
    for _ in range(n):
        nbrs = sorted(adj[cur])
        if prev is None:
            nxt, lab = nbrs[0]
        else:
            onward = [(w, l) for w, l in nbrs if w != prev]
            if not onward:
                raise NotACycle("parallel edges do not form a cycle")
            nxt, lab = onward[0]
        g = gcd(lab, G.modulus)
        # canonical generator of the ideal: the zero ideal is 0, not m
        labels.append(0 if G.modulus and g == G.modulus else g)
        prev, cur = cur, nxt
        if cur == 0:
            break
        order.append(cur)
    if len(order) != n or cur != 0:
        raise NotACycle("graph is not a single cycle")
    return CycleInstance(G, tuple(order), tuple(labels))


def _rotated(C: CycleInstance, r: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = C.n
    order = tuple(C.order[(p + r) % n] for p in range(n))
    labels = tuple(C.labels[(p + r) % n] for p in range(n))
    return order, labels


def _to_graph_indexing(vec_by_position: list[int], order: tuple[int, ...], n: int) -> Vec:
    out = [0] * n
    for pos, value in enumerate(vec_by_position):
        out[order[pos]] = value
    return tuple(out)


def single_label_mgs(G: EdgeLabeledGraph) -> GeneratingSet:
    """Minimum generating set for a connected graph with one edge label.

    The trivial spline plus, for every vertex after the first, the labeling
    carrying the common label on that vertex alone.  Single-vertex support
    works because every edge either misses the vertex (difference 0) or sees
    a difference of exactly the label.
    """
    if not G.edges:
        raise NotSingleLabel("graph has no edges")
    if not is_connected(G):
        raise NotConnected("single-label form needs a connected graph")
    m = G.modulus
    reduced = {gcd(label, m) for _, _, label in G.edges}
    if len(reduced) != 1:
        raise NotSingleLabel(f"labels generate distinct ideals {sorted(reduced)}")
    a = reduced.pop()
    if a == 1 or (m and a == m) or a == 0:
        raise NotSingleLabel("common label must be a nonzero non-unit")
    n = G.n
    splines: list[Vec] = [(1,) * n]
    for k in range(1, n):
        splines.append(tuple(a if i == k else 0 for i in range(n)))
    return GeneratingSet(tuple(splines), minimum=True, provenance="single-label")


def _power_table(a: int, m: int) -> dict[int, int]:
    """Map power value -> least exponent >= 1, over Z/mZ."""
    table: dict[int, int] = {}
    x = a % m
    e = 1
    while x not in table:
        table[x] = e
        x = x * a % m
        e += 1
    return table


def power_label_cycle_gens(C: CycleInstance) -> GeneratingSet:
    """Generating set for a cycle labeled by powers of one zero divisor.

    After rotating the minimal power onto the closing edge, generator i
    carries label i's value on every position past edge i.  The label values
    form a divisibility chain, so the set is minimum.
    """
    m = C.modulus
    if m < 2:
        raise NotPowerFamily("needs a modulus >= 2")
    if any(l == 0 or l == 1 for l in C.labels):
        raise NotPowerFamily("labels must be nonzero non-units")
    base = None
    exponents = None
    for a in range(2, m):
        if gcd(a, m) == 1:
            continue
        table = _power_table(a, m)
        if all(l in table for l in C.labels):
            base = a
            exponents = [table[l] for l in C.labels]
            break
    if base is None:
        raise NotPowerFamily(f"labels {C.labels} are not powers of a common zero divisor")
    n = C.n
    k_min = min(exponents)
    rot = next(r for r in range(n) if exponents[(n - 1 + r) % n] == k_min)
    order, labels = _rotated(C, rot)
    splines: list[Vec] = [(1,) * n]
    for i in range(1, n):
        by_pos = [labels[i - 1] if pos >= i else 0 for pos in range(n)]
        splines.append(_to_graph_indexing(by_pos, order, n))
    for vec in splines:
        if not spline_check(C.graph, vec):
            raise NotPowerFamily(f"constructed labeling {vec} fails an edge condition")
    return GeneratingSet(
        tuple(splines), minimum=True, provenance="power-family", rotation=rot
    )


def two_label_cycle_gens(C: CycleInstance) -> GeneratingSet:
    """Generating set for a cycle with two label values whose lcm is m.

    Rotated so the closing edge carries one value and its predecessor the
    other; the top entry of each generator is whatever residue satisfies the
    two closing edges (the label itself or zero).  The lcm condition kills
    the would-be generator supported on the last vertex alone, so only n-1
    vectors appear; minimality is restored downstream by mgs_merge.
    """
    m = C.modulus
    values = sorted(set(C.labels))
    if len(values) != 2:
        raise PreconditionViolated(f"expected exactly two label values, got {values}")
    if not m or lcm(values[0], values[1]) != m:
        raise PreconditionViolated(f"lcm{tuple(values)} must be the modulus {m}")
    n = C.n
    rot = next(
        (r for r in range(n) if C.labels[(n - 1 + r) % n] != C.labels[(n - 2 + r) % n]),
        None,
    )
    if rot is None:
        raise PreconditionViolated("no rotation separates the two label values")
    order, labels = _rotated(C, rot)
    m1 = labels[n - 1]
    splines: list[Vec] = [(1,) * n]
    for i in range(1, n - 1):
        li = labels[i - 1]
        z = li if li == m1 else 0
        by_pos = [0] * n
        for pos in range(i, n - 1):
            by_pos[pos] = li
        by_pos[n - 1] = z
        vec = _to_graph_indexing(by_pos, order, n)
        if not spline_check(C.graph, vec):
            raise PreconditionViolated(
                f"constructed labeling {vec} fails an edge condition"
            )
        splines.append(vec)
    return GeneratingSet(
        tuple(splines), minimum=False, provenance="two-label", rotation=rot
    )


def coprime_order_classes(m: int, m1: int, m2: int) -> tuple[int, int]:
    """Coprime pair (f1, f2) with f1*f2 = m such that constant labelings with
    value m1 have order dividing f2 and value m2 order dividing f1.

    Each prime of m where m1 falls short of full multiplicity must go to f2
    (and symmetrically); lcm(m1, m2) = m guarantees no prime is claimed twice.
    """
    if lcm(m1, m2) != m:
        raise HypothesisViolated(f"lcm({m1}, {m2}) != {m}")
    f2 = 1
    for p, k in factorize(m).pairs:
        if m1 % p**k:
            f2 *= p**k
    return m // f2, f2


def _leading_index(vec: Vec) -> int:
    for i, x in enumerate(vec):
        if x:
            return i
    return len(vec)


def _order(vec: Vec, m: int) -> int:
    o = 1
    for x in vec:
        o = lcm(o, m // gcd(x, m))
    return o


def mgs_merge(B: GeneratingSet, m: int, factors: tuple[int, ...]) -> GeneratingSet:
    """Merge a constant flow-up generating set into a minimum one.

    Non-trivial members are grouped by the factor their additive order
    divides (factors must be pairwise coprime); each group is sorted by
    leading vertex, latest first, and the j-th members of all groups are
    summed.  Leftover members pass through unchanged.
    """
    for i, fi in enumerate(factors):
        for fj in factors[i + 1 :]:
            if gcd(fi, fj) != 1:
                raise HypothesisViolated(f"factors {factors} are not pairwise coprime")
    if not B.splines or B.splines[0] != (1,) * len(B.splines[0]):
        raise HypothesisViolated("generating set must start with the trivial spline")
    groups: dict[int, list[Vec]] = {f: [] for f in factors}
    for vec in B.splines[1:]:
        nonzero = {x for x in vec if x}
        if len(nonzero) != 1:
            raise HypothesisViolated(f"{vec} is not a constant flow-up labeling")
        order = _order(vec, m)
        home = [f for f in factors if f % order == 0]
        if not home:
            raise HypothesisViolated(
                f"order {order} of {vec} divides none of the factors {factors}"
            )
        groups[home[0]].append(vec)
    for f in groups:
        groups[f].sort(key=_leading_index, reverse=True)
    width = max((len(g) for g in groups.values()), default=0)
    merged: list[Vec] = [B.splines[0]]
    for j in range(width):
        members = [groups[f][j] for f in factors if j < len(groups[f])]
        total = members[0]
        for vec in members[1:]:
            total = tuple((a + b) % m for a, b in zip(total, vec))
        merged.append(total)
    return GeneratingSet(
        tuple(merged),
        minimum=True,
        provenance=f"merged({B.provenance})",
        rotation=B.rotation,
    )

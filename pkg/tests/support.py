"""Shared helpers for the test suite: deterministic random instances."""

from __future__ import annotations

import random
from math import gcd

from splinemod.graph import EdgeLabeledGraph


def nonunit_labels(m: int) -> list[int]:
    """Nonzero labels whose ideal is proper: gcd(label, m) not in {1, m}."""
    return [l for l in range(1, m) if 1 < gcd(l, m) < m]


def random_connected_graph(
    rng: random.Random,
    n: int,
    m: int,
    extra_edges: int = 2,
    labels: list[int] | None = None,
) -> EdgeLabeledGraph:
    """Random spanning tree plus a few extra edges, random proper labels."""
    if labels is None:
        labels = nonunit_labels(m)
    names = tuple(f"v{i}" for i in range(1, n + 1))
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, rng.choice(labels)))
    pairs = {(min(u, v), max(u, v)) for u, v, _ in edges}
    attempts = 0
    added = 0
    while added < extra_edges and attempts < 20 and n > 2:
        attempts += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or (min(u, v), max(u, v)) in pairs:
            continue
        pairs.add((min(u, v), max(u, v)))
        edges.append((u, v, rng.choice(labels)))
        added += 1
    return EdgeLabeledGraph(m, names, tuple(edges))


def random_cycle(rng: random.Random, n: int, m: int, labels: list[int]) -> EdgeLabeledGraph:
    names = tuple(f"v{i}" for i in range(1, n + 1))
    edges = tuple(
        (i, (i + 1) % n, rng.choice(labels)) for i in range(n)
    )
    return EdgeLabeledGraph(m, names, edges)

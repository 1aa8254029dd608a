"""The core computation: spline modules from integer lattices.

The mod-m spline module is the image of the lattice

    L = { f in Z^n : gcd(label, m) divides f_u - f_v for every edge uv }

under reduction mod m, and L always contains m*Z^n, so the module is the
finite quotient L / m*Z^n.  Everything follows from two normal forms:

* a triangular (flow-up) basis B of L via Hermite normal form, whose columns
  reduce to flow-up generating vectors mod m;
* the Smith normal form of m*B^{-1} (an integer matrix), whose diagonal is
  the invariant-factor chain of the quotient and whose right transform hands
  back a minimum generating set.

Working over Z and reducing at the end avoids normal forms over Z/mZ, which
is not a domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import lcm, solve_congruences
from .errors import InternalInconsistency, InvalidModulus, NotAnExtension
from .graph import EdgeLabeledGraph, normalize, spline_check
from .matrix import IntMatrix, hnf, kernel_basis, snf


@dataclass(frozen=True)
class LatticeBasis:
    """Triangular basis of the integer spline lattice.

    Columns of ``matrix`` span L; column j vanishes on the first j vertices
    of the flow-up order and has a positive pivot at vertex j.
    """

    matrix: IntMatrix
    vertices: tuple[str, ...]
    modulus: int


@dataclass(frozen=True)
class SplineModule:
    """Computed answer for one graph: invariant factors and generating sets.

    ``invariant_factors`` is the ascending divisibility chain d1 | ... | dt
    with every di > 1; ``mgs[i]`` has additive order exactly
    ``invariant_factors[i]``.  ``raw_diagonal`` keeps the full Smith diagonal
    including trivial 1 entries, for diagnostics.
    """

    modulus: int
    invariant_factors: tuple[int, ...]
    mgs: tuple[tuple[int, ...], ...]
    flow_up: tuple[tuple[int, ...], ...]
    raw_diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        total = 1
        for d in self.invariant_factors:
            total *= d
        return total


@dataclass(frozen=True)
class ExtensionAnalysis:
    """How a one-vertex extension relates to its base graph.

    ``incident_lcm`` is the lcm of the gcd-reduced labels on edges at the new
    vertex; splines supported on the new vertex alone are exactly its
    multiples, so the kernel of the restriction map has order
    m / gcd(incident_lcm, m).  ``kernel_order`` is None in integer mode with
    a nonzero kernel (the kernel is then infinite).
    """

    new_vertex: str
    incident_lcm: int
    kernel_order: int | None
    pi_surjective: bool


def integer_lattice(G: EdgeLabeledGraph) -> LatticeBasis:
    """Flow-up basis of the integer spline lattice of a normalized graph.

    Realized as the projection onto vertex coordinates of the kernel of the
    block system [incidence | -diag(g_e)]: f is in L iff f_u - f_v = g_e * y_e
    has an integer witness y.
    """
    n = G.n
    if not G.edges:
        return LatticeBasis(IntMatrix.identity(n), G.vertices, G.modulus)
    e = len(G.edges)
    rows = []
    for idx, (u, v, label) in enumerate(G.edges):
        row = [0] * (n + e)
        row[u] = 1
        row[v] = -1
        row[n + idx] = -gcd(label, G.modulus)
        rows.append(row)
    kernel = kernel_basis(IntMatrix(rows))
    projected = IntMatrix.from_columns([k[:n] for k in kernel])
    H, _ = hnf(projected)
    cols = [c for c in H.columns() if any(c)]
    if len(cols) != n:
        raise InternalInconsistency(
            "spline lattice is not full rank; was the graph normalized?"
        )
    return LatticeBasis(IntMatrix.from_columns(cols), G.vertices, G.modulus)


def _scaled_inverse(B: IntMatrix, m: int) -> IntMatrix:
    """m * B^{-1} by forward substitution; exact because m*Z^n lies in the lattice."""
    n = B.nrows
    E = B.entries
    cols = []
    for j in range(n):
        x = [0] * n
        for i in range(n):
            s = (m if i == j else 0) - sum(E[i][k] * x[k] for k in range(i))
            q, r = divmod(s, E[i][i])
            if r:
                raise InternalInconsistency("lattice does not contain m*Z^n")
            x[i] = q
        cols.append(x)
    return IntMatrix.from_columns(cols)


def invariant_factors(G: EdgeLabeledGraph) -> SplineModule:
    """Invariant factors, minimum generating set and flow-up set for G.

    Normalization is applied internally; all returned vectors live on the
    original vertex set (values are pulled back through vertex merges).
    """
    m = G.modulus
    if m == 0:
        raise InvalidModulus(
            "invariant factors are only defined for a finite modulus"
        )
    gnorm, report = normalize(G)
    if m == 1:
        return SplineModule(1, (), (), (), (1,) * gnorm.n)
    basis = integer_lattice(gnorm)
    B = basis.matrix
    res = snf(_scaled_inverse(B, m))

    total = 1
    for d in res.d:
        total *= d
    det_b = 1
    for i in range(B.nrows):
        det_b *= B.entries[i][i]
    # |L / m*Z^n| = m^n / det(B); the Smith diagonal must multiply to it.
    if total * det_b != m**gnorm.n:
        raise InternalInconsistency("Smith diagonal does not match lattice index")

    factors = []
    mgs_norm = []
    for j, dj in enumerate(res.d):
        if dj > 1:
            col = res.V.column(j)
            mgs_norm.append(tuple((m // dj) * x % m for x in col))
            factors.append(dj)
    flow_norm = []
    for col in B.columns():
        reduced = tuple(x % m for x in col)
        if any(reduced):
            flow_norm.append(reduced)

    mgs = tuple(report.pull_back(g) for g in mgs_norm)
    flow_up = tuple(report.pull_back(f) for f in flow_norm)
    for vec in mgs + flow_up:
        if not spline_check(G, vec):
            raise InternalInconsistency(f"generated vector {vec} fails an edge condition")
    return SplineModule(m, tuple(factors), mgs, flow_up, res.d)


def flow_up_generators(G: EdgeLabeledGraph) -> list[tuple[int, ...]]:
    """Flow-up generating set of the mod-m module (zero reductions dropped)."""
    return list(invariant_factors(G).flow_up)


def rank(G: EdgeLabeledGraph) -> int:
    """Size of a minimum generating set; 0 only for the zero module (m = 1)."""
    return invariant_factors(G).rank


def module_isomorphic(A: SplineModule, B: SplineModule) -> bool:
    """Modules of finite abelian type are isomorphic iff their chains agree."""
    return A.invariant_factors == B.invariant_factors


def _restriction_matches(G: EdgeLabeledGraph, G_plus: EdgeLabeledGraph, vi: int) -> bool:
    remaining = G_plus.vertices[:vi] + G_plus.vertices[vi + 1 :]
    if remaining != G.vertices or G.modulus != G_plus.modulus:
        return False

    def remap(i: int) -> int:
        return i if i < vi else i - 1

    kept = sorted(
        (min(remap(u), remap(v)), max(remap(u), remap(v)), label)
        for u, v, label in G_plus.edges
        if vi not in (u, v)
    )
    own = sorted(
        (min(u, v), max(u, v), label) for u, v, label in G.edges
    )
    return kept == own


def extension_analysis(
    G: EdgeLabeledGraph, G_plus: EdgeLabeledGraph, new_vertex: str
) -> ExtensionAnalysis:
    """Kernel size and surjectivity of the restriction map R_{G+} -> R_G.

    Splines of the extension restrict to splines of the base; the kernel is
    the set of splines supported on the new vertex only.  Surjectivity is
    decided exactly: a generator of R_G lifts iff the congruence system its
    neighbor values impose on the new vertex has a solution, and the image of
    the restriction is a submodule, so checking generators suffices.
    """
    vi = G_plus.vertex_index(new_vertex)
    if not _restriction_matches(G, G_plus, vi):
        raise NotAnExtension(
            f"removing {new_vertex!r} from the extension does not give the base graph"
        )
    m = G.modulus
    incident = G_plus.incident(vi)
    big_n = 1
    for u, v, label in incident:
        big_n = lcm(big_n, gcd(label, m))
    if m:
        kernel_order = m // big_n  # the lcm of divisors of m divides m
    else:
        kernel_order = 1 if big_n == 0 else None

    if m == 1:
        return ExtensionAnalysis(new_vertex, big_n, 1, True)

    if m:
        generators = invariant_factors(G).mgs
    else:
        gnorm, report = normalize(G)
        generators = tuple(
            report.pull_back(col) for col in integer_lattice(gnorm).matrix.columns()
        )

    def remap(i: int) -> int:
        return i if i < vi else i - 1

    surjective = True
    for gen in generators:
        system = []
        for u, v, label in incident:
            other = v if u == vi else u
            system.append((gen[remap(other)], gcd(label, m)))
        if solve_congruences(system) is None:
            surjective = False
            break
    return ExtensionAnalysis(new_vertex, big_n, kernel_order, surjective)

"""
Explicit Cayley graphs for the cayley-spectra oracle.

Builds adjacency matrices of X(G,S) (w - v in S) and X+(G,S) (v + w in S),
computes their exact integer spectra (characteristic polynomials for small
components, eigenvalue ranks for large ones) and probes their structure.
"""
import sys
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from loguru import logger
from pydantic import BaseModel
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

sys.path.append(str(Path(__file__).parent.parent))
from oracle.groups import AbelianGroup
from oracle.rings import ConcreteRing
from shared.utils import NonIntegralSpectrumError, OracleError, get_charpoly_max_vertices, get_rounding_tolerance
from spectra.spectrum import Spectrum


RANK_PRIME = 2147483647


class GraphMode(str, Enum):
    DIFFERENCE = "Difference"
    SUM = "Sum"


@dataclass(frozen=True, eq=False)
class GraphInstance:
    """
    Adjacency structure of a Cayley or Cayley sum graph.

    Attributes:
        n: Vertex count
        adjacency: n x n symmetric 0/1 matrix; a loop is a 1 on the diagonal
        mode: Difference or Sum
        label: Provenance, e.g. "G+[Z9]"
    """

    n: int
    adjacency: np.ndarray = field(repr=False)
    mode: GraphMode
    label: str

    def __post_init__(self):
        matrix = self.adjacency
        if matrix.shape != (self.n, self.n):
            raise OracleError(f"{self.label}: adjacency shape {matrix.shape} does not match n={self.n}")
        if not np.array_equal(matrix, matrix.T):
            raise OracleError(f"{self.label}: adjacency is not symmetric")
        row_sums = matrix.sum(axis=1)
        if self.n and not np.all(row_sums == row_sums[0]):
            raise OracleError(f"{self.label}: graph is not regular")
        if self.mode is GraphMode.DIFFERENCE and np.any(np.diag(matrix)):
            raise OracleError(f"{self.label}: difference graph with loops")

    @property
    def degree(self) -> int:
        return int(self.adjacency[0].sum()) if self.n else 0

    @property
    def loop_count(self) -> int:
        return int(np.trace(self.adjacency))

    def to_networkx(self) -> nx.Graph:
        return nx.from_numpy_array(self.adjacency)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u <= v; loops appear as (u, u)."""
        rows, cols = np.nonzero(np.triu(self.adjacency))
        return list(zip(rows.tolist(), cols.tolist()))

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def to_dimacs(self) -> str:
        edges = self.edges()
        lines = [f"c {self.label}", f"p edge {self.n} {len(edges)}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
        return "\n".join(lines) + "\n"


def general_cayley_graph(group: AbelianGroup, s_set: Iterable[int], mode: GraphMode, label: str = "") -> GraphInstance:
    """
    X(G,S) or X+(G,S) on the elements of an abelian group.

    Args:
        group: Abelian group
        s_set: Connection set as element indices, symmetric and without 0
        mode: Difference (w - v in S) or Sum (v + w in S)
        label: Provenance string

    Returns:
        GraphInstance: The explicit graph

    Raises:
        OracleError: If S contains 0 or is not symmetric
    """
    members = np.unique(np.asarray(list(s_set), dtype=np.int64))
    if 0 in members.tolist():
        raise OracleError("connection set contains 0")
    if not group.is_symmetric(members):
        raise OracleError("connection set is not symmetric")

    in_s = np.zeros(group.order, dtype=bool)
    in_s[members] = True
    coords = group.elements
    combined = np.zeros((group.order, group.order), dtype=np.int64)
    for j, d in enumerate(group.cyclic_orders):
        if mode is GraphMode.DIFFERENCE:
            component = (coords[None, :, j] - coords[:, None, j]) % d
        else:
            component = (coords[:, None, j] + coords[None, :, j]) % d
        combined += component * group.strides[j]
    adjacency = in_s[combined].astype(np.uint8)
    return GraphInstance(n=group.order, adjacency=adjacency, mode=mode, label=label or f"{mode.value}{group.cyclic_orders}")


def cayley_graph(ring: ConcreteRing, mode: GraphMode) -> GraphInstance:
    """G_R (Difference) or G_R+ (Sum) with connection set R*."""
    prefix = "G" if mode is GraphMode.DIFFERENCE else "G+"
    return general_cayley_graph(ring.group, ring.units, mode, label=f"{prefix}[{ring.spec.label}]")


# Exact spectra
def _synthetic_division(coefficients: List[int], root: int) -> Tuple[List[int], int]:
    quotient = [coefficients[0]]
    for c in coefficients[1:]:
        quotient.append(c + root * quotient[-1])
    return quotient[:-1], quotient[-1]


def integer_roots(coefficients: List[int], bound: int) -> Dict[int, int]:
    """
    Integer roots with multiplicity of a monic integer polynomial.

    Args:
        coefficients: Highest degree first
        bound: Roots are searched in [-bound, bound]

    Returns:
        Dict: root -> multiplicity

    Raises:
        NonIntegralSpectrumError: If deflation leaves a nonconstant factor
    """
    polynomial = [int(c) for c in coefficients]
    roots: Counter = Counter()
    while len(polynomial) > 1 and polynomial[-1] == 0:
        polynomial.pop()
        roots[0] += 1
    for candidate in range(bound, -bound - 1, -1):
        if len(polynomial) == 1:
            break
        if candidate == 0 or polynomial[-1] % candidate:
            continue
        while len(polynomial) > 1:
            quotient, remainder = _synthetic_division(polynomial, candidate)
            if remainder:
                break
            polynomial = quotient
            roots[candidate] += 1
    if len(polynomial) > 1:
        raise NonIntegralSpectrumError(f"characteristic polynomial has a factor of degree {len(polynomial) - 1} without integer roots")
    return dict(roots)


def characteristic_polynomial(matrix: np.ndarray) -> List[int]:
    """Division-free characteristic polynomial over ZZ, highest degree first."""
    size = matrix.shape[0]
    rows = [[ZZ(int(x)) for x in row] for row in matrix.tolist()]
    return [int(c) for c in DomainMatrix(rows, (size, size), ZZ).charpoly()]


def modular_rank(matrix: np.ndarray, prime: int = RANK_PRIME) -> int:
    """
    Rank of an integer matrix over GF(prime).

    Row reduction stays in int64: entries are below prime < 2^31, so every
    product fits. The result never exceeds the rank over Q.
    """
    reduced = np.asarray(matrix, dtype=np.int64) % prime
    rows, cols = reduced.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.flatnonzero(reduced[rank:, col])
        if pivots.size == 0:
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            reduced[[rank, pivot]] = reduced[[pivot, rank]]
        inverse = pow(int(reduced[rank, col]), prime - 2, prime)
        reduced[rank] = (reduced[rank] * inverse) % prime
        below = rank + 1 + np.flatnonzero(reduced[rank + 1:, col])
        if below.size:
            factors = reduced[below, col][:, None]
            reduced[below] = (reduced[below] - (factors * reduced[rank]) % prime) % prime
        rank += 1
    return rank


def eigenvalue_candidates(matrix: np.ndarray) -> List[int]:
    """
    Distinct integer eigenvalues of a symmetric matrix, read off numpy's eigvalsh.

    Raises:
        NonIntegralSpectrumError: If an eigenvalue is not within ROUNDING_TOLERANCE of an integer
    """
    values = np.linalg.eigvalsh(matrix.astype(np.float64))
    rounded = np.round(values)
    worst = float(np.max(np.abs(values - rounded))) if values.size else 0.0
    if worst > get_rounding_tolerance():
        raise NonIntegralSpectrumError(f"an eigenvalue is {worst:.3g} away from the nearest integer")
    return sorted({int(v) for v in rounded}, reverse=True)


def rank_multiplicities(matrix: np.ndarray) -> Dict[int, int]:
    """
    Exact multiplicities of the integer eigenvalues of a symmetric integer matrix.

    A symmetric matrix is diagonalizable, so the multiplicity of l is
    n - rank(A - l I). Candidates come from eigvalsh; multiplicities from
    ranks over GF(RANK_PRIME), which can only overcount, so a total of
    exactly n certifies every multiplicity.

    Raises:
        NonIntegralSpectrumError: If the candidates are not integral
        OracleError: If the modular multiplicities do not add up to n
    """
    size = matrix.shape[0]
    identity = np.eye(size, dtype=np.int64)
    counts = {}
    for value in eigenvalue_candidates(matrix):
        counts[value] = size - modular_rank(matrix.astype(np.int64) - value * identity)
    total = sum(counts.values())
    if total != size:
        logger.error(f"Rank multiplicities add up to {total}, expected {size}")
        raise OracleError(f"rank multiplicities add up to {total} on a {size} x {size} matrix")
    return {value: count for value, count in counts.items() if count}


def integer_spectrum_from_adjacency(g: GraphInstance) -> Spectrum:
    """
    Exact integer spectrum of an explicit graph.

    Each connected component (once per distinct component matrix) is split
    over the integers: components up to CHARPOLY_MAX_VERTICES through the
    characteristic polynomial, larger ones through eigenvalue ranks.

    Raises:
        NonIntegralSpectrumError: If the spectrum is not integral
    """
    degree = g.degree
    charpoly_max = get_charpoly_max_vertices()
    counts: Counter = Counter()
    cache: Dict[Tuple[int, bytes], Dict[int, int]] = {}
    for component in nx.connected_components(g.to_networkx()):
        nodes = sorted(component)
        block = np.ascontiguousarray(g.adjacency[np.ix_(nodes, nodes)])
        key = (len(nodes), block.tobytes())
        if key not in cache:
            if len(nodes) <= charpoly_max:
                cache[key] = integer_roots(characteristic_polynomial(block), max(degree, 1))
            else:
                cache[key] = rank_multiplicities(block)
        counts.update(cache[key])
    logger.debug(f"Exact spectrum of {g.label}: {len(cache)} distinct component(s)")
    return Spectrum.from_counts(counts, degree)


# Structure
class StructuralProbe(BaseModel):
    """
    Structural facts read directly off the adjacency matrix.

    common_neighbor_profile is (e, d) when adjacent pairs all share e common
    neighbours and non-adjacent pairs all share d (loops removed first; a
    missing pair type counts as 0).
    """

    n: int
    degree: int
    connected: bool
    bipartite: bool
    loop_count: int
    edge_count: int
    common_neighbor_profile: Optional[Tuple[int, int]] = None

    @property
    def is_strongly_regular(self) -> bool:
        return self.loop_count == 0 and self.common_neighbor_profile is not None

    @property
    def srg_parameters(self) -> Optional[Tuple[int, int, int, int]]:
        if not self.is_strongly_regular:
            return None
        e, d = self.common_neighbor_profile
        return self.n, self.degree, e, d


def structural_probe(g: GraphInstance) -> StructuralProbe:
    """Connectivity, bipartiteness (of the loop-deleted graph), loops, edges and the srg profile."""
    graph = g.to_networkx()
    loopless = graph.copy()
    loopless.remove_edges_from(list(nx.selfloop_edges(loopless)))

    loops = g.loop_count
    total = int(g.adjacency.sum())
    simple = g.adjacency.astype(np.int64)
    np.fill_diagonal(simple, 0)
    common = simple @ simple
    off_diagonal = ~np.eye(g.n, dtype=bool)
    adjacent = np.unique(common[(simple == 1) & off_diagonal])
    non_adjacent = np.unique(common[(simple == 0) & off_diagonal])
    profile = None
    if len(adjacent) <= 1 and len(non_adjacent) <= 1:
        profile = (int(adjacent[0]) if len(adjacent) else 0, int(non_adjacent[0]) if len(non_adjacent) else 0)

    return StructuralProbe(
        n=g.n,
        degree=g.degree,
        connected=g.n > 0 and nx.is_connected(graph),
        bipartite=nx.is_bipartite(loopless),
        loop_count=loops,
        edge_count=(total - loops) // 2 + loops,
        common_neighbor_profile=profile,
    )

"""
Spectral predicates for cayley-spectra.

This module holds the pairwise relations between spectra (equienergetic,
isospectral), the structural facts readable from a single spectrum, the
Ramanujan test and the strongly regular classification. Every verdict is
computed in exact integer arithmetic and carries its witness.
"""
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from ring_model.model import RingSpec
from spectra.spectrum import Spectrum, energy


class Predicate(BaseModel):
    """
    A named boolean verdict with machine-checkable witness data.

    Attributes:
        name: Predicate name, e.g. "isospectral:GR,GRplus"
        value: The verdict
        witness: Data that proves the verdict
    """

    model_config = ConfigDict(frozen=True)

    name: str
    value: bool
    witness: Dict[str, Any] = Field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.value


# Pairwise relations
def is_equienergetic(a: Spectrum, b: Spectrum, name: str = "equienergetic") -> Predicate:
    """
    E(a) = E(b).

    Graphs of different order are compared as well; the witness then carries
    the "different-order" flag.
    """
    energy_a, energy_b = energy(a), energy(b)
    witness: Dict[str, Any] = {"energy": [energy_a, energy_b], "n": [a.n, b.n]}
    if a.n != b.n:
        witness["flags"] = ["different-order"]
    return Predicate(name=name, value=energy_a == energy_b, witness=witness)


def is_isospectral(a: Spectrum, b: Spectrum, name: str = "isospectral") -> Predicate:
    """
    Exact multiset equality of spectra.

    The witness of a negative verdict is the first difference found, in the
    order vertex count, degree, largest eigenvalue with differing multiplicity.
    """
    if a.n != b.n:
        return Predicate(name=name, value=False, witness={"reason": "order", "n": [a.n, b.n]})
    if a.degree != b.degree:
        return Predicate(name=name, value=False, witness={"reason": "degree", "degree": [a.degree, b.degree]})
    counts_a, counts_b = a.as_dict(), b.as_dict()
    for value in sorted(set(counts_a) | set(counts_b), reverse=True):
        if counts_a.get(value, 0) != counts_b.get(value, 0):
            return Predicate(
                name=name,
                value=False,
                witness={
                    "reason": "multiplicity",
                    "eigenvalue": value,
                    "multiplicity": [counts_a.get(value, 0), counts_b.get(value, 0)],
                },
            )
    return Predicate(name=name, value=True, witness={"spectrum": a.to_text()})


# Single-spectrum structure
class SpectralPredicates(BaseModel):
    """
    Structure read off a regular-graph spectrum.

    integral is always true: Spectrum validates its eigenvalues as int, and
    the oracle raises NonIntegralSpectrumError before building a Spectrum
    from a graph whose eigenvalues are not integers.
    """

    model_config = ConfigDict(frozen=True)

    connected: bool
    bipartite: bool
    integral: bool
    almost_symmetric: bool
    strongly_almost_symmetric: bool
    principal_multiplicity: int
    negative_principal_multiplicity: int


def spectral_predicates(s: Spectrum) -> SpectralPredicates:
    """
    Connectivity, bipartiteness and the symmetry of a spectrum.

    Connected iff m(k) = 1, bipartite iff m(-k) >= 1; almost symmetric iff
    m(l) = m(-l) for every l other than +-k, strongly almost symmetric iff in
    addition |m(k) - m(-k)| = 1.
    """
    k = s.degree
    principal = s.multiplicity(k)
    negative = s.multiplicity(-k)
    almost = all(
        multiplicity == s.multiplicity(-value)
        for value, multiplicity in s.entries
        if value not in (k, -k)
    )
    return SpectralPredicates(
        connected=principal == 1,
        bipartite=negative >= 1,
        # Spectrum entries are validated as int
        integral=True,
        almost_symmetric=almost,
        strongly_almost_symmetric=almost and abs(principal - negative) == 1,
        principal_multiplicity=principal,
        negative_principal_multiplicity=negative,
    )


# Ramanujan
class RamanujanVerdict(BaseModel):
    """
    lambda(G)^2 <= 4(k-1), with lambda(G) the largest |l| over l not in {k, -k}.

    Attributes:
        ramanujan: The verdict; vacuously true when no such eigenvalue exists
        degree: Regularity degree k
        second_eigenvalue: lambda(G), None when vacuous
        bound: 4(k-1)
        connected: Reported alongside, not part of the test
    """

    model_config = ConfigDict(frozen=True)

    ramanujan: bool
    degree: int
    second_eigenvalue: Optional[int] = None
    bound: int
    connected: bool

    def __bool__(self) -> bool:
        return self.ramanujan


def is_ramanujan(s: Spectrum) -> RamanujanVerdict:
    k = s.degree
    others = [abs(value) for value, _ in s.entries if value not in (k, -k)]
    second = max(others) if others else None
    bound = 4 * (k - 1)
    return RamanujanVerdict(
        ramanujan=second is None or second * second <= bound,
        degree=k,
        second_eigenvalue=second,
        bound=bound,
        connected=s.multiplicity(k) == 1,
    )


def local_ramanujan_condition(r: int, m: int) -> bool:
    """r = 2m, or else r >= (m/2 + 1)^2 (as 4r >= (m+2)^2) with m != 2."""
    return r == 2 * m or (4 * r >= (m + 2) ** 2 and m != 2)


def field_pair_ramanujan_bound(q1: int, q2: int) -> bool:
    """
    3 <= q1 <= q2 <= 2(q1 + sqrt((q1-2)q1)) - 1, evaluated as (q2+1)^2 <= 4 q1 (q2-1).

    For R = F_q1 x F_q2 this is exactly "G_R is Ramanujan".
    """
    return 3 <= q1 <= q2 and (q2 + 1) ** 2 <= 4 * q1 * (q2 - 1)


def field_pair_complement_bound(q1: int, q2: int) -> bool:
    """
    3 <= q1 <= q2 and 2(q1-2) + q2 <= sqrt((2q1-3)^2 + 4q1q2 - 9), evaluated as q2(q2-8) <= 4(q1-4).

    For R = F_q1 x F_q2 with q1 >= 3 this is exactly "the complement of G_R is Ramanujan".
    """
    return 3 <= q1 <= q2 and q2 * (q2 - 8) <= 4 * (q1 - 4)


# Strongly regular graphs
SrgParameters = Tuple[int, int, int, int]


def srg_parameters_from_spectrum(s: Spectrum) -> Optional[SrgParameters]:
    """
    srg(n, k, e, d) when the spectrum is that of a strongly regular graph.

    A loopless regular graph is strongly regular iff it has two distinct
    eigenvalues (a union of equal complete graphs, d = 0) or it is connected
    with three distinct eigenvalues k > t > u, where e = k + t + u + tu and
    d = k + tu.
    """
    if s.trace != 0:
        return None
    values = [value for value, _ in s.entries]
    k = s.degree
    if len(values) == 2:
        return s.n, k, k - 1, 0
    if len(values) == 3 and s.multiplicity(k) == 1:
        _, t, u = values
        return s.n, k, k + t + u + t * u, k + t * u
    return None


class SrgVerdict(BaseModel):
    """Strongly regular classification of G_R and G_R+ with parameters."""

    model_config = ConfigDict(frozen=True)

    gr_srg: bool
    gr_parameters: Optional[SrgParameters] = None
    grplus_srg: bool
    grplus_parameters: Optional[SrgParameters] = None


def _gr_srg_parameters(spec: RingSpec) -> Optional[SrgParameters]:
    if spec.is_local:
        shape = spec.factors[0]
        r, m = shape.r, shape.m
        if shape.is_field:
            return r, r - 1, r - 2, 0
        return r, r - m, r - 2 * m, r - m
    if spec.all_fields:
        orders = spec.residue_sizes
        if all(q == 2 for q in orders):
            return 2 ** spec.s, 1, 0, 0
        if spec.s == 2 and orders[0] == orders[1] >= 3:
            q = orders[0]
            return q * q, (q - 1) ** 2, (q - 2) ** 2, (q - 1) * (q - 2)
    return None


def strongly_regular_classify(spec: RingSpec) -> SrgVerdict:
    """
    Classify G_R and G_R+ as strongly regular graphs.

    G_R is strongly regular iff R is local, F_q x F_q with q >= 3, or Z_2^n;
    G_R+ iff R is local of even order, F_{2^n} x F_{2^n}, or Z_2^n. In those
    cases G_R+ = G_R.

    Args:
        spec: Ring spec

    Returns:
        SrgVerdict: Verdicts and srg(n, k, e, d) parameters; an empty pair class counts as 0
    """
    gr = _gr_srg_parameters(spec)
    grplus = None
    if gr is not None and all(shape.is_even for shape in spec.factors):
        grplus = gr
    return SrgVerdict(
        gr_srg=gr is not None,
        gr_parameters=gr,
        grplus_srg=grplus is not None,
        grplus_parameters=grplus,
    )


def equienergetic_with_complement(spec: RingSpec) -> bool:
    """
    2(|R| - |R*| - 1) = prod q_i - prod (2 - q_i), q_i = r_i/m_i.

    Exact integer form of E(G_R) = E(complement of G_R).
    """
    units = 1
    product_q = 1
    product_two_minus_q = 1
    for shape in spec.factors:
        units *= shape.units
        product_q *= shape.residue_size
        product_two_minus_q *= 2 - shape.residue_size
    return 2 * (spec.order - units - 1) == product_q - product_two_minus_q


def field_orders(spec: RingSpec) -> Optional[Tuple[int, ...]]:
    """Sorted field orders when R is a product of fields, otherwise None."""
    if not spec.all_fields:
        return None
    return tuple(sorted(shape.r for shape in spec.factors))

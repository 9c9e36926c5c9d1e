"""
Closed-form spectra for cayley-spectra.

This module holds the exact Spectrum value type and the closed forms for the
unitary Cayley graph G_R, the unitary Cayley sum graph G_R+ and the
complement, together with the Kronecker-product algebra used to compose them.
All arithmetic is in Python integers.
"""
import sys
from collections import Counter
from enum import Enum
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from ring_model.model import LocalShape, RingSpec, ring_from_shapes, units_count
from shared.utils import SpectrumError, canonical_json


class Spectrum(BaseModel):
    """
    Exact spectrum of a regular graph.

    Attributes:
        n: Vertex count (sum of multiplicities)
        degree: Regularity degree, always an eigenvalue
        entries: (eigenvalue, multiplicity) pairs, eigenvalues strictly descending
    """

    model_config = ConfigDict(frozen=True)

    n: int
    degree: int
    entries: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def _check_spectrum(self) -> "Spectrum":
        eigenvalues = [value for value, _ in self.entries]
        if eigenvalues != sorted(set(eigenvalues), reverse=True):
            raise ValueError("eigenvalues must be distinct and sorted descending")
        if any(multiplicity <= 0 for _, multiplicity in self.entries):
            raise ValueError("multiplicities must be positive")
        if sum(multiplicity for _, multiplicity in self.entries) != self.n:
            raise ValueError(f"multiplicities do not sum to n={self.n}")
        if self.degree not in eigenvalues:
            raise ValueError(f"degree {self.degree} is not an eigenvalue")
        if any(abs(value) > self.degree for value in eigenvalues):
            raise ValueError(f"an eigenvalue exceeds the degree {self.degree} in absolute value")
        return self

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], degree: int) -> "Spectrum":
        """
        Build a spectrum from an eigenvalue -> multiplicity map.

        Zero multiplicities are dropped and coinciding keys must already be merged.

        Raises:
            SpectrumError: If the data does not describe a regular-graph spectrum
        """
        entries = tuple(
            (int(value), int(multiplicity))
            for value, multiplicity in sorted(counts.items(), reverse=True)
            if multiplicity
        )
        try:
            return cls(n=sum(m for _, m in entries), degree=int(degree), entries=entries)
        except ValueError as e:
            raise SpectrumError(f"invalid spectrum {dict(counts)}: {e}") from e

    def multiplicity(self, value: int) -> int:
        """Multiplicity of value; 0 when absent."""
        return self.as_dict().get(value, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    @property
    def trace(self) -> int:
        """Sum of eigenvalues with multiplicity, i.e. the number of loops."""
        return sum(value * multiplicity for value, multiplicity in self.entries)

    def eigenvalues(self) -> List[int]:
        """All eigenvalues with repetition, descending."""
        return [value for value, multiplicity in self.entries for _ in range(multiplicity)]

    def to_text(self) -> str:
        """Render as {[6]^1,[0]^6,[-3]^2}."""
        return "{" + ",".join(f"[{value}]^{multiplicity}" for value, multiplicity in self.entries) + "}"

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


def energy(spectrum: Spectrum) -> int:
    """E = sum |lambda| m(lambda)."""
    return sum(abs(value) * multiplicity for value, multiplicity in spectrum.entries)


def kron_spectrum(a: Spectrum, b: Spectrum) -> Spectrum:
    """
    Spectrum of the Kronecker product: eigenvalues multiply.

    Args:
        a: First factor
        b: Second factor

    Returns:
        Spectrum: On n_a * n_b vertices with degree degree_a * degree_b
    """
    counts: Counter = Counter()
    for value_a, mult_a in a.entries:
        for value_b, mult_b in b.entries:
            counts[value_a * value_b] += mult_a * mult_b
    return Spectrum.from_counts(counts, a.degree * b.degree)


def kron_all(spectra: Iterable[Spectrum]) -> Spectrum:
    """Kronecker product of a non-empty sequence of spectra."""
    return reduce(kron_spectrum, spectra)


def unitary_spectrum(spec: RingSpec) -> Spectrum:
    """
    Spectrum of G_R from the local shapes.

    For each subset C of factors, lambda_C = (-1)^|C| prod_{j in C} m_j
    prod_{i not in C} |R_i*| with multiplicity prod_{j in C} |R_j*|/m_j; the
    remaining vertices carry eigenvalue 0.
    """
    factors = spec.factors
    counts: Counter = Counter()
    covered = 0
    for size in range(len(factors) + 1):
        for chosen in combinations(range(len(factors)), size):
            value = (-1) ** size
            multiplicity = 1
            for index, shape in enumerate(factors):
                if index in chosen:
                    value *= shape.m
                    multiplicity *= shape.units // shape.m
                else:
                    value *= shape.units
            counts[value] += multiplicity
            covered += multiplicity
    counts[0] += spec.order - covered
    return Spectrum.from_counts(counts, units_count(spec))


def local_sum_spectrum(shape: LocalShape) -> Spectrum:
    """
    Spectrum of G+ for one local factor.

    Even order: G+ = G. Odd order: {[r-m]^1, [m]^((r-m)/2m), [0]^((r/m)(m-1)), [-m]^((r-m)/2m)}.
    """
    if shape.is_even:
        return unitary_spectrum(ring_from_shapes([shape]))
    half = (shape.r - shape.m) // (2 * shape.m)
    counts = Counter({shape.r - shape.m: 1, shape.m: half, -shape.m: half, 0: shape.residue_size * (shape.m - 1)})
    return Spectrum.from_counts(counts, shape.units)


def unitary_sum_spectrum(spec: RingSpec) -> Spectrum:
    """Spectrum of G_R+ as the Kronecker product of the local sum spectra."""
    return kron_all(local_sum_spectrum(shape) for shape in spec.factors)


def complement_spectrum(spectrum: Spectrum) -> Spectrum:
    """
    Spectrum of the complement of a loopless regular graph.

    The principal eigenvalue becomes n-k-1, its c-1 extra copies become -1-k
    and every other eigenvalue lambda becomes -1-lambda.

    Raises:
        SpectrumError: If the spectrum has non-zero trace (loops)
    """
    if spectrum.trace != 0:
        raise SpectrumError(f"complement of a graph with loops is not supported (trace {spectrum.trace})")
    k = spectrum.degree
    components = spectrum.multiplicity(k)
    counts: Counter = Counter({spectrum.n - k - 1: 1})
    counts[-1 - k] += components - 1
    for value, multiplicity in spectrum.entries:
        if value != k:
            counts[-1 - value] += multiplicity
    return Spectrum.from_counts(counts, spectrum.n - k - 1)


def complement_unitary_spectrum(spec: RingSpec) -> Spectrum:
    return complement_spectrum(unitary_spectrum(spec))


def closed_form_energies(spec: RingSpec) -> Tuple[int, int]:
    """
    E(G_R) = 2^s |R*| and E(Gbar_R) = 2(|R|-1) + (2^s-2)|R*| - prod q_i + prod (2-q_i).

    Returns:
        Tuple: (E_GR, E_GRbar) with q_i = r_i/m_i
    """
    units = units_count(spec)
    product_q = 1
    product_two_minus_q = 1
    for q in spec.residue_sizes:
        product_q *= q
        product_two_minus_q *= 2 - q
    energy_g = 2 ** spec.s * units
    energy_gbar = 2 * (spec.order - 1) + (2 ** spec.s - 2) * units - product_q + product_two_minus_q
    return energy_g, energy_gbar


def edge_counts(spec: RingSpec) -> Tuple[int, int]:
    """
    Edges of G_R and G_R+ with loops counted once.

    Returns:
        Tuple: (k r / 2, k floor((r+1)/2))
    """
    k = units_count(spec)
    r = spec.order
    return k * r // 2, k * ((r + 1) // 2)


# Standard families
def complete_graph_spectrum(n: int) -> Spectrum:
    return Spectrum.from_counts({n - 1: 1, -1: n - 1}, n - 1)


def complete_multipartite_spectrum(parts: int, size: int) -> Spectrum:
    """K_{parts x size}: {[(parts-1)size]^1, [0]^(parts(size-1)), [-size]^(parts-1)}."""
    degree = (parts - 1) * size
    return Spectrum.from_counts({degree: 1, 0: parts * (size - 1), -size: parts - 1}, degree)


def disjoint_copies(spectrum: Spectrum, copies: int) -> Spectrum:
    """Spectrum of `copies` disjoint copies of a regular graph."""
    return Spectrum.from_counts(
        {value: multiplicity * copies for value, multiplicity in spectrum.entries}, spectrum.degree
    )


# Graph roles over a ring
class Role(str, Enum):
    """Which graph over R a spectrum belongs to."""

    GR = "GR"
    GRPLUS = "GRplus"
    GRBAR = "GRbar"
    GRMINUS = "GRminus"

    @classmethod
    def parse(cls, text: str) -> "Role":
        """Case-insensitive lookup: gr, grplus, grbar, grminus."""
        for role in cls:
            if role.value.lower() == text.strip().lower():
                return role
        raise SpectrumError(f"unknown graph role {text!r}; expected one of gr, grplus, grbar, grminus")


def role_spectrum(spec: RingSpec, role: Role) -> Spectrum:
    """
    Closed-form spectrum of G_R, G_R+ or the complement of G_R.

    Raises:
        SpectrumError: For GRminus, which has no closed form and comes from the oracle
    """
    if role is Role.GR:
        return unitary_spectrum(spec)
    if role is Role.GRPLUS:
        return unitary_sum_spectrum(spec)
    if role is Role.GRBAR:
        return complement_unitary_spectrum(spec)
    raise SpectrumError(f"{role.value} of {spec.label} has no closed-form spectrum")

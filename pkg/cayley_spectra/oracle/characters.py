"""
Character sums for the cayley-spectra oracle.

For a finite abelian group G and a symmetric connection set S, the
eigenvalues of the Cayley graph X(G,S) are the character sums
e_chi = sum_{s in S} chi(s). The sum graph X+(G,S) pairs chi with its inverse,
so its multiplicities follow from the classes of characters sharing a value,
split into real and non-real characters.
"""
import sys
from collections import Counter
from dataclasses import dataclass, field
from math import lcm
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

sys.path.append(str(Path(__file__).parent.parent))
from oracle.groups import AbelianGroup, cyclic_group
from shared.utils import (
    NonIntegralSpectrumError,
    OracleError,
    VerificationMismatch,
    get_character_tolerance,
    get_eigenvector_tolerance,
    get_rounding_tolerance,
)
from spectra.spectrum import Spectrum

CHUNK_CELLS = 2_000_000


def _as_indices(s_set: Iterable[int]) -> np.ndarray:
    return np.unique(np.asarray(list(s_set), dtype=np.int64))


def _phase_weights(group: AbelianGroup) -> Tuple[int, np.ndarray]:
    period = lcm(*group.cyclic_orders)
    return period, np.array([period // d for d in group.cyclic_orders], dtype=np.int64)


def character_sums(group: AbelianGroup, s_set: Iterable[int]) -> np.ndarray:
    """
    Complex e_chi for every character chi_a, in element-index order of a.

    Phases are reduced exactly modulo lcm(d_j) before exponentiation.
    """
    members = _as_indices(s_set)
    period, weights = _phase_weights(group)
    chars = group.elements * weights[None, :]
    targets = group.elements[members]
    sums = np.empty(group.order, dtype=np.complex128)
    step = max(1, CHUNK_CELLS // max(1, len(members)))
    for start in range(0, group.order, step):
        phases = (chars[start:start + step] @ targets.T) % period
        sums[start:start + step] = np.exp(2j * np.pi * phases / period).sum(axis=1)
    return sums


def char_sum_eigenvalues(group: AbelianGroup, s_set: Iterable[int]) -> np.ndarray:
    """
    Real eigenvalues e_chi of X(G,S), one per character.

    Args:
        group: Abelian group
        s_set: Symmetric connection set (element indices)

    Returns:
        np.ndarray: e_chi in character-index order

    Raises:
        OracleError: If some |Im e_chi| reaches the character tolerance
    """
    sums = character_sums(group, s_set)
    tolerance = get_character_tolerance()
    worst = float(np.max(np.abs(sums.imag))) if len(sums) else 0.0
    if worst >= tolerance:
        logger.error(f"Character sum with imaginary part {worst:.3e}; S is not symmetric")
        raise OracleError(f"character sum has imaginary part {worst:.3e} >= {tolerance}")
    return sums.real.copy()


@dataclass(frozen=True, eq=False)
class CharacterClassData:
    """
    Characters grouped by value.

    Attributes:
        values: e_chi per character
        real_mask: chi real (chi = chi^-1)
        inverse: index of chi^-1 per character
        class_ids: class [chi] of each character
        class_values: representative value of each class, ascending
        tilde_ids: class of -e_chi per class, -1 when -e_chi is not a value
    """

    values: np.ndarray = field(repr=False)
    real_mask: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)
    class_ids: np.ndarray = field(repr=False)
    class_values: np.ndarray
    tilde_ids: np.ndarray

    def members(self, chi: int) -> np.ndarray:
        """[chi]."""
        return np.flatnonzero(self.class_ids == self.class_ids[chi])

    def tilde_members(self, chi: int) -> np.ndarray:
        """[chi]-tilde: characters whose value is -e_chi."""
        tilde = self.tilde_ids[self.class_ids[chi]]
        if tilde < 0:
            return np.array([], dtype=np.int64)
        return np.flatnonzero(self.class_ids == tilde)

    def refinements(self, chi: int) -> Dict[str, int]:
        """Sizes of [chi]_R, [chi]_Rc, [chi]~_R, [chi]~_Rc."""
        members = self.members(chi)
        tilde = self.tilde_members(chi)
        return {
            "class_real": int(self.real_mask[members].sum()),
            "class_nonreal": int((~self.real_mask[members]).sum()),
            "tilde_real": int(self.real_mask[tilde].sum()),
            "tilde_nonreal": int((~self.real_mask[tilde]).sum()),
        }

    def class_of_value(self, value: float) -> int:
        tolerance = get_character_tolerance()
        position = int(np.searchsorted(self.class_values, value - tolerance))
        if position < len(self.class_values) and abs(self.class_values[position] - value) <= tolerance:
            return position
        return -1


def build_character_classes(group: AbelianGroup, values: np.ndarray) -> CharacterClassData:
    """Cluster e_chi values within the character tolerance."""
    tolerance = get_character_tolerance()
    order = np.argsort(values, kind="stable")
    sorted_values = values[order]
    boundaries = np.concatenate([[True], np.diff(sorted_values) > tolerance])
    sorted_ids = np.cumsum(boundaries) - 1
    class_ids = np.empty(len(values), dtype=np.int64)
    class_ids[order] = sorted_ids
    class_count = int(sorted_ids[-1]) + 1
    class_values = np.array([sorted_values[sorted_ids == c].mean() for c in range(class_count)])

    data = CharacterClassData(
        values=values,
        real_mask=group.real_character_mask(),
        inverse=group.negate(range(group.order)),
        class_ids=class_ids,
        class_values=class_values,
        tilde_ids=np.full(class_count, -1, dtype=np.int64),
    )
    for c, value in enumerate(class_values):
        data.tilde_ids[c] = data.class_of_value(-value)
    return data


def sum_multiplicities(group: AbelianGroup, s_set: Iterable[int]) -> Dict[float, int]:
    """
    Multiplicity map of the sum graph X+(G,S).

    m+(v) = #real(v) + (#nonreal(v) + #nonreal(-v)) / 2 for v != 0 and m+(0) = m(0).

    Args:
        group: Abelian group
        s_set: Symmetric connection set without 0

    Returns:
        Dict: eigenvalue -> multiplicity

    Raises:
        OracleError: On non-symmetric S, 0 in S, or a half-integral multiplicity
    """
    members = _as_indices(s_set)
    if 0 in members.tolist() or not group.is_symmetric(members):
        raise OracleError("sum multiplicities need a symmetric S without 0")
    values = char_sum_eigenvalues(group, members)
    data = build_character_classes(group, values)
    return multiplicities_from_classes(data)


def multiplicities_from_classes(data: CharacterClassData) -> Dict[float, int]:
    tolerance = get_character_tolerance()
    real_counts = Counter(data.class_ids[data.real_mask].tolist())
    nonreal_counts = Counter(data.class_ids[~data.real_mask].tolist())

    def counts_at(value: float) -> Tuple[int, int]:
        c = data.class_of_value(value)
        return (real_counts.get(c, 0), nonreal_counts.get(c, 0)) if c >= 0 else (0, 0)

    result: Dict[float, int] = {}
    candidates = sorted(set(data.class_values.tolist()) | {-v for v in data.class_values.tolist()})
    for value in candidates:
        if any(abs(value - seen) <= tolerance for seen in result):
            continue
        if abs(value) <= tolerance:
            real, nonreal = counts_at(0.0)
            multiplicity = real + nonreal
        else:
            real, nonreal = counts_at(value)
            _, nonreal_opposite = counts_at(-value)
            twice = 2 * real + nonreal + nonreal_opposite
            if twice % 2:
                raise OracleError(f"half-integral sum multiplicity at {value:.6f}")
            multiplicity = twice // 2
        if multiplicity:
            result[float(value)] = multiplicity
    return result


def difference_multiplicities(values: np.ndarray) -> Dict[float, int]:
    """Multiplicity map of X(G,S) from its character sums."""
    tolerance = get_character_tolerance()
    ordered = np.sort(values)
    result: Dict[float, int] = {}
    start = 0
    for i in range(1, len(ordered) + 1):
        if i == len(ordered) or ordered[i] - ordered[i - 1] > tolerance:
            result[float(ordered[start:i].mean())] = i - start
            start = i
    return result


def to_integer_spectrum(multiplicities: Dict[float, int], degree: int) -> Spectrum:
    """
    Round a multiplicity map to an exact Spectrum.

    Raises:
        NonIntegralSpectrumError: If a value is farther than ROUNDING_TOLERANCE from an integer
    """
    tolerance = get_rounding_tolerance()
    counts: Counter = Counter()
    for value, multiplicity in multiplicities.items():
        nearest = round(value)
        if abs(value - nearest) > tolerance:
            raise NonIntegralSpectrumError(f"eigenvalue {value:.9f} is not integral")
        counts[int(nearest)] += multiplicity
    return Spectrum.from_counts(counts, degree)


def integer_sum_spectrum(group: AbelianGroup, s_set: Iterable[int]) -> Spectrum:
    """Exact spectrum of X+(G,S) when it is integral; degree |S|."""
    members = _as_indices(s_set)
    return to_integer_spectrum(sum_multiplicities(group, members), len(members))


def integer_difference_spectrum(group: AbelianGroup, s_set: Iterable[int]) -> Spectrum:
    """Exact spectrum of X(G,S) when it is integral; degree |S|."""
    members = _as_indices(s_set)
    return to_integer_spectrum(difference_multiplicities(char_sum_eigenvalues(group, members)), len(members))


# Checks on general abelian pairs
def multiplicity_energy(multiplicities: Dict[float, int]) -> float:
    return float(sum(abs(value) * multiplicity for value, multiplicity in multiplicities.items()))


def check_inverse_symmetry(group: AbelianGroup, values: np.ndarray) -> float:
    """
    e_chi^-1 equals e_chi for symmetric S.

    Returns:
        float: Largest deviation

    Raises:
        VerificationMismatch: If the deviation reaches the character tolerance
    """
    deviation = float(np.max(np.abs(values - values[group.negate(range(group.order))])))
    if deviation >= get_character_tolerance():
        raise VerificationMismatch("e_chi^-1 differs from e_chi", expected=0.0, observed=deviation)
    return deviation


def check_energy_balance(values: np.ndarray, multiplicities: Dict[float, int]) -> Tuple[float, float]:
    """
    X(G,S) and X+(G,S) are equienergetic.

    Returns:
        Tuple: (difference-mode energy, sum-mode energy)

    Raises:
        VerificationMismatch: If they differ by more than 1e-6 n
    """
    difference_energy = float(np.abs(values).sum())
    sum_energy = multiplicity_energy(multiplicities)
    if abs(difference_energy - sum_energy) > 1e-6 * len(values):
        raise VerificationMismatch("sum graph energy differs", expected=difference_energy, observed=sum_energy)
    return difference_energy, sum_energy


def check_pair_multiplicities(values: np.ndarray, multiplicities: Dict[float, int]) -> int:
    """
    m(v) + m(-v) = m+(v) + m+(-v) for every value class.

    Returns:
        int: Number of value classes checked

    Raises:
        VerificationMismatch: On the first violating class
    """
    tolerance = get_character_tolerance()
    difference = difference_multiplicities(values)

    def lookup(table: Dict[float, int], value: float) -> int:
        return sum(m for v, m in table.items() if abs(v - value) <= tolerance)

    checked = 0
    for value in sorted(set(difference) | set(multiplicities)):
        if value < -tolerance:
            continue
        left = lookup(difference, value) + (lookup(difference, -value) if abs(value) > tolerance else 0)
        right = lookup(multiplicities, value) + (lookup(multiplicities, -value) if abs(value) > tolerance else 0)
        if left != right:
            raise VerificationMismatch(f"pair multiplicity differs at +-{value:.6f}", expected=left, observed=right)
        checked += 1
    return checked


def character_vector(group: AbelianGroup, chi: int) -> np.ndarray:
    """v_chi = (chi(x))_x."""
    period, weights = _phase_weights(group)
    phases = (group.elements @ (group.elements[chi] * weights)) % period
    return np.exp(2j * np.pi * phases / period)


def check_sum_eigenvectors(
    group: AbelianGroup,
    adjacency: np.ndarray,
    values: np.ndarray,
    characters: Iterable[int],
) -> float:
    """
    For e_chi != 0, V = |e| v_chi +- e v_chi^-1 satisfies A+ V = +-|e| V.

    Args:
        group: Abelian group
        adjacency: Sum-graph adjacency matrix over the same element order
        values: e_chi per character
        characters: Sampled character indices

    Returns:
        float: Largest coordinate residual

    Raises:
        VerificationMismatch: If a residual exceeds EIGENVECTOR_TOLERANCE
    """
    tolerance = get_eigenvector_tolerance()
    matrix = adjacency.astype(np.float64)
    inverse = group.negate(range(group.order))
    worst = 0.0
    for chi in characters:
        e = float(values[chi])
        if abs(e) <= get_character_tolerance():
            continue
        v = character_vector(group, chi)
        v_inverse = character_vector(group, int(inverse[chi]))
        for sign in (1, -1):
            candidate = abs(e) * v + sign * e * v_inverse
            residual = float(np.max(np.abs(matrix @ candidate - sign * abs(e) * candidate)))
            worst = max(worst, residual)
            if residual > tolerance:
                raise VerificationMismatch(
                    f"sum-graph eigenvector check failed for character {chi}",
                    expected=0.0,
                    observed=residual,
                )
    return worst


class NonIsospectralityCertificate(BaseModel):
    """A non-trivial character whose negated value is not an eigenvalue of X(G,S)."""

    character: List[int]
    value: float
    negated_multiplicity: int = 0


def non_isospectrality_certificate(group: AbelianGroup, s_set: Iterable[int]) -> Optional[NonIsospectralityCertificate]:
    """
    Certify X(G,S) and X+(G,S) non-isospectral.

    Applies when the principal character is the only real character: any
    non-trivial chi with -e_chi not an eigenvalue of X(G,S) is a certificate.

    Returns:
        NonIsospectralityCertificate or None
    """
    if int(group.real_character_mask().sum()) != 1:
        return None
    values = char_sum_eigenvalues(group, s_set)
    data = build_character_classes(group, values)
    for chi in range(1, group.order):
        if data.tilde_ids[data.class_ids[chi]] < 0:
            return NonIsospectralityCertificate(character=group.elements[chi].tolist(), value=float(values[chi]))
    return None


class CyclePathReport(BaseModel):
    """X(Z_n, {+-r}) (a cycle) against X+(Z_n, {+-r}) (a path with loops at both ends)."""

    order: int
    rotation: int
    cycle_energy: float
    path_energy: float
    equienergetic: bool
    isospectral: bool
    integral: bool


def cycle_path_pair(n: int, rotation: int = 1) -> CyclePathReport:
    """
    Compare the odd cycle C_{2n+1} with the looped path on 2n+1 vertices.

    Args:
        n: Half-length, the group is Z_{2n+1}
        rotation: r coprime to 2n+1; S = {+-r}

    Returns:
        CyclePathReport: Energies and the isospectrality verdict
    """
    order = 2 * n + 1
    group = cyclic_group(order)
    connection = [rotation % order, (-rotation) % order]
    values = char_sum_eigenvalues(group, connection)
    cycle = difference_multiplicities(values)
    path = sum_multiplicities(group, connection)
    tolerance = get_character_tolerance()
    cycle_values = np.sort(np.array([v for v, m in cycle.items() for _ in range(m)]))
    path_values = np.sort(np.array([v for v, m in path.items() for _ in range(m)]))
    isospectral = len(cycle_values) == len(path_values) and bool(np.all(np.abs(cycle_values - path_values) <= tolerance))
    integral = bool(np.all(np.abs(cycle_values - np.round(cycle_values)) <= get_rounding_tolerance()))
    cycle_energy = float(np.abs(values).sum())
    path_energy = multiplicity_energy(path)
    return CyclePathReport(
        order=order,
        rotation=rotation,
        cycle_energy=cycle_energy,
        path_energy=path_energy,
        equienergetic=abs(cycle_energy - path_energy) <= 1e-6 * order,
        isospectral=isospectral,
        integral=integral,
    )

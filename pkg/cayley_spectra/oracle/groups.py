"""
Finite abelian groups for the cayley-spectra oracle.

Groups are presented as Z_{d1} x ... x Z_{dk}; elements are indexed in mixed
radix with the last coordinate varying fastest, so index 0 is the identity.
"""
import sys
from dataclasses import dataclass
from functools import cached_property
from math import prod
from pathlib import Path
from typing import Iterable, Tuple

import numpy as np

sys.path.append(str(Path(__file__).parent.parent))
from shared.utils import OracleError, get_oracle_max_vertices


@dataclass(frozen=True)
class AbelianGroup:
    """
    G = Z_{d1} x ... x Z_{dk}.

    Attributes:
        cyclic_orders: (d1, ..., dk), every dj >= 2
    """

    cyclic_orders: Tuple[int, ...]

    def __post_init__(self):
        if not self.cyclic_orders or any(d < 2 for d in self.cyclic_orders):
            raise OracleError(f"invalid cyclic orders {self.cyclic_orders}")
        if self.order > get_oracle_max_vertices():
            raise OracleError(f"group of order {self.order} exceeds ORACLE_MAX_VERTICES={get_oracle_max_vertices()}")

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @cached_property
    def orders_array(self) -> np.ndarray:
        return np.array(self.cyclic_orders, dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        strides = np.ones(len(self.cyclic_orders), dtype=np.int64)
        for j in range(len(self.cyclic_orders) - 2, -1, -1):
            strides[j] = strides[j + 1] * self.cyclic_orders[j + 1]
        return strides

    @cached_property
    def elements(self) -> np.ndarray:
        """(order, k) array of residue tuples, row i is element i."""
        indices = np.arange(self.order, dtype=np.int64)
        return (indices[:, None] // self.strides[None, :]) % self.orders_array[None, :]

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        """Indices of residue tuples (reduced modulo the cyclic orders); works on (..., k) arrays."""
        coords = np.asarray(coords, dtype=np.int64) % self.orders_array
        return coords @ self.strides

    def negate(self, indices: Iterable[int]) -> np.ndarray:
        return self.index_of(-self.elements[np.asarray(list(indices), dtype=np.int64)])

    def add(self, i: int, j: int) -> int:
        return int(self.index_of(self.elements[i] + self.elements[j]))

    def is_symmetric(self, s_set: Iterable[int]) -> bool:
        """True when S = -S."""
        members = np.unique(np.asarray(list(s_set), dtype=np.int64))
        return set(self.negate(members).tolist()) == set(members.tolist())

    def real_character_mask(self) -> np.ndarray:
        """Characters chi_a with chi_a = chi_a^-1, i.e. 2a = 0 componentwise."""
        return np.all((2 * self.elements) % self.orders_array == 0, axis=1)


def cyclic_group(n: int) -> AbelianGroup:
    return AbelianGroup(cyclic_orders=(n,))

"""
Concrete finite rings for the cayley-spectra oracle.

Every constructible local factor is realized element-wise:

- GR(p^s, t) as Z_{p^s}[x] modulo a monic lift of the lexicographically
  smallest irreducible of degree t over Z_p. This covers Z_{p^k} (t = 1) and
  GF(p^t) (s = 1).
- F_q[x]/(x^k) for k = 2, 3 as truncated polynomials over GF(q).

The product ring stores elements as concatenated coordinate tuples indexed by
an AbelianGroup, and the units are found by exhaustive inverse search inside
each factor.
"""
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from pathlib import Path
from typing import List, Tuple

import numpy as np
from loguru import logger
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

sys.path.append(str(Path(__file__).parent.parent))
from oracle.groups import AbelianGroup
from ring_model.model import Family, LocalShape, RingSpec
from shared.utils import OracleError, get_oracle_max_vertices, integer_log


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, t: int) -> Tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible of degree t over Z_p.

    Args:
        p: Prime
        t: Degree >= 1

    Returns:
        Tuple: Low-degree-first coefficients (f_0, ..., f_{t-1}) of x^t + ... + f_0
    """
    for low in cartesian(range(p), repeat=t):
        high_first = [ZZ(1)] + [ZZ(c) for c in reversed(low)]
        if gf_irreducible_p(high_first, p, ZZ):
            return tuple(low)
    raise OracleError(f"no irreducible polynomial of degree {t} over Z_{p}")


class LocalRingModel:
    """Element-level arithmetic of one local factor on coordinate arrays."""

    orders: Tuple[int, ...]
    one: Tuple[int, ...]

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def size(self) -> int:
        return int(np.prod(self.orders))


class GaloisRingModel(LocalRingModel):
    """Z_{p^s}[x]/(f) with f the monic lift of an irreducible of degree t."""

    def __init__(self, p: int, s: int, t: int):
        self.p = p
        self.s = s
        self.t = t
        self.modulus = p ** s
        self.reducer = np.array(smallest_irreducible(p, t), dtype=np.int64)
        self.orders = (self.modulus,) * t
        self.one = (1,) + (0,) * (t - 1)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        t = self.t
        result = np.zeros(a.shape[:-1] + (2 * t - 1,), dtype=np.int64)
        for i in range(t):
            result[..., i:i + t] += a[..., i:i + 1] * b
        result %= self.modulus
        # x^t = -(f_0 + ... + f_{t-1} x^{t-1})
        for degree in range(2 * t - 2, t - 1, -1):
            lead = result[..., degree:degree + 1]
            result[..., degree - t:degree] -= lead * self.reducer
            result[..., degree] = 0
            result %= self.modulus
        return result[..., :t]


class TruncatedPolynomialModel(LocalRingModel):
    """GF(q)[x]/(x^k): k blocks of GF(q) coordinates, product truncated at degree k."""

    def __init__(self, base: GaloisRingModel, k: int):
        self.base = base
        self.k = k
        self.orders = base.orders * k
        self.one = base.one + (0,) * (base.t * (k - 1))

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        width = self.base.t
        blocks_a = [a[..., i * width:(i + 1) * width] for i in range(self.k)]
        blocks_b = [b[..., i * width:(i + 1) * width] for i in range(self.k)]
        result = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.k):
            for j in range(self.k - i):
                block = slice((i + j) * width, (i + j + 1) * width)
                result[..., block] += self.base.multiply(blocks_a[i], blocks_b[j])
        return result % self.base.modulus


def local_model(shape: LocalShape) -> LocalRingModel:
    """
    Concrete model of a constructible local shape.

    Raises:
        OracleError: For formula-only Shape factors
    """
    p = shape.p
    if shape.family is Family.SHAPE:
        raise OracleError(f"local shape {shape.label} has no concrete witness")
    if shape.family in (Family.FIELD, Family.ZMODPK, Family.GALOIS_RING):
        s, t = shape.galois_parameters
        return GaloisRingModel(p, s, t)
    q = shape.residue_size
    t = integer_log(q, p)
    k = 2 if shape.family is Family.FIELD_MOD_X2 else 3
    return TruncatedPolynomialModel(GaloisRingModel(p, 1, t), k)


def local_unit_mask(model: LocalRingModel) -> np.ndarray:
    """Boolean mask over the factor's elements: u is a unit iff u*v = 1 for some v."""
    elements = AbelianGroup(cyclic_orders=model.orders).elements
    one = np.array(model.one, dtype=np.int64)
    mask = np.zeros(len(elements), dtype=bool)
    for index, u in enumerate(elements):
        products = model.multiply(u[None, :], elements)
        mask[index] = bool(np.any(np.all(products == one, axis=1)))
    return mask


@dataclass(frozen=True, eq=False)
class ConcreteRing:
    """
    Element-level ring R = R_1 x ... x R_s.

    Attributes:
        spec: The symbolic ring this instance realizes
        group: Additive group; element i of the ring is element i of the group
        models: Local factor models, in spec order
        unit_mask: Boolean mask of the units
    """

    spec: RingSpec
    group: AbelianGroup
    models: Tuple[LocalRingModel, ...]
    unit_mask: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return int(self.group.index_of(np.concatenate([np.array(m.one) for m in self.models])))

    @property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @property
    def elements(self) -> np.ndarray:
        return self.group.elements

    def _slices(self) -> List[slice]:
        slices, start = [], 0
        for model in self.models:
            slices.append(slice(start, start + len(model.orders)))
            start += len(model.orders)
        return slices

    def multiply_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        parts = [model.multiply(a[..., part], b[..., part]) for model, part in zip(self.models, self._slices())]
        return np.concatenate(parts, axis=-1)

    def add(self, i: int, j: int) -> int:
        return self.group.add(i, j)

    def mul(self, i: int, j: int) -> int:
        return int(self.group.index_of(self.multiply_coords(self.elements[i], self.elements[j])))

    def neg(self, i: int) -> int:
        return int(self.group.negate([i])[0])


def build_concrete_ring(spec: RingSpec) -> ConcreteRing:
    """
    Realize a constructible RingSpec element-wise.

    Args:
        spec: Ring spec without Shape factors

    Returns:
        ConcreteRing: Elements, operations and units

    Raises:
        OracleError: For Shape factors or rings above ORACLE_MAX_VERTICES
    """
    if not spec.is_constructible:
        logger.error(f"Refusing to build {spec.label}: formula-only factor")
        raise OracleError(f"{spec.label} has a formula-only factor and no concrete witness")
    if spec.order > get_oracle_max_vertices():
        logger.error(f"Refusing to build {spec.label}: order {spec.order} over bound")
        raise OracleError(f"{spec.label} has {spec.order} elements, above ORACLE_MAX_VERTICES={get_oracle_max_vertices()}")

    models = tuple(local_model(shape) for shape in spec.factors)
    group = AbelianGroup(cyclic_orders=tuple(order for model in models for order in model.orders))

    unit_mask = np.ones(group.order, dtype=bool)
    start = 0
    for model in models:
        width = len(model.orders)
        factor_group = AbelianGroup(cyclic_orders=model.orders)
        local_indices = factor_group.index_of(group.elements[:, start:start + width])
        unit_mask &= local_unit_mask(model)[local_indices]
        start += width

    ring = ConcreteRing(spec=spec, group=group, models=models, unit_mask=unit_mask)
    logger.debug(f"Built {spec.label}: {ring.order} elements, {int(unit_mask.sum())} units")
    return ring

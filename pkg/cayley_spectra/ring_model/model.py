"""
Symbolic ring model for cayley-spectra.

A finite commutative ring with identity is a product of local rings. This
module represents it by the multiset of local shapes (r, m) = (|R_i|, |m_i|),
each tagged with the family that gives a concrete witness, and provides the
arithmetic predicates the closed-form spectra consume.
"""
import re
import sys
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from sympy import factorint

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from shared.utils import RingSpecError, integer_log, prime_power

MAX_PARSE_ORDER = 2 ** 64


class Family(str, Enum):
    """How a concrete witness of a local shape is built."""

    FIELD = "Field"
    ZMODPK = "ZModPk"
    GALOIS_RING = "GaloisRing"
    FIELD_MOD_X2 = "FieldModX2"
    FIELD_MOD_X3 = "FieldModX3"
    SHAPE = "Shape"


FAMILY_ORDER: Tuple[Family, ...] = tuple(Family)
CONSTRUCTIBLE_FAMILIES = frozenset(family for family in Family if family is not Family.SHAPE)


class LocalShape(BaseModel):
    """
    A local factor (R_i, m_i) described by its order and the order of its maximal ideal.

    Attributes:
        r: Order of the local ring, a prime power p^a
        m: Order of the maximal ideal, p^b with b < a
        family: Constructible family of the witness (Shape means formula-only)
    """

    model_config = ConfigDict(frozen=True)

    r: int
    m: int
    family: Family

    @model_validator(mode="after")
    def _check_shape(self) -> "LocalShape":
        decomposition = prime_power(self.r)
        if decomposition is None:
            raise ValueError(f"local ring order {self.r} is not a prime power")
        p, a = decomposition
        if self.m < 1 or self.m >= self.r or self.r % self.m != 0:
            raise ValueError(f"maximal ideal order {self.m} must be a proper divisor of {self.r}")
        if self.m > 1 and integer_log(self.m, p) is None:
            raise ValueError(f"maximal ideal order {self.m} is not a power of {p}")

        q = self.r // self.m
        if self.family is Family.FIELD and self.m != 1:
            raise ValueError(f"a field has trivial maximal ideal, got m={self.m}")
        if self.family is Family.ZMODPK and (a < 2 or self.m != p ** (a - 1)):
            raise ValueError(f"Z_{self.r} needs r=p^k with k>=2 and m=p^(k-1)")
        if self.family is Family.GALOIS_RING:
            t = integer_log(q, p)
            s = a // t if t else 0
            if not t or t < 2 or s < 2 or s * t != a or self.m != p ** ((s - 1) * t):
                raise ValueError(f"({self.r},{self.m}) is not a Galois ring GR(p^s,t) with s,t>=2")
        if self.family is Family.FIELD_MOD_X2 and self.r != self.m * self.m:
            raise ValueError(f"F_q[x]/(x^2) has r=m^2, got ({self.r},{self.m})")
        if self.family is Family.FIELD_MOD_X3 and (self.r != q ** 3 or self.m != q * q):
            raise ValueError(f"F_q[x]/(x^3) has r=q^3 and m=q^2, got ({self.r},{self.m})")
        return self

    @property
    def p(self) -> int:
        """Characteristic of the residue field."""
        return prime_power(self.r)[0]

    @property
    def residue_size(self) -> int:
        """Order q = r/m of the residue field."""
        return self.r // self.m

    @property
    def units(self) -> int:
        """|R_i*| = r - m."""
        return self.r - self.m

    @property
    def is_field(self) -> bool:
        return self.m == 1

    @property
    def is_even(self) -> bool:
        return self.r % 2 == 0

    @property
    def galois_parameters(self) -> Tuple[int, int]:
        """(s, t) with r = p^(st) and m = p^((s-1)t); (1, t) for fields, (k, 1) for Z_{p^k}."""
        p = self.p
        t = integer_log(self.residue_size, p)
        return integer_log(self.r, p) // t, t

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return self.r, self.m, FAMILY_ORDER.index(self.family)

    @property
    def label(self) -> str:
        """Canonical text of the factor, parseable by parse_ring_spec."""
        if self.family is Family.FIELD:
            return f"F{self.r}"
        if self.family is Family.ZMODPK:
            return f"Z{self.r}"
        if self.family is Family.GALOIS_RING:
            s, t = self.galois_parameters
            return f"GR({self.p ** s},{t})"
        if self.family is Family.FIELD_MOD_X2:
            return f"F{self.m}[x]/(x^2)"
        if self.family is Family.FIELD_MOD_X3:
            return f"F{self.residue_size}[x]/(x^3)"
        return f"L({self.r},{self.m})"

    def __str__(self) -> str:
        return self.label


class RingSpec(BaseModel):
    """
    A finite commutative ring R = R_1 x ... x R_s given by its local factors.

    Factors are kept in canonical order (r, m, family), so equality is multiset
    equality and the model is hashable.
    """

    model_config = ConfigDict(frozen=True)

    factors: Tuple[LocalShape, ...]

    @field_validator("factors")
    @classmethod
    def _canonical_order(cls, factors: Tuple[LocalShape, ...]) -> Tuple[LocalShape, ...]:
        if not factors:
            raise ValueError("a ring spec needs at least one local factor")
        return tuple(sorted(factors, key=lambda shape: shape.sort_key))

    @property
    def order(self) -> int:
        """|R| = prod r_i."""
        result = 1
        for shape in self.factors:
            result *= shape.r
        return result

    @property
    def s(self) -> int:
        """Number of local factors."""
        return len(self.factors)

    @property
    def is_local(self) -> bool:
        return self.s == 1

    @property
    def is_constructible(self) -> bool:
        """True when every factor has a concrete witness for the oracle."""
        return all(shape.family in CONSTRUCTIBLE_FAMILIES for shape in self.factors)

    @property
    def all_fields(self) -> bool:
        return all(shape.is_field for shape in self.factors)

    @property
    def residue_sizes(self) -> Tuple[int, ...]:
        return tuple(shape.residue_size for shape in self.factors)

    @property
    def shape_key(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted (r, m) pairs; rings with equal keys have equal spectra."""
        return tuple(sorted((shape.r, shape.m) for shape in self.factors))

    @property
    def label(self) -> str:
        return format_ring_spec(self)

    def __str__(self) -> str:
        return self.label


# Grammar
_ATOM = re.compile(
    r"F(?P<xq>\d+)\[x\]/\(x\^(?P<xk>[23])\)"
    r"|GR\((?P<grq>\d+),(?P<grt>\d+)\)"
    r"|L\((?P<lr>\d+),(?P<lm>\d+)\)"
    r"|F(?P<fq>\d+)"
    r"|Z(?P<zn>\d+)"
)


def _shape(r: int, m: int, family: Family) -> LocalShape:
    try:
        return LocalShape(r=r, m=m, family=family)
    except ValidationError as e:
        message = "; ".join(error["msg"] for error in e.errors())
        raise RingSpecError(message) from e


def field_shape(q: int) -> LocalShape:
    """Local shape of the finite field F_q."""
    if prime_power(q) is None:
        raise RingSpecError(f"F{q}: {q} is not a prime power")
    return _shape(q, 1, Family.FIELD)


def _cyclic_shapes(n: int) -> List[LocalShape]:
    if n < 2:
        raise RingSpecError(f"Z{n}: the ring needs 1 != 0, so n >= 2")
    if n > MAX_PARSE_ORDER:
        raise RingSpecError(f"Z{n}: order exceeds 2^64")
    shapes = []
    for p, k in sorted(factorint(n).items()):
        p, k = int(p), int(k)
        if k == 1:
            shapes.append(_shape(p, 1, Family.FIELD))
        else:
            shapes.append(_shape(p ** k, p ** (k - 1), Family.ZMODPK))
    return shapes


def _galois_shape(ps: int, t: int) -> LocalShape:
    decomposition = prime_power(ps)
    if decomposition is None:
        raise RingSpecError(f"GR({ps},{t}): {ps} is not a prime power")
    if t < 1:
        raise RingSpecError(f"GR({ps},{t}): degree must be at least 1")
    p, s = decomposition
    if s == 1:
        return _shape(p ** t, 1, Family.FIELD)
    if t == 1:
        return _shape(p ** s, p ** (s - 1), Family.ZMODPK)
    return _shape(p ** (s * t), p ** ((s - 1) * t), Family.GALOIS_RING)


def _truncated_shape(q: int, k: int) -> LocalShape:
    if prime_power(q) is None:
        raise RingSpecError(f"F{q}[x]/(x^{k}): {q} is not a prime power")
    if k == 2:
        return _shape(q * q, q, Family.FIELD_MOD_X2)
    return _shape(q ** 3, q * q, Family.FIELD_MOD_X3)


def _parse_atom(match: "re.Match[str]") -> List[LocalShape]:
    groups = match.groupdict()
    if groups["xq"] is not None:
        return [_truncated_shape(int(groups["xq"]), int(groups["xk"]))]
    if groups["grq"] is not None:
        return [_galois_shape(int(groups["grq"]), int(groups["grt"]))]
    if groups["lr"] is not None:
        return [_shape(int(groups["lr"]), int(groups["lm"]), Family.SHAPE)]
    if groups["fq"] is not None:
        return [field_shape(int(groups["fq"]))]
    return _cyclic_shapes(int(groups["zn"]))


def parse_ring_spec(text: str) -> RingSpec:
    """
    Parse ring text such as "Z9", "F3xF4", "GR(25,2)" or "F9[x]/(x^2)xZ12".

    Args:
        text: Atoms joined by "x"; whitespace is ignored

    Returns:
        RingSpec: The Artin factors, "Zn" split by CRT

    Raises:
        RingSpecError: On malformed text or impossible orders
    """
    compact = "".join(text.split())
    if not compact:
        raise RingSpecError("empty ring spec")

    shapes: List[LocalShape] = []
    position = 0
    while True:
        match = _ATOM.match(compact, position)
        if match is None:
            raise RingSpecError(f"cannot parse ring spec {text!r} at position {position}")
        shapes.extend(_parse_atom(match))
        position = match.end()
        if position == len(compact):
            break
        if compact[position] != "x":
            raise RingSpecError(f"expected 'x' between factors in {text!r} at position {position}")
        position += 1

    spec = RingSpec(factors=tuple(shapes))
    logger.debug(f"Parsed {text!r} as {spec.label}")
    return spec


def format_ring_spec(spec: RingSpec) -> str:
    """Canonical printer: sorted factor labels joined by 'x'."""
    return "x".join(shape.label for shape in spec.factors)


def ring_from_shapes(shapes: Iterable[LocalShape]) -> RingSpec:
    return RingSpec(factors=tuple(shapes))


def product_spec(*specs: RingSpec) -> RingSpec:
    """Direct product of rings: concatenate the local factors."""
    return RingSpec(factors=tuple(shape for spec in specs for shape in spec.factors))


# Arithmetic predicates
def units_count(spec: RingSpec) -> int:
    """|R*| = prod (r_i - m_i)."""
    result = 1
    for shape in spec.factors:
        result *= shape.units
    return result


def is_odd_type(spec: RingSpec) -> bool:
    """
    Every even-order factor has 2m_i < r_i and some factor has odd order.

    Args:
        spec: Ring spec

    Returns:
        bool: True for odd-type rings
    """
    has_odd_part = any(not shape.is_even for shape in spec.factors)
    even_factors_thin = all(2 * shape.m < shape.r for shape in spec.factors if shape.is_even)
    return has_odd_part and even_factors_thin


def even_odd_split(spec: RingSpec) -> Tuple[Optional[RingSpec], Optional[RingSpec]]:
    """
    Split R into E(R) (even-order factors) and O(R) (odd-order factors).

    Returns:
        Tuple: (E, O); a side without factors is None
    """
    even = tuple(shape for shape in spec.factors if shape.is_even)
    odd = tuple(shape for shape in spec.factors if not shape.is_even)
    return (
        RingSpec(factors=even) if even else None,
        RingSpec(factors=odd) if odd else None,
    )


def cyclic_order(spec: RingSpec) -> Optional[int]:
    """
    n when R is isomorphic to Z_n, otherwise None.

    Z_n decomposes into F_p and Z_{p^k} factors over pairwise distinct primes.
    """
    primes = [shape.p for shape in spec.factors]
    if len(set(primes)) != len(primes):
        return None
    for shape in spec.factors:
        if shape.family is Family.FIELD and shape.r != shape.p:
            return None
        if shape.family not in (Family.FIELD, Family.ZMODPK):
            return None
    return spec.order


def constructible_families_for(r: int, m: int) -> List[Family]:
    """
    Families that realize the local shape (r, m) concretely.

    Args:
        r: Local ring order
        m: Maximal ideal order

    Returns:
        List: Possibly empty list of constructible families
    """
    families = []
    for family in FAMILY_ORDER:
        if family is Family.SHAPE:
            continue
        try:
            LocalShape(r=r, m=m, family=family)
        except ValidationError:
            continue
        families.append(family)
    return families

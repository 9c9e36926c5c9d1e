"""
Classification statements for cayley-spectra.

Each function evaluates a classification statement about unitary Cayley
graphs from the ring shape alone: which rings give equienergetic pairs with
the complement, which give Ramanujan pairs and triples, and which rings are
of cyclic type. Reports compare these predictions with verdicts computed from
spectra.
"""
import sys
from pathlib import Path
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterable, List, Optional, Tuple

from sympy import integer_nthroot, isprime

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.predicates import (
    field_orders,
    field_pair_complement_bound,
    field_pair_ramanujan_bound,
    local_ramanujan_condition,
)
from ring_model.model import RingSpec, cyclic_order, is_odd_type

ShapeKey = Tuple[Tuple[int, int], ...]

# Odd-type rings outside the two-field inequality whose pair {G_R, G_R+} is Ramanujan
ODD_TYPE_RAMANUJAN_SHAPES: FrozenSet[ShapeKey] = frozenset({
    ((3, 1), (3, 1)),
    ((3, 1), (4, 1)),
    ((3, 1), (3, 1), (3, 1)),
    ((3, 1), (3, 1), (4, 1)),
    ((3, 1), (9, 3)),
})

COMPLEMENT_EQUIENERGETIC_FIELD_TRIPLES: FrozenSet[Tuple[int, int, int]] = frozenset({
    (3, 4, 7),
    (3, 5, 5),
    (4, 4, 4),
})

CYCLIC_TRIPLE_ORDERS: FrozenSet[int] = frozenset({15, 21, 35})


def _two_fields(spec: RingSpec) -> Optional[Tuple[int, int]]:
    orders = field_orders(spec)
    if orders is None or len(orders) != 2:
        return None
    return orders[0], orders[1]


# Complement equienergy
def local_complement_equienergy(spec: RingSpec) -> bool:
    """Local R: E(G_R) = E(Gbar_R) iff r = m^2."""
    shape = spec.factors[0]
    return shape.r == shape.m * shape.m


def two_factor_complement_equienergy(spec: RingSpec) -> bool:
    """R = R1 x R2: E(G_R) = E(Gbar_R) iff both factors are fields."""
    return spec.all_fields


def three_field_complement_equienergy(spec: RingSpec) -> bool:
    """R = F_q1 x F_q2 x F_q3: E(G_R) = E(Gbar_R) iff (q1, q2, q3) is (3,4,7), (3,5,5) or (4,4,4)."""
    return field_orders(spec) in COMPLEMENT_EQUIENERGETIC_FIELD_TRIPLES


def complement_isospectral(spec: RingSpec) -> bool:
    """Among rings equienergetic with their complement only F3 x F3 is isospectral to it."""
    return field_orders(spec) == (3, 3)


# Ramanujan pairs
def odd_type_ramanujan_pair(spec: RingSpec) -> bool:
    """
    Non-local odd-type R with {G_R, G_R+} Ramanujan.

    The fixed shapes F3xF3, F3xF4, F3^3, F3^2xF4 and F3 x (9,3), plus
    F_q1 x F_q2 with at least one odd q and (q2+1)^2 <= 4 q1 (q2-1).
    """
    if spec.shape_key in ODD_TYPE_RAMANUJAN_SHAPES:
        return True
    pair = _two_fields(spec)
    return pair is not None and any(q % 2 for q in pair) and field_pair_ramanujan_bound(*pair)


def two_field_complement_ramanujan_pair(spec: RingSpec) -> bool:
    """Two local factors, G_R non-bipartite: {G_R, Gbar_R} equienergetic, non-isospectral and both Ramanujan."""
    pair = _two_fields(spec)
    return (
        pair is not None
        and pair != (3, 3)
        and field_pair_ramanujan_bound(*pair)
        and field_pair_complement_bound(*pair)
    )


def complement_ramanujan_two_fields(spec: RingSpec) -> bool:
    """R = F_q1 x F_q2: Gbar_R Ramanujan and {G_R, Gbar_R} non-isospectral."""
    pair = _two_fields(spec)
    if pair is None or pair == (3, 3):
        return False
    q1, q2 = pair
    if q1 == 2:
        return q2 <= 5
    return field_pair_complement_bound(q1, q2)


# Ramanujan triples
def local_ramanujan_triple(spec: RingSpec) -> bool:
    """Local R: {G_R, G_R+, Gbar_R} equienergetic, non-isospectral and Ramanujan iff r = m^2 is odd."""
    shape = spec.factors[0]
    return shape.r == shape.m * shape.m and shape.r % 2 == 1


def nonlocal_ramanujan_triple(spec: RingSpec) -> bool:
    """Non-local R: the triple exists iff R = F_q1 x F_q2 of odd type with both pair conditions."""
    return two_field_complement_ramanujan_pair(spec) and is_odd_type(spec)


def cyclic_ramanujan_triple(n: int) -> bool:
    """Z_n, n odd: the triple exists iff n = p^2 for an odd prime p, or n is 15, 21 or 35."""
    if n in CYCLIC_TRIPLE_ORDERS:
        return True
    root, exact = integer_nthroot(n, 2)
    return n % 2 == 1 and bool(exact) and isprime(int(root))


def equienergetic_triple(spec: RingSpec) -> bool:
    """
    Rings known to give an integral equienergetic non-isospectral triple.

    Local with r = m^2 odd; F_q1 x F_q2 != F3 x F3 with q1, q2 >= 3, one odd;
    F3 x F5 x F5 and F3 x F4 x F7.
    """
    if spec.is_local:
        return local_ramanujan_triple(spec)
    orders = field_orders(spec)
    if orders is None:
        return False
    if len(orders) == 2:
        return orders != (3, 3) and orders[0] >= 3 and any(q % 2 for q in orders)
    return orders in {(3, 5, 5), (3, 4, 7)}


def local_pair_ramanujan(spec: RingSpec) -> bool:
    """Local R: G_R (and G_R+) Ramanujan iff r = 2m or 4r >= (m+2)^2 with m != 2."""
    shape = spec.factors[0]
    return local_ramanujan_condition(shape.r, shape.m)


def is_cyclic_odd(spec: RingSpec) -> Optional[int]:
    """n when R = Z_n with n odd, otherwise None."""
    n = cyclic_order(spec)
    return n if n is not None and n % 2 == 1 else None


# Registered errata
@dataclass(frozen=True)
class Erratum:
    """
    A transcribed statement that exact computation contradicts.

    Attributes:
        key: Stable identifier, used in report flags as "erratum:<key>"
        tags: Statements the erratum concerns
        transcribed: What the transcription says
        computed: What exact computation gives, with its witness
        applies: Rings the erratum is about
    """

    key: str
    tags: Tuple[str, ...]
    transcribed: str
    computed: str
    applies: Callable[[RingSpec], bool] = field(compare=False)


def _fields_are(*orders: int) -> Callable[[RingSpec], bool]:
    return lambda spec: field_orders(spec) == tuple(sorted(orders))


ERRATA: Tuple[Erratum, ...] = (
    Erratum(
        key="f11xf11-complement",
        tags=(
            "two-field-complement-ramanujan-pairs",
            "complement-ramanujan-two-fields",
            "nonlocal-ramanujan-triples",
            "cyclic-ramanujan-triples",
            "ramanujan-triple-table",
        ),
        transcribed="F11xF11 listed with a Ramanujan complement",
        computed="the complement of G_{F11xF11} has degree 20 and eigenvalue 9; 81 > 76",
        applies=_fields_are(11, 11),
    ),
    Erratum(
        key="z169-row",
        tags=("ramanujan-triple-table",),
        transcribed="Z169,169,157,11,314",
        computed="|Z169*| = 156, so kappa = 156, kappabar = 12, energy = 312",
        applies=lambda spec: spec.shape_key == ((169, 13),),
    ),
    Erratum(
        key="z2n-srg",
        tags=("srg-classification",),
        transcribed="G_{Z2^n} = srg(2n, 1, 0, 0)",
        computed="G_{Z2^n} is a perfect matching on 2^n vertices, srg(2^n, 1, 0, 0)",
        applies=lambda spec: spec.s >= 2 and field_orders(spec) == (2,) * spec.s,
    ),
    Erratum(
        key="f3-x-27-9",
        tags=("odd-type-ramanujan-pairs",),
        transcribed="F3 x Z3[x]/(x^3) listed",
        computed="shape (27,9) gives degree 36 and eigenvalue -18; 324 > 140; the entry holds for shape (9,3)",
        applies=lambda spec: spec.shape_key == ((3, 1), (27, 9)),
    ),
    Erratum(
        key="f3xf4xf7-complement",
        tags=("three-field-complement-equienergy", "equienergetic-triples"),
        transcribed="only (3,5,5) and (4,4,4)",
        computed="1/2 + 1/3 + 1/6 = 1: F3xF4xF7 has E(G) = E(Gbar) = 288",
        applies=_fields_are(3, 4, 7),
    ),
    Erratum(
        key="f5xf16-pair",
        tags=("field-pair-ramanujan-examples",),
        transcribed="F5 x F_q for q = 5, 7, 8, 9, 11, 13",
        computed="q = 16 also qualifies: (16+1)^2 = 289 <= 4*5*15 = 300",
        applies=_fields_are(5, 16),
    ),
    Erratum(
        key="crown-mk2",
        tags=("crown-complement-pairs",),
        transcribed="{H_{m,m}, mK_2} equienergetic, one of them disconnected",
        computed="E(H_{m,m}) = 4(m-1) but E(mK_2) = 2m; the complement of H_{m,m} is K_m x K_2 (prism), connected, energy 4(m-1)",
        applies=lambda spec: (field_orders(spec) or (0,))[0] == 2 and spec.s == 2 and max(spec.residue_sizes) >= 3,
    ),
    Erratum(
        key="cyclic-triples-noncyclic",
        tags=("cyclic-ramanujan-triples",),
        transcribed="Z5xZ5, Z7xZ7 and Z11xZ11 listed among the rings Z_n",
        computed="F_p x F_p is not a ring Z_n",
        applies=lambda spec: field_orders(spec) in {(5, 5), (7, 7), (11, 11)},
    ),
)


def errata_for(spec: RingSpec, tags: Iterable[str]) -> List[Erratum]:
    """Registered errata about spec that concern any of the given statements."""
    wanted = set(tags)
    return [erratum for erratum in ERRATA if wanted.intersection(erratum.tags) and erratum.applies(spec)]

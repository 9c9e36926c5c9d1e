"""
Ring enumeration for cayley-spectra.

This module walks every canonical ring spec within a size bound: first the
local shapes of each allowed family, then their multisets. The output order
is deterministic, ascending by (|R|, s, label).
"""
import sys
from pathlib import Path
from typing import FrozenSet, Iterator, List, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import primerange

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from ring_model.model import (
    CONSTRUCTIBLE_FAMILIES,
    Family,
    LocalShape,
    RingSpec,
    constructible_families_for,
    is_odd_type,
)


def parse_families(value: Union[str, FrozenSet[Family], List[str]]):
    """Accept "Field,ZModPk" style text as well as family collections."""
    if isinstance(value, str):
        return frozenset(Family(name.strip()) for name in value.split(",") if name.strip())
    return value


class SearchConfig(BaseModel):
    """
    Bounds and filters of an enumeration.

    Attributes:
        max_vertices: Largest |R|
        families: Allowed families; Shape adds the shapes without a concrete witness
        max_factors: Largest number of local factors s
        require_odd_type: Keep only rings of odd type
    """

    model_config = ConfigDict(frozen=True)

    max_vertices: int = Field(ge=2)
    families: FrozenSet[Family] = CONSTRUCTIBLE_FAMILIES
    max_factors: int = Field(default=2, ge=1)
    require_odd_type: bool = False

    @field_validator("families", mode="before")
    @classmethod
    def _parse_families(cls, value: Union[str, FrozenSet[Family], List[str]]):
        return parse_families(value)


def local_shapes(max_order: int, families: FrozenSet[Family]) -> List[LocalShape]:
    """
    Every local shape (p^a, p^b), b < a, with r <= max_order, once per allowed family.

    A shape with a constructible witness is listed once for each allowed
    constructible family that realizes it (Z9 and F3[x]/(x^2) are distinct
    entries); a shape without one is listed as Shape when that family is allowed.
    """
    shapes: List[LocalShape] = []
    for p in primerange(2, max_order + 1):
        r = p
        while r <= max_order:
            m = 1
            while m < r:
                realized = constructible_families_for(r, m)
                allowed = [family for family in realized if family in families]
                if not realized and Family.SHAPE in families:
                    allowed = [Family.SHAPE]
                shapes.extend(LocalShape(r=r, m=m, family=family) for family in allowed)
                m *= p
            r *= p
    return sorted(shapes, key=lambda shape: shape.sort_key)


def _multisets(shapes: List[LocalShape], start: int, budget: int, slots: int, prefix: List[LocalShape]) -> Iterator[List[LocalShape]]:
    for index in range(start, len(shapes)):
        shape = shapes[index]
        if shape.r > budget:
            break
        chosen = prefix + [shape]
        yield chosen
        if slots > 1:
            yield from _multisets(shapes, index, budget // shape.r, slots - 1, chosen)


def enumerate_specs(cfg: SearchConfig) -> Iterator[RingSpec]:
    """
    Yield every canonical ring spec within the bounds of cfg.

    Args:
        cfg: Search configuration

    Yields:
        RingSpec: Without duplicates, sorted by (|R|, s, label)
    """
    shapes = local_shapes(cfg.max_vertices, cfg.families)
    specs = [
        RingSpec(factors=tuple(chosen))
        for chosen in _multisets(shapes, 0, cfg.max_vertices, cfg.max_factors, [])
    ]
    if cfg.require_odd_type:
        specs = [spec for spec in specs if is_odd_type(spec)]
    specs.sort(key=lambda spec: (spec.order, spec.s, spec.label))
    logger.info(f"Enumerated {len(specs)} ring specs (|R| <= {cfg.max_vertices}, s <= {cfg.max_factors})")
    yield from specs

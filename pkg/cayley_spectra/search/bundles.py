"""
Kronecker bundles for cayley-spectra.

A bundle is a set of graphs on a common vertex count, each a Kronecker
product of role-tagged factor graphs (G_R, G_R+, the complement of G_R, or
G_R- = X+(R, R minus (R* and 0))). Spectra compose by multiplying
eigenvalues, so a bundle on hundreds of vertices never touches a matrix.

Named recipes reproduce the known constructions and assert their claims;
free-form recipes are composed and reported without claims.
"""
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.predicates import is_isospectral, spectral_predicates
from classify.reports import TheoremCheck
from oracle.characters import integer_sum_spectrum
from oracle.rings import build_concrete_ring
from ring_model.model import RingSpec, parse_ring_spec, product_spec
from shared.utils import BundleError, TheoremMismatch, canonical_json
from spectra.spectrum import Role, Spectrum, energy, kron_all, role_spectrum

PAIRED_TRIPLE_RINGS = (
    ("F3xF4", "F5xF7"),
    ("F3xF5", "F4xF7"),
    ("F3xF7", "F4xF5"),
)
MIXED_SIXTEEN_LEFT = ("F3xF3", "F9")
MIXED_SIXTEEN_RIGHT = "F4xF5"
QUADRUPLE_RINGS = ("F9", "F3xF3")

FactorKey = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class _Factor:
    label: str
    spectrum: Spectrum
    key: FactorKey


class BundleMember(BaseModel):
    """
    One graph of a bundle.

    Attributes:
        label: Kronecker product text, e.g. "GR[F3xF4]*GRplus[F5xF7]"
        spectrum: Exact spectrum
        energy: E of the graph
        trace: Number of loops
        connected: m(degree) = 1
        bipartite: -degree is an eigenvalue
    """

    model_config = ConfigDict(frozen=True)

    label: str
    spectrum: Spectrum
    energy: int
    trace: int
    connected: bool
    bipartite: bool


class GraphBundle(BaseModel):
    """
    Members of a bundle with their pairwise relations.

    Attributes:
        name: Recipe name or text
        n: Common vertex count
        members: Distinct members, in recipe order
        duplicates: Labels dropped because an earlier member is the same graph
        equienergetic: All members share one energy
        isospectral_pairs: Pairs of member labels with equal spectra
        checks: Claims of a named recipe, evaluated against the spectra
    """

    model_config = ConfigDict(frozen=True)

    name: str
    n: int
    members: List[BundleMember]
    duplicates: List[str] = Field(default_factory=list)
    equienergetic: bool
    isospectral_pairs: List[List[str]] = Field(default_factory=list)
    checks: List[TheoremCheck] = Field(default_factory=list)

    @property
    def energies(self) -> List[int]:
        return [member.energy for member in self.members]

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


# Factors
def minus_spectrum(spec: RingSpec) -> Spectrum:
    """
    Spectrum of G_R- = X+(R, R minus (R* and 0)) through the oracle.

    E(G_R-) = E(complement of G_R), since the connection set is symmetric and
    its difference graph is the complement.

    Raises:
        OracleError: If R has no concrete witness or is too large
        TheoremMismatch: If the energy identity fails
    """
    ring = build_concrete_ring(spec)
    members = np.flatnonzero(~ring.unit_mask)
    members = members[members != ring.zero]
    if members.size == 0:
        spectrum = Spectrum.from_counts({0: ring.order}, 0)
    else:
        spectrum = integer_sum_spectrum(ring.group, members)

    expected = energy(role_spectrum(spec, Role.GRBAR))
    if energy(spectrum) != expected:
        logger.error(f"E(G-) = {energy(spectrum)} but E(Gbar) = {expected} for {spec.label}")
        raise TheoremMismatch(
            f"{spec.label}: E(G_R-) = E(Gbar_R)",
            expected=expected,
            observed=energy(spectrum),
        )
    logger.debug(f"G- of {spec.label}: {spectrum.to_text()}")
    return spectrum


def _ring_factor(spec: RingSpec, role: Role) -> _Factor:
    if role in (Role.GR, Role.GRPLUS):
        # G+ of an even local factor is G itself
        key = tuple(
            (shape.label, Role.GR.value if role is Role.GR or shape.is_even else Role.GRPLUS.value)
            for shape in spec.factors
        )
    else:
        key = ((spec.label, role.value),)
    spectrum = minus_spectrum(spec) if role is Role.GRMINUS else role_spectrum(spec, role)
    return _Factor(label=f"{role.value}[{spec.label}]", spectrum=spectrum, key=key)


def _graph_factor(label: str, spectrum: Spectrum) -> _Factor:
    return _Factor(label=label, spectrum=spectrum, key=((label, "graph"),))


def compose(name: str, recipes: Sequence[Sequence[_Factor]], checks: Optional[List[TheoremCheck]] = None) -> GraphBundle:
    """
    Compose each recipe into a member and relate the members pairwise.

    Raises:
        BundleError: If the recipe list is empty or members differ in vertex count
    """
    if not recipes or any(not factors for factors in recipes):
        logger.error(f"Bundle {name}: empty recipe")
        raise BundleError(f"bundle {name!r} has an empty member")

    members: List[BundleMember] = []
    duplicates: List[str] = []
    seen: Dict[FactorKey, str] = {}
    for factors in recipes:
        label = "*".join(factor.label for factor in factors)
        key = tuple(sorted(item for factor in factors for item in factor.key))
        if key in seen:
            duplicates.append(label)
            continue
        seen[key] = label
        spectrum = kron_all(factor.spectrum for factor in factors)
        structure = spectral_predicates(spectrum)
        members.append(BundleMember(
            label=label,
            spectrum=spectrum,
            energy=energy(spectrum),
            trace=spectrum.trace,
            connected=structure.connected,
            bipartite=structure.bipartite,
        ))

    counts = sorted({member.spectrum.n for member in members})
    if len(counts) > 1:
        logger.error(f"Bundle {name}: mixed vertex counts {counts}")
        raise BundleError(f"bundle {name!r} mixes vertex counts {counts}")

    isospectral = [
        [a.label, b.label]
        for a, b in combinations(members, 2)
        if is_isospectral(a.spectrum, b.spectrum).value
    ]
    bundle = GraphBundle(
        name=name,
        n=counts[0],
        members=members,
        duplicates=duplicates,
        equienergetic=len({member.energy for member in members}) == 1,
        isospectral_pairs=isospectral,
        checks=checks or [],
    )
    logger.info(f"Bundle {name}: {len(members)} members on {bundle.n} vertices, {len(duplicates)} duplicates dropped")
    return bundle


def _enforce_claims(bundle: GraphBundle, claims: List[TheoremCheck]) -> GraphBundle:
    for check in claims:
        if not check.agrees:
            logger.error(f"Bundle {bundle.name}: {check.tag} predicts {check.predicted}, spectra give {check.observed}")
            raise TheoremMismatch(f"{bundle.name}: {check.statement}", expected=check.predicted, observed=check.observed)
    return bundle.model_copy(update={"checks": claims})


def _equienergetic_claim(bundle: GraphBundle) -> TheoremCheck:
    return TheoremCheck(
        tag="bundle-equienergetic-non-isospectral",
        statement="all members are equienergetic and pairwise non-isospectral",
        predicted=[True, []],
        observed=[bundle.equienergetic, bundle.isospectral_pairs],
    )


# Named recipes
def quadruple_bundle(spec: RingSpec) -> GraphBundle:
    """
    {G_{F9xR}, G+_{F9xR}, G_{F3xF3xR}, G+_{F3xF3xR}} for R with 2m_i < r_i on every factor.

    The four graphs are connected and non-bipartite; the two sum graphs have
    loops exactly when R has no factor of even order.

    Raises:
        BundleError: If some factor has 2m_i >= r_i
    """
    if any(2 * shape.m >= shape.r for shape in spec.factors):
        logger.error(f"quadruple over {spec.label}: needs 2m < r on every factor")
        raise BundleError(f"quadruple needs 2m_i < r_i on every factor of {spec.label}")

    recipes = [
        [_ring_factor(product_spec(parse_ring_spec(base), spec), role)]
        for base in QUADRUPLE_RINGS
        for role in (Role.GR, Role.GRPLUS)
    ]
    bundle = compose(f"quadruple:{spec.label}", recipes)
    odd_only = all(not shape.is_even for shape in spec.factors)
    claims = [
        _equienergetic_claim(bundle),
        TheoremCheck(
            tag="quadruple-structure",
            statement="every member is connected and non-bipartite",
            predicted=[True] * len(bundle.members),
            observed=[member.connected and not member.bipartite for member in bundle.members],
        ),
        TheoremCheck(
            tag="quadruple-loops",
            statement="the sum graphs have loops iff R has no factor of even order",
            predicted=[False, odd_only, False, odd_only],
            observed=[member.trace > 0 for member in bundle.members],
        ),
    ]
    return _enforce_claims(bundle, claims)


def kron_quadruple_bundle(spec: RingSpec, role: Role) -> GraphBundle:
    """
    {G_F9 (x) H, G+_F9 (x) H, G_{F3xF3} (x) H, G+_{F3xF3} (x) H} with H the role graph over spec.

    Raises:
        BundleError: If H is not connected, is bipartite or has loops
    """
    base = _ring_factor(spec, role)
    structure = spectral_predicates(base.spectrum)
    if not structure.connected or structure.bipartite or base.spectrum.trace:
        logger.error(f"kron-quadruple over {base.label}: graph must be connected, non-bipartite and loopless")
        raise BundleError(f"{base.label} must be connected, non-bipartite and loopless")

    recipes = [
        [_ring_factor(parse_ring_spec(ring), ring_role), base]
        for ring in QUADRUPLE_RINGS
        for ring_role in (Role.GR, Role.GRPLUS)
    ]
    bundle = compose(f"kron-quadruple:{spec.label}:{role.value}", recipes)
    claims = [
        _equienergetic_claim(bundle),
        TheoremCheck(
            tag="kron-quadruple-simple",
            statement="every member is connected and loopless",
            predicted=[[True, 0]] * len(bundle.members),
            observed=[[member.connected, member.trace] for member in bundle.members],
        ),
    ]
    return _enforce_claims(bundle, claims)


def mixed_sixteen_bundle() -> GraphBundle:
    """
    G_i (x) H for G_i in {G_{F3xF3}, G_F9} and their sum graphs, H a role graph over F4 x F5.

    Sixteen members on 180 vertices, energy 768; only the two G_i+ (x) G- members have loops.
    """
    right = parse_ring_spec(MIXED_SIXTEEN_RIGHT)
    recipes = [
        [_ring_factor(parse_ring_spec(left), left_role), _ring_factor(right, right_role)]
        for left_role in (Role.GR, Role.GRPLUS)
        for right_role in (Role.GR, Role.GRPLUS, Role.GRBAR, Role.GRMINUS)
        for left in MIXED_SIXTEEN_LEFT
    ]
    bundle = compose("mixed-sixteen", recipes)
    claims = [
        _equienergetic_claim(bundle),
        TheoremCheck(
            tag="mixed-sixteen-loops",
            statement="all members are simple except the last two, which have loops",
            predicted=[False] * 14 + [True, True],
            observed=[member.trace > 0 for member in bundle.members],
        ),
    ]
    return _enforce_claims(bundle, claims)


def paired_triples_bundle() -> GraphBundle:
    """
    Role products over the three ring pairs with product F3 x F4 x F5 x F7.

    Each pair gives nine members; G (x) G and G+ (x) G+ coincide across the
    pairs, leaving 23 members on 420 vertices with energy 2304.
    """
    roles = (Role.GR, Role.GRPLUS, Role.GRBAR)
    recipes = [
        [_ring_factor(parse_ring_spec(left), left_role), _ring_factor(parse_ring_spec(right), right_role)]
        for left, right in PAIRED_TRIPLE_RINGS
        for left_role in roles
        for right_role in roles
    ]
    bundle = compose("paired-triples", recipes)
    claims = [
        _equienergetic_claim(bundle),
        TheoremCheck(
            tag="paired-triples-size",
            statement="23 distinct members on 420 vertices with energy 2304",
            predicted=[23, 420, 2304],
            observed=[len(bundle.members), bundle.n, bundle.members[0].energy],
        ),
    ]
    return _enforce_claims(bundle, claims)


# Recipe text
def _parse_factor(text: str) -> _Factor:
    ring, separator, role = text.strip().rpartition(":")
    if not separator or not ring.strip():
        logger.error(f"Bundle factor {text!r} has no role")
        raise BundleError(f"bundle factor {text!r} must read RING:role")
    try:
        parsed_role = Role.parse(role)
    except ValueError as e:
        raise BundleError(str(e)) from e
    return _ring_factor(parse_ring_spec(ring), parsed_role)


def build_bundle(recipe: str) -> GraphBundle:
    """
    Build a bundle from a recipe name or a free-form recipe.

    Args:
        recipe: "paired-triples", "mixed-sixteen", "quadruple:<ring>",
            "kron-quadruple:<ring>:<role>", or "RING:role*RING:role;..." with
            members separated by ";" and Kronecker factors by "*"

    Returns:
        GraphBundle: Members and relations; named recipes also carry their checked claims

    Raises:
        BundleError: Malformed recipes, unmet preconditions, mixed vertex counts
        RingSpecError: Malformed ring text
        TheoremMismatch: If a named recipe's claim fails
    """
    text = recipe.strip()
    if text == "paired-triples":
        return paired_triples_bundle()
    if text == "mixed-sixteen":
        return mixed_sixteen_bundle()
    if text.startswith("quadruple:"):
        return quadruple_bundle(parse_ring_spec(text[len("quadruple:"):]))
    if text.startswith("kron-quadruple:"):
        ring, separator, role = text[len("kron-quadruple:"):].rpartition(":")
        if not separator:
            raise BundleError(f"recipe {text!r} must read kron-quadruple:<ring>:<role>")
        try:
            parsed_role = Role.parse(role)
        except ValueError as e:
            raise BundleError(str(e)) from e
        return kron_quadruple_bundle(parse_ring_spec(ring), parsed_role)

    recipes = [
        [_parse_factor(factor) for factor in member.split("*")]
        for member in text.split(";")
        if member.strip()
    ]
    return compose(text, recipes)

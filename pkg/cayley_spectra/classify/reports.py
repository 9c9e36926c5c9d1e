"""
Classification reports for cayley-spectra.

This module assembles the pair and triple reports over a ring: every verdict is
computed from exact spectra, then each classification statement whose
hypotheses hold is evaluated from the ring shape and compared with it. A
disagreement raises TheoremMismatch with both sides attached.
"""
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.predicates import (
    Predicate,
    RamanujanVerdict,
    equienergetic_with_complement,
    is_equienergetic,
    is_isospectral,
    is_ramanujan,
    spectral_predicates,
    srg_parameters_from_spectrum,
    strongly_regular_classify,
)
from classify.theorems import (
    complement_isospectral,
    complement_ramanujan_two_fields,
    cyclic_ramanujan_triple,
    equienergetic_triple,
    errata_for,
    is_cyclic_odd,
    local_complement_equienergy,
    local_pair_ramanujan,
    local_ramanujan_triple,
    nonlocal_ramanujan_triple,
    odd_type_ramanujan_pair,
    three_field_complement_equienergy,
    two_factor_complement_equienergy,
    two_field_complement_ramanujan_pair,
)
from ring_model.model import RingSpec, field_shape, is_odd_type, parse_ring_spec, ring_from_shapes
from shared.utils import RingSpecError, TheoremMismatch, canonical_json, prime_power
from spectra.spectrum import (
    Role,
    Spectrum,
    closed_form_energies,
    complete_graph_spectrum,
    complete_multipartite_spectrum,
    disjoint_copies,
    energy,
    role_spectrum,
    unitary_spectrum,
)


class PairKind(str, Enum):
    SUM = "GRvsGRplus"
    COMPLEMENT = "GRvsGRbar"

    @classmethod
    def parse(cls, text: str) -> "PairKind":
        """Accepts "GRvsGRplus", "GRvsGRbar" or the partner role ("grplus", "grbar"), any case."""
        lowered = text.strip().lower()
        for kind in cls:
            if lowered in (kind.value.lower(), kind.partner.value.lower()):
                return kind
        raise RingSpecError(f"Unknown pair kind: {text!r}")

    @property
    def partner(self) -> Role:
        return Role.GRPLUS if self is PairKind.SUM else Role.GRBAR


class GraphSummary(BaseModel):
    """One graph of a report with its spectrum and structural verdicts."""

    model_config = ConfigDict(frozen=True)

    label: str
    role: str
    n: int
    degree: int
    energy: int
    trace: int
    spectrum: str
    connected: bool
    bipartite: bool
    strongly_almost_symmetric: bool
    ramanujan: RamanujanVerdict


def summarize(label: str, role: str, spectrum: Spectrum) -> GraphSummary:
    structure = spectral_predicates(spectrum)
    return GraphSummary(
        label=label,
        role=role,
        n=spectrum.n,
        degree=spectrum.degree,
        energy=energy(spectrum),
        trace=spectrum.trace,
        spectrum=spectrum.to_text(),
        connected=structure.connected,
        bipartite=structure.bipartite,
        strongly_almost_symmetric=structure.strongly_almost_symmetric,
        ramanujan=is_ramanujan(spectrum),
    )


class TheoremCheck(BaseModel):
    """
    A classification statement evaluated two ways.

    Attributes:
        tag: Statement identifier, e.g. "local-ramanujan-condition"
        statement: Human-readable statement
        predicted: Value given by the statement from the ring shape
        observed: Value computed from spectra
    """

    model_config = ConfigDict(frozen=True)

    tag: str
    statement: str
    predicted: Any
    observed: Any

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed


class ClassificationReport(BaseModel):
    """
    Predicates, verdict and cross-checked statements for a pair or triple of graphs.

    Attributes:
        kind: "pair:GRvsGRplus", "pair:GRvsGRbar", "triple", "multipartite" or "crown"
        subject: Canonical ring label or family instance label
        graphs: The graphs compared
        predicates: Every computed predicate with its witness
        verdict: The headline predicate
        theorem_tags: Statements whose hypotheses held and which agree with the spectra
        checks: The evaluated statements
        flags: "no-oracle-witness", "different-order" and "erratum:<key>" markers
    """

    model_config = ConfigDict(frozen=True)

    kind: str
    subject: str
    graphs: List[GraphSummary]
    predicates: List[Predicate]
    verdict: Predicate
    theorem_tags: List[str] = Field(default_factory=list)
    checks: List[TheoremCheck] = Field(default_factory=list)
    flags: List[str] = Field(default_factory=list)

    def predicate(self, name: str) -> Optional[Predicate]:
        for item in self.predicates:
            if item.name == name:
                return item
        return None

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


def _ramanujan_predicate(role: str, verdict: RamanujanVerdict) -> Predicate:
    return Predicate(name=f"ramanujan:{role}", value=verdict.ramanujan, witness=verdict.model_dump())


def _odd_type_predicate(spec: RingSpec) -> Predicate:
    return Predicate(
        name="odd-type",
        value=is_odd_type(spec),
        witness={
            "even_factors": [shape.label for shape in spec.factors if shape.is_even],
            "odd_factors": [shape.label for shape in spec.factors if not shape.is_even],
        },
    )


def _enforce(subject: str, checks: List[TheoremCheck]) -> None:
    """Raise TheoremMismatch on the first check whose two sides differ."""
    for check in checks:
        if not check.agrees:
            logger.error(f"{subject}: {check.tag} predicts {check.predicted}, spectra give {check.observed}")
            raise TheoremMismatch(
                f"{subject}: {check.statement}",
                expected=check.predicted,
                observed=check.observed,
            )


def _flags(spec: RingSpec, checks: List[TheoremCheck], predicates: List[Predicate]) -> List[str]:
    flags = []
    if not spec.is_constructible:
        flags.append("no-oracle-witness")
    if any("different-order" in item.witness.get("flags", []) for item in predicates):
        flags.append("different-order")
    tags = [check.tag for check in checks]
    flags.extend(f"erratum:{erratum.key}" for erratum in errata_for(spec, tags))
    return flags


def _srg_check(spec: RingSpec, gr: Spectrum, grplus: Spectrum) -> TheoremCheck:
    verdict = strongly_regular_classify(spec)
    return TheoremCheck(
        tag="srg-classification",
        statement="G_R is srg iff R is local, F_q x F_q (q >= 3) or Z_2^n; G_R+ iff in addition every factor is even",
        predicted=[verdict.gr_parameters, verdict.grplus_parameters],
        observed=[srg_parameters_from_spectrum(gr), srg_parameters_from_spectrum(grplus)],
    )


def _local_condition_applies(spec: RingSpec) -> bool:
    # formula-only even shapes such as (8,2) have no graph to compare with
    return spec.is_local and spec.is_constructible


# Pair reports
def _sum_checks(spec: RingSpec, gr: Spectrum, plus: Spectrum, eq: Predicate, iso: Predicate,
                ram_gr: RamanujanVerdict, ram_plus: RamanujanVerdict) -> List[TheoremCheck]:
    units = gr.degree
    checks = [
        TheoremCheck(
            tag="sum-graph-equienergy",
            statement="E(G_R) = E(G_R+)",
            predicted=True,
            observed=eq.value,
        ),
        TheoremCheck(
            tag="sum-graph-second-eigenvalue",
            statement="lambda(G_R) = lambda(G_R+)",
            predicted=ram_gr.second_eigenvalue,
            observed=ram_plus.second_eigenvalue,
        ),
        TheoremCheck(
            tag="sum-graph-loops",
            statement="G_R+ has |R*| loops if |R| is odd and none otherwise",
            predicted=units if spec.order % 2 else 0,
            observed=plus.trace,
        ),
        _srg_check(spec, gr, plus),
    ]
    if spec.order % 2:
        checks.append(TheoremCheck(
            tag="odd-order-strongly-almost-symmetric",
            statement="G_R+ has a strongly almost symmetric spectrum when |R| is odd",
            predicted=True,
            observed=spectral_predicates(plus).strongly_almost_symmetric,
        ))
    if is_odd_type(spec):
        gr_structure, plus_structure = spectral_predicates(gr), spectral_predicates(plus)
        checks.append(TheoremCheck(
            tag="odd-type-non-isospectral",
            statement="R of odd type: G_R and G_R+ are connected, non-bipartite and not isospectral",
            predicted=[True, False, True, False, False],
            observed=[
                gr_structure.connected,
                gr_structure.bipartite,
                plus_structure.connected,
                plus_structure.bipartite,
                iso.value,
            ],
        ))
    if spec.is_local:
        if spec.order % 2 == 0:
            checks.append(TheoremCheck(
                tag="even-local-sum-graph",
                statement="R local of even order: G_R+ = G_R",
                predicted=True,
                observed=iso.value,
            ))
        if _local_condition_applies(spec):
            checks.append(TheoremCheck(
                tag="local-ramanujan-condition",
                statement="R local: G_R and G_R+ are Ramanujan iff r = 2m or 4r >= (m+2)^2 with m != 2",
                predicted=local_pair_ramanujan(spec),
                observed=ram_gr.ramanujan and ram_plus.ramanujan,
            ))
    elif is_odd_type(spec) and spec.is_constructible:
        # the list covers rings only; shapes such as (8,2) have no ring
        checks.append(TheoremCheck(
            tag="odd-type-ramanujan-pairs",
            statement="R non-local of odd type: {G_R, G_R+} Ramanujan iff R is in the odd-type list",
            predicted=odd_type_ramanujan_pair(spec),
            observed=ram_gr.ramanujan and ram_plus.ramanujan,
        ))
    return checks


def _complement_checks(spec: RingSpec, gr: Spectrum, bar: Spectrum, eq: Predicate, iso: Predicate,
                       ram_gr: RamanujanVerdict, ram_bar: RamanujanVerdict) -> List[TheoremCheck]:
    _, closed_bar = closed_form_energies(spec)
    checks = [
        TheoremCheck(
            tag="complement-energy-closed-form",
            statement="E(Gbar_R) = 2(|R|-1) + (2^s-2)|R*| - prod q_i + prod (2-q_i), and equality with E(G_R) follows the arithmetic condition",
            predicted=[closed_bar, equienergetic_with_complement(spec)],
            observed=[energy(bar), eq.value],
        ),
    ]
    pair_verdict = eq.value and not iso.value and ram_gr.ramanujan and ram_bar.ramanujan
    if spec.is_local:
        checks.append(TheoremCheck(
            tag="local-complement-equienergy",
            statement="R local: E(G_R) = E(Gbar_R) iff r = m^2, and then the two are not isospectral",
            predicted=[local_complement_equienergy(spec), False],
            observed=[eq.value, iso.value],
        ))
        checks.append(TheoremCheck(
            tag="local-complement-ramanujan",
            statement="R local: Gbar_R is Ramanujan",
            predicted=True,
            observed=ram_bar.ramanujan,
        ))
        if _local_condition_applies(spec):
            checks.append(TheoremCheck(
                tag="local-ramanujan-condition",
                statement="R local: G_R is Ramanujan iff r = 2m or 4r >= (m+2)^2 with m != 2",
                predicted=local_pair_ramanujan(spec),
                observed=ram_gr.ramanujan,
            ))
    elif spec.s == 2:
        checks.append(TheoremCheck(
            tag="two-field-complement-equienergy",
            statement="R = R1 x R2: E(G_R) = E(Gbar_R) iff both factors are fields; then isospectral only for F3 x F3",
            predicted=[two_factor_complement_equienergy(spec), complement_isospectral(spec)],
            observed=[eq.value, iso.value],
        ))
        if not spectral_predicates(gr).bipartite:
            checks.append(TheoremCheck(
                tag="two-field-complement-ramanujan-pairs",
                statement="R = R1 x R2, G_R non-bipartite: {G_R, Gbar_R} equienergetic, non-isospectral and Ramanujan iff R is in the two-field list",
                predicted=two_field_complement_ramanujan_pair(spec),
                observed=pair_verdict,
            ))
        if spec.all_fields:
            checks.append(TheoremCheck(
                tag="complement-ramanujan-two-fields",
                statement="R = F_q1 x F_q2: Gbar_R Ramanujan and not isospectral to G_R iff R is in the complement list",
                predicted=complement_ramanujan_two_fields(spec),
                observed=ram_bar.ramanujan and not iso.value,
            ))
    elif spec.s == 3 and spec.all_fields:
        checks.append(TheoremCheck(
            tag="three-field-complement-equienergy",
            statement="R = F_q1 x F_q2 x F_q3: E(G_R) = E(Gbar_R) iff (q1,q2,q3) is (3,4,7), (3,5,5) or (4,4,4)",
            predicted=three_field_complement_equienergy(spec),
            observed=eq.value,
        ))
    return checks


def pair_report(spec: RingSpec, pair: PairKind) -> ClassificationReport:
    """
    Compare G_R with G_R+ or with its complement.

    Args:
        spec: Ring spec
        pair: Which pair to compare

    Returns:
        ClassificationReport: verdict "equienergetic-non-isospectral", plus the
        Ramanujan verdicts of both graphs

    Raises:
        TheoremMismatch: If a statement whose hypotheses hold disagrees with the spectra
    """
    role = pair.partner
    gr = unitary_spectrum(spec)
    other = role_spectrum(spec, role)
    label = spec.label

    eq = is_equienergetic(gr, other, name=f"equienergetic:GR,{role.value}")
    iso = is_isospectral(gr, other, name=f"isospectral:GR,{role.value}")
    ram_gr, ram_other = is_ramanujan(gr), is_ramanujan(other)
    verdict = Predicate(
        name="equienergetic-non-isospectral",
        value=eq.value and not iso.value,
        witness={"equienergetic": eq.witness, "isospectral": iso.witness},
    )
    predicates = [
        eq,
        iso,
        _ramanujan_predicate(Role.GR.value, ram_gr),
        _ramanujan_predicate(role.value, ram_other),
        Predicate(
            name="ramanujan-pair",
            value=verdict.value and ram_gr.ramanujan and ram_other.ramanujan,
            witness={"second_eigenvalues": [ram_gr.second_eigenvalue, ram_other.second_eigenvalue]},
        ),
        _odd_type_predicate(spec),
    ]

    if pair is PairKind.SUM:
        checks = _sum_checks(spec, gr, other, eq, iso, ram_gr, ram_other)
    else:
        checks = _complement_checks(spec, gr, other, eq, iso, ram_gr, ram_other)
    _enforce(label, checks)

    logger.debug(f"pair_report {label} {pair.value}: {verdict.value}")
    return ClassificationReport(
        kind=f"pair:{pair.value}",
        subject=label,
        graphs=[summarize(f"G[{label}]", Role.GR.value, gr), summarize(f"{role.value}[{label}]", role.value, other)],
        predicates=predicates,
        verdict=verdict,
        theorem_tags=[check.tag for check in checks],
        checks=checks,
        flags=_flags(spec, checks, predicates),
    )


# Triple reports
def triple_energy_divisible(spec: RingSpec, energy_value: int) -> bool:
    """8 | E(G_R) when |R| is even, 16 | E(G_R) when |R| is odd."""
    return energy_value % (8 if spec.order % 2 == 0 else 16) == 0


def triple_report(spec: RingSpec) -> ClassificationReport:
    """
    Decide whether {G_R, G_R+, Gbar_R} is an equienergetic non-isospectral Ramanujan triple.

    Besides the verdict, the report carries "equienergetic-triple",
    "table-criterion" (equienergetic and all three Ramanujan, isospectral
    pairs allowed) and "isospectral-pair" (the star of the triple table).

    Raises:
        TheoremMismatch: If a statement whose hypotheses hold disagrees with the spectra
    """
    label = spec.label
    spectra = {role: role_spectrum(spec, role) for role in (Role.GR, Role.GRPLUS, Role.GRBAR)}
    pairs = [(Role.GR, Role.GRPLUS), (Role.GR, Role.GRBAR), (Role.GRPLUS, Role.GRBAR)]

    predicates: List[Predicate] = []
    equienergetic, isospectral = [], []
    for left, right in pairs:
        names = f"{left.value},{right.value}"
        eq = is_equienergetic(spectra[left], spectra[right], name=f"equienergetic:{names}")
        iso = is_isospectral(spectra[left], spectra[right], name=f"isospectral:{names}")
        predicates.extend([eq, iso])
        equienergetic.append(eq.value)
        isospectral.append(iso.value)
    verdicts = {role: is_ramanujan(spectrum) for role, spectrum in spectra.items()}
    predicates.extend(_ramanujan_predicate(role.value, verdict) for role, verdict in verdicts.items())

    all_equal = all(equienergetic)
    any_iso = any(isospectral)
    all_ramanujan = all(verdict.ramanujan for verdict in verdicts.values())
    energy_gr = energy(spectra[Role.GR])
    common: Dict[str, Any] = {
        "energy": energy_gr,
        "kappa": spectra[Role.GR].degree,
        "kappabar": spectra[Role.GRBAR].degree,
        "n": spec.order,
    }
    triple = Predicate(name="equienergetic-triple", value=all_equal and not any_iso, witness=common)
    table = Predicate(name="table-criterion", value=all_equal and all_ramanujan, witness=common)
    star = Predicate(name="isospectral-pair", value=any_iso, witness={"isospectral": isospectral})
    verdict = Predicate(name="ramanujan-triple", value=triple.value and all_ramanujan, witness=common)
    predicates.extend([triple, table, star, _odd_type_predicate(spec)])

    checks: List[TheoremCheck] = []
    if spec.is_local:
        checks.append(TheoremCheck(
            tag="local-ramanujan-triples",
            statement="R local: the Ramanujan triple exists iff r = m^2 is odd",
            predicted=local_ramanujan_triple(spec),
            observed=verdict.value,
        ))
    else:
        checks.append(TheoremCheck(
            tag="nonlocal-ramanujan-triples",
            statement="R non-local: the Ramanujan triple exists iff R is in the two-field triple list",
            predicted=nonlocal_ramanujan_triple(spec),
            observed=verdict.value,
        ))
        if verdict.value:
            checks.append(TheoremCheck(
                tag="ramanujan-triple-energy-divisibility",
                statement="8 | E(G_R) if |R| is even and 16 | E(G_R) if |R| is odd",
                predicted=True,
                observed=triple_energy_divisible(spec, energy_gr),
            ))
    cyclic = is_cyclic_odd(spec)
    if cyclic is not None:
        checks.append(TheoremCheck(
            tag="cyclic-ramanujan-triples",
            statement="Z_n, n odd: the Ramanujan triple exists iff n = p^2 with p an odd prime or n in {15, 21, 35}",
            predicted=cyclic_ramanujan_triple(cyclic),
            observed=verdict.value,
        ))
    if equienergetic_triple(spec):
        checks.append(TheoremCheck(
            tag="equienergetic-triples",
            statement="R in the triple families: {G_R, G_R+, Gbar_R} equienergetic and non-isospectral",
            predicted=True,
            observed=triple.value,
        ))
    _enforce(label, checks)

    logger.debug(f"triple_report {label}: triple={triple.value} ramanujan={verdict.value} star={any_iso}")
    return ClassificationReport(
        kind="triple",
        subject=label,
        graphs=[summarize(f"{role.value}[{label}]", role.value, spectrum) for role, spectrum in spectra.items()],
        predicates=predicates,
        verdict=verdict,
        theorem_tags=[check.tag for check in checks],
        checks=checks,
        flags=_flags(spec, checks, predicates),
    )


# Complete multipartite and crown families
def _require_prime_power(m: int, minimum: int) -> None:
    if m < minimum or prime_power(m) is None:
        logger.error(f"Family instance needs a prime power m >= {minimum}, got {m}")
        raise RingSpecError(f"m must be a prime power >= {minimum}, got {m}")


def _family_report(kind: str, subject: str, spec: RingSpec, left: GraphSummary, right: GraphSummary,
                   left_spectrum: Spectrum, right_spectrum: Spectrum, checks: List[TheoremCheck],
                   extra: List[Predicate]) -> ClassificationReport:
    eq = is_equienergetic(left_spectrum, right_spectrum, name=f"equienergetic:{left.label},{right.label}")
    iso = is_isospectral(left_spectrum, right_spectrum, name=f"isospectral:{left.label},{right.label}")
    verdict = Predicate(
        name="equienergetic-non-isospectral",
        value=eq.value and not iso.value,
        witness={"equienergetic": eq.witness, "isospectral": iso.witness},
    )
    _enforce(subject, checks)
    predicates = [eq, iso, *extra]
    return ClassificationReport(
        kind=kind,
        subject=subject,
        graphs=[left, right],
        predicates=predicates,
        verdict=verdict,
        theorem_tags=[check.tag for check in checks],
        checks=checks,
        flags=_flags(spec, checks, predicates),
    )


def multipartite_complement_report(m: int) -> ClassificationReport:
    """
    K_{m x m} (= G_R for local R with r = m^2) against its complement mK_m.

    Raises:
        RingSpecError: If m is not a prime power >= 2
    """
    _require_prime_power(m, 2)
    # Z_{p^2} for prime m, F_m[x]/(x^2) otherwise
    spec = parse_ring_spec(f"Z{m * m}" if prime_power(m)[1] == 1 else f"F{m}[x]/(x^2)")
    multipartite = complete_multipartite_spectrum(m, m)
    copies = disjoint_copies(complete_graph_spectrum(m), m)
    left = summarize(f"K_{{{m}x{m}}}", Role.GR.value, multipartite)
    right = summarize(f"{m}K_{m}", Role.GRBAR.value, copies)
    checks = [
        TheoremCheck(
            tag="multipartite-complement-pairs",
            statement="{K_{m x m}, mK_m} are equienergetic, non-isospectral, and exactly one is connected",
            predicted=[True, False, 1],
            observed=[
                energy(multipartite) == energy(copies),
                multipartite == copies,
                int(left.connected) + int(right.connected),
            ],
        ),
        TheoremCheck(
            tag="multipartite-ring-realization",
            statement="G_R = K_{m x m} for a local ring with r = m^2",
            predicted=multipartite.to_text(),
            observed=unitary_spectrum(spec).to_text(),
        ),
    ]
    return _family_report("multipartite", f"K_{{{m}x{m}}}", spec, left, right, multipartite, copies, checks, [])


def crown_complement_report(m: int) -> ClassificationReport:
    """
    Crown graph H_{m,m} = G_{F2 x Fm} against its complement, the prism K_m x K_2.

    The report also carries the comparison with mK_2, which is not
    equienergetic with H_{m,m} for m >= 3 (E = 2m against 4(m-1)).

    Raises:
        RingSpecError: If m is not a prime power >= 3
    """
    _require_prime_power(m, 3)
    spec = ring_from_shapes([field_shape(2), field_shape(m)])
    crown = unitary_spectrum(spec)
    prism = role_spectrum(spec, Role.GRBAR)
    matching = disjoint_copies(complete_graph_spectrum(2), m)
    left = summarize(f"H_{{{m},{m}}}", Role.GR.value, crown)
    right = summarize(f"K_{m}xK_2", Role.GRBAR.value, prism)
    matching_eq = is_equienergetic(crown, matching, name=f"equienergetic:H_{{{m},{m}}},{m}K_2")
    checks = [
        TheoremCheck(
            tag="crown-complement-pairs",
            statement="{H_{m,m}, complement} are equienergetic, non-isospectral and both connected",
            predicted=[True, False, 2],
            observed=[
                energy(crown) == energy(prism),
                crown == prism,
                int(left.connected) + int(right.connected),
            ],
        ),
        TheoremCheck(
            tag="crown-matching-energy",
            statement="E(H_{m,m}) = 4(m-1) and E(mK_2) = 2m",
            predicted=[4 * (m - 1), 2 * m],
            observed=[energy(crown), energy(matching)],
        ),
    ]
    return _family_report("crown", f"H_{{{m},{m}}}", spec, left, right, crown, prism, checks, [matching_eq])


def ring_pair_report(a: RingSpec, b: RingSpec, role: Role = Role.GR) -> ClassificationReport:
    """
    Compare the same graph over two rings, e.g. G_F9 against G_{F3 x F3}.

    Rings of different order are compared too; the report then carries the
    "different-order" flag.
    """
    left, right = role_spectrum(a, role), role_spectrum(b, role)
    eq = is_equienergetic(left, right, name=f"equienergetic:{a.label},{b.label}")
    iso = is_isospectral(left, right, name=f"isospectral:{a.label},{b.label}")
    ram_left, ram_right = is_ramanujan(left), is_ramanujan(right)
    predicates = [eq, iso, _ramanujan_predicate(a.label, ram_left), _ramanujan_predicate(b.label, ram_right)]
    flags = []
    if not (a.is_constructible and b.is_constructible):
        flags.append("no-oracle-witness")
    if a.order != b.order:
        flags.append("different-order")
    return ClassificationReport(
        kind="cross-ring",
        subject=f"{a.label}|{b.label}",
        graphs=[
            summarize(f"{role.value}[{a.label}]", role.value, left),
            summarize(f"{role.value}[{b.label}]", role.value, right),
        ],
        predicates=predicates,
        verdict=Predicate(
            name="equienergetic-non-isospectral",
            value=eq.value and not iso.value,
            witness={"equienergetic": eq.witness, "isospectral": iso.witness},
        ),
        flags=flags,
    )

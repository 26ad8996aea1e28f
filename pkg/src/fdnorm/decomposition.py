"""Constructive normalization of a single table with one two-attribute key.

The 2NF template splits off the closure of each key attribute and keeps the
key itself, together with everything depending on the whole key, in a third
table. Whether two closures overlap decides between case A and case B; the
tables are the same in both. :func:`plan_precise_2nf` runs the template and
either returns it or explains why no decomposition reached by the 2NF rule
alone can be legitimate.
"""

from __future__ import annotations

import dataclasses

from .closure import attribute_closure, candidate_keys, minimal_cover
from .diagnosis import ChainPair, theorem1_verdict
from .errors import AssumptionViolated, CyclicCover, VariantInapplicable
from .model import FD, Decomposition, Provenance, Schema, make_decomposition, ordered, render_attrs, sorted_fds
from .normal_forms import NormalForm, NormalFormLabel, classify_database
from .verification import (
    JoinReport,
    binary_lossless,
    chase_lossless,
    find_spurious_instance,
    preservation_check,
)


@dataclasses.dataclass(frozen=True)
class CaseAnalysis:
    key: frozenset[str]
    a1: str
    a2: str
    alpha1: frozenset[str]
    alpha2: frozenset[str]
    raw_case: str  # "1", "2", "3b" or "4b"; the a-variants are never produced
    merged_case: str  # "A" or "B"
    overlap: frozenset[str]
    residual: frozenset[str]

    @property
    def alpha1_minus(self) -> frozenset[str]:
        return self.alpha1 - {self.a1}

    @property
    def alpha2_minus(self) -> frozenset[str]:
        return self.alpha2 - {self.a2}


def analyze_case(schema: Schema) -> CaseAnalysis:
    keys = candidate_keys(schema.universe, schema.fds)
    if len(keys) != 1:
        raise AssumptionViolated("multiple candidate keys", ", ".join(render_attrs(k) for k in keys))
    (key,) = keys
    if len(key) != 2:
        raise AssumptionViolated("key size is not 2", render_attrs(key))
    a1, a2 = ordered(key)
    alpha1 = attribute_closure({a1}, schema.fds)
    alpha2 = attribute_closure({a2}, schema.fds)
    for a, alpha in ((a1, alpha1), (a2, alpha2)):
        if alpha == schema.universe:
            raise AssumptionViolated("key attribute determines everything", a)

    overlap = alpha1 & alpha2
    residual = schema.universe - (alpha1 | alpha2)
    if not overlap:
        raw = "1" if not residual else "2"
    else:
        raw = "3b" if not residual else "4b"
    return CaseAnalysis(key, a1, a2, alpha1, alpha2, raw, "B" if overlap else "A", overlap, residual)


def decompose_2nf(schema: Schema, case: CaseAnalysis | None = None) -> Decomposition:
    """R1 = closure of A1, R2 = closure of A2, R3 = key plus the residual.

    R3 is kept even when the residual is empty; without it the join of R1 and
    R2 is a cross product.
    """
    case = case or analyze_case(schema)
    return make_decomposition(
        schema,
        {"R1": case.alpha1, "R2": case.alpha2, "R3": case.key | case.residual},
        [Provenance.PARTIAL_SPLIT, Provenance.PARTIAL_SPLIT, Provenance.RESIDUAL_KEY],
    )


# -- illegitimate variants --------------------------------------------------

VARIANTS = ("1-without-R3", "3a", "4a")


@dataclasses.dataclass(frozen=True)
class RejectionReport:
    variant: str
    decomposition: Decomposition
    lossless: bool
    binary_lossless: bool | None
    lost: tuple[FD, ...]
    spurious_seed: int | None = None
    spurious: JoinReport | None = None

    @property
    def legitimate(self) -> bool:
        return self.lossless and not self.lost


def reject_illegitimate(schema: Schema, variant: str, *, seeds=range(20)) -> RejectionReport:
    """Build one of the discarded template variants and report what breaks.

    ``1-without-R3`` drops the key table in case 1; ``3a``/``4a`` keep the
    shared attributes only on the A1 side.
    """
    case = analyze_case(schema)
    if variant == "1-without-R3":
        if case.raw_case != "1":
            raise VariantInapplicable(f"{variant} needs case 1, schema is case {case.raw_case}")
        tables = {"R1": case.alpha1, "R2": case.alpha2}
        prov = [Provenance.PARTIAL_SPLIT] * 2
    elif variant in ("3a", "4a"):
        wanted = "3b" if variant == "3a" else "4b"
        if case.raw_case != wanted:
            raise VariantInapplicable(f"{variant} needs overlapping closures in case {wanted[0]}, schema is case {case.raw_case}")
        tables = {"R1": case.alpha1, "R2": {case.a2} | (case.alpha2_minus - case.alpha1)}
        prov = [Provenance.PARTIAL_SPLIT] * 2
        if variant == "4a":
            tables["R3"] = case.key | case.residual
            prov.append(Provenance.RESIDUAL_KEY)
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")

    d = make_decomposition(schema, tables, prov)
    lossless = chase_lossless(d, schema)
    binary = binary_lossless(d.relations[0], d.relations[1], schema.fds) if len(d) == 2 else None
    report = RejectionReport(variant, d, lossless, binary, preservation_check(d, schema).lost)
    if not lossless:
        try:
            found = find_spurious_instance(schema, d, n_keys=3, seeds=seeds)
        except CyclicCover:
            found = None
        if found:
            seed, _, join = found
            report = dataclasses.replace(report, spurious_seed=seed, spurious=join)
    return report


# -- 3NF synthesis ----------------------------------------------------------


def synthesize_3nf(schema: Schema) -> Decomposition:
    """Textbook synthesis: one table per determinant of the minimal cover,
    plus a key table when no table holds a candidate key."""
    groups: dict[frozenset[str], set[str]] = {}
    for f in sorted_fds(minimal_cover(schema.fds)):
        groups.setdefault(f.lhs, set(f.lhs)).update(f.rhs)
    tables = [frozenset(t) for t in groups.values()]
    tables = [t for i, t in enumerate(tables) if not any(t <= u and (t != u or j < i) for j, u in enumerate(tables) if j != i)]
    keys = candidate_keys(schema.universe, schema.fds)
    if not any(k <= t for k in keys for t in tables):
        tables.append(keys[0])
    return make_decomposition(schema, tables, [Provenance.SYNTHESIS] * len(tables))


# -- provenance audit -------------------------------------------------------


def infer_provenance(d: Decomposition, schema: Schema) -> tuple[Provenance, ...]:
    """Name the rule that could have produced each table from the source table.

    A table keyed by the whole key is the residual key table; a table equal to
    the closure of a proper part of the key is a partial-dependency split; a
    table inside the key is a key fragment. Anything else was split off along
    a non-key determinant, which is a transitivity step.
    """
    keys = candidate_keys(schema.universe, schema.fds)
    if len(keys) != 1:
        raise AssumptionViolated("multiple candidate keys", ", ".join(render_attrs(k) for k in keys))
    (key,) = keys
    tags = []
    for rel in d.relations:
        if key in rel.candidate_keys:
            tags.append(Provenance.RESIDUAL_KEY)
        elif rel.attrs <= key:
            tags.append(Provenance.KEY_FRAGMENT)
        elif any(k < key and rel.attrs == attribute_closure(k, schema.fds) for k in rel.candidate_keys):
            tags.append(Provenance.PARTIAL_SPLIT)
        else:
            tags.append(Provenance.TRANSITIVITY_SPLIT)
    return tuple(tags)


@dataclasses.dataclass(frozen=True)
class PrecisionReport:
    precise: bool
    label: NormalFormLabel
    provenance: tuple[Provenance, ...]
    reasons: tuple[str, ...]


def is_precisely_2nf(d: Decomposition, schema: Schema) -> PrecisionReport:
    label = classify_database(d, schema)
    tags = infer_provenance(d, schema)
    reasons = []
    if not label.lossless:
        reasons.append("decomposition is lossy")
    for f in label.lost:
        reasons.append(f"{f} is lost")
    for rel, level in label.table_levels.items():
        if level < NormalForm.NF2:
            reasons.append(f"{rel} is not in 2NF")
    for rel, tag in zip(d.relations, tags):
        if tag is Provenance.TRANSITIVITY_SPLIT:
            reasons.append(f"{rel} results from a transitivity-based split")
    return PrecisionReport(not reasons, label, tags, tuple(reasons))


# -- planner ----------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PlacementAttempt:
    name: str
    decomposition: Decomposition
    lossless: bool
    lost: tuple[FD, ...]
    transitivity_split: bool
    reason: str


@dataclasses.dataclass(frozen=True)
class PlanOutcome:
    decomposition: Decomposition | None
    impossibility_witness: ChainPair | None
    narrative: tuple[str, ...]
    case: CaseAnalysis
    placements: tuple[PlacementAttempt, ...] = ()
    label: NormalFormLabel | None = None

    @property
    def impossible(self) -> bool:
        return self.decomposition is None


def _placements(schema: Schema, template: Decomposition, meeting: FD) -> list[PlacementAttempt]:
    """Try the dependent of ``meeting`` with the key, then with its own determinant."""
    out = []
    for name, tables, prov in _placement_tables(template, meeting):
        d = make_decomposition(schema, tables, prov)
        lost = preservation_check(d, schema).lost
        lossless = chase_lossless(d, schema)
        trans = Provenance.TRANSITIVITY_SPLIT in infer_provenance(d, schema)
        if lost:
            reason = "loses " + ", ".join(str(f) for f in lost)
        elif trans:
            reason = f"table {render_attrs(meeting.lhs | meeting.rhs)} is a transitivity-based split (a 3NF step)"
        elif not lossless:
            reason = "lossy"
        else:
            reason = "legitimate"
        out.append(PlacementAttempt(name, d, lossless, lost, trans, reason))
    return out


def _placement_tables(template: Decomposition, meeting: FD):
    names = [r.name for r in template.relations]
    yield "key-table", {r.name: r.attrs for r in template.relations}, list(template.provenance)
    tables = {r.name: r.attrs - meeting.rhs for r in template.relations}
    tables = {n: a for n, a in tables.items() if a}
    n = len(names) + 1
    while f"R{n}" in tables:
        n += 1
    tables[f"R{n}"] = meeting.lhs | meeting.rhs
    prov = [p for r, p in zip(template.relations, template.provenance) if r.name in tables]
    prov.append(Provenance.TRANSITIVITY_SPLIT)
    yield "meeting-table", tables, prov


def plan_precise_2nf(schema: Schema) -> PlanOutcome:
    case = analyze_case(schema)
    narrative = [
        f"key {render_attrs(case.key)}; {case.a1}+ = {render_attrs(case.alpha1)}, "
        f"{case.a2}+ = {render_attrs(case.alpha2)}; case {case.raw_case} (merged {case.merged_case})"
    ]
    d = decompose_2nf(schema, case)
    for rel, tag in zip(d.relations, d.provenance):
        narrative.append(f"{rel.name} = {render_attrs(rel.attrs)} [{tag}]")

    audit = is_precisely_2nf(d, schema)
    if audit.precise:
        if audit.label.level == NormalForm.NF3:
            narrative.append("no transitive dependency remains: the 2NF result is also 3NF, and still precisely 2NF")
        else:
            narrative.append("every table is in 2NF, lossless and preserving, with no transitivity-based split")
        return PlanOutcome(d, None, tuple(narrative), case, (), audit.label)

    narrative.extend(audit.reasons)
    verdict = theorem1_verdict(schema)
    meetings: list[FD]
    if verdict.witness is not None:
        narrative.append(f"overlapping chains: {verdict.witness}")
        narrative.extend(verdict.branches)
        meetings = [verdict.witness.meeting]
    else:
        narrative.append("no overlapping chain pair found; the lost dependencies alone block a 2NF-only result")
        meetings = list(audit.label.lost)
    placements = []
    for m in meetings:
        for p in _placements(schema, d, m):
            placements.append(p)
            narrative.append(f"{p.name} placement of {render_attrs(m.rhs)}: {p.reason}")
    return PlanOutcome(None, verdict.witness, tuple(narrative), case, tuple(placements), audit.label)

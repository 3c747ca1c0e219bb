"""Graded simplicial monoids, their delooping, and the main verification.

Two monoid worlds live here.  The abstract one: a finite grade monoid
with only-unit invertibility, one Kan component per grade (group nerves
in the reference models), and a strictly associative graded product;
``deloop`` turns it into a one-object enriched category whose coherent
nerve, coslice, and core feed :func:`verify_proposition`.  The concrete
one: exact-rational subspaces with the block direct sum ``boxplus``,
which is strictly associative, against pairing-based sums, which never
are; :func:`find_nonassociativity_witness` exhibits the failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .ordinals import MonotoneMap, degeneracy, face
from .quasicat import (
    _triangle_index,
    core,
    is_invertible_edge,
    is_kan_up_to,
    pi0,
    pi1,
    tables_isomorphic,
)
from .scat import (
    SCat,
    functor_to_classification,
    simplicial_nerve,
)
from .join import coslice_fastpath
from .sset import (
    BilevelMap,
    FinSSet,
    SimplexRef,
    ValidationReport,
    iso_search,
    nondeg_ref,
    validate,
    validate_bilevel,
)


# -- grade monoids ----------------------------------------------------


@dataclass(frozen=True)
class GradeMonoid:
    """A finite monoid of grades given by its full multiplication table.

    ``table[a, b]`` is a composed after b.  The intended invariant, on
    top of the monoid laws: left translation by any non-unit fails to be
    a bijection, so no non-unit is invertible."""

    elements: tuple[str, ...]
    unit: str
    table: dict = field(hash=False)

    def product(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def validate(self) -> ValidationReport:
        report = ValidationReport("GradeMonoid")
        es = self.elements
        if self.unit not in es:
            report.problems.append(f"unit {self.unit!r} not an element")
            return report
        for a in es:
            for b in es:
                if self.table.get((a, b)) not in es:
                    report.problems.append(f"product of ({a!r}, {b!r}) missing")
        if report.problems:
            return report
        for a in es:
            if self.product(a, self.unit) != a or self.product(self.unit, a) != a:
                report.problems.append(f"unit law fails at {a!r}")
        for a, b, c in itertools.product(es, repeat=3):
            if self.product(self.product(a, b), c) != (
                self.product(a, self.product(b, c))
            ):
                report.problems.append(f"associativity fails at ({a!r}, {b!r}, {c!r})")
        for m in es:
            if m == self.unit:
                continue
            row = tuple(self.product(m, x) for x in es)
            if sorted(row) == sorted(es):
                report.problems.append(
                    f"left translation by {m!r} is a bijection: "
                    f"{dict(zip(es, row))}"
                )
        return report


def saturating_grades(top: int) -> GradeMonoid:
    """Addition on {0, 1, ..., top+} where the last grade absorbs."""
    if top < 1:
        raise ValueError("need at least one positive grade")
    names = tuple(str(i) for i in range(top)) + (f"{top}+",)

    def value(n: str) -> int:
        return top if n.endswith("+") else int(n)

    def name(v: int) -> str:
        return f"{top}+" if v >= top else str(v)

    table = {
        (a, b): name(value(a) + value(b)) for a in names for b in names
    }
    return GradeMonoid(names, "0", table)


# -- finite groups and their nerves -----------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple[str, ...]
    unit: str
    mult: dict = field(hash=False)


def cyclic_group(n: int) -> FiniteGroup:
    name = "trivial" if n == 1 else f"Z/{n}"
    elements = tuple(str(i) for i in range(n))
    mult = {
        (a, b): str((int(a) + int(b)) % n) for a in elements for b in elements
    }
    return FiniteGroup(name, elements, "0", mult)


def group_from_name(name: str) -> FiniteGroup:
    if name == "trivial":
        return cyclic_group(1)
    if name.startswith("Z/"):
        return cyclic_group(int(name[2:]))
    raise ValueError(f"unknown group {name!r}")


_VERTEX = "v"


def _bar_id(entries: tuple[str, ...]) -> str:
    return _VERTEX if not entries else ".".join(entries)


def _bar_tuple(cell: str) -> tuple[str, ...]:
    return () if cell == _VERTEX else tuple(cell.split("."))


def bar_normal(group: FiniteGroup, entries: tuple[str, ...]) -> SimplexRef:
    """Strip unit legs, recording the collapse as the epi."""
    eta = [0]
    kept = []
    for e in entries:
        if e != group.unit:
            kept.append(e)
        eta.append(len(kept))
    epi = MonotoneMap(len(entries), len(kept), tuple(eta))
    return SimplexRef(epi, _bar_id(tuple(kept)))


def _bar_decode(group: FiniteGroup, ref: SimplexRef) -> tuple[str, ...]:
    t = _bar_tuple(ref.cell)
    eta = ref.epi.values
    out = []
    for i in range(1, ref.dim + 1):
        out.append(t[eta[i] - 1] if eta[i] > eta[i - 1] else group.unit)
    return tuple(out)


def group_nerve(group: FiniteGroup, truncation: int) -> FinSSet:
    """The classical one-vertex nerve: nondegenerate k-cells are words
    of non-unit elements; faces drop an end or multiply neighbours."""
    for e in group.elements:
        if "." in e or ":" in e or e == _VERTEX:
            raise ValueError(f"element name {e!r} clashes with cell ids")
    nonunit = [e for e in group.elements if e != group.unit]
    cells = {0: [_VERTEX]}
    faces = {}
    for k in range(1, truncation + 1):
        cells[k] = []
        for word in itertools.product(nonunit, repeat=k):
            cid = _bar_id(word)
            cells[k].append(cid)
            entry = [bar_normal(group, word[1:])]
            for i in range(1, k):
                merged = (
                    word[: i - 1]
                    + (group.mult[(word[i], word[i - 1])],)
                    + word[i + 1 :]
                )
                entry.append(bar_normal(group, merged))
            entry.append(bar_normal(group, word[:-1]))
            faces[cid] = entry
    return FinSSet(truncation, cells, faces)


def _canonical_hom(a: FiniteGroup, b: FiniteGroup) -> dict:
    """Identity between equal groups; otherwise collapse to the unit
    (which is the unit insertion when a is trivial)."""
    if a.name == b.name:
        return {e: e for e in a.elements}
    return {e: b.unit for e in a.elements}


# -- graded simplicial monoids ----------------------------------------


@dataclass
class GradedSimplicialMonoid:
    """One component per grade, a distinguished unit vertex, and a
    strictly associative product given by bilevel maps; ``product[g, h]``
    composes a later g-leg with an earlier h-leg into grade g.h."""

    grades: GradeMonoid
    components: dict
    unit_vertex: str
    product: dict
    truncation: int

    def component(self, grade: str) -> FinSSet:
        return self.components[grade]


def tag(grade: str, cell: str) -> str:
    return f"{grade}:{cell}"


def untag(cell: str) -> tuple[str, str]:
    grade, _, rest = cell.partition(":")
    return grade, rest


def total_space(m: GradedSimplicialMonoid) -> FinSSet:
    """The disjoint union of the components with grade-tagged cells."""
    cells: dict[int, list[str]] = {d: [] for d in range(m.truncation + 1)}
    faces = {}
    for g in m.grades.elements:
        comp = m.component(g)
        for d in range(m.truncation + 1):
            for c in comp.nondegenerate(d):
                cells[d].append(tag(g, c))
                if d >= 1:
                    faces[tag(g, c)] = [
                        SimplexRef(r.epi, tag(g, r.cell))
                        for r in comp.face_entries(c)
                    ]
    return FinSSet(m.truncation, cells, faces)


def validate_monoid(m: GradedSimplicialMonoid) -> ValidationReport:
    """Monoid laws on grades, component soundness, the point unit
    component, Kan components, bilevel naturality, and strict
    associativity and unitality of the product, all exhaustive."""
    report = ValidationReport("GradedSimplicialMonoid")
    report.problems.extend(m.grades.validate().problems)
    for g in m.grades.elements:
        comp = m.components.get(g)
        if comp is None:
            report.problems.append(f"grade {g!r} has no component")
            continue
        if comp.truncation != m.truncation:
            report.problems.append(f"component {g!r} has the wrong truncation")
        report.problems.extend(
            f"component {g!r}: {p}" for p in validate(comp).problems
        )
    if report.problems:
        return report
    unit_comp = m.component(m.grades.unit)
    if [unit_comp.cell_count(d) for d in range(m.truncation + 1)] != (
        [1] + [0] * m.truncation
    ):
        report.problems.append("unit component is not a single point")
    if not unit_comp.has_cell(m.unit_vertex):
        report.problems.append(f"unit vertex {m.unit_vertex!r} missing")
    for g in m.grades.elements:
        kan = is_kan_up_to(m.component(g), m.truncation)
        report.problems.extend(
            f"component {g!r} not Kan: {p}" for p in kan.problems
        )
    for g, h in itertools.product(m.grades.elements, repeat=2):
        bm = m.product.get((g, h))
        if bm is None:
            report.problems.append(f"product missing at ({g!r}, {h!r})")
            continue
        gh = m.grades.product(g, h)
        if bm.x is not m.component(g) or bm.y is not m.component(h) or (
            bm.target is not m.component(gh)
        ):
            report.problems.append(f"product at ({g!r}, {h!r}) has wrong ends")
            continue
        sub = validate_bilevel(bm, m.truncation)
        report.problems.extend(
            f"product at ({g!r}, {h!r}): {p}" for p in sub.problems
        )
    if report.problems:
        return report
    unit = m.grades.unit
    for g in m.grades.elements:
        comp = m.component(g)
        for level in range(m.truncation + 1):
            u = SimplexRef(
                MonotoneMap(level, 0, (0,) * (level + 1)), m.unit_vertex
            )
            for a in comp.simplices(level):
                if m.product[(g, unit)].apply(level, a, u) != a:
                    report.problems.append(
                        f"right unit fails at grade {g!r} level {level}"
                    )
                    break
                if m.product[(unit, g)].apply(level, u, a) != a:
                    report.problems.append(
                        f"left unit fails at grade {g!r} level {level}"
                    )
                    break
    for g, h, k in itertools.product(m.grades.elements, repeat=3):
        gh = m.grades.product(g, h)
        hk = m.grades.product(h, k)
        for level in range(m.truncation + 1):
            for a in m.component(g).simplices(level):
                for b in m.component(h).simplices(level):
                    ab = m.product[(g, h)].apply(level, a, b)
                    for c in m.component(k).simplices(level):
                        bc = m.product[(h, k)].apply(level, b, c)
                        if m.product[(gh, k)].apply(level, ab, c) != (
                            m.product[(g, hk)].apply(level, a, bc)
                        ):
                            report.problems.append(
                                f"associativity fails at grades "
                                f"({g!r}, {h!r}, {k!r}) level {level}"
                            )
                            return report
    return report


# -- monoid specs and the reference build -----------------------------


@dataclass
class MonoidSpec:
    grades: GradeMonoid
    components: dict
    truncation: int = 3


def default_monoid_spec() -> MonoidSpec:
    grades = saturating_grades(2)
    return MonoidSpec(grades, {"1": "Z/2", "2+": "Z/2"}, 3)


def monoid_spec_to_json(spec: MonoidSpec) -> dict:
    es = spec.grades.elements
    return {
        "grades": {
            "elements": list(es),
            "unit": spec.grades.unit,
            "table": [[spec.grades.product(a, b) for b in es] for a in es],
        },
        "components": {
            g: {"group": name} for g, name in sorted(spec.components.items())
        },
        "truncation": spec.truncation,
    }


def monoid_spec_from_json(blob: dict) -> MonoidSpec:
    g = blob["grades"]
    es = tuple(g["elements"])
    table = {
        (a, b): g["table"][i][j]
        for i, a in enumerate(es)
        for j, b in enumerate(es)
    }
    grades = GradeMonoid(es, g["unit"], table)
    components = {
        grade: entry["group"] for grade, entry in blob["components"].items()
    }
    return MonoidSpec(grades, components, blob.get("truncation", 3))


def build_reference_monoid(spec: MonoidSpec | None = None) -> GradedSimplicialMonoid:
    """Group-nerve components over the spec's grades, multiplied
    levelwise through canonical homs.  Raises on any invalid spec, with
    the violating structure named."""
    spec = default_monoid_spec() if spec is None else spec
    grade_report = spec.grades.validate()
    if not grade_report.ok:
        raise ValueError(
            "grade monoid rejected:\n" + "\n".join(grade_report.problems)
        )
    unit = spec.grades.unit
    if spec.components.get(unit, "trivial") != "trivial":
        raise ValueError("the unit grade component must be trivial")
    groups = {}
    for g in spec.grades.elements:
        if g == unit:
            groups[g] = cyclic_group(1)
        else:
            try:
                groups[g] = group_from_name(spec.components[g])
            except KeyError:
                raise ValueError(f"no component group named for grade {g!r}")
    components = {
        g: group_nerve(groups[g], spec.truncation)
        for g in spec.grades.elements
    }

    def make_fn(gg: FiniteGroup, gh: FiniteGroup, gt: FiniteGroup):
        ha = _canonical_hom(gg, gt)
        hb = _canonical_hom(gh, gt)

        def fn(level: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
            ta = _bar_decode(gg, a)
            tb = _bar_decode(gh, b)
            return bar_normal(
                gt, tuple(gt.mult[(ha[x], hb[y])] for x, y in zip(ta, tb))
            )

        return fn

    product = {}
    for g, h in itertools.product(spec.grades.elements, repeat=2):
        gh = spec.grades.product(g, h)
        product[(g, h)] = BilevelMap(
            components[g], components[h], components[gh],
            make_fn(groups[g], groups[h], groups[gh]),
        )
    m = GradedSimplicialMonoid(
        spec.grades, components, _VERTEX, product, spec.truncation
    )
    report = validate_monoid(m)
    if not report.ok:
        raise ValueError("monoid rejected:\n" + "\n".join(report.problems))
    return m


def deloop(m: GradedSimplicialMonoid) -> SCat:
    """The one-object enriched category with hom the total space and
    composition the graded product."""
    hom = total_space(m)

    def fn(level: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
        ga, ca = untag(a.cell)
        gb, cb = untag(b.cell)
        r = m.product[(ga, gb)].apply(
            level, SimplexRef(a.epi, ca), SimplexRef(b.epi, cb)
        )
        return SimplexRef(r.epi, tag(m.grades.product(ga, gb), r.cell))

    return SCat(
        ("*",),
        {("*", "*"): hom},
        {"*": tag(m.grades.unit, m.unit_vertex)},
        {("*", "*", "*"): BilevelMap(hom, hom, hom, fn)},
    )


# -- the main verification pipeline -----------------------------------


@dataclass
class CheckOutcome:
    name: str
    verdict: bool | None
    details: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "details": list(self.details),
        }


@dataclass
class PropositionReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.verdict for c in self.checks if c.verdict is not None)

    def check(self, name: str) -> CheckOutcome:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def summary_lines(self) -> list[str]:
        out = []
        for c in self.checks:
            verdict = "pass" if c.verdict else (
                "reported" if c.verdict is None else "FAIL"
            )
            head = f"({c.name}) {verdict}"
            if c.details:
                head += ": " + c.details[0]
            out.append(head)
        return out


def verify_proposition(m: GradedSimplicialMonoid, dims: int = 2) -> PropositionReport:
    """Runs nerve -> coslice at the object -> core, then compares the
    core with the monoid's total space: vertices, identity edges,
    invertibility against the unit grade, the orientation-reversing edge
    correspondence, path components with fundamental groups, and an
    informational isomorphism search."""
    if dims + 1 > m.truncation:
        raise ValueError(
            f"checking to dimension {dims} needs truncation {dims + 1}"
        )
    cat = deloop(m)
    nerve = simplicial_nerve(cat, dims + 1)
    (star,) = nerve.nondegenerate(0)
    cos = coslice_fastpath(nerve, star, dims)
    cr = core(cos)
    total = total_space(m)
    unit_tag = tag(m.grades.unit, m.unit_vertex)
    checks = []

    def edge_data(e: SimplexRef):
        return functor_to_classification(
            nerve.functor_of_ref(cos.underlying_ref(e))
        )

    # (a) vertices of the core against vertices of the monoid
    a_check = CheckOutcome("a", True)
    vertex_of = {}
    for c in cr.sset.nondegenerate(0):
        under = cos.underlying[c]
        vertex_of[c] = functor_to_classification(
            nerve.functor_of_ref(under)
        ).v01
    m_vertices = set(total.nondegenerate(0))
    if len(set(vertex_of.values())) != len(vertex_of) or (
        set(vertex_of.values()) != m_vertices
    ):
        a_check.verdict = False
        a_check.details.append(
            f"core vertices map to {sorted(vertex_of.values())}, "
            f"monoid has {sorted(m_vertices)}"
        )
    else:
        a_check.details.append(
            f"{len(vertex_of)} core vertices match {len(m_vertices)} "
            f"monoid vertices"
        )
    checks.append(a_check)

    # (b) identity edges decompose through the unit with a constant path
    b_check = CheckOutcome("b", True)
    for c in cos.nondegenerate(0):
        data = edge_data(SimplexRef(degeneracy(0, 0), c))
        if data.v12 != unit_tag or not data.gamma.is_degenerate:
            b_check.verdict = False
            b_check.details.append(
                f"identity edge at {c!r} decomposes with middle "
                f"{data.v12!r} and path {data.gamma.sort_key()}"
            )
    if b_check.verdict:
        b_check.details.append(
            f"all {len(cos.nondegenerate(0))} identity edges have unit "
            f"middle and constant path"
        )
    checks.append(b_check)

    # (c) invertibility is exactly unit middle grade, both directions
    c_check = CheckOutcome("c", True)
    idx = _triangle_index(cos)
    edges = cos.simplices(1)
    inv_flags = {}
    for e in edges:
        inv = is_invertible_edge(cos, e, idx)
        inv_flags[e] = inv
        middle_grade = untag(edge_data(e).v12)[0]
        if inv != (middle_grade == m.grades.unit):
            c_check.verdict = False
            c_check.details.append(
                f"edge {e.sort_key()} invertible={inv} but middle grade "
                f"{middle_grade!r}"
            )
    if c_check.verdict:
        n_inv = sum(1 for v in inv_flags.values() if v)
        c_check.details.append(
            f"{n_inv} of {len(edges)} coslice edges invertible, all with "
            f"unit middle grade"
        )
    checks.append(c_check)

    # (d) invertible edges correspond to monoid edges, orientation reversed
    d_check = CheckOutcome("d", True)
    gammas = []
    for e in edges:
        if not inv_flags[e]:
            continue
        data = edge_data(e)
        gammas.append(data.gamma)
        src = total.apply(data.gamma, face(1, 1)).cell
        tgt = total.apply(data.gamma, face(1, 0)).cell
        if src != data.v02 or tgt != data.v01:
            d_check.verdict = False
            d_check.details.append(
                f"path of {e.sort_key()} runs {src!r} -> {tgt!r}, "
                f"expected {data.v02!r} -> {data.v01!r}"
            )
    m_edges = total.simplices(1)
    if len(gammas) != len(set(gammas)) or set(gammas) != set(m_edges):
        d_check.verdict = False
        d_check.details.append(
            f"{len(gammas)} reversed paths against {len(m_edges)} "
            f"monoid edges"
        )
    if d_check.verdict:
        d_check.details.append(
            f"{len(gammas)} invertible edges match {len(m_edges)} monoid "
            f"edges with orientation reversed"
        )
    checks.append(d_check)

    # (e) path components and fundamental groups
    e_check = CheckOutcome("e", True)
    core_comps = pi0(cr.sset)
    m_comps = pi0(total)
    if len(core_comps) != len(m_comps):
        e_check.verdict = False
        e_check.details.append(
            f"pi0 sizes differ: {len(core_comps)} vs {len(m_comps)}"
        )
    comp_of = {}
    for comp in m_comps:
        for v in comp:
            comp_of[v] = comp
    for comp in core_comps:
        images = {comp_of.get(vertex_of.get(v)) for v in comp}
        if len(images) != 1 or None in images:
            e_check.verdict = False
            e_check.details.append(
                f"core component {comp} does not land in one monoid "
                f"component"
            )
    tables = {}
    for c in cr.sset.nondegenerate(0):
        r_core = pi1(cr.sset, c)
        r_m = pi1(total, vertex_of[c])
        if not (r_core.ok and r_m.ok):
            e_check.verdict = False
            e_check.details.append(
                f"fundamental group at {c!r} ill-defined: "
                f"{r_core.problems + r_m.problems}"
            )
            continue
        tables[c] = r_core.table
        if not tables_isomorphic(r_core.table, r_m.table):
            e_check.verdict = False
            e_check.details.append(
                f"fundamental groups at {c!r} differ: orders "
                f"{r_core.order} vs {r_m.order}"
            )
    if e_check.verdict:
        orders = {c: max(i for i, _ in t) + 1 for c, t in tables.items()}
        e_check.details.append(
            f"pi0 size {len(core_comps)}; pi1 orders "
            f"{sorted(orders.values())}"
        )
        redundant = [
            (c1, c2)
            for c1, c2 in itertools.combinations(sorted(tables), 2)
            if tables_isomorphic(tables[c1], tables[c2])
        ]
        if redundant:
            e_check.details.append(
                "distinct vertices with abstractly isomorphic groups: "
                + ", ".join(f"{a!r}~{b!r}" for a, b in redundant)
            )
    checks.append(e_check)

    # (f) informational: cell-level isomorphism search
    f_check = CheckOutcome("f", None)
    found = iso_search(cr.sset, total, dims)
    f_check.details.append(
        f"isomorphism core vs monoid up to dimension {dims}: "
        + ("found" if found is not None else "none")
    )
    checks.append(f_check)
    return PropositionReport(checks)


# -- exact rational subspaces -----------------------------------------


def _rref(rows) -> tuple:
    """Reduced row echelon over exact rationals, zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    width = len(mat[0])
    lead = 0
    out = []
    for col in range(width):
        pivot = None
        for i in range(lead, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[lead], mat[pivot] = mat[pivot], mat[lead]
        inv = Fraction(1) / mat[lead][col]
        mat[lead] = [x * inv for x in mat[lead]]
        for i in range(len(mat)):
            if i != lead and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [
                    a - factor * b for a, b in zip(mat[i], mat[lead])
                ]
        lead += 1
        if lead == len(mat):
            break
    for row in mat[:lead]:
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class RationalSubspace:
    """A subspace of (Q^base_dim)^copies in canonical echelon form, so
    equality of representations is equality of subspaces."""

    copies: int
    base_dim: int
    rows: tuple

    def __post_init__(self):
        width = self.copies * self.base_dim
        for r in self.rows:
            if len(r) != width:
                raise ValueError(f"row width {len(r)} != ambient {width}")
        if _rref(self.rows) != self.rows:
            raise ValueError("rows are not canonical; build with span()")

    @property
    def ambient_dim(self) -> int:
        return self.copies * self.base_dim

    @property
    def rank(self) -> int:
        return len(self.rows)


def span(copies: int, base_dim: int, vectors) -> RationalSubspace:
    width = copies * base_dim
    rows = [
        tuple(Fraction(x) for x in v) for v in vectors
    ]
    for r in rows:
        if len(r) != width:
            raise ValueError(f"vector width {len(r)} != ambient {width}")
    return RationalSubspace(copies, base_dim, _rref(rows))


def zero_subspace(base_dim: int) -> RationalSubspace:
    """Zero copies of the base: the strict unit for boxplus."""
    return RationalSubspace(0, base_dim, ())


def axis_subspace(copies: int, base_dim: int, index: int) -> RationalSubspace:
    width = copies * base_dim
    if not 0 <= index < width:
        raise ValueError(f"axis {index} outside ambient {width}")
    row = tuple(
        Fraction(1 if i == index else 0) for i in range(width)
    )
    return RationalSubspace(copies, base_dim, (row,))


def boxplus(v: RationalSubspace, w: RationalSubspace) -> RationalSubspace:
    """Block direct sum: v in the first copies, w in the last.  Strictly
    associative because blocks concatenate."""
    if v.base_dim != w.base_dim:
        raise ValueError(
            f"base dimensions differ: {v.base_dim} != {w.base_dim}"
        )
    left_pad = (Fraction(0),) * v.ambient_dim
    right_pad = (Fraction(0),) * w.ambient_dim
    rows = tuple(r + right_pad for r in v.rows) + tuple(
        left_pad + r for r in w.rows
    )
    return RationalSubspace(v.copies + w.copies, v.base_dim, rows)


def random_subspace(rng, copies: int, base_dim: int, max_rank: int) -> RationalSubspace:
    k = rng.randint(0, max_rank)
    vectors = [
        [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for _ in range(copies * base_dim)
        ]
        for _ in range(k)
    ]
    return span(copies, base_dim, vectors)


# -- pairing-based sums and their non-associativity -------------------


def cantor_pairing(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def szudzik_pairing(a: int, b: int) -> int:
    return a * a + a + b if a >= b else b * b + a


class WindowOverflowError(ValueError):
    def __init__(self, needed: int, window: int):
        self.needed = needed
        self.window = window
        super().__init__(
            f"pairing image needs coordinate {needed - 1} but the window "
            f"has {window}; rebuild the subspaces in an ambient window of "
            f"at least {needed} coordinates"
        )


def pairing_sum(v: RationalSubspace, w: RationalSubspace,
                pairing=cantor_pairing) -> RationalSubspace:
    """Sum through a chosen injection: coordinates of v run through
    pairing(i, 0), coordinates of w through pairing(j, 1), inside one
    shared window.  Raises when an occupied coordinate routes outside."""
    if (v.copies, v.base_dim) != (w.copies, w.base_dim):
        raise ValueError("pairing sum needs a shared ambient window")
    window = v.ambient_dim

    def route(rows, side):
        out = []
        for r in rows:
            new = [Fraction(0)] * window
            for j, x in enumerate(r):
                if x == 0:
                    continue
                image = pairing(j, side)
                if image >= window:
                    raise WindowOverflowError(image + 1, window)
                new[image] = x
            out.append(new)
        return out

    routed = route(v.rows, 0) + route(w.rows, 1)
    return span(v.copies, v.base_dim, routed)


@dataclass
class NonassociativityWitness:
    v: RationalSubspace
    w: RationalSubspace
    u: RationalSubspace
    left: RationalSubspace
    right: RationalSubspace

    def to_json(self) -> dict:
        def rows(s):
            return [[str(x) for x in r] for r in s.rows]

        return {
            "v": rows(self.v),
            "w": rows(self.w),
            "u": rows(self.u),
            "left_association": rows(self.left),
            "right_association": rows(self.right),
        }


def find_nonassociativity_witness(pairing=cantor_pairing, window: int = 16,
                                  max_axis: int = 3):
    """Searches axis lines for (v+w)+u != v+(w+u); triples that overflow
    the window are skipped.  Returns None only if nothing in range
    witnesses the failure."""
    for a, b, c in itertools.product(range(max_axis), repeat=3):
        v = axis_subspace(1, window, a)
        w = axis_subspace(1, window, b)
        u = axis_subspace(1, window, c)
        try:
            left = pairing_sum(pairing_sum(v, w, pairing), u, pairing)
            right = pairing_sum(v, pairing_sum(w, u, pairing), pairing)
        except WindowOverflowError:
            continue
        if left != right:
            return NonassociativityWitness(v, w, u, left, right)
    return None

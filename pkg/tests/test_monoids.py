"""Graded monoids, the delooping pipeline, and exact rational sums."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bar_nerve
from qckit.monoids import (
    GradeMonoid,
    MonoidSpec,
    NonassociativityWitness,
    RationalSubspace,
    WindowOverflowError,
    axis_subspace,
    bar_normal,
    boxplus,
    build_reference_monoid,
    cantor_pairing,
    cyclic_group,
    default_monoid_spec,
    deloop,
    find_nonassociativity_witness,
    group_from_name,
    group_nerve,
    monoid_spec_from_json,
    monoid_spec_to_json,
    pairing_sum,
    random_subspace,
    saturating_grades,
    span,
    szudzik_pairing,
    total_space,
    validate_monoid,
    verify_proposition,
    zero_subspace,
)
from qckit.quasicat import is_kan_up_to
from qckit.scat import simplicial_nerve, validate_scat
from qckit.sset import iso_search, validate


@pytest.fixture(scope="module")
def reference():
    return build_reference_monoid()


@pytest.fixture(scope="module")
def reference_nerve(reference):
    return simplicial_nerve(deloop(reference), 3)


# -- grade monoids ----------------------------------------------------


def test_saturating_grades_absorb():
    g = saturating_grades(2)
    assert g.elements == ("0", "1", "2+")
    assert g.product("1", "1") == "2+"
    assert g.product("2+", "2+") == "2+"
    assert g.validate().ok


def test_group_as_grades_is_rejected():
    z2 = cyclic_group(2)
    grades = GradeMonoid(z2.elements, z2.unit, dict(z2.mult))
    report = grades.validate()
    assert not report.ok
    assert "left translation by '1' is a bijection" in report.problems[0]


def test_broken_associativity_is_reported():
    table = dict(saturating_grades(1).table)
    table[("1+", "1+")] = "0"  # makes 1+ invertible and non-associative
    report = GradeMonoid(("0", "1+"), "0", table).validate()
    assert any("associativity" in p for p in report.problems) or any(
        "bijection" in p for p in report.problems
    )


# -- group nerves against the tuple-built oracle ----------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_group_nerve_matches_oracle(n):
    g = cyclic_group(n)
    built = group_nerve(g, 3)
    assert validate(built).ok
    oracle = bar_nerve(
        g.elements, g.unit, lambda a, b: g.mult[(a, b)], 3
    )
    for d in range(4):
        assert built.cell_count(d) == oracle.cell_count(d) == (n - 1) ** d
    assert iso_search(built, oracle, 3) is not None


def test_bar_normal_strips_exactly_the_units():
    g = cyclic_group(3)
    ref = bar_normal(g, ("1", "0", "2", "0"))
    assert ref.cell == "1.2"
    assert ref.epi.values == (0, 1, 1, 2, 2)


# -- the reference monoid ---------------------------------------------


def test_reference_monoid_validates(reference):
    assert validate_monoid(reference).ok
    unit_comp = reference.component("0")
    assert [unit_comp.cell_count(d) for d in range(4)] == [1, 0, 0, 0]


def test_reference_components_are_kan(reference):
    for g in reference.grades.elements:
        assert is_kan_up_to(reference.component(g), 3).ok


def test_total_space_counts(reference):
    total = total_space(reference)
    assert [total.cell_count(d) for d in range(4)] == [3, 2, 2, 2]
    assert validate(total).ok


def test_bad_spec_is_rejected_with_translation():
    z2 = cyclic_group(2)
    grades = GradeMonoid(z2.elements, z2.unit, dict(z2.mult))
    with pytest.raises(ValueError, match="left translation by '1'"):
        build_reference_monoid(MonoidSpec(grades, {"1": "Z/2"}, 3))


def test_spec_missing_component_group():
    with pytest.raises(ValueError, match="no component group"):
        build_reference_monoid(
            MonoidSpec(saturating_grades(2), {"1": "Z/2"}, 3)
        )


def test_monoid_spec_json_round_trip():
    spec = default_monoid_spec()
    blob = monoid_spec_to_json(spec)
    back = monoid_spec_from_json(blob)
    assert monoid_spec_to_json(back) == blob
    assert back.grades.product("1", "2+") == "2+"


def test_group_from_name():
    assert group_from_name("Z/5").elements == ("0", "1", "2", "3", "4")
    assert group_from_name("trivial").elements == ("0",)
    with pytest.raises(ValueError):
        group_from_name("S3")


# -- delooping and the nerve ------------------------------------------


def test_deloop_is_a_valid_enriched_category(reference):
    assert validate_scat(deloop(reference), max_level=2).ok


def test_reference_nerve_cell_counts(reference_nerve):
    n = reference_nerve
    assert [len(n.simplices(d)) for d in range(4)] == [1, 3, 17, 193]
    assert [n.cell_count(d) for d in range(4)] == [1, 2, 12, 150]


def test_two_cell_count_identity(reference, reference_nerve):
    # 2-cells of the nerve match pairs (V01, V12) weighted by the number
    # of monoid edges into V12 . V01
    total = total_space(reference)
    cat = deloop(reference)
    from qckit.ordinals import face

    edges_into = {}
    for e in total.simplices(1):
        tgt = total.apply(e, face(1, 0)).cell
        edges_into[tgt] = edges_into.get(tgt, 0) + 1
    comp = cat.comp[("*", "*", "*")]
    from qckit.sset import nondeg_ref

    count = 0
    for v01 in total.nondegenerate(0):
        for v12 in total.nondegenerate(0):
            prod = comp.apply(
                0, nondeg_ref(v12, 0), nondeg_ref(v01, 0)
            ).cell
            count += edges_into.get(prod, 0)
    assert count == len(reference_nerve.simplices(2)) == 17


# -- the proposition --------------------------------------------------


def test_proposition_on_the_default_reference(reference):
    report = verify_proposition(reference, 2)
    assert report.ok, [c.to_json() for c in report.checks]
    assert report.check("c").details[0].startswith("5 of 17")
    assert "pi1 orders [1, 2, 2]" in report.check("e").details[0]
    assert report.check("f").verdict is None
    assert "found" in report.check("f").details[0]


def test_proposition_flags_isomorphic_but_distinct_components(reference):
    report = verify_proposition(reference, 2)
    assert any(
        "abstractly isomorphic" in d for d in report.check("e").details
    )


def test_proposition_on_trivial_monoid():
    grades = GradeMonoid(("0",), "0", {("0", "0"): "0"})
    m = build_reference_monoid(MonoidSpec(grades, {}, 3))
    report = verify_proposition(m, 2)
    assert report.ok
    assert "1 core vertices" in report.check("a").details[0]


def test_proposition_on_discrete_idempotent_monoid():
    # both elements appear as vertices and nothing else is invertible
    grades = GradeMonoid(
        ("1", "a"), "1",
        {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "a", ("a", "a"): "a"},
    )
    m = build_reference_monoid(MonoidSpec(grades, {"a": "trivial"}, 3))
    report = verify_proposition(m, 2)
    assert report.ok
    assert "2 core vertices match 2 monoid vertices" in (
        report.check("a").details[0]
    )
    assert report.check("c").details[0].startswith("2 of ")


def test_proposition_json_shape(reference):
    blob = verify_proposition(reference, 2).to_json()
    assert blob["ok"] is True
    assert [c["name"] for c in blob["checks"]] == ["a", "b", "c", "d", "e", "f"]


# -- rational subspaces -----------------------------------------------


def test_span_is_canonical():
    a = span(1, 3, [(1, 1, 0), (0, 1, 1)])
    b = span(1, 3, [(2, 2, 0), (1, 2, 1), (1, 0, -1)])
    assert a == b
    assert a.rank == 2


def test_noncanonical_rows_are_refused():
    with pytest.raises(ValueError, match="canonical"):
        RationalSubspace(1, 2, ((Fraction(2), Fraction(0)),))


def test_boxplus_blocks_and_unit():
    v = span(1, 2, [(1, 0)])
    w = span(2, 2, [(0, 1, 0, 0), (0, 0, 1, 2)])
    s = boxplus(v, w)
    assert s.copies == 3 and s.rank == 3
    assert s.rows[0][:2] == (Fraction(1), Fraction(0))
    assert boxplus(zero_subspace(2), w) == w
    assert boxplus(w, zero_subspace(2)) == w
    with pytest.raises(ValueError, match="base dimensions differ"):
        boxplus(v, span(1, 3, [(1, 0, 0)]))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_boxplus_associative_and_rank_additive(data):
    d = data.draw(st.integers(1, 3))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    v = random_subspace(rng, rng.randint(1, 2), d, 2)
    w = random_subspace(rng, rng.randint(1, 2), d, 2)
    u = random_subspace(rng, rng.randint(1, 2), d, 2)
    assert boxplus(boxplus(v, w), u) == boxplus(v, boxplus(w, u))
    assert boxplus(v, w).rank == v.rank + w.rank


def test_axis_subspace_bounds():
    with pytest.raises(ValueError):
        axis_subspace(1, 4, 4)


def test_pairing_sum_zero_inputs():
    z = span(1, 8, [])
    assert pairing_sum(z, z).rank == 0


def test_pairing_sum_dim_additive():
    v = span(1, 16, [(1 if i == 0 else 0 for i in range(16))])
    w = axis_subspace(1, 16, 1)
    assert pairing_sum(v, w).rank == 2


def test_pairing_sum_window_overflow():
    v = axis_subspace(1, 4, 3)
    with pytest.raises(WindowOverflowError) as exc:
        pairing_sum(v, v)
    assert exc.value.needed > 4
    assert "at least" in str(exc.value)


def test_cantor_witness_axis_spans():
    w = find_nonassociativity_witness(cantor_pairing)
    assert isinstance(w, NonassociativityWitness)
    assert w.left != w.right
    # first axis triple already fails: e0+e0 routes to {e0, e2}, then
    # associating left lands on e3 where right lands on e7
    def support(s):
        return sorted(
            next(i for i, x in enumerate(r) if x != 0) for r in s.rows
        )

    assert support(w.left) == [0, 2, 3]
    assert support(w.right) == [0, 2, 7]


def test_szudzik_witness_exists():
    w = find_nonassociativity_witness(szudzik_pairing)
    assert w is not None
    assert w.left != w.right


def test_witness_json_is_serializable():
    import json

    w = find_nonassociativity_witness(cantor_pairing)
    blob = json.dumps(w.to_json())
    assert "left_association" in blob

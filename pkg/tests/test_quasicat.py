"""Horn filling, invertibility, core, and homotopy invariants."""

import pytest

from qckit.ordinals import degeneracy, face
from qckit.quasicat import (
    HornProblem,
    core,
    cyclic_table,
    find_filler,
    horn_compatibility,
    horn_problems,
    invertible_edge_cells,
    is_invertible_edge,
    is_kan_up_to,
    is_quasicategory_up_to,
    pi0,
    pi1,
    tables_isomorphic,
)
from qckit.scat import from_finite_category, simplicial_nerve
from qckit.sset import (
    FinSSet,
    TruncationError,
    horn,
    nondeg_ref,
    standard_simplex,
)


def cyclic_category(n: int, truncation: int = 3):
    def comp(x, y, z, later, earlier):
        return str((int(later) + int(earlier)) % n)

    return from_finite_category(
        ("*",),
        {("*", "*"): [str(i) for i in range(n)]},
        comp,
        {"*": "0"},
        truncation=truncation,
    )


def absorbing_category(truncation: int = 3):
    def comp(x, y, z, later, earlier):
        return "a" if "a" in (later, earlier) else "1"

    return from_finite_category(
        ("*",), {("*", "*"): ["1", "a"]}, comp, {"*": "1"},
        truncation=truncation,
    )


@pytest.fixture(scope="module")
def b_z2():
    return simplicial_nerve(cyclic_category(2), 3)


@pytest.fixture(scope="module")
def b_absorbing():
    return simplicial_nerve(absorbing_category(), 3)


def test_horn_problem_shape_checks():
    with pytest.raises(ValueError):
        HornProblem(2, 3, (None, None, None))
    with pytest.raises(ValueError):
        HornProblem(2, 1, (None, None))


def test_compatibility_accepts_faces_of_a_real_simplex():
    x = standard_simplex(3)
    top = nondeg_ref("0-1-2-3", 3)
    for k in range(4):
        faces = tuple(
            None if i == k else x.apply(top, face(3, i)) for i in range(4)
        )
        assert horn_compatibility(x, HornProblem(3, k, faces)).ok


def test_compatibility_rejects_mismatched_faces():
    x = standard_simplex(2)
    faces = (nondeg_ref("1-2", 1), None, nondeg_ref("0-2", 1))
    report = horn_compatibility(x, HornProblem(2, 1, faces))
    assert not report.ok
    assert "0 and 2" in report.problems[0]


def test_find_filler_recovers_the_simplex():
    x = standard_simplex(3)
    for s in x.simplices(3):
        for k in range(4):
            faces = tuple(
                None if i == k else x.apply(s, face(3, i)) for i in range(4)
            )
            assert find_filler(x, HornProblem(3, k, faces)) == s


def test_find_filler_respects_truncation():
    x = standard_simplex(2)
    with pytest.raises(TruncationError):
        find_filler(x, HornProblem(3, 1, (None,) * 4))


def test_horn_problem_enumeration_counts_on_simplex():
    # in a simplex a horn is determined by its would-be filler, and
    # every compatible horn bounds one
    x = standard_simplex(2)
    problems = list(horn_problems(x, 2, 1))
    assert all(horn_compatibility(x, p).ok for p in problems)
    assert len(problems) == len(x.simplices(2))


def test_simplex_is_a_quasicategory_but_not_kan():
    x = standard_simplex(3)
    assert is_quasicategory_up_to(x, 3).ok
    outer = is_kan_up_to(x, 2)
    assert not outer.ok  # the edge 0-1 has no left inverse


def test_missing_filler_is_reported():
    x = horn(2, 1)
    report = is_quasicategory_up_to(x, 2)
    assert not report.ok
    assert "1 unfillable (2,1)-horns" in report.problems[0]


def test_group_nerve_is_kan(b_z2):
    assert is_kan_up_to(b_z2, 3).ok


def test_absorbing_monoid_nerve_has_inner_fillers_only(b_absorbing):
    assert is_quasicategory_up_to(b_absorbing, 3).ok
    assert not is_kan_up_to(b_absorbing, 2).ok


def test_invertible_edges_in_group_nerve(b_z2):
    assert invertible_edge_cells(b_z2) == b_z2.nondegenerate(1)


def test_absorbing_edge_is_not_invertible(b_absorbing):
    (cell,) = b_absorbing.nondegenerate(1)
    assert not is_invertible_edge(b_absorbing, nondeg_ref(cell, 1))


def test_degenerate_edges_always_invertible(b_absorbing):
    (v,) = b_absorbing.nondegenerate(0)
    loop = b_absorbing.apply(nondeg_ref(v, 0), degeneracy(0, 0))
    assert is_invertible_edge(b_absorbing, loop)


def test_core_of_group_nerve_is_everything(b_z2):
    result = core(b_z2)
    for d in range(4):
        assert result.sset.nondegenerate(d) == b_z2.nondegenerate(d)


def test_core_of_absorbing_nerve_is_the_point(b_absorbing):
    result = core(b_absorbing)
    assert [result.sset.cell_count(d) for d in range(4)] == [1, 0, 0, 0]
    assert result.invertible_edges == ()
    again = core(result.sset)
    for d in range(4):
        assert again.sset.nondegenerate(d) == result.sset.nondegenerate(d)


def test_pi0_counts_zigzag_components():
    x = FinSSet(
        1,
        {0: ["p", "q", "r", "s"], 1: ["e", "f"]},
        {
            "e": [nondeg_ref("q", 0), nondeg_ref("p", 0)],
            "f": [nondeg_ref("q", 0), nondeg_ref("r", 0)],
        },
    )
    assert pi0(x) == (("p", "q", "r"), ("s",))


def test_pi1_of_group_nerve(b_z2):
    result = pi1(b_z2, b_z2.nondegenerate(0)[0])
    assert result.ok, result.problems
    assert result.order == 2
    assert tables_isomorphic(result.table, cyclic_table(2))


def test_pi1_of_z3_nerve():
    n = simplicial_nerve(cyclic_category(3), 3)
    result = pi1(n, n.nondegenerate(0)[0])
    assert result.ok, result.problems
    assert result.order == 3
    assert tables_isomorphic(result.table, cyclic_table(3))
    assert not tables_isomorphic(result.table, cyclic_table(2))


def test_pi1_of_simplex_is_trivial():
    result = pi1(standard_simplex(3), "0")
    assert result.ok
    assert result.order == 1


def test_tables_isomorphic_rejects_partial_tables():
    with pytest.raises(ValueError):
        tables_isomorphic({(0, 0): 0, (0, 1): 1}, cyclic_table(2))

import math

import pytest

from oracles import bar_nerve, strict_chain_count

from qckit.ordinals import MonotoneMap, all_maps, compose, degeneracy, face, identity
from qckit.posets import mapping_poset
from qckit.scat import (
    EdgeData,
    SCat,
    TriangleData,
    classification_to_functor,
    classify_low_simplices,
    enumerate_functors,
    from_finite_category,
    functor_normal_form,
    functor_to_classification,
    precompose,
    rigidify,
    rigidify_map,
    scat_from_manifest,
    scat_to_manifest,
    simplicial_nerve,
    validate_functor,
    validate_scat,
)
from qckit.sset import TruncationError, iso_search, standard_simplex, validate


def discrete_two_element_monoid():
    """One object; morphisms 1 and a with a.a = a."""

    def comp(x, y, z, later, earlier):
        return "1" if later == "1" and earlier == "1" else "a"

    return from_finite_category(
        ["*"], {("*", "*"): ["1", "a"]}, comp, {"*": "1"}, truncation=3
    )


def poset_category_012():
    objs = [0, 1, 2]
    morphisms = {
        (x, y): [f"{x}to{y}"] for x in objs for y in objs if x <= y
    }

    def comp(x, y, z, later, earlier):
        return f"{x}to{z}"

    return from_finite_category(
        objs, morphisms, comp, {x: f"{x}to{x}" for x in objs}, truncation=3
    )


# -- rigidification ---------------------------------------------------


@pytest.mark.parametrize("k", range(0, 5))
def test_rigidify_hom_cell_counts(k):
    c = rigidify(k)
    for i in range(k + 1):
        for j in range(k + 1):
            h = c.hom(i, j)
            p = mapping_poset(i, j, k)
            if i > j:
                assert h.cell_count(0) == 0
                continue
            for m in range(min(h.truncation, max(j - i - 1, 0)) + 1):
                expected = strict_chain_count(
                    p.elements, lambda a, b: a <= b, m + 1
                )
                assert h.cell_count(m) == expected


@pytest.mark.parametrize("k", range(0, 5))
def test_rigidify_is_valid_scat(k):
    assert validate_scat(rigidify(k)).ok


# -- functor enumeration ----------------------------------------------


def test_discrete_monoid_functor_counts():
    d = discrete_two_element_monoid()
    for k in range(4):
        assert len(enumerate_functors(k, d)) == 2**k


def test_discrete_poset_category_functor_counts():
    d = poset_category_012()
    for k in range(4):
        # weakly increasing (k+1)-chains in 0 <= 1 <= 2
        assert len(enumerate_functors(k, d)) == math.comb(k + 3, k + 1)


def test_enumerate_functors_no_duplicates_and_valid():
    d = discrete_two_element_monoid()
    for k in range(4):
        fs = enumerate_functors(k, d)
        assert len(set(fs)) == len(fs)
        for f in fs:
            assert validate_functor(f).ok


def test_truncation_guard():
    def comp(x, y, z, later, earlier):
        return "1"

    low = from_finite_category(
        ["*"], {("*", "*"): ["1"]}, comp, {"*": "1"}, truncation=1
    )
    with pytest.raises(TruncationError):
        enumerate_functors(3, low)


def test_precompose_functorial():
    d = discrete_two_element_monoid()
    fs = enumerate_functors(3, d)
    ops = [(a, b) for a in all_maps(2, 3) for b in all_maps(1, 2)]
    for f in fs:
        for a, b in ops:
            assert precompose(precompose(f, a), b) == precompose(f, compose(a, b))


def test_rigidify_map_identity_and_validity():
    assert rigidify_map(identity(2)) == rigidify_map(identity(2))
    for op in (face(2, 1), face(3, 0), degeneracy(1, 0)):
        assert validate_functor(rigidify_map(op)).ok


# -- the coherent nerve -----------------------------------------------


def test_nerve_of_discrete_monoid_matches_bar_construction():
    d = discrete_two_element_monoid()
    n = simplicial_nerve(d, 3)
    assert validate(n).ok
    for k in range(4):
        assert len(n.simplices(k)) == 2**k
        assert n.cell_count(k) == 1
    oracle = bar_nerve(
        ["1", "a"], "1", lambda a, b: "1" if a == b == "1" else "a", 3
    )
    assert iso_search(n, oracle, 3) is not None


def test_nerve_of_poset_category_is_simplex():
    d = poset_category_012()
    n = simplicial_nerve(d, 3)
    assert validate(n).ok
    assert iso_search(n, standard_simplex(2, truncation=3), 3) is not None


def test_nerve_face_degeneracy_bookkeeping():
    d = discrete_two_element_monoid()
    n = simplicial_nerve(d, 3)
    # the unique nondegenerate 2-cell has the constant-a functor beneath it
    (cid,) = n.nondegenerate(2)
    f = n.functor_of[cid]
    epi, g = functor_normal_form(precompose(f, degeneracy(2, 1)))
    assert epi.values == (0, 1, 1, 2)
    assert g == f


# -- classification ---------------------------------------------------


def test_classification_bijection_discrete():
    d = discrete_two_element_monoid()
    for k in (1, 2, 3):
        tuples = classify_low_simplices(k, d)
        functors = enumerate_functors(k, d)
        built = [classification_to_functor(k, d, t) for t in tuples]
        assert len(built) == len(functors)
        assert set(built) == set(functors)
        for t, f in zip(tuples, built):
            assert functor_to_classification(f) == t
        for f in functors:
            t = functor_to_classification(f)
            assert classification_to_functor(k, d, t) == f


def test_classification_shapes():
    d = discrete_two_element_monoid()
    ones = classify_low_simplices(1, d)
    assert {t.v01 for t in ones} == {"1", "a"}
    twos = classify_low_simplices(2, d)
    assert all(isinstance(t, TriangleData) for t in twos)
    # gamma runs from V02 to V12 . V01; in a discrete hom it is constant
    for t in twos:
        assert t.gamma.is_degenerate


# -- serialization ----------------------------------------------------


def test_scat_manifest_round_trip(tmp_path):
    d = poset_category_012()
    path = scat_to_manifest(d, str(tmp_path), stem="poset012")
    loaded = scat_from_manifest(path)
    assert validate_scat(loaded).ok
    assert len(loaded.objects) == 3
    n_orig = simplicial_nerve(d, 2)
    n_loaded = simplicial_nerve(loaded, 2)
    assert iso_search(n_orig, n_loaded, 2) is not None

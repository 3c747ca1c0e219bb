"""Simplicially enriched categories with strictly associative composition.

``rigidify(k)`` is the enriched category on objects 0..k whose homs are
nerves of the mapping posets and whose composition is levelwise union of
chains.  A ``SimplicialFunctor`` out of it into a target ``SCat`` is
determined by a small amount of free data; :func:`enumerate_functors`
backtracks over exactly that free data, so every functor is produced
once.  The homotopy-coherent nerve :func:`simplicial_nerve` lists the
functors levelwise and normalizes their faces.

Free versus forced cells: a nondegenerate chain of P(i,j) whose least
element is the bottom {i, j} is free; any other chain has an interior
point in every entry and splits as a union of two shorter chains, so a
functor's value on it is forced by composition.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .ordinals import MonotoneMap, compose, degeneracy, face, identity
from .posets import (
    chain_cell_id,
    mapping_poset,
    nerve,
    normalize_chain,
    union_chains,
)
from .sset import (
    BilevelMap,
    FinSSet,
    SimplexRef,
    SimplicialMap,
    TruncationError,
    ValidationReport,
    nondeg_ref,
    validate,
    validate_bilevel,
)


class SCat:
    """Objects, hom simplicial sets, identity vertices, and a levelwise
    composition table per object triple.  All homs share ``level_cap``."""

    def __init__(
        self,
        objects: Iterable[Hashable],
        homs: Mapping[tuple, FinSSet],
        identities: Mapping[Hashable, str],
        comp: Mapping[tuple, BilevelMap],
    ):
        self.objects = tuple(objects)
        self.homs = dict(homs)
        self.identities = dict(identities)
        self.comp = dict(comp)
        self.level_cap = min(
            (h.truncation for h in self.homs.values()), default=0
        )

    def hom(self, x, y) -> FinSSet:
        return self.homs[(x, y)]

    def identity_ref(self, x, level: int = 0) -> SimplexRef:
        """The level-fold degenerate simplex on the identity vertex."""
        v = self.identities[x]
        epi = MonotoneMap(level, 0, (0,) * (level + 1))
        return SimplexRef(epi, v)

    def compose_refs(self, x, y, z, later: SimplexRef, earlier: SimplexRef) -> SimplexRef:
        return self.comp[(x, y, z)].apply(later.dim, later, earlier)


def validate_scat(d: SCat, max_level: int | None = None) -> ValidationReport:
    """Hom validity, unit vertices, bilevel naturality of composition,
    strict unit and associativity laws checked levelwise on the tables."""
    report = ValidationReport("SCat")
    cap = d.level_cap if max_level is None else min(max_level, d.level_cap)
    for (x, y), h in d.homs.items():
        sub = validate(h)
        report.problems.extend(f"hom({x!r},{y!r}): {p}" for p in sub.problems)
    for x in d.objects:
        v = d.identities.get(x)
        if v is None or not d.hom(x, x).has_cell(v) or d.hom(x, x).dim_of(v) != 0:
            report.problems.append(f"identity of {x!r} is not a vertex")
    if report.problems:
        return report
    for (x, y, z), bm in d.comp.items():
        sub = validate_bilevel(bm, cap)
        report.problems.extend(
            f"comp({x!r},{y!r},{z!r}): {p}" for p in sub.problems
        )
    for x in d.objects:
        for y in d.objects:
            h = d.hom(x, y)
            for m in range(cap + 1):
                for f in h.simplices(m):
                    left = d.compose_refs(x, y, y, d.identity_ref(y, m), f)
                    right = d.compose_refs(x, x, y, f, d.identity_ref(x, m))
                    if left != f:
                        report.problems.append(
                            f"left unit law fails at level {m} on "
                            f"({x!r},{y!r}): {f.cell!r}"
                        )
                    if right != f:
                        report.problems.append(
                            f"right unit law fails at level {m} on "
                            f"({x!r},{y!r}): {f.cell!r}"
                        )
    for w in d.objects:
        for x in d.objects:
            for y in d.objects:
                for z in d.objects:
                    for m in range(cap + 1):
                        for a in d.hom(y, z).simplices(m):
                            for b in d.hom(x, y).simplices(m):
                                ab = d.compose_refs(x, y, z, a, b)
                                for c in d.hom(w, x).simplices(m):
                                    lhs = d.compose_refs(w, x, z, ab, c)
                                    rhs = d.compose_refs(
                                        w, y, z, a, d.compose_refs(w, x, y, b, c)
                                    )
                                    if lhs != rhs:
                                        report.problems.append(
                                            f"associativity fails at level {m} on "
                                            f"({w!r},{x!r},{y!r},{z!r})"
                                        )
    return report


@lru_cache(maxsize=None)
def rigidify(k: int) -> SCat:
    """The rigidified k-simplex: homs are mapping-poset nerves, all taken
    at truncation max(k-1, 0); composition is union of chains."""
    if k < 0:
        raise ValueError("k must be >= 0")
    trunc = max(k - 1, 0)
    objects = tuple(range(k + 1))
    homs = {
        (i, j): nerve(mapping_poset(i, j, k), trunc)
        for i in objects
        for j in objects
    }
    identities = {i: chain_cell_id([frozenset({i})]) for i in objects}
    comp = {
        (i, j, p): BilevelMap(homs[(j, p)], homs[(i, j)], homs[(i, p)], union_chains)
        for i in objects
        for j in objects
        for p in objects
    }
    return SCat(objects, homs, identities, comp)


# -- functors out of rigidified simplices -----------------------------


@lru_cache(maxsize=None)
def _chain_sets(cell_id: str) -> tuple[frozenset, ...]:
    return tuple(
        frozenset(int(v) for v in label.split("."))
        for label in cell_id.split("<")
    )


@lru_cache(maxsize=None)
def _hom_slots(k: int, i: int, j: int) -> tuple[tuple[str, int, bool, int], ...]:
    """Cells of N P(i,j) in fill order: (cell, dim, free, split point).

    Free cells start at the bottom {i,j}; forced cells carry the least
    interior point of their first entry as the split."""
    src = rigidify(k).hom(i, j)
    out = []
    for m in range(j - i):
        for cid in src.nondegenerate(m):
            sets = _chain_sets(cid)
            interior = sorted(sets[0] - {i, j})
            if interior:
                out.append((cid, m, False, interior[0]))
            else:
                out.append((cid, m, True, -1))
    return tuple(out)


class SimplicialFunctor:
    """A functor from rigidify(arity) to target, stored as assignments on
    the nondegenerate chains of every hom nerve."""

    __slots__ = ("arity", "target", "object_map", "assignments", "_sig")

    def __init__(self, arity: int, target: SCat, object_map: tuple,
                 assignments: Mapping[tuple, Mapping[str, SimplexRef]]):
        self.arity = arity
        self.target = target
        self.object_map = tuple(object_map)
        self.assignments = {
            pair: dict(table) for pair, table in assignments.items()
        }
        self._sig = None

    def signature(self) -> tuple:
        if self._sig is None:
            self._sig = (
                self.arity,
                self.object_map,
                tuple(
                    (pair, tuple(sorted(
                        (c, r.sort_key()) for c, r in table.items()
                    )))
                    for pair, table in sorted(self.assignments.items())
                ),
            )
        return self._sig

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialFunctor):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def image(self, i: int, j: int, ref: SimplexRef) -> SimplexRef:
        """Image of any simplex of N P(i,j), degenerate or not."""
        h = self.target.hom(self.object_map[i], self.object_map[j])
        return h.apply(self.assignments[(i, j)][ref.cell], ref.epi)

    def hom_map(self, i: int, j: int) -> SimplicialMap:
        src = rigidify(self.arity).hom(i, j)
        tgt = self.target.hom(self.object_map[i], self.object_map[j])
        return SimplicialMap(src, tgt, self.assignments[(i, j)])


def _forced_value(tgt: SCat, objs: tuple, assignments: dict,
                  i: int, j: int, cid: str, m: int, split: int) -> SimplexRef:
    sets = _chain_sets(cid)
    upper = normalize_chain([s & frozenset(range(split, j + 1)) for s in sets])
    lower = normalize_chain([s & frozenset(range(i, split + 1)) for s in sets])
    hu = tgt.hom(objs[split], objs[j])
    hl = tgt.hom(objs[i], objs[split])
    fu = hu.apply(assignments[(split, j)][upper.cell], upper.epi)
    fl = hl.apply(assignments[(i, split)][lower.cell], lower.epi)
    return tgt.compose_refs(objs[i], objs[split], objs[j], fu, fl)


def enumerate_functors(k: int, d: SCat) -> list[SimplicialFunctor]:
    """All simplicial functors rigidify(k) -> d, each exactly once.

    Adjacent and gap data is chosen by backtracking over the free cells
    in order of gap, dimension, and chain; forced cells are computed from
    shorter gaps through the composition tables.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k - 1 > d.level_cap:
        raise TruncationError(
            f"homs truncated at {d.level_cap}, too low for {k}-functors"
        )
    src = rigidify(k)
    pairs = sorted(
        ((i, j) for i in range(k + 1) for j in range(i + 1, k + 1)),
        key=lambda ij: (ij[1] - ij[0], ij[0]),
    )
    slot_list = [
        (i, j, cid, m, free, split)
        for (i, j) in pairs
        for (cid, m, free, split) in _hom_slots(k, i, j)
    ]
    results: list[SimplicialFunctor] = []

    for objs in itertools.product(d.objects, repeat=k + 1):
        assignments: dict[tuple, dict[str, SimplexRef]] = {
            (i, i): {chain_cell_id([frozenset({i})]): nondeg_ref(d.identities[objs[i]], 0)}
            for i in range(k + 1)
        }
        for (i, j) in pairs:
            assignments[(i, j)] = {}

        def faces_ok(i: int, j: int, cid: str, m: int, cand: SimplexRef) -> bool:
            h = d.hom(objs[i], objs[j])
            src_h = src.hom(i, j)
            table = assignments[(i, j)]
            for t in range(m + 1):
                want = table[src_h.face_entry(cid, t).cell]
                if h.apply(cand, face(m, t)) != want:
                    return False
            return True

        def fill(s: int) -> None:
            if s == len(slot_list):
                results.append(
                    SimplicialFunctor(k, d, objs, assignments)
                )
                return
            i, j, cid, m, free, split = slot_list[s]
            table = assignments[(i, j)]
            if not free:
                table[cid] = _forced_value(d, objs, assignments, i, j, cid, m, split)
                fill(s + 1)
                del table[cid]
                return
            h = d.hom(objs[i], objs[j])
            for cand in h.simplices(m):
                if m >= 1 and not faces_ok(i, j, cid, m, cand):
                    continue
                table[cid] = cand
                fill(s + 1)
                del table[cid]

        fill(0)
    return results


def precompose(f: SimplicialFunctor, op: MonotoneMap) -> SimplicialFunctor:
    """f composed with the rigidified op: a functor of op's source arity."""
    if op.target_arity != f.arity:
        raise TruncationError(
            f"operator into [{op.target_arity}] against arity {f.arity}"
        )
    l = op.source_arity
    objs = tuple(f.object_map[op(v)] for v in range(l + 1))
    src = rigidify(l)
    assignments: dict[tuple, dict[str, SimplexRef]] = {}
    for i in range(l + 1):
        for j in range(i, l + 1):
            table: dict[str, SimplexRef] = {}
            for m in range(max(j - i, 1)):
                for cid in src.hom(i, j).nondegenerate(m):
                    sets = _chain_sets(cid)
                    image_chain = normalize_chain(
                        [frozenset(op(v) for v in s) for s in sets]
                    )
                    table[cid] = f.image(op(i), op(j), image_chain)
            assignments[(i, j)] = table
    return SimplicialFunctor(l, f.target, objs, assignments)


def rigidify_map(op: MonotoneMap) -> SimplicialFunctor:
    """The functor rigidify(l) -> rigidify(k) induced by op: [l] -> [k]."""
    return precompose(_identity_functor(op.target_arity), op)


@lru_cache(maxsize=None)
def _identity_functor(k: int) -> SimplicialFunctor:
    tgt = rigidify(k)
    assignments = {}
    for i in range(k + 1):
        for j in range(i, k + 1):
            table = {}
            for m in range(max(j - i, 1)):
                for cid in tgt.hom(i, j).nondegenerate(m):
                    table[cid] = nondeg_ref(cid, m)
            assignments[(i, j)] = table
    return SimplicialFunctor(k, tgt, tuple(range(k + 1)), assignments)


def validate_functor(f: SimplicialFunctor) -> ValidationReport:
    """Units, naturality of every hom assignment, and the composition
    squares F(b u a) = F(b) . F(a) levelwise on all pairs."""
    report = ValidationReport("SimplicialFunctor")
    k = f.arity
    src = rigidify(k)
    for i in range(k + 1):
        want = nondeg_ref(f.target.identities[f.object_map[i]], 0)
        if f.assignments[(i, i)][chain_cell_id([frozenset({i})])] != want:
            report.problems.append(f"identity at {i} not preserved")
    from .sset import validate_map

    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            sub = validate_map(f.hom_map(i, j))
            report.problems.extend(
                f"hom({i},{j}): {p}" for p in sub.problems
            )
    if report.problems:
        return report
    cap = min(src.level_cap, f.target.level_cap)
    for i in range(k + 1):
        for j in range(i, k + 1):
            for p in range(j, k + 1):
                for m in range(cap + 1):
                    for b in src.hom(j, p).simplices(m):
                        fb = f.image(j, p, b)
                        for a in src.hom(i, j).simplices(m):
                            u = union_chains(m, b, a)
                            lhs = f.image(i, p, u)
                            rhs = f.target.compose_refs(
                                f.object_map[i], f.object_map[j], f.object_map[p],
                                fb, f.image(i, j, a),
                            )
                            if lhs != rhs:
                                report.problems.append(
                                    f"composition square fails at level {m} on "
                                    f"({i},{j},{p}): {b.cell!r} over {a.cell!r}"
                                )
    return report


# -- the homotopy-coherent nerve --------------------------------------


def functor_normal_form(f: SimplicialFunctor) -> tuple[MonotoneMap, SimplicialFunctor]:
    """Strip degeneracies: returns (epi, g) with f = g . rigidified epi."""
    epi = identity(f.arity)
    cur = f
    while True:
        n = cur.arity
        for i in range(n):
            dropped = precompose(cur, face(n, i))
            if precompose(dropped, degeneracy(n - 1, i)) == cur:
                cur = dropped
                epi = compose(degeneracy(n - 1, i), epi)
                break
        else:
            return epi, cur


class NerveSSet(FinSSet):
    """The coherent nerve with its catalogue of cell functors attached."""

    def __init__(self, truncation, cells, faces, functor_of):
        super().__init__(truncation, cells, faces)
        self.functor_of: dict[str, SimplicialFunctor] = functor_of

    def functor_of_ref(self, ref: SimplexRef) -> SimplicialFunctor:
        return precompose(self.functor_of[ref.cell], ref.epi)


def simplicial_nerve(d: SCat, dim: int) -> NerveSSet:
    """Level k cells are the k-functors; faces precompose with cofaces.

    Requires the homs of d to be truncated at least at dim - 1.
    """
    if dim < 0:
        raise ValueError("dim must be >= 0")
    if dim - 1 > d.level_cap:
        raise TruncationError(
            f"homs truncated at {d.level_cap} cannot support a dim-{dim} nerve"
        )
    by_level: list[list[SimplicialFunctor]] = [
        enumerate_functors(k, d) for k in range(dim + 1)
    ]
    cells: dict[int, list[str]] = {}
    ids: dict[tuple, str] = {}
    functor_of: dict[str, SimplicialFunctor] = {}
    for k, fs in enumerate(by_level):
        nondeg = []
        for f in fs:
            if all(
                precompose(precompose(f, face(k, i)), degeneracy(k - 1, i)) != f
                for i in range(k)
            ):
                nondeg.append(f)
        nondeg.sort(key=lambda f: f.signature())
        cells[k] = []
        for idx, f in enumerate(nondeg):
            cid = f"n{k}c{idx}"
            cells[k].append(cid)
            ids[f.signature()] = cid
            functor_of[cid] = f
    faces: dict[str, list[SimplexRef]] = {}
    for k in range(1, dim + 1):
        for cid in cells[k]:
            f = functor_of[cid]
            entries = []
            for i in range(k + 1):
                epi, g = functor_normal_form(precompose(f, face(k, i)))
                entries.append(SimplexRef(epi, ids[g.signature()]))
            faces[cid] = entries
    return NerveSSet(dim, cells, faces, functor_of)


# -- classification of low-dimensional nerve cells --------------------


@dataclass(frozen=True)
class EdgeData:
    v01: str


@dataclass(frozen=True)
class TriangleData:
    v01: str
    v12: str
    v02: str
    gamma: SimplexRef


@dataclass(frozen=True)
class TetrahedronData:
    v01: str
    v12: str
    v23: str
    gamma02: SimplexRef
    gamma13: SimplexRef
    edge1: SimplexRef
    edge2: SimplexRef
    edge3: SimplexRef
    tri_left: SimplexRef
    tri_right: SimplexRef


def _the_object(d: SCat):
    if len(d.objects) != 1:
        raise ValueError("classification works over a single-object target")
    return d.objects[0]


def _vertex(ref: SimplexRef) -> str:
    return ref.cell


def classify_low_simplices(k: int, d: SCat) -> list:
    """Independent parametrizations of the k-cells, k <= 3, over a
    one-object target: vertices, connecting paths, and filling triangles,
    scanned directly from the hom simplicial set."""
    x = _the_object(d)
    h = d.hom(x, x)
    mul = lambda late, early: d.compose_refs(x, x, x, late, early)
    verts = [nondeg_ref(v, 0) for v in h.nondegenerate(0)]
    if k == 1:
        return [EdgeData(v.cell) for v in verts]
    edges = h.simplices(1)
    d0 = {e: h.apply(e, face(1, 0)) for e in edges}
    d1 = {e: h.apply(e, face(1, 1)) for e in edges}
    if k == 2:
        out = []
        for v01 in verts:
            for v12 in verts:
                target = mul(v12, v01)
                for g in edges:
                    if d0[g] == target:
                        out.append(
                            TriangleData(v01.cell, v12.cell, d1[g].cell, g)
                        )
        return out
    if k != 3:
        raise ValueError("classification covers k in {1, 2, 3}")
    tris = h.simplices(2)
    tri_by_faces = {}
    for t in tris:
        key = (
            h.apply(t, face(2, 0)),
            h.apply(t, face(2, 1)),
            h.apply(t, face(2, 2)),
        )
        tri_by_faces.setdefault(key, []).append(t)
    out = []
    for v01 in verts:
        for v12 in verts:
            for v23 in verts:
                v012 = mul(v12, v01)
                v123 = mul(v23, v12)
                v0123 = mul(v23, v012)
                for g02 in edges:
                    if d0[g02] != v012:
                        continue
                    s0v23 = h.degenerate(v23, 0)
                    f2 = mul(s0v23, g02)
                    for g13 in edges:
                        if d0[g13] != v123:
                            continue
                        s0v01 = h.degenerate(v01, 0)
                        f1 = mul(g13, s0v01)
                        v013 = mul(d1[g13], v01)
                        v023 = mul(v23, d1[g02])
                        for e3 in edges:
                            if d0[e3] != v0123:
                                continue
                            v03 = d1[e3]
                            for e1 in edges:
                                if d0[e1] != v013 or d1[e1] != v03:
                                    continue
                                for tl in tri_by_faces.get((f1, e3, e1), ()):
                                    for e2 in edges:
                                        if d0[e2] != v023 or d1[e2] != v03:
                                            continue
                                        for tr in tri_by_faces.get((f2, e3, e2), ()):
                                            out.append(TetrahedronData(
                                                v01.cell, v12.cell, v23.cell,
                                                g02, g13, e1, e2, e3, tl, tr,
                                            ))
    return out


def classification_to_functor(k: int, d: SCat, data) -> SimplicialFunctor:
    """Rebuild the functor a classification tuple encodes."""
    x = _the_object(d)
    h = d.hom(x, x)
    objs = tuple(x for _ in range(k + 1))
    assignments: dict[tuple, dict[str, SimplexRef]] = {
        (i, i): {chain_cell_id([frozenset({i})]): nondeg_ref(d.identities[x], 0)}
        for i in range(k + 1)
    }
    bottom = lambda i, j: chain_cell_id([frozenset({i, j})])
    if k == 1:
        assignments[(0, 1)] = {bottom(0, 1): nondeg_ref(data.v01, 0)}
        return SimplicialFunctor(1, d, objs, assignments)
    if k == 2:
        assignments[(0, 1)] = {bottom(0, 1): nondeg_ref(data.v01, 0)}
        assignments[(1, 2)] = {bottom(1, 2): nondeg_ref(data.v12, 0)}
        table = {
            bottom(0, 2): h.apply(data.gamma, face(1, 1)),
            chain_cell_id([frozenset({0, 2}), frozenset({0, 1, 2})]): data.gamma,
        }
        v012 = chain_cell_id([frozenset({0, 1, 2})])
        table[v012] = h.apply(data.gamma, face(1, 0))
        assignments[(0, 2)] = table
        return SimplicialFunctor(2, d, objs, assignments)
    if k != 3:
        raise ValueError("classification covers k in {1, 2, 3}")
    free_values = {
        (0, 1): {bottom(0, 1): nondeg_ref(data.v01, 0)},
        (1, 2): {bottom(1, 2): nondeg_ref(data.v12, 0)},
        (2, 3): {bottom(2, 3): nondeg_ref(data.v23, 0)},
        (0, 2): {
            bottom(0, 2): h.apply(data.gamma02, face(1, 1)),
            chain_cell_id([frozenset({0, 2}), frozenset({0, 1, 2})]): data.gamma02,
        },
        (1, 3): {
            bottom(1, 3): h.apply(data.gamma13, face(1, 1)),
            chain_cell_id([frozenset({1, 3}), frozenset({1, 2, 3})]): data.gamma13,
        },
        (0, 3): {
            bottom(0, 3): h.apply(data.edge3, face(1, 1)),
            chain_cell_id([frozenset({0, 3}), frozenset({0, 1, 3})]): data.edge1,
            chain_cell_id([frozenset({0, 3}), frozenset({0, 2, 3})]): data.edge2,
            chain_cell_id([frozenset({0, 3}), frozenset({0, 1, 2, 3})]): data.edge3,
            chain_cell_id([
                frozenset({0, 3}), frozenset({0, 1, 3}), frozenset({0, 1, 2, 3})
            ]): data.tri_left,
            chain_cell_id([
                frozenset({0, 3}), frozenset({0, 2, 3}), frozenset({0, 1, 2, 3})
            ]): data.tri_right,
        },
    }
    for pair, table in free_values.items():
        assignments[pair] = dict(table)
    for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]:
        for (cid, m, free, split) in _hom_slots(3, i, j):
            if free:
                continue
            assignments[(i, j)][cid] = _forced_value(
                d, objs, assignments, i, j, cid, m, split
            )
    return SimplicialFunctor(3, d, objs, assignments)


def functor_to_classification(f: SimplicialFunctor):
    """Inverse of classification_to_functor."""
    k = f.arity
    a = f.assignments
    bottom = lambda i, j: chain_cell_id([frozenset({i, j})])
    if k == 1:
        return EdgeData(a[(0, 1)][bottom(0, 1)].cell)
    if k == 2:
        gamma = a[(0, 2)][chain_cell_id([frozenset({0, 2}), frozenset({0, 1, 2})])]
        return TriangleData(
            a[(0, 1)][bottom(0, 1)].cell,
            a[(1, 2)][bottom(1, 2)].cell,
            a[(0, 2)][bottom(0, 2)].cell,
            gamma,
        )
    if k != 3:
        raise ValueError("classification covers k in {1, 2, 3}")
    c03 = a[(0, 3)]
    return TetrahedronData(
        a[(0, 1)][bottom(0, 1)].cell,
        a[(1, 2)][bottom(1, 2)].cell,
        a[(2, 3)][bottom(2, 3)].cell,
        a[(0, 2)][chain_cell_id([frozenset({0, 2}), frozenset({0, 1, 2})])],
        a[(1, 3)][chain_cell_id([frozenset({1, 3}), frozenset({1, 2, 3})])],
        c03[chain_cell_id([frozenset({0, 3}), frozenset({0, 1, 3})])],
        c03[chain_cell_id([frozenset({0, 3}), frozenset({0, 2, 3})])],
        c03[chain_cell_id([frozenset({0, 3}), frozenset({0, 1, 2, 3})])],
        c03[chain_cell_id([
            frozenset({0, 3}), frozenset({0, 1, 3}), frozenset({0, 1, 2, 3})
        ])],
        c03[chain_cell_id([
            frozenset({0, 3}), frozenset({0, 2, 3}), frozenset({0, 1, 2, 3})
        ])],
    )


# -- discrete enrichment ----------------------------------------------


def from_finite_category(
    objects: Iterable[Hashable],
    morphisms: Mapping[tuple, Iterable[str]],
    compose_fn,
    identities: Mapping[Hashable, str],
    truncation: int = 3,
) -> SCat:
    """A category with discrete homs: vertices are morphism names and all
    higher simplices are degenerate."""
    objects = tuple(objects)
    homs = {}
    for x in objects:
        for y in objects:
            ms = list(morphisms.get((x, y), ()))
            homs[(x, y)] = FinSSet(truncation, {0: ms}, {})
    for x in objects:
        if identities.get(x) not in homs[(x, x)].nondegenerate(0):
            raise ValueError(
                f"identity of {x!r} is not a listed ({x!r}, {x!r}) morphism"
            )

    def make_fn(x, y, z):
        def fn(level: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
            out = compose_fn(x, y, z, a.cell, b.cell)
            epi = MonotoneMap(level, 0, (0,) * (level + 1))
            return SimplexRef(epi, out)

        return fn

    comp = {
        (x, y, z): BilevelMap(
            homs[(y, z)], homs[(x, y)], homs[(x, z)], make_fn(x, y, z)
        )
        for x in objects
        for y in objects
        for z in objects
    }
    return SCat(objects, homs, dict(identities), comp)


# -- serialization ----------------------------------------------------


def scat_to_manifest(d: SCat, directory: str, stem: str = "scat") -> str:
    """Writes hom files plus a manifest; returns the manifest path."""
    os.makedirs(directory, exist_ok=True)
    hom_files = {}
    for (x, y), h in d.homs.items():
        fname = f"{stem}_hom_{x}_{y}.json"
        with open(os.path.join(directory, fname), "w") as fh:
            fh.write(h.to_json_str())
        hom_files[f"{x}|{y}"] = fname
    comp_tables = {}
    for (x, y, z), bm in d.comp.items():
        levels = {}
        for m in range(d.level_cap + 1):
            levels[str(m)] = [
                [a.to_json(), b.to_json(), out.to_json()]
                for a, b, out in bm.level_table(m)
            ]
        comp_tables[f"{x}|{y}|{z}"] = levels
    manifest = {
        "objects": [str(x) for x in d.objects],
        "homs": hom_files,
        "identities": {str(x): v for x, v in d.identities.items()},
        "comp": comp_tables,
    }
    path = os.path.join(directory, f"{stem}.scat.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2)
    return path


def scat_from_manifest(path: str) -> SCat:
    with open(path) as fh:
        manifest = json.load(fh)
    directory = os.path.dirname(path)
    objects = manifest["objects"]
    homs = {}
    for key, fname in manifest["homs"].items():
        x, y = key.split("|")
        with open(os.path.join(directory, fname)) as fh:
            homs[(x, y)] = FinSSet.from_json(fh.read())

    def ref_from(blob, hom_set):
        vals = tuple(blob["epi"])
        target = hom_set.dim_of(blob["cell"])
        return SimplexRef(MonotoneMap(len(vals) - 1, target, vals), blob["cell"])

    comp = {}
    for key, levels in manifest["comp"].items():
        x, y, z = key.split("|")
        table = {}
        for m_str, rows in levels.items():
            m = int(m_str)
            for a, b, out in rows:
                table[(m, ref_from(a, homs[(y, z)]).sort_key(),
                       ref_from(b, homs[(x, y)]).sort_key())] = ref_from(out, homs[(x, z)])

        def make_fn(tbl):
            def fn(level, a, b):
                return tbl[(level, a.sort_key(), b.sort_key())]

            return fn

        comp[(x, y, z)] = BilevelMap(
            homs[(y, z)], homs[(x, y)], homs[(x, z)], make_fn(table)
        )
    identities = dict(manifest["identities"].items())
    return SCat(objects, homs, identities, comp)

"""Finite truncated simplicial sets presented by nondegenerate cells.

A ``FinSSet`` stores, for each dimension up to a strict truncation, the
list of nondegenerate cells, and for each cell its tuple of faces.  Every
simplex is referred to by a ``SimplexRef``: a surjective reindexing map
together with a nondegenerate cell, the unique epi-mono normal form.

The centrepiece is :meth:`FinSSet.apply`, the contravariant action of an
arbitrary monotone map on a simplex reference, which refactors through
the face tables until the normal form is restored.  Truncation is
strict: asking for simplices above the truncation raises, it is never
silently completed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .ordinals import (
    ArityError,
    MonotoneMap,
    compose,
    degeneracy,
    epi_mono_factor,
    epis_onto,
    face,
    identity,
)


class TruncationError(ValueError):
    """Raised when a dimension above the stored truncation is requested."""


class UnknownCellError(KeyError):
    """Raised when a face table or assignment refers to a missing cell."""


@dataclass(frozen=True, slots=True)
class SimplexRef:
    """A simplex in epi-mono normal form: nondegenerate ``cell`` reindexed
    along the surjection ``epi``.  Identity epi means the cell itself."""

    epi: MonotoneMap
    cell: str

    @property
    def dim(self) -> int:
        return self.epi.source_arity

    @property
    def is_degenerate(self) -> bool:
        return not self.epi.is_identity

    def sort_key(self) -> tuple:
        return (self.cell, self.epi.values)

    def to_json(self) -> dict:
        return {"cell": self.cell, "epi": list(self.epi.values)}


def nondeg_ref(cell: str, dim: int) -> SimplexRef:
    return SimplexRef(identity(dim), cell)


@dataclass
class ValidationReport:
    subject: str
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "problems": self.problems}


class FinSSet:
    """Immutable-by-convention finite truncated simplicial set.

    ``cells`` maps each dimension 0..truncation to its nondegenerate cell
    ids; ``faces`` maps each cell of dimension >= 1 to its dim+1 face
    references.  Construction only normalizes containers; semantic
    soundness (reference integrity, simplicial identities) is checked by
    :func:`validate` so that broken inputs can be diagnosed rather than
    refused outright.
    """

    def __init__(
        self,
        truncation: int,
        cells: Mapping[int, Iterable[str]],
        faces: Mapping[str, Iterable[SimplexRef]],
    ):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        for d in cells:
            if not (0 <= d <= truncation):
                raise TruncationError(f"cell dimension {d} outside 0..{truncation}")
        self.truncation = truncation
        self._cells: dict[int, tuple[str, ...]] = {
            d: tuple(cells.get(d, ())) for d in range(truncation + 1)
        }
        self._faces: dict[str, tuple[SimplexRef, ...]] = {
            c: tuple(fs) for c, fs in faces.items()
        }
        self._dim_of: dict[str, int] = {}
        for d in range(truncation + 1):
            for c in self._cells[d]:
                self._dim_of.setdefault(c, d)

    # -- raw structure ------------------------------------------------

    def nondegenerate(self, dim: int) -> tuple[str, ...]:
        if dim < 0:
            return ()
        if dim > self.truncation:
            raise TruncationError(
                f"dimension {dim} above truncation {self.truncation}"
            )
        return self._cells[dim]

    def dim_of(self, cell: str) -> int:
        if cell not in self._dim_of:
            raise UnknownCellError(cell)
        return self._dim_of[cell]

    def has_cell(self, cell: str) -> bool:
        return cell in self._dim_of

    def face_entry(self, cell: str, i: int) -> SimplexRef:
        if cell not in self._dim_of:
            raise UnknownCellError(cell)
        entries = self._faces.get(cell)
        if entries is None or not (0 <= i < len(entries)):
            raise UnknownCellError(f"no face {i} recorded for cell {cell!r}")
        ref = entries[i]
        if ref.cell not in self._dim_of:
            raise UnknownCellError(
                f"face {i} of cell {cell!r} references unknown cell {ref.cell!r}"
            )
        return ref

    def face_entries(self, cell: str) -> tuple[SimplexRef, ...]:
        if cell not in self._dim_of:
            raise UnknownCellError(cell)
        return self._faces.get(cell, ())

    # -- the presheaf action ------------------------------------------

    def apply(self, ref: SimplexRef, alpha: MonotoneMap) -> SimplexRef:
        """Normal form of ref . alpha for any monotone alpha into ref's
        dimension.  Functorial: apply(apply(r, a), b) == apply(r, a . b)."""
        if alpha.target_arity != ref.dim:
            raise ArityError(
                f"operator into [{alpha.target_arity}] applied to a "
                f"{ref.dim}-simplex"
            )
        return self._act(ref.cell, compose(ref.epi, alpha))

    def _act(self, cell: str, beta: MonotoneMap) -> SimplexRef:
        epi, mono = epi_mono_factor(beta)
        if mono.is_identity:
            return SimplexRef(epi, cell)
        m = mono.target_arity
        i = max(set(range(m + 1)) - set(mono.values))
        # mono = face(m, i) . mu2, so act by the face table first.
        mu2 = MonotoneMap(
            mono.source_arity,
            m - 1,
            tuple(v if v < i else v - 1 for v in mono.values),
        )
        fr = self.face_entry(cell, i)
        res = self._act(fr.cell, compose(fr.epi, mu2))
        return SimplexRef(compose(res.epi, epi), res.cell)

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        return self.apply(ref, face_op(ref.dim, i))

    def degenerate(self, ref: SimplexRef, i: int) -> SimplexRef:
        return self.apply(ref, degeneracy(ref.dim, i))

    def simplices(self, dim: int) -> list[SimplexRef]:
        """All dim-simplices, degenerate included, in canonical order.
        Empty below dimension 0; error above the truncation."""
        if dim < 0:
            return []
        if dim > self.truncation:
            raise TruncationError(
                f"dimension {dim} above truncation {self.truncation}"
            )
        out: list[SimplexRef] = []
        for m in range(dim + 1):
            for c in self._cells[m]:
                for epi in epis_onto(dim, m):
                    out.append(SimplexRef(epi, c))
        return out

    def cell_count(self, dim: int) -> int:
        return len(self.nondegenerate(dim))

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        cells = {str(d): list(self._cells[d]) for d in range(self.truncation + 1)}
        faces = {}
        for d in range(1, self.truncation + 1):
            for c in self._cells[d]:
                faces[c] = [r.to_json() for r in self._faces.get(c, ())]
        return {"truncation": self.truncation, "cells": cells, "faces": faces}

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict | str) -> "FinSSet":
        if isinstance(data, str):
            data = json.loads(data)
        truncation = data["truncation"]
        cells = {int(d): list(ids) for d, ids in data["cells"].items()}
        dim_of = {c: d for d, ids in cells.items() for c in ids}
        faces = {}
        for c, entries in data.get("faces", {}).items():
            out = []
            for e in entries:
                vals = tuple(e["epi"])
                # Unknown cells get the smallest consistent arity so the
                # breakage surfaces in validate() instead of here.
                target = dim_of.get(e["cell"], max(vals, default=0))
                out.append(SimplexRef(MonotoneMap(len(vals) - 1, target, vals), e["cell"]))
            faces[c] = tuple(out)
        return cls(truncation, cells, faces)


def face_op(n: int, i: int) -> MonotoneMap:
    return face(n, i)


def empty_sset(truncation: int = 0) -> FinSSet:
    return FinSSet(truncation, {}, {})


def point(label: str = "pt", truncation: int = 0) -> FinSSet:
    return FinSSet(truncation, {0: [label]}, {})


def truncate(x: FinSSet, t: int) -> FinSSet:
    """Forget every cell above dimension t."""
    if t > x.truncation:
        raise TruncationError(f"cannot extend truncation {x.truncation} to {t}")
    cells = {d: x.nondegenerate(d) for d in range(t + 1)}
    faces = {
        c: x.face_entries(c) for d in range(1, t + 1) for c in cells[d]
    }
    return FinSSet(t, cells, faces)


# -- standard simplices, boundaries, horns ----------------------------


def simplex_cell_id(values: Iterable[int]) -> str:
    return "-".join(str(v) for v in values)


def standard_simplex(n: int, truncation: int | None = None) -> FinSSet:
    """The n-simplex: nondegenerate m-cells are the injections [m] -> [n]."""
    if truncation is None:
        truncation = n
    if truncation < n:
        raise TruncationError("truncation below the top cell")
    import itertools

    cells: dict[int, list[str]] = {d: [] for d in range(truncation + 1)}
    faces: dict[str, list[SimplexRef]] = {}
    for m in range(n + 1):
        for vals in itertools.combinations(range(n + 1), m + 1):
            cid = simplex_cell_id(vals)
            cells[m].append(cid)
            if m >= 1:
                faces[cid] = [
                    nondeg_ref(
                        simplex_cell_id(vals[:i] + vals[i + 1 :]), m - 1
                    )
                    for i in range(m + 1)
                ]
    return FinSSet(truncation, cells, faces)


def _simplex_subcomplex(n: int, keep: Callable[[tuple[int, ...]], bool]) -> FinSSet:
    # truncated at the ambient n, so missing-filler questions stay posable
    import itertools

    cells: dict[int, list[str]] = {}
    faces: dict[str, list[SimplexRef]] = {}
    for m in range(n + 1):
        for vals in itertools.combinations(range(n + 1), m + 1):
            if not keep(vals):
                continue
            cid = simplex_cell_id(vals)
            cells.setdefault(m, []).append(cid)
            if m >= 1:
                faces[cid] = [
                    nondeg_ref(simplex_cell_id(vals[:i] + vals[i + 1 :]), m - 1)
                    for i in range(m + 1)
                ]
    return FinSSet(n, cells, faces)


def boundary(n: int) -> FinSSet:
    """The boundary of the n-simplex: all proper faces."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    return _simplex_subcomplex(n, lambda vals: len(vals) <= n)


def horn(n: int, i: int) -> FinSSet:
    """The horn: the boundary minus the face opposite vertex i."""
    if not (0 <= i <= n) or n < 1:
        raise ValueError(f"no horn ({n}, {i})")
    opposite = tuple(v for v in range(n + 1) if v != i)
    return _simplex_subcomplex(
        n, lambda vals: len(vals) <= n and vals != opposite
    )


# -- maps -------------------------------------------------------------


class SimplicialMap:
    """A map of simplicial sets, stored on nondegenerate source cells.

    ``assignment[c]`` is the normal-form image of the cell c; images of
    degenerate simplices follow by naturality through :meth:`image`.
    """

    def __init__(self, source: FinSSet, target: FinSSet, assignment: Mapping[str, SimplexRef]):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)

    def image(self, ref: SimplexRef) -> SimplexRef:
        if ref.cell not in self.assignment:
            raise UnknownCellError(ref.cell)
        return self.target.apply(self.assignment[ref.cell], ref.epi)

    def vertex_image(self, cell: str) -> str:
        return self.assignment[cell].cell

    def compose_with(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        assignment = {
            c: self.image(r) for c, r in other.assignment.items()
        }
        return SimplicialMap(other.source, self.target, assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source is other.source or self.source.to_json() == other.source.to_json()
        ) and self.assignment == other.assignment

    def __hash__(self):
        return hash(tuple(sorted((c, r.sort_key()) for c, r in self.assignment.items())))


def identity_map(x: FinSSet) -> SimplicialMap:
    assignment = {}
    for d in range(x.truncation + 1):
        for c in x.nondegenerate(d):
            assignment[c] = nondeg_ref(c, d)
    return SimplicialMap(x, x, assignment)


def standard_map(alpha: MonotoneMap, source: FinSSet | None = None, target: FinSSet | None = None) -> SimplicialMap:
    """The map of standard simplices induced by alpha: [m] -> [n]."""
    import itertools

    m, n = alpha.source_arity, alpha.target_arity
    src = source if source is not None else standard_simplex(m)
    tgt = target if target is not None else standard_simplex(n)
    assignment = {}
    for d in range(m + 1):
        for vals in itertools.combinations(range(m + 1), d + 1):
            composite = tuple(alpha.values[v] for v in vals)
            epi, mono = epi_mono_factor(
                MonotoneMap(d, n, composite)
            )
            assignment[simplex_cell_id(vals)] = SimplexRef(
                epi, simplex_cell_id(mono.values)
            )
    return SimplicialMap(src, tgt, assignment)


# -- validation -------------------------------------------------------


def validate(x: FinSSet) -> ValidationReport:
    """Reference integrity, dimension bookkeeping, simplicial identities."""
    report = ValidationReport("FinSSet")
    seen: dict[str, int] = {}
    for d in range(x.truncation + 1):
        for c in x.nondegenerate(d):
            if c in seen:
                report.problems.append(
                    f"cell {c!r} listed in dimensions {seen[c]} and {d}"
                )
            seen[c] = d
    for d in range(x.truncation + 1):
        for c in x.nondegenerate(d):
            entries = x.face_entries(c)
            if d == 0:
                if entries:
                    report.problems.append(f"vertex {c!r} has face entries")
                continue
            if len(entries) != d + 1:
                report.problems.append(
                    f"cell {c!r} of dimension {d} has {len(entries)} faces, "
                    f"expected {d + 1}"
                )
                continue
            for i, r in enumerate(entries):
                if not x.has_cell(r.cell):
                    report.problems.append(
                        f"cell {c!r}: face {i} references unknown cell {r.cell!r}"
                    )
                    continue
                if r.epi.source_arity != d - 1:
                    report.problems.append(
                        f"cell {c!r}: face {i} has arity {r.epi.source_arity}, "
                        f"expected {d - 1}"
                    )
                    continue
                if r.epi.target_arity != x.dim_of(r.cell):
                    report.problems.append(
                        f"cell {c!r}: face {i} epi lands in [{r.epi.target_arity}] "
                        f"but cell {r.cell!r} has dimension {x.dim_of(r.cell)}"
                    )
                    continue
                if not r.epi.is_surjective:
                    report.problems.append(
                        f"cell {c!r}: face {i} reindexing map is not surjective"
                    )
                if r.cell == c:
                    report.problems.append(
                        f"cell {c!r}: face {i} references the cell itself"
                    )
    if report.problems:
        return report
    # d_i d_j = d_{j-1} d_i for i < j, on every nondegenerate cell.
    for d in range(2, x.truncation + 1):
        for c in x.nondegenerate(d):
            top = nondeg_ref(c, d)
            for j in range(1, d + 1):
                for i in range(j):
                    try:
                        lhs = x.apply(x.apply(top, face(d, j)), face(d - 1, i))
                        rhs = x.apply(x.apply(top, face(d, i)), face(d - 1, j - 1))
                    except (UnknownCellError, ArityError) as exc:
                        report.problems.append(
                            f"cell {c!r}: faces (d{i}, d{j}) not computable: {exc}"
                        )
                        continue
                    if lhs != rhs:
                        report.problems.append(
                            f"cell {c!r}: identity d{i} d{j} = d{j - 1} d{i} "
                            f"fails: {lhs.cell!r}.{lhs.epi.values} != "
                            f"{rhs.cell!r}.{rhs.epi.values}"
                        )
    return report


def validate_map(f: SimplicialMap) -> ValidationReport:
    """Checks the assignment commutes with faces up to the common truncation."""
    report = ValidationReport("SimplicialMap")
    bound = min(f.source.truncation, f.target.truncation)
    for d in range(bound + 1):
        for c in f.source.nondegenerate(d):
            if c not in f.assignment:
                report.problems.append(f"cell {c!r} has no image")
                continue
            img = f.assignment[c]
            if img.dim != d:
                report.problems.append(
                    f"cell {c!r} of dimension {d} mapped to a {img.dim}-simplex"
                )
                continue
            if not f.target.has_cell(img.cell):
                report.problems.append(
                    f"cell {c!r} mapped to unknown cell {img.cell!r}"
                )
    if report.problems:
        return report
    for d in range(1, bound + 1):
        for c in f.source.nondegenerate(d):
            for i in range(d + 1):
                lhs = f.target.apply(f.assignment[c], face(d, i))
                src_face = f.source.face_entry(c, i)
                rhs = f.image(src_face)
                if lhs != rhs:
                    report.problems.append(
                        f"cell {c!r}: face {i} not preserved: "
                        f"{lhs.cell!r}.{lhs.epi.values} != {rhs.cell!r}.{rhs.epi.values}"
                    )
    return report


# -- bilevel maps -----------------------------------------------------


class BilevelMap:
    """A levelwise map X_k x Y_k -> Z_k commuting with simultaneous
    operators.  Stored as a function on normal-form pairs; use
    :func:`validate_bilevel` to check the commutation on a range."""

    def __init__(self, x: FinSSet, y: FinSSet, target: FinSSet,
                 fn: Callable[[int, SimplexRef, SimplexRef], SimplexRef]):
        self.x = x
        self.y = y
        self.target = target
        self.fn = fn

    def apply(self, level: int, a: SimplexRef, b: SimplexRef) -> SimplexRef:
        if a.dim != level or b.dim != level:
            raise ArityError(
                f"level {level} application to dims {a.dim}, {b.dim}"
            )
        return self.fn(level, a, b)

    def level_table(self, level: int) -> list[tuple[SimplexRef, SimplexRef, SimplexRef]]:
        return [
            (a, b, self.apply(level, a, b))
            for a in self.x.simplices(level)
            for b in self.y.simplices(level)
        ]


def validate_bilevel(bm: BilevelMap, max_dim: int) -> ValidationReport:
    report = ValidationReport("BilevelMap")
    bound = min(max_dim, bm.x.truncation, bm.y.truncation, bm.target.truncation)
    for k in range(bound + 1):
        pairs = [(a, b) for a in bm.x.simplices(k) for b in bm.y.simplices(k)]
        ops: list[MonotoneMap] = []
        if k >= 1:
            ops.extend(face(k, i) for i in range(k + 1))
        if k + 1 <= bound:
            ops.extend(degeneracy(k, i) for i in range(k + 1))
        for a, b in pairs:
            out = bm.apply(k, a, b)
            for op in ops:
                lhs = bm.target.apply(out, op)
                rhs = bm.apply(
                    op.source_arity, bm.x.apply(a, op), bm.y.apply(b, op)
                )
                if lhs != rhs:
                    report.problems.append(
                        f"level {k}: operator {op.values} not respected at "
                        f"({a.cell!r}.{a.epi.values}, {b.cell!r}.{b.epi.values})"
                    )
    return report


# -- materializing an abstract presheaf ------------------------------


def materialize_presheaf(levels, act, id_fn):
    """Build a FinSSet from levelwise values and an operator action.

    ``levels[n]`` lists hashable values for the n-simplices; ``act(v, a)``
    applies a monotone operator; ``id_fn(n, v)`` names nondegenerate
    values.  Degeneracy of v is detected by v == (v . d_i) . s_i, and the
    normal form accumulates the collapsing surjection.  Returns the
    simplicial set plus both directions of the value dictionary.
    """
    top = len(levels) - 1
    cells: dict[int, list[str]] = {d: [] for d in range(top + 1)}
    faces: dict[str, list[SimplexRef]] = {}
    normal: dict = {}
    value_of: dict[str, object] = {}
    for n, vals in enumerate(levels):
        for v in vals:
            if v in normal:
                continue
            ref = None
            for i in range(n):
                dropped = act(v, face(n, i))
                if act(dropped, degeneracy(n - 1, i)) == v:
                    base = normal[dropped]
                    ref = SimplexRef(
                        compose(base.epi, degeneracy(n - 1, i)), base.cell
                    )
                    break
            if ref is None:
                cid = id_fn(n, v)
                cells[n].append(cid)
                value_of[cid] = v
                ref = nondeg_ref(cid, n)
            normal[v] = ref
    for n in range(1, top + 1):
        for cid in cells[n]:
            v = value_of[cid]
            faces[cid] = [normal[act(v, face(n, i))] for i in range(n + 1)]
    return FinSSet(top, cells, faces), value_of, normal


# -- isomorphism search ----------------------------------------------


def _occurrence_profile(x: FinSSet, dim_cap: int) -> dict[str, tuple]:
    """A cheap iso-invariant per cell: how the cell is cited by higher
    face tables, by (citing dimension, face index, reindexing)."""
    from collections import Counter

    cnt: dict[str, Counter] = {c: Counter() for d in range(dim_cap + 1)
                               for c in x.nondegenerate(d)}
    for d in range(1, dim_cap + 1):
        for c in x.nondegenerate(d):
            for i, r in enumerate(x.face_entries(c)):
                if r.cell in cnt:
                    cnt[r.cell][(d, i, r.epi.values)] += 1
    return {c: tuple(sorted(counter.items())) for c, counter in cnt.items()}


def iso_search(x: FinSSet, y: FinSSet, dim_cap: int) -> SimplicialMap | None:
    """Backtracking search for an isomorphism on nondegenerate cells up
    to dim_cap.  Returns the map, or None once the search is exhausted."""
    dim_cap = min(dim_cap, x.truncation, y.truncation)
    for d in range(dim_cap + 1):
        if len(x.nondegenerate(d)) != len(y.nondegenerate(d)):
            return None
    px = _occurrence_profile(x, dim_cap)
    py = _occurrence_profile(y, dim_cap)
    buckets: dict[tuple, list[str]] = {}
    for d in range(dim_cap + 1):
        for c in y.nondegenerate(d):
            buckets.setdefault((d, py[c]), []).append(c)
    order = [
        (d, c) for d in range(dim_cap + 1) for c in x.nondegenerate(d)
    ]
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def mapped_faces(c: str) -> tuple | None:
        out = []
        for r in x.face_entries(c):
            if r.cell not in mapping:
                return None
            out.append((r.epi.values, mapping[r.cell]))
        return tuple(out)

    def candidates(d: int, c: str) -> list[str]:
        pool = buckets.get((d, px[c]), [])
        want = mapped_faces(c) if d >= 1 else None
        out = []
        for yc in pool:
            if yc in used:
                continue
            if d >= 1:
                got = tuple(
                    (r.epi.values, r.cell) for r in y.face_entries(yc)
                )
                if got != want:
                    continue
            out.append(yc)
        return out

    def assign(k: int) -> bool:
        if k == len(order):
            return True
        d, c = order[k]
        for yc in candidates(d, c):
            mapping[c] = yc
            used.add(yc)
            if assign(k + 1):
                return True
            del mapping[c]
            used.discard(yc)
        return False

    if not assign(0):
        return None
    assignment = {c: nondeg_ref(yc, x.dim_of(c)) for c, yc in mapping.items()}
    return SimplicialMap(x, y, assignment)

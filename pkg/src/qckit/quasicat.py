"""Horn filling, invertible edges, the core, and homotopy invariants.

Everything here is exhaustive search over a finite truncated simplicial
set: horn problems are enumerated with pairwise face compatibility as
the constraint, fillers are looked up through face indexes, and edge
invertibility asks for a single two-sided witness pair sharing one
candidate inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ordinals import all_monos, degeneracy, face
from .sset import (
    FinSSet,
    SimplexRef,
    SimplicialMap,
    TruncationError,
    ValidationReport,
    nondeg_ref,
)


@dataclass(frozen=True)
class HornProblem:
    """Faces of a hoped-for dim-simplex, all except index ``missing``."""

    dim: int
    missing: int
    faces: tuple

    def __post_init__(self):
        if not 0 <= self.missing <= self.dim:
            raise ValueError("missing face index out of range")
        if len(self.faces) != self.dim + 1:
            raise ValueError("need one slot per face")
        if self.faces[self.missing] is not None:
            raise ValueError("the missing face must be left as None")

    @property
    def is_inner(self) -> bool:
        return 0 < self.missing < self.dim


def horn_compatibility(x: FinSSet, p: HornProblem) -> ValidationReport:
    """Pairwise face agreement: face j of face j' must equal face j'-1
    of face j whenever both are given."""
    report = ValidationReport(f"horn({p.dim},{p.missing}) compatibility")
    n = p.dim
    for j in range(n + 1):
        for jp in range(j + 1, n + 1):
            if j == p.missing or jp == p.missing:
                continue
            lhs = x.apply(p.faces[jp], face(n - 1, j))
            rhs = x.apply(p.faces[j], face(n - 1, jp - 1))
            if lhs != rhs:
                report.problems.append(
                    f"faces {j} and {jp} disagree: "
                    f"{lhs.sort_key()} vs {rhs.sort_key()}"
                )
    return report


def _face_index(x: FinSSet, n: int) -> dict:
    """(face position, face value) -> simplices of level n."""
    idx: dict[tuple, list[SimplexRef]] = {}
    for s in x.simplices(n):
        for i in range(n + 1):
            idx.setdefault((i, x.apply(s, face(n, i))), []).append(s)
    return idx


def find_filler(x: FinSSet, p: HornProblem, _index: dict | None = None):
    """A simplex matching every given face, or None."""
    n = p.dim
    if n > x.truncation:
        raise TruncationError(
            f"fillers at dimension {n} exceed truncation {x.truncation}"
        )
    idx = _face_index(x, n) if _index is None else _index
    j0 = 0 if p.missing != 0 else 1
    for s in idx.get((j0, p.faces[j0]), ()):
        if all(
            i == p.missing or x.apply(s, face(n, i)) == p.faces[i]
            for i in range(n + 1)
        ):
            return s
    return None


def horn_problems(x: FinSSet, n: int, k: int):
    """All compatible horn problems of this shape, by backtracking over
    the face slots with the simplicial identities as constraints."""
    candidates = x.simplices(n - 1)
    by_face: dict[tuple, list[SimplexRef]] = {}
    for s in candidates:
        for i in range(n):
            by_face.setdefault((i, x.apply(s, face(n - 1, i))), []).append(s)
    slots = [i for i in range(n + 1) if i != k]
    chosen: dict[int, SimplexRef] = {}

    def fill(t: int):
        if t == len(slots):
            faces = tuple(chosen.get(i) for i in range(n + 1))
            yield HornProblem(n, k, faces)
            return
        i = slots[t]
        prior = [j for j in slots[:t]]
        if prior:
            j = prior[0]
            pool = by_face.get((j, x.apply(chosen[j], face(n - 1, i - 1))), ())
        else:
            pool = candidates
        for cand in pool:
            if all(
                x.apply(cand, face(n - 1, j)) ==
                x.apply(chosen[j], face(n - 1, i - 1))
                for j in prior
            ):
                chosen[i] = cand
                yield from fill(t + 1)
                del chosen[i]

    yield from fill(0)


def _filler_survey(x: FinSSet, max_dim: int, inner_only: bool) -> ValidationReport:
    kind = "inner horns" if inner_only else "horns"
    report = ValidationReport(f"{kind} up to dimension {max_dim}")
    if max_dim > x.truncation:
        raise TruncationError(
            f"cannot check dimension {max_dim} at truncation {x.truncation}"
        )
    for n in range(2, max_dim + 1):
        idx = _face_index(x, n)
        ks = range(1, n) if inner_only else range(n + 1)
        for k in ks:
            unfilled = 0
            first = None
            for p in horn_problems(x, n, k):
                if find_filler(x, p, idx) is None:
                    unfilled += 1
                    if first is None:
                        first = p
            if unfilled:
                shown = tuple(
                    None if f is None else f.sort_key() for f in first.faces
                )
                report.problems.append(
                    f"{unfilled} unfillable ({n},{k})-horns, first {shown}"
                )
    return report


def is_quasicategory_up_to(x: FinSSet, max_dim: int) -> ValidationReport:
    """Every compatible inner horn up to max_dim admits a filler."""
    return _filler_survey(x, max_dim, inner_only=True)


def is_kan_up_to(x: FinSSet, max_dim: int) -> ValidationReport:
    """Every compatible horn, outer ones included, admits a filler."""
    return _filler_survey(x, max_dim, inner_only=False)


# -- invertible edges and the core ------------------------------------


def _triangle_index(x: FinSSet) -> dict:
    """(long edge 02 side witness) lookup: (d2, d1) -> set of d0."""
    idx: dict[tuple, set] = {}
    if x.truncation < 2:
        return idx
    for s in x.simplices(2):
        d0 = x.apply(s, face(2, 0))
        d1 = x.apply(s, face(2, 1))
        d2 = x.apply(s, face(2, 2))
        idx.setdefault((d2, d1), set()).add(d0)
    return idx


def is_invertible_edge(x: FinSSet, e: SimplexRef, _index=None) -> bool:
    """One candidate inverse g must witness both composites: a triangle
    g . e = identity at the source and a triangle e . g = identity at
    the target.  Degenerate edges carry their doubly degenerate witness
    in any simplicial set."""
    if e.dim != 1:
        raise ValueError("invertibility applies to edges")
    if e.is_degenerate:
        return True
    idx = _triangle_index(x) if _index is None else _index
    src = x.apply(e, face(1, 1))
    tgt = x.apply(e, face(1, 0))
    id_src = x.apply(src, degeneracy(0, 0))
    id_tgt = x.apply(tgt, degeneracy(0, 0))
    for g in idx.get((e, id_src), ()):
        if e in idx.get((g, id_tgt), ()):
            return True
    return False


def invertible_edge_cells(x: FinSSet) -> tuple[str, ...]:
    if x.truncation < 1:
        return ()
    idx = _triangle_index(x)
    return tuple(
        c for c in x.nondegenerate(1)
        if is_invertible_edge(x, nondeg_ref(c, 1), idx)
    )


@dataclass
class CoreResult:
    sset: FinSSet
    inclusion: SimplicialMap
    invertible_edges: tuple[str, ...]


def core(x: FinSSet) -> CoreResult:
    """The largest subcomplex all of whose edges are invertible."""
    good = set(invertible_edge_cells(x))

    def keep(c: str, d: int) -> bool:
        if d == 0:
            return True
        ref = nondeg_ref(c, d)
        for mono in all_monos(1, d):
            edge = x.apply(ref, mono)
            if not edge.is_degenerate and edge.cell not in good:
                return False
        return True

    cells = {
        d: tuple(c for c in x.nondegenerate(d) if keep(c, d))
        for d in range(x.truncation + 1)
    }
    faces = {
        c: x.face_entries(c)
        for d in range(1, x.truncation + 1)
        for c in cells[d]
    }
    sub = FinSSet(x.truncation, cells, faces)
    incl = SimplicialMap(
        sub, x,
        {c: nondeg_ref(c, d) for d in range(x.truncation + 1)
         for c in cells[d]},
    )
    return CoreResult(sub, incl, tuple(sorted(good)))


# -- path components and the fundamental group ------------------------


def pi0(x: FinSSet) -> tuple[tuple[str, ...], ...]:
    """Vertex components under zigzags of edges."""
    parent = {v: v for v in x.nondegenerate(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if x.truncation >= 1:
        for e in x.nondegenerate(1):
            a = find(x.apply(nondeg_ref(e, 1), face(1, 1)).cell)
            b = find(x.apply(nondeg_ref(e, 1), face(1, 0)).cell)
            if a != b:
                parent[a] = b
    comps: dict[str, list[str]] = {}
    for v in parent:
        comps.setdefault(find(v), []).append(v)
    return tuple(sorted(tuple(sorted(vs)) for vs in comps.values()))


@dataclass
class Pi1Result:
    """Loop classes at a basepoint with their composition table.

    ``table[i, j]`` is the class of (representative of i) composed after
    (representative of j); ``problems`` collects every failure of the
    group laws, so ``ok`` means the table is a genuine group."""

    basepoint: str
    classes: tuple[tuple[SimplexRef, ...], ...]
    identity: int
    table: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def order(self) -> int:
        return len(self.classes)


def pi1(x: FinSSet, basepoint: str) -> Pi1Result:
    """Loops at the basepoint modulo triangles with a degenerate leg,
    multiplied through triangle fillers.  Trustworthy when the relevant
    horns fill (the problems list says when they do not)."""
    if x.truncation < 2:
        raise TruncationError("fundamental group needs 2-simplices")
    b = nondeg_ref(basepoint, 0)
    id_b = x.apply(b, degeneracy(0, 0))
    loops = [
        r for r in x.simplices(1)
        if x.apply(r, face(1, 0)) == b and x.apply(r, face(1, 1)) == b
    ]
    index = {r: i for i, r in enumerate(loops)}
    parent = list(range(len(loops)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    compose_at: dict[tuple, list] = {}
    for s in x.simplices(2):
        d0 = x.apply(s, face(2, 0))
        d1 = x.apply(s, face(2, 1))
        d2 = x.apply(s, face(2, 2))
        if d0 in index and d1 in index and d2 in index:
            compose_at.setdefault((d0, d2), []).append(d1)
            if d0 == id_b:
                union(index[d2], index[d1])
            if d2 == id_b:
                union(index[d0], index[d1])

    roots = sorted({find(i) for i in range(len(loops))},
                   key=lambda i: loops[i].sort_key())
    root_pos = {r: t for t, r in enumerate(roots)}
    classes = tuple(
        tuple(sorted((loops[i] for i in range(len(loops)) if find(i) == r),
                     key=SimplexRef.sort_key))
        for r in roots
    )
    result = Pi1Result(
        basepoint, classes, root_pos[find(index[id_b])]
    )

    for i, j in itertools.product(range(len(classes)), repeat=2):
        values = set()
        for e in classes[i]:
            for f in classes[j]:
                for g in compose_at.get((e, f), ()):
                    values.add(root_pos[find(index[g])])
        if not values:
            result.problems.append(f"no composite for classes ({i}, {j})")
        elif len(values) > 1:
            result.problems.append(
                f"composite of classes ({i}, {j}) ambiguous: {sorted(values)}"
            )
        else:
            result.table[i, j] = values.pop()

    if result.ok:
        n = len(classes)
        e = result.identity
        for i in range(n):
            if result.table[e, i] != i or result.table[i, e] != i:
                result.problems.append(f"identity fails at class {i}")
            if not any(
                result.table[i, j] == e and result.table[j, i] == e
                for j in range(n)
            ):
                result.problems.append(f"no inverse for class {i}")
        for i, j, k in itertools.product(range(n), repeat=3):
            if result.table[result.table[i, j], k] != (
                result.table[i, result.table[j, k]]
            ):
                result.problems.append(
                    f"associativity fails at ({i}, {j}, {k})"
                )
                break
    return result


# -- small group tables -----------------------------------------------


def cyclic_table(n: int) -> dict:
    return {(i, j): (i + j) % n for i in range(n) for j in range(n)}


def tables_isomorphic(t1: dict, t2: dict) -> bool:
    """Brute force: meant for the small groups that arise here."""
    n1 = max(i for i, _ in t1) + 1 if t1 else 0
    n2 = max(i for i, _ in t2) + 1 if t2 else 0
    if len(t1) != n1 * n1 or len(t2) != n2 * n2:
        raise ValueError("tables must be total")
    if n1 != n2:
        return False
    for perm in itertools.permutations(range(n1)):
        if all(
            perm[t1[i, j]] == t2[perm[i], perm[j]]
            for i in range(n1) for j in range(n1)
        ):
            return True
    return False

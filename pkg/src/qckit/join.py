"""Joins of simplicial sets, slice constructions, and edge anatomy.

The join X * Y is presented cut by cut: a nondegenerate n-cell is either
a cell of X, a cell of Y, or a pair (a, b) with dim a + dim b = n - 1.
Faces act on the part the face index falls into, collapsing to the pure
part when a vertex-level cut closes.  The equivalent presentation by
triples (projection to the interval, left part, right part) is exposed
for cross-checking; the two are bijective level by level.

Slices are simplicial sets of anchored maps out of joins with a standard
simplex; the vertex-anchored under-slice has a fastpath through the cone
identification point * simplex = next simplex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordinals import MonotoneMap, epis_onto, face, identity
from .sset import (
    FinSSet,
    SimplexRef,
    SimplicialMap,
    TruncationError,
    UnknownCellError,
    identity_map,
    materialize_presheaf,
    nondeg_ref,
    simplex_cell_id,
    standard_map,
    standard_simplex,
)


def _left_id(a: str) -> str:
    return f"{a}|"


def _right_id(b: str) -> str:
    return f"|{b}"


def _pair_id(a: str, b: str) -> str:
    return f"{a}|{b}"


def _join_epi(e1: MonotoneMap, e2: MonotoneMap) -> MonotoneMap:
    """The epi acting on a pair cell: e1 on the left block, e2 shifted."""
    p2 = e1.target_arity
    values = e1.values + tuple(p2 + 1 + v for v in e2.values)
    return MonotoneMap(
        e1.source_arity + e2.source_arity + 1,
        p2 + e2.target_arity + 1,
        values,
    )


class JoinSSet(FinSSet):
    """A join with the part decomposition of every cell retained."""

    def __init__(self, truncation, cells, faces, parts, factors):
        super().__init__(truncation, cells, faces)
        self.parts: dict[str, tuple[str | None, str | None]] = parts
        self.factors: tuple[FinSSet, FinSSet] = factors


def join(x: FinSSet, y: FinSSet) -> JoinSSet:
    """The join, truncated at trunc(x) + trunc(y) + 1."""
    for s in (x, y):
        for d in range(s.truncation + 1):
            for c in s.nondegenerate(d):
                if "|" in c:
                    raise ValueError(
                        f"cell id {c!r} contains the join separator"
                    )
    trunc = x.truncation + y.truncation + 1
    cells: dict[int, list[str]] = {d: [] for d in range(trunc + 1)}
    faces: dict[str, list[SimplexRef]] = {}
    parts: dict[str, tuple[str | None, str | None]] = {}

    for d in range(x.truncation + 1):
        for a in x.nondegenerate(d):
            cid = _left_id(a)
            cells[d].append(cid)
            parts[cid] = (a, None)
            if d >= 1:
                faces[cid] = [
                    SimplexRef(r.epi, _left_id(r.cell))
                    for r in (x.face_entry(a, i) for i in range(d + 1))
                ]
    for d in range(y.truncation + 1):
        for b in y.nondegenerate(d):
            cid = _right_id(b)
            cells[d].append(cid)
            parts[cid] = (None, b)
            if d >= 1:
                faces[cid] = [
                    SimplexRef(r.epi, _right_id(r.cell))
                    for r in (y.face_entry(b, i) for i in range(d + 1))
                ]
    for p in range(x.truncation + 1):
        for q in range(y.truncation + 1):
            n = p + q + 1
            for a in x.nondegenerate(p):
                for b in y.nondegenerate(q):
                    cid = _pair_id(a, b)
                    cells[n].append(cid)
                    parts[cid] = (a, b)
                    entry = []
                    for i in range(n + 1):
                        if i <= p:
                            if p == 0:
                                entry.append(nondeg_ref(_right_id(b), q))
                            else:
                                r = x.face_entry(a, i)
                                entry.append(SimplexRef(
                                    _join_epi(r.epi, identity(q)),
                                    _pair_id(r.cell, b),
                                ))
                        else:
                            if q == 0:
                                entry.append(nondeg_ref(_left_id(a), p))
                            else:
                                r = y.face_entry(b, i - p - 1)
                                entry.append(SimplexRef(
                                    _join_epi(identity(p), r.epi),
                                    _pair_id(a, r.cell),
                                ))
                    faces[cid] = entry
    return JoinSSet(trunc, cells, faces, parts, (x, y))


def join_inclusions(j: JoinSSet) -> tuple[SimplicialMap, SimplicialMap]:
    """The two cofactor inclusions into the join."""
    x, y = j.factors
    left = {}
    for d in range(x.truncation + 1):
        for a in x.nondegenerate(d):
            left[a] = nondeg_ref(_left_id(a), d)
    right = {}
    for d in range(y.truncation + 1):
        for b in y.nondegenerate(d):
            right[b] = nondeg_ref(_right_id(b), d)
    return SimplicialMap(x, j, left), SimplicialMap(y, j, right)


def join_of_maps(f: SimplicialMap, g: SimplicialMap,
                 source: JoinSSet | None = None,
                 target: JoinSSet | None = None) -> SimplicialMap:
    """f * g between the joins, cut by cut."""
    src = source if source is not None else join(f.source, g.source)
    tgt = target if target is not None else join(f.target, g.target)
    assignment = {}
    for cid, (a, b) in src.parts.items():
        if b is None:
            r = f.assignment[a]
            assignment[cid] = SimplexRef(r.epi, _left_id(r.cell))
        elif a is None:
            r = g.assignment[b]
            assignment[cid] = SimplexRef(r.epi, _right_id(r.cell))
        else:
            ra = f.assignment[a]
            rb = g.assignment[b]
            assignment[cid] = SimplexRef(
                _join_epi(ra.epi, rb.epi), _pair_id(ra.cell, rb.cell)
            )
    return SimplicialMap(src, tgt, assignment)


# -- the triple presentation ------------------------------------------


@dataclass(frozen=True)
class JoinTriple:
    """Cut position together with the two restrictions.  ``cut`` is the
    last vertex mapped to the left end, -1 when everything lies right;
    a part at dimension -1 is None."""

    cut: int
    left: SimplexRef | None
    right: SimplexRef | None


def triple_from_join_simplex(j: JoinSSet, ref: SimplexRef) -> JoinTriple:
    a, b = j.parts[ref.cell]
    if b is None:
        return JoinTriple(ref.dim, SimplexRef(ref.epi, a), None)
    if a is None:
        return JoinTriple(-1, None, SimplexRef(ref.epi, b))
    p = j.factors[0].dim_of(a)
    n = ref.dim
    cut = max(v for v in range(n + 1) if ref.epi(v) <= p)
    left_epi = MonotoneMap(cut, p, ref.epi.values[: cut + 1])
    right_epi = MonotoneMap(
        n - cut - 1, j.factors[1].dim_of(b),
        tuple(v - p - 1 for v in ref.epi.values[cut + 1 :]),
    )
    return JoinTriple(cut, SimplexRef(left_epi, a), SimplexRef(right_epi, b))


def join_simplex_from_triple(j: JoinSSet, n: int, t: JoinTriple) -> SimplexRef:
    if t.cut == -1:
        return SimplexRef(t.right.epi, _right_id(t.right.cell))
    if t.cut == n:
        return SimplexRef(t.left.epi, _left_id(t.left.cell))
    return SimplexRef(
        _join_epi(t.left.epi, t.right.epi),
        _pair_id(t.left.cell, t.right.cell),
    )


def formal_simplices(x: FinSSet, d: int) -> list[SimplexRef]:
    """Level-d simplices of the degenerate extension: above the stored
    truncation these are surjections onto nondegenerate cells."""
    if d <= x.truncation:
        return x.simplices(d)
    out = []
    for m in range(x.truncation + 1):
        for c in x.nondegenerate(m):
            out.extend(SimplexRef(e, c) for e in epis_onto(d, m))
    return out


def enumerate_triples(x: FinSSet, y: FinSSet, n: int) -> list[JoinTriple]:
    """All (cut, left, right) triples at level n, the other presentation
    of the join; the empty set below dimension 0 contributes one part."""
    out = []
    for cut in range(-1, n + 1):
        lefts = [None] if cut == -1 else formal_simplices(x, cut)
        rights = [None] if cut == n else formal_simplices(y, n - cut - 1)
        for l in lefts:
            for r in rights:
                out.append(JoinTriple(cut, l, r))
    return out


def simplex_join_iso(k: int, l: int) -> SimplicialMap:
    """The canonical isomorphism simplex(k) * simplex(l) = simplex(k+1+l),
    vertex i on the left to i, vertex i on the right to k+1+i."""
    j = join(standard_simplex(k), standard_simplex(l))
    tgt = standard_simplex(k + 1 + l)
    assignment = {}
    for cid, (a, b) in j.parts.items():
        va = () if a is None else tuple(int(v) for v in a.split("-"))
        vb = () if b is None else tuple(k + 1 + int(v) for v in b.split("-"))
        assignment[cid] = nondeg_ref(simplex_cell_id(va + vb), len(va) + len(vb) - 1)
    return SimplicialMap(j, tgt, assignment)


# -- slices -----------------------------------------------------------


@dataclass
class SlicePresentation:
    base: FinSSet
    anchor: SimplicialMap
    side: str = "under"

    def __post_init__(self):
        if self.side not in ("under", "over"):
            raise ValueError(f"side must be 'under' or 'over', got {self.side!r}")


def vertex_anchor(base: FinSSet, vertex: str) -> SimplicialMap:
    from .sset import point

    if not base.has_cell(vertex) or base.dim_of(vertex) != 0:
        raise UnknownCellError(f"anchor vertex {vertex!r} is not a vertex")
    k = point("pt")
    return SimplicialMap(k, base, {"pt": nondeg_ref(vertex, 0)})


class SliceSSet(FinSSet):
    """Slice cells are anchored maps; the assignment of each nondegenerate
    cell is retained for projections and anatomy."""

    def __init__(self, truncation, cells, faces, cell_assignments, presentation,
                 shapes):
        super().__init__(truncation, cells, faces)
        self.cell_assignments: dict[str, tuple] = cell_assignments
        self.presentation: SlicePresentation = presentation
        self.shapes: list[JoinSSet] = shapes

    def cell_map(self, cell: str) -> SimplicialMap:
        n = self.dim_of(cell)
        return SimplicialMap(
            self.shapes[n], self.presentation.base,
            dict(self.cell_assignments[cell]),
        )


def _enumerate_anchored_maps(shape: JoinSSet, base: FinSSet, fixed: dict) -> list[tuple]:
    """All simplicial maps shape -> base extending the fixed assignment,
    as canonical sorted assignment tuples.  Backtracking by dimension with
    face-profile buckets over the base."""
    order = [
        (d, c)
        for d in range(shape.truncation + 1)
        for c in shape.nondegenerate(d)
        if c not in fixed
    ]
    buckets: dict[int, dict[tuple, list[SimplexRef]]] = {}

    def bucket(d: int) -> dict[tuple, list[SimplexRef]]:
        if d not in buckets:
            table: dict[tuple, list[SimplexRef]] = {}
            for s in base.simplices(d):
                key = tuple(base.apply(s, face(d, i)) for i in range(d + 1)) if d else ()
                table.setdefault(key, []).append(s)
            buckets[d] = table
        return buckets[d]

    assignment = dict(fixed)
    results: list[tuple] = []

    def image_of(ref: SimplexRef) -> SimplexRef:
        return base.apply(assignment[ref.cell], ref.epi)

    def fill(k: int) -> None:
        if k == len(order):
            results.append(tuple(sorted(assignment.items())))
            return
        d, c = order[k]
        if d == 0:
            pool = base.simplices(0)
        else:
            key = tuple(image_of(shape.face_entry(c, i)) for i in range(d + 1))
            pool = bucket(d).get(key, [])
        for cand in pool:
            assignment[c] = cand
            fill(k + 1)
            del assignment[c]

    fill(0)
    return results


def slice_sset(pres: SlicePresentation, dim: int) -> SliceSSet:
    """The slice as a simplicial set of anchored maps out of joins.

    Under side: cells at level n are maps K * simplex(n) -> base that
    restrict to the anchor on K; over side puts K on the right.  The
    truncation of the base must reach dim + trunc(K) + 1.
    """
    k_set = pres.anchor.source
    need = dim + k_set.truncation + 1
    if need > pres.base.truncation:
        raise TruncationError(
            f"slice dimension {dim} needs base truncation {need}, "
            f"have {pres.base.truncation}"
        )
    under = pres.side == "under"
    shapes: list[JoinSSet] = []
    for n in range(dim + 1):
        sx = standard_simplex(n)
        shapes.append(join(k_set, sx) if under else join(sx, k_set))

    def fixed_for(n: int) -> dict:
        out = {}
        for d in range(k_set.truncation + 1):
            for c in k_set.nondegenerate(d):
                jid = _left_id(c) if under else _right_id(c)
                out[jid] = pres.anchor.assignment[c]
        return out

    levels = [
        _enumerate_anchored_maps(shapes[n], pres.base, fixed_for(n))
        for n in range(dim + 1)
    ]

    def act(value: tuple, alpha: MonotoneMap) -> tuple:
        n = alpha.target_arity
        l = alpha.source_arity
        amap = standard_map(alpha)
        jm = (
            join_of_maps(identity_map(k_set), amap, shapes[l], shapes[n])
            if under
            else join_of_maps(amap, identity_map(k_set), shapes[l], shapes[n])
        )
        table = dict(value)
        out = []
        for d in range(shapes[l].truncation + 1):
            for c in shapes[l].nondegenerate(d):
                r = jm.assignment[c]
                out.append((c, pres.base.apply(table[r.cell], r.epi)))
        return tuple(sorted(out))

    counter = [0]

    def id_fn(n: int, value: tuple) -> str:
        counter[0] += 1
        return f"m{n}_{counter[0] - 1}"

    built, value_of, _ = materialize_presheaf(levels, act, id_fn)
    return SliceSSet(
        built.truncation,
        {d: built.nondegenerate(d) for d in range(built.truncation + 1)},
        {c: built.face_entries(c)
         for d in range(1, built.truncation + 1)
         for c in built.nondegenerate(d)},
        {c: v for c, v in value_of.items()},
        pres,
        shapes,
    )


def slice_projection(s: SliceSSet) -> SimplicialMap:
    """Restriction to the simplex factor: the forgetful map to the base."""
    under = s.presentation.side == "under"
    assignment = {}
    for d in range(s.truncation + 1):
        top = simplex_cell_id(range(d + 1))
        jid = _right_id(top) if under else _left_id(top)
        for c in s.nondegenerate(d):
            table = dict(s.cell_assignments[c])
            assignment[c] = table[jid]
    return SimplicialMap(s, s.presentation.base, assignment)


# -- the vertex-anchored coslice fastpath -----------------------------


def cone_operator(alpha: MonotoneMap) -> MonotoneMap:
    """[l+1] -> [n+1] fixing 0 and acting as alpha above it."""
    return MonotoneMap(
        alpha.source_arity + 1,
        alpha.target_arity + 1,
        (0,) + tuple(v + 1 for v in alpha.values),
    )


class CosliceSSet(FinSSet):
    """Vertex coslice via the cone identification: an n-cell is an
    (n+1)-simplex of the base starting at the anchor vertex."""

    def __init__(self, truncation, cells, faces, underlying, base, at):
        super().__init__(truncation, cells, faces)
        self.underlying: dict[str, SimplexRef] = underlying
        self.base: FinSSet = base
        self.at: str = at

    def underlying_ref(self, ref: SimplexRef) -> SimplexRef:
        """The base simplex beneath any coslice simplex."""
        u = self.underlying[ref.cell]
        return self.base.apply(u, cone_operator(ref.epi))


def first_vertex(base: FinSSet, ref: SimplexRef) -> str:
    return base.apply(ref, MonotoneMap(0, ref.dim, (0,))).cell


def coslice_fastpath(base: FinSSet, vertex: str, dim: int) -> CosliceSSet:
    """The under-slice at a vertex, one dimension shift down the base."""
    if dim + 1 > base.truncation:
        raise TruncationError(
            f"coslice dimension {dim} needs base truncation {dim + 1}, "
            f"have {base.truncation}"
        )
    if not base.has_cell(vertex) or base.dim_of(vertex) != 0:
        raise UnknownCellError(f"{vertex!r} is not a vertex")
    levels = [
        [s for s in base.simplices(n + 1) if first_vertex(base, s) == vertex]
        for n in range(dim + 1)
    ]

    def act(value: SimplexRef, alpha: MonotoneMap) -> SimplexRef:
        return base.apply(value, cone_operator(alpha))

    def id_fn(n: int, value: SimplexRef) -> str:
        if value.epi.is_identity:
            return f"c:{value.cell}"
        return f"c:s0:{value.cell}"

    built, value_of, _ = materialize_presheaf(levels, act, id_fn)
    return CosliceSSet(
        built.truncation,
        {d: built.nondegenerate(d) for d in range(built.truncation + 1)},
        {c: built.face_entries(c)
         for d in range(1, built.truncation + 1)
         for c in built.nondegenerate(d)},
        dict(value_of),
        base,
        vertex,
    )


def coslice_projection(c: CosliceSSet) -> SimplicialMap:
    """Forgets the anchor leg: an n-cell goes to the face of its
    underlying simplex opposite the cone vertex."""
    assignment = {}
    for d in range(c.truncation + 1):
        for cell in c.nondegenerate(d):
            assignment[cell] = c.base.apply(c.underlying[cell], face(d + 1, 0))
    return SimplicialMap(c, c.base, assignment)


def cross_validate_coslice(base: FinSSet, vertex: str, dim: int):
    """Checks the fastpath against the generic slice cell for cell.

    Returns (report, fastpath, generic).  The correspondence sends an
    anchored map to the image of its top join cell.
    """
    from .sset import ValidationReport

    report = ValidationReport("coslice cross-validation")
    fast = coslice_fastpath(base, vertex, dim)
    pres = SlicePresentation(base, vertex_anchor(base, vertex), "under")
    generic = slice_sset(pres, dim)
    for n in range(dim + 1):
        fast_cells = {}
        for c in fast.nondegenerate(n):
            fast_cells.setdefault(fast.underlying[c], c)
        gen_cells = {}
        for c in generic.nondegenerate(n):
            table = dict(generic.cell_assignments[c])
            top = table[_pair_id("pt", simplex_cell_id(range(n + 1)))]
            gen_cells.setdefault(top, c)
        if set(fast_cells) != set(gen_cells):
            report.problems.append(
                f"level {n}: top-cell images differ: "
                f"{sorted(r.sort_key() for r in fast_cells)} vs "
                f"{sorted(r.sort_key() for r in gen_cells)}"
            )
            continue
        if len(gen_cells) != generic.cell_count(n):
            report.problems.append(
                f"level {n}: generic slice cells not determined by top cell"
            )
        for key, fc in fast_cells.items():
            gc = gen_cells[key]
            for i in range(n + 1) if n >= 1 else ():
                fr = fast.face_entry(fc, i)
                gr = generic.face_entry(gc, i)
                m = gr.epi.target_arity
                top_image = dict(generic.cell_assignments[gr.cell])[
                    _pair_id("pt", simplex_cell_id(range(m + 1)))
                ]
                if fast.underlying_ref(fr) != base.apply(
                    top_image, cone_operator(gr.epi)
                ):
                    report.problems.append(
                        f"level {n}: face {i} disagrees at {fc!r} / {gc!r}"
                    )
    return report, fast, generic


def coslice_edge_anatomy(coslice: CosliceSSet, nerve_sset, edge: SimplexRef):
    """Decomposes a coslice edge over a coherent nerve into its triangle
    data (two sources, a composite target, and the connecting path), and
    checks the data reassembles the underlying 2-cell."""
    from .scat import classification_to_functor, functor_to_classification

    if edge.dim != 1:
        raise ValueError("anatomy applies to coslice edges")
    two = coslice.underlying_ref(edge)
    f = nerve_sset.functor_of_ref(two)
    data = functor_to_classification(f)
    rebuilt = classification_to_functor(2, f.target, data)
    if rebuilt != f:
        raise AssertionError("anatomy failed to reassemble the 2-cell")
    return data

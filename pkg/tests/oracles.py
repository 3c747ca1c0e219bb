"""Test-side oracles built by independent routes from the library code."""

import itertools

from qckit.ordinals import MonotoneMap
from qckit.sset import FinSSet, SimplexRef


def bar_cell_id(entries):
    return "b[" + ",".join(str(e) for e in entries) + "]"


def bar_normalize(entries, unit):
    """Strip unit entries, recording the collapsing surjection."""
    kept = tuple(e for e in entries if e != unit)
    values = [0]
    seen = 0
    for e in entries:
        if e != unit:
            seen += 1
        values.append(seen)
    epi = MonotoneMap(len(entries), len(kept), tuple(values))
    return SimplexRef(epi, bar_cell_id(kept))


def bar_nerve(elements, unit, mult, truncation):
    """Classical nerve of a finite monoid, built directly from tuples.

    Nondegenerate k-cells are k-tuples with no unit entry; the inner face
    i multiplies entries i and i+1 (first entry is the earlier leg)."""
    cells = {}
    faces = {}
    for m in range(truncation + 1):
        level = []
        for entries in itertools.product(
            [e for e in elements if e != unit], repeat=m
        ):
            cid = bar_cell_id(entries)
            level.append(cid)
            if m >= 1:
                out = []
                for i in range(m + 1):
                    if i == 0:
                        reduced = entries[1:]
                    elif i == m:
                        reduced = entries[:-1]
                    else:
                        reduced = (
                            entries[: i - 1]
                            + (mult(entries[i - 1], entries[i]),)
                            + entries[i + 1 :]
                        )
                    out.append(bar_normalize(reduced, unit))
                faces[cid] = out
        cells[m] = level
    return FinSSet(truncation, cells, faces)


def strict_chain_count(elements, leq, length):
    """Number of strictly increasing chains of the given length.

    Permutations are element-distinct, which strict chains in a poset
    are anyway, so the filter is just the order condition."""
    count = 0
    for chain in itertools.permutations(elements, length):
        if all(leq(chain[t], chain[t + 1]) for t in range(length - 1)):
            count += 1
    return count

"""Finite ordinals [n] = {0, ..., n} and monotone maps between them.

A monotone map is stored by its value sequence, so composition, image
factorization, and enumeration are plain tuple manipulations.  Everything
here is exact and total: malformed data raises at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class ArityError(ValueError):
    """Raised when arities do not line up (composition, generator indices)."""


@dataclass(frozen=True, slots=True)
class MonotoneMap:
    """A weakly monotone map [source_arity] -> [target_arity].

    ``values[i]`` is the image of i.  The value sequence fully determines
    the map once both arities are fixed; ``target_arity`` is stored
    because it is not recoverable from the values alone.
    """

    source_arity: int
    target_arity: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_arity < 0 or self.target_arity < 0:
            raise ArityError("arities must be >= 0")
        if len(self.values) != self.source_arity + 1:
            raise ArityError(
                f"expected {self.source_arity + 1} values, got {len(self.values)}"
            )
        prev = 0
        for v in self.values:
            if not (0 <= v <= self.target_arity):
                raise ArityError(f"value {v} outside [0, {self.target_arity}]")
            if v < prev:
                raise ArityError(f"values {self.values} are not monotone")
            prev = v

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_identity(self) -> bool:
        return self.source_arity == self.target_arity and self.values == tuple(
            range(self.source_arity + 1)
        )

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target_arity + 1

    def sort_key(self) -> tuple:
        return (self.source_arity, self.target_arity, self.values)


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f.  Raises ArityError unless f lands where g starts."""
    if f.target_arity != g.source_arity:
        raise ArityError(
            f"cannot compose [{f.source_arity}]->[{f.target_arity}] "
            f"with [{g.source_arity}]->[{g.target_arity}]"
        )
    return MonotoneMap(
        f.source_arity, g.target_arity, tuple(g.values[v] for v in f.values)
    )


def face(n: int, i: int) -> MonotoneMap:
    """Coface [n-1] -> [n]: the injection skipping i."""
    if not (0 <= i <= n) or n < 1:
        raise ArityError(f"no face index {i} in dimension {n}")
    return MonotoneMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def degeneracy(n: int, i: int) -> MonotoneMap:
    """Codegeneracy [n+1] -> [n]: the surjection repeating i."""
    if not (0 <= i <= n):
        raise ArityError(f"no degeneracy index {i} in dimension {n}")
    return MonotoneMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def epi_mono_factor(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Unique factorization f = mono . epi through the image ordinal."""
    image = sorted(set(f.values))
    index = {v: k for k, v in enumerate(image)}
    k = len(image) - 1
    epi = MonotoneMap(f.source_arity, k, tuple(index[v] for v in f.values))
    mono = MonotoneMap(k, f.target_arity, tuple(image))
    return epi, mono


def all_maps(m: int, n: int) -> list[MonotoneMap]:
    """Every monotone map [m] -> [n], lexicographic in the value sequence."""
    return [
        MonotoneMap(m, n, vals)
        for vals in itertools.combinations_with_replacement(range(n + 1), m + 1)
    ]


def all_epis(m: int, n: int) -> list[MonotoneMap]:
    return [f for f in all_maps(m, n) if f.is_surjective]


def all_monos(m: int, n: int) -> list[MonotoneMap]:
    if m > n:
        return []
    return [
        MonotoneMap(m, n, vals)
        for vals in itertools.combinations(range(n + 1), m + 1)
    ]


@lru_cache(maxsize=None)
def epis_onto(m: int, k: int) -> tuple[MonotoneMap, ...]:
    """Cached surjections [m] ->> [k], used heavily by simplex enumeration."""
    return tuple(all_epis(m, k))


def generator_word(f: MonotoneMap) -> list[MonotoneMap]:
    """Write f as a composite of cofaces and codegeneracies.

    Returns [g_1, ..., g_r] with f = g_r . ... . g_1 (g_1 applied first).
    Codegeneracies come first, then cofaces, following the epi-mono
    factorization; the identity yields the empty word.
    """
    epi, mono = epi_mono_factor(f)
    word: list[MonotoneMap] = []
    # Split off codegeneracies: repeatedly merge the first repeated pair.
    cur = epi
    while not cur.is_identity:
        j = next(
            i for i in range(cur.source_arity) if cur.values[i] == cur.values[i + 1]
        )
        word.append(degeneracy(cur.source_arity - 1, j))
        cur = MonotoneMap(
            cur.source_arity - 1,
            cur.target_arity,
            cur.values[:j] + cur.values[j + 1 :],
        )
    # Split off cofaces: add missing image values from the smallest up.
    missing = sorted(set(range(f.target_arity + 1)) - set(mono.values))
    arity = mono.source_arity
    for idx, i in enumerate(missing):
        word.append(face(arity + idx + 1, i))
    return word


def compose_word(word: list[MonotoneMap], n: int) -> MonotoneMap:
    """Fold a generator word starting from the identity on [n]."""
    cur = identity(n)
    for g in word:
        cur = compose(g, cur)
    return cur

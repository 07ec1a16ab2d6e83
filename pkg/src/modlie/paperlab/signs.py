"""Search over re-signings of a Chevalley basis.

Replacing e_alpha by eps_alpha * e_alpha with eps_alpha = eps_{-alpha} = +-1
gives another Chevalley basis exactly when the new structure constants are
again +-(r+1); a displayed element written in some unknown Chevalley basis is
therefore tested against every sign pattern on the roots it involves.

Patterns that differ by a torus character (eps_alpha = (-1)^<alpha, s>) give
conjugate elements, so only one pattern per class is visited: the patterns
that are +1 on a maximal set of roots with independent coefficient vectors
mod 2.  Classes are visited with fewer flips first, the identity first.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from ..chevalley import LieAlgebra
from ..rootsys import Root


@dataclass(frozen=True)
class SignClass:
    flipped: tuple[Root, ...]  # positive roots whose sign changes
    scale: np.ndarray  # +-1 per basis vector

    def apply(self, L: LieAlgebra, x) -> np.ndarray:
        return L.field.reduce(L.element(x) * self.scale)


def involved_roots(L: LieAlgebra, elements: Sequence) -> list[int]:
    """Indices (into the positive roots) of roots +-alpha used by the elements."""
    idx = set()
    for x in elements:
        for k in np.flatnonzero(np.asarray(x)[: L.nroots] != 0):
            idx.add(int(k) % L.npos)
    return sorted(idx)


def _independent_mod2(rows: list[Root]) -> list[int]:
    """Indices of a maximal subset of rows that is independent over F_2."""
    lead: dict[int, int] = {}  # echelon bitmasks keyed by leading bit
    chosen = []
    for t, r in enumerate(rows):
        v = sum((c & 1) << i for i, c in enumerate(r))
        while v:
            top = v.bit_length() - 1
            if top not in lead:
                lead[top] = v
                chosen.append(t)
                break
            v ^= lead[top]
    return chosen


def sign_classes(L: LieAlgebra, elements: Sequence) -> Iterator[SignClass]:
    roots = involved_roots(L, elements)
    pos = [L.rs.roots[k] for k in roots]
    fixed = set(_independent_mod2(pos))
    free = [t for t in range(len(roots)) if t not in fixed]
    for nflip in range(len(free) + 1):
        for combo in itertools.combinations(free, nflip):
            scale = np.ones(L.dim, dtype=np.int64)
            for t in combo:
                scale[roots[t]] = -1
                scale[roots[t] + L.npos] = -1
            yield SignClass(tuple(pos[t] for t in combo), scale)


def count_classes(L: LieAlgebra, elements: Sequence) -> int:
    roots = involved_roots(L, elements)
    pos = [L.rs.roots[k] for k in roots]
    return 2 ** (len(roots) - len(_independent_mod2(pos)))


def search_signs(
    L: LieAlgebra, elements: Sequence, accept: Callable[[list[np.ndarray]], bool], limit: int | None = None
) -> tuple[SignClass, list[np.ndarray]] | None:
    """First sign class under which ``accept`` holds for the re-signed elements."""
    for n, cls in enumerate(sign_classes(L, elements)):
        if limit is not None and n >= limit:
            break
        signed = [cls.apply(L, x) for x in elements]
        if accept(signed):
            return cls, signed
    return None

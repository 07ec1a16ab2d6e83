"""Root systems of the simple types A-G in Bourbaki labelling.

Simple roots are numbered 1..rank as in Bourbaki's plates.  A root is stored
as the tuple of its coefficients over the simple roots.  Public functions that
take simple-root indices (``level``, ``pairing``) use these 1-based labels.

Positive roots are ordered by height, and within a height by descending
lexicographic order of the coefficient tuple, so that alpha_1 is the first
root and the highest root is the last one.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

Root = tuple[int, ...]

_EXCEPTIONAL_B = {("G", 2): 3, ("F", 4): 3, ("E", 6): 5, ("E", 7): 7, ("E", 8): 7}
# b(G) for classical types is the largest prime not exceeding this bound.
_CLASSICAL_BOUND = {"A": 1, "B": 0, "C": 0, "D": 0}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self) -> None:
        f, n = self.family, self.rank
        if f not in "ABCDEFG" or len(f) != 1:
            raise RootSystemError(f"unknown family {f!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise RootSystemError(f"invalid rank {n} for family {f}")

    @classmethod
    def parse(cls, text: str) -> RootSystemSpec:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def _gram(spec: RootSystemSpec) -> list[list[int]]:
    """Integer Gram matrix of the simple roots (short roots have length 2)."""
    f, n = spec.family, spec.rank
    B = [[0] * n for _ in range(n)]

    def edge(i: int, j: int, v: int = -1) -> None:
        B[i][j] = B[j][i] = v

    if f in "ADE":
        for i in range(n):
            B[i][i] = 2
        if f == "A":
            for i in range(n - 1):
                edge(i, i + 1)
        elif f == "D":
            for i in range(n - 2):
                edge(i, i + 1)
            edge(n - 3, n - 1)
        else:
            edge(0, 2)
            edge(1, 3)
            for i in range(2, n - 1):
                edge(i, i + 1)
    elif f == "B":
        for i in range(n - 1):
            B[i][i] = 4
            edge(i, i + 1, -2)
        B[n - 1][n - 1] = 2
    elif f == "C":
        for i in range(n - 1):
            B[i][i] = 2
            edge(i, i + 1)
        B[n - 1][n - 1] = 4
        edge(n - 2, n - 1, -2)
    elif f == "F":
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3)
    else:
        B[0][0], B[1][1] = 2, 6
        edge(0, 1, -3)
    return B


def _largest_prime_at_most(n: int) -> int:
    for q in range(n, 1, -1):
        if all(q % d for d in range(2, int(q**0.5) + 1)):
            return q
    raise RootSystemError(f"no prime <= {n}")


@dataclass(frozen=True)
class RootSystem:
    spec: RootSystemSpec
    positive_roots: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    highest_root: Root
    coxeter_number: int
    b_value: int
    _index: dict[Root, int] = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positive roots, then their negatives in the same order."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    def index(self, root: Iterable[int]) -> int:
        """Position of ``root`` in :attr:`roots`."""
        r = tuple(int(c) for c in root)
        try:
            return self._index[r]
        except KeyError:
            raise RootSystemError(f"{r} is not a root of {self.name}") from None

    def is_root(self, root: Iterable[int]) -> bool:
        return tuple(int(c) for c in root) in self._index

    def inner(self, a: Root, b: Root) -> int:
        """Gram pairing (a, b), normalised so that short roots have (a, a) = 2."""
        n = self.rank
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])

    def pairing(self, alpha: Root, j: int) -> int:
        """<alpha, alpha_j^vee> for the 1-based simple index j."""
        if not 1 <= j <= self.rank:
            raise RootSystemError(f"simple index {j} out of range 1..{self.rank}")
        return sum(c * self.cartan[i][j - 1] for i, c in enumerate(alpha))

    def level(self, root: Root, J: Iterable[int]) -> int:
        """Sum of the coefficients of ``root`` at simple indices outside J."""
        Js = set(J)
        for j in Js:
            if not 1 <= j <= self.rank:
                raise RootSystemError(f"simple index {j} out of range 1..{self.rank}")
        return sum(c for i, c in enumerate(root, start=1) if i not in Js)

    def height(self, root: Root) -> int:
        return sum(root)


def build_root_system(spec: RootSystemSpec) -> RootSystem:
    n = spec.rank
    B = _gram(spec)
    cartan = tuple(tuple(2 * B[i][j] // B[j][j] for j in range(n)) for i in range(n))
    simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]

    known: set[Root] = set(simple)
    layer = simple
    while layer:
        nxt: set[Root] = set()
        for a in layer:
            for i in range(n):
                # p = length of the alpha_i-string below a
                p, b = 0, list(a)
                while True:
                    b[i] -= 1
                    if tuple(b) not in known:
                        break
                    p += 1
                pair = sum(a[k] * cartan[k][i] for k in range(n))
                if p - pair >= 1:
                    c = list(a)
                    c[i] += 1
                    nxt.add(tuple(c))
        known |= nxt
        layer = sorted(nxt)

    pos = tuple(sorted(known, key=lambda r: (sum(r), tuple(-c for c in r))))
    highest = pos[-1]
    h = 1 + sum(highest)
    if spec.family in _CLASSICAL_BOUND:
        b = _largest_prime_at_most(n + _CLASSICAL_BOUND[spec.family])
    else:
        b = _EXCEPTIONAL_B[(spec.family, n)]
    rs = RootSystem(
        spec=spec,
        positive_roots=pos,
        cartan=cartan,
        gram=tuple(tuple(r) for r in B),
        highest_root=highest,
        coxeter_number=h,
        b_value=b,
    )
    rs._index.update({r: k for k, r in enumerate(rs.roots)})
    return rs


@lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    """Cached constructor from a type string such as ``"E8"``."""
    return build_root_system(RootSystemSpec.parse(name))


def coxeter_number(rs: RootSystem) -> int:
    return rs.coxeter_number


def b_value(rs: RootSystem) -> int:
    return rs.b_value


def level(rs: RootSystem, root: Root, J: Iterable[int]) -> int:
    return rs.level(root, J)


def pairing(rs: RootSystem, alpha: Root, j: int) -> int:
    return rs.pairing(alpha, j)


def info(rs: RootSystem) -> dict:
    return {
        "type": rs.spec.family,
        "rank": rs.rank,
        "num_positive_roots": len(rs.positive_roots),
        "highest_root": list(rs.highest_root),
        "coxeter_number": rs.coxeter_number,
        "b_value": rs.b_value,
    }

"""Jordan partitions of nilpotent matrices from the ranks of their powers."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .fields import Field
from .linalg import matmul, rank


class NotNilpotent(ValueError):
    pass


@dataclass(frozen=True)
class JordanPartition:
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, reverse=True)))

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def __str__(self) -> str:
        """Exponent notation, e.g. ``11+10^2+9^3``."""
        if not self.blocks:
            return "0"
        c = Counter(self.blocks)
        return "+".join(str(b) if c[b] == 1 else f"{b}^{c[b]}" for b in sorted(c, reverse=True))

    @classmethod
    def parse(cls, text: str) -> JordanPartition:
        blocks: list[int] = []
        for part in text.replace(" ", "").split("+"):
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"bad partition term {part!r}")
            blocks += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(tuple(blocks))


def rank_sequence(M: np.ndarray, F: Field) -> list[int]:
    """[rank M^0, rank M^1, ...] up to the first zero power."""
    n = M.shape[0]
    ranks = [n]
    P = M
    for _ in range(n):
        r = rank(P, F) if np.any(P != 0) else 0
        if r == ranks[-1]:
            raise NotNilpotent("matrix is not nilpotent")
        ranks.append(r)
        if r == 0:
            return ranks
        P = matmul(P, M, F)
    raise NotNilpotent("matrix is not nilpotent")


def jordan_partition(M: np.ndarray, F: Field) -> JordanPartition:
    n = M.shape[0]
    if n == 0:
        return JordanPartition(())
    r = rank_sequence(M, F) + [0]
    blocks: list[int] = []
    for k in range(1, len(r) - 1):
        # blocks of size >= k: r[k-1] - r[k]
        exact = (r[k - 1] - r[k]) - (r[k] - r[k + 1])
        blocks += [k] * exact
    return JordanPartition(tuple(blocks))

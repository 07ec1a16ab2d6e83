"""Prime fields and the rationals, with a uniform numpy representation.

Over F_p, vectors and matrices are ``int64`` arrays with entries in [0, p).
Over Q they are ``object`` arrays holding ``int`` or ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

# F_p entries must fit comfortably in int64 products.
MAX_PRIME = 2**31


class DenominatorError(ArithmeticError):
    """A rational number cannot be reduced because p divides its denominator."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """``Field(p)`` is F_p; ``Field(None)`` is Q."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not (is_prime(self.p) and self.p < MAX_PRIME):
            raise ValueError(f"{self.p} is not a supported prime")

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def scalar(self, x) -> int | Fraction:
        """Coerce an int or rational into the field."""
        if self.p is None:
            if isinstance(x, (int, np.integer)):
                return int(x)
            return Fraction(x)
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        q = Fraction(x) if not isinstance(x, Rational) else x
        if q.denominator % self.p == 0:
            raise DenominatorError(f"{x} has a denominator divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def inv(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(1) / Fraction(x)
        return pow(int(x), -1, self.p)

    def array(self, data) -> np.ndarray:
        """Copy ``data`` into the field's array representation."""
        if self.p is None:
            a = np.array(data, dtype=object)
            flat = a.reshape(-1)
            for k, v in enumerate(flat):
                flat[k] = self.scalar(v)
            return a
        a = np.asarray(data)
        if a.dtype == object:
            out = np.empty(a.shape, dtype=np.int64)
            oflat, aflat = out.reshape(-1), a.reshape(-1)
            for k, v in enumerate(aflat):
                oflat[k] = self.scalar(v)
            return out
        return np.mod(a.astype(np.int64), self.p)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Normalise an array produced by ring operations (in place for F_p)."""
        if self.p is None:
            return a
        np.mod(a, self.p, out=a)
        return a

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            z = np.empty(shape, dtype=object)
            z.fill(0)
            return z
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        z = self.zeros((n, n))
        for i in range(n):
            z[i, i] = 1
        return z

    def signed(self, x) -> int | Fraction:
        """Representative of ``x`` in (-p/2, p/2] over F_p; identity over Q."""
        if self.p is None:
            return x
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)

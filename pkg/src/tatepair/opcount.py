"""Operation tallies for base-field and extension-field arithmetic.

The counter distinguishes base-field multiplications (m), squarings (s),
multiplications by the curve constants a and d (m_a, m_d), and opaque
extension-field multiplications/squarings (M, S).  Additions, subtractions,
negations and multiplications by small literal constants are free.
Inversions are tallied separately (inv) and never folded into m.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    m: int = 0
    s: int = 0
    m_a: int = 0
    m_d: int = 0
    M: int = 0
    S: int = 0
    inv: int = 0

    def copy(self) -> "OpCounter":
        return OpCounter(self.m, self.s, self.m_a, self.m_d, self.M, self.S, self.inv)

    def reset(self) -> None:
        self.m = self.s = self.m_a = self.m_d = self.M = self.S = self.inv = 0

    def __sub__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.m - other.m,
            self.s - other.s,
            self.m_a - other.m_a,
            self.m_d - other.m_d,
            self.M - other.M,
            self.S - other.S,
            self.inv - other.inv,
        )

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        """Fixed print order: m s m_a m_d M S (inversions excluded)."""
        return (self.m, self.s, self.m_a, self.m_d, self.M, self.S)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.as_tuple())

"""Elementary-operation counters.

A multiplication is one scalar product; an addition is one scalar
addition or subtraction, including the first write into a zero
accumulator where the operation's contract says so.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OpCounters:
    multiplications: int
    additions: int

    def __post_init__(self) -> None:
        if self.multiplications < 0 or self.additions < 0:
            raise ValueError("operation counts must be non-negative")

    def as_tuple(self) -> tuple[int, int]:
        return (self.multiplications, self.additions)

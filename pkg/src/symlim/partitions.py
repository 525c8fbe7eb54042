"""Young-diagram arithmetic: the partition type, conjugation, enumeration.

Partitions are weakly decreasing tuples of positive integers; the empty
partition is a valid value and labels the trivial object everywhere.  The
canonical total order used throughout the package is reverse-lexicographic
on part sequences (descending tuple comparison), which is also the order in
which ``enumerate_partitions`` emits its results.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Iterator

from .errors import ParseError


@total_ordering
class Partition:
    """A weakly decreasing sequence of positive integers.

    Trailing zeros are stripped on construction; anything else that is not
    weakly decreasing and positive raises ValueError.  Instances are
    immutable by convention and hashable.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts)
        while ps and ps[-1] == 0:
            ps = ps[:-1]
        for i, p in enumerate(ps):
            if p < 1:
                raise ValueError(f"partition parts must be positive: {ps}")
            if i and ps[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing: {ps}")
        self.parts = ps

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the diagram; an involution."""
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for c in range(p):
                cols[c] += 1
        return Partition(cols)

    def contains(self, other: "Partition") -> bool:
        """Diagram inclusion: other fits inside self cellwise."""
        if other.rows > self.rows:
            return False
        return all(s >= o for s, o in zip(self.parts, other.parts))

    def dominates(self, other: "Partition") -> bool:
        """Dominance order on partitions of equal size."""
        if self.size != other.size:
            return False
        total_s = total_o = 0
        for i in range(max(self.rows, other.rows)):
            total_s += self.parts[i] if i < self.rows else 0
            total_o += other.parts[i] if i < other.rows else 0
            if total_s < total_o:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        """Textual form used by the CLI: comma-separated parts, ``0`` if empty."""
        return ",".join(str(p) for p in self.parts) if self.parts else "0"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Partition":
        if not isinstance(data, list) or not all(isinstance(p, int) for p in data):
            raise ParseError(f"partition must be a list of integers, got {data!r}")
        try:
            return cls(data)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; ``"0"`` (or the empty string) is the empty partition."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        try:
            parts = [int(chunk) for chunk in text.split(",")]
        except ValueError as exc:
            raise ParseError(f"cannot parse partition {text!r}") from exc
        try:
            return cls(parts)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def _gen(remaining: int, max_part: int, rows_left: int | None):
    if remaining == 0:
        yield ()
        return
    if rows_left is not None and rows_left == 0:
        return
    top = min(remaining, max_part)
    for first in range(top, 0, -1):
        next_rows = None if rows_left is None else rows_left - 1
        for rest in _gen(remaining - first, first, next_rows):
            yield (first,) + rest


def enumerate_partitions(d: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of d (rows bounded by max_rows when given).

    Emitted in reverse-lexicographic order on part sequences, so the output
    is a deterministic total order: (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
    """
    if d < 0:
        raise ValueError(f"cannot partition a negative integer: {d}")
    if max_rows is not None and max_rows < 0:
        raise ValueError(f"max_rows must be nonnegative: {max_rows}")
    return [Partition(ps) for ps in _gen(d, d if d else 0, max_rows)] if d else [Partition()]

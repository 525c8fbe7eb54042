"""Schur-basis combinatorics over the integers.

Kostka numbers, Littlewood-Richardson coefficients, Schur products and the
unitriangular monomial/Schur basis change, all exact.  The two tableau
kernels are deliberately independent of each other:

* ``lr_coefficient`` counts Littlewood-Richardson skew tableaux of one fixed
  outer shape by cell-by-cell backtracking with lattice-word pruning;
* ``schur_product`` grows the outer shape value layer by value layer
  (horizontal strips subject to the same lattice condition), collecting every
  admissible shape in one traversal.

Both enumerate the same tableau family and are cross-checked in the test
suite, together with the explicit-polynomial oracle.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import Partition, enumerate_partitions


class FormalSum:
    """Finite integer linear combination of partition labels.

    Zero coefficients are never stored; the empty sum is the zero element.
    Instances are immutable by convention.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[Partition, int] = {}
        for label, coeff in (terms or {}).items():
            if not isinstance(label, Partition):
                raise TypeError(f"labels must be Partition, got {label!r}")
            if not isinstance(coeff, int):
                raise TypeError(f"coefficients must be int, got {coeff!r}")
            if coeff:
                clean[label] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def single(cls, label: Partition, coeff: int = 1) -> "FormalSum":
        return cls({label: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "FormalSum") -> "FormalSum":
        merged = dict(self.terms)
        for label, coeff in other.terms.items():
            merged[label] = merged.get(label, 0) + coeff
        return FormalSum(merged)

    def __neg__(self) -> "FormalSum":
        return FormalSum({label: -c for label, c in self.terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "FormalSum":
        if not isinstance(scalar, int):
            return NotImplemented
        return FormalSum({label: scalar * c for label, c in self.terms.items()})

    def support(self) -> list[Partition]:
        """Labels in canonical order: by size, then reverse-lexicographic."""
        return sorted(self.terms, key=lambda p: (p.size, tuple(-x for x in p.parts)))

    def items(self):
        return self.terms.items()

    def __repr__(self) -> str:
        if not self.terms:
            return "FormalSum(0)"
        body = " + ".join(f"{c}*{p}" for p, c in sorted(self.terms.items(), key=lambda t: t[0].parts))
        return f"FormalSum({body})"


def _horizontal_strips(lam: tuple[int, ...], size: int):
    """Inner shapes nu inside lam with lam/nu a horizontal strip of the given size.

    The strip condition is the interlacing lam[i+1] <= nu[i] <= lam[i].
    """

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == len(lam):
            if remaining == 0:
                yield prefix
            return
        lo = max(lam[i + 1] if i + 1 < len(lam) else 0, lam[i] - remaining)
        for v in range(lam[i], lo - 1, -1):
            yield from rec(i + 1, remaining - (lam[i] - v), prefix + (v,))

    yield from rec(0, size, ())


@lru_cache(maxsize=None)
def _kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    total = 0
    for nu in _horizontal_strips(lam, mu[-1]):
        total += _kostka(tuple(p for p in nu if p), mu[:-1])
    return total


def kostka(lam: Partition, mu: Partition) -> int:
    """Number of semistandard tableaux of shape lam and content mu.

    Zero unless the sizes agree and lam dominates mu.
    """
    if lam.size != mu.size or not lam.dominates(mu):
        return 0
    return _kostka(lam.parts, mu.parts)


@lru_cache(maxsize=None)
def _lr(mu: tuple[int, ...], nu: tuple[int, ...], lam: tuple[int, ...]) -> int:
    """Count LR skew tableaux of shape lam/mu and content nu by backtracking.

    Cells are visited in reverse reading order (rows top to bottom, columns
    right to left), which emits the reverse reading word incrementally and
    lets the lattice condition prune as soon as it fails.
    """
    rows = len(lam)
    inner = mu + (0,) * (rows - len(mu))
    cells = [(r, c) for r in range(rows) for c in range(lam[r] - 1, inner[r] - 1, -1)]
    nvals = len(nu)
    remaining = list(nu)
    used = [0] * (nvals + 1)
    grid = [[0] * lam[r] for r in range(rows)]
    count = 0

    def place(idx: int):
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        r, c = cells[idx]
        right = grid[r][c + 1] if c + 1 < lam[r] else nvals
        above = grid[r - 1][c] if r > 0 and c >= inner[r - 1] else 0
        for v in range(above + 1, right + 1):
            if remaining[v - 1] == 0:
                continue
            if v > 1 and used[v] >= used[v - 1]:
                continue
            remaining[v - 1] -= 1
            used[v] += 1
            grid[r][c] = v
            place(idx + 1)
            grid[r][c] = 0
            used[v] -= 1
            remaining[v - 1] += 1

    place(0)
    return count


def lr_coefficient(mu: Partition, nu: Partition, lam: Partition) -> int:
    """Littlewood-Richardson coefficient of lam in the product mu * nu."""
    if mu.size + nu.size != lam.size:
        return 0
    if not lam.contains(mu):
        return 0
    if lam.rows > mu.rows + nu.rows:
        return 0
    return _lr(mu.parts, nu.parts, lam.parts)


def _strip_placements(shape: tuple[int, ...], size: int, prev_cum):
    """Yield (new_shape, per_row_added) for horizontal strips of `size` cells.

    prev_cum[r] is the number of previous-value cells in rows < r; it bounds
    how many current-value cells may sit in rows <= r (the lattice condition,
    checked strip against strip).  None means no lattice constraint (first
    value layer).
    """
    nrows = len(shape) + 1

    def rec(r: int, remaining: int, acc: tuple[int, ...], placed: int):
        if remaining == 0:
            new_shape = acc + shape[len(acc):]
            added = tuple((acc[i] - (shape[i] if i < len(shape) else 0)) if i < len(acc) else 0
                          for i in range(nrows))
            yield new_shape, added
            return
        if r == nrows:
            return
        old = shape[r] if r < len(shape) else 0
        hi = old + remaining
        if r >= 1:
            hi = min(hi, shape[r - 1] if r - 1 < len(shape) else 0)
        if prev_cum is not None:
            hi = min(hi, old + prev_cum[r] - placed)
        for new in range(old, hi + 1):
            yield from rec(r + 1, remaining - (new - old), acc + (new,), placed + (new - old))

    yield from rec(0, size, (), 0)


@lru_cache(maxsize=None)
def _schur_product(mu: tuple[int, ...], nu: tuple[int, ...]) -> "FormalSum":
    nvals = len(nu)
    counts: dict[tuple[int, ...], int] = {}

    def layer(v: int, shape: tuple[int, ...], prev_cum):
        if v == nvals:
            key = tuple(p for p in shape if p)
            counts[key] = counts.get(key, 0) + 1
            return
        for grown, added in _strip_placements(shape, nu[v], prev_cum):
            cum = [0]
            for a in added:
                cum.append(cum[-1] + a)
            cum.append(cum[-1])
            layer(v + 1, grown, cum)

    layer(0, mu, None)
    return FormalSum({Partition(shape): c for shape, c in counts.items()})


def schur_product(mu: Partition, nu: Partition) -> FormalSum:
    """Expansion of the product of two Schur basis elements.

    All coefficients are positive; the support consists of partitions of
    size(mu) + size(nu) containing mu.  Results are memoized.
    """
    return _schur_product(mu.parts, nu.parts)


def schur_to_monomial(lam: Partition) -> FormalSum:
    """Monomial expansion of a Schur label: coefficients are Kostka numbers."""
    out = {}
    for mu in enumerate_partitions(lam.size):
        k = kostka(lam, mu)
        if k:
            out[mu] = k
    return FormalSum(out)


def monomial_to_schur(f: FormalSum) -> FormalSum:
    """Exact inverse of schur_to_monomial, extended linearly.

    Works grade by grade via leading-term elimination against the
    unitriangular Kostka system.
    """
    residue = FormalSum(dict(f.terms))
    out: dict[Partition, int] = {}
    while residue:
        lead = max(residue.terms, key=lambda p: (p.size, p.parts))
        coeff = residue.terms[lead]
        out[lead] = out.get(lead, 0) + coeff
        residue = residue - coeff * schur_to_monomial(lead)
    return FormalSum(out)

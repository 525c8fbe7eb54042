"""Truncated rings of symmetric polynomials in n variables.

Elements are sparse integer combinations of basis labels (monomial or Schur
basis) subject to the row bound rows(label) <= n.  Truncation to n-1
variables is label filtering; the independent brute-force route through
explicit exponent maps lives in ExplicitPoly and is the oracle the fast
path is tested against.
"""

from __future__ import annotations

from collections import Counter
from math import factorial

from .errors import DomainError, ParseError, ScaleError
from .partitions import Partition
from .schur import FormalSum, monomial_to_schur, schur_product, schur_to_monomial

ORACLE_MAX_VARS = 8

MONOMIAL = "monomial"
SCHUR = "schur"
_BASES = (MONOMIAL, SCHUR)


def _clean_terms(terms, n: int) -> dict[Partition, int]:
    clean: dict[Partition, int] = {}
    for label, coeff in (terms or {}).items():
        if not isinstance(label, Partition):
            raise TypeError(f"labels must be Partition, got {label!r}")
        if not isinstance(coeff, int):
            raise TypeError(f"coefficients must be int, got {coeff!r}")
        if label.rows > n:
            raise ValueError(f"label {label} has more than {n} rows")
        if coeff:
            clean[label] = coeff
    return clean


class TruncatedSymElem:
    """Element of Z[x_1..x_n]^{S_n} in a tagged basis.

    Labels with more than n rows are identically zero in n variables and are
    rejected rather than silently dropped: dropping is the job of truncate.
    """

    __slots__ = ("n", "basis", "terms")

    def __init__(self, n: int, basis: str, terms=None):
        if n < 0:
            raise ValueError(f"number of variables must be nonnegative: {n}")
        if basis not in _BASES:
            raise ValueError(f"basis must be one of {_BASES}, got {basis!r}")
        self.n = n
        self.basis = basis
        self.terms = _clean_terms(terms, n)

    @classmethod
    def zero(cls, n: int, basis: str = SCHUR) -> "TruncatedSymElem":
        return cls(n, basis)

    @classmethod
    def single(cls, n: int, label: Partition, coeff: int = 1, basis: str = SCHUR) -> "TruncatedSymElem":
        return cls(n, basis, {label: coeff})

    @property
    def degree(self) -> int:
        """Maximal label size; 0 for the zero element."""
        return max((p.size for p in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedSymElem) and self.n == other.n
                and self.basis == other.basis and self.terms == other.terms)

    __hash__ = None

    def _check_compatible(self, other: "TruncatedSymElem") -> None:
        if self.n != other.n:
            raise DomainError("variable-count mismatch")

    def __add__(self, other: "TruncatedSymElem") -> "TruncatedSymElem":
        self._check_compatible(other)
        if self.basis != other.basis:
            return self.to_schur() + other.to_schur()
        merged = dict(self.terms)
        for label, coeff in other.terms.items():
            merged[label] = merged.get(label, 0) + coeff
        return TruncatedSymElem(self.n, self.basis, merged)

    def __neg__(self) -> "TruncatedSymElem":
        return TruncatedSymElem(self.n, self.basis, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSymElem") -> "TruncatedSymElem":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "TruncatedSymElem":
        if not isinstance(scalar, int):
            return NotImplemented
        return TruncatedSymElem(self.n, self.basis, {p: scalar * c for p, c in self.terms.items()})

    def __mul__(self, other: "TruncatedSymElem") -> "TruncatedSymElem":
        if isinstance(other, int):
            return self.__rmul__(other)
        self._check_compatible(other)
        if self.basis != other.basis:
            return self.to_schur() * other.to_schur()
        if self.basis == MONOMIAL:
            return (self.to_schur() * other.to_schur()).to_monomial()
        out: dict[Partition, int] = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                for lam, c in schur_product(mu, nu).items():
                    if lam.rows <= self.n:
                        out[lam] = out.get(lam, 0) + a * b * c
        return TruncatedSymElem(self.n, SCHUR, out)

    def truncate(self) -> "TruncatedSymElem":
        """Image in n-1 variables: labels with rows == n die, the rest survive."""
        if self.n == 0:
            raise DomainError("no smaller ring")
        kept = {p: c for p, c in self.terms.items() if p.rows < self.n}
        return TruncatedSymElem(self.n - 1, self.basis, kept)

    def grade(self, d: int) -> "TruncatedSymElem":
        """Homogeneous component of degree d."""
        return TruncatedSymElem(self.n, self.basis, {p: c for p, c in self.terms.items() if p.size == d})

    def to_schur(self) -> "TruncatedSymElem":
        if self.basis == SCHUR:
            return self
        out = FormalSum()
        for label, coeff in self.terms.items():
            out = out + coeff * monomial_to_schur(FormalSum.single(label))
        # the full-ring expansion of m_mu reaches labels dominated by mu,
        # which can have more rows; those vanish in n variables
        kept = {p: c for p, c in out.terms.items() if p.rows <= self.n}
        return TruncatedSymElem(self.n, SCHUR, kept)

    def to_monomial(self) -> "TruncatedSymElem":
        if self.basis == MONOMIAL:
            return self
        out: dict[Partition, int] = {}
        for label, coeff in self.terms.items():
            for mu, k in schur_to_monomial(label).items():
                if mu.rows <= self.n:
                    out[mu] = out.get(mu, 0) + coeff * k
        return TruncatedSymElem(self.n, MONOMIAL, out)

    def expand(self) -> "ExplicitPoly":
        """Brute-force expansion into an explicit exponent map (the oracle)."""
        if self.n > ORACLE_MAX_VARS:
            raise ScaleError("oracle scale exceeded")
        elem = self.to_monomial() if self.basis == SCHUR else self
        return ExplicitPoly.from_orbit_sums(self.n, elem.terms)

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=lambda p: (p.size, tuple(-x for x in p.parts)))

    def __str__(self) -> str:
        return render_terms(self.terms, self.basis)

    def __repr__(self) -> str:
        return f"TruncatedSymElem(n={self.n}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis,
            "terms": [{"partition": p.to_json(), "coeff": c}
                      for p, c in sorted(self.terms.items(), key=lambda t: (t[0].size, tuple(-x for x in t[0].parts)))],
        }

    @classmethod
    def from_json(cls, data) -> "TruncatedSymElem":
        n, basis, terms = parse_element_fields(data, want_n=True)
        try:
            return cls(n, basis, terms)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def render_terms(terms: dict[Partition, int], basis: str) -> str:
    """Text form like ``-4*s[2,1] + m[1,1]``; ``0`` for the zero element."""
    letter = "s" if basis == SCHUR else "m"
    ordered = sorted(terms.items(), key=lambda t: (t[0].size, tuple(-x for x in t[0].parts)))
    if not ordered:
        return "0"
    chunks = []
    for p, c in ordered:
        body = f"{letter}[{','.join(str(x) for x in p.parts)}]"
        if c == 1:
            chunks.append(body)
        elif c == -1:
            chunks.append(f"-{body}")
        else:
            chunks.append(f"{c}*{body}")
    return " + ".join(chunks).replace("+ -", "- ")


def parse_element_fields(data, want_n: bool):
    """Shared JSON validation for ring/limit elements; returns (n, basis, terms)."""
    if not isinstance(data, dict):
        raise ParseError("element must be a JSON object")
    if want_n:
        n = data.get("n")
        if not isinstance(n, int) or n < 0:
            raise ParseError('field "n" must be a nonnegative integer')
    else:
        n = None
        if "n" in data:
            raise ParseError('unexpected "n" field on an untruncated element')
    basis = data.get("basis")
    if basis not in _BASES:
        raise ParseError(f'field "basis" must be one of {_BASES}')
    raw = data.get("terms")
    if not isinstance(raw, list):
        raise ParseError('field "terms" must be a list')
    terms: dict[Partition, int] = {}
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"partition", "coeff"}:
            raise ParseError(f"malformed term {entry!r}")
        label = Partition.from_json(entry["partition"])
        coeff = entry["coeff"]
        if not isinstance(coeff, int):
            raise ParseError(f"coefficient must be an integer, got {coeff!r}")
        if label in terms:
            raise ParseError(f"duplicate label {label}")
        terms[label] = coeff
    return n, basis, terms


class ExplicitPoly:
    """Symmetric polynomial as an explicit exponent-vector map.

    Exponent vectors have length n; the constructor verifies that the
    coefficient map really is symmetric (every vector agrees with its sorted
    representative and orbits are complete).
    """

    __slots__ = ("n", "monomials")

    def __init__(self, n: int, monomials=None):
        if n < 0:
            raise ValueError(f"number of variables must be nonnegative: {n}")
        clean: dict[tuple[int, ...], int] = {}
        for expo, coeff in (monomials or {}).items():
            expo = tuple(expo)
            if len(expo) != n or any(e < 0 or not isinstance(e, int) for e in expo):
                raise ValueError(f"bad exponent vector {expo!r} for n={n}")
            if not isinstance(coeff, int):
                raise TypeError(f"coefficients must be int, got {coeff!r}")
            if coeff:
                clean[expo] = coeff
        orbits: dict[tuple[int, ...], int] = {}
        for expo in clean:
            rep = tuple(sorted(expo, reverse=True))
            if clean[expo] != clean.get(rep):
                raise ValueError(f"not symmetric at {expo}")
            orbits[rep] = orbits.get(rep, 0) + 1
        for rep, seen in orbits.items():
            if seen != _orbit_size(rep):
                raise ValueError(f"incomplete orbit of {rep}")
        self.n = n
        self.monomials = clean

    @classmethod
    def from_orbit_sums(cls, n: int, terms: dict[Partition, int]) -> "ExplicitPoly":
        mono: dict[tuple[int, ...], int] = {}
        for label, coeff in terms.items():
            if label.rows > n:
                continue
            padded = label.parts + (0,) * (n - label.rows)
            for expo in _distinct_permutations(padded):
                mono[expo] = mono.get(expo, 0) + coeff
        return cls(n, mono)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExplicitPoly) and self.n == other.n
                and self.monomials == other.monomials)

    __hash__ = None

    def __add__(self, other: "ExplicitPoly") -> "ExplicitPoly":
        if self.n != other.n:
            raise DomainError("variable-count mismatch")
        merged = dict(self.monomials)
        for expo, coeff in other.monomials.items():
            merged[expo] = merged.get(expo, 0) + coeff
        return ExplicitPoly(self.n, merged)

    def __mul__(self, other: "ExplicitPoly") -> "ExplicitPoly":
        if self.n != other.n:
            raise DomainError("variable-count mismatch")
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self.monomials.items():
            for eb, cb in other.monomials.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return ExplicitPoly(self.n, out)

    def collect(self) -> TruncatedSymElem:
        """Read the polynomial back as a monomial-basis element."""
        terms: dict[Partition, int] = {}
        for expo, coeff in self.monomials.items():
            if tuple(sorted(expo, reverse=True)) == expo:
                terms[Partition(expo)] = coeff
        return TruncatedSymElem(self.n, MONOMIAL, terms)

    def __repr__(self) -> str:
        return f"ExplicitPoly(n={self.n}, {len(self.monomials)} monomials)"


def _orbit_size(rep: tuple[int, ...]) -> int:
    size = factorial(len(rep))
    for repeats in Counter(rep).values():
        size //= factorial(repeats)
    return size


def _distinct_permutations(items: tuple[int, ...]):
    """All distinct permutations of a multiset, without duplicates."""
    pool = sorted(items, reverse=True)
    n = len(pool)

    def rec(prefix: tuple[int, ...], rest: list[int]):
        if len(prefix) == n:
            yield prefix
            return
        last = None
        for i, v in enumerate(rest):
            if v == last:
                continue
            last = v
            yield from rec(prefix + (v,), rest[:i] + rest[i + 1:])

    yield from rec((), pool)

"""The ring of symmetric functions, built over the tower of truncated rings.

A SymFunc is a finite integer combination of partition labels with no row
bound; truncating to n variables drops labels with more than n rows.  The
inverse construction goes through CompatibleSequence: a provider of
truncated elements indexed by the variable count, probed on a finite prefix
and lifted by reading the element off at one index past the declared degree
bound (every label of size <= D has at most D rows, so nothing is lost
there).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CompatibilityError, ParseError
from .partitions import Partition
from .schur import FormalSum, monomial_to_schur, schur_product, schur_to_monomial
from .symring import (MONOMIAL, SCHUR, TruncatedSymElem, _BASES, parse_element_fields,
                      render_terms)


class SymFunc:
    """Element of the symmetric-function ring in a tagged basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms=None):
        if basis not in _BASES:
            raise ValueError(f"basis must be one of {_BASES}, got {basis!r}")
        clean: dict[Partition, int] = {}
        for label, coeff in (terms or {}).items():
            if not isinstance(label, Partition):
                raise TypeError(f"labels must be Partition, got {label!r}")
            if not isinstance(coeff, int):
                raise TypeError(f"coefficients must be int, got {coeff!r}")
            if coeff:
                clean[label] = coeff
        self.basis = basis
        self.terms = clean

    @classmethod
    def zero(cls, basis: str = SCHUR) -> "SymFunc":
        return cls(basis)

    @classmethod
    def single(cls, label: Partition, coeff: int = 1, basis: str = SCHUR) -> "SymFunc":
        return cls(basis, {label: coeff})

    @property
    def degree(self) -> int:
        return max((p.size for p in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymFunc) and self.basis == other.basis
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if self.basis != other.basis:
            return self.to_schur() + other.to_schur()
        merged = dict(self.terms)
        for label, coeff in other.terms.items():
            merged[label] = merged.get(label, 0) + coeff
        return SymFunc(self.basis, merged)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "SymFunc":
        if not isinstance(scalar, int):
            return NotImplemented
        return SymFunc(self.basis, {p: scalar * c for p, c in self.terms.items()})

    def __mul__(self, other: "SymFunc") -> "SymFunc":
        if isinstance(other, int):
            return self.__rmul__(other)
        if self.basis != other.basis:
            return self.to_schur() * other.to_schur()
        if self.basis == MONOMIAL:
            return (self.to_schur() * other.to_schur()).to_monomial()
        out: dict[Partition, int] = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                for lam, c in schur_product(mu, nu).items():
                    out[lam] = out.get(lam, 0) + a * b * c
        return SymFunc(SCHUR, out)

    def truncate_to(self, n: int) -> TruncatedSymElem:
        """Image in n variables: drop labels with more than n rows."""
        kept = {p: c for p, c in self.terms.items() if p.rows <= n}
        return TruncatedSymElem(n, self.basis, kept)

    def grade(self, d: int) -> "SymFunc":
        return SymFunc(self.basis, {p: c for p, c in self.terms.items() if p.size == d})

    def to_schur(self) -> "SymFunc":
        if self.basis == SCHUR:
            return self
        out = FormalSum()
        for label, coeff in self.terms.items():
            out = out + coeff * monomial_to_schur(FormalSum.single(label))
        return SymFunc(SCHUR, out.terms)

    def to_monomial(self) -> "SymFunc":
        if self.basis == MONOMIAL:
            return self
        out = FormalSum()
        for label, coeff in self.terms.items():
            out = out + coeff * schur_to_monomial(label)
        return SymFunc(MONOMIAL, out.terms)

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=lambda p: (p.size, tuple(-x for x in p.parts)))

    def __str__(self) -> str:
        return render_terms(self.terms, self.basis)

    def __repr__(self) -> str:
        return f"SymFunc({self})"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"partition": p.to_json(), "coeff": c}
                      for p, c in sorted(self.terms.items(), key=lambda t: (t[0].size, tuple(-x for x in t[0].parts)))],
        }

    @classmethod
    def from_json(cls, data) -> "SymFunc":
        _, basis, terms = parse_element_fields(data, want_n=False)
        try:
            return cls(basis, terms)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def as_sequence(self) -> "CompatibleSequence":
        """The truncation sequence of this element, with its degree declared."""
        return CompatibleSequence(self.truncate_to, self.degree)


@dataclass(frozen=True)
class CompatibleSequence:
    """A provider of truncated elements plus a declared degree bound.

    Boundedness over all indices is not decidable from finitely many probes,
    so the bound is declared by the caller and verified on the probed prefix.
    """

    provider: Callable[[int], TruncatedSymElem]
    declared_degree_bound: int


def lift(seq: CompatibleSequence) -> SymFunc:
    """Reconstruct the symmetric function behind a compatible sequence.

    Probes indices 0 .. D+1 (D the declared bound), verifies compatibility
    and the degree bound on that prefix, and reads the result off the last
    probe.  Comparison is basis-strict: a provider must stick to one basis.
    """
    bound = seq.declared_degree_bound
    if bound < 0:
        raise CompatibilityError(f"degree bound must be nonnegative: {bound}")
    elems = []
    for n in range(bound + 2):
        e = seq.provider(n)
        if not isinstance(e, TruncatedSymElem) or e.n != n:
            raise CompatibilityError(f"provider returned a bad element at n={n}")
        if e.degree > bound:
            offending = sorted(p for p in e.terms if p.size > bound)
            raise CompatibilityError(
                f"degree bound {bound} violated at n={n} by labels "
                + ", ".join(str(p) for p in offending))
        elems.append(e)
    for n in range(1, bound + 2):
        got = elems[n].truncate()
        if got != elems[n - 1]:
            bad = sorted(set(got.terms.items()) ^ set(elems[n - 1].terms.items()))
            labels = ", ".join(str(p) for p, _ in bad) or "(basis mismatch)"
            raise CompatibilityError(f"incompatible sequence at n={n}: {labels}")
    top = elems[bound + 1]
    return SymFunc(top.basis, top.terms)

"""Polynomial representation towers of the general linear Lie algebras.

Simple objects at floor n are labelled by partitions with at most n rows;
the restriction step keeps a label when it still fits and kills it
otherwise (the convention that a Schur-functor module on too small a space
is zero is adopted globally).  The infinite floor is modelled by label
multisets without a row bound; the specialization functors are row filters,
tensor products are Littlewood-Richardson convolutions, and characters land
in the symmetric-ring modules.

Everything acts on multiplicity data only; morphism blocks ride along by
identity transport on surviving labels, which the engine already handles.
"""

from __future__ import annotations

from functools import lru_cache

from .engine import (InverseSystem, LimitObject, SSCategory, SSObject, ShorteningMap,
                     SimpleLabel, apply_functor_object)
from .errors import DomainError, ParseError
from .partitions import Partition, enumerate_partitions
from .schur import lr_coefficient, schur_product
from .symfunc import SymFunc
from .symring import SCHUR, TruncatedSymElem

GL_SYSTEM_NAME = "gl"


def gl_label(p: Partition) -> SimpleLabel:
    """Label of the simple object indexed by p: level = rows, degree = size."""
    return SimpleLabel(p.parts, p.rows, p.size)


def _label_partition(label: SimpleLabel) -> Partition:
    return Partition(label.ident)


def _gl_category(n: int) -> SSCategory:
    def enumerator(max_level: int, horizon: int):
        bound = min(max_level, n)
        out = []
        for d in range(horizon + 1):
            out.extend(gl_label(p) for p in enumerate_partitions(d, max_rows=bound))
        return out

    return SSCategory(n, enumerator)


def _gl_map(i: int) -> ShorteningMap:
    def action(label: SimpleLabel):
        return label if label.level <= i - 1 else None

    return ShorteningMap(i, i - 1, action)


@lru_cache(maxsize=None)
def gl_system(horizon: int) -> InverseSystem:
    """The tower of polynomial representation categories with restrictions.

    Labels at floor n are partitions with rows <= n; the maps keep or kill
    labels by the row bound, and level-k labels stabilize from index k on
    (the declared witness).  The horizon argument caps nothing in-process;
    it is recorded for JSON export and keeps equal calls sharing one system
    object, which is what same-system checks compare.
    """
    if horizon < 0:
        raise ValueError(f"horizon must be nonnegative: {horizon}")
    system = InverseSystem(GL_SYSTEM_NAME, _gl_category, _gl_map, lambda k: k)
    return system


class GlInftyObject:
    """Object of the infinite floor: partition -> positive multiplicity."""

    __slots__ = ("mult",)

    def __init__(self, mult=None):
        clean: dict[Partition, int] = {}
        for p, m in (mult or {}).items():
            if not isinstance(p, Partition):
                raise TypeError(f"labels must be Partition, got {p!r}")
            if not isinstance(m, int) or m <= 0:
                raise ValueError(f"multiplicities must be positive integers, got {m!r}")
            clean[p] = m
        self.mult = clean

    @classmethod
    def zero(cls) -> "GlInftyObject":
        return cls()

    @property
    def length(self) -> int:
        return sum(self.mult.values())

    def is_zero(self) -> bool:
        return not self.mult

    def max_rows(self) -> int:
        return max((p.rows for p in self.mult), default=0)

    def labels(self) -> list[Partition]:
        return sorted(self.mult, key=lambda p: (p.size, tuple(-x for x in p.parts)))

    def degree_component(self, d: int) -> "GlInftyObject":
        return GlInftyObject({p: m for p, m in self.mult.items() if p.size == d})

    def __eq__(self, other) -> bool:
        return isinstance(other, GlInftyObject) and self.mult == other.mult

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{p}:{m}" for p, m in sorted(self.mult.items(), key=lambda t: t[0].parts))
        return f"GlInftyObject({{{body}}})"

    def to_json(self) -> dict:
        return {"mult": [{"partition": p.to_json(), "m": m}
                         for p, m in sorted(self.mult.items(), key=lambda t: (t[0].size, tuple(-x for x in t[0].parts)))]}

    @classmethod
    def from_json(cls, data) -> "GlInftyObject":
        mult = _parse_mult(data, want_n=False)
        return cls(mult)


def _parse_mult(data, want_n: bool):
    if not isinstance(data, dict):
        raise ParseError("object must be a JSON object")
    raw = data.get("mult")
    if not isinstance(raw, list):
        raise ParseError('field "mult" must be a list')
    mult: dict[Partition, int] = {}
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"partition", "m"}:
            raise ParseError(f"malformed multiplicity entry {entry!r}")
        p = Partition.from_json(entry["partition"])
        m = entry["m"]
        if not isinstance(m, int) or m <= 0:
            raise ParseError(f"multiplicity must be a positive integer, got {m!r}")
        if p in mult:
            raise ParseError(f"duplicate label {p}")
        mult[p] = m
    if want_n:
        n = data.get("n")
        if not isinstance(n, int) or n < 0:
            raise ParseError('field "n" must be a nonnegative integer')
        return n, mult
    if "n" in data:
        raise ParseError('unexpected "n" field on an infinite-floor object')
    return mult


def ss_object(n: int, mult: dict[Partition, int]) -> SSObject:
    """Finite-floor object from partition multiplicities (row bound checked)."""
    for p in mult:
        if p.rows > n:
            raise DomainError(f"label {p} does not exist at floor {n}")
    return SSObject(n, {gl_label(p): m for p, m in mult.items()})


def ss_object_from_json(data) -> SSObject:
    n, mult = _parse_mult(data, want_n=True)
    try:
        return ss_object(n, mult)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def ss_object_to_json(obj: SSObject) -> dict:
    pairs = sorted(((_label_partition(lab), m) for lab, m in obj.mult.items()),
                   key=lambda t: (t[0].size, tuple(-x for x in t[0].parts)))
    return {"n": obj.index, "mult": [{"partition": p.to_json(), "m": m} for p, m in pairs]}


def restrict(obj: SSObject) -> SSObject:
    """One restriction step down the tower."""
    if obj.index == 0:
        raise DomainError("no smaller floor")
    return apply_functor_object(_gl_map(obj.index), obj)


def gamma_n(m_obj: GlInftyObject, n: int) -> SSObject:
    """Specialization to floor n: keep labels with at most n rows."""
    kept = {p: m for p, m in m_obj.mult.items() if p.rows <= n}
    return ss_object(n, kept)


def gamma_lim(m_obj: GlInftyObject, system: InverseSystem | None = None,
              horizon: int = 10) -> LimitObject:
    """Thread of all specializations, anchored where every label fits."""
    if system is None:
        system = gl_system(horizon)
    if system.name != GL_SYSTEM_NAME:
        raise DomainError("foreign system")
    level = m_obj.max_rows()
    n0 = max(1, level)
    return LimitObject(system, level, gamma_n(m_obj, n0))


def gamma_lim_star(limit_obj: LimitObject) -> GlInftyObject:
    """Read the stable label multiset of a gl-tower thread back off the anchor."""
    if limit_obj.system.name != GL_SYSTEM_NAME:
        raise DomainError("foreign system")
    return GlInftyObject({_label_partition(lab): m for lab, m in limit_obj.anchor.mult.items()})


def tensor(x: SSObject, y: SSObject) -> SSObject:
    """Tensor product at one floor: Littlewood-Richardson with the row filter."""
    if x.index != y.index:
        raise DomainError("index mismatch")
    n = x.index
    out: dict[Partition, int] = {}
    for lx, mx in x.mult.items():
        for ly, my in y.mult.items():
            for lam, c in schur_product(_label_partition(lx), _label_partition(ly)).items():
                if lam.rows <= n:
                    out[lam] = out.get(lam, 0) + mx * my * c
    return ss_object(n, out)


def tensor_infty(a: GlInftyObject, b: GlInftyObject) -> GlInftyObject:
    """Tensor product on the infinite floor: no row filter."""
    out: dict[Partition, int] = {}
    for la, ma in a.mult.items():
        for lb, mb in b.mult.items():
            for lam, c in schur_product(la, lb).items():
                out[lam] = out.get(lam, 0) + ma * mb * c
    return GlInftyObject(out)


def tensor_multiplicity(mu: Partition, nu: Partition, lam: Partition, n: int) -> int:
    """Multiplicity of one simple in a product of two, at floor n."""
    if lam.rows > n:
        return 0
    return lr_coefficient(mu, nu, lam)


def degree_component(obj: SSObject, d: int) -> SSObject:
    """Restrict a finite-floor object to labels of one size."""
    return SSObject(obj.index, {lab: m for lab, m in obj.mult.items() if lab.degree == d})


def character(obj: SSObject) -> TruncatedSymElem:
    """Class of the object in the truncated symmetric ring, Schur basis."""
    return TruncatedSymElem(obj.index, SCHUR,
                            {_label_partition(lab): m for lab, m in obj.mult.items()})


def character_infty(m_obj: GlInftyObject) -> SymFunc:
    """Class of an infinite-floor object in the symmetric-function ring."""
    return SymFunc(SCHUR, dict(m_obj.mult))

"""Inverse systems of semisimple finite-length categories.

The data model is skeletal and semisimple throughout: an object is a finite
multiset of simple labels, a morphism is a family of exact rational blocks,
one per label shared by source and target.  Systems are towers of such
categories connected by shortening maps (each simple goes to a simple or
dies).  Limit objects are finitely encoded by an anchor component at an
index past the declared stabilization witness of their level; components at
all other indices are materialized on demand, downward by applying the maps
and upward by inverting the witnessed level bijections.

All "for all indices" claims are verified up to caller-supplied horizons;
nothing here pretends to decide statements over the infinite tower.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import linalg
from .errors import CompatibilityError, DomainError, StabilizationError


@dataclass(frozen=True)
class SimpleLabel:
    """Isomorphism class of a simple object.

    ident must be hashable and totally ordered within one system; level is
    the filtration value, degree an optional grading used to keep label
    enumeration finite.
    """

    ident: object
    level: int
    degree: Optional[int] = None


@dataclass(frozen=True)
class SSCategory:
    """One floor of the tower: an index and a label enumerator.

    enumerator(max_level, degree_horizon) must be deterministic and monotone
    in max_level; the degree horizon keeps the answer finite and is ignored
    by categories whose labels carry no degree.
    """

    index: int
    enumerator: Callable[[int, int], list]

    def labels(self, max_level: int, horizon: int) -> list[SimpleLabel]:
        return sorted(self.enumerator(max_level, horizon), key=lambda lab: lab.ident)


@dataclass(frozen=True)
class ShorteningMap:
    """Pointed map on simple labels from index source to source - 1.

    None plays the role of zero.  Level must not increase on surviving
    labels; the engine relies on it and check_conditions reports violations.
    """

    source: int
    target: int
    action: Callable[[SimpleLabel], Optional[SimpleLabel]]

    def __post_init__(self):
        if self.target != self.source - 1:
            raise ValueError(f"shortening map must drop one index: {self.source}->{self.target}")

    def __call__(self, label: SimpleLabel) -> Optional[SimpleLabel]:
        return self.action(label)


class SSObject:
    """Semisimple object: label -> positive multiplicity."""

    __slots__ = ("index", "mult")

    def __init__(self, index: int, mult=None):
        if index < 0:
            raise ValueError(f"category index must be nonnegative: {index}")
        clean: dict[SimpleLabel, int] = {}
        for label, m in (mult or {}).items():
            if not isinstance(label, SimpleLabel):
                raise TypeError(f"labels must be SimpleLabel, got {label!r}")
            if not isinstance(m, int) or m <= 0:
                raise ValueError(f"multiplicities must be positive integers, got {m!r}")
            clean[label] = m
        self.index = index
        self.mult = clean

    @classmethod
    def zero(cls, index: int) -> "SSObject":
        return cls(index)

    @property
    def length(self) -> int:
        return sum(self.mult.values())

    def is_zero(self) -> bool:
        return not self.mult

    def labels(self) -> list[SimpleLabel]:
        return sorted(self.mult, key=lambda lab: lab.ident)

    def __eq__(self, other) -> bool:
        return isinstance(other, SSObject) and self.index == other.index and self.mult == other.mult

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{lab.ident}:{self.mult[lab]}" for lab in self.labels())
        return f"SSObject(i={self.index}, {{{body}}})"


class SSMorphism:
    """Morphism between semisimple objects at one index.

    blocks[label] is a (target mult) x (source mult) rational matrix; blocks
    may only be supplied for labels present on both sides, and a missing
    block on a shared label means zero.
    """

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: SSObject, target: SSObject, blocks=None):
        if source.index != target.index:
            raise DomainError("index mismatch")
        frozen = {}
        for label, block in (blocks or {}).items():
            if label not in source.mult or label not in target.mult:
                raise ValueError(f"block for label {label.ident} outside both supports")
            m = linalg.mat(block)
            if linalg.shape(m) != (target.mult[label], source.mult[label]):
                raise ValueError(f"block for {label.ident} has shape {linalg.shape(m)}, "
                                 f"want {(target.mult[label], source.mult[label])}")
            frozen[label] = m
        self.source = source
        self.target = target
        self.blocks = frozen

    @classmethod
    def identity(cls, obj: SSObject) -> "SSMorphism":
        return cls(obj, obj, {lab: linalg.identity(m) for lab, m in obj.mult.items()})

    @classmethod
    def zero(cls, source: SSObject, target: SSObject) -> "SSMorphism":
        return cls(source, target, {})

    def shared_labels(self) -> list[SimpleLabel]:
        return sorted(set(self.source.mult) & set(self.target.mult), key=lambda lab: lab.ident)

    def block(self, label: SimpleLabel) -> linalg.Matrix:
        """Effective block on a shared label (zero matrix when unset)."""
        stored = self.blocks.get(label)
        if stored is not None:
            return stored
        return linalg.zeros(self.target.mult[label], self.source.mult[label])

    def compose(self, inner: "SSMorphism") -> "SSMorphism":
        """self after inner."""
        if inner.target != self.source:
            raise DomainError("composition endpoints do not match")
        blocks = {}
        for label in set(inner.source.mult) & set(self.target.mult):
            if label in self.source.mult:
                blocks[label] = linalg.matmul(self.block(label), inner.block(label))
        return SSMorphism(inner.source, self.target, blocks)

    def __add__(self, other: "SSMorphism") -> "SSMorphism":
        if self.source != other.source or self.target != other.target:
            raise DomainError("sum endpoints do not match")
        blocks = {lab: linalg.madd(self.block(lab), other.block(lab)) for lab in self.shared_labels()}
        return SSMorphism(self.source, self.target, blocks)

    def is_zero(self) -> bool:
        zero = linalg.Fraction(0)
        return all(all(x == zero for row in b for x in row) for b in self.blocks.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SSMorphism):
            return False
        if self.source != other.source or self.target != other.target:
            return False
        return all(self.block(lab) == other.block(lab) for lab in self.shared_labels())

    __hash__ = None

    def __repr__(self) -> str:
        return f"SSMorphism(i={self.source.index}, {len(self.blocks)} blocks)"


@dataclass(frozen=True)
class InverseSystem:
    """A tower of categories, shortening maps and per-level witnesses.

    map_from(i) connects index i to i - 1 (defined for i >= 1).  witness(k)
    is the declared index past which the maps restrict to bijections on
    labels of level <= k; limit-object transport depends on it.
    """

    name: str
    category: Callable[[int], SSCategory]
    map_from: Callable[[int], ShorteningMap]
    witness: Callable[[int], int]


def apply_functor_object(m: ShorteningMap, obj: SSObject) -> SSObject:
    """Push a semisimple object one step down the tower."""
    if obj.index != m.source:
        raise DomainError("index mismatch")
    out: dict[SimpleLabel, int] = {}
    for label, k in obj.mult.items():
        image = m(label)
        if image is not None:
            out[image] = out.get(image, 0) + k
    return SSObject(m.target, out)


def apply_functor_morphism(m: ShorteningMap, f: SSMorphism) -> SSMorphism:
    """Push a morphism one step down: blockwise direct sums over preimages.

    Preimage labels are stacked in the canonical identifier order, so the
    result is deterministic and composition/identities are preserved.
    """
    src2 = apply_functor_object(m, f.source)
    tgt2 = apply_functor_object(m, f.target)
    groups: dict[SimpleLabel, list[SimpleLabel]] = {}
    for label in set(f.source.mult) | set(f.target.mult):
        image = m(label)
        if image is not None:
            groups.setdefault(image, []).append(label)
    blocks = {}
    for image, labels in groups.items():
        if image not in src2.mult or image not in tgt2.mult:
            continue
        labels.sort(key=lambda lab: lab.ident)
        rows = sum(f.target.mult.get(lab, 0) for lab in labels)
        cols = sum(f.source.mult.get(lab, 0) for lab in labels)
        block = [[linalg.Fraction(0)] * cols for _ in range(rows)]
        r_off = c_off = 0
        for lab in labels:
            t = f.target.mult.get(lab, 0)
            s = f.source.mult.get(lab, 0)
            if t and s:
                piece = f.block(lab)
                for r in range(t):
                    for c in range(s):
                        block[r_off + r][c_off + c] = piece[r][c]
            r_off += t
            c_off += s
        blocks[image] = block
    return SSMorphism(src2, tgt2, blocks)


def _degree_horizon(labels) -> int:
    return max((lab.degree for lab in labels if lab.degree is not None), default=0)


def _lift_label_map(system: InverseSystem, level: int, labels, j: int) -> dict:
    """Unique preimages at index j+1 of the given labels of C_j.

    Preimages are searched among labels of level <= level and degree up to
    the largest degree present (degree-preserving maps are assumed for
    degree-graded systems; the search is horizon-bounded by construction).
    """
    horizon = _degree_horizon(labels)
    candidates = system.category(j + 1).labels(level, horizon)
    m = system.map_from(j + 1)
    images: dict[SimpleLabel, list[SimpleLabel]] = {}
    for cand in candidates:
        image = m(cand)
        if image is not None:
            images.setdefault(image, []).append(cand)
    mapping = {}
    for label in labels:
        pre = images.get(label, [])
        if not pre:
            raise StabilizationError(
                f"label {label.ident} at index {j} has no preimage at index {j + 1}",
                index=j + 1, label=label, reason="missing")
        if len(pre) > 1:
            raise StabilizationError(
                f"label {label.ident} at index {j} has {len(pre)} preimages at index {j + 1}",
                index=j + 1, label=label, reason="ambiguous")
        mapping[label] = pre[0]
    return mapping


class LimitObject:
    """Eventually-stable finite encoding of a compatible family.

    The anchor component at index n0 >= witness(level) determines every
    other component: downward via the shortening maps, upward via the
    witnessed level bijections.
    """

    __slots__ = ("system", "level", "anchor")

    def __init__(self, system: InverseSystem, level: int, anchor: SSObject):
        if level < 0:
            raise ValueError(f"level must be nonnegative: {level}")
        n_k = system.witness(level)
        if anchor.index < n_k:
            raise DomainError(
                f"anchor index {anchor.index} is below the witness {n_k} for level {level}")
        for label in anchor.mult:
            if label.level > level:
                raise DomainError(f"label {label.ident} exceeds the level bound {level}")
        self.system = system
        self.level = level
        self.anchor = anchor

    @property
    def anchor_index(self) -> int:
        return self.anchor.index

    @property
    def length(self) -> int:
        """Length of the whole family: the anchor realizes the maximum."""
        return self.anchor.length

    def is_zero(self) -> bool:
        return self.anchor.is_zero()

    def is_simple(self) -> bool:
        return self.length == 1

    def object_at(self, i: int) -> SSObject:
        """Materialize the component at index i."""
        if i < 0:
            raise ValueError(f"index must be nonnegative: {i}")
        n0 = self.anchor_index
        obj = self.anchor
        if i <= n0:
            for j in range(n0, i, -1):
                obj = apply_functor_object(self.system.map_from(j), obj)
            return obj
        for j in range(n0, i):
            mapping = _lift_label_map(self.system, self.level, obj.labels(), j)
            obj = SSObject(j + 1, {mapping[lab]: m for lab, m in obj.mult.items()})
        return obj

    def components(self, horizon: int) -> list[SSObject]:
        return [self.object_at(i) for i in range(horizon + 1)]

    def re_anchor(self, n0: int, level: Optional[int] = None) -> "LimitObject":
        new_level = self.level if level is None else level
        return LimitObject(self.system, new_level, self.object_at(n0))

    def isomorphic_to(self, other: "LimitObject") -> bool:
        if self.system is not other.system:
            raise DomainError("different systems")
        common = max(self.anchor_index, other.anchor_index)
        return self.object_at(common) == other.object_at(common)

    def __repr__(self) -> str:
        return f"LimitObject(level={self.level}, n0={self.anchor_index}, {self.anchor!r})"


def check_thread(obj: LimitObject, horizon: int) -> None:
    """Verify the defining compatibility equations on indices 0..horizon."""
    comps = obj.components(horizon)
    for i in range(1, horizon + 1):
        pushed = apply_functor_object(obj.system.map_from(i), comps[i])
        if pushed != comps[i - 1]:
            raise CompatibilityError(f"compatibility fails between indices {i} and {i - 1}")


def align(c: LimitObject, d: LimitObject) -> tuple[LimitObject, LimitObject]:
    """Re-anchor two limit objects of one system to a common level and index."""
    if c.system is not d.system:
        raise DomainError("different systems")
    level = max(c.level, d.level)
    n0 = max(c.anchor_index, d.anchor_index)
    return c.re_anchor(n0, level), d.re_anchor(n0, level)


def direct_sum(c: LimitObject, d: LimitObject) -> LimitObject:
    """Componentwise biproduct; anchor multiplicities add after alignment."""
    c2, d2 = align(c, d)
    mult = dict(c2.anchor.mult)
    for label, m in d2.anchor.mult.items():
        mult[label] = mult.get(label, 0) + m
    return LimitObject(c2.system, c2.level, SSObject(c2.anchor_index, mult))


class LimitMorphism:
    """Compatible family of morphisms, encoded by its anchor blocks.

    Source and target must share the anchor index; components elsewhere are
    materialized on demand and commute with the transport by construction.
    """

    __slots__ = ("source", "target", "anchor_blocks")

    def __init__(self, source: LimitObject, target: LimitObject, anchor_blocks: SSMorphism):
        if source.system is not target.system:
            raise DomainError("different systems")
        if source.anchor_index != target.anchor_index:
            raise DomainError("source and target must be anchored at the same index")
        if anchor_blocks.source != source.anchor or anchor_blocks.target != target.anchor:
            raise DomainError("anchor blocks do not match the anchors")
        self.source = source
        self.target = target
        self.anchor_blocks = anchor_blocks

    @property
    def system(self) -> InverseSystem:
        return self.source.system

    @property
    def anchor_index(self) -> int:
        return self.source.anchor_index

    def morphism_at(self, i: int) -> SSMorphism:
        n0 = self.anchor_index
        if i <= n0:
            f = self.anchor_blocks
            for j in range(n0, i, -1):
                f = apply_functor_morphism(self.system.map_from(j), f)
            return f
        level = max(self.source.level, self.target.level)
        labels = sorted(set(self.source.anchor.mult) | set(self.target.anchor.mult),
                        key=lambda lab: lab.ident)
        mapping = {lab: lab for lab in labels}
        for j in range(n0, i):
            step = _lift_label_map(self.system, level, list(mapping.values()), j)
            mapping = {lab: step[cur] for lab, cur in mapping.items()}
        blocks = {mapping[lab]: self.anchor_blocks.block(lab)
                  for lab in self.anchor_blocks.shared_labels()}
        return SSMorphism(self.source.object_at(i), self.target.object_at(i), blocks)

    @classmethod
    def identity(cls, obj: LimitObject) -> "LimitMorphism":
        return cls(obj, obj, SSMorphism.identity(obj.anchor))

    @classmethod
    def zero(cls, source: LimitObject, target: LimitObject) -> "LimitMorphism":
        return cls(source, target, SSMorphism.zero(source.anchor, target.anchor))

    def compose(self, inner: "LimitMorphism") -> "LimitMorphism":
        return LimitMorphism(inner.source, self.target,
                             self.anchor_blocks.compose(inner.anchor_blocks))

    def __add__(self, other: "LimitMorphism") -> "LimitMorphism":
        return LimitMorphism(self.source, self.target, self.anchor_blocks + other.anchor_blocks)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LimitMorphism)
                and self.source.isomorphic_to(other.source)
                and self.target.isomorphic_to(other.target)
                and self.anchor_blocks == other.anchor_blocks)

    __hash__ = None

    def __repr__(self) -> str:
        return f"LimitMorphism(n0={self.anchor_index}, {self.anchor_blocks!r})"


def biproduct(c: LimitObject, d: LimitObject):
    """Direct sum together with its inclusion and projection morphisms."""
    c2, d2 = align(c, d)
    total = direct_sum(c2, d2)
    anchor = total.anchor

    def embed(part: LimitObject, offset_from_c: bool):
        inc_blocks, proj_blocks = {}, {}
        for label, m in part.anchor.mult.items():
            rows_total = anchor.mult[label]
            offset = c2.anchor.mult.get(label, 0) if offset_from_c else 0
            inc = [[linalg.Fraction(1 if r == offset + cidx else 0) for cidx in range(m)]
                   for r in range(rows_total)]
            inc_blocks[label] = inc
            proj = [[linalg.Fraction(1 if c == offset + ridx else 0) for c in range(rows_total)]
                    for ridx in range(m)]
            proj_blocks[label] = proj
        inclusion = LimitMorphism(part, total, SSMorphism(part.anchor, anchor, inc_blocks))
        projection = LimitMorphism(total, part, SSMorphism(anchor, part.anchor, proj_blocks))
        return inclusion, projection

    inc_c, proj_c = embed(c2, False)
    inc_d, proj_d = embed(d2, True)
    return total, inc_c, inc_d, proj_c, proj_d


def kernel(f: LimitMorphism) -> tuple[LimitObject, LimitMorphism]:
    """Kernel object and its inclusion, computed labelwise at the anchor."""
    src, tgt = f.source.anchor, f.target.anchor
    ker_mult: dict[SimpleLabel, int] = {}
    inc_blocks = {}
    for label, s in src.mult.items():
        if label not in tgt.mult:
            ker_mult[label] = s
            inc_blocks[label] = linalg.identity(s)
            continue
        basis = linalg.nullspace(f.anchor_blocks.block(label))
        if basis:
            ker_mult[label] = len(basis)
            inc_blocks[label] = linalg.columns_matrix(basis, s)
    ker = LimitObject(f.system, f.source.level, SSObject(src.index, ker_mult))
    inclusion = LimitMorphism(ker, f.source, SSMorphism(ker.anchor, src, inc_blocks))
    return ker, inclusion


def cokernel(f: LimitMorphism) -> tuple[LimitObject, LimitMorphism]:
    """Cokernel object and its projection, computed labelwise at the anchor."""
    src, tgt = f.source.anchor, f.target.anchor
    cok_mult: dict[SimpleLabel, int] = {}
    proj_blocks = {}
    for label, t in tgt.mult.items():
        if label not in src.mult:
            cok_mult[label] = t
            proj_blocks[label] = linalg.identity(t)
            continue
        basis = linalg.left_nullspace(f.anchor_blocks.block(label))
        if basis:
            cok_mult[label] = len(basis)
            proj_blocks[label] = linalg.rows_matrix(basis, t)
    cok = LimitObject(f.system, f.target.level, SSObject(tgt.index, cok_mult))
    projection = LimitMorphism(f.target, cok, SSMorphism(tgt, cok.anchor, proj_blocks))
    return cok, projection


def image(f: LimitMorphism) -> tuple[LimitObject, LimitMorphism]:
    """Image as the kernel of the cokernel; returns (object, inclusion into target)."""
    _, projection = cokernel(f)
    return kernel(projection)


def coimage(f: LimitMorphism) -> tuple[LimitObject, LimitMorphism]:
    """Coimage as the cokernel of the kernel; returns (object, projection from source)."""
    _, inclusion = kernel(f)
    return cokernel(inclusion)


def canonical_factor(f: LimitMorphism) -> LimitMorphism:
    """The induced map coimage -> image through which f factors."""
    coim, q = coimage(f)
    img, iota = image(f)
    blocks = {}
    for label in sorted(set(coim.anchor.mult) & set(img.anchor.mult), key=lambda lab: lab.ident):
        b = f.anchor_blocks.block(label)
        q_block = q.anchor_blocks.block(label)
        i_block = iota.anchor_blocks.block(label)
        w = linalg.matmul(b, linalg.right_inverse(q_block))
        blocks[label] = linalg.solve(i_block, w)
    return LimitMorphism(coim, img, SSMorphism(coim.anchor, img.anchor, blocks))


def is_isomorphism(f: LimitMorphism) -> bool:
    """True iff multiplicities agree labelwise and every block is invertible."""
    src, tgt = f.source.anchor.mult, f.target.anchor.mult
    if src != tgt:
        return False
    return all(linalg.is_invertible(f.anchor_blocks.block(lab)) for lab in src)


def limit_simples(system: InverseSystem, k: int, horizon: int) -> list[LimitObject]:
    """Simple objects of the restricted limit at level <= k, anchored at the witness.

    One thread per level-<=k label of the witness-index category whose upward
    lift exists through the horizon; labels that die (no preimage) contribute
    no thread.  Ambiguous preimages violate the declared witness and raise.
    """
    n_k = system.witness(k)
    if horizon < n_k:
        raise DomainError(f"horizon {horizon} is below the witness {n_k} for level {k}")
    simples = []
    for label in system.category(n_k).labels(k, horizon):
        candidate = LimitObject(system, k, SSObject(n_k, {label: 1}))
        try:
            comps = candidate.components(horizon)
        except StabilizationError as exc:
            if exc.reason == "missing":
                continue
            raise
        for i in range(1, horizon + 1):
            pushed = apply_functor_object(system.map_from(i), comps[i])
            if pushed != comps[i - 1]:
                raise CompatibilityError(
                    f"thread through {label.ident} fails compatibility at index {i}")
        if any(comp.length > 1 for comp in comps):
            raise DomainError(f"thread through {label.ident} has a component of length > 1")
        simples.append(candidate)
    return simples


def restricted_membership(system: InverseSystem, prefix: list[SSObject], tail_len: int) -> bool:
    """Horizon-relative restricted-limit membership of a compatible prefix.

    The prefix holds components at indices 0..len-1; its compatibility is an
    error when violated, while the verdict is about the length sequence:
    weakly increasing and constant on the declared tail segment.
    """
    if tail_len < 1 or tail_len > len(prefix):
        raise DomainError(f"tail length {tail_len} out of range for prefix of {len(prefix)}")
    for i, comp in enumerate(prefix):
        if comp.index != i:
            raise CompatibilityError(f"component at position {i} has index {comp.index}")
    for i in range(1, len(prefix)):
        pushed = apply_functor_object(system.map_from(i), prefix[i])
        if pushed != prefix[i - 1]:
            raise CompatibilityError(f"incompatible prefix at index {i}")
    lengths = [comp.length for comp in prefix]
    if any(a > b for a, b in zip(lengths, lengths[1:])):
        return False
    tail = lengths[-tail_len:]
    return len(set(tail)) <= 1


def _pointed_injective(system: InverseSystem, i: int, k: int, horizon: int):
    """Injectivity of the map at index i on level-<=k labels, as pointed sets."""
    labels = system.category(i).labels(k, horizon)
    m = system.map_from(i)
    seen: dict[SimpleLabel, SimpleLabel] = {}
    for label in labels:
        image = m(label)
        if image is None:
            return False, {"killed": label_to_json(label)}
        if image in seen:
            return False, {"merged": [label_to_json(seen[image]), label_to_json(label)],
                           "onto": label_to_json(image)}
        seen[image] = label
    return True, None


def _bijective_on_level(system: InverseSystem, i: int, k: int, horizon: int):
    ok, counterexample = _pointed_injective(system, i, k, horizon)
    if not ok:
        return ok, counterexample
    labels = system.category(i).labels(k, horizon)
    m = system.map_from(i)
    image = {m(label) for label in labels}
    targets = set(system.category(i - 1).labels(k, horizon))
    missed = sorted(targets - image, key=lambda lab: lab.ident)
    if missed:
        return False, {"unreached": label_to_json(missed[0])}
    stray = sorted(image - targets - {None}, key=lambda lab: lab.ident)
    if stray:
        return False, {"outside": label_to_json(stray[0])}
    return True, None


def check_conditions(system: InverseSystem, k_max: int, horizon: int) -> dict:
    """Horizon-bounded report on the two coincidence conditions, per level.

    Condition 1: threads visible in the window stay within their level.
    Condition 2: the maps are eventually injective on each level; N_k is the
    least index with injectivity at every probed index above it.  The
    declared witness is additionally checked for the stronger bijectivity
    the limit-object transport uses.  Findings are data, never exceptions.
    """
    levels = []
    for k in range(k_max + 1):
        cond1_ok, cond1_ce = True, None
        for label in system.category(horizon).labels(k, horizon):
            current = label
            for i in range(horizon, 0, -1):
                image = system.map_from(i)(current)
                if image is None:
                    break
                if image.level > k:
                    cond1_ok = False
                    cond1_ce = {"index": i - 1, "label": label_to_json(image)}
                    break
                current = image
            if not cond1_ok:
                break
        failures = {}
        for i in range(1, horizon + 1):
            ok, counterexample = _pointed_injective(system, i, k, horizon)
            if not ok:
                failures[i] = counterexample
        if failures and max(failures) == horizon:
            cond2_ok, n_injective = False, None
            cond2_ce = {"index": max(failures), **failures[max(failures)]}
        else:
            cond2_ok, n_injective, cond2_ce = True, max(failures, default=0), None
        n_k = system.witness(k)
        witness_ok, witness_ce = True, None
        for i in range(n_k + 1, horizon + 1):
            ok, counterexample = _bijective_on_level(system, i, k, horizon)
            if not ok:
                witness_ok, witness_ce = False, {"index": i, **counterexample}
                break
        levels.append({
            "k": k,
            "condition1_ok": cond1_ok,
            "condition1_counterexample": cond1_ce,
            "condition2_ok": cond2_ok,
            "n_injective": n_injective,
            "condition2_counterexample": cond2_ce,
            "declared_witness": n_k,
            "witness_bijective_ok": witness_ok,
            "witness_counterexample": witness_ce,
        })
    return {"system": system.name, "k_max": k_max, "horizon": horizon, "levels": levels}


def label_to_json(label: SimpleLabel) -> dict:
    return {"id": _ident_to_json(label.ident), "level": label.level, "degree": label.degree}


def label_from_json(data) -> SimpleLabel:
    if not isinstance(data, dict) or "id" not in data or "level" not in data:
        raise DomainError(f"malformed label record {data!r}")
    degree = data.get("degree")
    return SimpleLabel(_ident_from_json(data["id"]), data["level"], degree)


def _ident_to_json(ident):
    if isinstance(ident, tuple):
        return [_ident_to_json(x) for x in ident]
    return ident


def _ident_from_json(value):
    if isinstance(value, list):
        return tuple(_ident_from_json(x) for x in value)
    return value


def system_to_json(system: InverseSystem, k_max: int, horizon: int) -> dict:
    """Finite presentation of a system window, suitable for check-system."""
    categories = []
    for i in range(horizon + 1):
        labels = system.category(i).labels(k_max, horizon)
        categories.append({"index": i, "labels": [label_to_json(lab) for lab in labels]})
    maps = []
    for i in range(1, horizon + 1):
        m = system.map_from(i)
        table = []
        for lab in system.category(i).labels(k_max, horizon):
            image = m(lab)
            table.append({"from": _ident_to_json(lab.ident),
                          "to": None if image is None else _ident_to_json(image.ident)})
        maps.append({"source": i, "table": table})
    witness = [{"level": k, "index": system.witness(k)} for k in range(k_max + 1)]
    return {"name": system.name, "horizon": horizon, "k_max": k_max,
            "categories": categories, "maps": maps, "witness": witness}


def system_from_json(data) -> InverseSystem:
    """Rebuild a table-backed system from its finite JSON presentation."""
    if not isinstance(data, dict):
        raise DomainError("system presentation must be a JSON object")
    try:
        label_tables: dict[int, dict] = {}
        for cat in data["categories"]:
            idx = cat["index"]
            table = {}
            for rec in cat["labels"]:
                label = label_from_json(rec)
                if label.ident in table:
                    raise DomainError(f"duplicate label {label.ident} at index {idx}")
                table[label.ident] = label
            label_tables[idx] = table
        map_tables: dict[int, dict] = {}
        for entry in data["maps"]:
            i = entry["source"]
            table = {}
            for rec in entry["table"]:
                src_ident = _ident_from_json(rec["from"])
                dst = rec["to"]
                if src_ident not in label_tables.get(i, {}):
                    raise DomainError(f"map at index {i} names unknown label {src_ident}")
                if dst is not None:
                    dst_ident = _ident_from_json(dst)
                    if dst_ident not in label_tables.get(i - 1, {}):
                        raise DomainError(f"map at index {i} targets unknown label {dst_ident}")
                    table[src_ident] = label_tables[i - 1][dst_ident]
                else:
                    table[src_ident] = None
            map_tables[i] = table
        witness_table = {rec["level"]: rec["index"] for rec in data["witness"]}
        name = data.get("name", "json")
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed system presentation: {exc!r}") from exc

    def category(i: int) -> SSCategory:
        table = label_tables.get(i, {})

        def enumerator(max_level: int, horizon: int, _table=table):
            return [lab for lab in _table.values()
                    if lab.level <= max_level and (lab.degree is None or lab.degree <= horizon)]

        return SSCategory(i, enumerator)

    def map_from(i: int) -> ShorteningMap:
        table = map_tables.get(i, {})

        def action(label: SimpleLabel, _table=table):
            return _table.get(label.ident)

        return ShorteningMap(i, i - 1, action)

    def witness(k: int) -> int:
        if k not in witness_table:
            raise DomainError(f"no witness declared for level {k}")
        return witness_table[k]

    return InverseSystem(name, category, map_from, witness)

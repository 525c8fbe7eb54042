import json
import random
from fractions import Fraction

import pytest

from symlim import linalg
from symlim.engine import (InverseSystem, LimitMorphism, LimitObject, SSCategory, SSMorphism,
                           SSObject, ShorteningMap, SimpleLabel, apply_functor_morphism,
                           apply_functor_object, biproduct, canonical_factor, check_conditions,
                           check_thread, coimage, cokernel, direct_sum, image, is_isomorphism,
                           kernel, limit_simples, restricted_membership, system_from_json,
                           system_to_json)
from symlim.errors import CompatibilityError, DomainError, StabilizationError

LA = SimpleLabel("a", 0)
LB = SimpleLabel("b", 1)
LC = SimpleLabel("c", 2)


def constant_system(labels, name="const"):
    """Same labels at every index, identity maps."""

    def category(i):
        return SSCategory(i, lambda k, h: [lab for lab in labels if lab.level <= k])

    def map_from(i):
        return ShorteningMap(i, i - 1, lambda lab: lab)

    return InverseSystem(name, category, map_from, lambda k: 0)


def killer_system():
    """The level-1 label dies at every index; the declared witness lies."""

    def category(i):
        return SSCategory(i, lambda k, h: [lab for lab in (LA, LB) if lab.level <= k])

    def map_from(i):
        return ShorteningMap(i, i - 1, lambda lab: LA if lab == LA else None)

    return InverseSystem("killer", category, map_from, lambda k: 0)


def late_start_system(start=2):
    """LB exists only from index `start` upward; maps are bijections beyond."""

    def category(i):
        labs = (LA, LB) if i >= start else (LA,)
        return SSCategory(i, lambda k, h, _ls=labs: [lab for lab in _ls if lab.level <= k])

    def map_from(i):
        def action(lab):
            if lab == LB and i - 1 < start:
                return None
            return lab

        return ShorteningMap(i, i - 1, action)

    return InverseSystem("late", category, map_from, lambda k: 0 if k == 0 else start)


def random_block(rng, rows, cols):
    return [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]


def random_limit_morphism(rng, system, labels, max_mult=4):
    src_mult = {lab: rng.randint(1, max_mult) for lab in labels if rng.random() < 0.8}
    tgt_mult = {lab: rng.randint(1, max_mult) for lab in labels if rng.random() < 0.8}
    level = max((lab.level for lab in labels), default=0)
    src = LimitObject(system, level, SSObject(system.witness(level), src_mult))
    tgt = LimitObject(system, level, SSObject(system.witness(level), tgt_mult))
    blocks = {lab: random_block(rng, tgt_mult[lab], src_mult[lab])
              for lab in src_mult if lab in tgt_mult}
    return LimitMorphism(src, tgt, SSMorphism(src.anchor, tgt.anchor, blocks))


class TestFunctorOnObjects:
    def test_identity(self):
        m = ShorteningMap(3, 2, lambda lab: lab)
        x = SSObject(3, {LA: 2, LB: 1})
        assert apply_functor_object(m, x) == SSObject(2, {LA: 2, LB: 1})

    def test_kill_everything(self):
        m = ShorteningMap(1, 0, lambda lab: None)
        assert apply_functor_object(m, SSObject(1, {LA: 5})).is_zero()

    def test_merge_adds_multiplicities(self):
        m = ShorteningMap(1, 0, lambda lab: LC)
        x = SSObject(1, {LA: 2, LB: 3})
        assert apply_functor_object(m, x) == SSObject(0, {LC: 5})

    def test_index_mismatch(self):
        m = ShorteningMap(1, 0, lambda lab: lab)
        with pytest.raises(DomainError, match="index mismatch"):
            apply_functor_object(m, SSObject(2, {LA: 1}))

    def test_shortening_inequality(self):
        rng = random.Random(31)
        m = ShorteningMap(1, 0, lambda lab: LC if lab in (LA, LB) else None)
        for _ in range(50):
            mult = {lab: rng.randint(1, 4) for lab in (LA, LB, LC) if rng.random() < 0.7}
            x = SSObject(1, mult)
            assert apply_functor_object(m, x).length <= x.length


class TestFunctorOnMorphisms:
    def test_identity_preserved(self):
        m = ShorteningMap(1, 0, lambda lab: LC if lab != LC else None)
        x = SSObject(1, {LA: 2, LB: 1})
        assert (apply_functor_morphism(m, SSMorphism.identity(x))
                == SSMorphism.identity(apply_functor_object(m, x)))

    def test_composition_preserved(self):
        rng = random.Random(32)
        m = ShorteningMap(1, 0, lambda lab: LC if lab in (LA, LB) else lab)
        for _ in range(30):
            x = SSObject(1, {LA: rng.randint(1, 3), LB: rng.randint(1, 3)})
            y = SSObject(1, {LA: rng.randint(1, 3), LB: rng.randint(1, 3), LC: 1})
            z = SSObject(1, {LA: rng.randint(1, 3), LC: rng.randint(1, 3)})
            f = SSMorphism(x, y, {lab: random_block(rng, y.mult[lab], x.mult[lab])
                                  for lab in (LA, LB)})
            g = SSMorphism(y, z, {LA: random_block(rng, z.mult[LA], y.mult[LA]),
                                  LC: random_block(rng, z.mult[LC], y.mult[LC])})
            assert (apply_functor_morphism(m, g.compose(f))
                    == apply_functor_morphism(m, g).compose(apply_functor_morphism(m, f)))

    def test_killed_support_gives_zero(self):
        m = ShorteningMap(1, 0, lambda lab: None if lab == LA else lab)
        x = SSObject(1, {LA: 2, LB: 1})
        f = SSMorphism(x, x, {LA: [[1, 2], [3, 4]]})
        assert apply_functor_morphism(m, f).is_zero()

    def test_exactness_preserved(self):
        rng = random.Random(33)
        system = constant_system((LA, LB, LC))
        m = system.map_from(1)
        for _ in range(20):
            f = random_limit_morphism(rng, system, (LA, LB, LC))
            f1 = f.morphism_at(1)
            f0 = apply_functor_morphism(m, f1)
            for lab in set(f1.source.mult) | set(f1.target.mult):
                s1 = f1.source.mult.get(lab, 0)
                r1 = linalg.rank(f1.block(lab)) if lab in f1.shared_labels() else 0
                s0 = f0.source.mult.get(lab, 0)
                r0 = linalg.rank(f0.block(lab)) if lab in f0.shared_labels() else 0
                assert (s1, r1) == (s0, r0)


class TestLimitObjects:
    def test_constant_system_components(self):
        system = constant_system((LA, LB))
        obj = LimitObject(system, 1, SSObject(4, {LA: 2, LB: 1}))
        for i in range(8):
            assert obj.object_at(i) == SSObject(i, {LA: 2, LB: 1})

    def test_anchor_below_witness_rejected(self):
        system = late_start_system()
        with pytest.raises(DomainError, match="witness"):
            LimitObject(system, 1, SSObject(1, {LB: 1}))

    def test_label_above_level_rejected(self):
        system = constant_system((LA, LB))
        with pytest.raises(DomainError, match="level"):
            LimitObject(system, 0, SSObject(0, {LB: 1}))

    def test_upward_missing_preimage(self):
        system = killer_system()
        obj = LimitObject(system, 1, SSObject(0, {LB: 1}))
        with pytest.raises(StabilizationError) as info:
            obj.object_at(1)
        assert info.value.reason == "missing"

    def test_length_is_max(self):
        system = late_start_system()
        obj = LimitObject(system, 1, SSObject(3, {LA: 1, LB: 2}))
        lengths = [obj.object_at(i).length for i in range(9)]
        assert obj.length == max(lengths) == 3
        assert all(a <= b for a, b in zip(lengths, lengths[1:]))

    def test_check_thread(self):
        system = constant_system((LA,))
        obj = LimitObject(system, 0, SSObject(2, {LA: 1}))
        check_thread(obj, 6)

    def test_zero_object(self):
        system = constant_system((LA,))
        zero = LimitObject(system, 0, SSObject(0))
        assert zero.length == 0 and zero.is_zero() and not zero.is_simple()
        assert zero.object_at(5).is_zero()


class TestDirectSum:
    def test_zero_summand(self):
        system = constant_system((LA, LB))
        c = LimitObject(system, 1, SSObject(2, {LA: 1, LB: 2}))
        zero = LimitObject(system, 0, SSObject(0))
        assert direct_sum(c, zero).isomorphic_to(c)

    def test_length_additivity(self):
        rng = random.Random(34)
        system = constant_system((LA, LB, LC))
        for _ in range(20):
            c = LimitObject(system, 2, SSObject(1, {lab: rng.randint(1, 3)
                                                    for lab in (LA, LB) if rng.random() < 0.8}))
            d = LimitObject(system, 2, SSObject(3, {lab: rng.randint(1, 3)
                                                    for lab in (LB, LC) if rng.random() < 0.8}))
            assert direct_sum(c, d).length == c.length + d.length

    def test_biproduct_identities(self):
        rng = random.Random(35)
        system = constant_system((LA, LB, LC))
        for _ in range(15):
            c = LimitObject(system, 2, SSObject(2, {LA: rng.randint(1, 3), LC: 1}))
            d = LimitObject(system, 2, SSObject(2, {LA: rng.randint(1, 3), LB: 2}))
            total, inc_c, inc_d, proj_c, proj_d = biproduct(c, d)
            assert proj_c.compose(inc_c) == LimitMorphism.identity(inc_c.source)
            assert proj_d.compose(inc_d) == LimitMorphism.identity(inc_d.source)
            assert proj_c.compose(inc_d).anchor_blocks.is_zero()
            assert proj_d.compose(inc_c).anchor_blocks.is_zero()
            recomposed = inc_c.compose(proj_c) + inc_d.compose(proj_d)
            assert recomposed == LimitMorphism.identity(total)

    def test_different_systems_rejected(self):
        a = constant_system((LA,))
        b = constant_system((LA,))
        c1 = LimitObject(a, 0, SSObject(0, {LA: 1}))
        c2 = LimitObject(b, 0, SSObject(0, {LA: 1}))
        with pytest.raises(DomainError, match="different systems"):
            direct_sum(c1, c2)


class TestKernelCokernel:
    def test_identity_has_trivial_kernel(self):
        system = constant_system((LA, LB))
        c = LimitObject(system, 1, SSObject(1, {LA: 2, LB: 1}))
        ident = LimitMorphism.identity(c)
        assert kernel(ident)[0].is_zero()
        assert cokernel(ident)[0].is_zero()

    def test_zero_morphism_kernel_is_source(self):
        system = constant_system((LA, LB))
        c = LimitObject(system, 1, SSObject(1, {LA: 2, LB: 1}))
        d = LimitObject(system, 1, SSObject(1, {LA: 1}))
        zero = LimitMorphism.zero(c, d)
        ker, inclusion = kernel(zero)
        assert ker.isomorphic_to(c)
        assert is_isomorphism(LimitMorphism(ker, c, inclusion.anchor_blocks))

    def test_rank_accounting(self):
        rng = random.Random(36)
        system = constant_system((LA, LB, LC))
        for _ in range(40):
            f = random_limit_morphism(rng, system, (LA, LB, LC))
            ker, inclusion = kernel(f)
            cok, projection = cokernel(f)
            assert f.compose(inclusion).anchor_blocks.is_zero()
            assert projection.compose(f).anchor_blocks.is_zero()
            for lab in set(f.source.anchor.mult) | set(f.target.anchor.mult):
                s = f.source.anchor.mult.get(lab, 0)
                t = f.target.anchor.mult.get(lab, 0)
                r = (linalg.rank(f.anchor_blocks.block(lab))
                     if lab in f.anchor_blocks.shared_labels() else 0)
                assert ker.anchor.mult.get(lab, 0) == s - r
                assert cok.anchor.mult.get(lab, 0) == t - r

    def test_image_isomorphic_to_coimage(self):
        rng = random.Random(37)
        system = constant_system((LA, LB, LC))
        for _ in range(40):
            f = random_limit_morphism(rng, system, (LA, LB, LC))
            assert is_isomorphism(canonical_factor(f))
            assert image(f)[0].isomorphic_to(coimage(f)[0])

    def test_factorization(self):
        rng = random.Random(38)
        system = constant_system((LA, LB))
        for _ in range(20):
            f = random_limit_morphism(rng, system, (LA, LB))
            _, iota = image(f)
            _, q = coimage(f)
            assert iota.compose(canonical_factor(f)).compose(q) == f


class TestIsIsomorphism:
    def test_identity(self):
        system = constant_system((LA,))
        c = LimitObject(system, 0, SSObject(0, {LA: 3}))
        assert is_isomorphism(LimitMorphism.identity(c))

    def test_non_square_block(self):
        system = constant_system((LA,))
        c = LimitObject(system, 0, SSObject(0, {LA: 2}))
        d = LimitObject(system, 0, SSObject(0, {LA: 3}))
        f = LimitMorphism(c, d, SSMorphism(c.anchor, d.anchor,
                                           {LA: [[1, 0], [0, 1], [0, 0]]}))
        assert not is_isomorphism(f)

    def test_invertible_then_degraded(self):
        rng = random.Random(39)
        system = constant_system((LA, LB))
        done = 0
        while done < 10:
            c = LimitObject(system, 1, SSObject(0, {LA: 2, LB: 2}))
            blocks = {LA: random_block(rng, 2, 2), LB: random_block(rng, 2, 2)}
            if any(not linalg.is_invertible(linalg.mat(b)) for b in blocks.values()):
                continue
            f = LimitMorphism(c, c, SSMorphism(c.anchor, c.anchor, blocks))
            assert is_isomorphism(f)
            g = LimitMorphism(c, c, SSMorphism(c.anchor, c.anchor,
                                               {LA: blocks[LA], LB: linalg.zeros(2, 2)}))
            assert not is_isomorphism(g)
            done += 1


class TestLimitSimples:
    def test_constant_system(self):
        system = constant_system((LA, LB, LC))
        simples = limit_simples(system, 2, 6)
        assert len(simples) == 3
        assert all(s.is_simple() for s in simples)
        assert len(limit_simples(system, 0, 6)) == 1

    def test_killed_thread_absent(self):
        system = killer_system()
        simples = limit_simples(system, 1, 6)
        assert len(simples) == 1
        (label,) = simples[0].anchor.mult
        assert label == LA

    def test_horizon_below_witness(self):
        system = late_start_system(start=5)
        with pytest.raises(DomainError, match="witness"):
            limit_simples(system, 1, 3)

    def test_simple_classification(self):
        system = late_start_system()
        simple = limit_simples(system, 1, 8)[0]
        comps = simple.components(8)
        assert all(c.length <= 1 for c in comps) and not simple.is_zero()
        doubled = direct_sum(simple, simple)
        assert not doubled.is_simple()
        assert any(c.length > 1 for c in doubled.components(8))


class TestSerreProperty:
    def test_ses_membership_and_lengths(self):
        rng = random.Random(40)
        system = constant_system((LA, LB, LC))
        horizon, tail = 6, 3
        for _ in range(25):
            f = random_limit_morphism(rng, system, (LA, LB, LC))
            middle = f.source
            sub, _ = kernel(f)
            quot, _ = coimage(f)
            for obj in (middle, sub, quot):
                assert restricted_membership(system, obj.components(horizon), tail)
            assert middle.length <= sub.length + quot.length


class TestRestrictedMembership:
    def test_all_zero(self):
        system = constant_system((LA,))
        prefix = [SSObject(i) for i in range(5)]
        assert restricted_membership(system, prefix, 2)

    def test_stabilized_tail(self):
        system = late_start_system(start=2)
        obj = LimitObject(system, 1, SSObject(2, {LA: 1, LB: 2}))
        prefix = obj.components(6)
        assert restricted_membership(system, prefix, 4)

    def test_incompatible_prefix(self):
        system = constant_system((LA,))
        prefix = [SSObject(0, {LA: 1}), SSObject(1, {LA: 2})]
        with pytest.raises(CompatibilityError, match="index 1"):
            restricted_membership(system, prefix, 1)

    def test_growing_tail_rejected(self):
        def category(i):
            labs = tuple(SimpleLabel(("x", j), 1) for j in range(i + 1))
            return SSCategory(i, lambda k, h, _ls=labs: [lab for lab in _ls if lab.level <= k])

        def map_from(i):
            def action(lab):
                return lab if lab.ident[1] < i else None

            return ShorteningMap(i, i - 1, action)

        system = InverseSystem("grow", category, map_from, lambda k: 0)
        prefix = [SSObject(i, {SimpleLabel(("x", j), 1): 1 for j in range(i + 1)})
                  for i in range(5)]
        assert not restricted_membership(system, prefix, 2)


class TestStabilizingSystem:
    def test_component_determines_object(self):
        system = late_start_system(start=2)
        a = LimitObject(system, 1, SSObject(2, {LA: 1, LB: 2}))
        b = LimitObject(system, 1, SSObject(5, {LA: 1, LB: 2}))
        assert a.object_at(4) == b.object_at(4)
        assert a.isomorphic_to(b)

    def test_essentially_surjective_anchors(self):
        system = late_start_system(start=2)
        for i in (2, 3, 5):
            target = SSObject(i, {LA: 2, LB: 1})
            obj = LimitObject(system, 1, target)
            assert obj.object_at(i) == target


class TestCheckConditions:
    def test_constant_identity(self):
        system = constant_system((LA, LB, LC))
        report = check_conditions(system, 2, 6)
        for level in report["levels"]:
            assert level["condition1_ok"] and level["condition2_ok"]
            assert level["n_injective"] == 0
            assert level["witness_bijective_ok"]

    def test_killer_fails_condition_two(self):
        report = check_conditions(killer_system(), 1, 6)
        level1 = report["levels"][1]
        assert not level1["condition2_ok"]
        assert level1["condition2_counterexample"]["index"] == 6
        assert level1["condition2_counterexample"]["killed"]["id"] == "b"
        assert not level1["witness_bijective_ok"]
        level0 = report["levels"][0]
        assert level0["condition2_ok"] and level0["n_injective"] == 0

    def test_merging_detected(self):
        def category(i):
            return SSCategory(i, lambda k, h: [LA, SimpleLabel("a2", 0)])

        def map_from(i):
            return ShorteningMap(i, i - 1, lambda lab: LA)

        system = InverseSystem("merge", category, map_from, lambda k: 0)
        report = check_conditions(system, 0, 4)
        level = report["levels"][0]
        assert not level["condition2_ok"]
        assert "merged" in level["condition2_counterexample"]

    def test_report_is_json_serializable(self):
        report = check_conditions(killer_system(), 1, 4)
        assert json.loads(json.dumps(report)) == report


class TestMorphismTransport:
    def test_components_commute_with_maps(self):
        rng = random.Random(41)
        system = late_start_system(start=2)
        for _ in range(15):
            f = random_limit_morphism(rng, system, (LA, LB))
            for i in range(1, 7):
                pushed = apply_functor_morphism(system.map_from(i), f.morphism_at(i))
                assert pushed == f.morphism_at(i - 1)

    def test_identity_everywhere(self):
        system = late_start_system(start=2)
        c = LimitObject(system, 1, SSObject(2, {LA: 1, LB: 1}))
        ident = LimitMorphism.identity(c)
        for i in range(7):
            assert ident.morphism_at(i) == SSMorphism.identity(c.object_at(i))


class TestSystemJson:
    def test_roundtrip_report(self):
        system = killer_system()
        payload = system_to_json(system, 1, 5)
        rebuilt = system_from_json(json.loads(json.dumps(payload)))
        assert (check_conditions(rebuilt, 1, 5)["levels"]
                == check_conditions(system, 1, 5)["levels"])

    def test_malformed_rejected(self):
        with pytest.raises(DomainError):
            system_from_json({"categories": []})
        with pytest.raises(DomainError):
            system_from_json({
                "categories": [{"index": 0, "labels": []},
                               {"index": 1, "labels": [{"id": "a", "level": 0}]}],
                "maps": [{"source": 1, "table": [{"from": "a", "to": "ghost"}]}],
                "witness": [{"level": 0, "index": 0}],
            })

    def test_missing_witness_level(self):
        system = system_from_json(system_to_json(killer_system(), 1, 4))
        with pytest.raises(DomainError, match="witness"):
            system.witness(7)

"""Tests for the degeneration rewriting system and closure search."""

import json
from fractions import Fraction

import pytest

from skewstruct.blocks import BlockList, GeneralBlock, SkewBlock, general_to_skew, skew_to_general
from skewstruct.degeneration import (
    RuleApplication,
    apply_rule,
    apply_rule_paired,
    canonical_key,
    closure_reachable,
    enumerate_applications,
    equal_modulo_symbols,
    replay_certificate,
    twin_application,
)
from skewstruct.errors import (
    MissingBlocks,
    PairingBroken,
    ShapeMismatch,
    SideConditionViolated,
)
from skewstruct.generic import generic_pencil_structure
from skewstruct.points import INFINITY, SymbolicPoint

L = GeneralBlock.right
LT = GeneralBlock.left
E = GeneralBlock.finite
EINF = GeneralBlock.infinite


def gl(*blocks):
    return BlockList.general(blocks)


class TestApplyRule:
    def test_rule1(self):
        out = apply_rule(gl(L(0), L(2)), RuleApplication(1, j=1, k=1))
        assert out == gl(L(1), L(1))

    def test_rule2(self):
        out = apply_rule(gl(LT(0), LT(2)), RuleApplication(2, j=1, k=1))
        assert out == gl(LT(1), LT(1))

    def test_rule3(self):
        out = apply_rule(
            gl(L(0), E(2, 5)), RuleApplication(3, j=0, k=1, eigenvalue=Fraction(5))
        )
        assert out == gl(L(1), E(1, 5))

    def test_rule3_annihilates_unit_block(self):
        out = apply_rule(
            gl(L(0), E(1, 5)), RuleApplication(3, j=0, k=0, eigenvalue=Fraction(5))
        )
        assert out == gl(L(1))

    def test_rule3_infinite(self):
        out = apply_rule(
            gl(L(1), EINF(2)), RuleApplication(3, j=1, k=1, eigenvalue=INFINITY)
        )
        assert out == gl(L(2), EINF(1))

    def test_rule5(self):
        out = apply_rule(
            gl(E(1, 2), E(1, 2)), RuleApplication(5, j=1, k=1, eigenvalue=Fraction(2))
        )
        assert out == gl(E(2, 2))

    def test_rule6(self):
        mu = SymbolicPoint("mu")
        out = apply_rule(
            gl(L(0), LT(0)),
            RuleApplication(6, p=0, q=0, sizes=(1,), eigenvalues=(mu,)),
        )
        assert out == gl(E(1, mu))

    def test_rule6_side_conditions(self):
        with pytest.raises(SideConditionViolated):
            apply_rule(
                gl(L(1), LT(1)),
                RuleApplication(6, p=1, q=1, sizes=(1, 1), eigenvalues=(Fraction(0), Fraction(1))),
            )  # sizes sum 2 != 3
        with pytest.raises(SideConditionViolated):
            apply_rule(
                gl(L(0), LT(1)),
                RuleApplication(6, p=0, q=1, sizes=(1, 1), eigenvalues=(Fraction(0), Fraction(0))),
            )  # repeated eigenvalue

    def test_missing_blocks(self):
        with pytest.raises(MissingBlocks):
            apply_rule(gl(L(0)), RuleApplication(1, j=1, k=1))

    def test_size_preserved(self):
        before = gl(L(0), L(2), E(1, 3))
        after = apply_rule(before, RuleApplication(1, j=1, k=1))
        assert (after.total_rows, after.total_cols) == (before.total_rows, before.total_cols)


class TestPairedApplication:
    def test_paired_singular_trade(self):
        start = gl(L(0), L(2), LT(0), LT(2))
        out = apply_rule_paired(start, RuleApplication(1, j=1, k=1))
        assert out == gl(L(1), L(1), LT(1), LT(1))
        assert general_to_skew(out) == BlockList.skew([SkewBlock.m(1), SkewBlock.m(1)])

    def test_paired_absorb_shrinks_jordan_pair(self):
        # duplicated eigenvalue pair absorbed by the two halves of an M block
        start = skew_to_general(BlockList.skew([SkewBlock.m(0), SkewBlock.h(1, 2)]))
        out = apply_rule_paired(start, RuleApplication(3, j=0, k=0, eigenvalue=Fraction(2)))
        assert general_to_skew(out) == BlockList.skew([SkewBlock.m(1)])

    def test_paired_rule6_twice_raises_rank(self):
        start = skew_to_general(BlockList.skew([SkewBlock.m(0), SkewBlock.m(0)]))
        mu = SymbolicPoint("fresh")
        out = apply_rule_paired(
            start, RuleApplication(6, p=0, q=0, sizes=(1,), eigenvalues=(mu,))
        )
        back = general_to_skew(out)
        assert back.rank == start.rank + 2
        assert back == BlockList.skew([SkewBlock.h(1, mu)])

    def test_pairing_broken_on_unpaired_input(self):
        with pytest.raises(PairingBroken):
            apply_rule_paired(gl(L(0), L(2)), RuleApplication(1, j=1, k=1))

    def test_twins(self):
        assert twin_application(RuleApplication(1, j=1, k=2)).rule == 2
        assert twin_application(RuleApplication(4, j=0, k=1, eigenvalue=INFINITY)).rule == 3
        app6 = RuleApplication(6, p=1, q=0, sizes=(2,), eigenvalues=(Fraction(1),))
        assert twin_application(app6).p == 0 and twin_application(app6).q == 1


class TestCanonicalization:
    def test_symbol_renaming(self):
        a = gl(E(1, SymbolicPoint("a")), E(2, SymbolicPoint("b")))
        b = gl(E(1, SymbolicPoint("x")), E(2, SymbolicPoint("y")))
        assert equal_modulo_symbols(a, b)
        assert canonical_key(a) == canonical_key(b)

    def test_concrete_values_not_relabeled(self):
        a = gl(E(1, 2))
        b = gl(E(1, 3))
        assert not equal_modulo_symbols(a, b)
        assert equal_modulo_symbols(a, gl(E(1, 2)))


class TestClosureSearch:
    def test_one_step_rule1(self):
        res = closure_reachable(gl(L(1), L(1)), gl(L(0), L(2)))
        assert res.reachable
        assert len(res.certificate) == 1
        assert res.certificate[0].rule == 1

    def test_one_step_rule6(self):
        target = gl(E(1, SymbolicPoint("mu")))
        res = closure_reachable(target, gl(L(0), LT(0)))
        assert res.reachable
        assert len(res.certificate) == 1
        assert res.certificate[0].rule == 6

    def test_generic_pencil_reachable(self):
        # 5x5 skew, rank 4, exactly one block at infinity, degenerate source:
        # reachable to the generic structure within a few steps
        source = skew_to_general(
            BlockList.skew([SkewBlock.m(0), SkewBlock.h(1, 3), SkewBlock.k(1)])
        )
        target = skew_to_general(generic_pencil_structure(5, 2, 1))
        res = closure_reachable(target, source, max_steps=10)
        assert res.reachable
        final = replay_certificate(source, res.certificate)
        assert equal_modulo_symbols(final, target)

    def test_replay_matches_target_exactly(self):
        source = gl(L(0), L(2))
        target = gl(L(1), L(1))
        res = closure_reachable(target, source)
        assert replay_certificate(source, res.certificate) == target

    def test_zero_pencil_reaches_generic(self):
        # the zero 6x6 pencil degenerates to everything; the search must be
        # able to mint fresh infinite blocks on the way to the generic form
        source = skew_to_general(BlockList.skew([SkewBlock.m(0)] * 6))
        target = skew_to_general(generic_pencil_structure(6, 2, 1))
        res = closure_reachable(target, source, max_steps=8)
        assert res.reachable
        assert any(
            app.rule == 6 and INFINITY in app.eigenvalues for app in res.certificate
        )
        final = replay_certificate(source, res.certificate)
        assert equal_modulo_symbols(final, target)

    def test_inconclusive(self):
        # shrinking rank is impossible: stays inconclusive
        target = gl(L(0), LT(0), E(1, SymbolicPoint("z")))
        source = gl(E(1, 5), E(1, 7))
        res = closure_reachable(target, source, max_steps=3)
        assert res.status == "no_within_bound"

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            closure_reachable(gl(L(1)), gl(L(0)))

    def test_trivial_identity(self):
        bl = gl(L(1), LT(1))
        res = closure_reachable(bl, bl)
        assert res.reachable and res.certificate == ()


class TestDegenerateDrawReachesGeneric:
    def test_monte_carlo_outlier_degenerates(self):
        # the one degenerate draw the genericity experiment finds at
        # (5, 2, 2) with base seed 7: linearize its padding and certify that
        # the generic pencil structure is reachable from it
        from skewstruct.blocks import structure_to_skew_blocks
        from skewstruct.eigenstructure import analyze
        from skewstruct.linearize import build_linearization, pad_grade
        from skewstruct.sampling import SampleSpec, sample_bounded_rank

        draw = sample_bounded_rank(SampleSpec(m=5, d=2, r=2, coeff_range=9, seed=7000099))
        pencil = build_linearization(pad_grade(draw)).pencil
        source = structure_to_skew_blocks(analyze(pencil, 1))
        assert source == BlockList.skew(
            [SkewBlock.h(1, 0), SkewBlock.k(1), SkewBlock.k(1), SkewBlock.m(4)]
        )
        target = skew_to_general(generic_pencil_structure(15, 7, 2))
        res = closure_reachable(target, skew_to_general(source), max_steps=6)
        assert res.reachable
        assert sorted(app.rule for app in res.certificate) == [3, 4]
        final = replay_certificate(skew_to_general(source), res.certificate)
        assert equal_modulo_symbols(final, target)


class TestForwardFuzz:
    def test_random_forward_paths_are_found(self):
        # apply random legal rules forward, then confirm the search certifies
        # the resulting degeneration and the replay reaches the same state
        import random

        from skewstruct.degeneration import enumerate_applications

        rng = random.Random(424242)
        starts = [
            gl(L(0), L(0), LT(0), LT(0), E(1, 2), E(1, 2)),
            gl(L(1), LT(1), EINF(1), EINF(1)),
            gl(L(0), L(2), LT(0), LT(2)),
        ]
        for start in starts:
            for _ in range(4):
                state = start
                path_len = rng.randint(1, 3)
                for _ in range(path_len):
                    apps = enumerate_applications(state)
                    if not apps:
                        break
                    state = apply_rule(state, rng.choice(apps))
                res = closure_reachable(state, start, max_steps=path_len + 1)
                assert res.reachable, (start, state)
                final = replay_certificate(start, res.certificate)
                assert equal_modulo_symbols(final, state)
                assert len(res.certificate) <= path_len


class TestRuleApplicationJson:
    def test_roundtrip(self):
        apps = [
            RuleApplication(1, j=1, k=2),
            RuleApplication(3, j=0, k=1, eigenvalue=Fraction(5, 2)),
            RuleApplication(4, j=1, k=1, eigenvalue=INFINITY),
            RuleApplication(
                6, p=0, q=1, sizes=(1, 1), eigenvalues=(SymbolicPoint("s0"), Fraction(3))
            ),
        ]
        for app in apps:
            data = json.loads(json.dumps(app.to_json_dict()))
            assert RuleApplication.from_json_dict(data) == app


class TestEnumeration:
    def test_enumeration_is_legal(self):
        bl = skew_to_general(BlockList.skew([SkewBlock.m(1), SkewBlock.k(1)]))
        for app in enumerate_applications(bl):
            out = apply_rule(bl, app)  # must not raise
            assert out.total_rows == bl.total_rows

    def test_enumeration_counts_are_modest(self):
        bl = gl(L(1), LT(1), E(1, 5), EINF(1))
        assert len(enumerate_applications(bl)) < 200

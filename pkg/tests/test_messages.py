"""The message algebra: rewriting, the closure oracle, and the quotient."""

import pytest
from hypothesis import given, settings

from conftest import term_strategy
from quotients.equiv import Verdict, check_respects, check_respects2, revalidate_counterexample
from quotients.errors import UniverseTooLargeError
from quotients.messages import (
    FREEDISCRIM_MAP,
    FREEDISCRIM_TRUNCATED_MAP,
    FREELEFT_MAP,
    FREENONCES_MAP,
    FREERIGHT_MAP,
    Crypt,
    Decrypt,
    MPair,
    Msg,
    MsgRule,
    Nonce,
    closure_classes,
    closure_oracle,
    closure_oracle_naive,
    crypt,
    crypt_map,
    decrypt,
    decrypt_map,
    discrim,
    enumerate_terms,
    freediscrim,
    freediscrim_truncated,
    freeleft,
    freenonces,
    freeright,
    is_normal,
    left,
    mpair,
    mpair_map,
    msg,
    msg_eq,
    msgrel,
    nonce,
    nonces,
    normalize,
    normalize_outermost,
    right,
    rule_instances,
    size,
    universe_size,
)

N, M, C, D = Nonce, MPair, Crypt, Decrypt


class TestNormalize:
    def test_cancellation(self):
        assert normalize(C(1, D(1, N(5)))) == N(5)

    def test_no_redex(self):
        assert normalize(N(5)) == N(5)

    def test_nested_innermost(self):
        t = D(0, C(0, M(N(1), C(2, D(2, N(3))))))
        assert normalize(t) == M(N(1), N(3))

    @given(term_strategy())
    def test_idempotent_and_shrinking(self, t):
        nf = normalize(t)
        assert normalize(nf) == nf
        assert is_normal(nf)
        assert size(nf) <= size(t)

    @given(term_strategy())
    def test_strategy_independence(self, t):
        assert normalize(t) == normalize_outermost(t)

    def test_strategy_independence_on_universe(self):
        for t in enumerate_terms(5):
            assert normalize(t) == normalize_outermost(t)

    def test_result_related_to_input_per_oracle(self):
        oracle = closure_oracle(4)
        for t in enumerate_terms(4):
            assert (t, normalize(t)) in oracle


class TestMsgEq:
    def test_examples(self):
        assert msg_eq(C(1, D(1, N(5))), N(5))
        assert not msg_eq(N(1), N(2))
        assert not msg_eq(D(2, N(0)), D(3, N(0)))

    @given(term_strategy(), term_strategy())
    def test_agrees_with_normal_forms(self, u, v):
        assert msg_eq(u, v) == (normalize(u) == normalize(v))


class TestUniverse:
    def test_sizes_by_recurrence(self):
        for bound in range(1, 6):
            assert universe_size(bound) == len(enumerate_terms(bound))
        assert universe_size(3, (0,), (0,)) == 8

    def test_graded_and_distinct(self):
        terms = enumerate_terms(4)
        assert len(set(terms)) == len(terms)
        sizes = [size(t) for t in terms]
        assert sizes == sorted(sizes)

    def test_cap_is_enforced(self):
        with pytest.raises(UniverseTooLargeError) as exc:
            enumerate_terms(9, max_terms=10_000)
        assert exc.value.universe_size == universe_size(9)


class TestClosureOracle:
    def test_contains_cancellation_pair(self):
        oracle = closure_oracle(3, (0,), (0,))
        assert (C(0, D(0, N(0))), N(0)) in oracle

    def test_reflexive_on_universe(self):
        oracle = closure_oracle(3, (0,), (0,))
        for t in enumerate_terms(3, (0,), (0,)):
            assert (t, t) in oracle

    def test_symmetric(self):
        oracle = closure_oracle(3)
        for u, v in oracle:
            assert (v, u) in oracle

    def test_frozen_counts_small_domain(self):
        labels = closure_classes(3, (0,), (0,))
        assert len(labels) == 8
        assert len(set(labels.values())) == 6
        oracle = closure_oracle(3, (0,), (0,))
        assert len(oracle) == 14

    @pytest.mark.parametrize(
        "bound,keys,nonces",
        [(2, (0, 1), (0, 1)), (3, (0, 1), (0, 1)), (4, (0,), (0, 1))],
    )
    def test_engine_matches_naive_fixpoint(self, bound, keys, nonces):
        assert closure_oracle(bound, keys, nonces) == closure_oracle_naive(bound, keys, nonces)

    def test_axiom_rules_fire_without_premises(self):
        terms = enumerate_terms(3, (0,), (0,))
        assert (C(0, D(0, N(0))), N(0)) in rule_instances(MsgRule.CD, set(), terms, (0,))
        assert (D(0, C(0, N(0))), N(0)) in rule_instances(MsgRule.DC, set(), terms, (0,))
        assert (N(0), N(0)) in rule_instances(MsgRule.NONCE, set(), terms, (0,))

    def test_closure_is_closed_under_every_rule(self):
        terms = enumerate_terms(3)
        oracle = closure_oracle(3)
        for rule in MsgRule:
            assert rule_instances(rule, oracle, terms, (0, 1)) <= oracle

    def test_agrees_with_rewriting_decision(self):
        # The central claim at unit scale; the acceptance suite repeats it
        # on the full size-7 universe.
        terms = enumerate_terms(4)
        labels = closure_classes(4)
        for u in terms[:60]:
            for v in terms[:60]:
                assert (labels[u] == labels[v]) == msg_eq(u, v)
        by_label = {}
        by_nf = {}
        for t in terms:
            by_label.setdefault(labels[t], set()).add(t)
            by_nf.setdefault(normalize(t), set()).add(t)
        assert set(map(frozenset, by_label.values())) == set(map(frozenset, by_nf.values()))


class TestFreeFunctions:
    def test_freenonces(self):
        assert freenonces(N(3)) == {3}
        assert freenonces(M(N(1), N(2))) == {1, 2}
        assert freenonces(D(9, N(4))) == {4}

    def test_freeleft(self):
        assert freeleft(M(N(1), N(2))) == N(1)
        assert freeleft(N(7)) == N(7)
        assert freeleft(C(3, M(N(1), N(2)))) == N(1)

    def test_freeright(self):
        assert freeright(M(N(1), N(2))) == N(2)
        assert freeright(N(7)) == N(7)
        assert freeright(D(3, M(N(1), N(2)))) == N(2)

    def test_freediscrim(self):
        assert freediscrim(N(0)) == 0
        assert freediscrim(M(N(1), N(2))) == 1
        assert freediscrim(C(3, N(0))) == 2
        assert freediscrim(D(3, N(0))) == -2

    @given(term_strategy())
    def test_free_functions_invariant_under_normalize(self, t):
        nf = normalize(t)
        assert freenonces(t) == freenonces(nf)
        assert freediscrim(t) == freediscrim(nf)
        assert msg_eq(freeleft(t), freeleft(nf))
        assert msg_eq(freeright(t), freeright(nf))


class TestCongruence:
    @pytest.mark.parametrize(
        "rmap",
        [FREENONCES_MAP, FREELEFT_MAP, FREERIGHT_MAP, FREEDISCRIM_MAP],
        ids=lambda m: m.name,
    )
    def test_free_functions_certified(self, rmap):
        assert check_respects(rmap, 500).verdict is Verdict.CERTIFIED

    def test_truncated_discriminator_refuted(self):
        report = check_respects(FREEDISCRIM_TRUNCATED_MAP, 500)
        assert report.verdict is Verdict.REFUTED
        u, v = report.counterexample
        assert (u, v) == (C(0, D(0, N(0))), N(0))
        assert msg_eq(u, v)
        assert freediscrim_truncated(u) != freediscrim_truncated(v)
        assert revalidate_counterexample(FREEDISCRIM_TRUNCATED_MAP, report)

    def test_constructor_bodies_certified(self):
        assert check_respects2(mpair_map(), 400).verdict is Verdict.CERTIFIED
        for k in (0, 1):
            assert check_respects(crypt_map(k), 300).verdict is Verdict.CERTIFIED
            assert check_respects(decrypt_map(k), 300).verdict is Verdict.CERTIFIED

    def test_related_pairs_contract(self):
        for u, v in msgrel.related_pairs(300):
            assert msg_eq(u, v)


class TestQuotientLayer:
    def test_crypt_decrypt_cancel(self):
        assert crypt(1, decrypt(1, nonce(5))) == nonce(5)

    def test_decrypt_crypt_cancel(self):
        for x in (nonce(0), mpair(nonce(1), nonce(2)), crypt(0, nonce(1))):
            assert decrypt(1, crypt(1, x)) == x

    def test_mpair_representative(self):
        assert mpair(nonce(1), nonce(2)).rep == M(N(1), N(2))

    def test_msg_stored_normalized(self):
        value = msg(C(0, D(0, M(N(1), C(2, D(2, N(3)))))))
        assert value.rep == M(N(1), N(3))
        assert is_normal(value.rep)

    def test_lifted_functions(self):
        assert nonces(decrypt(2, nonce(4))) == {4}
        x, y = nonce(1), mpair(nonce(2), nonce(3))
        assert left(mpair(x, y)) == x
        assert right(mpair(x, y)) == y
        assert discrim(crypt(0, mpair(nonce(1), nonce(2)))) == 3

    def test_discrim_matches_free_function_on_representative(self):
        value = crypt(0, mpair(nonce(1), nonce(2)))
        assert discrim(value) == freediscrim(value.rep)

    @given(term_strategy(), term_strategy())
    def test_recursion_equations(self, u, v):
        x, y = msg(u), msg(v)
        assert nonces(mpair(x, y)) == nonces(x) | nonces(y)
        assert left(mpair(x, y)) == x
        assert right(mpair(x, y)) == y
        assert discrim(mpair(x, y)) == 1
        for k in (0, 1):
            assert nonces(crypt(k, x)) == nonces(x)
            assert nonces(decrypt(k, x)) == nonces(x)
            assert left(crypt(k, x)) == left(x)
            assert right(decrypt(k, x)) == right(x)
            assert discrim(crypt(k, x)) == discrim(x) + 2
            assert discrim(decrypt(k, x)) == discrim(x) - 2

    def test_nonce_equations(self):
        for n in range(4):
            assert nonces(nonce(n)) == {n}
            assert left(nonce(n)) == nonce(n)
            assert right(nonce(n)) == nonce(n)
            assert discrim(nonce(n)) == 0

    def test_injectivity_small(self):
        reps = [msg(t) for t in enumerate_terms(3)]
        seen = {}
        for x in reps:
            for y in reps:
                key = mpair(x, y).rep
                prior = seen.setdefault(key, (x, y))
                assert prior == (x, y)
        for k in (0, 1):
            seen = {}
            for x in reps:
                key = crypt(k, x).rep
                assert seen.setdefault(key, x) == x
            seen = {}
            for x in reps:
                key = decrypt(k, x).rep
                assert seen.setdefault(key, x) == x
        assert len({nonce(n).rep for n in range(20)}) == 20

    def test_not_injective_in_key(self):
        for x in (nonce(0), mpair(nonce(1), nonce(2))):
            assert crypt(0, decrypt(0, x)) == x
            assert crypt(1, decrypt(1, x)) == x
            assert crypt(0, decrypt(0, x)) == crypt(1, decrypt(1, x))

    def test_discrimination(self):
        for n in range(3):
            for u in (nonce(0), crypt(1, nonce(1))):
                for v in (nonce(1), decrypt(0, nonce(2))):
                    assert nonce(n) != mpair(u, v)
        for k in (0, 1):
            for m_ in range(3):
                for n_ in range(3):
                    assert crypt(k, nonce(m_)) != nonce(n_)

    @given(term_strategy())
    @settings(max_examples=50)
    def test_msg_equality_is_class_equality(self, t):
        wrapped = C(1, D(1, t))
        assert msg(wrapped) == msg(t)
        assert hash(msg(wrapped)) == hash(msg(t))

    def test_repr_mentions_normal_form(self):
        assert "Nonce" in repr(nonce(3))
        assert isinstance(nonce(3), Msg)

    def test_carrier_rejects_malformed_terms(self):
        from quotients.errors import DomainError
        with pytest.raises(DomainError):
            nonce(-1)
        with pytest.raises(DomainError):
            crypt(-2, nonce(0))
        with pytest.raises(DomainError):
            msg("not a term")

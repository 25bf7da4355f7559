import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bzcrystal.bz_finite import FiniteBZDatum, is_bz_datum, restrict_down
from bzcrystal.bz_infinite import (
    LazyWordBZ,
    WindowedBZ,
    check_window_agreement,
    component,
    inf_e,
    inf_epsilon,
    inf_f,
    restriction,
    stability_class,
    stabilization_interval,
    theta,
)
from bzcrystal.crystal_finite import lower_f, raise_e
from bzcrystal.errors import DomainError, StabilizationError
from bzcrystal.roots import (
    ChamberWeight,
    Interval,
    WeylElem,
    enumerate_gamma,
    neg_fundamental,
    pairing,
)

E = WeylElem.identity()

inf_words = st.lists(st.integers(-2, 2), max_size=5)


def origin():
    return WindowedBZ.origin(Interval(-1, 1))


def lowered(word):
    return WindowedBZ.from_word(word)


class TestTheta:
    @pytest.mark.parametrize("i", [-3, 0, 2, 7])
    def test_origin(self, i):
        assert theta(origin(), E, i) == 0

    def test_f1_values(self):
        M = lowered([1])
        assert theta(M, E, 1) == -1
        assert theta(M, E, 2) == 0
        assert theta(M, WeylElem.simple(1), 1) == 0

    def test_stabilization_interval_of_origin(self):
        assert stabilization_interval(origin(), E, 0) == Interval(-1, 1)

    @given(inf_words, st.integers(-2, 3), st.lists(st.integers(-3, 3), max_size=3))
    def test_bigger_start_window_same_value(self, word, i, wword):
        M = lowered(word)
        w = WeylElem.from_word(wword)
        assert theta(M, w, i, pad=1) == theta(M, w, i, pad=3)

    def test_limit_is_reported(self):
        M = dataclasses.replace(lowered([0, 1, 0]), max_window=4)
        with pytest.raises(StabilizationError):
            theta(M, E, 0)

    @given(inf_words)
    def test_component_matches_window(self, word):
        M = lowered(word)
        check_window_agreement(M)


class TestOperators:
    @pytest.mark.parametrize("p", [-1, 0, 3])
    def test_lowering_origin(self, p):
        M = inf_f(origin(), p)
        for g, v in M.datum.items():
            assert v == (-1 if pairing(p, g) > 0 else 0)

    @pytest.mark.parametrize("p", [-1, 0, 2])
    def test_raise_inverts(self, p):
        M = inf_f(origin(), p)
        N = inf_e(M, p)
        assert N is not None
        assert all(v == 0 for v in N.datum.values)
        assert inf_e(origin(), p) is None

    @given(st.lists(st.integers(-1, 1), min_size=1, max_size=5), st.integers(-1, 1))
    def test_raised_history_is_a_lowering_word(self, word, p):
        M = lowered(word)
        N = inf_e(M, p)
        if N is None:
            return
        assert all(op == "f" for op, _ in N.history)
        assert len(N.history) == len(word) - 1
        J = Interval(-3, 3)
        assert restriction(inf_f(N, p), J) == restriction(M, J)

    def test_distant_epsilon(self):
        for p in (-1, 0, 1):
            M = inf_f(origin(), p)
            for q in (p - 3, p - 2, p + 2, p + 3):
                assert inf_epsilon(M, q) == 0
            assert inf_epsilon(M, p) == 1

    @given(inf_words, st.integers(-2, 2))
    def test_lowering_properties(self, word, p):
        M = lowered(word)
        N = inf_f(M, p)
        J = N.window
        before = M.at_window(J)
        for g, v in N.datum.items():
            assert v <= before[g]
        assert inf_epsilon(N, p) == inf_epsilon(M, p) + 1
        R = inf_e(N, p)
        assert restriction(R, Interval(-2, 2)) == restriction(M, Interval(-2, 2))
        for i in range(-3, 4):
            drop = 1 if i == p else 0
            assert theta(N, E, i) == theta(M, E, i) - drop
            if abs(i - p) > 1:
                s = WeylElem.simple(i)
                assert theta(N, s, i) == theta(M, s, i)

    @given(inf_words, st.sampled_from([(-2, 0), (-1, 1), (0, 2), (-2, 1), (-1, 2)]))
    def test_distant_commutation(self, word, pq):
        p, q = pq
        M = lowered(word)
        J = Interval(-3, 3)
        a = restriction(inf_f(inf_f(M, p), q), J)
        b = restriction(inf_f(inf_f(M, q), p), J)
        assert a == b
        ep = inf_e(M, p)
        if ep is not None:
            x = restriction(inf_e(inf_f(M, q), p), J)
            y = restriction(inf_f(ep, q), J)
            assert x == y

    @given(inf_words)
    def test_epsilon_matches_raising_string(self, word):
        M = lowered(word)
        for p in (-1, 0, 1):
            n, N = 0, inf_e(M, p)
            while N is not None:
                n, N = n + 1, inf_e(N, p)
            assert n == inf_epsilon(M, p)

    def test_lazy_matches_windowed(self):
        lazy = LazyWordBZ()
        for word in ([1], [0, 1, 0], [2, 1, 1, 0, 2], [-1, 1, 0, 0]):
            M = lowered(word)
            for g in enumerate_gamma(Interval(-2, 3)):
                assert lazy.component(tuple(word), g) == component(M, g)
            for p in (-1, 0, 1, 2):
                assert lazy.epsilon(tuple(word), p) == inf_epsilon(M, p)

    def test_lazy_example(self):
        lazy = LazyWordBZ()
        # -Lambda_1 pairs negatively with h_1, so only -s_1 Lambda_1 drops
        assert lazy.component((1,), neg_fundamental(1)) == 0
        assert lazy.component((1,), ChamberWeight(0, (2,))) == -1
        assert lazy.component((1,), ChamberWeight(0, (2, 5))) == -1
        assert lazy.component((), ChamberWeight(0, (2, 5))) == 0


class TestStability:
    @pytest.mark.parametrize("K", [Interval(0, 0), Interval(-1, 1), Interval(0, 1)])
    def test_origin_is_stable(self, K):
        assert stability_class(origin(), Interval(-1, 1), K)

    def test_rejects_outer_k(self):
        with pytest.raises(DomainError):
            stability_class(origin(), Interval(0, 1), Interval(-1, 1))

    @given(st.lists(st.integers(-1, 1), max_size=4), st.lists(st.integers(-1, 1), min_size=1, max_size=4))
    def test_restriction_commutes_with_lowering(self, prefix, word):
        I, K = Interval(-3, 3), Interval(-1, 1)
        M = lowered(prefix)
        if not stability_class(M, I, K):
            return
        D = restriction(M, I)
        N = M
        for p in word:
            N = inf_f(N, p)
            D = lower_f(D, p)
        assert restriction(N, I) == D

    @given(st.lists(st.integers(-1, 1), max_size=6), st.lists(st.just(0), min_size=1, max_size=3))
    def test_restriction_commutes_with_raising(self, prefix, word):
        I, K = Interval(-3, 3), Interval(-1, 1)
        M = lowered(prefix)
        if not stability_class(M, I, K):
            return
        D = restriction(M, I)
        N = M
        for p in word:
            N = inf_e(N, p)
            if N is None:
                assert raise_e(D, p) is None
                return
            D = raise_e(D, p)
        assert restriction(N, I) == D

    def test_stable_class_is_common(self):
        # generated elements with support inside K are stable for a wide I
        hits = 0
        for word in ([0], [0, 1], [-1, 0, 1], [1, 1, 0]):
            hits += stability_class(lowered(word), Interval(-3, 3), Interval(-1, 1))
        assert hits == 4


def test_window_datum_is_valid_everywhere():
    M = lowered([0, 1, -1, 0, 2])
    assert is_bz_datum(M.datum)
    for K in (Interval(-1, 1), Interval(0, 2)):
        if M.window.contains_interval(K):
            assert is_bz_datum(restrict_down(M.datum, K))


def test_json_shape():
    obj = lowered([0]).to_json()
    assert set(obj) == {"interval", "components", "window", "margin"}
    assert FiniteBZDatum.from_json(obj).interval == Interval(*obj["window"])


def test_shift_is_equivariant():
    M = lowered([0, 1, 0])
    S = M.shifted(3)
    for g in enumerate_gamma(Interval(-1, 2)):
        assert component(S, g.shift(3)) == component(M, g)

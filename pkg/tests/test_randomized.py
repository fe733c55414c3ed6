import math

import pytest
from hypothesis import given, settings, strategies as st

from sur.core import (
    Bicoloring,
    BicoloringFamily,
    PreconditionError,
    enumerate_k_bicolorings,
    inner_product,
    verify_sur,
)
from sur.randomized import (
    BiasParams,
    bias_tolerance,
    biased_sur,
    random_bounded_family,
    sampled_exact_sur,
    sampled_sur_size,
)


def balanced_pair():
    return BicoloringFamily(
        16,
        (Bicoloring.from_string("++++++++--------"), Bicoloring.from_string("+-+-+-+-+-+-+-+-")),
    )


class TestBiasTolerance:
    def test_values(self):
        assert bias_tolerance(200, 16, 20) == pytest.approx(4 * math.e + 1.6)
        assert bias_tolerance(200, 16, 20) == pytest.approx(12.473, abs=1e-3)
        assert bias_tolerance(16, 16, 0) == pytest.approx(10.873, abs=1e-3)
        assert bias_tolerance(50, 9, 0) == pytest.approx(3 * math.e)

    def test_bad_args(self):
        with pytest.raises(PreconditionError):
            bias_tolerance(4, 8, 0)


class TestBiasParams:
    def test_fields(self):
        p = BiasParams.build(200, 16, 20, 1000)
        assert p.t == 7
        assert p.size_window == (8, 24)
        assert p.int_delta == 12

    def test_odd_window(self):
        assert BiasParams.build(20, 9, 0, 5).size_window == (4, 14)

    def test_small_r(self):
        with pytest.raises(PreconditionError):
            BiasParams.build(20, 6, 0, 5)


class TestBiasedSur:
    @pytest.mark.parametrize("seed", [0, 1, 99])
    def test_degenerate(self, seed):
        family, cert, trace = biased_sur(balanced_pair(), 8, 0, seed)
        assert len(family) == 1
        assert cert.delta == 7
        assert cert.complete
        assert trace.winning_group is not None

    def test_imbalance_rejected(self):
        bic = BicoloringFamily(16, (Bicoloring.from_string("+++++++++-------"), Bicoloring.from_string("+-" * 8)))
        with pytest.raises(PreconditionError):
            biased_sur(bic, 8, 0, 1)

    def test_deterministic(self):
        bic = random_bounded_family(60, 50, 6, seed=3)
        first = biased_sur(bic, 10, 6, seed=11)
        second = biased_sur(bic, 10, 6, seed=11)
        assert first[0] == second[0]
        assert first[2] == second[2]

    def test_n200_example(self):
        bic = random_bounded_family(200, 1000, 20, seed=42)
        family, cert, _ = biased_sur(bic, 16, 20, seed=42)
        assert len(family) <= 7
        assert all(8 <= a.size <= 24 for a in family)
        assert cert.complete and cert.delta == 12
        assert cert.max_abs_value() <= 12

    @settings(deadline=None, max_examples=15)
    @given(st.integers(0, 2**32 - 1))
    def test_window_and_bias(self, seed):
        bic = random_bounded_family(40, 30, 4, seed=seed % 1000)
        family, cert, _ = biased_sur(bic, 8, 4, seed)
        lo, hi = BiasParams.build(40, 8, 4, len(bic)).size_window
        assert all(lo <= a.size <= hi for a in family)
        for b, w in zip(bic, cert.entries):
            assert w is not None
            assert abs(w.value) <= cert.delta
            assert inner_product(family[w.index], b) == w.value


class TestSampledExact:
    def test_size_example(self):
        assert sampled_sur_size(2, 0.5, 70) == 11
        assert math.ceil(math.sqrt(2 * math.pi) / (4 * 0.25) * math.log(70)) == 11

    def test_example_verifies(self):
        bic = enumerate_k_bicolorings(8, 4)
        family, trace = sampled_exact_sur(bic, 2, 0.5, seed=5)
        assert len(family) <= 11
        assert verify_sur(family, bic).complete
        assert trace.winning_group is not None

    def test_deterministic(self):
        bic = enumerate_k_bicolorings(8, 4)
        assert sampled_exact_sur(bic, 2, 0.5, seed=9) == sampled_exact_sur(bic, 2, 0.5, seed=9)

    def test_outside_alpha(self):
        bic = enumerate_k_bicolorings(8, 1)
        with pytest.raises(PreconditionError):
            sampled_exact_sur(bic, 2, 0.25, seed=1)

    def test_odd_r(self):
        with pytest.raises(PreconditionError):
            sampled_exact_sur(enumerate_k_bicolorings(8, 4), 3, 0.5, seed=1)

    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 10_000), st.sampled_from([(8, 3, 2), (8, 4, 4), (10, 4, 2)]))
    def test_output_always_verifies(self, seed, params):
        n, k, r = params
        bic = enumerate_k_bicolorings(n, k)
        family, _ = sampled_exact_sur(bic, r, k / n, seed)
        assert verify_sur(family, bic).complete


def test_random_bounded_family_respects_budget():
    bic = random_bounded_family(31, 200, 5, seed=0)
    assert len(bic) == 200
    assert all(abs(2 * b.plus_count - 31) <= 5 for b in bic)

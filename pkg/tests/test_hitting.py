import pytest
from hypothesis import given, settings, strategies as st

from sur.core import (
    Bicoloring,
    BicoloringFamily,
    PreconditionError,
    TrivialBicoloringError,
    verify_sur,
)
from sur.hitting import (
    HittingInstance,
    HittingSet,
    bicolorings_to_setfamily,
    complement_close,
    greedy_hitting_set,
    hitting_sur,
    sur_from_hitting_set,
)


def fam(n, *strings):
    return BicoloringFamily(n, tuple(Bicoloring.from_string(s) for s in strings))


def test_setfamily_order():
    inst = bicolorings_to_setfamily(fam(4, "++--", "+-+-"))
    assert inst.as_lists() == [[1, 2], [3, 4], [1, 3], [2, 4]]


def test_trivial_rejected():
    with pytest.raises(TrivialBicoloringError):
        bicolorings_to_setfamily(fam(3, "+--", "+++"))


class TestGreedyHitting:
    def test_examples(self):
        assert greedy_hitting_set(HittingInstance(4, ({1, 2}, {3, 4}, {2, 3}, {1, 4}))).elements == (1, 3)
        assert greedy_hitting_set(HittingInstance(2, ({1}, {2}))).elements == (1, 2)
        assert greedy_hitting_set(HittingInstance(3, ({1, 2, 3},))).elements == (1,)

    @settings(deadline=None)
    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(1, n), min_size=1), min_size=1, max_size=12))))
    def test_hits_everything(self, data):
        n, sets = data
        inst = HittingInstance(n, tuple(sets))
        h = greedy_hitting_set(inst)
        assert inst.is_hit_by(h.elements)
        assert len(set(h.elements)) == len(h.elements)


class TestPairs:
    def test_valid_pair(self):
        sur = sur_from_hitting_set(HittingSet((2, 4)), 4)
        assert sur.as_lists() == [[2, 4]]
        bic = fam(4, "++--", "-++-")
        inst = bicolorings_to_setfamily(bic)
        assert inst.is_hit_by((2, 4))
        assert verify_sur(sur, bic).complete

    def test_three(self):
        assert sur_from_hitting_set((1, 2, 3), 5).as_lists() == [[1, 2], [1, 3]]

    def test_too_small(self):
        with pytest.raises(PreconditionError):
            sur_from_hitting_set(HittingSet((5,)), 6)

    def test_repeats(self):
        with pytest.raises(PreconditionError):
            sur_from_hitting_set((1, 2, 1), 4)


class TestComplementClose:
    def test_example(self):
        inst = complement_close([{1, 2}, {3}], 3)
        assert inst.n == 4
        assert inst.as_lists() == [[1, 2], [3], [3, 4], [1, 2, 4]]
        assert inst.is_complement_closed()

    def test_setfamily_of_bicolorings_is_closed(self):
        inst = bicolorings_to_setfamily(fam(5, "++---", "-+-+-", "+++-+"))
        assert inst.is_complement_closed()
        assert not HittingInstance(3, ({1},)).is_complement_closed()

    def test_empty_rejected(self):
        with pytest.raises(PreconditionError):
            complement_close([set()], 3)

    @settings(deadline=None)
    @given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(1, n), min_size=1), min_size=1, max_size=8))))
    def test_closed_and_hitting_correspond(self, data):
        n, sets = data
        inst = complement_close(sets, n)
        assert inst.is_complement_closed()
        h = greedy_hitting_set(inst)
        # dropping the extra element keeps a hitting set of the original sets
        assert HittingInstance(n, tuple(sets)).is_hit_by(e for e in h.elements if e <= n)


@st.composite
def nontrivial_family(draw):
    n = draw(st.integers(2, 10))
    rows = draw(
        st.lists(
            st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n).filter(lambda c: len(set(c)) == 2),
            min_size=1,
            max_size=15,
        )
    )
    return BicoloringFamily(n, tuple(Bicoloring.from_colors(c) for c in rows))


@settings(deadline=None, max_examples=80)
@given(nontrivial_family())
def test_pipeline_is_sound(bic):
    sur, h = hitting_sur(bic)
    assert len(sur) == len(h) - 1
    assert all(a.size == 2 for a in sur)
    assert verify_sur(sur, bic).complete

"""Hypothesis strategies and small builders shared by the tests."""

import hypothesis.strategies as st

from bzcrystal.bz_finite import FiniteBZDatum
from bzcrystal.crystal_finite import lower_f
from bzcrystal.roots import ChamberWeight, Interval


def datum_from_word(I: Interval, word) -> FiniteBZDatum:
    M = FiniteBZDatum.zero(I)
    for p in word:
        M = lower_f(M, p)
    return M


def words(I: Interval, max_len: int = 6):
    return st.lists(st.integers(I.lo, I.hi), max_size=max_len)


@st.composite
def chamber_weights(draw, lo=-6, hi=6, max_extras=4):
    anchor = draw(st.integers(lo, hi))
    extras = draw(st.lists(st.integers(anchor + 2, anchor + 8), max_size=max_extras, unique=True))
    return ChamberWeight(anchor, tuple(extras))


@st.composite
def intervals(draw, max_size=4, lo=-3, hi=3):
    a = draw(st.integers(lo, hi))
    n = draw(st.integers(1, max_size))
    return Interval(a, a + n - 1)


@st.composite
def generated_data(draw, I: Interval, max_len: int = 6):
    return datum_from_word(I, draw(words(I, max_len)))

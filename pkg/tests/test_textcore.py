import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyndonarray import Text, UsageError, is_lyndon_word, lce, suffix_compare
from lyndonarray.bps import BuildStats

NA = b"northamerica"


def test_lce_examples():
    assert lce(NA, 6, 12) == 1  # "america" vs "a"
    assert lce(b"abaabaaba", 1, 4) == 6
    assert lce(NA, 0, 5) == 0  # sentinel shares no symbol
    assert lce(NA, 5, 13) == 0


def test_lce_skip_and_counting():
    stats = BuildStats()
    assert lce(b"abaabaaba", 1, 4, skip=3, stats=stats) == 6
    # offsets 4..6 match, offset 7 runs past the end: 3 comparisons performed
    assert stats.char_comparisons == 3


def test_lce_validation():
    with pytest.raises(UsageError):
        lce(NA, -1, 3)
    with pytest.raises(UsageError):
        lce(NA, 1, 14)
    with pytest.raises(UsageError):
        lce(NA, 1, 2, skip=-1)


def test_suffix_compare_examples():
    r = suffix_compare(NA, 12, 6)
    assert r.less and r.lce == 1  # "a" < "america"
    r = suffix_compare(NA, 1, 2)
    assert r.less and r.lce == 0  # 'n' < 'o'
    assert suffix_compare(NA, 0, 1).less
    assert suffix_compare(NA, 13, 4).less
    assert suffix_compare(NA, 6, 12).greater


def test_suffix_compare_validation():
    with pytest.raises(UsageError):
        suffix_compare(NA, 3, 3)
    with pytest.raises(UsageError):
        suffix_compare(NA, 0, 13)  # two sentinels are not ordered


def test_is_lyndon_word_examples():
    assert is_lyndon_word(NA, 6, 6)  # americ
    assert not is_lyndon_word(NA, 1, 12)  # northamerica
    assert is_lyndon_word(NA, 3, 1)  # single symbol
    assert not is_lyndon_word(b"aa", 1, 2)
    assert is_lyndon_word(b"ab", 1, 2)
    with pytest.raises(UsageError):
        is_lyndon_word(NA, 1, 0)
    with pytest.raises(UsageError):
        is_lyndon_word(NA, 12, 2)


def test_text_wrapper():
    t = Text(b"abc")
    assert t.n == 3 and bytes(t) == b"abc"
    assert lce(t, 1, 1, skip=3) == 3  # equal positions are legal for lce
    assert Text(t).data == b"abc"


texts = st.binary(min_size=1, max_size=40)


@settings(max_examples=200, deadline=None)
@given(texts, st.data())
def test_suffix_compare_antisymmetric(data, draw):
    n = len(data)
    i = draw.draw(st.integers(0, n + 1))
    j = draw.draw(st.integers(0, n + 1).filter(lambda x: x != i))
    if (i in (0, n + 1)) and (j in (0, n + 1)):
        return
    a = suffix_compare(data, i, j)
    b = suffix_compare(data, j, i)
    assert a.less != b.less
    assert a.lce == b.lce == lce(data, i, j)


@settings(max_examples=200, deadline=None)
@given(texts, st.data())
def test_lce_skip_equivalence(data, draw):
    n = len(data)
    i = draw.draw(st.integers(1, n))
    j = draw.draw(st.integers(1, n))
    full = lce(data, i, j)
    skip = draw.draw(st.integers(0, full))
    assert lce(data, i, j, skip=skip) == full


@settings(max_examples=150, deadline=None)
@given(st.binary(min_size=1, max_size=16), st.data())
def test_lyndon_matches_nss_characterization(w, draw):
    # w is a Lyndon word iff, viewing w as its own text, the naive NSS of
    # position 1 is len(w) + 1 (no suffix of w is smaller than w itself)
    from lyndonarray.oracle import nss_bruteforce

    start = 1
    length = draw.draw(st.integers(1, len(w)))
    sub = w[:length]
    nss1 = nss_bruteforce(sub)[0]
    assert is_lyndon_word(w, start, length) == (nss1 == length + 1)

import random

import pytest

from conftest import all_strings, random_texts
from lyndonarray import is_lyndon_word
from lyndonarray import oracle

NA = b"northamerica"

PSS_NA = [0, 1, 2, 3, 0, 0, 6, 6, 8, 8, 6, 0]
NSS_NA = [5, 5, 5, 5, 6, 12, 8, 11, 10, 11, 12, 13]
LAM_NA = [4, 3, 2, 1, 1, 6, 1, 3, 1, 1, 1, 1]
BPS_NA = "((((())))()(()(()())())())"


def test_paper_example_rows():
    assert oracle.pss_bruteforce(NA) == PSS_NA
    assert oracle.nss_bruteforce(NA) == NSS_NA
    assert oracle.lyndon_array_bruteforce(NA) == LAM_NA


def test_simple_examples():
    assert oracle.pss_bruteforce(b"abc") == [0, 1, 2]
    assert oracle.nss_bruteforce(b"abc") == [4, 4, 4]
    assert oracle.lyndon_array_bruteforce(b"aaaa") == [1, 1, 1, 1]
    assert oracle.lyndon_array_bruteforce(b"a") == [1]


def test_bps_examples():
    b = oracle.bps_bruteforce(NA)
    assert b == BPS_NA and len(b) == 26
    assert oracle.bps_bruteforce(b"a") == "(())"
    assert oracle.bps_bruteforce(b"aaaa") == "(()()()())"
    assert oracle.bps_bruteforce(b"") == "()"


def test_bps_structure_properties():
    for t in [NA, b"banana", b"abaabaaba", b"zyx"]:
        b = oracle.bps_bruteforce(t)
        assert len(b) == 2 * len(t) + 2
        assert b[0] == "(" and b.count("(") == len(t) + 1
        depth = 0
        for ch in b:
            depth += 1 if ch == "(" else -1
            assert depth >= 0
        assert depth == 0
        # preorder rank of node i equals i: the (i+1)-th open corresponds to
        # the node whose pss-parent relation rebuilt the tree
        pss = oracle.pss_bruteforce(t)
        opens = [k for k, ch in enumerate(b) if ch == "("]
        # parent of the node at opens[i] encloses it
        for i in range(1, len(t) + 1):
            depth_before = b[: opens[i]].count("(") - b[: opens[i]].count(")")
            assert depth_before >= 1


def test_pack_unpack_parens():
    payload = oracle.pack_parens(BPS_NA)
    assert oracle.unpack_parens(payload, 26) == BPS_NA
    assert oracle.pack_parens("(") == b"\x80"
    assert oracle.pack_parens("()") == b"\x80"
    with pytest.raises(ValueError):
        oracle.pack_parens("(x")


def test_lemma_invariants_small():
    for t in all_strings(b"ab", 9):
        nss = oracle.nss_bruteforce(t)
        lam = oracle.lyndon_array_bruteforce(t)
        pss = oracle.pss_bruteforce(t)
        assert [nss[k] - (k + 1) for k in range(len(t))] == lam
        for j in range(1, len(t) + 1):
            p = pss[j - 1]
            if p > 0:
                assert is_lyndon_word(t, p, j - p)


def test_rank_oracle_agrees_with_direct_scans():
    for t in all_strings(b"ab", 10):
        assert oracle.pss_nss_by_ranks(t) == (
            oracle.pss_bruteforce(t),
            oracle.nss_bruteforce(t),
        )
    rng = random.Random(23)
    for t in random_texts(60, 800, seed=23):
        p, s = oracle.pss_nss_by_ranks(t)
        assert p == oracle.pss_bruteforce(t)
        assert s == oracle.nss_bruteforce(t)
    # adversarial shapes
    for t in [b"ab" * 300, b"aab" * 150, bytes(range(200)), bytes(reversed(range(200))), b"a" * 500]:
        p, s = oracle.pss_nss_by_ranks(t)
        assert p == oracle.pss_bruteforce(t)
        assert s == oracle.nss_bruteforce(t)


def test_suffix_ranks_empty_and_single():
    assert len(oracle.suffix_ranks(b"")) == 0
    assert list(oracle.suffix_ranks(b"z")) == [0]
    assert oracle.pss_nss_by_ranks(b"") == ([], [])

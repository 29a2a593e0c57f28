import random

import pytest

from lyndonarray import AppendOnlyBps, IntegrityError, SuccinctPssTree, UsageError
from lyndonarray import build_succinct
from lyndonarray.oracle import bps_bruteforce, pack_parens

NA = b"northamerica"


def feed(parens, backend=None):
    b = AppendOnlyBps(backend=backend)
    for ch in parens:
        b.append_open() if ch == "(" else b.append_close()
    return b


def test_append_basics(backend):
    b = AppendOnlyBps(backend=backend)
    b.append_open()
    assert b.to_parens() == "(" and b.unclosed == 1
    b = feed("(()", backend)
    b.append_close()
    assert b.to_parens() == "(())" and b.unclosed == 0
    with pytest.raises(UsageError):
        b.append_close()


def test_rank_open(backend):
    b = feed("(()((", backend)
    assert b.rank_open(5) == 4
    assert b.rank_open(0) == 0
    with pytest.raises(UsageError):
        b.rank_open(6)
    full = feed(bps_bruteforce(NA), backend)
    assert full.rank_open(26) == 13  # n+1 opens in the complete sequence


def test_select_open_and_node_maps(backend):
    b = feed("(()((", backend)
    assert b.select_open(3) == 4
    assert b.node_to_open(0) == 1
    full = feed(bps_bruteforce(NA), backend)
    assert full.node_to_open(6) == 12
    assert full.open_to_node(12) == 6
    with pytest.raises(UsageError):
        full.open_to_node(6)  # a closing parenthesis
    with pytest.raises(UsageError):
        b.select_open(5)


def test_select_uncl(backend):
    b = feed("(()((", backend)
    assert [b.select_uncl(k) for k in (1, 2, 3)] == [1, 4, 5]
    # the paper's example string: five parentheses "(()((" plus ")", with
    # only the first and the third open still unclosed
    b2 = feed("(()(()", backend)
    assert b2.unclosed == 2
    assert [b2.select_uncl(k) for k in (1, 2)] == [1, 4]
    b3 = feed("(((", backend)
    assert b3.select_uncl(3) == 3
    done = feed("()", backend)
    with pytest.raises(UsageError):
        done.select_uncl(1)


def test_copy_append(backend):
    b = feed("(()", backend)
    b.copy_append(2, 3, 2)
    assert b.to_parens() == "(()()()"
    b.copy_append(2, 3, 0)
    assert b.to_parens() == "(()()()"
    with pytest.raises(UsageError):
        b.copy_append(0, 2, 1)
    with pytest.raises(UsageError):
        b.copy_append(3, 2, 1)
    c = feed("()", backend)
    with pytest.raises(UsageError):
        c.copy_append(2, 2, 1)  # would close with nothing open


def test_finalize_checks(backend):
    with pytest.raises(IntegrityError):
        feed("((", backend).finalize()
    tree = feed("(())", backend).finalize()
    assert tree.n == 1
    with pytest.raises(UsageError):
        tree._bps.append_open()  # frozen


def test_tree_queries_paper_example(backend):
    tree = feed(bps_bruteforce(NA), backend).finalize()
    assert tree.n == 12
    assert tree.subtree_size(6) == 6 and tree.lyndon(6) == 6
    assert tree.parent(9) == 8
    assert tree.nss(1) == 5
    assert tree.pss(11) == 6
    assert tree.nss(12) == 13
    assert tree.subtree_size(0) == 13
    assert tree.lyndon_array() == [4, 3, 2, 1, 1, 6, 1, 3, 1, 1, 1, 1]
    with pytest.raises(UsageError):
        tree.parent(0)
    with pytest.raises(UsageError):
        tree.lyndon(0)
    with pytest.raises(UsageError):
        tree.subtree_size(13)


def test_payload_roundtrip(backend):
    tree = build_succinct(NA, backend=backend)
    payload = tree.payload()
    assert payload == pack_parens(bps_bruteforce(NA))
    again = SuccinctPssTree.from_payload(payload, tree.n, backend=backend)
    assert again.to_parens() == tree.to_parens()
    assert again.parent(9) == 8
    with pytest.raises(IntegrityError):
        SuccinctPssTree.from_payload(payload[:-1], tree.n, backend=backend)
    with pytest.raises(IntegrityError):
        SuccinctPssTree.from_payload(bytes([0x00]) * len(payload), tree.n, backend=backend)


def test_support_agrees_with_scan_fuzz(backend):
    rng = random.Random(1234)
    trials = 25 if backend == "compiled" else 10
    for _ in range(trials):
        b = AppendOnlyBps(backend=backend)
        parens = []
        steps = rng.randint(1, 900)
        for s in range(steps):
            if b.unclosed and rng.random() < 0.45:
                b.append_close()
                parens.append(")")
            else:
                b.append_open()
                parens.append("(")
        p = "".join(parens)
        for pos in rng.sample(range(len(p) + 1), min(10, len(p) + 1)):
            assert b.rank_open(pos) == p[:pos].count("(")
        stack = []
        for idx, ch in enumerate(p):
            stack.append(idx + 1) if ch == "(" else stack.pop()
        assert b.unclosed == len(stack)
        for k in rng.sample(range(1, len(stack) + 1), min(8, len(stack))):
            assert b.select_uncl(k) == stack[k - 1]
        opens = [i + 1 for i, ch in enumerate(p) if ch == "("]
        for k in rng.sample(range(1, len(opens) + 1), min(8, len(opens))):
            assert b.select_open(k) == opens[k - 1]


def test_support_bits_budget(backend):
    # overhead must stay under 0.35 bits per written bit from 2^16 bits up
    n = 40000  # 2n+2 > 2^16
    text = bytes(random.Random(7).randrange(4) for _ in range(n))
    tree = build_succinct(text, backend=backend)
    assert tree.bit_length == 2 * n + 2
    assert tree.support_bits() <= 0.35 * tree.bit_length


def test_total_length_2n_plus_2(backend):
    for t in [b"", b"a", NA, b"aaaa", b"zxy"]:
        tree = build_succinct(t, backend=backend)
        assert tree.bit_length == 2 * len(t) + 2
        assert tree.to_parens() == bps_bruteforce(t)

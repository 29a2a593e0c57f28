import pytest

from lyndonarray import UsageError, is_lyndon_word
from lyndonarray.generators import (
    fibonacci_word,
    increasing,
    make_text,
    periodic,
    random_text,
    thue_morse,
)


def test_fibonacci_example():
    assert fibonacci_word(13) == b"abaababaabaab"
    assert fibonacci_word(0) == b""
    assert fibonacci_word(1) == b"a"
    # prefix-closed
    assert fibonacci_word(200)[:50] == fibonacci_word(50)


def test_thue_morse():
    assert thue_morse(8) == b"abbabaab"
    assert thue_morse(64)[:16] == thue_morse(16)


def test_periodic_is_lyndon_power():
    t = periodic(10, 3)
    assert t == b"abcabcabca"
    assert is_lyndon_word(t, 1, 3)
    assert periodic(4, 1) == b"aaaa"


def test_increasing():
    assert increasing(3, 3) == b"abc"
    assert increasing(5, 3) == b"abccc"


def test_random_reproducible():
    a = random_text(1000, 26, seed=42)
    b = random_text(1000, 26, seed=42)
    assert a == b
    assert random_text(1000, 26, seed=43) != a
    assert set(random_text(4000, 2, seed=1)) == {97, 98}
    assert max(random_text(4000, 256, seed=1)) > 200


def test_make_text_dispatch_and_validation():
    assert make_text("random", 0, 4, 0) == b""
    assert make_text("fibonacci", 5) == b"abaab"
    with pytest.raises(UsageError):
        make_text("nope", 5)
    with pytest.raises(UsageError):
        random_text(10, 0)
    with pytest.raises(UsageError):
        random_text(-1, 2)
    with pytest.raises(UsageError):
        periodic(10, 30)

import itertools
import random

import pytest

from lyndonarray import _backend


def available_backends():
    names = ["pure"]
    try:
        _backend.get_kernels("compiled")
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def all_strings(alphabet: bytes, max_len: int):
    """Every string over `alphabet` with length in [1, max_len]."""
    for n in range(1, max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            yield bytes(tup)


def random_texts(count, max_n, sigmas=(2, 4, 26, 256), seed=0):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        sigma = rng.choice(sigmas)
        yield bytes(rng.randrange(sigma) for _ in range(n))

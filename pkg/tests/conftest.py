import numpy as np
import pytest

from ranksel import BitVector, _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test under every available kernel backend."""
    with _backend.using(request.param):
        yield request.param


def random_bitvector(n, density, seed):
    """Bernoulli vector built independently of the library's generators."""
    rng = np.random.default_rng(seed)
    bv = BitVector(n)
    if n == 0:
        return bv
    bits = (rng.random(n) < density).astype(np.uint8)
    packed = np.packbits(bits, bitorder="little")
    raw = np.zeros(bv.word_count * 8, dtype=np.uint8)
    raw[: len(packed)] = packed
    return BitVector.from_words(n, raw.view("<u8"))


def bits_list(bv):
    return [bv.get(i) for i in range(len(bv))]

import numpy as np
import pytest
from scipy import stats

from qginibre.rng import GOLDEN, MASK64, RandomStream, as_stream, child_seed, splitmix64


def test_splitmix64_reference_values():
    # first outputs of the reference SplitMix64 generator seeded with 0
    state = 0
    outs = []
    for _ in range(3):
        outs.append(splitmix64(state))
        state = (state + GOLDEN) & MASK64
    assert outs == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_child_seed_formula():
    assert child_seed(7, 0) == splitmix64((7 + GOLDEN) & MASK64)
    assert child_seed(7, 3) == splitmix64((7 + 4 * GOLDEN) & MASK64)
    assert len({child_seed(1, i) for i in range(1000)}) == 1000


def test_same_seed_bit_exact():
    a, b = RandomStream(42), RandomStream(42)
    assert np.array_equal(a.uniform(100), b.uniform(100))
    assert np.array_equal(a.normal((10, 3)), b.normal((10, 3)))


def test_different_seeds_differ():
    assert not np.array_equal(RandomStream(1).uniform(10), RandomStream(2).uniform(10))


def test_children_are_uncorrelated():
    s = RandomStream(3)
    x, y = s.child(0).normal(20000), s.child(1).normal(20000)
    assert abs(np.corrcoef(x, y)[0, 1]) < 4 / np.sqrt(20000)


def test_polar_normals_are_gaussian():
    x = RandomStream(5).normal(50000)
    assert stats.kstest(x, "norm").statistic < 1.63 / np.sqrt(50000) * 1.5
    assert abs(x.mean()) < 0.02 and abs(x.var() - 1) < 0.03


def test_normal_scale_and_scalar():
    s1, s2 = RandomStream(9), RandomStream(9)
    assert np.allclose(s1.normal(5, scale=3.0), 3.0 * s2.normal(5))
    assert isinstance(RandomStream(1).normal(), float)


def test_as_stream():
    s = RandomStream(4)
    assert as_stream(s) is s
    assert as_stream(4).seed == 4
    assert as_stream(None).seed == 0
    with pytest.raises(TypeError):
        as_stream("seed")

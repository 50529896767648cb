import itertools

import numpy as np
import pytest

from twmatch.core.errors import OracleLimitError, ParameterError
from twmatch.core.semiring import (
    NEG_INF,
    Domain,
    SetFunction,
    convolve_maxsum,
    convolve_ring2,
    naive_convolve,
)


def ring(values):
    values = np.asarray(values, dtype=np.int64)
    return SetFunction(int(len(values)).bit_length() - 1, values, Domain.RING_MOD2)


def maxsum(values):
    values = np.asarray(values, dtype=np.int64)
    return SetFunction(int(len(values)).bit_length() - 1, values, Domain.MAX_SUM)


def random_maxsum(rng, n, bound=20, holes=0.2):
    values = rng.integers(-bound, bound, size=1 << n, endpoint=True)
    values[rng.random(1 << n) < holes] = NEG_INF
    return maxsum(values)


def test_length_must_match_universe():
    with pytest.raises(ParameterError):
        SetFunction(2, np.zeros(3, dtype=np.int64), Domain.RING_MOD2)


def test_ring_identity_is_neutral():
    rng = np.random.default_rng(0)
    for n in range(6):
        f = ring(rng.integers(0, 2, size=1 << n))
        e = SetFunction.identity(n, Domain.RING_MOD2)
        assert np.array_equal(convolve_ring2(f, e).values, f.values)
        assert np.array_equal(convolve_ring2(e, f).values, f.values)


def test_ring_singletons_cancel():
    f = ring([0, 1, 1, 0])
    h = convolve_ring2(f, f)
    assert h.values.tolist() == [0, 0, 0, 0]


def test_ring_all_zero():
    f = ring([0] * 8)
    assert naive_convolve(f, f).values.tolist() == [0] * 8


def test_ring_matches_naive_exhaustively_on_three_elements():
    for fv in itertools.product((0, 1), repeat=8):
        f = ring(fv)
        for gv in ((1, 0, 1, 1, 0, 0, 1, 0), (0, 1, 1, 0, 1, 1, 1, 1), fv):
            g = ring(gv)
            assert np.array_equal(convolve_ring2(f, g).values, naive_convolve(f, g).values)


def test_ring_matches_naive_on_random_inputs():
    rng = np.random.default_rng(1)
    for trial in range(40):
        n = trial % 9
        f, g = ring(rng.integers(0, 2, size=1 << n)), ring(rng.integers(0, 2, size=1 << n))
        assert np.array_equal(convolve_ring2(f, g).values, naive_convolve(f, g).values)


def test_maxsum_two_term_example():
    h = convolve_maxsum(maxsum([0, 5]), maxsum([1, NEG_INF]), bound=5)
    assert h.values.tolist() == [1, 6]


def test_maxsum_identity_is_neutral():
    rng = np.random.default_rng(2)
    for n in range(6):
        f = random_maxsum(rng, n)
        e = SetFunction.identity(n, Domain.MAX_SUM)
        assert np.array_equal(convolve_maxsum(f, e, 20).values, f.values)


def test_maxsum_all_neg_inf_stays_neg_inf():
    f = maxsum([NEG_INF] * 4)
    g = maxsum([0, 1, 2, 3])
    assert convolve_maxsum(f, g, 3).values.tolist() == [NEG_INF] * 4


def test_maxsum_matches_naive_exhaustively_on_three_elements():
    choices = (NEG_INF, 0, 1, 2)
    rng = np.random.default_rng(3)
    for fv in itertools.product(choices, repeat=4):
        f = maxsum(list(fv) + list(rng.choice(choices, size=4)))
        g = maxsum(rng.choice(choices, size=8))
        assert np.array_equal(convolve_maxsum(f, g, 2).values, naive_convolve(f, g).values)


def test_maxsum_matches_naive_on_random_inputs():
    rng = np.random.default_rng(4)
    for trial in range(40):
        n = trial % 9
        f, g = random_maxsum(rng, n), random_maxsum(rng, n)
        assert np.array_equal(convolve_maxsum(f, g, 20).values, naive_convolve(f, g).values)


@pytest.mark.slow
def test_convolutions_match_naive_up_to_twelve_elements():
    rng = np.random.default_rng(5)
    for trial in range(100):
        n = 9 + trial % 4
        f, g = random_maxsum(rng, n), random_maxsum(rng, n)
        assert np.array_equal(convolve_maxsum(f, g, 20).values, naive_convolve(f, g).values)
        a, b = ring(rng.integers(0, 2, size=1 << n)), ring(rng.integers(0, 2, size=1 << n))
        assert np.array_equal(convolve_ring2(a, b).values, naive_convolve(a, b).values)


def test_convolutions_commute_and_associate():
    rng = np.random.default_rng(6)
    for n in range(7):
        f, g, h = (random_maxsum(rng, n, bound=5) for _ in range(3))
        assert np.array_equal(convolve_maxsum(f, g, 5).values, convolve_maxsum(g, f, 5).values)
        left = convolve_maxsum(convolve_maxsum(f, g, 5), h, 10)
        right = convolve_maxsum(f, convolve_maxsum(g, h, 5), 10)
        assert np.array_equal(left.values, right.values)

        a, b, c = (ring(rng.integers(0, 2, size=1 << n)) for _ in range(3))
        assert np.array_equal(convolve_ring2(a, b).values, convolve_ring2(b, a).values)
        assert np.array_equal(
            convolve_ring2(convolve_ring2(a, b), c).values,
            convolve_ring2(a, convolve_ring2(b, c)).values,
        )


def test_out_of_bound_value_is_rejected():
    with pytest.raises(ParameterError):
        convolve_maxsum(maxsum([0, 7]), maxsum([0, 0]), bound=5)


def test_universe_and_domain_mismatch():
    with pytest.raises(ParameterError):
        convolve_ring2(ring([0, 1]), ring([0, 1, 0, 1]))
    with pytest.raises(ParameterError):
        convolve_maxsum(ring([0, 1]), ring([0, 1]), bound=1)


def test_naive_refuses_large_universe():
    f = SetFunction(17, np.zeros(1 << 17, dtype=np.int64), Domain.RING_MOD2)
    with pytest.raises(OracleLimitError):
        naive_convolve(f, f)

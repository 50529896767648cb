"""Fast subset convolution over GF(2) and over the integer max-sum semiring.

Both fast paths use ranked zeta/Mobius transforms: a function on subsets is
spread over (rank, mask) with rank = |mask|, zeta-transformed per rank,
multiplied rank-wise and transformed back. The max-sum version embeds each
value v as beta**(v + P) with beta = 2**n + 1 so that one sum-product
convolution over Python integers carries the maximum in its top digit.
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from .errors import OracleLimitError, ParameterError

logger = logging.getLogger(__name__)

# Reserved minimum for max-sum values; far below any legal table value.
NEG_INF = int(np.iinfo(np.int64).min // 4)

NAIVE_MAX_UNIVERSE = 16


class Domain(str, Enum):
    RING_MOD2 = "ring-mod-2"
    MAX_SUM = "max-sum"


@dataclass(frozen=True)
class SetFunction:
    """Values indexed by subset bitmask over a universe of universe_size elements."""

    universe_size: int
    values: np.ndarray
    domain: Domain

    def __post_init__(self):
        if len(self.values) != 1 << self.universe_size:
            raise ParameterError(
                f"expected {1 << self.universe_size} values for universe size "
                f"{self.universe_size}, got {len(self.values)}"
            )

    @classmethod
    def identity(cls, universe_size: int, domain: Domain) -> "SetFunction":
        """The delta function at the empty set."""
        if domain is Domain.RING_MOD2:
            values = np.zeros(1 << universe_size, dtype=np.int64)
            values[0] = 1
        else:
            values = np.full(1 << universe_size, NEG_INF, dtype=np.int64)
            values[0] = 0
        return cls(universe_size, values, domain)


def extended_add(a: int, b: int) -> int:
    """Addition with NEG_INF absorbing."""
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def popcounts(universe_size: int) -> np.ndarray:
    masks = np.arange(1 << universe_size, dtype=np.int64)
    counts = np.zeros(1 << universe_size, dtype=np.int64)
    for bit in range(universe_size):
        counts += (masks >> bit) & 1
    return counts


def _check_pair(f: SetFunction, g: SetFunction, domain: Domain) -> None:
    if f.universe_size != g.universe_size:
        raise ParameterError(f"universe mismatch: {f.universe_size} vs {g.universe_size}")
    if f.domain is not domain or g.domain is not domain:
        raise ParameterError(f"expected {domain.value} set functions, got {f.domain.value} and {g.domain.value}")


def _transform(ranked: np.ndarray, universe_size: int, combine) -> None:
    """In-place per-rank zeta (combine=add/xor) or Mobius (combine=subtract)."""
    rows = ranked.shape[0]
    for bit in range(universe_size):
        view = ranked.reshape(rows, -1, 2, 1 << bit)
        view[:, :, 1, :] = combine(view[:, :, 1, :], view[:, :, 0, :])


def _ranked_products(f_hat: np.ndarray, g_hat: np.ndarray, zero_row: np.ndarray, add) -> np.ndarray:
    rows = f_hat.shape[0]
    out = np.empty_like(f_hat)
    for k in range(rows):
        acc = zero_row.copy()
        for i in range(k + 1):
            acc = add(acc, f_hat[i] * g_hat[k - i])
        out[k] = acc
    return out


def convolve_ring2(f: SetFunction, g: SetFunction) -> SetFunction:
    """Subset convolution in characteristic two.

    Values are 0/1 integers or objects closed under ``^`` and ``*`` (sparse
    parity polynomials, for instance). Mobius equals zeta mod 2, so both
    directions are XOR passes.
    """
    _check_pair(f, g, Domain.RING_MOD2)
    if (f.values.dtype == object) != (g.values.dtype == object):
        raise ParameterError("cannot convolve integer values with object values")
    n = f.universe_size
    size = 1 << n
    ranks = popcounts(n)
    masks = np.arange(size)

    if f.values.dtype == object:
        sample = f.values[0]
        zero = sample ^ sample
        f_ranked = np.full((n + 1, size), zero, dtype=object)
        g_ranked = np.full((n + 1, size), zero, dtype=object)
        zero_row = np.full(size, zero, dtype=object)
        f_ranked[ranks, masks] = f.values
        g_ranked[ranks, masks] = g.values
    else:
        f_ranked = np.zeros((n + 1, size), dtype=np.int64)
        g_ranked = np.zeros((n + 1, size), dtype=np.int64)
        zero_row = np.zeros(size, dtype=np.int64)
        f_ranked[ranks, masks] = np.asarray(f.values, dtype=np.int64) & 1
        g_ranked[ranks, masks] = np.asarray(g.values, dtype=np.int64) & 1

    _transform(f_ranked, n, np.bitwise_xor)
    _transform(g_ranked, n, np.bitwise_xor)
    h_ranked = _ranked_products(f_ranked, g_ranked, zero_row, np.bitwise_xor)
    _transform(h_ranked, n, np.bitwise_xor)
    return SetFunction(n, h_ranked[ranks, masks], Domain.RING_MOD2)


def _encode(values: np.ndarray, powers: List[int], bound: int) -> np.ndarray:
    encoded = np.zeros(len(values), dtype=object)
    for i, v in enumerate(values.tolist()):
        if v == NEG_INF:
            continue
        if not -bound <= v <= bound:
            raise ParameterError(f"value {v} outside declared bound [-{bound}, {bound}]")
        encoded[i] = powers[v + bound]
    return encoded


def convolve_maxsum(f: SetFunction, g: SetFunction, bound: int) -> SetFunction:
    """h(Y) = max over A + B = Y of f(A) + g(B), with NEG_INF absorbing.

    Args:
        f: Max-sum set function with finite values in [-bound, bound].
        g: Same universe and domain as f.
        bound: Declared value bound P.

    Returns:
        The max-sum convolution; its finite values lie in [-2P, 2P].

    Raises:
        ParameterError: On universe/domain mismatch or out-of-bound values.
    """
    _check_pair(f, g, Domain.MAX_SUM)
    n = f.universe_size
    size = 1 << n
    beta = size + 1
    powers = [1]
    for _ in range(4 * bound + 1):
        powers.append(powers[-1] * beta)

    ranks = popcounts(n)
    masks = np.arange(size)
    f_ranked = np.zeros((n + 1, size), dtype=object)
    g_ranked = np.zeros((n + 1, size), dtype=object)
    f_ranked[ranks, masks] = _encode(f.values, powers, bound)
    g_ranked[ranks, masks] = _encode(g.values, powers, bound)

    _transform(f_ranked, n, np.add)
    _transform(g_ranked, n, np.add)
    h_ranked = _ranked_products(f_ranked, g_ranked, np.zeros(size, dtype=object), np.add)
    _transform(h_ranked, n, np.subtract)

    out = np.full(size, NEG_INF, dtype=np.int64)
    for mask, total in enumerate(h_ranked[ranks, masks].tolist()):
        if total:
            out[mask] = bisect_right(powers, total) - 1 - 2 * bound
    return SetFunction(n, out, Domain.MAX_SUM)


def naive_convolve(f: SetFunction, g: SetFunction) -> SetFunction:
    """Direct evaluation over all disjoint splits; the test oracle."""
    if f.universe_size != g.universe_size or f.domain is not g.domain:
        raise ParameterError("naive_convolve needs matching universes and domains")
    n = f.universe_size
    if n > NAIVE_MAX_UNIVERSE:
        raise OracleLimitError(f"universe size {n} exceeds naive limit {NAIVE_MAX_UNIVERSE}")
    fv = f.values.tolist()
    gv = g.values.tolist()
    ring = f.domain is Domain.RING_MOD2
    objects = f.values.dtype == object

    results = []
    for y in range(1 << n):
        if ring:
            acc = (fv[0] ^ fv[0]) if objects else 0
        else:
            acc = NEG_INF
        a = y
        while True:
            if ring:
                term = fv[a] * gv[y ^ a]
                acc = acc ^ (term if objects else term & 1)
            else:
                acc = max(acc, extended_add(fv[a], gv[y ^ a]))
            if a == 0:
                break
            a = (a - 1) & y
        results.append(acc)

    if objects:
        values = np.empty(len(results), dtype=object)
        values[:] = results
    else:
        values = np.array(results, dtype=np.int64)
    return SetFunction(n, values, f.domain)

"""Packed bag colorings.

A coloring of an ascending bag (v_0 < v_1 < ... ) over colors 0..base-1 is
packed as sum(color(v_i) * base**i). The helpers accept Python ints or
numpy integer arrays so table code can vectorize over all codes at once.
"""

from bisect import bisect_left
from typing import List, Sequence


def position(bag: Sequence[int], vertex: int) -> int:
    """Index of vertex in an ascending bag."""
    i = bisect_left(bag, vertex)
    if i == len(bag) or bag[i] != vertex:
        raise KeyError(f"vertex {vertex} not in bag {list(bag)}")
    return i


def digit(code, pos: int, base: int):
    return (code // base**pos) % base


def with_digit(code, pos: int, base: int, value):
    """Replace the digit at pos."""
    return code + (value - digit(code, pos, base)) * base**pos


def insert_digit(code, pos: int, base: int, value):
    """Code for a bag with a new vertex inserted at pos."""
    low = code % base**pos
    high = code // base**pos
    return low + value * base**pos + high * base ** (pos + 1)


def remove_digit(code, pos: int, base: int):
    """Code for the bag without the vertex at pos."""
    low = code % base**pos
    high = code // base ** (pos + 1)
    return low + high * base**pos


def pack(colors: Sequence[int], base: int) -> int:
    code = 0
    for i in reversed(range(len(colors))):
        code = code * base + colors[i]
    return code


def unpack(code: int, base: int, length: int) -> List[int]:
    colors = []
    for _ in range(length):
        colors.append(code % base)
        code //= base
    return colors

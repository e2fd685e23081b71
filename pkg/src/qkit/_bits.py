"""Bitmask helpers. Subsets of an ordered universe are ints; bit i is element i."""

from __future__ import annotations

import os
from typing import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(names: Iterable[str], index: dict[str, int]) -> int:
    m = 0
    for name in names:
        m |= 1 << index[name]
    return m


def names_of(mask: int, universe: Sequence[str]) -> list[str]:
    return [universe[i] for i in iter_bits(mask)]


def set_label(mask: int, universe: Sequence[str]) -> str:
    """Label a subset as ``[x,y]`` with names sorted."""
    return "[" + ",".join(sorted(names_of(mask, universe))) + "]"


def union_table(images: Sequence[int]) -> list[int]:
    """Extend singleton images to all subsets by union (index = subset mask)."""
    out = [0] * (1 << len(images))
    for m in range(1, len(out)):
        low = m & -m
        out[m] = out[m ^ low] | images[low.bit_length() - 1]
    return out


def env_cap(default: int) -> int:
    """Enumeration cap, overridable through ``QKIT_CAP``."""
    raw = os.environ.get("QKIT_CAP")
    return int(raw) if raw else default

from __future__ import annotations

import pytest

from evenlines.arrangement import Arrangement
from evenlines.enumerator import EnumerationTask, enumerate_survivors


def cycle(n: int, start: int = 0, total: int | None = None) -> list[tuple[int, int]]:
    return [(start + i, start + (i + 1) % n) for i in range(n)]


def graph(n: int, edges) -> Arrangement:
    return Arrangement.from_edges(n, edges)


def cycles(*lengths: int, isolated: int = 0) -> Arrangement:
    edges, at = [], 0
    for m in lengths:
        edges += cycle(m, at)
        at += m
    return Arrangement.from_edges(at + isolated, edges)


def k44() -> Arrangement:
    return Arrangement.from_edges(8, [(i, j) for i in range(4) for j in range(4, 8)])


def complete(n: int) -> Arrangement:
    return Arrangement.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@pytest.fixture(scope="session")
def survivors8():
    return enumerate_survivors(EnumerationTask.for_n(8))


@pytest.fixture(scope="session")
def survivors10():
    return enumerate_survivors(EnumerationTask.for_n(10))

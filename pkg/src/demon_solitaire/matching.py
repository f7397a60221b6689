"""Deterministic maximum bipartite matching by augmenting paths.

Left vertices are the integers 0..n-1; right vertices are arbitrary hashable
values (card numbers here).  Left vertices are processed in ascending index
order and right candidates in ascending value order, so the result is
reproducible across runs.  Hopcroft-Karp would shave the complexity but the
games played here never exceed a handful of stacks.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence, TypeVar

R = TypeVar("R", bound=Hashable)


def max_matching(adjacency: Sequence[Iterable[R]]) -> dict[int, R]:
    """Return a maximum matching {left index -> right value}.

    `adjacency[i]` lists the right vertices available to left vertex i.
    """
    neighbors: list[list[R]] = [sorted(adj) for adj in adjacency]
    owner: dict[R, int] = {}

    def augment(left: int, seen: set[R]) -> bool:
        for right in neighbors[left]:
            if right in seen:
                continue
            seen.add(right)
            if right not in owner or augment(owner[right], seen):
                owner[right] = left
                return True
        return False

    for i in range(len(neighbors)):
        augment(i, set())
    return {left: right for right, left in owner.items()}

"""Reflections in norm-2 vectors and bounded orbit exploration."""
from __future__ import annotations

from collections import deque
from typing import NamedTuple, Sequence

from .errors import NotNormTwo
from .lattice import GramLattice, Vector, inner

__all__ = ["OrbitResult", "reflect", "is_symmetry", "orbit", "simple_roots"]


class OrbitResult(NamedTuple):
    vectors: tuple[Vector, ...]
    clipped: bool  # True if some image left the box and was discarded


def _require_norm_two(L, alpha):
    a2 = inner(L, alpha, alpha)
    if a2 != 2:
        raise NotNormTwo(f"{list(alpha)} has norm {a2}; only norm-2 reflections are supported")


def reflect(L: GramLattice, alpha: Sequence[int], gamma: Sequence[int]) -> Vector:
    """``gamma - (gamma, alpha) alpha``, the reflection in the hyperplane orthogonal to alpha."""
    _require_norm_two(L, alpha)
    c = inner(L, gamma, alpha)
    return tuple(g - c * a for g, a in zip(gamma, alpha))


def is_symmetry(L: GramLattice, alpha: Sequence[int], sample: Sequence[Sequence[int]]) -> bool:
    _require_norm_two(L, alpha)
    images = [reflect(L, alpha, v) for v in sample]
    if not all(isinstance(c, int) for w in images for c in w):
        return False
    for i, (u, wu) in enumerate(zip(sample, images)):
        for v, wv in zip(sample[i:], images[i:]):
            if inner(L, u, v) != inner(L, wu, wv):
                return False
    return True


def orbit(
    L: GramLattice,
    start: Sequence[int],
    alphas: Sequence[Sequence[int]],
    box: int,
) -> OrbitResult:
    """Breadth-first closure of ``{start}`` under the given reflections.

    Images with a coordinate outside ``[-box, box]`` are dropped and flagged via
    ``clipped``; the reflection groups in play are usually infinite.
    """
    for alpha in alphas:
        _require_norm_two(L, alpha)
    start = tuple(start)
    seen = {start}
    queue = deque([start])
    clipped = False
    # alpha and its coefficient row G.alpha, so each image costs one dot product
    rows = [
        (tuple(alpha), [sum(g * a for g, a in zip(row, alpha)) for row in L.gram])
        for alpha in alphas
    ]
    while queue:
        v = queue.popleft()
        for alpha, g_alpha in rows:
            c = sum(x * y for x, y in zip(v, g_alpha))
            if not c:
                continue
            w = tuple(x - c * a for x, a in zip(v, alpha))
            if w in seen:
                continue
            if any(abs(x) > box for x in w):
                clipped = True
                continue
            seen.add(w)
            queue.append(w)
    return OrbitResult(tuple(sorted(seen)), clipped)


def simple_roots(L: GramLattice) -> list[Vector]:
    """Basis vectors of norm 2 (all of them for a Cartan-matrix Gram such as E8)."""
    n = L.rank
    out = []
    for i in range(n):
        if L.gram[i][i] == 2:
            out.append(tuple(1 if j == i else 0 for j in range(n)))
    return out

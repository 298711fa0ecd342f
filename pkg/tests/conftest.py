"""Shared test oracles.

The Weyl group oracle here is deliberately independent of the package:
it enumerates group elements as matrices acting on the simple-root
basis, generated by the simple reflections from hand-entered Cartan
matrices, and recovers lengths from breadth-first search depth.  It is
used to cross-check the embedded degree tables and the cell-count
polynomials at small rank.
"""

from collections import deque
from typing import Dict, List, Sequence, Tuple

import pytest

Matrix = Tuple[Tuple[int, ...], ...]


def cartan_matrix(series: str, n: int) -> List[List[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if series in ("A", "B", "C"):
        for i in range(n - 1):
            link(i, i + 1)
        if series == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)
        if series == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)
    elif series == "D":
        for i in range(n - 3):
            link(i, i + 1)
        link(n - 3, n - 2)
        link(n - 3, n - 1)
    elif series == "G":
        link(0, 1, -1, -3)
    elif series == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    else:
        raise ValueError(series)
    return a


def simple_reflections(series: str, n: int) -> List[Matrix]:
    a = cartan_matrix(series, n)
    out = []
    for i in range(n):
        cols = []
        for j in range(n):
            col = [1 if r == j else 0 for r in range(n)]
            col[i] -= a[i][j]
            cols.append(col)
        # matrix with columns cols: s_i(alpha_j) = alpha_j - a_ij alpha_i
        out.append(tuple(tuple(cols[j][r] for j in range(n)) for r in range(n)))
    return out


def _mat_mul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    yt = tuple(zip(*y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in yt) for row in x)


def weyl_elements_by_length(series: str, n: int) -> Dict[Matrix, int]:
    """BFS over the Cayley graph; depth equals Coxeter length."""
    gens = simple_reflections(series, n)
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    lengths = {identity: 0}
    frontier = deque([identity])
    while frontier:
        w = frontier.popleft()
        for s in gens:
            ws = _mat_mul(w, s)
            if ws not in lengths:
                lengths[ws] = lengths[w] + 1
                frontier.append(ws)
    return lengths


def weyl_order_oracle(series: str, n: int) -> int:
    return len(weyl_elements_by_length(series, n))


def length_histogram(series: str, n: int) -> List[int]:
    lengths = weyl_elements_by_length(series, n)
    out = [0] * (max(lengths.values()) + 1)
    for length in lengths.values():
        out[length] += 1
    return out


def coset_length_histogram(series: str, n: int, theta: Sequence[int]) -> List[int]:
    """Minimal coset-representative lengths for W / W_theta, theta 1-based."""
    gens = simple_reflections(series, n)
    lengths = weyl_elements_by_length(series, n)
    sub_gens = [gens[i - 1] for i in theta]
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    subgroup = {identity}
    frontier = deque([identity])
    while frontier:
        w = frontier.popleft()
        for s in sub_gens:
            ws = _mat_mul(w, s)
            if ws not in subgroup:
                subgroup.add(ws)
                frontier.append(ws)
    best: Dict[Matrix, int] = {}
    for w, lw in lengths.items():
        canon = min(_mat_mul(w, u) for u in subgroup)
        if canon not in best or lw < best[canon]:
            best[canon] = lw
    out = [0] * (max(best.values()) + 1)
    for length in best.values():
        out[length] += 1
    return out


@pytest.fixture(scope="session")
def weyl_oracle():
    return {
        "by_length": length_histogram,
        "order": weyl_order_oracle,
        "coset": coset_length_histogram,
    }

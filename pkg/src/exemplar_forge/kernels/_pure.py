"""Pure-Python kernels: ordered tree edit distance and LCS length.

These are the fallback implementations; `exemplar_forge.kernels` prefers the
compiled twins in `_speedups` when they are importable. Both variants must
return identical values (tests enforce parity).
"""

from __future__ import annotations

from typing import Sequence

IMPL = "pure"


def ted_from_arrays(
    labels1: Sequence[int],
    lml1: Sequence[int],
    keyroots1: Sequence[int],
    labels2: Sequence[int],
    lml2: Sequence[int],
    keyroots2: Sequence[int],
) -> int:
    """Unit-cost edit distance between two ordered labeled trees.

    Arrays are 1-based (index 0 unused): `labels*[i]` is the interned label of
    the i-th node in postorder, `lml*[i]` the postorder index of the leftmost
    leaf under it, and `keyroots*` the ascending key roots.
    """
    n1 = len(labels1) - 1
    n2 = len(labels2) - 1
    td = [[0] * (n2 + 1) for _ in range(n1 + 1)]

    for i in keyroots1:
        li = lml1[i]
        for j in keyroots2:
            lj = lml2[j]
            rows = i - li + 2
            cols = j - lj + 2
            fd = [[0] * cols for _ in range(rows)]
            for x in range(1, rows):
                fd[x][0] = fd[x - 1][0] + 1
            for y in range(1, cols):
                fd[0][y] = fd[0][y - 1] + 1
            for x in range(1, rows):
                node1 = x + li - 1
                sub1 = lml1[node1] == li
                for y in range(1, cols):
                    node2 = y + lj - 1
                    if sub1 and lml2[node2] == lj:
                        cost = 0 if labels1[node1] == labels2[node2] else 1
                        d = min(fd[x - 1][y] + 1, fd[x][y - 1] + 1, fd[x - 1][y - 1] + cost)
                        fd[x][y] = d
                        td[node1][node2] = d
                    else:
                        p = lml1[node1] - li
                        q = lml2[node2] - lj
                        fd[x][y] = min(
                            fd[x - 1][y] + 1,
                            fd[x][y - 1] + 1,
                            fd[p][q] + td[node1][node2],
                        )
    return td[n1][n2]


def lcs_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the longest common subsequence of two id sequences."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        row_prev = 0
        for j, y in enumerate(b, start=1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                pj = prev[j]
                curr.append(pj if pj >= row_prev else row_prev)
            row_prev = curr[-1]
        prev = curr
    return prev[-1]

"""Pure-Python DTW kernel (fallback for the compiled extension).

Computes the last row of the shared-start DTW table

    D[i][j] = |a_i - b_j| + min(D[i-1][j], D[i][j-1], D[i-1][j-1])

with D[0][0] = 0 and +inf boundaries on row 0 / column 0.  The boundary
infinity is a finite sentinel strictly greater than any achievable path
cost (2*(m+n) bounds the cost when values lie in [-1, 1]), so arithmetic
stays finite.  Interior cells are all reachable, so the sentinel never
propagates into them.
"""

from __future__ import annotations


def last_row(a, b):
    """Return row m of the DP table as a list of length n+1.

    last_row[j] = D[m][j]; last_row[0] is the boundary sentinel.
    """
    m, n = len(a), len(b)
    sentinel = 2.0 * (m + n) + 4.0
    prev = [0.0] + [sentinel] * n
    for i in range(m):
        ai = a[i]
        cur = [sentinel] * (n + 1)
        for j in range(1, n + 1):
            d = ai - b[j - 1]
            if d < 0.0:
                d = -d
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = d + best
        prev = cur
    return prev

"""
Compiled path scans behind the pvar operations.

All functions take a contiguous float64 array of path values and are
compiled with numba in nopython mode. They release the GIL, so ensemble
drivers can run them from a thread pool.
"""

import numpy as np
from numba import njit

# DFS stack depth for the segment tree; a tree over 2^63 leaves fits.
_STACK = 136


@njit(cache=True, nogil=True)
def pvar_dp(x, p):
    """Anchored p-variation recurrence best[j] = max_i best[i] + |x_j - x_i|^p.

    best[] is nondecreasing, so a node of the segment tree covering indices
    [lo, hi] can contribute at most best[hi] + reach^p, where reach is the
    largest distance from x_j to the node's value range. Nodes that cannot
    beat the current candidate are skipped whole.

    Returns the best[] array and the argmax links for partition recovery.
    """
    n = x.shape[0]
    best = np.zeros(n)
    link = np.zeros(n, dtype=np.int64)
    if n < 2:
        return best, link

    size = 1
    while size < n:
        size *= 2
    tree_lo = np.full(2 * size, np.inf)
    tree_hi = np.full(2 * size, -np.inf)
    for i in range(n):
        tree_lo[size + i] = x[i]
        tree_hi[size + i] = x[i]
    for k in range(size - 1, 0, -1):
        tree_lo[k] = min(tree_lo[2 * k], tree_lo[2 * k + 1])
        tree_hi[k] = max(tree_hi[2 * k], tree_hi[2 * k + 1])

    stack_node = np.empty(_STACK, dtype=np.int64)
    stack_lo = np.empty(_STACK, dtype=np.int64)
    stack_hi = np.empty(_STACK, dtype=np.int64)

    for j in range(1, n):
        xj = x[j]
        cur = best[j - 1] + abs(xj - x[j - 1]) ** p
        arg = j - 1
        last = j - 2
        if last >= 0:
            top = 0
            stack_node[0] = 1
            stack_lo[0] = 0
            stack_hi[0] = size - 1
            top = 1
            while top > 0:
                top -= 1
                node = stack_node[top]
                lo = stack_lo[top]
                hi = stack_hi[top]
                if lo > last:
                    continue
                cap = hi if hi < last else last
                reach = max(xj - tree_lo[node], tree_hi[node] - xj)
                if best[cap] + reach ** p <= cur:
                    continue
                if lo == hi:
                    # at a leaf reach is exactly |x_j - x_lo|
                    cur = best[lo] + reach ** p
                    arg = lo
                    continue
                mid = (lo + hi) // 2
                # right child is popped first: later indices carry larger best[]
                stack_node[top] = 2 * node
                stack_lo[top] = lo
                stack_hi[top] = mid
                top += 1
                stack_node[top] = 2 * node + 1
                stack_lo[top] = mid + 1
                stack_hi[top] = hi
                top += 1
        best[j] = cur
        link[j] = arg
    return best, link


@njit(cache=True, nogil=True)
def stopping_scan(x, level_size, max_times):
    """Indices of tau_0 = 0 < tau_1 < ... for range exceedances of level_size.

    A negative max_times means no cap. The flag is False when the scan
    stopped because the cap was reached.
    """
    n = x.shape[0]
    out = np.empty(n, dtype=np.int64)
    out[0] = 0
    count = 1
    lo = x[0]
    hi = x[0]
    terminated = True
    if max_times == 0:
        return out[:1], False
    for t in range(1, n):
        v = x[t]
        if v < lo:
            lo = v
        if v > hi:
            hi = v
        if hi - lo > level_size:
            out[count] = t
            count += 1
            lo = v
            hi = v
            if max_times > 0 and count - 1 >= max_times:
                terminated = False
                break
    return out[:count], terminated


@njit(cache=True, nogil=True)
def oscillation_scan(x, b):
    """Greedy count of chained index pairs with |x_e - x_s| > b."""
    n = x.shape[0]
    count = 0
    lo = x[0]
    hi = x[0]
    for e in range(1, n):
        v = x[e]
        if v - lo > b or hi - v > b:
            count += 1
            lo = v
            hi = v
        else:
            if v < lo:
                lo = v
            if v > hi:
                hi = v
    return count


@njit(cache=True, nogil=True)
def _first_index(buf, m, v, threshold, strict):
    # first i in [0, m) with buf[i] - v >= threshold (> when strict)
    a = 0
    b = m
    while a < b:
        mid = (a + b) // 2
        d = buf[mid] - v
        if (d > threshold) if strict else (d >= threshold):
            b = mid
        else:
            a = mid + 1
    return a


@njit(cache=True, nogil=True)
def _has_partner(buf, m, v, lo_edge, hi_edge, open_floor):
    # some window value w with |v - w| in [lo_edge, hi_edge), or in (0, hi_edge)
    if open_floor:
        up = _first_index(buf, m, v, 0.0, True)
        down = _first_index(buf, m, v, 0.0, False) - 1
    else:
        up = _first_index(buf, m, v, lo_edge, False)
        down = _first_index(buf, m, v, -lo_edge, True) - 1
    if up < m and buf[up] - v < hi_edge:
        return True
    if down >= 0 and buf[down] - v > -hi_edge:
        return True
    return False


@njit(cache=True, nogil=True)
def band_scan(x, lo_edge, hi_edge, open_floor):
    """Greedy count of chained index pairs whose distance lies in the band.

    The window of values since the last chosen endpoint is kept sorted, so
    each partner query is two binary searches.
    """
    n = x.shape[0]
    buf = np.empty(n)
    buf[0] = x[0]
    m = 1
    count = 0
    for e in range(1, n):
        v = x[e]
        if _has_partner(buf, m, v, lo_edge, hi_edge, open_floor):
            count += 1
            buf[0] = v
            m = 1
        else:
            k = _first_index(buf, m, v, 0.0, True)
            for i in range(m, k, -1):
                buf[i] = buf[i - 1]
            buf[k] = v
            m += 1
    return count

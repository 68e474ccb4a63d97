"""Pure-Python kernels; the fallback when the compiled extension is absent.

Every function takes profit and weight arrays already in ratio order.
Position ``i - 1`` of those arrays holds object number ``i``; object
number 0 is the subset-start sentinel.
"""

import numpy as np

NAME = "python"


def bin_index(b, c, T):
    if b >= c:
        return T
    k = int(b * (T / c))
    return k if k < T else T


def greedy_fill(p, w, c):
    """Ratio-order greedy fill that keeps scanning after the first reject.

    Returns ``(taken, S, W, r, S_at_r, W_at_r)`` where ``r`` is the first
    rejected object number (0 if every object fit) and the ``_at_r`` sums
    are the running totals at the moment of that reject.
    """
    p = np.asarray(p, dtype=np.float64).tolist()
    w = np.asarray(w, dtype=np.float64).tolist()
    n = len(p)
    taken = np.zeros(n, dtype=np.uint8)
    S = 0.0
    W = 0.0
    r = 0
    S_at_r = 0.0
    W_at_r = 0.0
    for idx in range(n):
        wi = w[idx]
        if W + wi <= c:
            S += p[idx]
            W += wi
            taken[idx] = 1
        elif r == 0:
            r = idx + 1
            S_at_r = S
            W_at_r = W
    return taken, S, W, r, S_at_r, W_at_r


def greedy_count(p, w, c):
    W = 0.0
    count = 0
    for wi in np.asarray(w, dtype=np.float64).tolist():
        if W + wi <= c:
            W += wi
            count += 1
    return count


def xdp_forward(p, w, c, T):
    p = np.asarray(p, dtype=np.float64).tolist()
    w = np.asarray(w, dtype=np.float64).tolist()
    n = len(p)
    T = int(T)
    scale = T / c
    XP = [0.0] * (T + 1)
    XW = [0.0] * (T + 1)
    XO = [-1] * (T + 1)
    XO[0] = 0
    back = np.zeros((n + 1, T + 1), dtype=np.int32)
    backbin = np.zeros((n + 1, T + 1), dtype=np.int32)
    S = 0.0
    bestbin = 0
    for i in range(1, n + 1):
        pi = p[i - 1]
        wi = w[i - 1]
        back_i = back[i]
        backbin_i = backbin[i]
        for j in range(T, -1, -1):
            if XO[j] < 0:
                continue
            b = XW[j] + wi
            if b > c:
                continue
            a = XP[j] + pi
            if b >= c:
                k = T
            else:
                k = int(b * scale)
                if k > T:
                    k = T
            if a > XP[k]:
                XP[k] = a
                XW[k] = b
                back_i[k] = XO[j]
                backbin_i[k] = j
                XO[k] = i
                if a > S:
                    S = a
                    bestbin = k
    return (
        np.array(XP, dtype=np.float64),
        np.array(XW, dtype=np.float64),
        np.array(XO, dtype=np.int32),
        back,
        backbin,
        S,
        bestbin,
    )


def backtrack_chain(XO, back, backbin, bestbin):
    """Follow predecessor links from ``bestbin``; object numbers, high to low."""
    chain = []
    k = int(bestbin)
    i = int(XO[k])
    prev = back.shape[0]
    while i > 0:
        if i >= prev:
            raise RuntimeError(f"backtrack chain not decreasing at object {i} (bin {k})")
        chain.append(i)
        prev = i
        i, k = int(back[i, k]), int(backbin[i, k])
    return np.array(chain, dtype=np.int64)

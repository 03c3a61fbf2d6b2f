"""Hot loops. Everything here is numba-compatible numpy; see :mod:`._accel`.

Sparse matrices are passed as the four CSR arrays of
:class:`~molsldpc.design.ParityCheckMatrix` (``col_ptr, col_idx, row_ptr, row_idx``).
"""
import numpy as np

from ._accel import njit

# --- counter-based SplitMix64 ------------------------------------------------------

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)


@njit
def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit
def trial_key(seed_key, t):
    return mix64(seed_key + (np.uint64(t) + _ONE) * GOLDEN)


@njit
def draw53(key, j):
    """53-bit uniform integer for position ``j`` of the substream ``key``."""
    return mix64(key + (np.uint64(j) + _ONE) * GOLDEN) >> _S11


# --- Tanner graph girth ------------------------------------------------------------

@njit
def girth(col_ptr, col_idx, row_ptr, row_idx, n_cols, n_rows):
    V = n_cols + n_rows
    dist = np.full(V, -1, np.int64)
    parent = np.full(V, -1, np.int64)
    queue = np.empty(V, np.int64)
    best = 1 << 40
    for root in range(V):
        for v in range(V):
            dist[v] = -1
            parent[v] = -1
        dist[root] = 0
        head = 0
        tail = 1
        queue[0] = root
        while head < tail:
            u = queue[head]
            head += 1
            if 2 * dist[u] + 1 >= best:
                break
            if u < n_cols:
                lo = col_ptr[u]
                hi = col_ptr[u + 1]
            else:
                lo = row_ptr[u - n_cols]
                hi = row_ptr[u - n_cols + 1]
            for p in range(lo, hi):
                if u < n_cols:
                    w = col_idx[p] + n_cols
                else:
                    w = row_idx[p]
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    cyc = dist[u] + dist[w] + 1
                    if cyc < best:
                        best = cyc
    return 0 if best == (1 << 40) else best


# --- stopping-set enumeration --------------------------------------------------------

@njit
def _lower_bound(d, kmax, gdef):
    lb = (d + kmax - 1) // kmax
    for g in range(gdef.size):
        if gdef[g] > lb:
            lb = gdef[g]
    return lb


@njit
def _contains_smaller(members, size, col_ptr, col_idx, row_ptr, row_idx, er, cnt):
    """True if the stopping set ``members[:size]`` strictly contains another one."""
    for drop in range(size):
        for t in range(size):
            if t != drop:
                er[members[t]] = True
        left = size - 1
        for t in range(size):
            c = members[t]
            if t != drop:
                for p in range(col_ptr[c], col_ptr[c + 1]):
                    cnt[col_idx[p]] += 1
        changed = True
        while changed and left > 0:
            changed = False
            for t in range(size):
                c = members[t]
                if not er[c]:
                    continue
                for p in range(col_ptr[c], col_ptr[c + 1]):
                    if cnt[col_idx[p]] == 1:
                        er[c] = False
                        left -= 1
                        changed = True
                        for p2 in range(col_ptr[c], col_ptr[c + 1]):
                            cnt[col_idx[p2]] -= 1
                        break
        for t in range(size):
            c = members[t]
            er[c] = False
            for p in range(col_ptr[c], col_ptr[c + 1]):
                cnt[col_idx[p]] = 0
        if left > 0:
            return True
    return False


@njit(nogil=True)
def enumerate_stopping(col_ptr, col_idx, row_ptr, row_idx, row_group, n_groups, kmax, cap,
                       anchors, exclude_below, n_witness, check_minimal):
    """Exhaustive branch-and-bound count of stopping sets of size ``1..cap``.

    The search starts from each column in ``anchors`` (columns below
    ``exclude_below`` are never used). Each open node picks the degree-1 row
    with the fewest free columns and branches on them with progressive
    exclusion, so each set is produced once. A node is cut when its size plus
    a lower bound on the columns still needed exceeds ``cap``: at least
    ``ceil(d / kmax)`` for ``d`` degree-1 rows, and at least the number of
    degree-1 rows inside a single row group (rows of a group never share a
    column).
    """
    N = col_ptr.size - 1
    R = row_ptr.size - 1
    counts = np.zeros(cap + 1, np.int64)
    minimal = np.zeros(cap + 1, np.int64)
    witnesses = np.full((cap + 1, max(n_witness, 1), cap), -1, np.int64)
    wit_min = np.zeros((cap + 1, max(n_witness, 1)), np.bool_)
    n_wit = np.zeros(cap + 1, np.int64)

    in_set = np.zeros(N, np.bool_)
    excl = np.zeros(N, np.bool_)
    for c in range(min(exclude_below, N)):
        excl[c] = True
    deg = np.zeros(R, np.int64)
    gdef = np.zeros(n_groups, np.int64)
    cand = np.empty((cap + 1, N), np.int64)
    ncand = np.zeros(cap + 1, np.int64)
    pos = np.zeros(cap + 1, np.int64)
    chosen = np.empty(cap + 1, np.int64)
    er = np.zeros(N, np.bool_)
    cnt = np.zeros(R, np.int64)

    d = 0
    size = 0
    nodes = 0
    entering = True
    while True:
        if entering:
            entering = False
            nodes += 1
            nc = 0
            if d == 0:
                if size == 0:
                    for a in range(anchors.size):
                        c = anchors[a]
                        if not excl[c]:
                            cand[0, nc] = c
                            nc += 1
                else:
                    counts[size] += 1
                    is_min = True
                    if check_minimal:
                        is_min = not _contains_smaller(chosen, size, col_ptr, col_idx,
                                                       row_ptr, row_idx, er, cnt)
                        if is_min:
                            minimal[size] += 1
                    w = n_wit[size]
                    if w < n_witness:
                        for t in range(size):
                            witnesses[size, w, t] = chosen[t]
                        wit_min[size, w] = is_min
                        n_wit[size] = w + 1
                    if size < cap:
                        for c in range(N):
                            if in_set[c] or excl[c]:
                                continue
                            fresh = 0
                            for p in range(col_ptr[c], col_ptr[c + 1]):
                                if deg[col_idx[p]] == 0:
                                    fresh += 1
                            if size + 1 + (fresh + kmax - 1) // kmax <= cap:
                                cand[size, nc] = c
                                nc += 1
            elif size + _lower_bound(d, kmax, gdef) <= cap:
                best = -1
                bestn = N + 1
                for r in range(R):
                    if deg[r] != 1:
                        continue
                    n = 0
                    for p in range(row_ptr[r], row_ptr[r + 1]):
                        c = row_idx[p]
                        if not in_set[c] and not excl[c]:
                            n += 1
                    if n < bestn:
                        bestn = n
                        best = r
                        if n == 0:
                            break
                if bestn > 0:
                    for p in range(row_ptr[best], row_ptr[best + 1]):
                        c = row_idx[p]
                        if in_set[c] or excl[c]:
                            continue
                        dn = d
                        for p2 in range(col_ptr[c], col_ptr[c + 1]):
                            g = deg[col_idx[p2]]
                            if g == 0:
                                dn += 1
                            elif g == 1:
                                dn -= 1
                        if size + 1 + (dn + kmax - 1) // kmax <= cap:
                            cand[size, nc] = c
                            nc += 1
            ncand[size] = nc
            pos[size] = 0

        lvl = size
        if pos[lvl] > 0:
            excl[cand[lvl, pos[lvl] - 1]] = True
        if pos[lvl] < ncand[lvl]:
            c = cand[lvl, pos[lvl]]
            pos[lvl] += 1
            in_set[c] = True
            for p in range(col_ptr[c], col_ptr[c + 1]):
                r = col_idx[p]
                deg[r] += 1
                if deg[r] == 1:
                    d += 1
                    gdef[row_group[r]] += 1
                elif deg[r] == 2:
                    d -= 1
                    gdef[row_group[r]] -= 1
            chosen[lvl] = c
            size += 1
            entering = True
            continue
        for i in range(ncand[lvl]):
            excl[cand[lvl, i]] = False
        if lvl == 0:
            break
        size -= 1
        c = chosen[size]
        in_set[c] = False
        for p in range(col_ptr[c], col_ptr[c + 1]):
            r = col_idx[p]
            deg[r] -= 1
            if deg[r] == 0:
                d -= 1
                gdef[row_group[r]] -= 1
            elif deg[r] == 1:
                d += 1
                gdef[row_group[r]] += 1
    return counts, minimal, witnesses, wit_min, n_wit, nodes


@njit
def brute_force_counts(col_ptr, col_idx, n_rows, max_size, even):
    """Check every column subset of size ``<= max_size`` independently.

    Counts stopping sets, or with ``even`` set, subsets with all row degrees even.
    """
    N = col_ptr.size - 1
    counts = np.zeros(max_size + 1, np.int64)
    deg = np.zeros(n_rows, np.int64)
    for s in range(1, max_size + 1):
        if s > N:
            break
        idx = np.arange(s)
        while True:
            for r in range(n_rows):
                deg[r] = 0
            for t in range(s):
                c = idx[t]
                for p in range(col_ptr[c], col_ptr[c + 1]):
                    deg[col_idx[p]] += 1
            ok = True
            for r in range(n_rows):
                if (even and deg[r] % 2 == 1) or (not even and deg[r] == 1):
                    ok = False
                    break
            if ok:
                counts[s] += 1
            t = s - 1
            while t >= 0 and idx[t] == N - s + t:
                t -= 1
            if t < 0:
                break
            idx[t] += 1
            for u in range(t + 1, s):
                idx[u] = idx[u - 1] + 1
    return counts


# --- peeling -------------------------------------------------------------------------

@njit
def peel_word(col_ptr, col_idx, row_ptr, row_idx, word):
    """Peel one received word (entries 0, 1, or -1 for an erasure).

    Returns ``(decoded, status)``: ``status`` is 0, or 1 when some check with no
    erased participant has odd parity. Lowest-index-first row order.
    """
    N = col_ptr.size - 1
    R = row_ptr.size - 1
    out = word.copy()
    cnt = np.zeros(R, np.int64)
    for c in range(N):
        if out[c] < 0:
            for p in range(col_ptr[c], col_ptr[c + 1]):
                cnt[col_idx[p]] += 1
    stack = np.empty(2 * R + 1, np.int64)
    top = 0
    for r in range(R - 1, -1, -1):
        if cnt[r] == 1:
            stack[top] = r
            top += 1
    while top > 0:
        top -= 1
        r = stack[top]
        if cnt[r] != 1:
            continue
        target = -1
        acc = 0
        for p in range(row_ptr[r], row_ptr[r + 1]):
            c = row_idx[p]
            if out[c] < 0:
                target = c
            else:
                acc ^= out[c]
        out[target] = acc
        for p in range(col_ptr[target], col_ptr[target + 1]):
            r2 = col_idx[p]
            cnt[r2] -= 1
            if cnt[r2] == 1:
                stack[top] = r2
                top += 1
    status = 0
    for r in range(R):
        if cnt[r] == 0:
            acc = 0
            for p in range(row_ptr[r], row_ptr[r + 1]):
                acc ^= out[row_idx[p]]
            if acc != 0:
                status = 1
                break
    return out, status


@njit
def peel_erasures(col_ptr, col_idx, row_ptr, row_idx, erased, cnt, stack, touched):
    """In-place peeling of an erasure mask; returns the residual size.

    ``cnt`` must be all zero on entry and is left all zero; ``stack`` needs
    ``2*n_rows`` slots and ``touched`` ``n_rows``.
    """
    N = col_ptr.size - 1
    left = 0
    nt = 0
    for c in range(N):
        if erased[c]:
            left += 1
            for p in range(col_ptr[c], col_ptr[c + 1]):
                r = col_idx[p]
                if cnt[r] == 0:
                    touched[nt] = r
                    nt += 1
                cnt[r] += 1
    top = 0
    for i in range(nt):
        if cnt[touched[i]] == 1:
            stack[top] = touched[i]
            top += 1
    while top > 0:
        top -= 1
        r = stack[top]
        if cnt[r] != 1:
            continue
        for p in range(row_ptr[r], row_ptr[r + 1]):
            c = row_idx[p]
            if erased[c]:
                erased[c] = False
                left -= 1
                for p2 in range(col_ptr[c], col_ptr[c + 1]):
                    r2 = col_idx[p2]
                    cnt[r2] -= 1
                    if cnt[r2] == 1:
                        stack[top] = r2
                        top += 1
                break
    for i in range(nt):
        cnt[touched[i]] = 0
    return left


@njit(nogil=True)
def simulate_chunk(col_ptr, col_idx, row_ptr, row_idx, thresholds, seed_key, t0, n_trials,
                   det_cap, record_limit):
    """All-zero-codeword BEC trials ``t0 .. t0+n_trials-1`` at every threshold.

    Trial ``t`` erases bit ``j`` iff ``draw53(trial_key(seed_key, t), j) <
    threshold``, so all erasure probabilities share the same uniforms and each
    trial's stream depends only on ``(seed, t)``.
    """
    N = col_ptr.size - 1
    R = row_ptr.size - 1
    E = thresholds.size
    bit_errors = np.zeros(E, np.int64)
    erased_bits = np.zeros(E, np.int64)
    failures = np.zeros(E, np.int64)
    hist = np.zeros((E, det_cap + 2), np.int64)
    recorded = np.full((E, max(record_limit, 1)), -1, np.int64)
    n_rec = np.zeros(E, np.int64)
    u = np.empty(N, np.uint64)
    erased = np.zeros(N, np.bool_)
    cnt = np.zeros(R, np.int64)
    stack = np.empty(2 * R + 1, np.int64)
    touched = np.empty(R + 1, np.int64)
    for t in range(t0, t0 + n_trials):
        key = trial_key(seed_key, t)
        for j in range(N):
            u[j] = draw53(key, j)
        for e in range(E):
            thr = thresholds[e]
            ne = 0
            for j in range(N):
                b = u[j] < thr
                erased[j] = b
                if b:
                    ne += 1
            erased_bits[e] += ne
            if ne == 0:
                continue
            left = peel_erasures(col_ptr, col_idx, row_ptr, row_idx, erased, cnt, stack, touched)
            if left > 0:
                bit_errors[e] += left
                failures[e] += 1
                if left <= det_cap:
                    hist[e, left] += 1
                else:
                    hist[e, det_cap + 1] += 1
                k = n_rec[e]
                if k < record_limit:
                    recorded[e, k] = t
                    n_rec[e] = k + 1
    return bit_errors, erased_bits, failures, hist, recorded, n_rec

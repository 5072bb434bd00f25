"""Pure-Python hot loops.

These functions work on integer weights (rational weights are scaled by a
common denominator before the call) and plain lists.  ``_kernels.pyx``
implements the same algorithms with C types; both must produce identical
output for identical input.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

PIVOT_FIRST = 0
PIVOT_STEEPEST = 1
PIVOT_RANDOM = 2


def xorshift_next(state: int) -> int:
    x = state
    x ^= (x << 13) & MASK64
    x ^= x >> 7
    x ^= (x << 17) & MASK64
    return x


def flip_run(indptr, nbr, wts, assign, pivot, state, step_limit):
    """Run Flip local search in place on ``assign``.

    Returns ``(vertices, gains, state)``.
    """
    n = len(assign)
    gain = [0] * n
    for v in range(n):
        g = 0
        av = assign[v]
        for t in range(indptr[v], indptr[v + 1]):
            g += wts[t] if assign[nbr[t]] == av else -wts[t]
        gain[v] = g
    verts = []
    gains = []
    while len(verts) < step_limit:
        if pivot == PIVOT_FIRST:
            chosen = -1
            for v in range(n):
                if gain[v] > 0:
                    chosen = v
                    break
        elif pivot == PIVOT_STEEPEST:
            chosen = -1
            best = 0
            for v in range(n):
                if gain[v] > best:
                    best = gain[v]
                    chosen = v
        else:
            cand = [v for v in range(n) if gain[v] > 0]
            if cand:
                state = xorshift_next(state)
                chosen = cand[state % len(cand)]
            else:
                chosen = -1
        if chosen < 0:
            break
        v = chosen
        verts.append(v)
        gains.append(gain[v])
        av = assign[v]
        for t in range(indptr[v], indptr[v + 1]):
            u = nbr[t]
            if assign[u] == av:
                gain[u] -= 2 * wts[t]
            else:
                gain[u] += 2 * wts[t]
        assign[v] = 1 - av
        gain[v] = -gain[v]
    return verts, gains, state


def _segment_check(rem, add, eu, ev, pos, order, n):
    """True iff removing ``rem`` and adding ``add`` leaves one Hamiltonian cycle."""
    j = len(rem)
    ps = []
    for e in rem:
        a, b = eu[e], ev[e]
        pa, pb = pos[a], pos[b]
        ps.append(pa if pb == (pa + 1) % n else pb)
    ps.sort()
    start = [order[(ps[t] + 1) % n] for t in range(j)]
    end = [order[ps[(t + 1) % j]] for t in range(j)]
    where = {}
    for t in range(j):
        where[start[t]] = t
        where[end[t]] = t
    inc = {}
    for e in add:
        a, b = eu[e], ev[e]
        inc.setdefault(a, []).append(b)
        inc.setdefault(b, []).append(a)
    seen = [False] * j
    seen[0] = True
    count = 1
    x = end[0]
    while True:
        lst = inc.get(x)
        if not lst:
            return False
        y = lst.pop()
        other = inc.get(y)
        if other is None or x not in other:
            return False
        other.remove(x)
        t = where.get(y)
        if t is None:
            return False
        if t == 0:
            if y != start[0]:
                return False
            break
        if seen[t]:
            return False
        seen[t] = True
        count += 1
        if start[t] == end[t]:
            x = y
        elif y == start[t]:
            x = end[t]
        elif y == end[t]:
            x = start[t]
        else:
            return False
    return count == j and all(not v for v in inc.values())


def _incident_pair(rem, eu, ev):
    for i in range(len(rem)):
        for j in range(i + 1, len(rem)):
            a = {eu[rem[i]], ev[rem[i]]}
            if eu[rem[j]] in a or ev[rem[j]] in a:
                return True
    return False


def enumerate_moves(indptr, nbr, eid, w, eu, ev, in_tour, succ, pred, pos, order,
                    kmax, two_five, improving_only):
    """All valid swaps built from closed alternating trails.

    Returns a list of ``(removed_eids, added_eids, delta)``; the same swap may
    appear more than once.
    """
    n = len(succ)
    m = len(w)
    atom_cap = 3 if two_five else kmax
    pair_cap = 0 if two_five else kmax - 2
    used = [False] * m
    rem = []
    add = []
    out = []
    atoms = []

    te_next = [0] * n
    for v in range(n):
        s = succ[v]
        for t in range(indptr[v], indptr[v + 1]):
            if nbr[t] == s:
                te_next[v] = eid[t]
                break
    te_prev = [te_next[pred[v]] for v in range(n)]

    def record(delta):
        j = len(rem)
        r = tuple(rem)
        a = tuple(add)
        if two_five and j == 3 and not _incident_pair(r, eu, ev):
            return
        if (not improving_only or delta < 0) and _segment_check(r, a, eu, ev, pos, order, n):
            out.append((r, a, delta))
        if j <= pair_cap:
            atoms.append((r, a, delta))

    def extend(s, e0, c, delta):
        for t in range(indptr[c], indptr[c + 1]):
            f = eid[t]
            if in_tour[f] or used[f]:
                continue
            x = nbr[t]
            d2 = delta + w[f]
            if x == s and len(rem) >= 2 and add and add[0] < f:
                add.append(f)
                record(d2)
                add.pop()
            if len(rem) < atom_cap:
                used[f] = True
                add.append(f)
                for g in (te_next[x], te_prev[x]):
                    if used[g] or g <= e0:
                        continue
                    y = ev[g] if eu[g] == x else eu[g]
                    used[g] = True
                    rem.append(g)
                    extend(s, e0, y, d2 - w[g])
                    rem.pop()
                    used[g] = False
                add.pop()
                used[f] = False

    for a in range(n):
        e0 = te_next[a]
        b = succ[a]
        used[e0] = True
        rem.append(e0)
        extend(a, e0, b, -w[e0])
        extend(b, e0, a, -w[e0])
        rem.pop()
        used[e0] = False

    if pair_cap >= 2 and atoms:
        _combine_pairs(atoms, kmax, improving_only, eu, ev, pos, order, n, out)
        if kmax >= 6:
            _combine_many(atoms, kmax, improving_only, eu, ev, pos, order, n, out)
    return out


def _combine_pairs(atoms, kmax, improving_only, eu, ev, pos, order, n, out):
    atoms.sort(key=lambda z: z[2])
    na = len(atoms)
    for i in range(na):
        ri, ai, di = atoms[i]
        si = set(ri) | set(ai)
        for k in range(i + 1, na):
            rk, ak, dk = atoms[k]
            if improving_only and di + dk >= 0:
                break
            if len(ri) + len(rk) > kmax:
                continue
            if si.intersection(rk) or si.intersection(ak):
                continue
            r = ri + rk
            a = ai + ak
            if _segment_check(r, a, eu, ev, pos, order, n):
                out.append((r, a, di + dk))


def _combine_many(atoms, kmax, improving_only, eu, ev, pos, order, n, out):
    """Unions of three or more edge-disjoint atoms (only reachable for kmax >= 6)."""
    na = len(atoms)

    def go(start, r, a, d, taken, depth):
        for k in range(start, na):
            rk, ak, dk = atoms[k]
            if len(r) + len(rk) > kmax or taken.intersection(rk) or taken.intersection(ak):
                continue
            r2, a2, d2 = r + rk, a + ak, d + dk
            if depth >= 2 and (not improving_only or d2 < 0) and _segment_check(r2, a2, eu, ev, pos, order, n):
                out.append((r2, a2, d2))
            if len(r2) + 2 <= kmax:
                go(k + 1, r2, a2, d2, taken | set(rk) | set(ak), depth + 1)

    go(0, (), (), 0, frozenset(), 0)

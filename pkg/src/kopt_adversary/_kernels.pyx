# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""C implementations of the hot loops in ``_kernels_py``.

Weights are int64; the dispatcher in ``kernels`` only routes here when every
partial sum provably fits.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair


cdef inline uint64_t _xs(uint64_t x) nogil:
    x ^= x << 13
    x ^= x >> 7
    x ^= x << 17
    return x


def flip_run(indptr, nbr, wts, assign, int pivot, state, step_limit):
    cdef Py_ssize_t n = len(assign)
    cdef vector[int64_t] ip, nb, gain
    cdef vector[int64_t] wt
    cdef vector[int] a
    cdef Py_ssize_t v, t, u
    cdef int64_t g, best
    cdef uint64_t st = <uint64_t>state
    cdef Py_ssize_t limit = step_limit
    cdef Py_ssize_t chosen, cnt
    cdef vector[int64_t] verts, gains
    ip.resize(n + 1)
    for v in range(n + 1):
        ip[v] = indptr[v]
    nb.resize(ip[n])
    wt.resize(ip[n])
    for t in range(ip[n]):
        nb[t] = nbr[t]
        wt[t] = wts[t]
    a.resize(n)
    gain.resize(n)
    for v in range(n):
        a[v] = assign[v]
    with nogil:
        for v in range(n):
            g = 0
            for t in range(ip[v], ip[v + 1]):
                if a[nb[t]] == a[v]:
                    g += wt[t]
                else:
                    g -= wt[t]
            gain[v] = g
        while <Py_ssize_t>verts.size() < limit:
            chosen = -1
            if pivot == 0:
                for v in range(n):
                    if gain[v] > 0:
                        chosen = v
                        break
            elif pivot == 1:
                best = 0
                for v in range(n):
                    if gain[v] > best:
                        best = gain[v]
                        chosen = v
            else:
                cnt = 0
                for v in range(n):
                    if gain[v] > 0:
                        cnt += 1
                if cnt > 0:
                    st = _xs(st)
                    cnt = <Py_ssize_t>(st % <uint64_t>cnt)
                    for v in range(n):
                        if gain[v] > 0:
                            if cnt == 0:
                                chosen = v
                                break
                            cnt -= 1
            if chosen < 0:
                break
            v = chosen
            verts.push_back(v)
            gains.push_back(gain[v])
            for t in range(ip[v], ip[v + 1]):
                u = nb[t]
                if a[u] == a[v]:
                    gain[u] -= 2 * wt[t]
                else:
                    gain[u] += 2 * wt[t]
            a[v] = 1 - a[v]
            gain[v] = -gain[v]
    for v in range(n):
        assign[v] = a[v]
    return [verts[t] for t in range(<Py_ssize_t>verts.size())], \
        [gains[t] for t in range(<Py_ssize_t>gains.size())], int(st)


cdef struct Ctx:
    int n
    int kmax
    int atom_cap
    int pair_cap
    bint two_five
    bint improving_only
    int64_t* ip
    int64_t* nb
    int64_t* eid
    int64_t* w
    int64_t* eu
    int64_t* ev
    char* in_tour
    char* used
    int64_t* pos
    int64_t* order
    int64_t* te_next
    int64_t* te_prev


cdef class _Buf:
    cdef vector[int64_t] out_rem
    cdef vector[int64_t] out_add
    cdef vector[int64_t] out_j
    cdef vector[int64_t] out_delta
    cdef vector[int64_t] at_rem
    cdef vector[int64_t] at_add
    cdef vector[int64_t] at_j
    cdef vector[int64_t] at_delta
    cdef int64_t rem[16]
    cdef int64_t add[16]
    cdef int nrem
    cdef int nadd


cdef bint _segment_check(Ctx* c, int64_t* rem, int64_t* add, int j) nogil:
    cdef int64_t ps[16]
    cdef int64_t start[16]
    cdef int64_t end[16]
    cdef int64_t ia[16]
    cdef int64_t ib[16]
    cdef char ause[16]
    cdef char seen[16]
    cdef int t, q, r, count, found
    cdef int64_t a, b, pa, pb, x, y, tmp
    cdef int n = c.n
    for t in range(j):
        a = c.eu[rem[t]]
        b = c.ev[rem[t]]
        pa = c.pos[a]
        pb = c.pos[b]
        ps[t] = pa if pb == (pa + 1) % n else pb
    for t in range(1, j):
        tmp = ps[t]
        q = t - 1
        while q >= 0 and ps[q] > tmp:
            ps[q + 1] = ps[q]
            q -= 1
        ps[q + 1] = tmp
    for t in range(j):
        start[t] = c.order[(ps[t] + 1) % n]
        end[t] = c.order[ps[(t + 1) % j]]
        seen[t] = 0
        ia[t] = c.eu[add[t]]
        ib[t] = c.ev[add[t]]
        ause[t] = 0
    seen[0] = 1
    count = 1
    x = end[0]
    while True:
        found = -1
        for q in range(j):
            if not ause[q] and (ia[q] == x or ib[q] == x):
                found = q
                break
        if found < 0:
            return False
        ause[found] = 1
        y = ib[found] if ia[found] == x else ia[found]
        r = -1
        for t in range(j):
            if start[t] == y or end[t] == y:
                r = t
                break
        if r < 0:
            return False
        if r == 0:
            if y != start[0]:
                return False
            break
        if seen[r]:
            return False
        seen[r] = 1
        count += 1
        if start[r] == end[r]:
            x = y
        elif y == start[r]:
            x = end[r]
        else:
            x = start[r]
    if count != j:
        return False
    for q in range(j):
        if not ause[q]:
            return False
    return True


cdef bint _incident_pair(Ctx* c, int64_t* rem, int j) nogil:
    cdef int s, t
    for s in range(j):
        for t in range(s + 1, j):
            if c.eu[rem[t]] == c.eu[rem[s]] or c.eu[rem[t]] == c.ev[rem[s]] \
                    or c.ev[rem[t]] == c.eu[rem[s]] or c.ev[rem[t]] == c.ev[rem[s]]:
                return True
    return False


cdef void _record(Ctx* c, _Buf buf, int64_t delta):
    cdef int j = buf.nrem
    cdef int t
    if c.two_five and j == 3 and not _incident_pair(c, buf.rem, j):
        return
    if (not c.improving_only or delta < 0) and _segment_check(c, buf.rem, buf.add, j):
        for t in range(j):
            buf.out_rem.push_back(buf.rem[t])
            buf.out_add.push_back(buf.add[t])
        buf.out_j.push_back(j)
        buf.out_delta.push_back(delta)
    if j <= c.pair_cap:
        for t in range(j):
            buf.at_rem.push_back(buf.rem[t])
            buf.at_add.push_back(buf.add[t])
        buf.at_j.push_back(j)
        buf.at_delta.push_back(delta)


cdef void _extend(Ctx* c, _Buf buf, int64_t s, int64_t e0, int64_t cur, int64_t delta):
    cdef int64_t t, f, x, g, y, d2
    cdef int side
    for t in range(c.ip[cur], c.ip[cur + 1]):
        f = c.eid[t]
        if c.in_tour[f] or c.used[f]:
            continue
        x = c.nb[t]
        d2 = delta + c.w[f]
        if x == s and buf.nrem >= 2 and buf.add[0] < f:
            buf.add[buf.nadd] = f
            buf.nadd += 1
            _record(c, buf, d2)
            buf.nadd -= 1
        if buf.nrem < c.atom_cap:
            c.used[f] = 1
            buf.add[buf.nadd] = f
            buf.nadd += 1
            for side in range(2):
                g = c.te_next[x] if side == 0 else c.te_prev[x]
                if c.used[g] or g <= e0:
                    continue
                y = c.ev[g] if c.eu[g] == x else c.eu[g]
                c.used[g] = 1
                buf.rem[buf.nrem] = g
                buf.nrem += 1
                _extend(c, buf, s, e0, y, d2 - c.w[g])
                buf.nrem -= 1
                c.used[g] = 0
            buf.nadd -= 1
            c.used[f] = 0


def enumerate_moves(indptr, nbr, eid, w, eu, ev, in_tour, succ, pred, pos, order,
                    int kmax, bint two_five, bint improving_only):
    cdef Py_ssize_t n = len(succ)
    cdef Py_ssize_t m = len(w)
    cdef Py_ssize_t v, t, q, i, k
    cdef vector[int64_t] ip, nb, ed, ww, uu, vv, ps, od, tn, tp
    cdef vector[char] it, used
    cdef Ctx c
    cdef _Buf buf = _Buf()
    cdef int64_t a, b, e0
    if kmax > 8:
        raise ValueError("compiled kernel supports kmax <= 8")
    ip.resize(n + 1)
    for v in range(n + 1):
        ip[v] = indptr[v]
    nb.resize(ip[n])
    ed.resize(ip[n])
    for t in range(ip[n]):
        nb[t] = nbr[t]
        ed[t] = eid[t]
    ww.resize(m)
    uu.resize(m)
    vv.resize(m)
    it.resize(m)
    used.resize(m)
    for t in range(m):
        ww[t] = w[t]
        uu[t] = eu[t]
        vv[t] = ev[t]
        it[t] = 1 if in_tour[t] else 0
        used[t] = 0
    ps.resize(n)
    od.resize(n)
    tn.resize(n)
    tp.resize(n)
    for v in range(n):
        ps[v] = pos[v]
        od[v] = order[v]
    for v in range(n):
        s = succ[v]
        for t in range(ip[v], ip[v + 1]):
            if nb[t] == s:
                tn[v] = ed[t]
                break
    for v in range(n):
        tp[v] = tn[pred[v]]
    c.n = n
    c.kmax = kmax
    c.two_five = two_five
    c.improving_only = improving_only
    c.atom_cap = 3 if two_five else kmax
    c.pair_cap = 0 if two_five else kmax - 2
    c.ip = ip.data()
    c.nb = nb.data()
    c.eid = ed.data()
    c.w = ww.data()
    c.eu = uu.data()
    c.ev = vv.data()
    c.in_tour = it.data()
    c.used = used.data()
    c.pos = ps.data()
    c.order = od.data()
    c.te_next = tn.data()
    c.te_prev = tp.data()
    buf.nrem = 0
    buf.nadd = 0
    for a in range(n):
        e0 = tn[a]
        b = od[(ps[a] + 1) % n]
        used[e0] = 1
        buf.rem[0] = e0
        buf.nrem = 1
        _extend(&c, buf, a, e0, b, -ww[e0])
        _extend(&c, buf, b, e0, a, -ww[e0])
        buf.nrem = 0
        used[e0] = 0

    _pairs(&c, buf)

    out = []
    q = 0
    for i in range(<Py_ssize_t>buf.out_j.size()):
        k = buf.out_j[i]
        out.append((tuple(buf.out_rem[q + t] for t in range(k)),
                    tuple(buf.out_add[q + t] for t in range(k)),
                    buf.out_delta[i]))
        q += k
    return out


cdef void _pairs(Ctx* c, _Buf buf):
    cdef Py_ssize_t na = buf.at_j.size()
    if c.pair_cap < 2 or na < 2:
        return
    cdef vector[Py_ssize_t] off
    cdef vector[pair[int64_t, Py_ssize_t]] order
    cdef Py_ssize_t i, k, ii, kk, s, t, ji, jk, q
    cdef int64_t di, dk
    cdef bint clash
    cdef int64_t rem[16]
    cdef int64_t add[16]
    off.resize(na)
    q = 0
    for i in range(na):
        off[i] = q
        q += buf.at_j[i]
        order.push_back(pair[int64_t, Py_ssize_t](buf.at_delta[i], i))
    cpp_sort(order.begin(), order.end())
    for ii in range(na):
        i = order[ii].second
        di = order[ii].first
        ji = buf.at_j[i]
        for kk in range(ii + 1, na):
            k = order[kk].second
            dk = order[kk].first
            if c.improving_only and di + dk >= 0:
                break
            jk = buf.at_j[k]
            if ji + jk > c.kmax:
                continue
            clash = False
            for s in range(ji):
                for t in range(jk):
                    if buf.at_rem[off[i] + s] == buf.at_rem[off[k] + t] \
                            or buf.at_add[off[i] + s] == buf.at_add[off[k] + t] \
                            or buf.at_rem[off[i] + s] == buf.at_add[off[k] + t] \
                            or buf.at_add[off[i] + s] == buf.at_rem[off[k] + t]:
                        clash = True
                        break
                if clash:
                    break
            if clash:
                continue
            for s in range(ji):
                rem[s] = buf.at_rem[off[i] + s]
                add[s] = buf.at_add[off[i] + s]
            for t in range(jk):
                rem[ji + t] = buf.at_rem[off[k] + t]
                add[ji + t] = buf.at_add[off[k] + t]
            if _segment_check(c, rem, add, ji + jk):
                for s in range(ji + jk):
                    buf.out_rem.push_back(rem[s])
                    buf.out_add.push_back(add[s])
                buf.out_j.push_back(ji + jk)
                buf.out_delta.push_back(di + dk)

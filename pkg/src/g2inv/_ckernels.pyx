# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_pykernels``.

Each kernel first runs on 64-bit machine integers with overflow checks;
if any intermediate value overflows it restarts on Python ints, which
follow the same pivot rules, so results always match the pure-Python
kernels.
"""

from libc.stdlib cimport malloc, free
from math import gcd

cdef extern from *:
    """
    static inline int g2_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int g2_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int g2_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    bint g2_mul(long long a, long long b, long long *r) nogil
    bint g2_sub(long long a, long long b, long long *r) nogil
    bint g2_add(long long a, long long b, long long *r) nogil

# inputs above this bound go straight to the Python-int path
cdef long long LIMIT = 1LL << 62


cdef inline long long _abs(long long x) noexcept nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    a = _abs(a)
    b = _abs(b)
    while b:
        a, b = b, a % b
    return a


cdef inline bint _fits(object x):
    return -LIMIT < x < LIMIT


cdef void _primitive_c(long long *row, Py_ssize_t n) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(n):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


cdef object _rref_fast(list m, Py_ssize_t ncols):
    """int64 version of ``_rref_obj``; returns None on overflow."""
    cdef Py_ssize_t nrows = len(m), r = 0, c, i, j, best
    cdef long long *buf
    cdef long long **rowp
    cdef long long *prow
    cdef long long *row
    cdef long long *tmp
    cdef long long a, b, g, ag, bg, v, av, best_abs, x1, x2
    cdef bint ovf = False
    cdef list pivots = []
    for rw in m:
        for x in rw:
            if not _fits(x):
                return None
    buf = <long long *>malloc(max(nrows * ncols, 1) * sizeof(long long))
    rowp = <long long **>malloc(max(nrows, 1) * sizeof(long long *))
    if buf == NULL or rowp == NULL:
        free(buf)
        free(rowp)
        raise MemoryError()
    try:
        for i in range(nrows):
            rowp[i] = buf + i * ncols
            rw = <list>m[i]
            for j in range(ncols):
                rowp[i][j] = rw[j]
        with nogil:
            for c in range(ncols):
                if r == nrows:
                    break
                best = -1
                best_abs = 0
                for i in range(r, nrows):
                    v = rowp[i][c]
                    if v:
                        av = _abs(v)
                        if best < 0 or av < best_abs:
                            best = i
                            best_abs = av
                            if av == 1:
                                break
                if best < 0:
                    continue
                if best != r:
                    tmp = rowp[r]
                    rowp[r] = rowp[best]
                    rowp[best] = tmp
                prow = rowp[r]
                if prow[c] < 0:
                    for j in range(ncols):
                        prow[j] = -prow[j]
                a = prow[c]
                for i in range(nrows):
                    if i == r:
                        continue
                    row = rowp[i]
                    b = row[c]
                    if not b:
                        continue
                    g = _gcd(a, b)
                    ag = a // g
                    bg = b // g
                    for j in range(ncols):
                        if ag == 1:
                            x1 = row[j]
                        elif g2_mul(ag, row[j], &x1):
                            ovf = True
                            break
                        if g2_mul(bg, prow[j], &x2) or g2_sub(x1, x2, &row[j]) or row[j] <= -LIMIT or row[j] >= LIMIT:
                            ovf = True
                            break
                    if ovf:
                        break
                    _primitive_c(row, ncols)
                if ovf:
                    break
                with gil:
                    pivots.append(c)
                r += 1
        if ovf:
            return None
        basis = []
        for i in range(r):
            _primitive_c(rowp[i], ncols)
            basis.append([rowp[i][j] for j in range(ncols)])
        return basis, pivots
    finally:
        free(buf)
        free(rowp)


cdef object _inertia_fast(list gram):
    """int64 version of ``_inertia_obj``; returns None on overflow."""
    cdef Py_ssize_t n = len(gram), i, j, k, t, a_pos, ii, jj, nidx, nrest, q
    cdef long long *s
    cdef Py_ssize_t *idx
    cdef Py_ssize_t *rest
    cdef long long p, v, av, best, ski, g, x1, x2
    cdef Py_ssize_t n_plus = 0, n_minus = 0
    cdef int flip = 1
    cdef bint ovf = False
    for rw in gram:
        for x in rw:
            if not _fits(x):
                return None
    s = <long long *>malloc(max(n * n, 1) * sizeof(long long))
    idx = <Py_ssize_t *>malloc(max(n, 1) * sizeof(Py_ssize_t))
    rest = <Py_ssize_t *>malloc(max(n, 1) * sizeof(Py_ssize_t))
    if s == NULL or idx == NULL or rest == NULL:
        free(s)
        free(idx)
        free(rest)
        raise MemoryError()
    try:
        for i in range(n):
            rw = <list>gram[i]
            idx[i] = i
            for j in range(n):
                s[i * n + j] = rw[j]
        nidx = n
        with nogil:
            while nidx:
                k = -1
                best = 0
                for q in range(nidx):
                    i = idx[q]
                    v = s[i * n + i]
                    if v:
                        av = _abs(v)
                        if k < 0 or av < best:
                            k = i
                            best = av
                if k < 0:
                    ii = -1
                    jj = -1
                    for a_pos in range(nidx):
                        i = idx[a_pos]
                        for t in range(a_pos + 1, nidx):
                            j = idx[t]
                            if s[i * n + j]:
                                ii = i
                                jj = j
                                break
                        if ii >= 0:
                            break
                    if ii < 0:
                        break
                    for q in range(nidx):
                        t = idx[q]
                        if g2_add(s[ii * n + t], s[jj * n + t], &s[ii * n + t]):
                            ovf = True
                    for q in range(nidx):
                        t = idx[q]
                        if g2_add(s[t * n + ii], s[t * n + jj], &s[t * n + ii]):
                            ovf = True
                    if ovf:
                        break
                    k = ii
                p = s[k * n + k]
                nrest = 0
                for q in range(nidx):
                    if idx[q] != k:
                        rest[nrest] = idx[q]
                        nrest += 1
                for a_pos in range(nrest):
                    i = rest[a_pos]
                    ski = s[k * n + i]
                    for t in range(nrest):
                        j = rest[t]
                        if g2_mul(p, s[i * n + j], &x1):
                            ovf = True
                            break
                        if ski:
                            if g2_mul(ski, s[k * n + j], &x2) or g2_sub(x1, x2, &x1):
                                ovf = True
                                break
                        if x1 <= -LIMIT or x1 >= LIMIT:
                            ovf = True
                            break
                        s[i * n + j] = x1
                    if ovf:
                        break
                if ovf:
                    break
                if (p > 0) == (flip > 0):
                    n_plus += 1
                else:
                    n_minus += 1
                if p < 0:
                    flip = -flip
                for q in range(nrest):
                    idx[q] = rest[q]
                nidx = nrest
                if nidx:
                    g = 0
                    for a_pos in range(nidx):
                        i = idx[a_pos]
                        for t in range(nidx):
                            j = idx[t]
                            if s[i * n + j]:
                                g = _gcd(g, s[i * n + j])
                                if g == 1:
                                    break
                        if g == 1:
                            break
                    if g > 1:
                        for a_pos in range(nidx):
                            i = idx[a_pos]
                            for t in range(nidx):
                                j = idx[t]
                                s[i * n + j] = s[i * n + j] // g
        if ovf:
            return None
        return n_plus, n_minus, nidx
    finally:
        free(s)
        free(idx)
        free(rest)


def rref(rows, Py_ssize_t ncols):
    cdef list m = [list(row_in) for row_in in rows if any(row_in)]
    out = _rref_fast(m, ncols)
    if out is None:
        out = _rref_obj(m, ncols)
    return out


def inertia(gram):
    cdef list g = [list(r) for r in gram]
    out = _inertia_fast(g)
    if out is None:
        out = _inertia_obj(g)
    return out


cdef list _primitive(list row):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


cdef object _rref_obj(list rows, Py_ssize_t ncols):
    cdef list m = [list(row_in) for row_in in rows]
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, best
    cdef Py_ssize_t nrows = len(m)
    cdef list prow, row, new
    cdef object a, b, g, ag, bg, v, av, best_abs
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = (<list>m[i])[c]
            if v:
                av = v if v > 0 else -v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        prow = <list>m[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
            m[r] = prow
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>m[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ag = a // g
            bg = b // g
            new = [None] * ncols
            if ag == 1:
                for j in range(ncols):
                    new[j] = row[j] - bg * prow[j]
            else:
                for j in range(ncols):
                    new[j] = ag * row[j] - bg * prow[j]
            m[i] = _primitive(new)
        pivots.append(c)
        r += 1
    return [_primitive(m[i]) for i in range(r)], pivots


cdef object _inertia_obj(list gram):
    cdef Py_ssize_t n = len(gram)
    cdef list s = [list(r) for r in gram]
    cdef list idx = list(range(n))
    cdef list rest, si, sk
    cdef Py_ssize_t n_plus = 0, n_minus = 0, k, i, j, t, a_pos, ii, jj
    cdef Py_ssize_t nrest
    cdef int flip = 1
    cdef object p, v, av, best, ski, g
    while idx:
        k = -1
        best = 0
        for i in idx:
            v = (<list>s[i])[i]
            if v:
                av = v if v > 0 else -v
                if k < 0 or av < best:
                    k = i
                    best = av
        if k < 0:
            ii = -1
            jj = -1
            for a_pos in range(len(idx)):
                i = idx[a_pos]
                si = <list>s[i]
                for t in range(a_pos + 1, len(idx)):
                    j = idx[t]
                    if si[j]:
                        ii = i
                        jj = j
                        break
                if ii >= 0:
                    break
            if ii < 0:
                break
            for t in idx:
                (<list>s[ii])[t] = (<list>s[ii])[t] + (<list>s[jj])[t]
            for t in idx:
                (<list>s[t])[ii] = (<list>s[t])[ii] + (<list>s[t])[jj]
            k = ii
        sk = <list>s[k]
        p = sk[k]
        rest = [i for i in idx if i != k]
        nrest = len(rest)
        for a_pos in range(nrest):
            i = rest[a_pos]
            si = <list>s[i]
            ski = sk[i]
            if ski:
                for t in range(nrest):
                    j = rest[t]
                    si[j] = p * si[j] - ski * sk[j]
            else:
                for t in range(nrest):
                    j = rest[t]
                    si[j] = p * si[j]
        if (p > 0) == (flip > 0):
            n_plus += 1
        else:
            n_minus += 1
        if p < 0:
            flip = -flip
        idx = rest
        if idx:
            g = 0
            for i in idx:
                si = <list>s[i]
                for j in idx:
                    if si[j]:
                        g = gcd(g, si[j])
                        if g == 1:
                            break
                if g == 1:
                    break
            if g > 1:
                for i in idx:
                    si = <list>s[i]
                    for j in idx:
                        si[j] = si[j] // g
    return n_plus, n_minus, len(idx)


cdef object _dot_rows_fast(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, t
    cdef long long *ba
    cdef long long *bb
    cdef long long acc, x
    cdef bint ovf = False
    for rows in (a, b):
        for rw in rows:
            if len(rw) != n:
                return None
            for v in rw:
                if type(v) is not int or not _fits(v):
                    return None
    ba = <long long *>malloc(max(na * n, 1) * sizeof(long long))
    bb = <long long *>malloc(max(nb * n, 1) * sizeof(long long))
    if ba == NULL or bb == NULL:
        free(ba)
        free(bb)
        raise MemoryError()
    try:
        for i in range(na):
            rw = <list>a[i] if type(a[i]) is list else list(a[i])
            for t in range(n):
                ba[i * n + t] = rw[t]
        for j in range(nb):
            rw = <list>b[j] if type(b[j]) is list else list(b[j])
            for t in range(n):
                bb[j * n + t] = rw[t]
        out = []
        for i in range(na):
            row = []
            for j in range(nb):
                acc = 0
                with nogil:
                    for t in range(n):
                        if ba[i * n + t] and bb[j * n + t]:
                            if g2_mul(ba[i * n + t], bb[j * n + t], &x) or g2_add(acc, x, &acc):
                                ovf = True
                                break
                if ovf:
                    return None
                row.append(acc)
            out.append(row)
        return out
    finally:
        free(ba)
        free(bb)


def dot_rows(a, b):
    """Matrix of dot products ``[[u . v for v in b] for u in a]``."""
    cdef list la = list(a), lb = list(b)
    if not la or not lb:
        return [[] for _ in la]
    out = _dot_rows_fast(la, lb, len(la[0]))
    if out is None:
        out = [[sum(x * y for x, y in zip(u, v) if x) for v in lb] for u in la]
    return out

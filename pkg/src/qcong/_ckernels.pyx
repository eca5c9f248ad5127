# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled dense polynomial kernels.

Same contracts as ``qcong._pykernels``.  Each kernel first tries a machine
integer path (int64 with overflow detection) and falls back to exact
Python-object arithmetic when a coefficient does not fit or an
intermediate overflows, so results never depend on the path taken.
"""
from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memset

cdef extern from *:
    """
    static inline int qc_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int qc_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int qc_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    int qc_add(long long a, long long b, long long *r) nogil
    int qc_sub(long long a, long long b, long long *r) nogil
    int qc_mul(long long a, long long b, long long *r) nogil

BACKEND = "cython"

cdef long long BOUND = 4611686018427387903


cdef long long *_alloc(Py_ssize_t n) except NULL:
    cdef long long *p = <long long *>PyMem_Malloc((n if n > 0 else 1) * sizeof(long long))
    if p == NULL:
        raise MemoryError()
    return p


cdef bint _load(list src, long long *dst):
    cdef Py_ssize_t i, n = len(src)
    cdef object x
    for i in range(n):
        x = src[i]
        if type(x) is not int:
            return False
        if x > BOUND or x < -BOUND:
            return False
        dst[i] = x
    return True


cdef list _store(long long *src, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        if src[i]:
            out[i] = src[i]
    return out


cpdef list trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and not a[n - 1]:
        n -= 1
    del a[n:]
    return a


cdef list _poly_mul_obj(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef list out = [0] * (la + lb - 1)
    cdef object ai
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            out[i + j] = out[i + j] + ai * b[j]
    return out


cpdef list poly_mul(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, n
    cdef long long *ca
    cdef long long *cb
    cdef long long *out
    cdef long long ai, t
    cdef bint ok
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    ca = _alloc(la)
    cb = _alloc(lb)
    out = _alloc(n)
    try:
        ok = _load(a, ca) and _load(b, cb)
        if ok:
            memset(out, 0, n * sizeof(long long))
            for i in range(la):
                ai = ca[i]
                if ai == 0:
                    continue
                for j in range(lb):
                    if qc_mul(ai, cb[j], &t) or qc_add(out[i + j], t, &out[i + j]):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return _store(out, n)
    finally:
        PyMem_Free(ca)
        PyMem_Free(cb)
        PyMem_Free(out)
    return _poly_mul_obj(a, b)


cdef tuple _poly_divmod_obj(list a, list m, int lc):
    cdef Py_ssize_t dm = len(m) - 1, la = len(a), i, j, s
    cdef list r = list(a)
    cdef list quot = [0] * (la - dm)
    cdef object c
    for i in range(la - 1, dm - 1, -1):
        c = r[i]
        if not c:
            continue
        if lc == -1:
            c = -c
        quot[i - dm] = c
        s = i - dm
        for j in range(dm):
            if m[j]:
                r[s + j] = r[s + j] - c * m[j]
        r[i] = 0
    del r[dm:]
    return trim(quot), trim(r)


cpdef tuple poly_divmod(list a, list m):
    cdef Py_ssize_t dm = len(m) - 1, la = len(a), i, j, s
    cdef long long *r
    cdef long long *cm
    cdef long long *quot
    cdef long long c, t
    cdef int lc
    cdef bint ok
    if m[dm] == 1:
        lc = 1
    elif m[dm] == -1:
        lc = -1
    else:
        raise ValueError("divisor must have leading coefficient +-1")
    if la <= dm:
        return [], trim(list(a))
    r = _alloc(la)
    cm = _alloc(dm + 1)
    quot = _alloc(la - dm)
    try:
        ok = _load(a, r) and _load(m, cm)
        if ok:
            memset(quot, 0, (la - dm) * sizeof(long long))
            for i in range(la - 1, dm - 1, -1):
                c = r[i]
                if c == 0:
                    continue
                if lc == -1:
                    c = -c
                quot[i - dm] = c
                s = i - dm
                for j in range(dm):
                    if cm[j] == 0:
                        continue
                    if qc_mul(c, cm[j], &t) or qc_sub(r[s + j], t, &r[s + j]):
                        ok = False
                        break
                if not ok:
                    break
                r[i] = 0
        if ok:
            return trim(_store(quot, la - dm)), trim(_store(r, dm))
    finally:
        PyMem_Free(r)
        PyMem_Free(cm)
        PyMem_Free(quot)
    return _poly_divmod_obj(a, m, lc)


cpdef list poly_rem(list a, list m):
    return poly_divmod(a, m)[1]


cpdef list axpy(list dst, list src, Py_ssize_t offset, object coef):
    cdef Py_ssize_t i, n = len(src)
    cdef object x
    if not coef:
        return dst
    if coef == 1:
        for i in range(n):
            x = src[i]
            if x:
                dst[offset + i] = dst[offset + i] + x
    elif coef == -1:
        for i in range(n):
            x = src[i]
            if x:
                dst[offset + i] = dst[offset + i] - x
    else:
        for i in range(n):
            x = src[i]
            if x:
                dst[offset + i] = dst[offset + i] + coef * x
    return dst


cpdef list mul_binomial(list a, Py_ssize_t shift, object c):
    cdef Py_ssize_t la = len(a), n = la + shift, i
    cdef long long *ca
    cdef long long *out
    cdef long long cc, t
    cdef bint ok
    cdef list res
    if la == 0:
        return []
    if type(c) is int and -BOUND <= c <= BOUND:
        cc = c
        ca = _alloc(la)
        out = _alloc(n)
        try:
            ok = _load(a, ca)
            if ok:
                memset(out, 0, n * sizeof(long long))
                for i in range(la):
                    out[i] = ca[i]
                for i in range(la):
                    if ca[i] == 0:
                        continue
                    if qc_mul(cc, ca[i], &t) or qc_sub(out[i + shift], t, &out[i + shift]):
                        ok = False
                        break
            if ok:
                return trim(_store(out, n))
        finally:
            PyMem_Free(ca)
            PyMem_Free(out)
    res = list(a) + [0] * shift
    axpy(res, a, shift, -c)
    return trim(res)


cpdef list geom_div(list a, Py_ssize_t shift, object c, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef object t
    cdef list b = list(a[:n])
    if len(b) < n:
        b.extend([0] * (n - len(b)))
    if c:
        for i in range(shift, n):
            t = b[i - shift]
            if t:
                b[i] = b[i] + c * t
    return b

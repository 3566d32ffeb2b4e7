# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact integer elimination on dense int64 storage.

``smith_invariants`` keeps entries below 2**31 in magnitude so that every
product fits in a signed 64-bit word; when an intermediate value leaves that
range it raises OverflowError and the caller retries with arbitrary-precision
Python ints.  ``rank_mod`` works modulo a prime below 2**31 and never
overflows.
"""

from libc.stdlib cimport calloc, free

cdef long long LIMIT = 2147483647


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    a = _abs(a)
    b = _abs(b)
    while b:
        a, b = b, a % b
    return a


cdef long long* _load(rows, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef long long* a = <long long*> calloc(m * n + 1, sizeof(long long))
    cdef Py_ssize_t i = 0
    if a == NULL:
        raise MemoryError()
    try:
        for r in rows:
            items = r.items() if isinstance(r, dict) else enumerate(r)
            for c, v in items:
                if v:
                    if v > LIMIT or v < -LIMIT:
                        raise OverflowError("entry too large for int64 kernel")
                    a[i * n + c] = v
            i += 1
    except BaseException:
        free(a)
        raise
    return a


cdef inline void _swap_rows(long long* a, Py_ssize_t n, Py_ssize_t r, Py_ssize_t s) nogil:
    cdef Py_ssize_t j
    if r == s:
        return
    for j in range(n):
        a[r * n + j], a[s * n + j] = a[s * n + j], a[r * n + j]


cdef inline void _swap_cols(long long* a, Py_ssize_t m, Py_ssize_t n, Py_ssize_t c, Py_ssize_t d) nogil:
    cdef Py_ssize_t i
    if c == d:
        return
    for i in range(m):
        a[i * n + c], a[i * n + d] = a[i * n + d], a[i * n + c]


cdef int _dense_smith(long long* a, Py_ssize_t m, Py_ssize_t n, long long* diag, Py_ssize_t* count) nogil:
    cdef Py_ssize_t t = 0, i, j, pi, pj, bad
    cdef long long p, x, q, v, best
    cdef bint clean
    while t < m and t < n:
        pi = -1
        pj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                v = _abs(a[i * n + j])
                if v and (pi < 0 or v < best):
                    pi = i
                    pj = j
                    best = v
                    if v == 1:
                        break
            if best == 1:
                break
        if pi < 0:
            break
        _swap_rows(a, n, t, pi)
        _swap_cols(a, m, n, t, pj)
        while True:
            p = a[t * n + t]
            clean = True
            for i in range(t + 1, m):
                x = a[i * n + t]
                if x:
                    q = x // p
                    if q:
                        for j in range(t, n):
                            v = a[i * n + j] - q * a[t * n + j]
                            if _abs(v) > LIMIT:
                                return -1
                            a[i * n + j] = v
                    if a[i * n + t]:
                        clean = False
            for j in range(t + 1, n):
                x = a[t * n + j]
                if x:
                    q = x // p
                    if q:
                        for i in range(m):
                            v = a[i * n + j] - q * a[i * n + t]
                            if _abs(v) > LIMIT:
                                return -1
                            a[i * n + j] = v
                    if a[t * n + j]:
                        clean = False
            if not clean:
                best = _abs(p)
                pi = t
                pj = t
                for i in range(t + 1, m):
                    v = _abs(a[i * n + t])
                    if v and v < best:
                        best = v
                        pi = i
                        pj = t
                for j in range(t + 1, n):
                    v = _abs(a[t * n + j])
                    if v and v < best:
                        best = v
                        pi = t
                        pj = j
                _swap_rows(a, n, t, pi)
                _swap_cols(a, m, n, t, pj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i * n + j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for j in range(t, n):
                v = a[t * n + j] + a[bad * n + j]
                if _abs(v) > LIMIT:
                    return -1
                a[t * n + j] = v
        diag[count[0]] = _abs(a[t * n + t])
        count[0] += 1
        t += 1
    return 0


def smith_invariants(rows, Py_ssize_t ncols):
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    rows = list(rows)
    cdef Py_ssize_t m = len(rows), count = 0
    cdef int status
    if m == 0 or ncols == 0:
        return []
    cdef long long* a = _load(rows, m, ncols)
    cdef long long* diag = <long long*> calloc(min(m, ncols) + 1, sizeof(long long))
    if diag == NULL:
        free(a)
        raise MemoryError()
    try:
        with nogil:
            status = _dense_smith(a, m, ncols, diag, &count)
        result = sorted(diag[k] for k in range(count))
    finally:
        free(a)
        free(diag)
    if status:
        raise OverflowError("intermediate value too large for int64 kernel")
    return result


cdef inline long long _mulmod(long long a, long long b, long long p) nogil:
    return (a * b) % p


cdef long long _inverse(long long a, long long p) nogil:
    cdef long long result = 1, e = p - 2
    while e:
        if e & 1:
            result = _mulmod(result, a, p)
        a = _mulmod(a, a, p)
        e >>= 1
    return result


cdef Py_ssize_t _rank_mod(long long* a, Py_ssize_t m, Py_ssize_t n, long long p) nogil:
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef long long inv, x
    for c in range(n):
        piv = -1
        for i in range(rank, m):
            if a[i * n + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, n):
                a[piv * n + j], a[rank * n + j] = a[rank * n + j], a[piv * n + j]
        inv = _inverse(a[rank * n + c], p)
        for j in range(c, n):
            a[rank * n + j] = _mulmod(a[rank * n + j], inv, p)
        for i in range(rank + 1, m):
            x = a[i * n + c]
            if not x:
                continue
            for j in range(c, n):
                a[i * n + j] = (a[i * n + j] + (p - x) * a[rank * n + j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod(rows, Py_ssize_t ncols, long long p):
    """Rank over Z/p of an integer matrix; p must be a prime below 2**31."""
    rows = list(rows)
    cdef Py_ssize_t m = len(rows), i = 0, rank
    if m == 0 or ncols == 0:
        return 0
    if p <= 1 or p > LIMIT:
        raise ValueError("modulus must be a prime below 2**31")
    cdef long long* a = <long long*> calloc(m * ncols + 1, sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for r in rows:
            items = r.items() if isinstance(r, dict) else enumerate(r)
            for c, v in items:
                a[i * ncols + c] = v % p
            i += 1
        with nogil:
            rank = _rank_mod(a, m, ncols, p)
    finally:
        free(a)
    return rank

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination kernels over Z and Z[i].

Same contract as :mod:`staralg._core_py`.  Work is done in 64-bit machine
integers with checked arithmetic; on overflow (or inputs outside int64) the
call is replayed with the arbitrary-precision Python implementation.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.limits cimport LLONG_MIN

from staralg import _core_py

cdef extern from *:
    """
    static inline int sa_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int sa_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int sa_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    bint sa_mul(long long a, long long b, long long *r) nogil
    bint sa_sub(long long a, long long b, long long *r) nogil
    bint sa_add(long long a, long long b, long long *r) nogil

BACKEND = "cython"
PD, PSD, INDEFINITE = 0, 1, 2

cdef enum:
    # status codes of the int64 routines
    OK = 0
    OVERFLOW = 1
    INEXACT = 2

cdef enum:
    S_PD = 0
    S_PSD = 1
    S_INDEF = 2


cdef inline int _fill(long long *dst, rows, Py_ssize_t nrows, Py_ssize_t ncols) except -1:
    cdef Py_ssize_t i, j
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            dst[i * ncols + j] = row[j]
    return 0


cdef inline bint _div_exact(long long x, long long d, long long *q) noexcept nogil:
    # false on overflow or remainder
    if d == -1:
        if x == LLONG_MIN:
            return False
        q[0] = -x
        return True
    if x % d:
        return False
    q[0] = x / d
    return True


cdef int _rref_real_i64(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                        Py_ssize_t *pivots, Py_ssize_t *rank, long long *dout) noexcept nogil:
    cdef Py_ssize_t r = 0, col, p, i, j
    cdef long long prev = 1, piv, f, x, t1, t2
    cdef long long *prow
    cdef long long *row
    for col in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p * ncols + col] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                x = m[p * ncols + j]
                m[p * ncols + j] = m[r * ncols + j]
                m[r * ncols + j] = x
        prow = m + r * ncols
        piv = prow[col]
        for i in range(nrows):
            if i == r:
                continue
            row = m + i * ncols
            f = row[col]
            if f == 0 and prev == 1 and piv == 1:
                continue
            for j in range(ncols):
                if sa_mul(piv, row[j], &t1):
                    return OVERFLOW
                if sa_mul(f, prow[j], &t2):
                    return OVERFLOW
                if sa_sub(t1, t2, &x):
                    return OVERFLOW
                if prev != 1:
                    if not _div_exact(x, prev, &x):
                        return OVERFLOW if prev == -1 else INEXACT
                row[j] = x
        prev = piv
        pivots[r] = col
        r += 1
    rank[0] = r
    dout[0] = prev
    return OK


def ff_rref_real(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long d = 1
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], [], 1
    cdef long long *m = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        try:
            _fill(m, rows, nrows, ncols)
        except OverflowError:
            return _core_py.ff_rref_real(rows, ncols)
        with nogil:
            status = _rref_real_i64(m, nrows, ncols, piv, &rank, &d)
        if status == INEXACT:
            raise ArithmeticError("inexact division in fraction-free elimination")
        if status == OVERFLOW:
            return _core_py.ff_rref_real(rows, ncols)
        out = []
        sgn = -1 if d < 0 else 1
        for i in range(rank):
            out.append([sgn * m[i * ncols + j] for j in range(ncols)])
        return out, [piv[i] for i in range(rank)], sgn * d
    finally:
        free(m)
        free(piv)


cdef int _rref_cplx_i64(long long *mr, long long *mi, Py_ssize_t nrows, Py_ssize_t ncols,
                        Py_ssize_t *pivots, Py_ssize_t *rank,
                        long long *dr, long long *di) noexcept nogil:
    cdef Py_ssize_t r = 0, col, p, i, j
    cdef long long pr = 1, pi = 0, a, b, fr, fi, xr, xi, yr, yi
    cdef long long t1, t2, t3, t4, u, v, w, zr, zi, nrm
    cdef long long *prr
    cdef long long *pri
    cdef long long *rr
    cdef long long *ri
    for col in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and mr[p * ncols + col] == 0 and mi[p * ncols + col] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                t1 = mr[p * ncols + j]; mr[p * ncols + j] = mr[r * ncols + j]; mr[r * ncols + j] = t1
                t1 = mi[p * ncols + j]; mi[p * ncols + j] = mi[r * ncols + j]; mi[r * ncols + j] = t1
        prr = mr + r * ncols
        pri = mi + r * ncols
        a = prr[col]
        b = pri[col]
        if sa_mul(pr, pr, &t1) or sa_mul(pi, pi, &t2) or sa_add(t1, t2, &nrm):
            return OVERFLOW
        for i in range(nrows):
            if i == r:
                continue
            rr = mr + i * ncols
            ri = mi + i * ncols
            fr = rr[col]
            fi = ri[col]
            for j in range(ncols):
                xr = rr[j]; xi = ri[j]; yr = prr[j]; yi = pri[j]
                # zr = a*xr - b*xi - (fr*yr - fi*yi)
                if sa_mul(a, xr, &t1) or sa_mul(b, xi, &t2) or sa_mul(fr, yr, &t3) or sa_mul(fi, yi, &t4):
                    return OVERFLOW
                if sa_sub(t1, t2, &u) or sa_sub(t3, t4, &v) or sa_sub(u, v, &zr):
                    return OVERFLOW
                # zi = a*xi + b*xr - (fr*yi + fi*yr)
                if sa_mul(a, xi, &t1) or sa_mul(b, xr, &t2) or sa_mul(fr, yi, &t3) or sa_mul(fi, yr, &t4):
                    return OVERFLOW
                if sa_add(t1, t2, &u) or sa_add(t3, t4, &v) or sa_sub(u, v, &zi):
                    return OVERFLOW
                if (zr != 0 or zi != 0) and not (pr == 1 and pi == 0):
                    if pi == 0:
                        if not _div_exact(zr, pr, &zr) or not _div_exact(zi, pr, &zi):
                            return INEXACT if pr != -1 else OVERFLOW
                    else:
                        # (zr + zi i)(pr - pi i) / nrm
                        if sa_mul(zr, pr, &t1) or sa_mul(zi, pi, &t2) or sa_add(t1, t2, &u):
                            return OVERFLOW
                        if sa_mul(zi, pr, &t3) or sa_mul(zr, pi, &t4) or sa_sub(t3, t4, &w):
                            return OVERFLOW
                        if u % nrm or w % nrm:
                            return INEXACT
                        zr = u / nrm
                        zi = w / nrm
                rr[j] = zr
                ri[j] = zi
        pr = a
        pi = b
        pivots[r] = col
        r += 1
    rank[0] = r
    dr[0] = pr
    di[0] = pi
    return OK


def ff_rref_complex(re, im, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(re)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long dr = 1, di = 0
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], [], [], 1, 0
    cdef long long *mr = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef long long *mi = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if mr == NULL or mi == NULL or piv == NULL:
        free(mr)
        free(mi)
        free(piv)
        raise MemoryError()
    try:
        try:
            _fill(mr, re, nrows, ncols)
            _fill(mi, im, nrows, ncols)
        except OverflowError:
            return _core_py.ff_rref_complex(re, im, ncols)
        with nogil:
            status = _rref_cplx_i64(mr, mi, nrows, ncols, piv, &rank, &dr, &di)
        if status == INEXACT:
            raise ArithmeticError("inexact division in fraction-free elimination")
        if status == OVERFLOW:
            return _core_py.ff_rref_complex(re, im, ncols)
        out_r = [[mr[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        out_i = [[mi[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out_r, out_i, [piv[i] for i in range(rank)], dr, di
    finally:
        free(mr)
        free(mi)
        free(piv)


cdef int _herm_i64(long long *gr, long long *gi, long long *wr, long long *wi, Py_ssize_t n,
                   Py_ssize_t *active, char *is_radical, Py_ssize_t *witness_k,
                   Py_ssize_t *witness_j, int *status) noexcept nogil:
    # On INDEFINITE: witness_j < 0 means coordinate witness w_k, else two-index case.
    cdef Py_ssize_t na = n, k, j, l, t, c, ia, ib
    cdef long long prev = 1, gkk, cr, ci, x, y, t1, t2, t3, ajr, aji, bkr, bki, zr, zi
    for t in range(n):
        active[t] = t
        is_radical[t] = 0
    while na > 0:
        k = active[0]
        gkk = gr[k * n + k]
        if gkk < 0:
            witness_k[0] = k
            witness_j[0] = -1
            status[0] = S_INDEF
            return OK
        if gkk == 0:
            j = -1
            for c in range(1, na):
                l = active[c]
                if gr[k * n + l] != 0 or gi[k * n + l] != 0:
                    j = l
                    break
            if j < 0:
                is_radical[k] = 1
                for c in range(1, na):
                    active[c - 1] = active[c]
                na -= 1
                continue
            witness_k[0] = k
            witness_j[0] = j
            status[0] = S_INDEF
            return OK
        for ia in range(1, na):
            j = active[ia]
            cr = gr[k * n + j]
            ci = gi[k * n + j]
            for t in range(n):
                x = wr[k * n + t]
                y = wi[k * n + t]
                # wr_j = gkk*wr_j - (cr*x - ci*y)
                if sa_mul(gkk, wr[j * n + t], &t1) or sa_mul(cr, x, &t2) or sa_mul(ci, y, &t3):
                    return OVERFLOW
                if sa_sub(t2, t3, &t2) or sa_sub(t1, t2, &t1):
                    return OVERFLOW
                wr[j * n + t] = t1
                # wi_j = gkk*wi_j - (cr*y + ci*x)
                if sa_mul(gkk, wi[j * n + t], &t1) or sa_mul(cr, y, &t2) or sa_mul(ci, x, &t3):
                    return OVERFLOW
                if sa_add(t2, t3, &t2) or sa_sub(t1, t2, &t1):
                    return OVERFLOW
                wi[j * n + t] = t1
        for ia in range(1, na):
            j = active[ia]
            ajr = gr[j * n + k]
            aji = gi[j * n + k]
            for ib in range(1, na):
                l = active[ib]
                bkr = gr[k * n + l]
                bki = gi[k * n + l]
                if sa_mul(gkk, gr[j * n + l], &t1) or sa_mul(ajr, bkr, &t2) or sa_mul(aji, bki, &t3):
                    return OVERFLOW
                if sa_sub(t2, t3, &t2) or sa_sub(t1, t2, &zr):
                    return OVERFLOW
                if sa_mul(gkk, gi[j * n + l], &t1) or sa_mul(ajr, bki, &t2) or sa_mul(aji, bkr, &t3):
                    return OVERFLOW
                if sa_add(t2, t3, &t2) or sa_sub(t1, t2, &zi):
                    return OVERFLOW
                if prev != 1:
                    if zr % prev or zi % prev:
                        return INEXACT
                    zr = zr / prev
                    zi = zi / prev
                gr[j * n + l] = zr
                gi[j * n + l] = zi
        prev = gkk
        for c in range(1, na):
            active[c - 1] = active[c]
        na -= 1
    status[0] = S_PD
    for t in range(n):
        if is_radical[t]:
            status[0] = S_PSD
    return OK


def ff_hermitian(re, im):
    cdef Py_ssize_t n = len(re)
    cdef Py_ssize_t t, s, k = -1, j = -1
    cdef int status = S_PD, rc
    if n == 0:
        return PD, None, []
    cdef long long *gr = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *gi = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *wr = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *wi = <long long *> malloc(n * n * sizeof(long long))
    cdef Py_ssize_t *active = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef char *is_radical = <char *> malloc(n * sizeof(char))
    if gr == NULL or gi == NULL or wr == NULL or wi == NULL or active == NULL or is_radical == NULL:
        free(gr); free(gi); free(wr); free(wi); free(active); free(is_radical)
        raise MemoryError()
    try:
        try:
            _fill(gr, re, n, n)
            _fill(gi, im, n, n)
        except OverflowError:
            return _core_py.ff_hermitian(re, im)
        memset(wr, 0, n * n * sizeof(long long))
        memset(wi, 0, n * n * sizeof(long long))
        for t in range(n):
            wr[t * n + t] = 1
        with nogil:
            rc = _herm_i64(gr, gi, wr, wi, n, active, is_radical, &k, &j, &status)
        if rc == INEXACT:
            raise ArithmeticError("inexact division in fraction-free elimination")
        if rc == OVERFLOW:
            return _core_py.ff_hermitian(re, im)
        if status == S_INDEF:
            wkr = [wr[k * n + t] for t in range(n)]
            wki = [wi[k * n + t] for t in range(n)]
            if j < 0:
                return INDEFINITE, (wkr, wki), []
            # Python ints from here on: the witness may exceed int64
            ar, ai = gr[k * n + j], gi[k * n + j]
            sc = abs(gr[j * n + j]) + 1
            u = ar * ar + ai * ai
            tr, ti = -sc * ar, -sc * ai
            wjr = [wr[j * n + t] for t in range(n)]
            wji = [wi[j * n + t] for t in range(n)]
            vr = [tr * x - ti * y + u * z for x, y, z in zip(wkr, wki, wjr)]
            vi = [tr * y + ti * x + u * z for x, y, z in zip(wkr, wki, wji)]
            return INDEFINITE, (vr, vi), []
        radical = []
        for t in range(n):
            if is_radical[t]:
                radical.append(([wr[t * n + s] for s in range(n)], [wi[t * n + s] for s in range(n)]))
        return status, None, radical
    finally:
        free(gr); free(gi); free(wr); free(wi); free(active); free(is_radical)

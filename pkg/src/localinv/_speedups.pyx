"""int64 versions of the hot loops in localinv.kernels.

Callers guarantee eval_sum_i64 cannot overflow (they bound the sum up
front); echelon_rank_i64 checks before every row update and returns -1 so
the caller can redo the computation with arbitrary-precision ints.
"""

from libc.stdlib cimport free, malloc

cdef long long _LIM = (<long long>1 << 62) - 1


cdef inline long long c_abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long c_gcd(long long a, long long b) nogil:
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


def eval_sum_i64(
    long long[::1] mats,
    Py_ssize_t big,
    int[::1] labels,
    int[::1] sig,
    int[::1] dims,
    long long[::1] strides,
    Py_ssize_t n,
    Py_ssize_t k,
):
    """Contraction sum over all index assignments; wire-major odometer."""
    cdef long long total = 0
    cdef long long term, row, col
    cdef Py_ssize_t p, i, pos
    cdef int* digits = <int*>malloc(n * k * sizeof(int))
    if digits == NULL:
        raise MemoryError()
    for pos in range(n * k):
        digits[pos] = 0
    with nogil:
        while True:
            term = 1
            for p in range(k):
                row = 0
                col = 0
                for i in range(n):
                    row += digits[i * k + p] * strides[i]
                    col += digits[i * k + sig[i * k + p]] * strides[i]
                term *= mats[labels[p] * big * big + row * big + col]
                if term == 0:
                    break
            total += term
            pos = n * k - 1
            while pos >= 0:
                digits[pos] += 1
                if digits[pos] < dims[pos / k]:
                    break
                digits[pos] = 0
                pos -= 1
            if pos < 0:
                break
    free(digits)
    return total


def echelon_rank_i64(long long[::1] buf, Py_ssize_t nrows, Py_ssize_t ncols):
    """Fraction-free echelon rank with gcd row reduction; -1 on overflow risk."""
    cdef Py_ssize_t* pcol = <Py_ssize_t*>malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t* prow = <Py_ssize_t*>malloc(ncols * sizeof(Py_ssize_t))
    cdef long long* pmax = <long long*>malloc(ncols * sizeof(long long))
    if pcol == NULL or prow == NULL or pmax == NULL:
        free(pcol)
        free(prow)
        free(pmax)
        raise MemoryError()
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t r, t, j, lead, at, base, pbase, c
    cdef long long v, pv, av, apv, g, x, rmax, newmax
    cdef bint overflow = False
    with nogil:
        for r in range(nrows):
            base = r * ncols
            rmax = 0
            for j in range(ncols):
                x = c_abs(buf[base + j])
                if x > rmax:
                    rmax = x
            for t in range(rank):
                c = pcol[t]
                v = buf[base + c]
                if v == 0:
                    continue
                pbase = prow[t] * ncols
                pv = buf[pbase + c]
                apv = c_abs(pv)
                av = c_abs(v)
                if (rmax != 0 and apv > _LIM / rmax) or (
                    pmax[t] != 0 and av > _LIM / pmax[t]
                ):
                    overflow = True
                    break
                newmax = 0
                for j in range(ncols):
                    x = pv * buf[base + j] - v * buf[pbase + j]
                    buf[base + j] = x
                    x = c_abs(x)
                    if x > newmax:
                        newmax = x
                if newmax > 1:
                    g = 0
                    for j in range(ncols):
                        if buf[base + j] != 0:
                            g = c_gcd(g, c_abs(buf[base + j]))
                            if g == 1:
                                break
                    if g > 1:
                        for j in range(ncols):
                            buf[base + j] = buf[base + j] / g
                        newmax = newmax / g
                rmax = newmax
            if overflow:
                break
            lead = -1
            for j in range(ncols):
                if buf[base + j] != 0:
                    lead = j
                    break
            if lead < 0:
                continue
            if buf[base + lead] < 0:
                for j in range(ncols):
                    buf[base + j] = -buf[base + j]
            at = rank
            for t in range(rank):
                if pcol[t] > lead:
                    at = t
                    break
            for t in range(rank, at, -1):
                pcol[t] = pcol[t - 1]
                prow[t] = prow[t - 1]
                pmax[t] = pmax[t - 1]
            pcol[at] = lead
            prow[at] = r
            pmax[at] = rmax
            rank += 1
    free(pcol)
    free(prow)
    free(pmax)
    if overflow:
        return -1
    return rank

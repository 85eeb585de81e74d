# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Early-break directed Hausdorff kernel on contiguous float64 arrays."""
from libc.math cimport fabs, INFINITY


def directed_max_min(double[:, ::1] A, double[:, ::1] B, bint sup_norm):
    """max_a min_b d(a, b); squared distances for the Euclidean case."""
    cdef Py_ssize_t n = A.shape[0], m = B.shape[0], dim = A.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double cmax = 0.0, cmin, d, diff
    cdef bint broke
    if B.shape[1] != dim:
        raise ValueError("dimension mismatch")
    with nogil:
        for i in range(n):
            cmin = INFINITY
            broke = False
            for j in range(m):
                d = 0.0
                for k in range(dim):
                    diff = A[i, k] - B[j, k]
                    if sup_norm:
                        diff = fabs(diff)
                        if diff > d:
                            d = diff
                    else:
                        d = d + diff * diff
                if d < cmax:
                    # this row cannot raise the running max
                    broke = True
                    break
                if d < cmin:
                    cmin = d
            if not broke and cmin > cmax:
                cmax = cmin
    return cmax

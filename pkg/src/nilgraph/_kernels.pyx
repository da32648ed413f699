# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Contract identical to ``_kernels_py``."""
from libc.stdlib cimport malloc, free


cdef inline bint _next_perm(int* p, int n) noexcept nogil:
    cdef int i = n - 2, j, t
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    t = p[i]; p[i] = p[j]; p[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = p[i]; p[i] = p[j]; p[j] = t
        i += 1
        j -= 1
    return True


def scan_cpa(color, int n, int n_colors):
    cdef int nn = n * n
    cdef int* tab = <int*>malloc(nn * sizeof(int))
    cdef int* ei = <int*>malloc(nn * sizeof(int))
    cdef int* ej = <int*>malloc(nn * sizeof(int))
    cdef int* ec = <int*>malloc(nn * sizeof(int))
    cdef int* p = <int*>malloc(n * sizeof(int))
    cdef int* phi = <int*>malloc((n_colors + 1) * sizeof(int))
    cdef char* used = <char*>malloc(n_colors + 1)
    cdef int k, i, j, m = 0, c, d, f
    cdef bint ok
    found = []
    if not (tab and ei and ej and ec and p and phi and used):
        free(tab); free(ei); free(ej); free(ec); free(p); free(phi); free(used)
        raise MemoryError()
    try:
        for k in range(nn):
            tab[k] = color[k]
        for i in range(n):
            p[i] = i
            for j in range(i + 1, n):
                if tab[i * n + j] >= 0:
                    ei[m] = i; ej[m] = j; ec[m] = tab[i * n + j]
                    m += 1
        while True:
            for k in range(n_colors):
                phi[k] = -1
                used[k] = 0
            ok = True
            for k in range(m):
                d = tab[p[ei[k]] * n + p[ej[k]]]
                if d < 0:
                    ok = False
                    break
                c = ec[k]
                f = phi[c]
                if f < 0:
                    if used[d]:
                        ok = False
                        break
                    phi[c] = d
                    used[d] = 1
                elif f != d:
                    ok = False
                    break
            if ok:
                found.append(tuple([p[k] for k in range(n)]))
            if not _next_perm(p, n):
                break
    finally:
        free(tab); free(ei); free(ej); free(ec); free(p); free(phi); free(used)
    return found


def count_special_violations(images, int n):
    cdef int s, a, b, t, ref, bad = 0
    cdef int* im = <int*>malloc(n * sizeof(int))
    if not im:
        raise MemoryError()
    try:
        for a in range(n):
            im[a] = images[a]
        for s in range(n):
            ref = -1
            for a in range(n):
                b = (s - a + n) % n
                if a >= b:
                    continue
                t = (im[a] + im[b]) % n
                if ref < 0:
                    ref = t
                elif t != ref:
                    bad += 1
                    break
    finally:
        free(im)
    return bad

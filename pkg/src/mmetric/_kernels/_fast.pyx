# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors mmetric._kernels.pure exactly (same scan order,
same witness tuples); see that module for the contract."""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def scan_axioms(sigma, double tol):
    rows = sigma.tolist() if hasattr(sigma, "tolist") else [list(r) for r in sigma]
    cdef Py_ssize_t n = len(rows)
    cdef double *s = <double *> malloc(n * n * sizeof(double))
    cdef double *diag = <double *> malloc(n * sizeof(double))
    cdef double *star = <double *> malloc(n * n * sizeof(double))
    if s == NULL or diag == NULL or star == NULL:
        free(s); free(diag); free(star)
        raise MemoryError()
    cdef Py_ssize_t i, j, k
    cdef double m, lhs, rhs, v
    out = {
        "sym": None,
        "sigma_lbnd": None,
        "sep": None,
        "sigma_inq": None,
        "p_lbnd": None,
        "p_inq": None,
        "zero_diag": None,
    }
    try:
        for i in range(n):
            row = rows[i]
            for j in range(n):
                s[i * n + j] = <double> row[j]
        for i in range(n):
            diag[i] = s[i * n + i]

        for i in range(n):
            v = diag[i] if diag[i] >= 0 else -diag[i]
            if v > tol:
                out["zero_diag"] = (i, diag[i])
                break

        for i in range(n):
            found = False
            for j in range(n):
                v = s[i * n + j] - s[j * n + i]
                if (v if v >= 0 else -v) > tol:
                    out["sym"] = (i, j, s[i * n + j], s[j * n + i])
                    found = True
                    break
            if found:
                break

        for i in range(n):
            found = False
            for j in range(n):
                m = diag[i] if diag[i] < diag[j] else diag[j]
                if s[i * n + j] - m < -tol:
                    out["sigma_lbnd"] = (i, j, s[i * n + j], m)
                    found = True
                    break
            if found:
                break

        for i in range(n):
            found = False
            for j in range(i + 1, n):
                lhs = s[i * n + j]
                v = diag[i] - lhs
                if (v if v >= 0 else -v) <= tol:
                    v = diag[j] - lhs
                    if (v if v >= 0 else -v) <= tol:
                        out["sep"] = (i, j, diag[i], lhs, diag[j])
                        found = True
                        break
            if found:
                break

        for i in range(n):
            found = False
            for j in range(n):
                if diag[i] - s[i * n + j] > tol:
                    out["p_lbnd"] = (i, j, diag[i], s[i * n + j])
                    found = True
                    break
            if found:
                break

        for i in range(n):
            for j in range(n):
                m = diag[i] if diag[i] < diag[j] else diag[j]
                star[i * n + j] = s[i * n + j] - m

        found = False
        for i in range(n):
            for j in range(n):
                lhs = star[i * n + j]
                for k in range(n):
                    rhs = star[i * n + k] + star[k * n + j]
                    if lhs - rhs > tol:
                        out["sigma_inq"] = (i, j, k, lhs, rhs)
                        found = True
                        break
                if found:
                    break
            if found:
                break

        found = False
        for i in range(n):
            for j in range(n):
                lhs = s[i * n + j]
                for k in range(n):
                    rhs = s[i * n + k] + s[k * n + j] - diag[k]
                    if lhs - rhs > tol:
                        out["p_inq"] = (i, j, k, lhs, rhs)
                        found = True
                        break
                if found:
                    break
            if found:
                break
    finally:
        free(s)
        free(diag)
        free(star)
    return out


def shortest_path_closure(weights):
    rows = weights.tolist() if hasattr(weights, "tolist") else [list(r) for r in weights]
    cdef Py_ssize_t n = len(rows)
    cdef double *d = <double *> malloc(n * n * sizeof(double))
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, k
    cdef double dik, alt
    try:
        for i in range(n):
            row = rows[i]
            for j in range(n):
                d[i * n + j] = <double> row[j]
        for k in range(n):
            for i in range(n):
                dik = d[i * n + k]
                for j in range(n):
                    alt = dik + d[k * n + j]
                    if alt < d[i * n + j]:
                        d[i * n + j] = alt
        return [[d[i * n + j] for j in range(n)] for i in range(n)]
    finally:
        free(d)


def enumerate_open_sets(ball_masks, int n):
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t x, b
    for x in range(n):
        total += len(ball_masks[x])
    cdef unsigned int *flat = <unsigned int *> malloc(max(total, 1) * sizeof(unsigned int))
    cdef Py_ssize_t *start = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    if flat == NULL or start == NULL:
        free(flat); free(start)
        raise MemoryError()
    cdef unsigned int u, rem, low, notu
    cdef Py_ssize_t pos = 0
    cdef bint ok, inside
    opens = []
    try:
        for x in range(n):
            start[x] = pos
            for mask in ball_masks[x]:
                flat[pos] = <unsigned int> mask
                pos += 1
        start[n] = pos
        for u in range(<unsigned int> 1 << n):
            notu = ~u
            rem = u
            ok = True
            while rem:
                low = rem & (-rem)
                x = 0
                while (low >> (x + 1)) != 0:
                    x += 1
                rem ^= low
                inside = False
                for b in range(start[x], start[x + 1]):
                    if (flat[b] & notu) == 0:
                        inside = True
                        break
                if not inside:
                    ok = False
                    break
            if ok:
                opens.append(<object> u)
    finally:
        free(flat)
        free(start)
    return opens

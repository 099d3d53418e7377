"""Pure-Python kernels: axiom scans, shortest-path closure, open-set enumeration.

Reference implementations of the package's hot loops.  The compiled module
``mmetric._kernels._fast`` mirrors these functions exactly, including scan
order, so witness tuples are byte-identical between backends.
"""

from __future__ import annotations

BACKEND = "pure"


def scan_axioms(sigma, tol):
    """Exhaustively check all axiom instances on an n x n table.

    ``sigma`` is a square nested sequence (or ndarray) of finite reals,
    assumed symmetric.  Returns a dict mapping check name to ``None`` on
    pass or to a witness tuple of the first violation found in row-major
    scan order:

      sym        (i, j, s_ij, s_ji)             s(i,j) != s(j,i)
      sigma_lbnd (i, j, s_ij, m_ij)             s(i,j) < m_ij
      sep        (i, j, s_ii, s_ij, s_jj)       triple equality with i != j
      sigma_inq  (i, j, k, lhs, rhs)            s*(i,j) > s*(i,k) + s*(k,j)
      p_lbnd     (i, j, s_ii, s_ij)             s(i,i) > s(i,j)
      p_inq      (i, j, k, lhs, rhs)            s(i,j) > s(i,k) + s(k,j) - s(k,k)
      zero_diag  (i, s_ii)                      s(i,i) != 0

    where m_ij = min(s(i,i), s(j,j)) and s*(i,j) = s(i,j) - m_ij.
    Inequalities get ``tol`` of absolute slack; equalities are compared
    within ``tol``.
    """
    rows = sigma.tolist() if hasattr(sigma, "tolist") else [list(r) for r in sigma]
    n = len(rows)
    diag = [rows[i][i] for i in range(n)]
    out = {
        "sym": None,
        "sigma_lbnd": None,
        "sep": None,
        "sigma_inq": None,
        "p_lbnd": None,
        "p_inq": None,
        "zero_diag": None,
    }

    for i in range(n):
        if abs(diag[i]) > tol:
            out["zero_diag"] = (i, diag[i])
            break

    for i in range(n):
        found = False
        for j in range(n):
            if abs(rows[i][j] - rows[j][i]) > tol:
                out["sym"] = (i, j, rows[i][j], rows[j][i])
                found = True
                break
        if found:
            break

    for i in range(n):
        found = False
        for j in range(n):
            m = diag[i] if diag[i] < diag[j] else diag[j]
            if rows[i][j] - m < -tol:
                out["sigma_lbnd"] = (i, j, rows[i][j], m)
                found = True
                break
        if found:
            break

    for i in range(n):
        found = False
        for j in range(i + 1, n):
            s_ij = rows[i][j]
            if abs(diag[i] - s_ij) <= tol and abs(diag[j] - s_ij) <= tol:
                out["sep"] = (i, j, diag[i], s_ij, diag[j])
                found = True
                break
        if found:
            break

    for i in range(n):
        found = False
        for j in range(n):
            if diag[i] - rows[i][j] > tol:
                out["p_lbnd"] = (i, j, diag[i], rows[i][j])
                found = True
                break
        if found:
            break

    # Shifted triangle inequality on s*(x, y) = s(x, y) - m_{x,y}.
    star = [
        [rows[i][j] - (diag[i] if diag[i] < diag[j] else diag[j]) for j in range(n)]
        for i in range(n)
    ]
    done = False
    for i in range(n):
        for j in range(n):
            lhs = star[i][j]
            row_i = star[i]
            for k in range(n):
                rhs = row_i[k] + star[k][j]
                if lhs - rhs > tol:
                    out["sigma_inq"] = (i, j, k, lhs, rhs)
                    done = True
                    break
            if done:
                break
        if done:
            break

    done = False
    for i in range(n):
        for j in range(n):
            lhs = rows[i][j]
            row_i = rows[i]
            for k in range(n):
                rhs = row_i[k] + rows[k][j] - diag[k]
                if lhs - rhs > tol:
                    out["p_inq"] = (i, j, k, lhs, rhs)
                    done = True
                    break
            if done:
                break
        if done:
            break

    return out


def shortest_path_closure(weights):
    """All-pairs shortest-path closure of a symmetric nonnegative matrix.

    Zero off-diagonal entries are genuine zero-length edges, not missing
    ones.  Returns a new nested list; symmetry is preserved exactly.
    """
    d = [list(map(float, row)) for row in (weights.tolist() if hasattr(weights, "tolist") else weights)]
    n = len(d)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            di = d[i]
            dik = di[k]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return d


def enumerate_open_sets(ball_masks, n):
    """Enumerate all open subsets of an n-point space as bitmasks.

    ``ball_masks[x]`` lists the distinct balls centered at point ``x`` as
    bitmasks.  A subset ``u`` is open iff every member point has some ball
    contained in ``u``.  Returns the open masks in ascending order.
    """
    opens = []
    for u in range(1 << n):
        rem = u
        ok = True
        while rem:
            low = rem & -rem
            x = low.bit_length() - 1
            rem ^= low
            inside = False
            for b in ball_masks[x]:
                if b & ~u == 0:
                    inside = True
                    break
            if not inside:
                ok = False
                break
        if ok:
            opens.append(u)
    return opens

"""Pure-Python kernels; the reference behaviour for ``_ckernels``."""

import numpy as np


def per_matrix(name_of, child_start, child_ids, base_eq, pair_start, pair_i, pair_j):
    name_of = name_of.tolist()
    child_start = child_start.tolist()
    child_ids = child_ids.tolist()
    base_eq = base_eq.tolist()
    pair_start = pair_start.tolist()
    pair_i = pair_i.tolist()
    pair_j = pair_j.tolist()
    n = len(name_of)
    na = len(base_eq)
    rows = [[0] * n for _ in range(n)]
    for u in range(n):
        p = name_of[u]
        cu = child_start[u]
        row = rows[u]
        for v in range(n):
            q = name_of[v]
            if not base_eq[p][q]:
                continue
            cv = child_start[v]
            k0 = pair_start[p * na + q]
            k1 = pair_start[p * na + q + 1]
            ok = 1
            for k in range(k0, k1):
                if not rows[child_ids[cu + pair_i[k]]][child_ids[cv + pair_j[k]]]:
                    ok = 0
                    break
            row[v] = ok
    return np.asarray(rows, dtype=np.uint8).reshape(n, n)


def per_law_violations(m, max_report=1000):
    n = m.shape[0]
    rows = m.tolist()
    sym = []
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            if ri[j] and not rows[j][i] and len(sym) < max_report:
                sym.append((i, j))
    # bitset rows: violation (i, j, k) iff j in row i, k in row j, k not in row i
    bits = [sum(1 << j for j, x in enumerate(r) if x) for r in rows]
    trans = []
    for i in range(n):
        bi = bits[i]
        for j in range(n):
            if not rows[i][j]:
                continue
            missing = bits[j] & ~bi
            while missing and len(trans) < max_report:
                k = (missing & -missing).bit_length() - 1
                trans.append((i, j, k))
                missing &= missing - 1
    return sym, trans

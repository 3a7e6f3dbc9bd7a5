# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels, contract-identical to the pure backend.

Values stay Python integers (arbitrary precision, exactness first); the
speedup comes from compiled control flow.  The planar lattice scan gets a
genuine C fast path with a preflight overflow bound, falling back to
object arithmetic when the bound fails.
"""

from math import gcd

BACKEND = "compiled"

DEF MAXROWS = 64

cdef long long _I64_GUARD = (<long long>1) << 62


def simple_pl_values(vxs, vys, vden, edges, wlin, wden, cands):
    """See the pure backend for the full contract."""
    cdef Py_ssize_t nv = len(vxs)
    cdef Py_ssize_t i, j, t, idx, nxt, nclip
    cdef object w0 = wlin[0], w1 = wlin[1], w2 = wlin[2]
    cdef object w0v = w0 * vden
    cdef object g0, g1, g2, gden, g0v, gd
    cdef object a, b, en, ed, bn, bd, an, ad, sn, sd
    cdef object rx, ry, rw, g
    cdef object x0, y0, q0, x1, y1, q1, x2, y2, q2
    cdef object det3, mx, my, mw, whom, ghom, num, den
    cdef list ghat = [0] * nv
    cdef list out = []
    cdef list cx = [0] * (2 * nv)
    cdef list cy = [0] * (2 * nv)
    cdef list cw = [0] * (2 * nv)

    for cand in cands:
        g0 = cand[0]; g1 = cand[1]; g2 = cand[2]; gden = cand[3]
        g0v = g0 * vden
        for i in range(nv):
            ghat[i] = g1 * vxs[i] + g2 * vys[i] + g0v
        gd = gden * vden

        # boundary integral of max(0, g)
        bn = 0; bd = 1
        for edge in edges:
            a = ghat[edge[0]]
            b = ghat[edge[1]]
            if a <= 0 and b <= 0:
                continue
            if a >= 0 and b >= 0:
                en = a + b; ed = 2
            elif a > 0:
                en = a * a; ed = 2 * (a - b)
            else:
                en = b * b; ed = 2 * (b - a)
            num = bn * (edge[3] * ed) + edge[2] * en * bd
            den = bd * edge[3] * ed
            if num == 0:
                bn = 0; bd = 1
            else:
                g = gcd(num if num > 0 else -num, den)
                bn = num // g; bd = den // g
        num = bn; den = bd * gd
        if num == 0:
            bn = 0; bd = 1
        else:
            g = gcd(num if num > 0 else -num, den)
            bn = num // g; bd = den // g

        # clip polygon to {g >= 0}, homogeneous integer points
        nclip = 0
        for idx in range(nv):
            nxt = idx + 1 if idx + 1 < nv else 0
            a = ghat[idx]
            b = ghat[nxt]
            if a >= 0:
                cx[nclip] = vxs[idx]; cy[nclip] = vys[idx]; cw[nclip] = 1
                nclip += 1
            if (a > 0 and b < 0) or (a < 0 and b > 0):
                rx = a * vxs[nxt] - b * vxs[idx]
                ry = a * vys[nxt] - b * vys[idx]
                rw = a - b
                if rw < 0:
                    rx = -rx; ry = -ry; rw = -rw
                g = gcd(gcd(rx if rx > 0 else -rx, ry if ry > 0 else -ry), rw)
                if g > 1:
                    rx = rx // g; ry = ry // g; rw = rw // g
                cx[nclip] = rx; cy[nclip] = ry; cw[nclip] = rw
                nclip += 1

        # volume term over the clipped region, fan + exact midpoint rule
        an = 0; ad = 1
        if nclip >= 3:
            x0 = cx[0]; y0 = cy[0]; q0 = cw[0]
            for t in range(1, nclip - 1):
                x1 = cx[t]; y1 = cy[t]; q1 = cw[t]
                x2 = cx[t + 1]; y2 = cy[t + 1]; q2 = cw[t + 1]
                det3 = (x0 * (y1 * q2 - y2 * q1)
                        - y0 * (x1 * q2 - x2 * q1)
                        + q0 * (x1 * y2 - x2 * y1))
                if det3 == 0:
                    continue
                sn = 0; sd = 1
                for j in range(3):
                    if j == 0:
                        mx = x0 * q1 + x1 * q0; my = y0 * q1 + y1 * q0; mw = 2 * q0 * q1
                    elif j == 1:
                        mx = x0 * q2 + x2 * q0; my = y0 * q2 + y2 * q0; mw = 2 * q0 * q2
                    else:
                        mx = x1 * q2 + x2 * q1; my = y1 * q2 + y2 * q1; mw = 2 * q1 * q2
                    whom = w1 * mx + w2 * my + w0v * mw
                    ghom = g1 * mx + g2 * my + g0v * mw
                    num = sn * mw * mw + whom * ghom * sd
                    den = sd * mw * mw
                    if num == 0:
                        sn = 0; sd = 1
                    else:
                        g = gcd(num if num > 0 else -num, den)
                        sn = num // g; sd = den // g
                num = an * (6 * q0 * q1 * q2 * sd) + det3 * sn * ad
                den = ad * 6 * q0 * q1 * q2 * sd
                if num == 0:
                    an = 0; ad = 1
                else:
                    g = gcd(num if num > 0 else -num, den)
                    an = num // g; ad = den // g
        num = an; den = ad * wden * gden * vden ** 4
        if num == 0:
            an = 0; ad = 1
        else:
            g = gcd(num if num > 0 else -num, den)
            an = num // g; ad = den // g

        # L = boundary - volume term
        num = bn * ad - an * bd
        den = bd * ad
        if num == 0:
            out.append((0, 1, bn, bd))
        else:
            g = gcd(num if num > 0 else -num, den)
            out.append((num // g, den // g, bn, bd))
    return out


def lattice_weighted_sum(dim, lows, highs, rows, table, k):
    """See the pure backend for the full contract."""
    if (dim == 2 and 0 < len(rows) <= MAXROWS
            and 0 < len(table) <= MAXROWS):
        done, count, total = _lattice2d_fast(lows, highs, rows, table, k)
        if done:
            return count, total
    return _lattice_generic(dim, lows, highs, rows, table, k)


cdef _lattice2d_fast(lows, highs, rows, table, k):
    cdef long long xlo, xhi, ylo, yhi
    cdef long long m0[MAXROWS]
    cdef long long m1[MAXROWS]
    cdef long long rr[MAXROWS]
    cdef long long a0[MAXROWS]
    cdef long long a1[MAXROWS]
    cdef long long ck[MAXROWS]
    cdef Py_ssize_t nrows = len(rows), npieces = len(table)
    cdef Py_ssize_t ri, pi
    cdef long long x, y, v, best, partial
    cdef long long count = 0
    cdef object total = 0

    # Preflight in object arithmetic: every dot product and weight must
    # stay well inside int64 before anything is narrowed.
    coord = max(abs(lows[0]), abs(highs[0]), abs(lows[1]), abs(highs[1])) + 1
    worst = 0
    for m, r in rows:
        bound = (abs(m[0]) + abs(m[1])) * coord + abs(r)
        if bound > worst:
            worst = bound
    for arow, c in table:
        bound = (abs(arow[0]) + abs(arow[1])) * coord + abs(c) * k
        if bound > worst:
            worst = bound
    if worst >= _I64_GUARD // 2:
        return False, 0, 0

    xlo = lows[0]; xhi = highs[0]; ylo = lows[1]; yhi = highs[1]
    for ri in range(nrows):
        m, r = rows[ri]
        m0[ri] = m[0]; m1[ri] = m[1]; rr[ri] = r
    for pi in range(npieces):
        arow, c = table[pi]
        a0[pi] = arow[0]; a1[pi] = arow[1]; ck[pi] = c * k

    partial = 0
    for x in range(xlo, xhi + 1):
        for y in range(ylo, yhi + 1):
            s = 0
            for ri in range(nrows):
                if m0[ri] * x + m1[ri] * y > rr[ri]:
                    break
            else:
                count += 1
                best = a0[0] * x + a1[0] * y + ck[0]
                for pi in range(1, npieces):
                    v = a0[pi] * x + a1[pi] * y + ck[pi]
                    if v > best:
                        best = v
                partial += best
                if partial > _I64_GUARD or partial < -_I64_GUARD:
                    total += partial
                    partial = 0
    total += partial
    return True, count, total


def _lattice_generic(dim, lows, highs, rows, table, k):
    import itertools

    cdef long long count = 0
    cdef object total = 0
    ranges = [range(lo, hi + 1) for lo, hi in zip(lows, highs)]
    for point in itertools.product(*ranges):
        ok = True
        for m, r in rows:
            s = 0
            for mj, pj in zip(m, point):
                s += mj * pj
            if s > r:
                ok = False
                break
        if not ok:
            continue
        count += 1
        best = None
        for a_row, c in table:
            v = c * k
            for aj, pj in zip(a_row, point):
                v += aj * pj
            if best is None or v > best:
                best = v
        total += best if best is not None else 0
    return count, total

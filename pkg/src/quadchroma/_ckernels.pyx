# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Semantics mirror ``_pykernels`` line for line."""
from libc.stdint cimport int64_t, uint8_t
from libc.stdlib cimport llabs

cdef extern from *:
    """
    #include <stdint.h>
    static inline int qc_orient(int64_t px, int64_t py, int64_t qx, int64_t qy,
                                int64_t rx, int64_t ry) {
        __int128 l = (__int128)(qx - px) * (__int128)(ry - py);
        __int128 r = (__int128)(qy - py) * (__int128)(rx - px);
        return (l > r) - (l < r);
    }
    /* sign of dy/dx - num/den for dx > 0, den > 0 */
    static inline int qc_slope_cmp(int64_t dy, int64_t dx, int64_t num, int64_t den) {
        __int128 l = (__int128)dy * (__int128)den;
        __int128 r = (__int128)num * (__int128)dx;
        return (l > r) - (l < r);
    }
    """
    int qc_orient(int64_t px, int64_t py, int64_t qx, int64_t qy, int64_t rx, int64_t ry) nogil
    int qc_slope_cmp(int64_t dy, int64_t dx, int64_t num, int64_t den) nogil

cdef enum:
    LEFT = 1
    RIGHT = 2
    BOTTOM = 4
    TOP = 8
    BL = LEFT | BOTTOM
    TR = RIGHT | TOP

BACKEND = "cython"


cdef inline bint is_corner(uint8_t s) noexcept nogil:
    return (s & (LEFT | RIGHT)) != 0 and (s & (BOTTOM | TOP)) != 0


def lattice_census(const int64_t[::1] xs, const int64_t[::1] ys, const uint8_t[:, ::1] blue,
                   const uint8_t[::1] sides, bint need_box, Py_ssize_t start, Py_ssize_t stop):
    """Census of 4-subsets whose smallest index lies in ``[start, stop)``.

    Returns (convex, mono, a0, a1, a2, a3, a4, c2, d2, c2_anti, d2_anti, s2).
    """
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j, k, l, a, b, c, d, t, p1, p2, q1, q2
    cdef int oijk, oijl, oikl, ojkl, ncorner, s1, s2
    cdef uint8_t mijk, code1, code2
    cdef Py_ssize_t idx[4]
    cdef int64_t cnt[12]
    for t in range(12):
        cnt[t] = 0
    if stop > n:
        stop = n
    with nogil:
        for i in range(start, stop):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    oijk = qc_orient(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k])
                    if oijk == 0:
                        continue
                    mijk = sides[i] | sides[j] | sides[k]
                    for l in range(k + 1, n):
                        if need_box and (mijk | sides[l]) != 15:
                            continue
                        oijl = qc_orient(xs[i], ys[i], xs[j], ys[j], xs[l], ys[l])
                        if oijl == 0:
                            continue
                        oikl = qc_orient(xs[i], ys[i], xs[k], ys[k], xs[l], ys[l])
                        if oikl == 0:
                            continue
                        ojkl = qc_orient(xs[j], ys[j], xs[k], ys[k], xs[l], ys[l])
                        if ojkl == 0:
                            continue
                        if oijk != oijl and oikl != ojkl:
                            a = i; b = j; c = k; d = l
                        elif oijk != -oikl and oijl != -ojkl:
                            a = i; b = k; c = j; d = l
                        elif oijl != oikl and oijk != ojkl:
                            a = i; b = l; c = j; d = k
                        else:
                            continue
                        cnt[0] += 1
                        if blue[a, b] != blue[c, d]:
                            continue
                        cnt[1] += 1
                        idx[0] = i; idx[1] = j; idx[2] = k; idx[3] = l
                        ncorner = 0
                        for t in range(4):
                            if is_corner(sides[idx[t]]):
                                ncorner += 1
                        cnt[2 + ncorner] += 1
                        if ncorner != 2:
                            continue
                        p1 = -1; p2 = -1; q1 = -1; q2 = -1
                        for t in range(4):
                            if is_corner(sides[idx[t]]):
                                if p1 < 0:
                                    p1 = idx[t]
                                else:
                                    p2 = idx[t]
                            elif q1 < 0:
                                q1 = idx[t]
                            else:
                                q2 = idx[t]
                        code1 = sides[p1] | sides[p2]
                        if code1 != 15:
                            cnt[11] += 1
                            continue
                        s1 = qc_orient(xs[p1], ys[p1], xs[p2], ys[p2], xs[q1], ys[q1])
                        s2 = qc_orient(xs[p1], ys[p1], xs[p2], ys[p2], xs[q2], ys[q2])
                        code2 = sides[p1]
                        if code2 == BL or code2 == TR:
                            cnt[7 if s1 != s2 else 8] += 1
                        else:
                            cnt[9 if s1 != s2 else 10] += 1
    return tuple([cnt[t] for t in range(12)])


cdef inline int seg_blue(int64_t dx, int64_t dy, const int64_t* r) noexcept nogil:
    # r = lo_kind, lo_num, lo_den, lo_open, hi_kind, hi_num, hi_den, hi_open, inside_blue, vertical_blue
    cdef int s
    if dx == 0:
        return <int>r[9]
    if dx < 0:
        dx = -dx
        dy = -dy
    if r[0] == 0:
        s = qc_slope_cmp(dy, dx, r[1], r[2])
        if s < 0 or (s == 0 and r[3]):
            return 1 - <int>r[8]
    if r[4] == 0:
        s = qc_slope_cmp(dy, dx, r[5], r[6])
        if s > 0 or (s == 0 and r[7]):
            return 1 - <int>r[8]
    return <int>r[8]


cdef inline bint on_boundary(int64_t dx, int64_t dy, const int64_t* r) noexcept nogil:
    if dx == 0:
        return False
    if dx < 0:
        dx = -dx
        dy = -dy
    if r[0] == 0 and qc_slope_cmp(dy, dx, r[1], r[2]) == 0:
        return True
    if r[4] == 0 and qc_slope_cmp(dy, dx, r[5], r[6]) == 0:
        return True
    return False


def dyadic_census(const int64_t[:, ::1] q, const int64_t[:, ::1] rules,
                  int64_t[::1] mono, int64_t[::1] discord, int64_t[::1] hits):
    """Classify quadruples (rows x0,y0,..,x3,y3) under every rule at once.

    Accumulates into ``mono``/``discord``/``hits`` (one slot per rule;
    discord counts samples whose mono flag differs from rule 0) and returns
    (degenerate, convex) counts.
    """
    cdef Py_ssize_t n = q.shape[0], nr = rules.shape[0]
    cdef Py_ssize_t s, r, a, b, c, d
    cdef int o012, o013, o023, o123, m, m0
    cdef int64_t degenerate = 0, convex = 0
    cdef int64_t dx1, dy1, dx2, dy2
    cdef const int64_t* row
    cdef const int64_t* rp
    with nogil:
        for s in range(n):
            row = &q[s, 0]
            o012 = qc_orient(row[0], row[1], row[2], row[3], row[4], row[5])
            o013 = qc_orient(row[0], row[1], row[2], row[3], row[6], row[7])
            o023 = qc_orient(row[0], row[1], row[4], row[5], row[6], row[7])
            o123 = qc_orient(row[2], row[3], row[4], row[5], row[6], row[7])
            if o012 == 0 or o013 == 0 or o023 == 0 or o123 == 0:
                degenerate += 1
                continue
            if o012 != o013 and o023 != o123:
                a = 0; b = 1; c = 2; d = 3
            elif o012 != -o023 and o013 != -o123:
                a = 0; b = 2; c = 1; d = 3
            elif o013 != o023 and o012 != o123:
                a = 0; b = 3; c = 1; d = 2
            else:
                continue
            convex += 1
            dx1 = row[2 * b] - row[2 * a]
            dy1 = row[2 * b + 1] - row[2 * a + 1]
            dx2 = row[2 * d] - row[2 * c]
            dy2 = row[2 * d + 1] - row[2 * c + 1]
            m0 = 0
            for r in range(nr):
                rp = &rules[r, 0]
                m = seg_blue(dx1, dy1, rp) == seg_blue(dx2, dy2, rp)
                if r == 0:
                    m0 = m
                mono[r] += m
                discord[r] += m != m0
                if on_boundary(dx1, dy1, rp) or on_boundary(dx2, dy2, rp):
                    hits[r] += 1
    return degenerate, convex


def triangle_lattice_count(int64_t x0, int64_t y0, int64_t x1, int64_t y1, int64_t x2, int64_t y2,
                           int64_t scale, int64_t xlo, int64_t xhi, int64_t ylo, int64_t yhi):
    """Integer points (x, y) in the closed triangle with vertices (xi/scale, yi/scale).

    Tests every point of the integer range [xlo, xhi] x [ylo, yhi].
    """
    cdef int64_t x, y, px, py, count = 0
    cdef int64_t ax = 0, ay = 0, bx = 0, by = 0, t
    cdef int o = qc_orient(x0, y0, x1, y1, x2, y2)
    with nogil:
        if o < 0:
            t = x1; x1 = x2; x2 = t
            t = y1; y1 = y2; y2 = t
        if o == 0:
            # collinear: the extreme pair spans the segment
            # along one line, L1 length orders segments like Euclidean length
            ax = x0; ay = y0; bx = x1; by = y1
            if llabs(x2 - x0) + llabs(y2 - y0) > llabs(bx - ax) + llabs(by - ay):
                bx = x2; by = y2
            if llabs(x2 - x1) + llabs(y2 - y1) > llabs(bx - ax) + llabs(by - ay):
                ax = x1; ay = y1; bx = x2; by = y2
        for x in range(xlo, xhi + 1):
            px = x * scale
            for y in range(ylo, yhi + 1):
                py = y * scale
                if o != 0:
                    if (qc_orient(x0, y0, x1, y1, px, py) >= 0 and qc_orient(x1, y1, x2, y2, px, py) >= 0
                            and qc_orient(x2, y2, x0, y0, px, py) >= 0):
                        count += 1
                elif ax == bx and ay == by:
                    if px == ax and py == ay:
                        count += 1
                elif qc_orient(ax, ay, bx, by, px, py) == 0:
                    count += 1
    return count

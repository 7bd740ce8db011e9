"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Used when the extension is not built, and as a second implementation the
compiled one is tested against.  Python integers are unbounded, so the
128-bit intermediates of the compiled code need no special handling here.
"""
BACKEND = "python"

_LEFT, _RIGHT, _BOTTOM, _TOP = 1, 2, 4, 8
_BL, _TR = _LEFT | _BOTTOM, _RIGHT | _TOP


def _orient(px, py, qx, qy, rx, ry):
    v = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return (v > 0) - (v < 0)


def _is_corner(s):
    return bool(s & (_LEFT | _RIGHT)) and bool(s & (_BOTTOM | _TOP))


def _pairing(o012, o013, o023, o123):
    """Index pairs of the crossing diagonals, or None for a concave set."""
    if o012 != o013 and o023 != o123:
        return (0, 1), (2, 3)
    if o012 != -o023 and o013 != -o123:
        return (0, 2), (1, 3)
    if o013 != o023 and o012 != o123:
        return (0, 3), (1, 2)
    return None


def lattice_census(xs, ys, blue, sides, need_box, start, stop):
    xs, ys, sides = list(map(int, xs)), list(map(int, ys)), list(map(int, sides))
    blue = [list(map(int, row)) for row in blue]
    n = len(xs)
    cnt = [0] * 12
    for i in range(start, min(stop, n)):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                oijk = _orient(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k])
                if oijk == 0:
                    continue
                mijk = sides[i] | sides[j] | sides[k]
                for l in range(k + 1, n):
                    if need_box and (mijk | sides[l]) != 15:
                        continue
                    oijl = _orient(xs[i], ys[i], xs[j], ys[j], xs[l], ys[l])
                    oikl = _orient(xs[i], ys[i], xs[k], ys[k], xs[l], ys[l])
                    ojkl = _orient(xs[j], ys[j], xs[k], ys[k], xs[l], ys[l])
                    if oijl == 0 or oikl == 0 or ojkl == 0:
                        continue
                    quad = (i, j, k, l)
                    pair = _pairing(oijk, oijl, oikl, ojkl)
                    if pair is None:
                        continue
                    (a, b), (c, d) = ((quad[u], quad[v]) for u, v in pair)
                    cnt[0] += 1
                    if blue[a][b] != blue[c][d]:
                        continue
                    cnt[1] += 1
                    corners = [p for p in quad if _is_corner(sides[p])]
                    cnt[2 + len(corners)] += 1
                    if len(corners) != 2:
                        continue
                    p1, p2 = corners
                    q1, q2 = (p for p in quad if p not in corners)
                    if sides[p1] | sides[p2] != 15:
                        cnt[11] += 1
                        continue
                    s1 = _orient(xs[p1], ys[p1], xs[p2], ys[p2], xs[q1], ys[q1])
                    s2 = _orient(xs[p1], ys[p1], xs[p2], ys[p2], xs[q2], ys[q2])
                    base = 7 if sides[p1] in (_BL, _TR) else 9
                    cnt[base + (s1 == s2)] += 1
    return tuple(cnt)


def _seg_blue(dx, dy, r):
    lo_kind, lo_num, lo_den, lo_open, hi_kind, hi_num, hi_den, hi_open, inside, vertical = r
    if dx == 0:
        return vertical
    if dx < 0:
        dx, dy = -dx, -dy
    if lo_kind == 0:
        lhs, rhs = dy * lo_den, lo_num * dx
        if lhs < rhs or (lo_open and lhs == rhs):
            return 1 - inside
    if hi_kind == 0:
        lhs, rhs = dy * hi_den, hi_num * dx
        if lhs > rhs or (hi_open and lhs == rhs):
            return 1 - inside
    return inside


def _on_boundary(dx, dy, r):
    if dx == 0:
        return False
    if dx < 0:
        dx, dy = -dx, -dy
    return (r[0] == 0 and dy * r[2] == r[1] * dx) or (r[4] == 0 and dy * r[6] == r[5] * dx)


def dyadic_census(q, rules, mono, discord, hits):
    rules = [tuple(map(int, r)) for r in rules]
    degenerate = convex = 0
    for row in q:
        x0, y0, x1, y1, x2, y2, x3, y3 = map(int, row)
        pts = ((x0, y0), (x1, y1), (x2, y2), (x3, y3))
        o012 = _orient(x0, y0, x1, y1, x2, y2)
        o013 = _orient(x0, y0, x1, y1, x3, y3)
        o023 = _orient(x0, y0, x2, y2, x3, y3)
        o123 = _orient(x1, y1, x2, y2, x3, y3)
        if 0 in (o012, o013, o023, o123):
            degenerate += 1
            continue
        pair = _pairing(o012, o013, o023, o123)
        if pair is None:
            continue
        convex += 1
        (a, b), (c, d) = pair
        dx1, dy1 = pts[b][0] - pts[a][0], pts[b][1] - pts[a][1]
        dx2, dy2 = pts[d][0] - pts[c][0], pts[d][1] - pts[c][1]
        m0 = 0
        for idx, r in enumerate(rules):
            m = int(_seg_blue(dx1, dy1, r) == _seg_blue(dx2, dy2, r))
            if idx == 0:
                m0 = m
            mono[idx] += m
            discord[idx] += m != m0
            if _on_boundary(dx1, dy1, r) or _on_boundary(dx2, dy2, r):
                hits[idx] += 1
    return degenerate, convex


def triangle_lattice_count(x0, y0, x1, y1, x2, y2, scale, xlo, xhi, ylo, yhi):
    o = _orient(x0, y0, x1, y1, x2, y2)
    if o < 0:
        x1, y1, x2, y2 = x2, y2, x1, y1
    if o == 0:
        verts = ((x0, y0), (x1, y1), (x2, y2))
        (ax, ay), (bx, by) = max(
            ((verts[u], verts[v]) for u, v in ((0, 1), (0, 2), (1, 2))),
            key=lambda e: abs(e[1][0] - e[0][0]) + abs(e[1][1] - e[0][1]),
        )
    count = 0
    for x in range(xlo, xhi + 1):
        px = x * scale
        for y in range(ylo, yhi + 1):
            py = y * scale
            if o != 0:
                count += (_orient(x0, y0, x1, y1, px, py) >= 0 and _orient(x1, y1, x2, y2, px, py) >= 0
                          and _orient(x2, y2, x0, y0, px, py) >= 0)
            elif (ax, ay) == (bx, by):
                count += (px, py) == (ax, ay)
            else:
                count += _orient(ax, ay, bx, by, px, py) == 0
    return count

"""Slow, independent reference computations used to freeze expected values.

Nothing here imports from the package. Crossing is decided by solving the
2x2 linear system for the intersection parameters with exact fractions, and
colors are decided from a Fraction slope, so none of the sign-test shortcuts
of the production code are shared.
"""
from fractions import Fraction
from itertools import combinations


def intersection_params(a, b, c, d):
    """Return (s, t) with a + s(b-a) = c + t(d-c), or None when parallel."""
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    if den == 0:
        return None
    qx, qy = c[0] - a[0], c[1] - a[1]
    s = Fraction(qx * sy - qy * sx, den)
    t = Fraction(qx * ry - qy * rx, den)
    return s, t


def open_segments_cross(a, b, c, d):
    st = intersection_params(a, b, c, d)
    if st is None:
        return False
    s, t = st
    return 0 < s < 1 and 0 < t < 1


def collinear(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def degenerate(pts):
    if len(set(map(tuple, pts))) < len(pts):
        return True
    return any(collinear(*t) for t in combinations(pts, 3))


def crossing_pairing(pts):
    """The one pairing whose segments cross, or None (concave/degenerate)."""
    if degenerate(pts):
        return None
    a, b, c, d = pts
    for (p, q), (r, s) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if open_segments_cross(p, q, r, s):
            return (p, q), (r, s)
    return None


def chi_slope_blue(p, q):
    """Blue iff vertical or slope <= 0."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx == 0:
        return True
    return Fraction(dy, dx) <= 0


def mono(pts, blue=chi_slope_blue):
    pair = crossing_pairing(pts)
    if pair is None:
        return False
    (p, q), (r, s) = pair
    return blue(p, q) == blue(r, s)


def grid(w, h):
    return [(x, y) for y in range(h + 1) for x in range(w + 1)]


def box_census(w, h, blue=chi_slope_blue):
    """All counts for quadruples whose bounding box is exactly [0,w]x[0,h]."""
    corners = {(0, 0): "BL", (w, h): "TR", (0, h): "TL", (w, 0): "BR"}
    out = dict(a_total=0, a=[0] * 5, convex=0, c2=0, d2=0, s2=0, c2_anti=0, d2_anti=0)
    for S in combinations(grid(w, h), 4):
        xs = [p[0] for p in S]
        ys = [p[1] for p in S]
        if min(xs) != 0 or max(xs) != w or min(ys) != 0 or max(ys) != h:
            continue
        if crossing_pairing(S) is None:
            continue
        out["convex"] += 1
        if not mono(S, blue):
            continue
        out["a_total"] += 1
        cs = [p for p in S if p in corners]
        out["a"][len(cs)] += 1
        if len(cs) == 2:
            names = {corners[p] for p in cs}
            others = [p for p in S if p not in corners]
            if names in ({"BL", "TR"}, {"TL", "BR"}):
                p1, p2 = cs
                # side of the corner diagonal via signed area, as fractions
                sides = [Fraction((p2[0] - p1[0]) * (o[1] - p1[1]) - (p2[1] - p1[1]) * (o[0] - p1[0])) for o in others]
                same = (sides[0] > 0) == (sides[1] > 0)
                key = ("d2" if same else "c2") + ("" if names == {"BL", "TR"} else "_anti")
                out[key] += 1
            else:
                out["s2"] += 1
    return out


def grid_census(m, blue=chi_slope_blue):
    total = convex = mono_count = 0
    for S in combinations(grid(m, m), 4):
        total += 1
        if crossing_pairing(S) is not None:
            convex += 1
            if mono(S, blue):
                mono_count += 1
    return total, convex, mono_count


def contained_mono(w, h, blue=chi_slope_blue):
    if w < 0 or h < 0:
        return 0
    return sum(1 for S in combinations(grid(w, h), 4) if mono(S, blue))


def lattice_points_in_triangle(v1, v2, v3):
    """Count integer points of a closed triangle by per-column exact y ranges."""
    import math

    vs = [tuple(map(Fraction, v)) for v in (v1, v2, v3)]
    xlo = math.ceil(min(v[0] for v in vs))
    xhi = math.floor(max(v[0] for v in vs))
    count = 0
    for x in range(xlo, xhi + 1):
        ys = []
        for p, q in ((vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])):
            if p[0] == q[0]:
                if p[0] == x:
                    ys += [p[1], q[1]]
                continue
            lo, hi = sorted((p[0], q[0]))
            if lo <= x <= hi:
                ys.append(p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0]))
        if ys:
            count += max(0, math.floor(max(ys)) - math.ceil(min(ys)) + 1)
    return count

"""Planar polygon models of translation surfaces with translation gluings.

A surface is a list of convex polygons (counterclockwise vertex loops
with exact FieldElement coordinates) plus a pairing of parallel edges.
Paired edges carry opposite edge vectors and are identified by the
unique translation matching them up.  All constructions and the exact
straight-line tracer live here; first-return maps are built on top of
this in the iet module.
"""

import math
from fractions import Fraction

from . import polyq
from .numfield import QQ, AlgebraicField, FieldElement, field_for_ngon, parse_element, parse_field


class SaddleConnectionError(RuntimeError):
    """A trace ran into a cone point."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


def two_cos_multiple(c, k):
    """2cos(k*t) as a polynomial in c = 2cos(t), by the Chebyshev recursion."""
    k = abs(k)
    field = c.field
    p0, p1 = field.from_rational(2), c
    if k == 0:
        return p0
    for _ in range(k - 1):
        p0, p1 = p1, c * p1 - p0
    return p1


class SurfaceModel:

    def __init__(self, field, polygons, gluings, check=True):
        self.field = field
        self.polygons = tuple(tuple((x, y) for (x, y) in poly) for poly in polygons)
        self.gluings = tuple((tuple(a), tuple(b)) for a, b in gluings)
        self._partner = {}
        self._pair_index = {}
        for k, (ea, eb) in enumerate(self.gluings):
            for e, o in ((ea, eb), (eb, ea)):
                if e in self._partner:
                    raise ValueError("edge glued twice: %s" % (e,))
                self._partner[e] = o
                self._pair_index[e] = (k, 1 if e == ea else -1)
        if check:
            self.validate()

    # -- geometry accessors ----------------------------------------------

    def n_edges(self, p):
        return len(self.polygons[p])

    def vertex(self, p, i):
        return self.polygons[p][i % self.n_edges(p)]

    def edge_vector(self, p, e):
        a = self.vertex(p, e)
        b = self.vertex(p, e + 1)
        return (b[0] - a[0], b[1] - a[1])

    def partner(self, p, e):
        return self._partner[(p, e)]

    def pair_index(self, p, e):
        """(pair number, +1 if (p, e) is the pair's oriented representative)."""
        return self._pair_index[(p, e)]

    def crossing_translation(self, p, e):
        """Translation applied to coordinates when leaving through edge (p, e)."""
        p2, e2 = self.partner(p, e)
        a = self.vertex(p, e)
        b2 = self.vertex(p2, e2 + 1)
        return (b2[0] - a[0], b2[1] - a[1])

    def area(self):
        total = self.field.zero()
        for poly in self.polygons:
            acc = self.field.zero()
            n = len(poly)
            for i in range(n):
                x1, y1 = poly[i]
                x2, y2 = poly[(i + 1) % n]
                acc = acc + (x1 * y2 - x2 * y1)
            total = total + acc
        return total * Fraction(1, 2)

    # -- validation --------------------------------------------------------

    def validate(self):
        for p, poly in enumerate(self.polygons):
            n = len(poly)
            if n < 3:
                raise ValueError("degenerate polygon")
            for i in range(n):
                v1 = self.edge_vector(p, i)
                v2 = self.edge_vector(p, i + 1)
                if _cross(v1, v2).sign() <= 0:
                    raise ValueError("polygon %d is not strictly convex ccw" % p)
        for p in range(len(self.polygons)):
            for e in range(self.n_edges(p)):
                if (p, e) not in self._partner:
                    raise ValueError("unglued edge (%d, %d)" % (p, e))
                p2, e2 = self.partner(p, e)
                v = self.edge_vector(p, e)
                w = self.edge_vector(p2, e2)
                if not ((v[0] + w[0]).is_zero() and (v[1] + w[1]).is_zero()):
                    raise ValueError("glued edges are not opposite translates")

    def cone_angles(self):
        """Per vertex class: total angle / (2*pi), by the corner walk.

        Corner (p, i) is the sector at vertex i between edges i-1 and i.
        Rotating counterclockwise across edge i lands in the partner's
        corner at the far end of the glued edge.
        """
        seen = {}
        out = []
        for p in range(len(self.polygons)):
            for i in range(self.n_edges(p)):
                if (p, i) in seen:
                    continue
                total = 0.0
                cur = (p, i)
                corners = []
                while cur not in seen:
                    seen[cur] = len(out)
                    corners.append(cur)
                    cp, ci = cur
                    vin = self.edge_vector(cp, ci - 1)
                    vout = self.edge_vector(cp, ci)
                    ain = math.atan2(float(-vin[1]), float(-vin[0]))
                    aout = math.atan2(float(vout[1]), float(vout[0]))
                    ang = (ain - aout) % (2 * math.pi)
                    total += ang
                    p2, e2 = self.partner(cp, ci)
                    cur = (p2, (e2 + 1) % self.n_edges(p2))
                k = total / (2 * math.pi)
                out.append((round(k), corners))
                if abs(k - round(k)) > 1e-7:
                    raise ValueError("cone angle is not a multiple of 2*pi")
        return out

    # -- affine action ------------------------------------------------------

    def apply_matrix(self, m):
        """Image under an invertible 2x2 matrix of FieldElements (row pairs)."""
        (a, b), (c, d) = m
        det = a * d - b * c
        if det.is_zero():
            raise ValueError("singular matrix")
        if det.sign() < 0:
            raise ValueError("orientation-reversing matrices are not supported")
        polys = [[(a * x + b * y, c * x + d * y) for (x, y) in poly]
                 for poly in self.polygons]
        return SurfaceModel(self.field, polys, self.gluings)

    # -- traces ---------------------------------------------------------------

    def vertex_germs(self, d):
        """(polygon, corner) pairs where direction d points strictly inside."""
        out = []
        for p in range(len(self.polygons)):
            for i in range(self.n_edges(p)):
                vout = self.edge_vector(p, i)
                vin = self.edge_vector(p, i - 1)
                if _cross(vout, d).sign() > 0 and _cross(d, (-vin[0], -vin[1])).sign() > 0:
                    out.append((p, i))
        return out

    def ray_exit(self, p, pt, d):
        """First boundary crossing of pt + s*d inside polygon p, s > 0.

        Returns (s, edge, r) with r the position along the edge in [0, 1].
        Raises SaddleConnectionError when the exit is a polygon vertex.
        """
        best = None
        for e in range(self.n_edges(p)):
            A = self.vertex(p, e)
            vec = self.edge_vector(p, e)
            delta = _cross(d, vec)
            if delta.is_zero():
                continue
            b = (A[0] - pt[0], A[1] - pt[1])
            s = _cross(b, vec) / delta
            if s.sign() <= 0:
                continue
            r = _cross(b, d) / delta
            rs = r.sign()
            r1 = (r - 1).sign()
            if rs < 0 or r1 > 0:
                continue
            if best is None or (s - best[0]).sign() < 0:
                best = (s, e, r, rs == 0 or r1 == 0)
        if best is None:
            raise RuntimeError("ray never exits polygon (inconsistent data)")
        s, e, r, at_vertex = best
        if at_vertex:
            raise SaddleConnectionError(
                "trajectory hits a cone point leaving polygon %d edge %d" % (p, e),
                where=(p, e, r))
        return s, e, r

    def step(self, p, pt, d):
        """Advance to the next polygon; returns (p2, pt2, s, pair, sign)."""
        s, e, _ = self.ray_exit(p, pt, d)
        p2, _ = self.partner(p, e)
        tr = self.crossing_translation(p, e)
        pt2 = (pt[0] + s * d[0] + tr[0], pt[1] + s * d[1] + tr[1])
        k, orient = self.pair_index(p, e)
        vec = self.edge_vector(p, e)
        sgn = orient * _cross(d, vec).sign()
        return p2, pt2, s, k, sgn

    # -- serialization ---------------------------------------------------------

    def serialize(self):
        lines = [self.field.serialize()]
        for poly in self.polygons:
            coords = " ".join("%s:%s" % (x.serialize().replace(" ", ""),
                                         y.serialize().replace(" ", ""))
                              for (x, y) in poly)
            lines.append("polygon " + coords)
        for (pa, ea), (pb, eb) in self.gluings:
            lines.append("glue %d.%d %d.%d" % (pa, ea, pb, eb))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text):
        field = None
        polys = []
        glues = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("field{"):
                field = parse_field(line)
            elif line.startswith("polygon"):
                pts = []
                for tok in line.split()[1:]:
                    xs, ys = tok.split(":")
                    pts.append((parse_element(field, xs), parse_element(field, ys)))
                polys.append(pts)
            elif line.startswith("glue"):
                a, b = line.split()[1:]
                pa, ea = a.split(".")
                pb, eb = b.split(".")
                glues.append(((int(pa), int(ea)), (int(pb), int(eb))))
        return cls(field, polys, glues)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


# -- constructors -----------------------------------------------------------


def square_torus():
    """Unit square with opposite sides identified."""
    K = QQ
    z, o = K.zero(), K.one()
    poly = [(z, z), (o, z), (o, o), (z, o)]
    glues = [((0, 0), (0, 2)), ((0, 1), (0, 3))]
    return SurfaceModel(K, [poly], glues)


def ngon_coordinate_field(n):
    """Field containing all vertex coordinates of the regular n-gon chain."""
    m = 4 * n if n % 2 else 2 * n
    p = polyq.cos2pi_minpoly(m)
    hint = 2 * math.cos(2 * math.pi / m)
    return AlgebraicField([int(c) for c in p], embedding_hint=hint,
                          check_irreducible=polyq.deg(p) <= 6)


def _ngon_vertices(field, n, parity_odd):
    """Vertices of the regular n-gon with base edge (0,0)->(1,0), ccw.

    The field generator is 2cos(pi/(2n)) for odd n and 2cos(pi/n) for
    even n; edge direction angles are integer multiples of that base
    angle, so every coordinate is a Chebyshev combination of the
    generator.
    """
    c = field.gen()
    half = Fraction(1, 2)
    verts = [(field.zero(), field.zero())]
    x, y = field.zero(), field.zero()
    for j in range(n - 1):
        if parity_odd:
            cosj = two_cos_multiple(c, 4 * j) * half
            sinj = two_cos_multiple(c, abs(n - 4 * j)) * half
        else:
            cosj = two_cos_multiple(c, 2 * j) * half
            sinj = two_cos_multiple(c, abs(n // 2 - 2 * j)) * half
        x = x + cosj
        y = y + sinj
        verts.append((x, y))
    return verts


def build_double_ngon(n):
    """Two regular n-gons sharing the unit base edge, opposite-edge gluing."""
    if n < 5 or n % 2 == 0:
        if n % 2 == 0:
            return build_even_ngon(n)
        raise ValueError("odd n >= 5 required")
    K = ngon_coordinate_field(n)
    P0 = _ngon_vertices(K, n, True)
    one = K.one()
    P1 = [(one - x, K.zero() - y) for (x, y) in P0]
    glues = [((0, j), (1, j)) for j in range(n)]
    return SurfaceModel(K, [P0, P1], glues)


def build_even_ngon(n):
    """Single regular n-gon with opposite sides identified (n even)."""
    if n < 4 or n % 2:
        raise ValueError("even n >= 4 required")
    K = ngon_coordinate_field(n)
    P0 = _ngon_vertices(K, n, False)
    glues = [((0, j), (0, j + n // 2)) for j in range(n // 2)]
    return SurfaceModel(K, [P0], glues)


def _rect(field, x0, x1, y0, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def build_staircase_heptagon(field=None):
    """The five-rectangle staircase model in the orbit of the double heptagon.

    Rectangle columns are glued into vertical cylinders and rows into
    horizontal cylinders; dimensions u = a - 1 and y = a^2 - a - 1 with
    a = 2cos(pi/7).
    """
    K = field or field_for_ngon(7)
    a = K.gen()
    z, o = K.zero(), K.one()
    y = a * a - a - 1
    polys = [
        _rect(K, z, o, z, o),          # 0: unit square
        _rect(K, z, o, o, a),          # 1: above the square
        _rect(K, z - y, z, o, a),      # 2: top-left
        _rect(K, o, a, z, o),          # 3: right of the square
        _rect(K, o, a, z - y, z),      # 4: bottom-right
    ]
    # rectangle edge order: 0 bottom, 1 right, 2 top, 3 left
    glues = [
        ((0, 2), (1, 0)),  # internal cuts
        ((2, 1), (1, 3)),
        ((0, 1), (3, 3)),
        ((3, 0), (4, 2)),
        ((1, 2), (0, 0)),  # vertical cylinders, column by column
        ((2, 2), (2, 0)),
        ((4, 0), (3, 2)),
        ((0, 3), (3, 1)),  # horizontal cylinders, row by row
        ((2, 3), (1, 1)),
        ((4, 3), (4, 1)),
    ]
    return SurfaceModel(K, polys, glues)


def staircase_transition_matrix(n, field):
    """C_n with exact entries: omega_n = C_n . S_n (staircase image)."""
    c = field.gen()
    half = Fraction(1, 2)
    if n % 2:
        # generator is 2cos(pi/(2n)); tan(pi/(2n)) = cos((n-1)pi/(2n)) / cos(pi/(2n))
        t = two_cos_multiple(c, n - 1) / c
        one = field.one()
        return ((one, t), (-one, t))
    k = n // 2
    if k % 2 == 0:
        # n = 0 mod 4; generator 2cos(pi/n): tan(pi/n) = cos((k-1)pi/n)/cos(pi/n)
        t = two_cos_multiple(c, k - 1) / c
        return ((t, -field.one()), (field.zero(), field.one()))
    sec = field.from_rational(2) / c
    sin = two_cos_multiple(c, k - 1) * half
    cos = c * half
    return ((field.zero(), -sec), (sin, -cos))


def build_staircase(n):
    """Staircase model omega_n.

    n = 7 returns the explicit rectangle model; other n return the exact
    affine image C_n . S_n, which is the same translation surface in its
    polygon presentation.
    """
    if n == 7:
        return build_staircase_heptagon()
    if n < 4:
        raise ValueError("n >= 4 required")
    S = build_double_ngon(n) if n % 2 else build_even_ngon(n)
    C = staircase_transition_matrix(n, S.field)
    return S.apply_matrix(C)


# -- Veech group words --------------------------------------------------------


def veech_generators(n, field):
    """Parabolic generators (A, B) of the Veech group of omega_n."""
    one, zero = field.one(), field.zero()
    if n % 2:
        # a_n = 2cos(pi/n); the surface coordinate field may be larger,
        # in which case a_n = 2cos(2 * base angle)
        a = _an_in(field, n)
        A = ((one, a), (zero, one))
        B = ((zero, -one), (one, zero))
        return A, B
    a = _an_in(field, n)
    A = ((one, field.from_rational(2)), (zero, one))
    B = ((one, zero), (one + a * Fraction(1, 2), one))
    return A, B


def _an_in(field, n):
    """The holonomy generator a_n expressed in `field`.

    In the minimal field Q(a_n) this is the generator itself; in an
    n-gon coordinate field it is 2cos of twice the base angle.
    """
    target = field_for_ngon(n)
    if field.same_field(target):
        return field.gen()
    return two_cos_multiple(field.gen(), 2)


def veech_word_matrix(word, n, field=None):
    """Evaluate a Veech-group word, product taken left to right.

    `word` is a sequence of (tag, exponent) pairs with tags 'A' and 'B'.
    """
    if not word:
        raise ValueError("empty word")
    K = field or field_for_ngon(n)
    A, B = veech_generators(n, K)
    gens = {"A": A, "B": B}
    out = _mat_identity(K)
    for tag, exp in word:
        g = gens[tag]
        if exp < 0:
            g = _mat_inv2(g, K)
            exp = -exp
        for _ in range(exp):
            out = _mat_mul2(out, g)
    return out


def _mat_identity(K):
    return ((K.one(), K.zero()), (K.zero(), K.one()))


def _mat_mul2(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _mat_inv2(m, K):
    (a, b), (c, d) = m
    det = a * d - b * c
    inv = det.inverse()
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def mat2_det(m):
    (a, b), (c, d) = m
    return a * d - b * c

"""Interval exchange transformations with exact data.

Covers first-return maps of linear flows on polygonal surface models
(zippered-rectangle data: lengths, heights, homology crossing vectors),
labeled Rauzy induction, and self-similarity detection producing the
associated substitution.

Conventions, fixed once and used everywhere:
  * an IET is a pair of label rows (top = domain order, bottom = image
    order) plus exact lengths per label; intervals are half-open [x, x+l),
    which resolves orbits hitting discontinuities to the right;
  * for a first-return system, lengths are coefficients along the
    transversal direction vector and heights are return times in units
    of the flow direction vector, so that
        sum(length_i * height_i) * |det[d_t, d_f]| = surface area
    exactly.
"""

from fractions import Fraction

from .numfield import FieldElement
from .substitution import Substitution
from .surface import SaddleConnectionError, SurfaceModel, _cross


class RauzyError(ValueError):
    pass


class IET:
    def __init__(self, field, lengths, bottom, heights=None, top=None):
        self.field = field
        self.lengths = dict(lengths)
        k = len(self.lengths)
        self.bottom = tuple(bottom)
        self.top = tuple(top) if top is not None else tuple(range(1, k + 1))
        if sorted(self.top) != sorted(self.bottom) or len(set(self.top)) != k:
            raise ValueError("rows must be permutations of the same labels")
        self.heights = dict(heights) if heights else None
        for lab in self.top:
            if self.lengths[lab].sign() <= 0:
                raise ValueError("lengths must be positive")

    @property
    def k(self):
        return len(self.top)

    def permutation(self):
        """Image order as printed in two-line notation under top order 1..k."""
        return self.bottom

    def is_irreducible(self):
        seen = set()
        for m in range(self.k - 1):
            seen.add(self.bottom[m])
            if seen == set(self.top[:m + 1]):
                return False
        return True

    def total_length(self):
        acc = self.field.zero()
        for lab in self.top:
            acc = acc + self.lengths[lab]
        return acc

    def domain_starts(self):
        out = {}
        acc = self.field.zero()
        for lab in self.top:
            out[lab] = acc
            acc = acc + self.lengths[lab]
        return out

    def image_starts(self):
        out = {}
        acc = self.field.zero()
        for lab in self.bottom:
            out[lab] = acc
            acc = acc + self.lengths[lab]
        return out

    def label_at(self, x):
        acc = self.field.zero()
        for lab in self.top:
            nxt = acc + self.lengths[lab]
            if (x - acc).sign() >= 0 and (x - nxt).sign() < 0:
                return lab
            acc = nxt
        raise ValueError("point outside the domain")

    def apply(self, x):
        lab = self.label_at(x)
        return x + (self.image_starts()[lab] - self.domain_starts()[lab]), lab

    def copy(self):
        return IET(self.field, self.lengths, self.bottom,
                   heights=self.heights, top=self.top)

    def __repr__(self):
        return "IET(k=%d, bottom=%s)" % (self.k, list(self.bottom))

    def serialize(self):
        lines = [self.field.serialize(),
                 "perm " + " ".join(str(l) for l in self.bottom),
                 "len " + " ".join(self.lengths[l].serialize().replace(" ", "")
                                   for l in self.top)]
        if self.heights:
            lines.append("ht " + " ".join(self.heights[l].serialize().replace(" ", "")
                                          for l in self.top))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text):
        from .numfield import parse_element, parse_field
        field = bottom = lens = hts = None
        for line in text.strip().splitlines():
            line = line.strip()
            if line.startswith("field{"):
                field = parse_field(line)
            elif line.startswith("perm"):
                bottom = [int(v) for v in line.split()[1:]]
            elif line.startswith("len"):
                lens = [parse_element(field, t) for t in line.split()[1:]]
            elif line.startswith("ht"):
                hts = [parse_element(field, t) for t in line.split()[1:]]
        lengths = {i + 1: v for i, v in enumerate(lens)}
        heights = {i + 1: v for i, v in enumerate(hts)} if hts else None
        return cls(field, lengths, bottom, heights=heights)


# -- first-return derivation ---------------------------------------------------


class Transversal:
    """Segment along `direction` from a surface point, measured in
    coefficients of the direction vector.  `length` None means: extend to
    the canonical self-similar length (first hit of the segment's own ray
    by a backward singular leaf)."""

    def __init__(self, poly, point, direction, length=None):
        self.poly = poly
        self.point = tuple(point)
        self.direction = tuple(direction)
        self.length = length


class ReturnSystem:
    """First-return IET plus the geometric bookkeeping behind it."""

    def __init__(self, iet, surface_model, transversal, flow_dir, pieces,
                 piece_crossings, cuts, returns, gamma_crossings):
        self.iet = iet
        self.surface = surface_model
        self.transversal = transversal
        self.flow_dir = tuple(flow_dir)
        self.pieces = pieces
        self.piece_crossings = piece_crossings
        self.cuts = cuts
        self.returns = returns
        self.gamma_crossings = gamma_crossings

    def omega_matrix(self):
        """Intersection pairings <gamma_i, gamma_j> of the first-return loops.

        This is the translation-structure matrix of the permutation:
        Omega[i][j] = [pos_b(j) < pos_b(i)] - [j < i] in top order.
        """
        bot = self.iet.bottom
        top = self.iet.top
        pos_b = {lab: i for i, lab in enumerate(bot)}
        pos_t = {lab: i for i, lab in enumerate(top)}
        k = self.iet.k
        out = [[0] * k for _ in range(k)]
        for i, li in enumerate(top):
            for j, lj in enumerate(top):
                out[i][j] = (1 if pos_b[lj] < pos_b[li] else 0) - (1 if j < i else 0)
        return out

    def gamma_holonomies(self):
        """Holonomy vector of each first-return loop (flow leg + closing leg)."""
        d_f = self.flow_dir
        d_t = self.transversal.direction
        out = []
        mids = self._midpoints()
        for lab in self.iet.top:
            h, t_ret, _ = self.returns[lab]
            dt = mids[lab] - t_ret
            out.append((h * d_f[0] + dt * d_t[0], h * d_f[1] + dt * d_t[1]))
        return out

    def _midpoints(self):
        starts = self.iet.domain_starts()
        return {lab: starts[lab] + self.iet.lengths[lab] * Fraction(1, 2)
                for lab in self.iet.top}

    def gamma_edge_matrix(self):
        """Signed crossing counts of each loop with each glued edge pair."""
        npairs = len(self.surface.gluings)
        rows = []
        for lab in self.iet.top:
            vec = [0] * npairs
            for (pair, sgn) in self.gamma_crossings[lab]:
                vec[pair] += sgn
            rows.append(vec)
        return rows


def _locate_on_pieces(pieces, d_t, t):
    for (p, q, t0, t1) in pieces:
        if (t - t0).sign() >= 0 and (t - t1).sign() < 0:
            dt = t - t0
            return p, (q[0] + dt * d_t[0], q[1] + dt * d_t[1])
    raise ValueError("parameter outside the transversal")


def derive_return_system(S, transversal, flow_dir, ray_min_crossings=64,
                         germ_step_cap=4096):
    """First-return IET of the flow `flow_dir` to the transversal, exact.

    Every interval endpoint comes from a backward singular leaf; the
    construction is validated by the zippered-rectangle area identity
    before returning.
    """
    field = S.field
    d_t = tuple(transversal.direction)
    d_f = tuple(flow_dir)
    det = _cross(d_t, d_f)
    if det.is_zero():
        raise ValueError("flow direction parallel to the transversal")

    # 1. develop the transversal ray far enough
    L = transversal.length
    pieces, events = _trace_ray(S, transversal.poly, transversal.point, d_t,
                                length=L, min_crossings=ray_min_crossings)

    germs = S.vertex_germs((-d_f[0], -d_f[1]))
    if not germs:
        raise SaddleConnectionError("no backward separatrix enters any polygon")

    # 2. transversal length: given, or first backward-leaf hit per germ
    if L is None:
        cands = []
        for (p, i) in germs:
            hit = _flow_until_pieces(S, pieces, d_t, p, S.vertex(p, i),
                                     (-d_f[0], -d_f[1]), germ_step_cap)
            if hit is not None:
                cands.append(hit[1])
        if not cands:
            raise RuntimeError("no backward leaf crossed the developed ray")
        L = cands[0]
        for c in cands[1:]:
            if (c - L).sign() < 0:
                L = c
    pieces = _clip_pieces(pieces, L)
    events = [(t, pair, sgn) for (t, pair, sgn) in events if (t - L).sign() < 0]

    # 3. interval endpoints: first hit of [0, L) by each backward leaf
    cuts = []
    for (p, i) in germs:
        hit = _flow_until_pieces(S, pieces, d_t, p, S.vertex(p, i),
                                 (-d_f[0], -d_f[1]), germ_step_cap)
        if hit is None:
            raise RuntimeError("backward leaf from (%d,%d) never returned" % (p, i))
        t = hit[1]
        if t.sign() > 0 and not any((t - c).is_zero() for c in cuts):
            cuts.append(t)
    cuts.sort(key=lambda c: float(c))
    bounds = [field.zero()] + cuts + [L]

    # 4. forward returns from interval midpoints
    lengths, heights, returns, gammas = {}, {}, {}, {}
    k = len(bounds) - 1
    for j in range(k):
        lab = j + 1
        lengths[lab] = bounds[j + 1] - bounds[j]
        mid = bounds[j] + lengths[lab] * Fraction(1, 2)
        p, pt = _locate_on_pieces(pieces, d_t, mid)
        hit = _flow_until_pieces(S, pieces, d_t, p, pt, d_f, germ_step_cap,
                                 collect=True)
        if hit is None:
            raise RuntimeError("forward orbit from interval %d never returned" % lab)
        s_total, t_ret, crossings = hit
        heights[lab] = s_total
        returns[lab] = (s_total, t_ret, mid)
        # closing leg along the transversal, from the return point back to mid
        closing = _events_between(events, t_ret, mid)
        gammas[lab] = crossings + closing

    # 5. permutation from image starts, with an exact tiling check
    image_start = {}
    for j in range(k):
        lab = j + 1
        s, t_ret, mid = returns[lab]
        image_start[lab] = t_ret - (mid - bounds[j])
    bottom = sorted(range(1, k + 1), key=lambda lab: float(image_start[lab]))
    acc = field.zero()
    for lab in bottom:
        if not (image_start[lab] - acc).is_zero():
            raise RuntimeError("return intervals do not tile the transversal")
        acc = acc + lengths[lab]
    if not (acc - L).is_zero():
        raise RuntimeError("return intervals do not fill the transversal")

    # 6. zippered-rectangle area identity (exact certificate)
    lam_h = field.zero()
    for lab in range(1, k + 1):
        lam_h = lam_h + lengths[lab] * heights[lab]
    det_abs = det if det.sign() > 0 else -det
    if not (lam_h * det_abs - S.area()).is_zero():
        raise RuntimeError("zippered-rectangle area identity failed")

    iet = IET(field, lengths, bottom, heights=heights)
    tr = Transversal(transversal.poly, transversal.point, d_t, L)
    rets = {lab: (heights[lab], returns[lab][1], returns[lab][2]) for lab in lengths}
    return ReturnSystem(iet, S, tr, d_f, pieces, events, cuts, rets, gammas)


def derive_return_iet(S, transversal, flow_dir, **kw):
    return derive_return_system(S, transversal, flow_dir, **kw).iet


def _trace_ray(S, p, pt, d, length=None, min_crossings=64):
    """Develop the segment/ray from pt in direction d through the gluings.

    Returns (pieces, crossing events); pieces are (poly, start point,
    t0, t1) with t the coefficient along d.
    """
    field = S.field
    pieces, events = [], []
    t = field.zero()
    crossings = 0
    pt = tuple(pt)
    while True:
        s, e, _r = S.ray_exit(p, pt, d)
        t_end = t + s
        if length is not None and (t_end - length).sign() >= 0:
            pieces.append((p, pt, t, length))
            return pieces, events
        pieces.append((p, pt, t, t_end))
        p2, _ = S.partner(p, e)
        tr = S.crossing_translation(p, e)
        k, orient = S.pair_index(p, e)
        sgn = orient * _cross(d, S.edge_vector(p, e)).sign()
        events.append((t_end, k, sgn))
        pt = (pt[0] + s * d[0] + tr[0], pt[1] + s * d[1] + tr[1])
        p, t = p2, t_end
        crossings += 1
        if length is None and crossings >= min_crossings:
            return pieces, events


def _clip_pieces(pieces, L):
    out = []
    for (p, q, t0, t1) in pieces:
        if (t0 - L).sign() >= 0:
            continue
        out.append((p, q, t0, t1 if (t1 - L).sign() <= 0 else L))
    return out


def _events_between(events, t_from, t_to):
    """Transversal crossing events between two parameters, signed by direction."""
    d = (t_to - t_from).sign()
    if d == 0:
        return []
    lo, hi = (t_from, t_to) if d > 0 else (t_to, t_from)
    out = []
    for (t, pair, sgn) in events:
        if (t - lo).sign() > 0 and (t - hi).sign() < 0:
            out.append((pair, d * sgn))
    return out


def _flow_until_pieces(S, pieces, d_t, p, pt, d, step_cap, collect=False):
    """Flow from pt until the first crossing with the transversal pieces.

    Returns (s_total, t_param, crossings) or None if the step cap is hit.
    The starting point itself (s = 0) does not count.
    """
    s_total = S.field.zero()
    crossings = [] if collect else None
    for _ in range(step_cap):
        s_exit, e, _r = S.ray_exit(p, pt, d)
        best = None
        for (pp, q, t0, t1) in pieces:
            if pp != p:
                continue
            delta = _cross(d, d_t)
            b = (q[0] - pt[0], q[1] - pt[1])
            sc = _cross(b, d_t) / delta
            if sc.sign() <= 0 or (sc - s_exit).sign() >= 0:
                continue
            rc = _cross(b, d) / delta
            if rc.sign() < 0 or (rc - (t1 - t0)).sign() >= 0:
                continue
            if best is None or (sc - best[0]).sign() < 0:
                best = (sc, t0 + rc)
        if best is not None:
            return s_total + best[0], best[1], (crossings or [])
        p2, _ = S.partner(p, e)
        tr = S.crossing_translation(p, e)
        if collect:
            k, orient = S.pair_index(p, e)
            crossings.append((k, orient * _cross(d, S.edge_vector(p, e)).sign()))
        pt = (pt[0] + s_exit * d[0] + tr[0], pt[1] + s_exit * d[1] + tr[1])
        p = p2
        s_total = s_total + s_exit
    return None


# -- Rauzy induction ------------------------------------------------------------


def rauzy_step(T):
    """One step of right Rauzy induction; returns (new IET, move).

    A move is ('T'|'B', winner label, loser label): 'T' when the last top
    interval is strictly longer than the last bottom interval.
    """
    t, b = T.top[-1], T.bottom[-1]
    if t == b:
        raise RauzyError("top and bottom end with the same label")
    diff = T.lengths[t] - T.lengths[b]
    s = diff.sign()
    if s == 0:
        raise RauzyError("equal critical lengths (saddle connection)")
    lengths = dict(T.lengths)
    if s > 0:
        lengths[t] = diff
        bottom = [x for x in T.bottom if x != b]
        bottom.insert(bottom.index(t) + 1, b)
        return IET(T.field, lengths, bottom, top=T.top), ("T", t, b)
    lengths[b] = -diff
    top = [x for x in T.top if x != t]
    top.insert(top.index(b) + 1, t)
    return IET(T.field, lengths, top=top, bottom=T.bottom), ("B", b, t)


class SelfSimilarity:
    def __init__(self, period, scale, substitution, moves, final_iet):
        self.period = period
        self.scale = scale
        self.substitution = substitution
        self.moves = moves
        self.final_iet = final_iet


def detect_self_similarity(T0, max_steps=200):
    """Smallest Rauzy period returning a scaled copy of T0, or None.

    On success the result carries the expansion scale (a field element,
    > 1) and the substitution read off by tracing each renormalized
    interval through the original partition.
    """
    T = T0.copy()
    moves = []
    for step in range(1, max_steps + 1):
        T, mv = rauzy_step(T)
        moves.append(mv)
        if T.top == T0.top and T.bottom == T0.bottom and _projectively_equal(T0, T):
            lab0 = T0.top[0]
            scale = T0.lengths[lab0] / T.lengths[lab0]
            sub = _substitution_from_return(T0, T)
            return SelfSimilarity(step, scale, sub, moves, T)
    return None


def _projectively_equal(T0, T1):
    lab0 = T0.top[0]
    a0, a1 = T0.lengths[lab0], T1.lengths[lab0]
    for lab in T0.top[1:]:
        if not (T0.lengths[lab] * a1 - T1.lengths[lab] * a0).is_zero():
            return False
    return True


def _substitution_from_return(T0, Tp):
    """sigma(j) = itinerary of the j-th renormalized interval through T0."""
    total_p = Tp.total_length()
    starts_p = Tp.domain_starts()
    images = {}
    for lab in Tp.top:
        x = starts_p[lab] + Tp.lengths[lab] * Fraction(1, 2)
        word = []
        while True:
            x, visited = T0.apply(x)
            word.append(visited)
            if (x - total_p).sign() < 0:
                break
        images[lab] = tuple(word)
    return Substitution(images)

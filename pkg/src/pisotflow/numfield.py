"""Exact arithmetic in a real algebraic number field Q(a).

A field is described by the monic integer minimal polynomial of its
generator together with an isolating interval that pins down which real
root the generator denotes.  Elements are coordinate vectors over the
power basis 1, a, ..., a^(d-1) with Fraction entries.  Every sign
decision goes through Sturm-guarded interval refinement, so there is no
floating-point trust anywhere in the arithmetic.
"""

import math
from fractions import Fraction

from . import polyq


class FieldMismatchError(ValueError):
    pass


class AlgebraicField:
    """Q(a) for a fixed real root a of a monic irreducible integer polynomial."""

    def __init__(self, min_poly, isolating_interval=None, embedding_hint=None,
                 check_irreducible=True):
        p = polyq.trim([Fraction(c) for c in min_poly])
        if not p or p[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if any(c.denominator != 1 for c in p):
            raise ValueError("minimal polynomial must have integer coefficients")
        self.min_poly = tuple(int(c) for c in p)
        self.degree = polyq.deg(p)
        if check_irreducible and self.degree <= 6:
            if not polyq.is_irreducible_z(p):
                raise ValueError("minimal polynomial is reducible")
        roots = polyq.isolate_real_roots(p)
        if not roots:
            raise ValueError("no real root to embed")
        if isolating_interval is not None:
            lo, hi = Fraction(isolating_interval[0]), Fraction(isolating_interval[1])
            inside = [r for r in roots if lo <= r[0] and r[1] <= hi]
            if len(inside) != 1:
                # allow an interval that brackets exactly one root loosely
                inside = [r for r in roots if not (r[1] <= lo or hi <= r[0])]
            if len(inside) != 1:
                raise ValueError("isolating interval does not select a unique root")
            self._root = inside[0]
        elif embedding_hint is not None:
            mids = [float(polyq.refine_root(p, *r, Fraction(1, 1 << 30))[0]) for r in roots]
            self._root = roots[min(range(len(roots)), key=lambda i: abs(mids[i] - embedding_hint))]
        else:
            self._root = roots[-1]
        self.embedding_hint = embedding_hint if embedding_hint is not None else \
            float(sum(self._root) / 2)
        self._fpoly = p
        # reduction table: a^k in the power basis for k = d .. 2d-2
        d = self.degree
        table = []
        cur = [-Fraction(c) for c in p[:-1]]  # a^d
        table.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [Fraction(0)] + cur[:-1]
            if cur[-1]:
                hi = cur[-1]
                for i in range(d):
                    nxt[i] += hi * table[0][i]
            cur = nxt
            table.append(tuple(cur))
        self._powers = table
        self._one = self.element([1])

    # -- basic element constructors -------------------------------------

    def element(self, coords):
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.degree:
            raise ValueError("too many coordinates")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self):
        return self.element([])

    def one(self):
        return self._one

    def gen(self):
        if self.degree == 1:
            return self.element([-self.min_poly[0]])
        return self.element([0, 1])

    def from_rational(self, q):
        return self.element([Fraction(q)])

    # -- root refinement -------------------------------------------------

    def refine(self, width):
        """Shrink the generator's isolating interval to at most `width`."""
        width = Fraction(width)
        lo, hi = self._root
        if hi - lo > width:
            self._root = polyq.refine_root(self._fpoly, lo, hi, width)
        return self._root

    # -- reduction and arithmetic ----------------------------------------

    def _reduce(self, raw):
        d = self.degree
        out = list(raw[:d]) + [Fraction(0)] * max(0, d - len(raw))
        for k in range(d, len(raw)):
            c = raw[k]
            if c:
                row = self._powers[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def _mul(self, x, y):
        d = self.degree
        raw = [Fraction(0)] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        raw[i + j] += xi * yj
        return self._reduce(raw)

    def _inverse(self, coords):
        # extended Euclid in Q[x] modulo the minimal polynomial
        a = polyq.trim([Fraction(c) for c in self._fpoly])
        b = polyq.trim(list(coords))
        if not b:
            raise ZeroDivisionError("inverse of zero field element")
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = polyq.pdivmod(a, b)
            if not r:
                break
            a, b = b, r
            s0, s1 = s1, polyq.psub(s0, polyq.pmul(q, s1))
        # b is now the gcd (a unit since min_poly is irreducible)
        inv_lc = 1 / b[0]
        return self._reduce(tuple(polyq.pscale(s1, inv_lc)) + (Fraction(0),))

    # -- comparisons -----------------------------------------------------

    def same_field(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraicField) or self.min_poly != other.min_poly:
            return False
        lo = max(self._root[0], other._root[0])
        hi = min(self._root[1], other._root[1])
        if lo >= hi:
            return False
        return polyq.count_real_roots(self._fpoly, lo, hi) == 1

    def __repr__(self):
        return "Q<x^%d:%s ~ %.6g>" % (self.degree, list(self.min_poly), self.embedding_hint)

    def serialize(self):
        coeffs = list(reversed(self.min_poly))
        return "field{minpoly=[%s], approx=%.10g}" % (
            ",".join(str(c) for c in coeffs), self.embedding_hint)


class FieldElement:
    """Element of an AlgebraicField, exact coordinates over the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or self.field.same_field(other.field):
                return other
            raise FieldMismatchError("elements of different fields")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field._inverse(self.coords))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldMismatchError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coords[0]

    # -- embedding --------------------------------------------------------

    def embed(self, width=Fraction(1, 10**12)):
        """Rational interval of width <= `width` containing the real value."""
        width = Fraction(width)
        if self.is_rational():
            return (self.coords[0], self.coords[0])
        p = polyq.trim(list(self.coords))
        root_w = Fraction(1, 1 << 8)
        while True:
            lo, hi = self.field.refine(root_w)
            vlo, vhi = polyq.peval_interval(p, lo, hi)
            if vhi - vlo <= width:
                return (vlo, vhi)
            root_w /= 1 << 8

    def sign(self):
        if self.is_zero():
            return 0
        if self.is_rational():
            q = self.coords[0]
            return 1 if q > 0 else -1
        w = Fraction(1, 1 << 4)
        while True:
            lo, hi = self.embed(w)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            w = w / (1 << 8)

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __float__(self):
        lo, hi = self.embed(Fraction(1, 1 << 80))
        return float((lo + hi) / 2)

    def __repr__(self):
        return self.serialize()

    def serialize(self):
        return "elem[%s]" % ", ".join(str(c) for c in self.coords)

    # -- algebraic data -----------------------------------------------------

    def minimal_polynomial(self):
        """Primitive integer polynomial of minimal degree annihilating self.

        Found as the first linear dependency among 1, x, x^2, ...; the
        result is monic exactly when the element is an algebraic integer.
        """
        d = self.field.degree
        powers = [self.field.one().coords]
        cur = self.field.one()
        for _ in range(d):
            cur = cur * self
            powers.append(cur.coords)
        # find smallest k with a dependency among powers[0..k]
        for k in range(1, d + 1):
            sol = _solve_dependency([powers[i] for i in range(k + 1)], d)
            if sol is not None:
                return polyq.clear_denominators(sol)
        raise RuntimeError("no dependency found (unreachable)")


def _solve_dependency(rows, width):
    """Monic dependency sum c_i rows[i] = 0 with c_last = 1, or None."""
    n = len(rows) - 1
    # solve sum_{i<n} c_i rows[i] = -rows[n]
    aug = [[Fraction(rows[i][j]) for i in range(n)] + [-Fraction(rows[n][j])]
           for j in range(width)]
    # gaussian elimination
    piv_rows = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_rows.append(c)
        r += 1
    # consistency
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_rows):
        sol[c] = aug[i][n]
    return polyq.trim(sol + [Fraction(1)])


QQ = AlgebraicField([0, 1], isolating_interval=(-1, 1), embedding_hint=0.0)


# -- constructors ---------------------------------------------------------

def field_for_ngon(n):
    """Holonomy field Q(a) of the regular n-gon surface.

    a = 2cos(pi/n) for odd n and 2cos(2pi/n) for even n; both are
    2cos(2pi/m) for m = 2n (odd) or m = n (even).
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    m = 2 * n if n % 2 else n
    p = polyq.cos2pi_minpoly(m)
    hint = 2 * math.cos(2 * math.pi / m)
    return AlgebraicField([int(c) for c in p], embedding_hint=hint,
                          check_irreducible=polyq.deg(p) <= 6)


# -- Pisot test -----------------------------------------------------------

class ConjugateReport:
    """What the Pisot test saw: degree, root layout, decision path."""

    def __init__(self, min_poly, is_algebraic_integer, n_real, n_complex_pairs,
                 real_root_intervals, path, pisot):
        self.min_poly = min_poly
        self.is_algebraic_integer = is_algebraic_integer
        self.n_real = n_real
        self.n_complex_pairs = n_complex_pairs
        self.real_root_intervals = real_root_intervals
        self.path = path
        self.pisot = pisot

    def __repr__(self):
        return ("ConjugateReport(pisot=%s, deg=%d, real=%d, complex_pairs=%d, via=%s)"
                % (self.pisot, polyq.deg(self.min_poly), self.n_real,
                   self.n_complex_pairs, self.path))


def is_pisot(x):
    """Pisot test with exact conjugate analysis; returns (bool, report)."""
    if not isinstance(x, FieldElement):
        raise TypeError("FieldElement required")
    if x.is_zero():
        raise ValueError("zero element")
    p = x.minimal_polynomial()
    d = polyq.deg(p)
    alg_int = p[-1] == 1

    def rep(n_real, pairs, ivals, path, ok):
        return ok, ConjugateReport(p, alg_int, n_real, pairs, ivals, path, ok)

    if not alg_int:
        return rep(0, 0, [], "not-an-algebraic-integer", False)
    if (x - 1).sign() <= 0:
        return rep(0, 0, [], "embedding-not-greater-than-one", False)
    if d == 1:
        return rep(1, 0, [], "rational-integer", True)

    pf = [Fraction(c) for c in p]
    roots = polyq.isolate_real_roots(pf)
    n_real = len(roots)
    pairs = (d - n_real) // 2
    # all real conjugates other than the embedding must lie in (-1, 1);
    # irreducibility of p rules out roots exactly at +-1
    inside = polyq.count_real_roots(pf, Fraction(-1), Fraction(1))
    if inside != n_real - 1:
        return rep(n_real, pairs, roots, "real-conjugate-outside-unit-interval", False)
    if pairs == 0:
        return rep(n_real, pairs, roots, "all-real", True)

    # self-reciprocal irreducible polynomials with complex roots pair each
    # root with its inverse, so some conjugate has modulus >= 1
    rev = polyq.reverse(pf)
    if rev == pf or rev == polyq.pscale(pf, -1):
        return rep(n_real, pairs, roots, "self-reciprocal", False)

    if pairs == 1:
        # product of the complex pair's moduli^2 = |p(0)| / prod |real roots|
        target = Fraction(abs(p[0]))
        w = Fraction(1, 1 << 16)
        while True:
            pr_lo, pr_hi = Fraction(1), Fraction(1)
            for (lo, hi) in roots:
                rlo, rhi = polyq.refine_root(pf, lo, hi, w)
                alo, ahi = sorted((abs(rlo), abs(rhi)))
                if rlo < 0 < rhi:
                    alo = Fraction(0)
                pr_lo *= alo
                pr_hi *= ahi
            if pr_lo > target:
                return rep(n_real, pairs, roots, "product-bound", True)
            if pr_hi < target:
                return rep(n_real, pairs, roots, "product-bound", False)
            w /= 1 << 8

    # general fallback: strip the known root over Q(x) and run the exact
    # Schur-Cohn unit-disk test on the quotient
    K = x.field
    q = [K.one()]
    for c in reversed(p[:-1]):
        q.append(q[-1] * x + c)
    q = list(reversed(q))  # q[k] coefficient of z^k, degree d-1, monic
    ok = _all_roots_in_open_unit_disk(q)
    return rep(n_real, pairs, roots, "schur-cohn", ok)


def _all_roots_in_open_unit_disk(q):
    """Schur-Cohn recursion; q is a list of FieldElements, leading nonzero."""
    while True:
        q = list(q)
        while q and q[-1].is_zero():
            q.pop()
        m = len(q) - 1
        if m <= 0:
            return True
        gap = q[-1] * q[-1] - q[0] * q[0]
        s = gap.sign()
        if s <= 0:
            return False
        qq = [q[-1] * q[k] - q[0] * q[m - k] for k in range(m + 1)]
        assert qq[0].is_zero()
        q = qq[1:]


# -- serialization ----------------------------------------------------------


def parse_field(text):
    """Parse `field{minpoly=[...], approx=...}` (descending coefficients)."""
    text = text.strip()
    if not (text.startswith("field{") and text.endswith("}")):
        raise ValueError("bad field syntax")
    body = text[len("field{"):-1]
    parts = dict(kv.split("=", 1) for kv in _split_top(body))
    coeffs = [int(c) for c in parts["minpoly"].strip()[1:-1].split(",")]
    hint = float(parts["approx"])
    return AlgebraicField(list(reversed(coeffs)), embedding_hint=hint)


def parse_element(field, text):
    """Parse `elem[c0, c1, ...]` with Fraction coordinates (ascending basis)."""
    text = text.strip()
    if not (text.startswith("elem[") and text.endswith("]")):
        raise ValueError("bad element syntax")
    body = text[len("elem["):-1].strip()
    coords = [Fraction(t.strip()) for t in body.split(",")] if body else []
    return field.element(coords)


def _split_top(s):
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur).strip())
    return out

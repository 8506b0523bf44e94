"""Exact linear algebra over Q and over number fields.

Matrices carry FieldElement entries sharing one AlgebraicField (the
degree-1 field QQ covers the plain rational case).  Integer lattice
work (HNF, saturation) is done separately in pure machine integers.
"""

from fractions import Fraction

from . import polyq
from .numfield import QQ, AlgebraicField, FieldElement, FieldMismatchError


class ExactMatrix:
    """Immutable dense matrix of FieldElements over a shared field."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(self._coerce(e) for e in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    def _coerce(self, e):
        if isinstance(e, FieldElement):
            if e.field is self.field or self.field.same_field(e.field):
                return e
            raise FieldMismatchError("entry from a different field")
        return self.field.from_rational(e)

    @classmethod
    def from_ints(cls, rows, field=QQ):
        return cls(field, [[field.from_rational(v) for v in r] for r in rows])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols
                and all(a == b for ra, rb in zip(self.rows, other.rows)
                        for a, b in zip(ra, rb)))

    def __repr__(self):
        return "ExactMatrix(%dx%d over %r)" % (self.nrows, self.ncols, self.field)

    def transpose(self):
        return ExactMatrix(self.field, list(zip(*self.rows)))

    def __add__(self, other):
        return ExactMatrix(self.field, [[a + b for a, b in zip(ra, rb)]
                                        for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return ExactMatrix(self.field, [[a - b for a, b in zip(ra, rb)]
                                        for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.transpose().rows
            return ExactMatrix(self.field,
                               [[_dot(r, c, self.field) for c in cols] for r in self.rows])
        return ExactMatrix(self.field, [[a * other for a in r] for r in self.rows])

    def vec_mul(self, v):
        """Matrix * column vector (list of elements)."""
        return [_dot(r, v, self.field) for r in self.rows]

    def scale(self, c):
        return ExactMatrix(self.field, [[a * c for a in r] for r in self.rows])

    @classmethod
    def identity(cls, n, field=QQ):
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    def is_square(self):
        return self.nrows == self.ncols

    def det(self):
        if not self.is_square():
            raise ValueError("square matrix required")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one()
        for c in range(n):
            pr = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if pr is None:
                return self.field.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self):
        if not self.is_square():
            raise ValueError("square matrix required")
        n = self.nrows
        one, zero = self.field.one(), self.field.zero()
        m = [list(r) + [one if i == j else zero for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            pr = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if pr is None:
                raise ValueError("singular matrix")
            m[c], m[pr] = m[pr], m[c]
            inv = m[c][c].inverse()
            m[c] = [a * inv for a in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return ExactMatrix(self.field, [r[n:] for r in m])

    def to_int_rows(self):
        out = []
        for r in self.rows:
            row = []
            for e in r:
                q = e.as_rational()
                if q.denominator != 1:
                    raise ValueError("non-integer entry")
                row.append(int(q))
            out.append(row)
        return out


def _dot(r, c, field):
    acc = field.zero()
    for a, b in zip(r, c):
        acc = acc + a * b
    return acc


def char_poly(M):
    """Exact characteristic polynomial det(xI - M), ascending coefficients.

    Faddeev-LeVerrier; only divisions by rational integers occur, so it
    works over any of our fields.
    """
    if not M.is_square():
        raise ValueError("square matrix required")
    n = M.nrows
    field = M.field
    one = field.one()
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    Mk = ExactMatrix.identity(n, field)
    for k in range(1, n + 1):
        Mk = M * Mk
        tr = _trace(Mk)
        c = tr * Fraction(-1, k)
        coeffs[n - k] = c
        if k < n:
            Mk = _add_scalar(Mk, c)
    return coeffs


def _trace(M):
    acc = M.field.zero()
    for i in range(M.nrows):
        acc = acc + M.rows[i][i]
    return acc


def _add_scalar(M, c):
    rows = [list(r) for r in M.rows]
    for i in range(M.nrows):
        rows[i][i] = rows[i][i] + c
    return ExactMatrix(M.field, rows)


def rational_kernel(M):
    """Basis of the right kernel of M, vectors of FieldElements."""
    field = M.field
    m = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    piv_col = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not m[i][c].is_zero()), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(nr):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_col.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in piv_col]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        v = [zero] * nc
        v[fc] = one
        for i, pc in enumerate(piv_col):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def left_kernel(M):
    return rational_kernel(M.transpose())


def solve(M, b):
    """One solution x of Mx = b, or None if inconsistent."""
    field = M.field
    m = [list(r) + [bb] for r, bb in zip(M.rows, b)]
    nr, nc = M.nrows, M.ncols
    piv = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not m[i][c].is_zero()), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(nr):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b2 for a, b2 in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    for i in range(r, nr):
        if not m[i][nc].is_zero():
            return None
    x = [field.zero()] * nc
    for i, c in enumerate(piv):
        x[c] = m[i][nc]
    return x


# -- integer lattice machinery ----------------------------------------------

def hnf_transform(rows):
    """Row Hermite normal form with transform: U * A = H, U unimodular.

    Returns (H, U, rank).  Pure integer arithmetic; rows is a list of
    lists of ints.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        U[r], U[piv] = U[piv], U[r]
        while True:
            done = True
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if A[i][c] != 0:
                        A[r], A[i] = A[i], A[r]
                        U[r], U[i] = U[i], U[r]
                        done = False
            if done:
                break
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        # reduce entries above the pivot for a canonical form
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return A, U, r


def hnf(rows):
    """Canonical row HNF (zero rows dropped)."""
    H, _, r = hnf_transform(rows)
    return [row for row in H[:r]]


def kernel_int(rows):
    """Basis of {x in Z^m : x * A = 0} for integer A given by rows? No:
    returns a basis of {v in Z^n : A v = 0} for A with the given rows.

    Integer kernels of integer matrices are saturated by construction.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    At = [list(col) for col in zip(*A)]
    H, U, r = hnf_transform(At)
    out = []
    for i in range(len(At)):
        if all(v == 0 for v in H[i]):
            out.append(U[i])
    return out


def saturate(vectors):
    """Integer basis of (Q-span of `vectors`) intersected with Z^m.

    Input vectors are sequences of Fractions/ints; they must be linearly
    independent.  The result is an HNF-reduced basis of the saturated
    lattice.
    """
    vecs = [[Fraction(x) for x in v] for v in vectors]
    if not vecs:
        return []
    m = len(vecs[0])
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
    B = [[int(x * den) for x in v] for v in vecs]
    if len(hnf(B)) != len(B):
        raise ValueError("dependent input vectors")
    # orthogonal complement over Q, as a primitive integer matrix
    comp = kernel_int(B)
    if not comp:
        return [list(r) for r in hnf([[1 if i == j else 0 for j in range(m)]
                                      for i in range(m)])]
    sat = kernel_int(comp)
    return hnf(sat)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


# -- spectral helpers ---------------------------------------------------------

def factor_int_poly(p):
    """Irreducible factorization over Q of an integer polynomial.

    Returns a list of (primitive integer factor ascending, multiplicity).
    Delegates to sympy's Zassenhaus factorization and re-verifies the
    product exactly.
    """
    import sympy

    _, prim = polyq.content_primitive([Fraction(c) for c in p])
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(prim))
    _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
    out = []
    check = [Fraction(1)]
    for poly, mult in factors:
        cs = [Fraction(c) for c in reversed(poly.all_coeffs())]
        _, cs = polyq.content_primitive(polyq.clear_denominators(cs))
        out.append((cs, int(mult)))
        for _ in range(mult):
            check = polyq.pmul(check, cs)
    _, check = polyq.content_primitive(check)
    if check != [Fraction(c) for c in prim]:
        raise RuntimeError("factorization re-check failed")
    return out


def max_real_root_interval(p):
    """Isolating interval of the largest real root, or None."""
    roots = polyq.isolate_real_roots([Fraction(c) for c in p])
    return roots[-1] if roots else None


def compare_algebraic(p1, iv1, p2, iv2):
    """Compare two algebraic reals given by (squarefree poly, interval).

    Only guarantees termination when the numbers are distinct or the
    defining data coincides.
    """
    if p1 == p2 and iv1 == iv2:
        return 0
    lo1, hi1 = iv1
    lo2, hi2 = iv2
    w = min(hi1 - lo1, hi2 - lo2)
    while not (hi1 < lo2 or hi2 < lo1):
        w /= 1 << 8
        lo1, hi1 = polyq.refine_root([Fraction(c) for c in p1], lo1, hi1, w)
        lo2, hi2 = polyq.refine_root([Fraction(c) for c in p2], lo2, hi2, w)
    return -1 if hi1 < lo2 else 1


class NonSimpleEigenvalueError(ValueError):
    pass


def eigenvector_over_extension(M, p, isolating_interval=None):
    """Right and left eigenvectors of an integer matrix over Q[x]/(p).

    p must be an irreducible factor of char_poly(M) with a simple root;
    the distinguished root is the largest real root unless an isolating
    interval is supplied.  Vectors are normalized so the first nonzero
    entry is one.  Returns (field, theta, right, left).
    """
    p = [Fraction(c) for c in p]
    cp = char_poly(M)
    cp_q = [c.as_rational() for c in cp]
    if polyq.pmod(cp_q, p):
        raise ValueError("p does not divide the characteristic polynomial")
    if isolating_interval is None:
        iv = max_real_root_interval(p)
        if iv is None:
            raise ValueError("factor has no real root")
    else:
        iv = isolating_interval
    K = AlgebraicField(polyq.clear_denominators(p), isolating_interval=iv,
                       check_irreducible=polyq.deg(p) <= 6)
    theta = K.gen()
    MK = ExactMatrix(K, [[K.from_rational(e.as_rational()) for e in r] for r in M.rows])
    n = MK.nrows
    shifted = _add_scalar(MK, -theta)
    right = rational_kernel(shifted)
    left = rational_kernel(shifted.transpose())
    if len(right) != 1 or len(left) != 1:
        raise NonSimpleEigenvalueError("eigenvalue is not simple")
    return K, theta, _normalize_first(right[0]), _normalize_first(left[0])


def _normalize_first(v):
    lead = next((e for e in v if not e.is_zero()), None)
    if lead is None:
        return v
    inv = lead.inverse()
    return [e * inv for e in v]


class PerronData:
    def __init__(self, min_poly, field, root, right, left, is_primitive):
        self.min_poly = min_poly
        self.field = field
        self.root = root
        self.right = right
        self.left = left
        self.is_primitive = is_primitive


def perron_data(M):
    """Perron root and eigenvectors of a nonnegative integer matrix."""
    ints = M.to_int_rows()
    n = len(ints)
    if any(v < 0 for r in ints for v in r):
        raise ValueError("nonnegative matrix required")
    cp = [c.as_rational() for c in char_poly(M)]
    factors = factor_int_poly(cp)
    best = None
    for f, mult in factors:
        iv = max_real_root_interval(f)
        if iv is None:
            continue
        if best is None or compare_algebraic(f, iv, best[0], best[1]) > 0:
            best = (f, iv, mult)
    if best is None:
        raise ValueError("no real eigenvalue")
    f, iv, mult = best
    K, theta, right, left = eigenvector_over_extension(M, f, iv)
    # primitivity: some power strictly positive (bound (n-1)^2 + 1)
    power = [r[:] for r in ints]
    primitive = all(v > 0 for r in power for v in r)
    steps = 1
    while not primitive and steps < (n - 1) * (n - 1) + 1:
        power = [[sum(power[i][k] * ints[k][j] for k in range(n)) for j in range(n)]
                 for i in range(n)]
        steps += 1
        primitive = all(v > 0 for r in power for v in r)
    return PerronData([int(c) for c in f], K, theta, right, left, primitive)


# -- text format ---------------------------------------------------------------

def serialize_matrix(M):
    lines = []
    for r in M.rows:
        lines.append(" ".join(e.serialize().replace(" ", "") for e in r))
    return "\n".join(lines)


def parse_int_matrix(text):
    rows = []
    for line in text.strip().splitlines():
        parts = line.split()
        if parts:
            rows.append([int(v) for v in parts])
    return ExactMatrix.from_ints(rows)

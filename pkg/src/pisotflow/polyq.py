"""Dense univariate polynomial arithmetic over exact rationals.

Polynomials are lists of Fractions indexed by degree (p[k] is the
coefficient of x^k).  The zero polynomial is the empty list.  All
routines are exact; nothing here touches floating point except the
optional hints passed in by callers.
"""

from fractions import Fraction
from math import gcd, prod


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p):
    return len(p) - 1


def from_ints(cs):
    return [Fraction(c) for c in cs]


def padd(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def psub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                 for i in range(n)])


def pscale(p, c):
    if c == 0:
        return []
    return [ci * c for ci in p]


def pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def pdivmod(p, q):
    """Euclidean division, q != 0."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in p]
    qd, qc = deg(q), q[-1]
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(trim(r)) - 1 >= qd and trim(r):
        r = trim(r)
        k = len(r) - 1 - qd
        c = r[-1] / qc
        quo[k] = c
        for i in range(len(q)):
            r[i + k] -= c * q[i]
        r = r[:-1]
    return trim(quo), trim(r)


def pmod(p, q):
    return pdivmod(p, q)[1]


def monic(p):
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def pgcd(p, q):
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pmod(a, b)
    return monic(a)


def pderiv(p):
    return trim([p[i] * i for i in range(1, len(p))])


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def peval_interval(p, lo, hi):
    """Interval Horner evaluation: encloses p([lo, hi])."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def content_primitive(p):
    """(content, primitive part) of an integer polynomial, positive leading."""
    ints = [int(c) for c in p]
    if any(Fraction(c) != p[i] for i, c in enumerate(ints)):
        raise ValueError("not an integer polynomial")
    if not ints:
        return 0, []
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    prim = [c // g for c in ints]
    if prim[-1] < 0:
        g, prim = -g, [-c for c in prim]
    return g, prim


def clear_denominators(p):
    """Primitive integer polynomial (positive leading) proportional to p."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [Fraction(c * den) for c in p]
    _, prim = content_primitive(ints)
    return prim


def sturm_chain(p):
    chain = [trim(p), pderiv(p)]
    while chain[-1]:
        r = pmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(pscale(r, -1))
    return [c for c in chain if c]


def _variations(vals):
    signs = [1 if v > 0 else -1 for v in vals if v != 0]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def variations_at(chain, x):
    return _variations([peval(c, x) for c in chain])


def variations_at_inf(chain, positive):
    vals = []
    for c in chain:
        lc = c[-1]
        vals.append(lc if (positive or (len(c) % 2 == 1)) else -lc)
    return _variations(vals)


def count_real_roots(p, lo=None, hi=None, chain=None):
    """Number of distinct real roots of p in (lo, hi]; None means +-infinity.

    Endpoints must not be roots of p when finite.
    """
    chain = chain or sturm_chain(p)
    a = variations_at_inf(chain, False) if lo is None else variations_at(chain, lo)
    b = variations_at_inf(chain, True) if hi is None else variations_at(chain, hi)
    return a - b


def root_bound(p):
    """Cauchy bound: all real roots lie in (-B, B)."""
    lc = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=Fraction(0))
    b = 1 + m / lc
    n = 1
    while n < b:
        n *= 2
    return Fraction(n)


def isolate_real_roots(p):
    """Disjoint dyadic intervals (lo, hi), each holding one real root of p.

    p must be squarefree.  Open intervals; endpoints are never roots.
    Returned sorted ascending.
    """
    p = trim(p)
    if deg(p) < 1:
        return []
    chain = sturm_chain(p)
    B = root_bound(p)
    lo, hi = -B, B
    while peval(p, lo) == 0:
        lo -= 1
    while peval(p, hi) == 0:
        hi += 1
    out = []
    stack = [(lo, hi, count_real_roots(p, lo, hi, chain))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        while peval(p, mid) == 0:
            mid = (a + mid) / 2
        nl = count_real_roots(p, a, mid, chain)
        stack.append((a, mid, nl))
        stack.append((mid, b, n - nl))
    return sorted(out)


def refine_root(p, lo, hi, width):
    """Shrink a bracketing interval of a simple root to the requested width."""
    flo = peval(p, lo)
    if flo == 0:
        raise ValueError("endpoint is a root")
    sign_lo = 1 if flo > 0 else -1
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = peval(p, mid)
        if fm == 0:
            # rational root: collapse around it with a tiny margin
            eps = width / 4
            return mid - eps, mid + eps
        if (1 if fm > 0 else -1) == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def reverse(p):
    """x^deg(p) * p(1/x)."""
    return trim(list(reversed(trim(p))))


def cyclotomic(m):
    """m-th cyclotomic polynomial with integer (Fraction) coefficients."""
    p = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            p, r = pdivmod(p, cyclotomic(d))
            assert not r
    return p


def cos2pi_minpoly(m):
    """Minimal polynomial of 2*cos(2*pi/m), monic over the integers."""
    if m == 1:
        return from_ints([-2, 1])
    if m == 2:
        return from_ints([2, 1])
    phi = cyclotomic(m)
    s = deg(phi) // 2
    # phi is palindromic for m > 2: phi(z)/z^s = b_s + sum b_{s+k} (z^k + z^-k)
    # and z^k + z^-k = P_k(y) for y = z + 1/z with the Chebyshev-like P_k.
    P = [from_ints([2]), from_ints([0, 1])]
    for _ in range(2, s + 1):
        P.append(psub(pmul(from_ints([0, 1]), P[-1]), P[-2]))
    out = [phi[s]]
    for k in range(1, s + 1):
        out = padd(out, pscale(P[k], phi[s + k]))
    return trim(out)


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(p):
    """All rational roots of a primitive integer polynomial."""
    _, p = content_primitive(p)
    if not p:
        return []
    roots = []
    while p and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
        break
    if not p:
        return roots
    for num in _divisors(int(p[0])):
        for den in _divisors(int(p[-1])):
            for s in (1, -1):
                c = Fraction(s * num, den)
                if peval(p, c) == 0 and c not in roots:
                    roots.append(c)
    return sorted(roots)


def is_irreducible_z(p, work_limit=200000):
    """Irreducibility over Q of a primitive integer polynomial, degree <= 6.

    Trial factor search (Kronecker interpolation) over candidate degrees up
    to deg/2.  The degree cap keeps the divisor enumeration small; callers
    with larger polynomials must decide irreducibility some other way.
    """
    _, p = content_primitive(p)
    d = deg(p)
    if d <= 0:
        return False
    if d == 1:
        return True
    if d > 6:
        raise ValueError("trial factorization capped at degree 6")
    if p[0] == 0:
        return False  # x divides
    if rational_roots(p):
        return False
    for k in range(2, d // 2 + 1):
        xs = []
        v = 0
        while len(xs) < k + 1:
            xs.append(v)
            v = -v if v > 0 else -v + 1
        vals = [int(peval(p, x)) for x in xs]
        divs = [_divisors(v) for v in vals]
        total = prod(2 * len(dv) for dv in divs)
        if total > work_limit:
            raise ValueError("divisor search too large")
        # enumerate sign/divisor choices, interpolate, and trial divide
        idx = [0] * (k + 1)
        signs = [1] * (k + 1)
        def candidates():
            from itertools import product
            choices = [[s * dd for dd in dv for s in (1, -1)] for dv in divs]
            return product(*choices)
        for ys in candidates():
            g = _lagrange(xs, ys)
            if not g or deg(g) != k:
                continue
            if any(c.denominator != 1 for c in g):
                continue
            q, r = pdivmod(p, g)
            if not r and all(c.denominator == 1 for c in q):
                return False
    return True


def _lagrange(xs, ys):
    out = []
    for i, xi in enumerate(xs):
        term = [Fraction(ys[i])]
        for j, xj in enumerate(xs):
            if i == j:
                continue
            term = pmul(term, [Fraction(-xj, 1) / (xi - xj), Fraction(1, 1) / (xi - xj)])
        out = padd(out, term)
    return trim(out)


def resultant(p, q):
    """Resultant of two rational polynomials (Euclidean algorithm)."""
    p, q = trim(p), trim(q)
    if not p or not q:
        return Fraction(0)
    res = Fraction(1)
    while deg(q) > 0:
        r = pmod(p, q)
        if not r:
            return Fraction(0)
        res *= q[-1] ** (deg(p) - deg(r)) * (-1) ** (deg(p) * deg(q))
        p, q = q, r
    return res * q[0] ** deg(p)

"""Primitive substitutions, return words, coboundaries, and the
eigenvalue groups of their subshifts and suspension flows.

The eigenvalue computation stacks the expanding eigendata of the
incidence matrix over a single real field, eliminates the free scaling
through the right kernel of the coboundary block, rationalizes the
orthogonality constraints coordinate-by-coordinate (the Galois-closure
trick), and reads the group off as an integer lattice paired against
the normalized Perron eigenvector.
"""

from fractions import Fraction

from . import polyq
from .numfield import QQ, AlgebraicField, FieldElement
from . import exactlinalg as xl


class UnsupportedSpectrumError(ValueError):
    pass


class Substitution:
    """Map letter -> word over the alphabet 1..d."""

    def __init__(self, images):
        self.images = {int(k): tuple(int(c) for c in v) for k, v in images.items()}
        self.letters = tuple(sorted(self.images))
        if self.letters != tuple(range(1, len(self.letters) + 1)):
            raise ValueError("alphabet must be 1..d")
        if any(len(w) == 0 for w in self.images.values()):
            raise ValueError("images must be nonempty")
        for w in self.images.values():
            for c in w:
                if c not in self.images:
                    raise ValueError("image uses an unknown letter")

    @property
    def d(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.images == other.images

    def __repr__(self):
        return "Substitution(%s)" % ", ".join(
            "%d->%s" % (k, "".join(map(str, v))) for k, v in sorted(self.images.items()))

    def apply_word(self, word):
        out = []
        for c in word:
            out.extend(self.images[c])
        return tuple(out)

    def incidence_matrix(self):
        """M[i][j] = occurrences of letter i in the image of letter j."""
        d = self.d
        m = [[0] * d for _ in range(d)]
        for j in self.letters:
            for c in self.images[j]:
                m[c - 1][j - 1] += 1
        return xl.ExactMatrix.from_ints(m)

    def is_primitive(self):
        d = self.d
        m = self.incidence_matrix().to_int_rows()
        power = m
        for _ in range((d - 1) * (d - 1) + 1):
            if all(v > 0 for r in power for v in r):
                return True
            power = [[sum(power[i][k] * m[k][j] for k in range(d)) for j in range(d)]
                     for i in range(d)]
        return all(v > 0 for r in power for v in r)

    def periodic_letter(self):
        """(letter c, power r) with sigma^r(c) starting with c."""
        first = {c: self.images[c][0] for c in self.letters}
        for c in self.letters:
            cur = c
            for r in range(1, 2 * self.d + 2):
                cur = first[cur]
                if cur == c:
                    return c, r
        raise UnsupportedSpectrumError("no periodic letter found")

    def fixed_point_prefix(self, length):
        """Prefix of a periodic point of the substitution system."""
        c, power = self.periodic_letter()
        word = (c,)
        while len(word) < length:
            new = word
            for _ in range(power):
                new = self.apply_word(new)
            if len(new) <= len(word):
                raise UnsupportedSpectrumError("substitution does not grow")
            word = new
        return word[:length]

    def serialize(self):
        lines = []
        for k in self.letters:
            w = self.images[k]
            body = "".join(map(str, w)) if self.d <= 9 else " ".join(map(str, w))
            lines.append("%d -> %s" % (k, body))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text):
        images = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            lhs, rhs = line.split("->")
            rhs = rhs.strip()
            word = [int(t) for t in rhs.split()] if " " in rhs else [int(ch) for ch in rhs]
            images[int(lhs)] = word
        return cls(images)


def abelianization(word, d):
    v = [0] * d
    for c in word:
        v[c - 1] += 1
    return v


def return_words(sigma, letter, cap=30):
    """Return words of `letter`: blocks from one occurrence to the next.

    Scans prefixes sigma^n(c) of a periodic point for growing n and
    stops when two consecutive rounds add nothing; the cap bounds the
    expansion depth n.
    """
    if not sigma.is_primitive():
        raise ValueError("primitive substitution required")
    if letter not in sigma.letters:
        raise ValueError("letter %d not in the alphabet" % letter)
    seed, power = sigma.periodic_letter()
    word = (seed,)
    found = set()
    stable_rounds = 0
    for _ in range(cap):
        for _ in range(power):
            word = sigma.apply_word(word)
        positions = [i for i, c in enumerate(word) if c == letter]
        new = {word[i:j] for i, j in zip(positions, positions[1:])}
        if new and new <= found:
            stable_rounds += 1
            if stable_rounds >= 2:
                return sorted(found, key=lambda w: (len(w), w))
        else:
            if new - found:
                stable_rounds = 0
            found |= new
        if len(word) > 4_000_000:
            break
    raise UnsupportedSpectrumError("return words did not stabilize within cap")


def coboundary_space(sigma, cap=30):
    """Rational basis of {f : <f, ab(w)> = 0 for all return words w}.

    Return-word abelianizations are stacked as columns; the coboundary
    space is the left kernel, intersected over all letters.  Basis rows
    are primitive integer vectors.
    """
    d = sigma.d
    space = None
    for letter in sigma.letters:
        words = return_words(sigma, letter, cap=cap)
        cols = [abelianization(w, d) for w in words]
        mat = xl.ExactMatrix.from_ints([[cols[j][i] for j in range(len(cols))]
                                        for i in range(d)])
        basis = xl.left_kernel(mat)
        rows = [[e.as_rational() for e in v] for v in basis]
        space = rows if space is None else _intersect_rowspaces(space, rows, d)
        if not space:
            return []
    return [list(map(int, r)) for r in xl.hnf([_primitive_int(r) for r in space])]


def _primitive_int(row):
    den = 1
    for x in row:
        f = Fraction(x)
        den = den * f.denominator // _gcd(den, f.denominator)
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return [v // g for v in ints] if g else ints


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _intersect_rowspaces(rows_a, rows_b, d):
    """Intersection of two rational row spaces in Q^d."""
    if not rows_a or not rows_b:
        return []
    A = xl.ExactMatrix.from_ints([_primitive_int(r) for r in rows_a])
    B = xl.ExactMatrix.from_ints([_primitive_int(r) for r in rows_b])
    # x in span(A) cap span(B): x = u A = v B; solve [A^T | -B^T] kernel
    cols = []
    for r in A.rows:
        cols.append([e.as_rational() for e in r])
    for r in B.rows:
        cols.append([-e.as_rational() for e in r])
    stacked = xl.ExactMatrix(QQ, [[QQ.from_rational(cols[j][i]) for j in range(len(cols))]
                                  for i in range(d)])
    out = []
    for kv in xl.rational_kernel(stacked):
        u = [e.as_rational() for e in kv[:A.nrows]]
        x = [sum(u[i] * Fraction(rows_a[i][j]) for i in range(len(rows_a)))
             for j in range(d)]
        if any(x):
            out.append(x)
    # reduce to an independent generating set
    if not out:
        return []
    H = xl.hnf([_primitive_int(r) for r in out])
    return H


class SpectrumResult:
    """Additive eigenvalue group, canonical generators over the field basis."""

    def __init__(self, field, generators, rank, weakly_mixing, w_basis, perron_vector):
        self.field = field
        self.generators = generators
        self.rank = rank
        self.weakly_mixing = weakly_mixing
        self.w_basis = w_basis
        self.perron_vector = perron_vector

    def generator_matrix(self):
        """Rational coordinate rows of the generators over the power basis."""
        return [list(g.coords) for g in self.generators]

    def hnf_lattice(self):
        """(denominator, HNF rows) of the generator lattice, a canonical form."""
        rows = self.generator_matrix()
        den = 1
        for r in rows:
            for x in r:
                den = den * x.denominator // _gcd(den, x.denominator)
        ints = [[int(x * den) for x in r] for r in rows]
        return den, xl.hnf(ints)

    def __repr__(self):
        if self.weakly_mixing:
            return "SpectrumResult(weakly mixing, rank=%d)" % self.rank
        return "SpectrumResult(rank=%d, generators=%s)" % (
            self.rank, [g.serialize() for g in self.generators])


def _cyclotomic_factor(factors):
    for f, _m in factors:
        k = polyq.deg(f)
        m = 1
        while True:
            # phi(m) grows; phi(m) >= sqrt(m/2) gives a crude stop bound
            if m > 4 * k * k + 4:
                break
            cyc = polyq.cyclotomic(m)
            if polyq.deg(cyc) == k and [int(c) for c in cyc] == [int(c) for c in f]:
                return f
            m += 1
    return None


def _expanding_structure(M, field=None):
    """Expanding eigendata of a nonnegative integer matrix over one field.

    Returns (field K, list of (eigenvalue, right eigenvector) with the
    Perron pair first).  Requires every eigenvalue of modulus >= 1 to be
    real and to lie in K; raises UnsupportedSpectrumError otherwise.
    """
    cp = [c.as_rational() for c in xl.char_poly(M)]
    factors = xl.factor_int_poly(cp)
    cyc = _cyclotomic_factor(factors)
    if cyc is not None:
        raise UnsupportedSpectrumError(
            "incidence matrix has a root-of-unity eigenvalue (factor %s)"
            % [int(c) for c in cyc])
    # classify factors
    expanding = []  # (factor, isolating interval of a real root with |root| > 1)
    for f, mult in factors:
        roots = polyq.isolate_real_roots(f)
        n_real = len(roots)
        outside = [iv for iv in roots if not _inside_unit(f, iv)]
        if polyq.deg(f) > n_real:
            # complex roots present: only fully contracting factors are allowed
            if outside:
                raise UnsupportedSpectrumError(
                    "factor with both complex roots and expanding real roots")
            if not _all_complex_inside(f, roots):
                raise UnsupportedSpectrumError(
                    "complex eigenvalue of modulus >= 1 (unsupported)")
            continue
        for iv in outside:
            if mult > 1:
                raise xl.NonSimpleEigenvalueError("expanding eigenvalue not simple")
            expanding.append((f, iv))
    if not expanding:
        raise UnsupportedSpectrumError("no expanding eigenvalue")
    # the Perron root is the largest expanding root
    perron = expanding[0]
    for cand in expanding[1:]:
        if xl.compare_algebraic(cand[0], cand[1], perron[0], perron[1]) > 0:
            perron = cand
    if field is None:
        field = AlgebraicField(polyq.clear_denominators(perron[0]),
                               isolating_interval=perron[1],
                               check_irreducible=polyq.deg(perron[0]) <= 6)
    pairs = []
    ordered = [perron] + [e for e in expanding if e is not perron]
    for f, iv in ordered:
        mu = _root_in_field(f, iv, field)
        if mu is None:
            raise UnsupportedSpectrumError(
                "expanding eigenvalue does not lie in the Perron field "
                "(conjugate-closed case only)")
        MK = xl.ExactMatrix(field, [[field.from_rational(e.as_rational()) for e in r]
                                    for r in M.rows])
        shifted = _add_diag(MK, -mu)
        kern = xl.rational_kernel(shifted)
        if len(kern) != 1:
            raise xl.NonSimpleEigenvalueError("eigenvalue is not simple")
        pairs.append((mu, kern[0]))
    return field, pairs


def _add_diag(M, c):
    rows = [list(r) for r in M.rows]
    for i in range(M.nrows):
        rows[i][i] = rows[i][i] + c
    return xl.ExactMatrix(M.field, rows)


def _inside_unit(f, iv):
    lo, hi = polyq.refine_root(f, iv[0], iv[1], Fraction(1, 64))
    while not (hi < 1 and lo > -1) and not (lo > 1 or hi < -1):
        lo, hi = polyq.refine_root(f, lo, hi, (hi - lo) / 256)
    return hi < 1 and lo > -1


def _all_complex_inside(f, real_intervals):
    """All complex roots of f strictly inside the unit circle.

    Product identity: the product of complex moduli^2 equals
    |f(0)| / prod |real roots| for monic f; a single pair is decided by
    it, several pairs fall back to the Schur-Cohn count on f itself
    being impossible here, so we use the product bound per pair via the
    reciprocal test (self-reciprocal irreducible factors are rejected).
    """
    pairs = (polyq.deg(f) - len(real_intervals)) // 2
    if pairs == 0:
        return True
    rev = polyq.reverse(f)
    if rev == f or rev == polyq.pscale(f, -1):
        return False
    if pairs == 1:
        target = abs(Fraction(f[0], f[-1]))
        w = Fraction(1, 1 << 16)
        while True:
            pr_lo, pr_hi = Fraction(1), Fraction(1)
            for iv in real_intervals:
                rlo, rhi = polyq.refine_root(f, iv[0], iv[1], w)
                alo, ahi = sorted((abs(rlo), abs(rhi)))
                if rlo < 0 < rhi:
                    alo = Fraction(0)
                pr_lo *= alo
                pr_hi *= ahi
            if pr_lo > target:
                return True
            if pr_hi < target:
                return False
            w /= 1 << 8
    # several complex pairs and no real roots outside: run Schur-Cohn over Q
    from .numfield import _all_roots_in_open_unit_disk
    coeffs = [QQ.from_rational(c) for c in f]
    return _all_roots_in_open_unit_disk(coeffs)


def _root_in_field(f, iv, field):
    """The root of f isolated by iv, as an element of `field`, or None."""
    if polyq.deg(f) == 1:
        return field.from_rational(-Fraction(f[0], f[1]))
    roots = roots_in_field(f, field)
    for r in roots:
        lo, hi = r.embed(Fraction(iv[1] - iv[0], 4))
        ilo, ihi = iv
        w = ihi - ilo
        while True:
            inside = ilo <= lo and hi <= ihi
            outside = hi < ilo or ihi < lo
            if inside:
                return r
            if outside:
                break
            w /= 256
            ilo, ihi = polyq.refine_root(f, ilo, ihi, w)
            lo, hi = r.embed(w / 4)
    return None


def roots_in_field(f, field):
    """All roots of a rational polynomial that lie in the given field.

    Factors f over Q(alpha) via sympy with alpha pinned to the field's
    distinguished real root, then reads off the linear factors.  Each
    claimed root is re-verified exactly.
    """
    import sympy

    f = [Fraction(c) for c in polyq.trim(f)]
    if field.degree == 1:
        return [field.from_rational(r) for r in polyq.rational_roots(
            polyq.clear_denominators(f))]
    x = sympy.Symbol("x")
    minp = sum(int(c) * x**i for i, c in enumerate(field.min_poly))
    # identify which real root of the minimal polynomial is distinguished;
    # CRootOf indexes real roots in ascending order
    all_roots = polyq.isolate_real_roots([Fraction(c) for c in field.min_poly])
    lo, hi = field.refine(Fraction(1, 1 << 64))
    idx = next(i for i, (rlo, rhi) in enumerate(all_roots)
               if not (hi <= rlo or rhi <= lo))
    alpha = sympy.CRootOf(minp, idx)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i
               for i, c in enumerate(f))
    poly = sympy.Poly(expr, x, extension=alpha)
    out = []
    for factor, _mult in poly.factor_list()[1]:
        if factor.degree() != 1:
            continue
        c1, c0 = factor.rep.to_list()
        cand = -(_anp_to_element(c0, field) / _anp_to_element(c1, field))
        # exact re-check against f
        acc = field.zero()
        for i in range(polyq.deg(f), -1, -1):
            acc = acc * cand + field.from_rational(f[i])
        if acc.is_zero():
            out.append(cand)
    return out


def _anp_to_element(anp, field):
    """Convert a sympy ANP (polynomial in alpha, descending) to a FieldElement."""
    desc = anp.to_list()
    asc = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(desc)]
    return field.element(asc)


def _spectrum(M, c_rows, perron_normalizer, field=None):
    """Shared Mercat machinery; see subshift/suspension entry points."""
    K, pairs = _expanding_structure(M, field=field)
    d = M.nrows
    mu_p, v_p = pairs[0]
    # normalize the Perron eigenvector
    norm = perron_normalizer(K, v_p)
    if norm.is_zero():
        raise UnsupportedSpectrumError("degenerate Perron normalization")
    v1 = [e * norm.inverse() for e in v_p]
    columns = [v1] + [v for _mu, v in pairs[1:]]
    # coboundary block over K
    C = [[_to_K(K, x) for x in row] for row in c_rows]
    CV = xl.ExactMatrix(K, [[_dotK(K, row, col) for col in columns] for row in C])
    kernel = xl.rational_kernel(CV)
    constraints = []
    for z in kernel:
        # Vz in K^d; each power-basis coordinate gives a rational constraint
        vz = []
        for i in range(d):
            acc = K.zero()
            for j, col in enumerate(columns):
                acc = acc + col[i] * z[j]
            vz.append(acc)
        for t in range(K.degree):
            row = [vz[i].coords[t] for i in range(d)]
            if any(row):
                constraints.append(_primitive_int(row))
    if constraints:
        w_rows = xl.kernel_int(xl.hnf(constraints))
    else:
        w_rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    w_rows = xl.hnf(w_rows) if w_rows else []
    generators = []
    for w in w_rows:
        g = K.zero()
        for i in range(d):
            if w[i]:
                g = g + v1[i] * w[i]
        generators.append(g)
    # reduce generators to a lattice basis over the power basis of K
    lattice_rows = [list(g.coords) for g in generators]
    den = 1
    for r in lattice_rows:
        for xq in r:
            den = den * xq.denominator // _gcd(den, xq.denominator)
    ints = [[int(xq * den) for xq in r] for r in lattice_rows]
    reduced = xl.hnf([r for r in ints if any(r)])
    gens = [K.element([Fraction(v, den) for v in row]) for row in reduced]
    rank = len(gens)
    return K, gens, rank, w_rows, v1


def _to_K(K, x):
    if isinstance(x, FieldElement):
        if x.field is K or K.same_field(x.field):
            return x
        raise UnsupportedSpectrumError("height vector in an incompatible field")
    return K.from_rational(x)


def _dotK(K, row, col):
    acc = K.zero()
    for a, b in zip(row, col):
        acc = acc + (a * b)
    return acc


def subshift_eigenvalues(sigma, cap=30):
    """Additive eigenvalue group of the substitution subshift.

    Weak mixing verdict: the subshift is (additively) weakly mixing when
    the group reduces to the integers.
    """
    if not sigma.is_primitive():
        raise ValueError("primitive substitution required")
    M = sigma.incidence_matrix()
    cob = coboundary_space(sigma, cap=cap)
    ones_m = [[sum(M.rows[i][j].as_rational() for i in range(M.nrows))
               for j in range(M.ncols)]]
    c_rows = ones_m + [list(map(Fraction, r)) for r in cob]

    def normalizer(K, v):
        acc = K.zero()
        for j in range(M.ncols):
            acc = acc + v[j] * Fraction(ones_m[0][j])
        return acc

    K, gens, rank, w_rows, v1 = _spectrum(M, c_rows, normalizer)
    wm = all(g.is_rational() and g.as_rational().denominator == 1 for g in gens)
    return SpectrumResult(K, gens, rank, wm, w_rows, v1)


def suspension_eigenvalues(sigma, heights, cap=30):
    """Eigenvalue group of the suspension flow with the given heights.

    `heights` is a list of positive FieldElements sharing one field that
    must contain every expanding eigenvalue of the incidence matrix.
    The height vector is normalized so it pairs to one with the Perron
    eigenvector, making the result the honest group of the flow whose
    return times are the given heights.
    """
    if not sigma.is_primitive():
        raise ValueError("primitive substitution required")
    field = heights[0].field
    for h in heights:
        if h.sign() <= 0:
            raise ValueError("heights must be positive")
    M = sigma.incidence_matrix()
    cob = coboundary_space(sigma, cap=cap)
    c_rows = [list(heights)] + [list(map(Fraction, r)) for r in cob]

    def normalizer(K, v):
        acc = K.zero()
        for j in range(M.ncols):
            acc = acc + v[j] * heights[j]
        return acc

    K, gens, rank, w_rows, v1 = _spectrum(M, c_rows, normalizer, field=field)
    wm = rank == 0 or all(g.is_zero() for g in gens)
    return SpectrumResult(K, gens, rank, wm, w_rows, v1)

"""Exact arithmetic in characteristic p: finite fields GF(p^n), dense
univariate polynomials over them, and the rational function field GF(p^n)(t)
with the derivation d/dt.

Representation conventions used throughout the package:

* GF(p) residues are plain ints in ``range(p)``.
* An element of F_q = GF(p^n) is a length-n coordinate tuple in the power
  basis 1, g, ..., g^(n-1) of the generator g (the class of Y modulo the
  field's defining polynomial).
* Polynomials are dense coefficient tuples, constant term first, with no
  trailing zeros; the zero polynomial is the empty tuple.
* Rational functions are fully reduced fractions with a monic denominator;
  zero is 0/1.

All values are immutable and hashable, all operations are pure functions,
and every randomized routine takes its RNG state as an explicit argument.
"""

from __future__ import annotations

import random

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
    ZeroPolynomial,
)


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# GF(p)[x] on plain int lists (internal helpers, used for modulus handling)
# ---------------------------------------------------------------------------

def _gfp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _gfp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _gfp_trim(out)


def _gfp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _gfp_trim(out)


def _gfp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gfp_trim(out)


def _gfp_divmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lb = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(r) >= len(b):
        c = (r[-1] * inv_lb) % p
        k = len(r) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] = (r[k + j] - c * y) % p
        _gfp_trim(r)
    return _gfp_trim(q), r


def _gfp_rem(a, b, p):
    """Remainder only, without building the quotient."""
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(r) > db:
        if r[-1]:
            c = (r[-1] * inv) % p
            off = len(r) - 1 - db
            for j in range(db):
                r[off + j] = (r[off + j] - c * b[j]) % p
        r.pop()
        while r and not r[-1]:
            r.pop()
    return r


def _gfp_gcd(a, b, p):
    a, b = _gfp_trim(list(a)), _gfp_trim(list(b))
    while b:
        a, b = b, _gfp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _gfp_pow_mod(a, e, m, p):
    result = [1]
    base = _gfp_divmod(a, m, p)[1]
    while e:
        if e & 1:
            result = _gfp_divmod(_gfp_mul(result, base, p), m, p)[1]
        base = _gfp_divmod(_gfp_mul(base, base, p), m, p)[1]
        e >>= 1
    return result


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gfp_irreducible(f, p):
    """Rabin irreducibility test for f over GF(p)."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    # x^(p^n) == x mod f
    h = x
    for _ in range(n):
        h = _gfp_pow_mod(h, p, f, p)
    if _gfp_sub(h, _gfp_divmod(x, f, p)[1], p):
        return False
    for ell in _prime_divisors(n):
        h = x
        for _ in range(n // ell):
            h = _gfp_pow_mod(h, p, f, p)
        if len(_gfp_gcd(_gfp_sub(h, x, p), f, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# The field F_q = GF(p^n)
# ---------------------------------------------------------------------------

class FqElem:
    """An element of GF(p^n), as coordinates in the power basis of g."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.coords == other.coords
            and self.field == other.field
        )

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        f = self.field
        p = f.p
        return f._make(tuple((x + y) % p for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        f = self.field
        p = f.p
        return f._make(tuple((x - y) % p for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        f = self.field
        p = f.p
        return f._make(tuple((-x) % p for x in self.coords))

    def __mul__(self, other):
        f = self.field
        n = f.n
        if n == 1:
            return f._make(((self.coords[0] * other.coords[0]) % f.p,))
        p = f.p
        a, b = self.coords, other.coords
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = conv[:n]
        for k, row in enumerate(f._red_rows):
            c = conv[n + k]
            if c:
                for i, rv in enumerate(row):
                    if rv:
                        out[i] += c * rv
        return f._make(tuple(v % p for v in out))

    def inv(self):
        f = self.field
        if not self:
            raise DivisionByZero("inverse of zero in GF(%d^%d)" % (f.p, f.n))
        if f.n == 1:
            return f._make((pow(self.coords[0], -1, f.p),))
        # extended Euclid of the coordinate polynomial against the modulus
        r0, r1 = f._modlist, _gfp_trim(list(self.coords))
        s0, s1 = [], [1]
        while r1:
            q, r = _gfp_divmod(r0, r1, f.p)
            r0, r1 = r1, r
            s0, s1 = s1, _gfp_sub(s0, _gfp_mul(q, s1, f.p), f.p)
        inv_lc = pow(r0[-1], -1, f.p)
        s0 = [(c * inv_lc) % f.p for c in s0]
        s0 = _gfp_divmod(s0, f._modlist, f.p)[1]
        return f._make(tuple(s0) + (0,) * (f.n - len(s0)))

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self):
        """a -> a^p."""
        return self ** self.field.p

    def frobenius_inverse(self):
        """The unique b with b^p = a, computed as a^(q/p)."""
        b = self
        for _ in range(self.field.n - 1):
            b = b.frobenius()
        return b

    def sort_key(self):
        return self.coords

    def __repr__(self):
        f = self.field
        if f.n == 1:
            return "%d" % self.coords[0]
        terms = []
        for i in range(f.n - 1, -1, -1):
            c = self.coords[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("g" if c == 1 else "%d*g" % c)
            else:
                terms.append("g^%d" % i if c == 1 else "%d*g^%d" % (c, i))
        return "+".join(terms) if terms else "0"


class FqField:
    """A description of GF(p^n): characteristic, degree and defining polynomial.

    The defining polynomial (``modulus``) is monic of degree n over GF(p),
    stored constant term first.  For n = 1 the placeholder Y - 0 is used.
    """

    __slots__ = ("p", "n", "q", "modulus", "_modlist", "_red_rows", "zero",
                 "one", "_cache")

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self._modlist = _gfp_trim(list(modulus))
        # reduction table: coordinates of Y^(n+k) modulo the modulus
        rows = []
        for k in range(n - 1):
            rem = _gfp_divmod([0] * (n + k) + [1], self._modlist, p)[1]
            rows.append(tuple(rem) + (0,) * (n - len(rem)))
        self._red_rows = tuple(rows)
        if n == 1 and p <= 4096:
            self._cache = tuple(FqElem(self, (v,)) for v in range(p))
        else:
            self._cache = None
        self.zero = self._make((0,) * n)
        self.one = self._make((1,) + (0,) * (n - 1))

    def _make(self, coords):
        if self._cache is not None:
            return self._cache[coords[0]]
        return FqElem(self, coords)

    def elem(self, coords) -> FqElem:
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.n:
            raise DegreeMismatch(
                "expected %d coordinates, got %d" % (self.n, len(coords))
            )
        return self._make(coords)

    def from_int(self, k: int) -> FqElem:
        return self._make((k % self.p,) + (0,) * (self.n - 1))

    def gen(self) -> FqElem:
        """The power-basis generator g (the class of Y)."""
        if self.n == 1:
            # class of Y modulo the degree-1 modulus Y + c0
            return self._make(((-self.modulus[0]) % self.p,))
        return self._make((0, 1) + (0,) * (self.n - 2))

    def all_elements(self):
        """All q elements, in deterministic base-p counting order."""
        def rec(i):
            if i == self.n:
                yield ()
                return
            for rest in rec(i + 1):
                for c in range(self.p):
                    yield (c,) + rest
        for coords in rec(0):
            yield self._make(coords)

    def random(self, rng: random.Random) -> FqElem:
        return self._make(tuple(rng.randrange(self.p) for _ in range(self.n)))

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return "GF(%d)" % self.q if self.n == 1 else "GF(%d^%d)" % (self.p, self.n)


def fq_make(p: int, n: int = 1, modulus=None) -> FqField:
    """Construct GF(p^n), validating or searching for a defining polynomial.

    When ``modulus`` is omitted, the lexicographically smallest monic
    irreducible of degree n over GF(p) is selected by exhaustive search
    (coefficients compared constant term first).
    """
    if not is_prime(p):
        raise NotPrime("%d is not prime" % p)
    if n < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if n == 1:
        if modulus is not None:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != 2 or modulus[-1] != 1:
                raise DegreeMismatch("modulus must be monic of degree 1")
        else:
            modulus = [0, 1]
        return FqField(p, 1, modulus)
    if modulus is not None:
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic of degree %d" % n)
        if not _gfp_irreducible(modulus, p):
            raise ReducibleModulus("modulus is reducible over GF(%d)" % p)
        return FqField(p, n, modulus)
    # exhaustive search in lexicographic order on (c_0, c_1, ..., c_{n-1})
    for value in range(p ** n):
        coeffs = []
        v = value
        for _ in range(n):
            coeffs.append(v % p)
            v //= p
        cand = coeffs + [1]
        if _gfp_irreducible(cand, p):
            return FqField(p, n, cand)
    raise ReducibleModulus("no irreducible polynomial found")  # unreachable


def fq_inv(a: FqElem) -> FqElem:
    return a.inv()


def fq_frobenius_inverse(a: FqElem) -> FqElem:
    return a.frobenius_inverse()


# ---------------------------------------------------------------------------
# Dense univariate polynomials over an arbitrary coefficient field
# ---------------------------------------------------------------------------

class Poly:
    """A dense univariate polynomial over a coefficient field.

    The coefficient field can be GF(p^n), GF(p^n)(t), or any object exposing
    ``zero``, ``one``, ``from_int`` and elements with ring operator overloads.
    The same class therefore serves GF(q)[t], GF(q)(t)[Y] and the polynomial
    matrices used in normal-form computations.
    """

    __slots__ = ("field", "coeffs", "_icache")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self._icache = None

    # -- construction helpers

    @staticmethod
    def zero(field):
        return Poly(field, ())

    @staticmethod
    def one(field):
        return Poly(field, (field.one,))

    @staticmethod
    def x(field):
        return Poly(field, (field.zero, field.one))

    @staticmethod
    def const(field, c):
        return Poly(field, (c,))

    # -- structure

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.coeffs == other.coeffs
            and self.field == other.field
        )

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations

    def _ints(self):
        # fast-path carrier for GF(p) coefficients, computed once
        cached = self._icache
        if cached is not None:
            return cached if cached is not False else None
        f = self.field
        if isinstance(f, FqField) and f.n == 1:
            out = [c.coords[0] for c in self.coeffs]
            self._icache = out
            return out
        self._icache = False
        return None

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        out = [z] * n
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return Poly(self.field, out)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Poly(self.field, ())
        ia = self._ints()
        if ia is not None:
            ib = other._ints()
            p = self.field.p
            out = [0] * (len(ia) + len(ib) - 1)
            for i, x in enumerate(ia):
                if x:
                    for j, y in enumerate(ib):
                        out[i + j] = (out[i + j] + x * y) % p
            mk = self.field._make
            return Poly(self.field, [mk((v,)) for v in out])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + x * y
        return Poly(self.field, out)

    def scale(self, c):
        if not c:
            return Poly(self.field, ())
        return Poly(self.field, [a * c for a in self.coeffs])

    def __pow__(self, e):
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        if not other:
            raise DivisionByZero("polynomial division by zero")
        ia = self._ints()
        if ia is not None:
            ib = other._ints()
            p = self.field.p
            q, r = _gfp_divmod(ia, ib, p)
            mk = self.field._make
            return (
                Poly(self.field, [mk((v,)) for v in q]),
                Poly(self.field, [mk((v,)) for v in r]),
            )
        inv_lb = other.lc.inv() if hasattr(other.lc, "inv") else self.field.one / other.lc
        r = list(self.coeffs)
        db = other.degree
        q = [self.field.zero] * max(len(r) - db, 0)
        while len(r) > db:
            c = r[-1] * inv_lb
            k = len(r) - db - 1
            if c:
                q[k] = c
                for j, y in enumerate(other.coeffs):
                    r[k + j] = r[k + j] - c * y
            r.pop()
            while r and not r[-1]:
                r.pop()
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self:
            return self
        lc = self.lc
        if lc == self.field.one:
            return self
        inv = lc.inv() if hasattr(lc, "inv") else self.field.one / lc
        return self.scale(inv)

    def derivative(self):
        """Formal derivative with respect to the polynomial variable."""
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i] * f.from_int(i))
        return Poly(f, out)

    def eval(self, x):
        """Horner evaluation at an element of the coefficient field."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_up(self, k):
        """Multiply by the k-th power of the variable."""
        if not self:
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def map_coeffs(self, func, field=None):
        return Poly(field if field is not None else self.field,
                    [func(c) for c in self.coeffs])

    def inflate(self, k):
        """Substitute x -> x^k."""
        if k == 1 or not self:
            return self
        z = self.field.zero
        out = []
        for i, c in enumerate(self.coeffs):
            if i:
                out.extend([z] * (k - 1))
            out.append(c)
        return Poly(self.field, out)

    def deflate(self, k):
        """Substitute x^k -> x when every exponent is divisible by k, keeping
        coefficients unchanged; None otherwise."""
        if k == 1:
            return self
        out = []
        for i, c in enumerate(self.coeffs):
            if i % k == 0:
                out.append(c)
            elif c:
                return None
        return Poly(self.field, out)

    def sort_key(self):
        return (len(self.coeffs), tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else "x^%d" % i
                parts.append(xs if cs == "1" else "(%s)*%s" % (cs, xs))
        return " + ".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over the coefficient field."""
    ia, ib = a._ints(), b._ints()
    if ia is not None and ib is not None:
        g = _gfp_gcd(ia, ib, a.field.p)
        mk = a.field._make
        return Poly(a.field, [mk((v,)) for v in g])
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        lc = r0.lc
        inv = lc.inv() if hasattr(lc, "inv") else field.one / lc
        r0, s0, t0 = r0.scale(inv), s0.scale(inv), t0.scale(inv)
    return r0, s0, t0


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly.zero(a.field)
    g = poly_gcd(a, b)
    return ((a * b).divmod(g)[0]).monic()


def poly_pth_root(f: Poly) -> Poly | None:
    """The p-th root of a polynomial over GF(p^n), or None.

    Succeeds exactly when every exponent is divisible by p; coefficients are
    mapped through the inverse Frobenius (GF(p^n) is perfect).
    """
    p = f.field.p
    d = f.deflate(p)
    if d is None:
        return None
    return d.map_coeffs(lambda c: c.frobenius_inverse())


# ---------------------------------------------------------------------------
# A thin "coefficient ring" adapter so Poly can nest (bivariate work)
# ---------------------------------------------------------------------------

class PolyRing:
    """GF(q)[t] seen as a coefficient ring for polynomials in a second
    variable.  Only the ring part of the field protocol is provided; no
    division happens through this adapter."""

    __slots__ = ("base", "zero", "one")

    def __init__(self, base: FqField):
        self.base = base
        self.zero = Poly.zero(base)
        self.one = Poly.one(base)

    def from_int(self, k):
        return Poly.const(self.base, self.base.from_int(k))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.base == other.base

    def __hash__(self):
        return hash(("PolyRing", self.base))

    def __repr__(self):
        return "%r[t]" % self.base


# ---------------------------------------------------------------------------
# Factorisation over GF(q)[t]
# ---------------------------------------------------------------------------

def _ddf(f: Poly, rng):
    """Distinct-degree factorisation of a monic squarefree f; yields
    (product-of-irreducibles-of-degree-d, d)."""
    field = f.field
    q = field.q
    x = Poly.x(field)
    h = x
    d = 0
    out = []
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = _poly_pow_mod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f.divmod(g)[0]
            h = h.divmod(f)[1]
    return out


def _poly_pow_mod(a: Poly, e: int, m: Poly) -> Poly:
    result = Poly.one(a.field)
    base = a.divmod(m)[1]
    while e:
        if e & 1:
            result = (result * base).divmod(m)[1]
        base = (base * base).divmod(m)[1]
        e >>= 1
    return result


def _edf(f: Poly, d: int, rng) -> list[Poly]:
    """Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree f
    whose irreducible factors all have degree d."""
    field = f.field
    if f.degree == d:
        return [f]
    while True:
        h = Poly(field, [field.random(rng) for _ in range(f.degree)])
        if not h or h.degree == 0:
            continue
        g = poly_gcd(h, f)
        if 0 < g.degree < f.degree:
            break
        if field.p == 2:
            # absolute trace to GF(2)
            w = Poly.zero(field)
            s = h.divmod(f)[1]
            for _ in range(d * field.n):
                w = w + s
                s = (s * s).divmod(f)[1]
        else:
            e = (field.q ** d - 1) // 2
            w = _poly_pow_mod(h, e, f) - Poly.one(field)
        g = poly_gcd(w, f)
        if 0 < g.degree < f.degree:
            break
    return sorted(
        _edf(g, d, rng) + _edf(f.divmod(g)[0], d, rng),
        key=lambda h: h.sort_key(),
    )


def _factor_squarefree_fq(f: Poly, rng) -> list[Poly]:
    """Irreducible factors of a monic squarefree polynomial over GF(q)."""
    out = []
    for part, d in _ddf(f, rng):
        out.extend(_edf(part, d, rng))
    return sorted(out, key=lambda h: h.sort_key())


def poly_factor_fq(f: Poly, rng: random.Random | None = None):
    """Factor a nonzero polynomial over GF(p^n).

    Returns a deterministically ordered list of (monic irreducible,
    multiplicity) pairs whose product, scaled by the leading coefficient of
    the input, reproduces f.  Squarefree reduction descends through p-th
    roots when the derivative vanishes.
    """
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(0)
    f = f.monic()
    result: dict[Poly, int] = {}

    def accumulate(g: Poly, mult: int):
        if g.degree == 0:
            return
        fp = g.derivative()
        if not fp:
            root = poly_pth_root(g)
            accumulate(root, mult * g.field.p)
            return
        d = poly_gcd(g, fp)
        if d.degree == 0:
            for irr in _factor_squarefree_fq(g, rng):
                result[irr] = result.get(irr, 0) + mult
            return
        s = g.divmod(d)[0]
        rem = g
        for irr in _factor_squarefree_fq(s, rng):
            m = 0
            while True:
                q, r = rem.divmod(irr)
                if r:
                    break
                rem = q
                m += 1
            result[irr] = result.get(irr, 0) + mult * m
        accumulate(rem, mult)

    accumulate(f, 1)
    return sorted(result.items(), key=lambda kv: kv[0].sort_key())


# ---------------------------------------------------------------------------
# Rational functions GF(q)(t)
# ---------------------------------------------------------------------------

class RatFunc:
    """A reduced fraction of polynomials over GF(q), with monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        # trusted constructor: use RatFunc.make for reduction
        self.field = field
        self.num = num
        self.den = den

    @staticmethod
    def make(field, num: Poly, den: Poly) -> "RatFunc":
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not num:
            return field.zero
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lc = den.lc
        if lc != field.base.one:
            inv = lc.inv()
            num = num.scale(inv)
            den = den.scale(inv)
        return RatFunc(field, num, den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        f = self.field
        if not self.num:
            return other
        if not other.num:
            return self
        d1, d2 = self.den, other.den
        g = poly_gcd(d1, d2)
        if g.degree == 0:
            # coprime denominators: the sum is already reduced
            num = self.num * d2 + other.num * d1
            if not num:
                return f.zero
            return RatFunc(f, num, d1 * d2)
        d1r = d1.divmod(g)[0]
        d2r = d2.divmod(g)[0]
        num = self.num * d2r + other.num * d1r
        if not num:
            return f.zero
        h = poly_gcd(num, g)
        if h.degree > 0:
            num = num.divmod(h)[0]
            g = g.divmod(h)[0]
        return RatFunc(f, num, d1r * d2r * g)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if not self.num:
            return self
        return RatFunc(self.field, -self.num, self.den)

    def __mul__(self, other):
        f = self.field
        if not self.num or not other.num:
            return f.zero
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.degree == 0 else self.num.divmod(g1)[0]
        d2 = other.den if g1.degree == 0 else other.den.divmod(g1)[0]
        n2 = other.num if g2.degree == 0 else other.num.divmod(g2)[0]
        d1 = self.den if g2.degree == 0 else self.den.divmod(g2)[0]
        return RatFunc(f, n1 * n2, d1 * d2)

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        f = self.field
        num, den = self.den, self.num
        lc = den.lc
        if lc != f.base.one:
            i = lc.inv()
            num, den = num.scale(i), den.scale(i)
        return RatFunc(f, num, den)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "RatFunc":
        """d/dt by the quotient rule, fully reduced."""
        n, d = self.num, self.den
        if d.degree == 0:
            return RatFunc.make(self.field, n.derivative(), d)
        return RatFunc.make(self.field, n.derivative() * d - n * d.derivative(), d * d)

    def pth_root(self) -> "RatFunc | None":
        """The p-th root when this is a p-th power, else None."""
        rn = poly_pth_root(self.num)
        if rn is None:
            return None
        rd = poly_pth_root(self.den)
        if rd is None:
            return None
        return RatFunc(self.field, rn, rd)

    def deflate(self, k) -> "RatFunc | None":
        """Substitute t^k -> t (coefficients unchanged) when this lies in
        GF(q)(t^k); None otherwise."""
        rn = self.num.deflate(k)
        if rn is None:
            return None
        rd = self.den.deflate(k)
        if rd is None:
            return None
        return RatFunc(self.field, rn, rd)

    def inflate(self, k) -> "RatFunc":
        """Substitute t -> t^k (coefficients unchanged)."""
        return RatFunc(self.field, self.num.inflate(k), self.den.inflate(k))

    def frobenius_coeffs(self) -> "RatFunc":
        """Apply c -> c^p to every GF(q) coefficient."""
        return RatFunc(
            self.field,
            self.num.map_coeffs(lambda c: c.frobenius()),
            self.den.map_coeffs(lambda c: c.frobenius()),
        )

    def frobenius_inverse_coeffs(self) -> "RatFunc":
        """Apply c -> c^(1/p) to every GF(q) coefficient."""
        return RatFunc(
            self.field,
            self.num.map_coeffs(lambda c: c.frobenius_inverse()),
            self.den.map_coeffs(lambda c: c.frobenius_inverse()),
        )

    def tp_components(self) -> "list[RatFunc]":
        """The decomposition f = sum_u t^u * g_u(t^p) for 0 <= u < p.

        Returns the list [g_0, ..., g_(p-1)] as rational functions in the
        deflated variable (s = t^p).
        """
        f = self.field
        p = f.base.p
        big_num = self.num * self.den ** (p - 1)
        big_den = self.den.map_coeffs(lambda c: c.frobenius()).inflate(p)
        # big_den as a polynomial in s: undo the inflation
        den_s = big_den.deflate(p)
        out = []
        zero_poly = Poly.zero(f.base)
        for u in range(p):
            cs = [big_num.coeff(p * i + u) for i in range(big_num.degree // p + 1)]
            num_u = Poly(f.base, cs)
            if not num_u:
                out.append(f.zero)
            else:
                out.append(RatFunc.make(f, num_u, den_s))
        return out

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num).replace("x", "t")
        return "(%s)/(%s)" % (
            repr(self.num).replace("x", "t"),
            repr(self.den).replace("x", "t"),
        )


class RatFuncField:
    """The rational function field GF(q)(t) with the derivation d/dt.

    The same class also carries values read in the constant subfield, with
    s = t^p as the variable: the representation is identical, only the
    surrounding code's interpretation (and printing) differs.
    """

    __slots__ = ("base", "zero", "one", "t")

    def __init__(self, base: FqField):
        self.base = base
        self.zero = RatFunc(self, Poly.zero(base), Poly.one(base))
        self.one = RatFunc(self, Poly.one(base), Poly.one(base))
        self.t = RatFunc(self, Poly.x(base), Poly.one(base))

    def from_poly(self, num: Poly) -> RatFunc:
        if not num:
            return self.zero
        return RatFunc(self, num, Poly.one(self.base))

    def from_int(self, k: int) -> RatFunc:
        return self.from_poly(Poly.const(self.base, self.base.from_int(k)))

    def from_base(self, c: FqElem) -> RatFunc:
        if not c:
            return self.zero
        return RatFunc(self, Poly.const(self.base, c), Poly.one(self.base))

    def elem(self, num: Poly, den: Poly) -> RatFunc:
        return RatFunc.make(self, num, den)

    def derivative(self, f: RatFunc) -> RatFunc:
        return f.derivative()

    def random(self, rng: random.Random, num_deg=2, den_deg=2) -> RatFunc:
        num = Poly(self.base, [self.base.random(rng) for _ in range(num_deg + 1)])
        den = Poly.zero(self.base)
        while not den:
            den = Poly(self.base, [self.base.random(rng) for _ in range(den_deg + 1)])
        return RatFunc.make(self, num, den)

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.base == other.base

    def __hash__(self):
        return hash(("RatFuncField", self.base))

    def __repr__(self):
        return "%r(t)" % self.base


def ratfunc_derivative(f: RatFunc) -> RatFunc:
    return f.derivative()


def ratfunc_pth_root(f: RatFunc) -> RatFunc | None:
    """The p-th root of f in GF(q)(t) when f is a p-th power, else None.

    Since GF(q) is perfect, being a p-th power is the same as lying in the
    constant subfield GF(q)(t^p).
    """
    return f.pth_root()

"""Factorisation of monic polynomials in GF(q)(t)[Y] into irreducibles.

The strategy is classical: clear denominators to a primitive bivariate
polynomial over GF(q)[t]; reduce to the squarefree separable case (with a
p-th-root descent when the Y-derivative vanishes, which can surface genuinely
inseparable irreducible factors); pick an evaluation point t0 with a
degree-preserving squarefree specialization, enlarging the evaluation field
to GF(q^k), k <= 4, when the base field is too small; factor the
specialization; Hensel-lift the local factors in powers of (t - t0); and
recombine subsets by trial exact division.

Lift precision is 2*deg_t + 1 of the cleared polynomial: a factor's t-degree
cannot exceed the total, and doubling guards the leading-coefficient products
formed during recombination.
"""

from __future__ import annotations

import itertools
import random

from .errors import NoGoodSpecialization, NotMonic
from .fieldkit import (
    FqField,
    Poly,
    RatFunc,
    fq_make,
    poly_factor_fq,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
)
from .linalg import Matrix, solve


def is_separable_irreducible(n_poly: Poly) -> bool:
    """True when a monic irreducible over GF(q)(t) has dN/dY != 0."""
    return bool(n_poly.derivative())


# ---------------------------------------------------------------------------
# Field embeddings GF(q) -> GF(q^k)
# ---------------------------------------------------------------------------

class FieldEmbedding:
    """The canonical-by-search embedding of GF(p^n) into GF(p^(n*k)).

    The generator is sent to the smallest root of the defining polynomial in
    the big field; preimages are computed by solving a GF(p)-linear system
    over the power-basis images.
    """

    def __init__(self, small: FqField, big: FqField, rng=None):
        self.small = small
        self.big = big
        if small == big:
            self.gen_image = big.gen()
        else:
            lifted = Poly(big, [big.from_int(c) for c in small.modulus])
            roots = sorted(
                (-f.coeff(0) for f, _ in poly_factor_fq(lifted, rng) if f.degree == 1),
                key=lambda r: r.sort_key(),
            )
            self.gen_image = roots[0]
        prime = fq_make(small.p, 1)
        powers = [big.one]
        for _ in range(small.n - 1):
            powers.append(powers[-1] * self.gen_image)
        self._powers = powers
        cols = [[prime.from_int(c) for c in pw.coords] for pw in powers]
        self._solve_matrix = Matrix(prime, list(zip(*cols)))
        self._prime = prime

    def map(self, a):
        acc = self.big.zero
        for c, pw in zip(a.coords, self._powers):
            if c:
                acc = acc + self.big.from_int(c) * pw
        return acc

    def preimage(self, b):
        """The element of the small field mapping to b, or None."""
        if self.small == self.big:
            return b
        target = [self._prime.from_int(c) for c in b.coords]
        x = solve(self._solve_matrix, target)
        if x is None:
            return None
        return self.small.elem([c.coords[0] for c in x])


# ---------------------------------------------------------------------------
# Truncated power series in u with GF(q^k) coefficients, and Y-polynomials
# over them (plain lists, ascending in Y)
# ---------------------------------------------------------------------------

def _ser_trunc(c: Poly, prec: int) -> Poly:
    if c.degree < prec:
        return c
    return Poly(c.field, c.coeffs[:prec])


def _ser_inv(c: Poly, prec: int) -> Poly:
    """Newton inverse of a series with invertible constant term."""
    field = c.field
    inv = Poly.const(field, c.coeff(0).inv())
    k = 1
    two = Poly.const(field, field.from_int(2))
    while k < prec:
        k = min(2 * k, prec)
        inv = _ser_trunc(inv * (two - _ser_trunc(c, k) * inv), k)
    return inv


def _ytrim(f):
    while f and not f[-1]:
        f.pop()
    return f


def _ymul(f, g, prec, field):
    if not f or not g:
        return []
    out = [Poly.zero(field) for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = _ser_trunc(out[i + j] + a * b, prec)
    return _ytrim(out)


def _yadd(f, g, field):
    out = [Poly.zero(field)] * max(len(f), len(g))
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = out[i] + b
    return _ytrim(out)


def _ysub(f, g, field):
    out = [Poly.zero(field)] * max(len(f), len(g))
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = out[i] - b
    return _ytrim(out)


def _ydivmod_monic(f, g, prec, field):
    """Divide by a Y-monic divisor with series coefficients."""
    r = [(_ser_trunc(c, prec)) for c in f]
    _ytrim(r)
    dg = len(g) - 1
    q = [Poly.zero(field)] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = r[-1]
        k = len(r) - 1 - dg
        q[k] = c
        for j, b in enumerate(g):
            r[k + j] = _ser_trunc(r[k + j] - c * b, prec)
        r.pop()
        _ytrim(r)
    return q, r


def _hensel_pair(f, g0, h0, bez_s, bez_t, prec, field):
    """Lift f = G*H from precision 1 to the requested precision.

    Input: f monic in Y with series coefficients; g0, h0 monic with constant
    coefficients; bez_s*h0 + bez_t*g0 = 1 over the residue field.  Returns
    (G, H), both exactly monic in Y, with f = G*H modulo u^prec.
    """
    G, H = list(g0), list(h0)
    s, t = list(bez_s), list(bez_t)
    cur = 1
    while cur < prec:
        nxt = min(2 * cur, prec)
        e = _ysub([_ser_trunc(c, nxt) for c in f], _ymul(G, H, nxt, field), field)
        if e:
            r = _ydivmod_monic(_ymul(s, e, nxt, field), G, nxt, field)[1]
            G = _yadd(G, r, field)
            H, rem = _ydivmod_monic([_ser_trunc(c, nxt) for c in f], G, nxt, field)
            if _ytrim(rem):
                raise AssertionError("Hensel step lost divisibility")
        # refresh the Bezout pair to the new precision
        b = _ysub(
            _yadd(_ymul(s, H, nxt, field), _ymul(t, G, nxt, field), field),
            [Poly.one(field)],
            field,
        )
        if b:
            c, d = _ydivmod_monic(_ymul(s, b, nxt, field), G, nxt, field)
            s = _ysub(s, d, field)
            t = _ysub(_ysub(t, _ymul(t, b, nxt, field), field),
                      _ymul(c, H, nxt, field), field)
        cur = nxt
    return G, H


def _hensel_list(f, parts, prec, field):
    """Lift a pairwise-coprime factorisation f = prod(parts) mod u, given as
    monic polynomials over the residue field, to precision prec (factor-tree
    multifactor lifting)."""
    if len(parts) == 1:
        return [[_ser_trunc(c, prec) for c in f]]
    mid = len(parts) // 2
    g0 = parts[0]
    for pp in parts[1:mid]:
        g0 = g0 * pp
    h0 = parts[mid]
    for pp in parts[mid + 1:]:
        h0 = h0 * pp
    _, u, v = poly_xgcd(h0, g0)  # u*h0 + v*g0 = 1
    g0_l = [Poly.const(field, c) for c in g0.coeffs]
    h0_l = [Poly.const(field, c) for c in h0.coeffs]
    s_l = [Poly.const(field, c) for c in u.coeffs]
    t_l = [Poly.const(field, c) for c in v.coeffs]
    G, H = _hensel_pair(f, g0_l, h0_l, s_l, t_l, prec, field)
    return (_hensel_list(G, parts[:mid], prec, field)
            + _hensel_list(H, parts[mid:], prec, field))


# ---------------------------------------------------------------------------
# The squarefree separable case
# ---------------------------------------------------------------------------

def _clear_denominators(s_poly: Poly):
    """Monic S over GF(q)(t)  ->  primitive F in GF(q)[t][Y] plus its leading
    Y-coefficient (a polynomial in t)."""
    ratfield = s_poly.field
    den = Poly.one(ratfield.base)
    for c in s_poly.coeffs:
        if c:
            den = poly_lcm(den, c.den)
    cleared = []
    for c in s_poly.coeffs:
        if c:
            cleared.append(c.num * den.divmod(c.den)[0])
        else:
            cleared.append(Poly.zero(ratfield.base))
    content = Poly.zero(ratfield.base)
    for c in cleared:
        if c:
            content = poly_gcd(content, c) if content else c.monic()
    if content.degree > 0:
        cleared = [c.divmod(content)[0] if c else c for c in cleared]
    return cleared


def _shift_series(c: Poly, t0, emb: FieldEmbedding) -> Poly:
    """c(t0 + u) as a polynomial in u over the big field (Horner)."""
    big = emb.big
    shift = Poly(big, [t0, big.one])  # t0 + u
    acc = Poly.zero(big)
    for coeff in reversed(c.coeffs):
        acc = acc * shift + Poly.const(big, emb.map(coeff))
    return acc


def _unshift_to_t(c: Poly, t0) -> Poly:
    """c(u) with u = t - t0, returned as a polynomial in t (Horner)."""
    big = c.field
    shift = Poly(big, [-t0, big.one])  # t - t0
    acc = Poly.zero(big)
    for coeff in reversed(c.coeffs):
        acc = acc * shift + Poly.const(big, coeff)
    return acc


def _spec_fields(base: FqField, rng):
    """Evaluation fields GF(q^k), k = 1..4, with their embeddings."""
    yield FieldEmbedding(base, base, rng)
    for k in (2, 3, 4):
        big = fq_make(base.p, base.n * k)
        yield FieldEmbedding(base, big, rng)


def _factor_squarefree_separable(s_poly: Poly, rng) -> list[Poly]:
    """Monic irreducible factors of a monic squarefree separable polynomial
    over GF(q)(t)."""
    ratfield = s_poly.field
    base = ratfield.base
    if s_poly.degree == 1:
        return [s_poly]
    cleared = _clear_denominators(s_poly)
    deg_t = max(c.degree for c in cleared if c)
    if deg_t == 0:
        # constant coefficients: factor directly over GF(q)
        fq_poly = Poly(base, [c.coeff(0) for c in cleared])
        return [
            f.map_coeffs(ratfield.from_base, ratfield)
            for f, _ in poly_factor_fq(fq_poly, rng)
        ]
    prec = 2 * deg_t + 1
    lc_t = cleared[-1]
    dfdy = _ytrim([
        cleared[i].scale(base.from_int(i)) for i in range(1, len(cleared))
    ])
    for emb in _spec_fields(base, rng):
        big = emb.big
        for t0 in big.all_elements():
            if not lc_t.map_coeffs(emb.map, big).eval(t0):
                continue
            spec = Poly(big, [c.map_coeffs(emb.map, big).eval(t0) for c in cleared])
            spec_d = Poly(big, [c.map_coeffs(emb.map, big).eval(t0) for c in dfdy])
            if poly_gcd(spec, spec_d).degree != 0:
                continue
            return _lift_and_recombine(s_poly, cleared, t0, emb, prec, rng)
    raise NoGoodSpecialization(
        "no squarefree degree-preserving evaluation point up to GF(q^4)"
    )


def _lift_and_recombine(s_poly, cleared, t0, emb, prec, rng):
    ratfield = s_poly.field
    big = emb.big
    # series picture around t0
    coeffs_u = [_shift_series(c, t0, emb) for c in cleared]
    lc_u = coeffs_u[-1]
    lc_inv = _ser_inv(lc_u, prec)
    f_mon = [_ser_trunc(c * lc_inv, prec) for c in coeffs_u]
    spec = Poly(big, [c.coeff(0) for c in f_mon])
    parts = [f for f, _ in poly_factor_fq(spec, rng)]
    if len(parts) == 1:
        return [s_poly]
    lifted = _hensel_list(f_mon, parts, prec, big)

    found = []
    remaining = s_poly
    indices = list(range(len(lifted)))
    while True:
        hit = None
        max_size = len(indices) // 2
        for size in range(1, max_size + 1):
            for subset in itertools.combinations(indices, size):
                cand = _candidate_factor(
                    remaining, lifted, subset, t0, emb, prec)
                if cand is not None:
                    hit = (subset, cand)
                    break
            if hit:
                break
        if hit is None:
            break
        subset, (factor, quotient) = hit
        found.append(factor)
        remaining = quotient
        indices = [i for i in indices if i not in subset]
        if not indices:
            break
    if remaining.degree > 0:
        found.append(remaining)
    return sorted(found, key=lambda f: f.sort_key())


def _candidate_factor(remaining, lifted, subset, t0, emb, prec):
    """Try one subset of local factors; on success return (monic factor over
    GF(q)(t), quotient)."""
    ratfield = remaining.field
    big = emb.big
    den_cur = Poly.one(ratfield.base)
    for c in remaining.coeffs:
        if c:
            den_cur = poly_lcm(den_cur, c.den)
    # the leading Y-coefficient of the cleared remaining polynomial, as a
    # series in u: a true factor times it lands in GF(q)[t] within precision
    prod = [_ser_trunc(_shift_series(den_cur, t0, emb), prec)]
    for i in subset:
        prod = _ymul(prod, lifted[i], prec, big)
    # back to the t variable, then down to GF(q)
    coeffs_t = []
    for c in prod:
        c_t = _unshift_to_t(c, t0)
        down = []
        for e in c_t.coeffs:
            small = emb.preimage(e)
            if small is None:
                return None
            down.append(small)
        coeffs_t.append(Poly(ratfield.base, down))
    lc = coeffs_t[-1]
    monic = Poly(ratfield, [
        RatFunc.make(ratfield, c, lc) if c else ratfield.zero for c in coeffs_t
    ])
    quotient, rem = remaining.divmod(monic)
    if rem:
        return None
    return monic, quotient


# ---------------------------------------------------------------------------
# Multiplicity assembly (characteristic-p-safe squarefree reduction)
# ---------------------------------------------------------------------------

def factor_monic_in_y(q_poly: Poly, rng: random.Random | None = None):
    """Factor a monic polynomial over GF(q)(t) into monic irreducibles.

    Returns a deterministically ordered list of (factor, multiplicity) pairs.
    Inseparable irreducible factors (with vanishing Y-derivative) are
    returned as such; downstream separability hypotheses are checked by the
    caller.
    """
    if not q_poly or not q_poly.is_monic():
        raise NotMonic("factorisation requires a monic polynomial")
    if rng is None:
        rng = random.Random(0)
    ratfield = q_poly.field
    p = ratfield.base.p

    def _coeff_pth_root(h: Poly):
        roots = []
        for c in h.coeffs:
            r = c.pth_root()
            if r is None:
                return None
            roots.append(r)
        return Poly(ratfield, roots)

    def _factor(g: Poly) -> dict[Poly, int]:
        out: dict[Poly, int] = {}
        if g.degree == 0:
            return out
        gp = g.derivative()
        if not gp:
            # g(Y) = inner(Y^p) with coefficients unchanged; an irreducible
            # factor h of inner yields either the p-th power of the
            # coefficient-rooted polynomial or an inseparable h(Y^p).
            inner = g.deflate(p)
            for h, m in _factor(inner).items():
                rooted = _coeff_pth_root(h)
                if rooted is not None:
                    out[rooted] = out.get(rooted, 0) + m * p
                else:
                    hy = h.inflate(p)
                    out[hy] = out.get(hy, 0) + m
            return out
        d = poly_gcd(g, gp)
        if d.degree == 0:
            for irr in _factor_squarefree_separable(g, rng):
                out[irr] = out.get(irr, 0) + 1
            return out
        # the separable factors of multiplicity not divisible by p show up in
        # g / gcd(g, g'); take their true multiplicities by trial division
        # and recurse on the invisible remainder
        s = g.divmod(d)[0]
        rem = g
        for irr in _factor_squarefree_separable(s, rng):
            m = 0
            while True:
                quo, r = rem.divmod(irr)
                if r:
                    break
                rem = quo
                m += 1
            out[irr] = out.get(irr, 0) + m
        for h, m in _factor(rem).items():
            out[h] = out.get(h, 0) + m
        return out

    return sorted(_factor(q_poly).items(), key=lambda kv: kv[0].sort_key())

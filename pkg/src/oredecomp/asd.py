"""The differential Artin-Schreier equation f^(p-1) + f^p = a^p in a
separable extension K = GF(q)(t)[a], and the reducibility test for the
central operator attached to the extension's defining polynomial.

The map phi(f) = f^(p-1) + f^p is GF(p)-linear (both the iterated derivative
and the Frobenius are), so solutions are found by a bounded-ansatz linear
solve over GF(p): the unknown is written over monomials
(GF(q)-basis element) * t^e / D * a^j with the denominator D and the degree
cap supplied by a pole analysis of the extension data.  On failure, the
bounds are doubled up to four times before reporting no solution.

A solution f certifies that (D - f) right-divides D^p - a^p, i.e. that the
central operator attached to the extension is reducible; the absence of a
bounded solution at the escalation cap is reported together with the bound
used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algext import ExtElem, ExtField, make_extension
from .errors import Inseparable
from .fieldkit import Poly, fq_make, poly_factor_fq, poly_lcm
from .linalg import Matrix, solve
from .ore import OrePoly, ore_divrem_right


@dataclass(frozen=True)
class PoleBound:
    """Denominator support with multiplicities, plus a numerator degree cap."""

    places: tuple          # monic irreducible polynomials over GF(q)[t]
    multiplicities: tuple  # one positive int per place
    num_degree_cap: int

    def denominator(self, base) -> Poly:
        d = Poly.one(base)
        for place, m in zip(self.places, self.multiplicities):
            d = d * place ** m
        return d

    def doubled(self) -> "PoleBound":
        return PoleBound(
            self.places,
            tuple(2 * m for m in self.multiplicities),
            2 * self.num_degree_cap,
        )


@dataclass(frozen=True)
class ASDSolution:
    """A verified solution of f^(p-1) + f^p = a^p."""

    f: ExtElem
    bound_used: PoleBound
    residual_checked: bool


@dataclass(frozen=True)
class NoSolution:
    """No solution within the escalated bound (reported, not raised)."""

    bound_used: PoleBound


def _resultant_y(A: Poly, B: Poly):
    """res_Y(A, B) over GF(q)(t) by the subresultant-free Euclidean recurrence."""
    field = A.field
    if not A or not B:
        return field.zero
    res = field.one
    while B.degree > 0:
        _, R = A.divmod(B)
        if not R:
            return field.zero
        res = res * B.lc ** (A.degree - R.degree) * field.from_int(
            (-1) ** (A.degree * B.degree)
        )
        A, B = B, R
    return res * B.coeff(0) ** A.degree


def asd_pole_bound(ext: ExtField) -> PoleBound:
    """The initial ansatz bound for the extension.

    Denominator support: the irreducible factors of the coordinate
    denominators of a, of den(a'), and of the cleared resultant
    res_Y(N, dN/dY); initial multiplicity is the largest one among a's
    coordinate denominators (at least 1); the numerator cap is
    (deg_t of the cleared N + deg_Y N) * p.
    """
    ratfield = ext.ratfield
    base = ratfield.base
    support: dict[Poly, int] = {}

    def add_support(den: Poly):
        for irr, _ in poly_factor_fq(den):
            if irr.degree > 0:
                support.setdefault(irr, 1)

    mult = 1
    for c in ext.gen.coords:
        if c and c.den.degree > 0:
            add_support(c.den)
            for irr, m in poly_factor_fq(c.den):
                if irr.degree > 0:
                    mult = max(mult, m)
    for c in ext.gen_prime.coords:
        if c and c.den.degree > 0:
            add_support(c.den)
    disc = _resultant_y(ext.modulus, ext.modulus.derivative())
    if disc:
        if disc.den.degree > 0:
            add_support(disc.den)
        if disc.num.degree > 0:
            add_support(disc.num)
    # cleared t-degree of N
    den = Poly.one(base)
    for c in ext.modulus.coeffs:
        if c:
            den = poly_lcm(den, c.den)
    deg_t = den.degree
    for c in ext.modulus.coeffs:
        if c:
            deg_t = max(deg_t, (c.num * den.divmod(c.den)[0]).degree)
    cap = (deg_t + ext.deg) * base.p
    places = sorted(support, key=lambda f: f.sort_key())
    return PoleBound(
        places=tuple(places),
        multiplicities=tuple(support[pl] for pl in places),
        num_degree_cap=cap,
    )


def _phi(u: ExtElem, p: int) -> ExtElem:
    """phi(u) = u^(p-1) + u^p (iterated derivative plus Frobenius)."""
    d = u
    for _ in range(p - 1):
        d = d.derivative()
    return d + u.pth_power()


def _flatten(elems, base):
    """GF(p)-coordinate vectors for a family of extension elements, over a
    common denominator."""
    ratfield = elems[0].field.ratfield
    den = Poly.one(base)
    for e in elems:
        for c in e.coords:
            if c:
                den = poly_lcm(den, c.den)
    polys = []
    max_deg = 0
    for e in elems:
        cs = []
        for c in e.coords:
            if c:
                pnum = c.num * den.divmod(c.den)[0]
                max_deg = max(max_deg, pnum.degree)
            else:
                pnum = Poly.zero(base)
            cs.append(pnum)
        polys.append(cs)
    prime = fq_make(base.p, 1)
    vectors = []
    for cs in polys:
        vec = []
        for pnum in cs:
            for k in range(max_deg + 1):
                coeff = pnum.coeff(k)
                for coord in coeff.coords:
                    vec.append(prime.from_int(coord))
        vectors.append(tuple(vec))
    return vectors, prime


def asd_solve(ext: ExtField) -> ASDSolution | NoSolution:
    """Solve f^(p-1) + f^p = a^p for f in the extension, by bounded-ansatz
    GF(p)-linear algebra with up to four bound doublings."""
    ratfield = ext.ratfield
    base = ratfield.base
    p = base.p
    if not ext.modulus.derivative():
        raise Inseparable("extension defined by an inseparable polynomial")
    target = ext.gen.pth_power()
    bound = asd_pole_bound(ext)
    for attempt in range(5):
        sol = _try_bound(ext, target, bound)
        if sol is not None:
            return ASDSolution(f=sol, bound_used=bound, residual_checked=True)
        if attempt < 4:
            bound = bound.doubled()
    return NoSolution(bound_used=bound)


def _try_bound(ext: ExtField, target: ExtElem, bound: PoleBound):
    ratfield = ext.ratfield
    base = ratfield.base
    p = base.p
    den = bound.denominator(base)
    den_rf = ratfield.from_poly(den)
    gen_powers = [ext.one]
    for _ in range(ext.deg - 1):
        gen_powers.append(gen_powers[-1] * ext.gen)
    # monomials mu = t^e / D * a^j; phi on c*mu needs only mu^(p-1) and mu^p
    monomials = []
    images = []
    fq_basis = []
    g = base.gen()
    acc = base.one
    for _ in range(base.n):
        fq_basis.append(acc)
        acc = acc * g
    t_rf = ratfield.t
    for e in range(bound.num_degree_cap + 1):
        te = (t_rf ** e) / den_rf
        for j in range(ext.deg):
            mu = ext.from_ratfunc(te) * gen_powers[j]
            d = mu
            for _ in range(p - 1):
                d = d.derivative()
            mu_p = mu.pth_power()
            for b in fq_basis:
                brf = ext.from_ratfunc(ratfield.from_base(b))
                bprf = ext.from_ratfunc(ratfield.from_base(b.frobenius()))
                monomials.append(brf * mu)
                images.append(brf * d + bprf * mu_p)
    vectors, prime = _flatten(images + [target], base)
    img_vecs = vectors[:-1]
    tgt = vectors[-1]
    A = Matrix(prime, list(zip(*img_vecs)))
    x = solve(A, tgt)
    if x is None:
        return None
    f = ext.zero
    for lam, mono in zip(x, monomials):
        if lam:
            f = f + ext.from_int(lam.coords[0]) * mono
    # exact residual check
    if _phi(f, p) != target:
        raise AssertionError("linear solve produced a non-solution")
    return f


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    witness: ASDSolution | None
    bound_used: PoleBound


def central_operator_reducible(n_star: Poly) -> ReducibilityVerdict:
    """Decide whether the central operator attached to a monic irreducible
    separable N over GF(q)(t) is reducible; the witness f satisfies
    (D - f) | (D^p - a^p) in K<D>."""
    ext = make_extension(n_star)
    result = asd_solve(ext)
    if isinstance(result, NoSolution):
        return ReducibilityVerdict(False, None, result.bound_used)
    p = ext.ratfield.base.p
    y = ext.gen.pth_power()
    dp_minus_y = OrePoly(ext, [-y] + [ext.zero] * (p - 1) + [ext.one])
    d_minus_f = OrePoly(ext, [-result.f, ext.one])
    _, rem = ore_divrem_right(dp_minus_y, d_minus_f)
    if rem:
        raise AssertionError("Artin-Schreier witness fails the divisibility check")
    return ReducibilityVerdict(True, result, result.bound_used)

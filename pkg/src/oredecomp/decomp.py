"""The LCLM-decomposition pipeline.

Given an operator L over GF(q)(t) whose p-curvature characteristic polynomial
has no inseparable irreducible factor, the pipeline:

1. reads the Frobenius invariants P_1 | ... | P_m of the p-curvature and
   their p-th roots Q_1 | ... | Q_m over GF(q)(t);
2. when m = p, strips maximal central divisors N(D^p)^nu, emitting them
   directly (irreducible central case) or as p explicitly decomposed pieces;
3. builds a representative L* with the residual invariants from first-order
   data in the extensions K_N (through the Artin-Schreier witnesses), whose
   decomposition is known by construction;
4. finds an isomorphism of quotient modules D_L* -> D_L as a random
   GCRD-coprime element of the kernel of M |-> L*M mod L, a GF(q)(t^p)-linear
   map; and
5. propagates the known decomposition through the isomorphism by GCRDs.

Every returned decomposition is re-verified exactly: LCLM re-check, order
sum, right-divisibility and per-factor indecomposability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algext import ExtField
from .asd import central_operator_reducible
from .errors import (
    CentralIrreducibleFactor,
    ConstantFieldViolation,
    EmptyRequest,
    InseparableFactor,
    NotCoprime,
    NotDivisible,
    OrderMismatch,
    RetryExhausted,
    VerificationFailed,
    ZeroOperator,
)
from .fieldkit import Poly, RatFuncField
from .linalg import DependencyFinder, Matrix, kernel_basis
from .ore import (
    OrePoly,
    _partial_times,
    exact_right_quotient_central,
    gcrd,
    lclm,
    operator_degree,
    ore_mul,
    ore_pow,
    ore_rem,
    shift_partial,
)
from .serialize import ypoly_str
from .pcurv import (
    central_operator,
    check_separable_factors,
    pcurv_data,
    ratfunc_from_constants,
)
from .yfactor import factor_monic_in_y, is_separable_irreducible


# ---------------------------------------------------------------------------
# Small data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantRequest:
    """A divisibility chain Q_1 | ... | Q_m of monic polynomials over
    GF(q)(t), m <= p, whose last entry has only separable irreducible
    factors with reducible central symbol."""

    chain: tuple

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))


@dataclass(frozen=True)
class FactorLabel:
    """Bookkeeping for one factor: its chi-root N_*^nu and the shift layer."""

    n_star: Poly
    nu: int
    shift: int

    def sort_key(self):
        return (self.n_star.sort_key(), self.nu, self.shift)


@dataclass(frozen=True)
class NiceRepr:
    l_star: OrePoly
    pieces: tuple
    labels: tuple


@dataclass(frozen=True)
class HomBasis:
    """A GF(q)(t^p)-basis of the module homomorphisms D_L* -> D_L, each given
    by its value at 1 (an operator of order < ord L)."""

    basis: tuple


@dataclass(frozen=True)
class VerificationFlags:
    lclm_ok: bool
    order_sum_ok: bool
    divides_ok: tuple
    indecomposable_ok: tuple

    @property
    def all_ok(self):
        return (
            self.lclm_ok
            and self.order_sum_ok
            and all(self.divides_ok)
            and all(self.indecomposable_ok)
        )


@dataclass(frozen=True)
class DecompositionReport:
    input: OrePoly
    monic_input: OrePoly
    charpoly: Poly
    invariants: tuple
    invariant_roots: tuple
    factors: tuple
    labels: tuple
    iso_witness: OrePoly | None
    flags: VerificationFlags | None
    degrees: tuple
    seed: int

    @property
    def verified(self):
        return self.flags.all_ok if self.flags is not None else None


# ---------------------------------------------------------------------------
# Hypothesis and first decomposition
# ---------------------------------------------------------------------------

def check_hypothesis(L: OrePoly):
    """Factor the p-th root of chi(psi_p^L) over GF(q)(t) and require every
    irreducible factor separable.  Returns [(N_*, multiplicity)]."""
    if not L:
        raise ZeroOperator("hypothesis check of the zero operator")
    return check_separable_factors(L)


def first_decomposition(L: OrePoly):
    """Split L along the distinct irreducible factors of chi:
    L_i = GCRD(L, N_i^(p*nu_i) read as a central operator).  Returns
    [(L_i, N_i_star, nu_i)] with the orders of the L_i summing to ord L."""
    factors = check_hypothesis(L)
    p = L.field.base.p
    out = []
    for n_star, nu in factors:
        li = gcrd(L, central_operator(n_star, p * nu))
        out.append((li, n_star, nu))
    if sum(li.order for li, _, _ in out) != L.order:
        raise VerificationFailed("first decomposition lost order")
    return out


# ---------------------------------------------------------------------------
# Minimal rational left multiples
# ---------------------------------------------------------------------------

def minimal_rational_multiple(R: OrePoly, ext: ExtField) -> OrePoly:
    """The minimal-order monic operator over GF(q)(t) that is a left multiple
    of R in K<D>.

    The remainders of D^k modulo R are flattened to GF(q)(t) coordinates
    (dimension ord R * deg K); the first linear dependency gives the
    multiple."""
    if not R:
        raise ZeroOperator("minimal multiple of the zero operator")
    ratfield = ext.ratfield
    if R.order == 0:
        return OrePoly.one(ratfield)
    dim = R.order * ext.deg
    finder = DependencyFinder(ratfield, dim)
    cur = OrePoly.one(ext)
    for _ in range(dim + 1):
        vec = []
        for i in range(R.order):
            vec.extend(cur.coeff(i).coords)
        combo = finder.offer(vec)
        if combo is not None:
            return OrePoly(ratfield, combo)
        cur = ore_rem(_partial_times(cur), R)
    raise AssertionError("rational multiple must exist by order %d" % dim)


# ---------------------------------------------------------------------------
# Canonical representatives (nice_repr)
# ---------------------------------------------------------------------------

def _multiplicity(n_star: Poly, q_poly: Poly) -> int:
    m = 0
    while q_poly.degree >= n_star.degree:
        quo, rem = q_poly.divmod(n_star)
        if rem:
            break
        q_poly = quo
        m += 1
    return m


def nice_repr(request, witnesses: dict | None = None) -> NiceRepr:
    """Build an operator L* whose Frobenius invariants are the requested
    chain P_1 | ... | P_m (given through the p-th roots Q_i over GF(q)(t)),
    together with its LCLM-decomposition.

    For every layer i and every irreducible factor N_* of Q_m with
    nu = nu_N(Q_i) > 0, the piece is the shift by i/t of the minimal rational
    multiple of (tD - t f_N)^nu over K_N, where f_N is the Artin-Schreier
    witness of N_*.  L* is the LCLM of the pieces.
    """
    chain = list(request.chain if isinstance(request, InvariantRequest) else request)
    if not chain or all(q.degree == 0 for q in chain):
        raise EmptyRequest("no nontrivial invariant requested")
    ratfield = chain[0].field
    if not isinstance(ratfield, RatFuncField):
        raise TypeError("invariant chains live over GF(q)(t)")
    p = ratfield.base.p
    if len(chain) > p:
        raise EmptyRequest("chain longer than p")
    for q_poly in chain:
        if not q_poly.is_monic():
            raise EmptyRequest("chain entries must be monic")
    for a, b in zip(chain, chain[1:]):
        if a.degree > 0 and b.divmod(a)[1]:
            raise EmptyRequest("chain entries must form a divisibility chain")
    witnesses = dict(witnesses) if witnesses else {}

    q_m = chain[-1]
    pieces = []
    labels = []
    t_rf = ratfield.t
    for n_star, _ in factor_monic_in_y(q_m):
        if not is_separable_irreducible(n_star):
            raise InseparableFactor(
                "inseparable factor in the request: %s" % ypoly_str(n_star)
            )
        verdict = witnesses.get(n_star)
        if verdict is None:
            verdict = central_operator_reducible(n_star)
            witnesses[n_star] = verdict
        if not verdict.reducible:
            raise CentralIrreducibleFactor(
                "central symbol of %s is irreducible" % ypoly_str(n_star)
            )
        ext = verdict.witness.f.field
        f_n = verdict.witness.f
        t_e = ext.from_ratfunc(t_rf)
        base_op = OrePoly(ext, [-(t_e * f_n), t_e])  # tD - t f_N
        for i, q_i in enumerate(chain, start=1):
            nu = _multiplicity(n_star, q_i)
            if nu == 0:
                continue
            rational = minimal_rational_multiple(ore_pow(base_op, nu), ext)
            if rational.order != nu * n_star.degree:
                raise VerificationFailed(
                    "rational multiple has order %d, expected %d"
                    % (rational.order, nu * n_star.degree)
                )
            shift = ratfield.from_int(i) / t_rf
            pieces.append(shift_partial(rational, shift))
            labels.append(FactorLabel(n_star, nu, i))
    order = sorted(range(len(pieces)), key=lambda k: labels[k].sort_key())
    pieces = [pieces[k] for k in order]
    labels = [labels[k] for k in order]
    return NiceRepr(l_star=lclm(pieces), pieces=tuple(pieces), labels=tuple(labels))


# ---------------------------------------------------------------------------
# Homomorphism spaces and isomorphism selection
# ---------------------------------------------------------------------------

def hom_space(l_star: OrePoly, L: OrePoly) -> HomBasis:
    """A basis of ker(M |-> L* M mod L) over GF(q)(t^p), the space of module
    homomorphisms D_L* -> D_L.

    The map is GF(q)(t^p)-linear; its (p r) x (p r) matrix is taken in the
    bases t^u D^j (0 <= u < p, 0 <= j < r) by splitting every remainder
    coefficient into its t^p-components.
    """
    if l_star.order != L.order or L.order < 1:
        raise OrderMismatch("hom space needs equal positive orders")
    field = L.field
    p = field.base.p
    r = L.order
    t_rf = field.t
    columns = []
    for j in range(r):
        for u in range(p):
            e = OrePoly(field, [field.zero] * j + [t_rf ** u])
            w = ore_rem(ore_mul(l_star, e), L)
            col = []
            for jj in range(r):
                col.extend(w.coeff(jj).tp_components())
            columns.append(col)
    mat = Matrix(field, list(zip(*columns)))
    basis = []
    for vec in kernel_basis(mat):
        coeffs = []
        for j in range(r):
            acc = field.zero
            for u in range(p):
                c = vec[j * p + u]
                if c:
                    acc = acc + ratfunc_from_constants(c) * t_rf ** u
            coeffs.append(acc)
        op = OrePoly(field, coeffs)
        if ore_rem(ore_mul(l_star, op), L):
            raise ConstantFieldViolation(
                "hom-space element fails L* M = 0 mod L after reassembly"
            )
        basis.append(op)
    return HomBasis(basis=tuple(basis))


def pick_iso(l_star: OrePoly, L: OrePoly, basis: HomBasis, rng: random.Random) -> OrePoly:
    """A random kernel element M with GCRD(M, L) = 1, i.e. an isomorphism.

    Coefficients are sampled from GF(q) first, then from polynomials in t^p
    of degree 1, 2, 3 on escalation; 64 samples per level."""
    if not basis.basis:
        raise RetryExhausted("empty hom basis")
    field = L.field
    base = field.base
    p = base.p
    for level in range(4):
        for _ in range(64):
            m_op = OrePoly.zero(field)
            for b in basis.basis:
                coeff_poly = Poly(base, [base.random(rng) for _ in range(level + 1)])
                c = field.from_poly(coeff_poly).inflate(p) if coeff_poly else field.zero
                if c:
                    m_op = m_op + b.scale(c)
            if not m_op:
                continue
            if gcrd(m_op, L).order == 0:
                return m_op
    raise RetryExhausted("no coprime hom-space element found in 4*64 samples")


def propagate(L: OrePoly, m_op: OrePoly, pieces) -> list[OrePoly]:
    """Push a known decomposition through the isomorphism M:
    the factors of L are GCRD(L, L*_i M mod L), monic."""
    if gcrd(m_op, L).order != 0:
        raise NotCoprime("isomorphism witness is not coprime with L")
    out = []
    for piece in pieces:
        w = ore_rem(ore_mul(piece, m_op), L)
        out.append(gcrd(L, w) if w else L.monic())
    return out


# ---------------------------------------------------------------------------
# Indecomposability
# ---------------------------------------------------------------------------

def is_indecomposable(L: OrePoly) -> bool:
    """True when D_L does not split: chi's p-th root is a power of a single
    irreducible N_*, and either the central symbol of N_* is reducible and
    the p-curvature has a single invariant factor, or it is irreducible and
    L is exactly a power of it."""
    if L.order < 1:
        return False
    if L.order == 1:
        return True
    factors = check_separable_factors(L)
    if len(factors) != 1:
        return False
    n_star, _ = factors[0]
    p = L.field.base.p
    verdict = central_operator_reducible(n_star)
    if verdict.reducible:
        return len(pcurv_data(L).invariants) == 1
    block = central_operator(n_star, p)
    cur = L.monic()
    while cur.order > 0:
        try:
            cur = exact_right_quotient_central(cur, block)
        except NotDivisible:
            return False
    return cur == OrePoly.one(L.field)


# ---------------------------------------------------------------------------
# Verification and the top-level pipeline
# ---------------------------------------------------------------------------

def verify_decomposition(L: OrePoly, factors) -> VerificationFlags:
    """Exact re-check of a claimed decomposition: LCLM, order sum,
    right-divisibility, and per-factor indecomposability."""
    factors = list(factors)
    if not factors:
        ok = L.order == 0
        return VerificationFlags(ok, ok, (), ())
    lclm_ok = lclm(factors) == L.monic()
    order_sum_ok = sum(f.order for f in factors) == L.order
    divides_ok = tuple(not ore_rem(L, f) for f in factors)
    indecomposable_ok = tuple(is_indecomposable(f) for f in factors)
    return VerificationFlags(lclm_ok, order_sum_ok, divides_ok, indecomposable_ok)


def lclm_decompose(L: OrePoly, seed: int = 0, verify: bool = True) -> DecompositionReport:
    """The full decomposition pipeline (deterministic under the seed)."""
    if not L:
        raise ZeroOperator("cannot decompose the zero operator")
    rng = random.Random(seed)
    l_mon = L.monic()
    field = L.field
    p = field.base.p

    if l_mon.order == 0:
        report = DecompositionReport(
            input=L, monic_input=l_mon,
            charpoly=Poly.one(field), invariants=(), invariant_roots=(),
            factors=(), labels=(), iso_witness=None,
            flags=VerificationFlags(True, True, (), ()) if verify else None,
            degrees=(), seed=seed,
        )
        return report

    data = pcurv_data(l_mon)
    chain = list(data.invariant_roots)
    m = len(chain)
    list_factor = factor_monic_in_y(chain[-1])
    for n_star, _ in list_factor:
        if not is_separable_irreducible(n_star):
            raise InseparableFactor(
                "inseparable irreducible factor in chi: %s" % ypoly_str(n_star)
            )

    collected: list[OrePoly] = []
    labels: list[FactorLabel] = []
    witnesses: dict = {}
    cur_l = l_mon

    if l_mon.order == 1:
        collected = [l_mon]
        labels = [FactorLabel(chain[-1], 1, 0)]
        cur_l = OrePoly.one(field)
    elif m == p:
        for n_star, _ in list_factor:
            nu_first = _multiplicity(n_star, chain[0])
            nu_last = _multiplicity(n_star, chain[-1])
            if nu_first != nu_last:
                continue
            nu = nu_last
            central = central_operator(n_star, p * nu)
            cur_l = exact_right_quotient_central(cur_l, central).monic()
            # equal first and last valuations force nu_N(Q_i) = nu for all i,
            # so N_* disappears from the whole chain
            divisor = n_star ** nu
            new_chain = []
            for q in chain:
                quo, rem = q.divmod(divisor)
                if rem:
                    raise VerificationFailed("central stripping left a remainder")
                new_chain.append(quo)
            chain = new_chain
            verdict = central_operator_reducible(n_star)
            witnesses[n_star] = verdict
            if not verdict.reducible:
                collected.append(central.monic())
                labels.append(FactorLabel(n_star, p * nu, 0))
            else:
                sub = nice_repr([n_star ** nu] * p, witnesses=witnesses)
                if lclm(sub.pieces) != central.monic():
                    raise VerificationFailed(
                        "central pieces do not rebuild the central factor"
                    )
                collected.extend(sub.pieces)
                labels.extend(sub.labels)

    iso_witness = None
    if cur_l.order > 0:
        rep = nice_repr(chain, witnesses=witnesses)
        basis = hom_space(rep.l_star, cur_l)
        iso_witness = pick_iso(rep.l_star, cur_l, basis, rng)
        propagated = propagate(cur_l, iso_witness, rep.pieces)
        collected.extend(propagated)
        labels.extend(rep.labels)

    order = sorted(range(len(collected)), key=lambda k: labels[k].sort_key())
    collected = [collected[k] for k in order]
    labels = [labels[k] for k in order]

    flags = None
    if verify:
        flags = verify_decomposition(l_mon, collected)
        if not flags.all_ok:
            raise VerificationFailed(
                "decomposition re-check failed: %r" % (flags,)
            )
    return DecompositionReport(
        input=L,
        monic_input=l_mon,
        charpoly=data.charpoly,
        invariants=tuple(data.invariants),
        invariant_roots=tuple(data.invariant_roots),
        factors=tuple(collected),
        labels=tuple(labels),
        iso_witness=iso_witness,
        flags=flags,
        degrees=tuple(operator_degree(f) for f in collected),
        seed=seed,
    )

import random

import pytest

from oredecomp.algext import make_extension
from oredecomp.asd import central_operator_reducible
from oredecomp.decomp import (
    InvariantRequest,
    check_hypothesis,
    first_decomposition,
    hom_space,
    is_indecomposable,
    lclm_decompose,
    minimal_rational_multiple,
    nice_repr,
    pick_iso,
    propagate,
    verify_decomposition,
)
from oredecomp.errors import (
    CentralIrreducibleFactor,
    EmptyRequest,
    InseparableFactor,
    NotCoprime,
    OrderMismatch,
)
from oredecomp.fieldkit import Poly, RatFuncField, fq_make
from oredecomp.linalg import Matrix, solve
from oredecomp.ore import (
    OrePoly,
    gcrd,
    lclm,
    ore_pow,
    ore_rem,
)
from oredecomp.pcurv import (
    central_operator,
    frobenius_invariants,
    pcurv_charpoly,
    ypoly_pth_power,
)

from helpers import rand_ratfunc, ypoly


def _setup(p=3, n=1):
    R = RatFuncField(fq_make(p, n))
    return R, R.t, OrePoly.partial(R), OrePoly.one(R)


# -- hypothesis and first decomposition --------------------------------------

def test_check_hypothesis_examples():
    R, t, D, one = _setup()
    x = Poly.x(R)
    factors = dict(check_hypothesis(ore_pow(D, 2) - D))
    assert factors == {x: 1, x - Poly.one(R): 1}
    # (D - t)^3 = D^3 - t^3 is central with chi-root (Y - t)^3: passes
    factors = dict(check_hypothesis(ore_pow(D - OrePoly.const(R, t), 3)))
    assert factors == {ypoly(R, -t, 1): 3}
    # D^3 - t has chi = Y^3 - t^3, which is irreducible over GF(3)(t^3)
    # (t is not a cube there) with vanishing Y-derivative: the separability
    # hypothesis genuinely fails and the chi-root Y^3 - t is inseparable
    with pytest.raises(InseparableFactor):
        check_hypothesis(ore_pow(D, 3) - OrePoly.const(R, t))
    with pytest.raises(InseparableFactor):
        check_hypothesis(central_operator(ypoly(R, -t, 0, 0, 1), 3))


def test_first_decomposition_examples():
    R, t, D, one = _setup()
    x = Poly.x(R)
    parts = first_decomposition(ore_pow(D, 2) - D)
    as_dict = {n_star: (li, nu) for li, n_star, nu in parts}
    assert as_dict[x][0] == D and as_dict[x][1] == 1
    assert as_dict[x - Poly.one(R)][0] == D - one
    # a single-factor operator stays in one block
    L = OrePoly(R, [R.zero, R.one, t])  # t D^2 + D
    parts = first_decomposition(L)
    assert len(parts) == 1 and parts[0][0] == L.monic()
    parts = first_decomposition(ore_pow(D, 3))
    assert len(parts) == 1 and parts[0][0] == ore_pow(D, 3)
    # per-block chi is the corresponding primary part
    for li, n_star, nu in first_decomposition(ore_pow(D, 2) - D):
        assert pcurv_charpoly(li) == ypoly_pth_power(n_star) ** nu


# -- minimal rational multiples ----------------------------------------------

def test_minimal_rational_multiple_trivial_extension():
    R, t, D, one = _setup()
    E = make_extension(ypoly(R, -t, 1))
    f = rand_ratfunc(R, random.Random(3), 1, 1)
    Rop = OrePoly(E, [E.from_ratfunc(-f), E.one])
    assert minimal_rational_multiple(Rop, E) == OrePoly(R, [-f, R.one])
    tD = OrePoly(E, [E.zero, E.from_ratfunc(t)])
    assert minimal_rational_multiple(tD, E) == D


def test_minimal_rational_multiple_quadratic_extension():
    R, t, D, one = _setup()
    n_star = ypoly(R, -t, 0, 1)
    E = make_extension(n_star)
    v = central_operator_reducible(n_star)
    f = v.witness.f
    Rop = OrePoly(E, [-f, E.one])
    L = minimal_rational_multiple(Rop, E)
    assert L.order == 2 and L.is_monic()
    lifted = L.map_coeffs(E.from_ratfunc, E)
    assert not ore_rem(lifted, Rop)


# -- nice_repr ----------------------------------------------------------------

def test_nice_repr_single_y():
    R, t, D, one = _setup()
    rep = nice_repr([ypoly(R, 0, 1)])
    assert rep.l_star == D + OrePoly.const(R, R.one / t)
    assert rep.pieces == (rep.l_star,)
    # chi check: (-1/t)^(p-1 derivative) + (-1/t)^p cancels
    assert frobenius_invariants(rep.l_star) == [Poly.x(R)]


def test_nice_repr_y_minus_t():
    R, t, D, one = _setup()
    rep = nice_repr([ypoly(R, -t, 1)])
    expected = D + OrePoly.const(R, R.one / t - t)
    assert rep.l_star == expected
    assert frobenius_invariants(rep.l_star) == [ypoly(R, -t, 1).map_coeffs(
        lambda c: c.frobenius_coeffs())]


def test_nice_repr_repeated_invariant():
    R, t, D, one = _setup()
    y = ypoly(R, 0, 1)
    rep = nice_repr([y, y])
    assert rep.pieces == (
        D + OrePoly.const(R, R.one / t),
        D + OrePoly.const(R, R.from_int(2) / t),
    )
    assert frobenius_invariants(rep.l_star) == [Poly.x(R), Poly.x(R)]


def test_nice_repr_validation():
    R, t, D, one = _setup()
    with pytest.raises(EmptyRequest):
        nice_repr([])
    with pytest.raises(EmptyRequest):
        nice_repr([Poly.one(R)])
    with pytest.raises(EmptyRequest):
        nice_repr([ypoly(R, 0, 1)] * 4)  # longer than p
    with pytest.raises(EmptyRequest):
        nice_repr([ypoly(R, -t, 1), ypoly(R, 1, 1)])  # not a chain
    with pytest.raises(InseparableFactor):
        nice_repr([ypoly(R, -t, 0, 0, 1)])
    with pytest.raises(CentralIrreducibleFactor):
        nice_repr([Poly(R, [-(R.one / t), R.one])])


def test_nice_repr_roundtrip_small():
    R, t, D, one = _setup()
    rng = random.Random(33)
    chains = [
        [ypoly(R, 0, 1) * ypoly(R, -1, 1)],
        [ypoly(R, -t, 1)],
        [ypoly(R, 0, 1), ypoly(R, 0, 1) * ypoly(R, -1, 1)],
        [ypoly(R, 0, 2, 1)],
    ]
    for chain in chains:
        rep = nice_repr(chain)
        expected = [ypoly_pth_power(q) for q in chain]
        assert frobenius_invariants(rep.l_star) == expected
        flags = verify_decomposition(rep.l_star, rep.pieces)
        assert flags.all_ok


# -- hom spaces and isomorphism propagation -----------------------------------

def test_hom_space_identity_case():
    R, t, D, one = _setup()
    hb = hom_space(D, D)
    assert hb.basis == (one,)


def test_hom_space_paper_shift_example():
    F5 = fq_make(5)
    R5 = RatFuncField(F5)
    t5 = R5.t
    D5 = OrePoly.partial(R5)
    L2 = OrePoly(R5, [R5.from_int(2) / t5, R5.one])
    hb = hom_space(D5, L2)
    assert hb.basis == (OrePoly.const(R5, t5 ** 2),)


def test_hom_space_contains_identity_for_equal_operators():
    R, t, D, one = _setup()
    L = lclm([D, D - one])
    hb = hom_space(L, L)
    # membership of the constant operator 1 in the GF(q)(t^p)-span: solve a
    # linear system whose columns are the basis operators' coefficient rows
    p, r = 3, L.order
    cols = []
    for b in hb.basis:
        col = []
        for j in range(r):
            col.extend(b.coeff(j).tp_components())
        cols.append(col)
    target = [R.zero] * (p * r)
    target[0] = R.one
    assert solve(Matrix(R, list(zip(*cols))), tuple(target)) is not None


def test_hom_space_order_mismatch():
    R, t, D, one = _setup()
    with pytest.raises(OrderMismatch):
        hom_space(D, ore_pow(D, 2))


def test_pick_iso_and_propagate_identity():
    R, t, D, one = _setup()
    rep = nice_repr([ypoly(R, 0, 1) * ypoly(R, -1, 1)])
    L = rep.l_star
    hb = hom_space(L, L)
    rng = random.Random(0)
    m_op = pick_iso(L, L, hb, rng)
    assert gcrd(m_op, L).order == 0
    # with the identity isomorphism the pieces come back unchanged
    factors = propagate(L, one, rep.pieces)
    assert list(factors) == [piece.monic() for piece in rep.pieces]
    with pytest.raises(NotCoprime):
        propagate(L, rep.pieces[0], rep.pieces)


def test_propagate_through_pipeline():
    R, t, D, one = _setup()
    L = ore_pow(D, 2) - D
    rep = nice_repr([ypoly(R, 0, 1) * ypoly(R, -1, 1)])
    hb = hom_space(rep.l_star, L)
    m_op = pick_iso(rep.l_star, L, hb, random.Random(1))
    factors = propagate(L, m_op, rep.pieces)
    assert sum(f.order for f in factors) == L.order
    assert lclm(factors) == L.monic()
    for f in factors:
        assert not ore_rem(L, f)
    # hand oracle: D^2 - D = D(D-1) = (D-1)D exhibits both order-1 factors
    chis = sorted(pcurv_charpoly(f).sort_key() for f in factors)
    assert chis == sorted([Poly.x(R).sort_key(),
                           (Poly.x(R) - Poly.one(R)).sort_key()])


# -- indecomposability ---------------------------------------------------------

def test_is_indecomposable_examples():
    R, t, D, one = _setup()
    assert is_indecomposable(OrePoly(R, [R.zero, R.one, t]))  # t D^2 + D
    assert not is_indecomposable(ore_pow(D, 2) - D)
    assert is_indecomposable(D - OrePoly.const(R, rand_ratfunc(R, random.Random(5), 2, 2)))
    assert not is_indecomposable(one)


def test_is_indecomposable_central_irreducible_power():
    R, t, D, one = _setup()
    n_star = Poly(R, [-(R.one / t), R.one])  # central symbol irreducible
    L = central_operator(n_star, 3)
    assert is_indecomposable(L)
    L2 = central_operator(n_star, 6)
    assert is_indecomposable(L2)


# -- verification --------------------------------------------------------------

def test_verify_decomposition_examples():
    R, t, D, one = _setup()
    L = ore_pow(D, 2) - D
    flags = verify_decomposition(L, [D, D - one])
    assert flags.all_ok
    flags = verify_decomposition(L, [D])
    assert not flags.order_sum_ok and not flags.all_ok
    flags = verify_decomposition(ore_pow(D, 2), [D, D])
    assert not flags.lclm_ok and not flags.all_ok


# -- the full pipeline ----------------------------------------------------------

def test_lclm_decompose_central_branch():
    R, t, D, one = _setup()
    report = lclm_decompose(ore_pow(D, 3), seed=0)
    assert report.verified
    assert lclm(report.factors) == ore_pow(D, 3)
    expected = {D, D + OrePoly.const(R, R.one / t),
                D + OrePoly.const(R, R.from_int(2) / t)}
    assert set(report.factors) == expected


def test_lclm_decompose_two_blocks():
    R, t, D, one = _setup()
    report = lclm_decompose(ore_pow(D, 2) - D, seed=0)
    assert report.verified
    assert len(report.factors) == 2
    assert {f.order for f in report.factors} == {1}


def test_lclm_decompose_indecomposable_stays_whole():
    R, t, D, one = _setup()
    L = OrePoly(R, [R.zero, R.one, t])
    report = lclm_decompose(L, seed=0)
    assert report.verified
    assert report.factors == (L.monic(),)


def test_lclm_decompose_degenerate_orders():
    R, t, D, one = _setup()
    r0 = lclm_decompose(OrePoly.const(R, t), seed=0)
    assert r0.factors == () and r0.verified
    r1 = lclm_decompose(OrePoly(R, [t, t]), seed=0)
    assert r1.factors == (OrePoly(R, [R.one, R.one]),) and r1.verified


def test_lclm_decompose_paper_family():
    F5 = fq_make(5)
    R5 = RatFuncField(F5)
    D5 = OrePoly.partial(R5)
    other = OrePoly(R5, [R5.from_int(2) / R5.t, R5.one])
    L = lclm([D5, other])
    report = lclm_decompose(L, seed=0)
    assert report.verified
    assert len(report.factors) == 2
    x = Poly.x(R5)
    for f in report.factors:
        assert f.order == 1
        assert frobenius_invariants(f) == [x]


def test_lclm_decompose_central_irreducible_factor():
    R, t, D, one = _setup()
    n_star = Poly(R, [-(R.one / t), R.one])
    L = central_operator(n_star, 3)  # D^3 - 1/t^3
    report = lclm_decompose(L, seed=0)
    assert report.verified
    assert report.factors == (L.monic(),)
    # mixed with a decomposable part
    L2 = lclm([L, D])
    report2 = lclm_decompose(L2, seed=0)
    assert report2.verified
    assert sum(f.order for f in report2.factors) == 4
    assert L.monic() in report2.factors


def test_lclm_decompose_nilpotent_jordan_block():
    # (tD)^2 has chi-root Y^2 with a single invariant: indecomposable but
    # not irreducible, and not central
    R, t, D, one = _setup()
    L = ore_pow(OrePoly(R, [R.zero, t]), 2)
    report = lclm_decompose(L, seed=0)
    assert report.verified
    assert report.factors == (L.monic(),)


def test_lclm_decompose_deterministic_under_seed():
    R, t, D, one = _setup()
    L = lclm([D, D - one, D - OrePoly.const(R, R.one / t)])
    r1 = lclm_decompose(L, seed=7)
    r2 = lclm_decompose(L, seed=7)
    assert r1.factors == r2.factors
    assert r1.iso_witness == r2.iso_witness


def test_lclm_decompose_rejects_inseparable():
    R, t, D, one = _setup()
    with pytest.raises(InseparableFactor):
        lclm_decompose(central_operator(ypoly(R, -t, 0, 0, 1), 3), seed=0)


def test_pick_iso_empty_basis_and_equivalence_on_consult():
    from oredecomp.decomp import HomBasis
    from oredecomp.errors import RetryExhausted
    from oredecomp.pcurv import operators_equivalent

    R, t, D, one = _setup()
    with pytest.raises(RetryExhausted):
        pick_iso(D, D, HomBasis(basis=()), random.Random(0))
    # whenever the pipeline consults the hom space, L* and L are equivalent
    L = ore_pow(D, 2) - D
    rep = nice_repr([ypoly(R, 0, 1) * ypoly(R, -1, 1)])
    assert operators_equivalent(rep.l_star, L)


def test_invariant_request_type():
    R, t, D, one = _setup()
    req = InvariantRequest(chain=[ypoly(R, 0, 1), ypoly(R, 0, 1)])
    rep = nice_repr(req)
    assert len(rep.pieces) == 2


def test_lclm_decompose_characteristic_two():
    R, t, D, one = _setup(2)
    rep = lclm_decompose(lclm([D, D - one]), seed=0)
    assert rep.verified and len(rep.factors) == 2
    rep = lclm_decompose(lclm([D, D - OrePoly.const(R, t)]), seed=0)
    assert rep.verified and len(rep.factors) == 2
    rep = lclm_decompose(ore_pow(D, 2), seed=0)
    assert rep.verified
    assert set(rep.factors) == {D, D + OrePoly.const(R, R.one / t)}


def test_lclm_decompose_over_gf9():
    R, t, D, one = _setup(3, 2)
    g = R.from_base(R.base.gen())
    rep = lclm_decompose(lclm([D, D - OrePoly.const(R, g)]), seed=0)
    assert rep.verified and len(rep.factors) == 2


def test_lclm_decompose_repeated_central_power():
    # D^6 = N(D^p)^2 with N = Y: the stripped chain [Y^2 three times] turns
    # into three order-2 indecomposable pieces whose LCLM is D^6 again
    R, t, D, one = _setup(3)
    rep = lclm_decompose(ore_pow(D, 6), seed=0)
    assert rep.verified
    assert [f.order for f in rep.factors] == [2, 2, 2]
    assert lclm(rep.factors) == ore_pow(D, 6)


def test_lclm_decompose_mixed_central_and_split():
    R, t, D, one = _setup(3)
    n_irr = Poly(R, [-(R.one / t), R.one])
    L = lclm([central_operator(n_irr, 3), D, D - one])
    rep = lclm_decompose(L, seed=0)
    assert rep.verified
    assert sorted(f.order for f in rep.factors) == [1, 1, 3]
    assert central_operator(n_irr, 3).monic() in rep.factors


def test_lclm_decompose_mixed_order_invariant_chain():
    # chain [Y, Y^2]: the representative built from it has one order-1 and
    # one order-2 factor, and decomposing it recovers exactly that shape
    R, t, D, one = _setup(3)
    y = ypoly(R, 0, 1)
    rep = nice_repr([y, y * y])
    assert sorted(p.order for p in rep.pieces) == [1, 2]
    out = lclm_decompose(rep.l_star, seed=0)
    assert out.verified
    assert sorted(f.order for f in out.factors) == [1, 2]
    invs = sorted(
        tuple(P.sort_key() for P in frobenius_invariants(f))
        for f in out.factors
    )
    x = Poly.x(R)
    assert invs == sorted([(x.sort_key(),), ((x * x).sort_key(),)])


def test_nilpotent_block_below_characteristic():
    # (tD)^n is indecomposable for n < p as well
    from oredecomp.fieldkit import fq_make as _fq
    from oredecomp.fieldkit import RatFuncField as _RF

    R5 = _RF(_fq(5))
    L = ore_pow(OrePoly(R5, [R5.zero, R5.t]), 2)
    assert is_indecomposable(L)
    out = lclm_decompose(L, seed=0)
    assert out.verified and out.factors == (L.monic(),)


def test_char_two_central_square():
    # (D+1)^2 = D^2 + 1 is central over GF(2)(t) and splits into two
    # equivalent order-1 factors through the m = p branch
    R, t, D, one = _setup(2)
    L = ore_pow(D + one, 2)
    assert L == ore_pow(D, 2) + one
    out = lclm_decompose(L, seed=0)
    assert out.verified
    assert [f.order for f in out.factors] == [1, 1]
    assert lclm(out.factors) == L


def test_decompose_over_gf4():
    R, t, D, one = _setup(2, 2)
    g = R.from_base(R.base.gen())
    L = lclm([D - OrePoly.const(R, g), D - OrePoly.const(R, g * g)])
    out = lclm_decompose(L, seed=0)
    assert out.verified and len(out.factors) == 2

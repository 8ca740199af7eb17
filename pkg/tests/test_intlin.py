import random

from hypothesis import given
from hypothesis import strategies as st

from ctelescope.arith import ONE, X, Y, RatFunc, deg, normalize
from ctelescope.intlin import (
    common_multiple_D, deg_D0_formula, delta_params, delta_shift, il_decompose, local_D0,
    univariate_representation,
)
from ctelescope.shiftcase import (
    QSHIFT, SHIFT, SigmaClass, classify_sigma_y, is_strongly_coprime,
    sigma_y_equivalent, sigma_y_related,
)
from helpers import linear_factor, normal_il_poly, random_kernel

one = RatFunc.const(1)


def test_univariate_examples():
    rep = univariate_representation(X + 2 * Y + 1, SHIFT)
    assert (rep.format_P(), rep.lam, rep.mu) == ("z + 1", 1, 2)
    rep = univariate_representation(X - Y, QSHIFT)
    assert (rep.lam, rep.mu, rep.alpha, rep.beta) == (-1, 1, 1, 0)
    assert rep.format_P() in ("-z + 1", "1 - z")
    assert normalize(rep.reconstruct()) == normalize(X - Y)
    assert univariate_representation(Y**2 - X, SHIFT) is None


def test_delta_examples():
    rep = univariate_representation(X + 2 * Y, SHIFT)
    assert delta_params(1, 2) == (1, 0)
    assert delta_shift(rep, 1, SHIFT) == X + 2 * Y + 1
    rep = univariate_representation(Y + 1, SHIFT)
    assert delta_shift(rep, 3, SHIFT) == Y + 4
    assert delta_shift(rep, 0, SHIFT) == Y + 1


def test_il_decompose_examples():
    dec = il_decompose((Y + 1) * (X + Y + 1), SHIFT)
    got = sorted((c.rep.format_P(), c.rep.lam, c.rep.mu, c.alpha) for c in dec.classes)
    assert [(g[0], g[1], g[2]) for g in got] == [("z + 1", 0, 1), ("z + 1", 1, 1)]
    assert all(g[3] == {0: 1} for g in got)
    dec = il_decompose((X + 2 * Y) * (X + 2 * Y + 1), SHIFT)
    (cl,) = dec.classes
    assert (cl.rep.format_P(), cl.rep.lam, cl.rep.mu, cl.alpha) == ("z", 1, 2, {0: 1, 1: 1})
    assert il_decompose(Y**2 - X, SHIFT) is None


def test_common_multiple_examples():
    dec = il_decompose(X + 2 * Y, SHIFT)
    D, D0 = common_multiple_D(dec, one, SHIFT)
    assert D0 == normalize((X + 2 * Y) * (X + 2 * Y + 1))
    D, D0 = common_multiple_D(il_decompose(Y + 1, SHIFT), one, SHIFT)
    assert D == D0 == Y + 1
    d = (X + 2 * Y) * (X + 2 * Y + 1)
    D, D0 = common_multiple_D(il_decompose(d, SHIFT), one, SHIFT)
    assert D == D0 == normalize(d)


cases = st.sampled_from([SHIFT, QSHIFT])
seeds = st.integers(0, 10**6)


@given(cases, seeds)
def test_representation_round_trip(case, seed):
    f = linear_factor(random.Random(seed), case).numer()
    if f.degrees()[0] == 0:
        return
    rep = univariate_representation(f, case)
    assert rep is not None
    assert normalize(rep.reconstruct()) == normalize(f)


@given(cases, seeds)
def test_shiftfinite(case, seed):
    f = normalize(linear_factor(random.Random(seed), case).numer())
    if f.degrees()[0] == 0:
        return
    rep = univariate_representation(f, case)
    mu = rep.mu
    base = [delta_shift(rep, i, case) for i in range(mu)]
    for i in range(mu):
        for j in range(i + 1, mu):
            assert sigma_y_equivalent(base[i], base[j], case) is None
    for ell in range(-10, 11):
        assert sigma_y_equivalent(delta_shift(rep, ell, case), base[ell % mu], case) is not None


@given(cases, seeds)
def test_common_multiple_properties(case, seed):
    rng = random.Random(seed)
    d = normal_il_poly(rng, case, 3)
    K = random_kernel(rng, case)
    if d.degrees()[0] == 0:
        return
    dec = il_decompose(d, case)
    assert dec is not None
    assert RatFunc(d) == dec.reconstruct()
    D, D0 = common_multiple_D(dec, K, case)
    assert RatFunc(D, d).is_ypoly()
    assert classify_sigma_y(D, case) in (SigmaClass.NORMAL, SigmaClass.BOTH)
    assert sigma_y_related(D, D0, case)
    built = sum(deg(local_D0(cl, case)) for cl in dec.classes)
    assert deg(D0) == built == deg_D0_formula(dec, case)


@given(cases, seeds)
def test_common_multiple_of_a_significant_denominator(case, seed):
    from ctelescope.intlin import non_integer_linear_factor
    from ctelescope.reduce import complement_basis, reduce_shell

    rng = random.Random(seed)
    K = random_kernel(rng, case)
    S = RatFunc(ONE) / RatFunc(normal_il_poly(rng, case, 3)) * random_kernel(rng, case, 1)
    r = reduce_shell(S, complement_basis(K, case)).remainder
    if deg(r.d) <= 0 or non_integer_linear_factor(r.d, case) is not None:
        return
    D, _ = common_multiple_D(il_decompose(r.d, case), K, case)
    assert RatFunc(D, r.d).is_ypoly()
    assert is_strongly_coprime(D, K, case)

"""Rational normal forms f = K * sigma_y(S) / S with a sigma_y-reduced kernel K."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import ONE, Y, MPoly, RatFunc, deg, poly_gcd
from .errors import NotAFactor, WrongCase, ZeroInput
from .shiftcase import (
    QSHIFT, SHIFT, CaseTag, irreducible_y_factors, is_y_monomial, q_power_of,
    shift_poly, sigma_y_equivalent, sy,
)


@dataclass(frozen=True)
class Rnf:
    kernel: RatFunc
    shell: RatFunc
    case: CaseTag

    @property
    def K(self) -> RatFunc:
        return self.kernel

    @property
    def S(self) -> RatFunc:
        return self.shell

    def value(self) -> RatFunc:
        """The represented function K * sigma_y(S) / S."""
        return self.kernel * sy(self.shell, self.case) / self.shell


class Side(enum.Enum):
    NUMERATOR = "numerator"
    DENOMINATOR = "denominator"


def _sy_poly(p: MPoly, k: int, case: CaseTag) -> RatFunc:
    return sy(p, case, k)


def _shifted_product(g: MPoly, shifts, case: CaseTag) -> RatFunc:
    out = RatFunc.const(1)
    for i in shifts:
        out = out * _sy_poly(g, i, case)
    return out


def _find_offending_pair(u: MPoly, v: MPoly, case: CaseTag):
    """Return l != 0 with gcd(u, sigma_y^l(v)) nontrivial, or None."""
    if deg(u, "y") <= 0 or deg(v, "y") <= 0:
        return None
    for a, _ in irreducible_y_factors(u):
        if case is QSHIFT and is_y_monomial(a):
            continue
        for b, _ in irreducible_y_factors(v):
            ell = sigma_y_equivalent(a, b, case)
            if ell is not None:
                return ell
    return None


def is_reduced(K: RatFunc, case: CaseTag) -> bool:
    return _find_offending_pair(K.num, K.den, case) is None


def compute_rnf(f: RatFunc, case: CaseTag) -> Rnf:
    """Move every shift-related numerator/denominator pair of f into the shell."""
    if f.is_zero():
        raise ZeroInput("the zero function has no rational normal form")
    K = f
    S = RatFunc.const(1)
    while True:
        ell = _find_offending_pair(K.num, K.den, case)
        if ell is None:
            return Rnf(K, S, case)
        shifted, _ = shift_poly(K.den, 0, ell, case)
        g = poly_gcd(K.num, shifted)
        if ell > 0:
            # g | u and sigma_y^-l(g) | v; sigma_y(T)/T = g / sigma_y^-l(g)
            T = _shifted_product(g, range(-ell, 0), case)
        else:
            T = _shifted_product(g, range(0, -ell), case).inv()
        K = K * T / sy(T, case)
        S = S * T


def _value_at_zero(p: MPoly) -> MPoly:
    return p.subs({"y": 0})


def standardize_kernel(r: Rnf) -> Rnf:
    """Rescale (K, S) -> (q^-m K, y^m S) with the least m making K standard."""
    if r.case is SHIFT:
        return r
    u0, v0 = _value_at_zero(r.kernel.num), _value_at_zero(r.kernel.den)
    if u0.is_zero() or v0.is_zero():
        return r
    e = q_power_of(RatFunc(u0, v0, r.kernel.scalar))
    if e is None or e <= 0:
        return r
    return transform_special(r, e)


def is_standard(K: RatFunc, case: CaseTag) -> bool:
    if not is_reduced(K, case):
        return False
    if case is SHIFT:
        return True
    u0, v0 = _value_at_zero(K.num), _value_at_zero(K.den)
    if u0.is_zero() or v0.is_zero():
        return True
    e = q_power_of(RatFunc(u0, v0, K.scalar))
    return e is None or e <= 0


def _qpow(e: int) -> RatFunc:
    from .arith import Q
    return RatFunc(Q ** e) if e >= 0 else RatFunc(ONE, Q ** (-e))


def transform_special(r: Rnf, m: int) -> Rnf:
    """(K, S) -> (q^-m K, y^m S); m may be negative for the inverse move."""
    if r.case is not QSHIFT:
        raise WrongCase("the special-factor transformation exists only in the q case")
    if m == 0:
        return r
    return Rnf(r.kernel * _qpow(-m), r.shell * RatFunc(Y) ** m, r.case)


def transform_normal_factor(r: Rnf, a: MPoly, side: Side, forward: bool = True) -> Rnf:
    """Trade the sigma_y-normal factor ``a`` of the kernel for a shell factor.

    Denominator side: (u / v, S) -> (u / (v/a * sigma_y(a)), a S).
    Numerator side:   (u / v, S) -> (u/a * sigma_y^-1(a) / v, sigma_y^-1(a) S).
    With ``forward=False`` the factor moves the other way (sigma_y^-1 on the
    denominator side, sigma_y on the numerator side), undoing the forward move
    applied to the shifted factor.
    """
    K = r.kernel
    target = K.den if side is Side.DENOMINATOR else K.num
    if deg(a, "y") <= 0 or not (target % a).is_zero():
        raise NotAFactor(f"{a} does not divide the kernel {side.value}")
    A = RatFunc(a)
    if side is Side.DENOMINATOR:
        if forward:
            return Rnf(K * A / sy(A, r.case), r.shell * A, r.case)
        B = sy(A, r.case, -1)
        return Rnf(K * A / B, r.shell / B, r.case)
    if forward:
        B = sy(A, r.case, -1)
        return Rnf(K / A * B, r.shell * B, r.case)
    return Rnf(K / A * sy(A, r.case), r.shell / A, r.case)

"""The two shift actions and the sigma_y structure of polynomials.

Shift case: sigma_x f(x, y) = f(x+1, y), sigma_y f(x, y) = f(x, y+1).
q case:     sigma_x f(x, y) = f(qx, y),  sigma_y f(x, y) = f(x, qy).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .arith import (
    ONE, Q, RING, X, Y, MPoly, RatFunc, coeffs_in, deg, factor_irreducible,
    yprimitive,
)
from .errors import InputNotNormal, NotApplicable, ZeroInput


class CaseTag(enum.Enum):
    SHIFT = "shift"
    QSHIFT = "qshift"

    @classmethod
    def parse(cls, text: "str | CaseTag") -> "CaseTag":
        if isinstance(text, CaseTag):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown case {text!r}; expected 'shift' or 'qshift'") from None


SHIFT = CaseTag.SHIFT
QSHIFT = CaseTag.QSHIFT


@dataclass(frozen=True)
class ShiftOp:
    """sigma_x^a sigma_y^b."""

    a: int = 0
    b: int = 0

    def __mul__(self, other: "ShiftOp") -> "ShiftOp":
        return ShiftOp(self.a + other.a, self.b + other.b)

    def inverse(self) -> "ShiftOp":
        return ShiftOp(-self.a, -self.b)


SIGMA_X = ShiftOp(1, 0)
SIGMA_Y = ShiftOp(0, 1)


def shift_poly(p: MPoly, a: int, b: int, case: CaseTag) -> tuple[MPoly, int]:
    """Apply sigma_x^a sigma_y^b to a polynomial.

    Returns ``(r, e)`` with the image equal to ``q^e * r``; ``e`` is nonzero
    only in the q case, where negative powers of q are split off.
    """
    if (a == 0 and b == 0) or p.is_zero():
        return p, 0
    if case is SHIFT:
        return p.compose(Y + b, X + a, Q), 0
    terms = {}
    low = None
    for (ey, ex, eq), c in p.terms():
        e = int(eq) + a * int(ex) + b * int(ey)
        terms[(ey, ex, e)] = c
        low = e if low is None else min(low, e)
    if low >= 0:
        return RING.from_dict(terms), 0
    return RING.from_dict({(ey, ex, e - low): c for (ey, ex, e), c in terms.items()}), low


def _qpow(e: int) -> RatFunc:
    return RatFunc(Q ** e) if e >= 0 else RatFunc(ONE, Q ** (-e))


def shift_rf(f: RatFunc, a: int, b: int, case: CaseTag) -> RatFunc:
    if f.is_zero() or (a == 0 and b == 0):
        return f
    n, en = shift_poly(f.num, a, b, case)
    d, ed = shift_poly(f.den, a, b, case)
    out = RatFunc(n, d, f.scalar)
    if en != ed:
        out = out * _qpow(en - ed)
    return out


def apply_shift(op: ShiftOp, f, case: CaseTag) -> RatFunc:
    """Image of ``f`` (RatFunc or MPoly) under ``op``."""
    if isinstance(f, MPoly):
        f = RatFunc(f)
    return shift_rf(f, op.a, op.b, case)


def sy(f, case: CaseTag, k: int = 1) -> RatFunc:
    return apply_shift(ShiftOp(0, k), f, case)


def sx(f, case: CaseTag, k: int = 1) -> RatFunc:
    return apply_shift(ShiftOp(k, 0), f, case)


def shift_assoc(p: MPoly, a: int, b: int, case: CaseTag) -> MPoly:
    """Shifted polynomial normalized to its F[y]-associate representative."""
    r, _ = shift_poly(p, a, b, case)
    if deg(r, "y") <= 0:
        return ONE
    return yprimitive(r)[1]


def ypp(p: MPoly) -> MPoly:
    """Canonical F[y]-associate of a polynomial (1 for y-free input)."""
    if p.is_zero():
        raise ZeroInput("zero polynomial")
    if deg(p, "y") <= 0:
        return ONE
    return yprimitive(p)[1]


def is_y_monomial(p: MPoly) -> bool:
    """True if p is c * y^k with c free of y and k > 0 (sigma_y-special in q case)."""
    cs = coeffs_in(p, "y")
    return len(cs) == 1 and next(iter(cs)) > 0


def _ratio_is_q_power(r: RatFunc) -> Optional[int]:
    if r.scalar != 1:
        return None
    n, d = r.num, r.den
    if len(n) != 1 or len(d) != 1:
        return None
    (en,), (ed,) = [[m for m, _ in t.terms()] for t in (n, d)]
    if en[0] or en[1] or ed[0] or ed[1]:
        return None
    if int(n.leading_coefficient()) != 1 or int(d.leading_coefficient()) != 1:
        return None
    return int(en[2]) - int(ed[2])


def q_power_of(r: RatFunc) -> Optional[int]:
    """The integer e with r == q^e, or None."""
    if r.is_zero():
        return None
    return _ratio_is_q_power(r)


def _ycoeff_rf(p: MPoly) -> dict[int, RatFunc]:
    return {e: RatFunc(c) for e, c in coeffs_in(p, "y").items()}


def sigma_y_equivalent(a: MPoly, b: MPoly, case: CaseTag) -> Optional[int]:
    """The integer l with ``a`` an F[y]-associate of sigma_y^l(b), or None.

    Meaningful for sigma_y-normal inputs, where l is unique.  Two y-free
    inputs give 0; two sigma_y-special monomials in the q case give 0 too.
    """
    if a.is_zero() or b.is_zero():
        raise ZeroInput("zero polynomial")
    n = deg(a, "y")
    if n != deg(b, "y"):
        return None
    if n == 0:
        return 0
    pa, pb = ypp(a), ypp(b)
    if pa == pb:
        return 0
    ca, cb = _ycoeff_rf(pa), _ycoeff_rf(pb)
    if case is SHIFT:
        ta = ca.get(n - 1, RatFunc.const(0)) / ca[n]
        tb = cb.get(n - 1, RatFunc.const(0)) / cb[n]
        diff = (ta - tb) / n
        if not diff.is_constant() or diff.scalar.denominator != 1:
            return None
        ell = int(diff.scalar)
    else:
        if set(ca) != set(cb):
            return None
        if len(ca) < 2:
            return None
        j1, j0 = max(ca), min(ca)
        ratio = (ca[j1] / ca[j0]) / (cb[j1] / cb[j0])
        e = q_power_of(ratio)
        if e is None or e % (j1 - j0):
            return None
        ell = e // (j1 - j0)
    return ell if shift_assoc(pb, 0, ell, case) == pa else None


def irreducible_y_factors(p: MPoly) -> list[tuple[MPoly, int]]:
    """Irreducible factors of positive y-degree, normalized to F[y]-associates."""
    return [(ypp(f), e) for f, e in factor_irreducible(p, "y")]


def dispersion_set(p: MPoly, case: CaseTag) -> set[int]:
    """All l != 0 with gcd(p, sigma_y^l(p)) of positive y-degree."""
    if p.is_zero():
        raise ZeroInput("zero polynomial")
    facs = [f for f, _ in irreducible_y_factors(p)]
    if case is QSHIFT and any(is_y_monomial(f) for f in facs):
        raise NotApplicable("y divides p: every shift shares the factor y")
    out = set()
    for f in facs:
        for g in facs:
            ell = sigma_y_equivalent(f, g, case)
            if ell:
                out.add(ell)
                out.add(-ell)
    return out


class SigmaClass(enum.Enum):
    NORMAL = "Normal"
    SPECIAL = "Special"
    BOTH = "Both"
    NEITHER = "Neither"


def classify_sigma_y(p: MPoly, case: CaseTag) -> SigmaClass:
    if p.is_zero():
        raise ZeroInput("zero polynomial")
    if deg(p, "y") == 0:
        return SigmaClass.BOTH
    if case is QSHIFT and is_y_monomial(p):
        return SigmaClass.SPECIAL
    if case is QSHIFT and p.subs({"y": 0}).is_zero():
        return SigmaClass.NEITHER
    return SigmaClass.NORMAL if not dispersion_set(p, case) else SigmaClass.NEITHER


def is_normal(p: MPoly, case: CaseTag) -> bool:
    return classify_sigma_y(p, case) in (SigmaClass.NORMAL, SigmaClass.BOTH)


def is_sigma_monic(f: RatFunc, case: CaseTag) -> bool:
    """Monic in y (shift case) or value 1 at y = 0 (q case), for numerator and
    denominator taken as F[y] elements with f's scalar folded into the numerator."""
    num = RatFunc(f.num, None, f.scalar)
    den = RatFunc(f.den)
    if case is SHIFT:
        def lead(r):
            cs = coeffs_in(r.num, "y")
            return RatFunc(cs[max(cs)], None, r.scalar)
        return (lead(num) / lead(den)).is_one()
    n0, d0 = f.num.subs({"y": 0}), f.den.subs({"y": 0})
    if n0.is_zero() or d0.is_zero():
        return False
    return RatFunc(n0, d0, f.scalar).is_one()


def splitting_factorization(f: RatFunc, case: CaseTag) -> tuple[RatFunc, RatFunc]:
    """``f = f_s * f_n`` with f_s sigma_y-special and f_n sigma_y-normal, sigma_y-monic."""
    if f.is_zero():
        raise ZeroInput("zero rational function")

    def normal_part(p: MPoly) -> RatFunc:
        if case is QSHIFT:
            cs = coeffs_in(p, "y")
            k = min(cs)
            if k:
                p = p / (Y ** k)
            c0 = p.subs({"y": 0})
            return RatFunc(p) / RatFunc(c0)
        cs = coeffs_in(p, "y")
        return RatFunc(p) / RatFunc(cs[max(cs)])

    fn = normal_part(f.num) / normal_part(f.den)
    return f / fn, fn


def is_strongly_coprime(p: MPoly, K: RatFunc, case: CaseTag) -> bool:
    """gcd(u, sigma_y^l(p)) = gcd(v, sigma_y^-l(p)) = 1 for every l >= 0."""
    if p.is_zero() or K.is_zero():
        raise ZeroInput("zero input")
    pf = [f for f, _ in irreducible_y_factors(p)]
    uf = [f for f, _ in irreducible_y_factors(K.num)] if deg(K.num, "y") > 0 else []
    vf = [f for f, _ in irreducible_y_factors(K.den)] if deg(K.den, "y") > 0 else []
    for f in pf:
        if case is QSHIFT and is_y_monomial(f):
            if any(is_y_monomial(a) for a in uf + vf):
                return False
            continue
        for a in uf:
            ell = sigma_y_equivalent(a, f, case)
            if ell is not None and ell >= 0:
                return False
        for b in vf:
            ell = sigma_y_equivalent(b, f, case)
            if ell is not None and ell <= 0:
                return False
    return True


def sigma_y_related(a: MPoly, b: MPoly, case: CaseTag) -> bool:
    """Irreducible factors of a and b match one-to-one under sigma_y-shifts,
    multiplicities included."""
    for p in (a, b):
        if not is_normal(p, case):
            raise InputNotNormal(f"{p} is not sigma_y-normal")
    fa = irreducible_y_factors(a) if deg(a, "y") > 0 else []
    fb = irreducible_y_factors(b) if deg(b, "y") > 0 else []
    if len(fa) != len(fb):
        return False
    unused = list(fb)
    for f, e in fa:
        for idx, (g, k) in enumerate(unused):
            if k == e and sigma_y_equivalent(f, g, case) is not None:
                del unused[idx]
                break
        else:
            return False
    return not unused

"""Integer-linear polynomials and the common denominator of shifted remainders.

An irreducible p is integer-linear when p = P(lam*x + mu*y) (shift case) or
p = x^alpha y^beta P(x^lam y^mu) (q case).  The univariate P(z) is stored in
the main ring with y standing for z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .arith import (
    ONE, Q, RING, X, Y, MPoly, RatFunc, deg, is_free_of, multiply_out, normalize,
)
from .errors import InputNotNormal, NotIrreducible
from .shiftcase import (
    QSHIFT, SHIFT, CaseTag, irreducible_y_factors, is_normal, shift_assoc,
    shift_poly, sigma_y_equivalent,
)


def delta_params(lam: int, mu: int) -> tuple[int, int]:
    """(s, t) with s*lam + t*mu = 1: s in [0, mu) when mu > 0, else (1, 0)."""
    if mu == 0:
        return 1, 0
    if lam == 0:
        return 0, 1
    s = pow(lam, -1, mu) if mu > 1 else 0
    t = (1 - s * lam) // mu
    assert s * lam + t * mu == 1
    return s, t


@dataclass(frozen=True)
class UnivariateRep:
    P: MPoly
    lam: int
    mu: int
    alpha: int = 0
    beta: int = 0
    case: CaseTag = SHIFT

    @property
    def st(self) -> tuple[int, int]:
        return delta_params(self.lam, self.mu)

    def reconstruct(self) -> MPoly:
        """P(lam x + mu y), or x^alpha y^beta P(x^lam y^mu) cleared of x^-1."""
        if self.case is SHIFT:
            return self.P.compose(self.lam * X + self.mu * Y, X, Q)
        terms: dict = {}
        for (k, _, eq), c in self.P.terms():
            k = int(k)
            terms[(self.beta + k * self.mu, self.alpha + k * self.lam, int(eq))] = c
        low = min(ex for _, ex, _ in terms)
        return RING.from_dict({(ey, ex - low, eq): c for (ey, ex, eq), c in terms.items()})

    def zdegree(self) -> int:
        return deg(self.P, "y")

    def format_P(self) -> str:
        from .arith import format_poly
        return format_poly(self.P, {"y": "z"})


def _sigma_z_normalize(P: MPoly, case: CaseTag) -> MPoly:
    P = normalize(P)
    if case is QSHIFT:
        c0 = P.subs({"y": 0})
        if not c0.is_zero() and c0.leading_coefficient() < 0:
            P = -P
    return P


def univariate_representation(p: MPoly, case: CaseTag) -> Optional[UnivariateRep]:
    """The normalized univariate representation of an irreducible p, or None."""
    if is_free_of(p, "x") and is_free_of(p, "y"):
        raise NotIrreducible(f"{p} is a unit of the ground field")
    if case is SHIFT:
        if is_free_of(p, "y"):
            lam, mu = 1, 0
        elif is_free_of(p, "x"):
            lam, mu = 0, 1
        else:
            ratio = RatFunc(p.derivative("x")) / RatFunc(p.derivative("y"))
            if not ratio.is_constant():
                return None
            r = Fraction(ratio.scalar)
            lam, mu = r.numerator, r.denominator
        s, t = delta_params(lam, mu)
        P = p.compose(t * Y, s * Y, Q)
        rep = UnivariateRep(_sigma_z_normalize(P, case), lam, mu, 0, 0, case)
        if normalize(rep.reconstruct()) != normalize(p):
            return None
        return rep
    support = [(int(ex), int(ey)) for (ey, ex, _), _ in p.terms()]
    beta = min(ey for _, ey in support)
    alpha = min(ex for ex, ey in support if ey == beta)
    diffs = [(ex - alpha, ey - beta) for ex, ey in support if (ex, ey) != (alpha, beta)]
    if not diffs:
        raise NotIrreducible(f"{p} is a monomial")
    g = 0
    for a, b in diffs:
        g = gcd(g, gcd(a, b))
    lam, mu = diffs[0][0] // g, diffs[0][1] // g
    g = gcd(lam, mu)
    lam, mu = lam // g, mu // g
    if mu < 0 or (mu == 0 and lam < 0):
        lam, mu = -lam, -mu
    terms: dict = {}
    for (ey, ex, eq), c in p.terms():
        a, b = int(ex) - alpha, int(ey) - beta
        if a * mu != b * lam:
            return None
        k = b // mu if mu else a // lam
        if k < 0:
            return None
        terms[(k, 0, int(eq))] = c
    P = RING.from_dict(terms)
    return UnivariateRep(_sigma_z_normalize(P, case), lam, mu, alpha, beta, case)


def delta_shift(rep: UnivariateRep, ell: int, case: CaseTag) -> MPoly:
    """delta^ell applied to the represented polynomial, normalized."""
    s, t = rep.st
    image, _ = shift_poly(rep.reconstruct(), s * ell, t * ell, case)
    return normalize(image)


@dataclass(frozen=True)
class ILClass:
    rep: UnivariateRep
    alpha: dict  # delta-exponent -> multiplicity

    @property
    def p(self) -> MPoly:
        return normalize(self.rep.reconstruct())

    @property
    def k(self) -> int:
        return max(self.alpha.values())

    @property
    def support(self) -> list[int]:
        return sorted(self.alpha)


@dataclass(frozen=True)
class ILDecomposition:
    unit: RatFunc
    classes: tuple = field(default=())
    case: CaseTag = SHIFT

    def reconstruct(self) -> RatFunc:
        out = self.unit
        for cl in self.classes:
            for ell, m in cl.alpha.items():
                out = out * RatFunc(delta_shift(cl.rep, ell, self.case)) ** m
        return out


def non_integer_linear_factor(d: MPoly, case: CaseTag) -> Optional[MPoly]:
    """First irreducible factor of d (positive y-degree) that is not integer-linear."""
    if deg(d) <= 0:
        return None
    for f, _ in irreducible_y_factors(d):
        if univariate_representation(f, case) is None:
            return f
    return None


def _z_equivalent(a: UnivariateRep, b: UnivariateRep, case: CaseTag) -> Optional[int]:
    if (a.lam, a.mu) != (b.lam, b.mu):
        return None
    return sigma_y_equivalent(a.P, b.P, case)


def il_decompose(d: MPoly, case: CaseTag) -> Optional[ILDecomposition]:
    """Group the factors of d into delta-orbits; None if one is not integer-linear."""
    if not is_normal(d, case):
        raise InputNotNormal(f"{d} is not sigma_y-normal")
    if deg(d) <= 0:
        return ILDecomposition(RatFunc(d), (), case)
    groups: list[list] = []  # [anchor rep, {offset: multiplicity}]
    for f, e in irreducible_y_factors(d):
        rep = univariate_representation(f, case)
        if rep is None:
            return None
        for grp in groups:
            ell = _z_equivalent(rep, grp[0], case)
            if ell is not None:
                grp[1][ell] = e
                break
        else:
            groups.append([rep, {0: e}])
    classes = []
    for rep, alpha in groups:
        low = min(alpha)
        anchor = univariate_representation(delta_shift(rep, low, case), case)
        classes.append(ILClass(anchor, {ell - low: m for ell, m in sorted(alpha.items())}))
    dec = ILDecomposition(RatFunc.const(1), tuple(classes), case)
    unit = RatFunc(d) / dec.reconstruct()
    assert unit.is_free_of("y")
    return ILDecomposition(unit, tuple(classes), case)


def local_D0(cl: ILClass, case: CaseTag) -> MPoly:
    return multiply_out(((delta_shift(cl.rep, i, case), cl.k) for i in range(cl.rep.mu)))


def common_multiple_D(dec: ILDecomposition, K: RatFunc, case: CaseTag) -> tuple[MPoly, MPoly]:
    """A multiple D of the decomposed polynomial and the reference product D0."""
    from .reduce import complement_basis, representative_shift

    cb = complement_basis(K, case)
    D = ONE
    D0 = ONE
    for cl in dec.classes:
        mu, k = cl.rep.mu, cl.k
        D0 *= local_D0(cl, case)
        occupied = {i % mu for i in cl.alpha}
        for i in cl.alpha:
            D *= delta_shift(cl.rep, i, case) ** k
        for j in range(mu):
            if j in occupied:
                continue
            base = delta_shift(cl.rep, j, case)
            m = representative_shift(base, cb)
            D *= shift_assoc(base, 0, m, case) ** k
    return normalize(D), normalize(D0)


def deg_D0_formula(dec: ILDecomposition, case: CaseTag) -> int:
    if case is SHIFT:
        return sum(cl.k * cl.rep.mu * cl.rep.zdegree() for cl in dec.classes)
    return sum(cl.k * cl.rep.mu ** 2 * cl.rep.zdegree() for cl in dec.classes)

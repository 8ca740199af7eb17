"""Order bounds for telescopers and the q-proper term compiler."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import ONE, Q, X, Y, RatFunc, deg
from .errors import NotApplicable
from .intlin import ILDecomposition, deg_D0_formula
from .reduce import ComplementBasis, closed_form_dimension
from .shiftcase import QSHIFT, CaseTag, sx, sy

Triple = tuple  # (slope in n, slope in k, offset)


def upper_bound(cb: ComplementBasis, dec: Optional[ILDecomposition], case: CaseTag) -> int:
    """dim of the standard complement plus deg_y(D0)."""
    dim = cb.dimension
    assert dim == closed_form_dimension(cb.K, case), "complement census disagrees with formula"
    if dec is None:
        return dim
    from .intlin import local_D0

    built = sum(deg(local_D0(cl, case), "y") for cl in dec.classes)
    formula = deg_D0_formula(dec, case)
    assert built == formula, "deg_y(D0) disagrees with its formula"
    return dim + formula


def lower_bound(dec: Optional[ILDecomposition], base_remainder_zero: bool) -> int:
    if base_remainder_zero:
        return 0
    if dec is None or not dec.classes:
        return 1
    best = 1
    for cl in dec.classes:
        lam, mu = cl.rep.lam, cl.rep.mu
        for j, kj in cl.alpha.items():
            rho = 1
            while not any(kj <= kl and (j - l - lam * rho) % mu == 0
                          for l, kl in cl.alpha.items()):
                rho += 1
            best = max(best, rho)
    return best


@dataclass(frozen=True)
class QProperDescriptor:
    """p xi^k q^(gamma k(k-1)/2) prod_i (q;q)_{a_i n + a'_i k + a''_i} (q;q)_{b_i n - b'_i k + b''_i}
    / ((q;q)_{m_i n + m'_i k + m''_i} (q;q)_{n_i n - n'_i k + n''_i}).

    ``p`` is a Laurent polynomial in x = q^n, y = q^k.
    """

    alphas: tuple = ()
    betas: tuple = ()
    mus: tuple = ()
    nus: tuple = ()
    gamma: int = 0
    xi: Fraction = Fraction(1)
    p: RatFunc = field(default_factory=lambda: RatFunc.const(1))

    def __post_init__(self):
        m = max(len(self.alphas), len(self.betas), len(self.mus), len(self.nus))
        pad = lambda seq: tuple(tuple(int(c) for c in t) for t in seq) + ((0, 0, 0),) * (m - len(seq))
        for name in ("alphas", "betas", "mus", "nus"):
            object.__setattr__(self, name, pad(getattr(self, name)))
        object.__setattr__(self, "xi", Fraction(self.xi))
        self.validate()

    def validate(self) -> None:
        if self.xi == 0:
            raise ValueError("xi must be nonzero")
        for name in ("alphas", "betas", "mus", "nus"):
            for t in getattr(self, name):
                if len(t) != 3 or t[0] < 0 or t[1] < 0:
                    raise ValueError(f"{name}: slopes must be non-negative, got {t}")
        for top, bot in ((self.alphas, self.mus), (self.betas, self.nus)):
            for a in top:
                if a == (0, 0, 0):
                    continue
                for m in bot:
                    if m == (0, 0, 0):
                        continue
                    if a[0] == m[0] and a[1] == m[1] and a[2] - m[2] >= 0:
                        raise ValueError(f"factor {a} cancels against {m}; fold it into p")
        den = self.p.den
        if not (len(den) == 1 and int(den.leading_coefficient()) == 1 and den.degrees()[2] == 0):
            raise ValueError("p must be a Laurent polynomial in x and y")

    @property
    def m(self) -> int:
        return len(self.alphas)


def az_bound(desc: QProperDescriptor) -> int:
    a = sum(t[1] ** 2 for t in desc.alphas)
    b = sum(t[1] ** 2 for t in desc.betas)
    m = sum(t[1] ** 2 for t in desc.mus)
    n = sum(t[1] ** 2 for t in desc.nus)
    return max(desc.gamma + a, m) + max(-desc.gamma + n, b)


def _mono(c: int, a: int, b: int) -> RatFunc:
    """q^c x^a y^b with possibly negative exponents."""
    num, den = ONE, ONE
    for base, e in ((Q, c), (X, a), (Y, b)):
        if e >= 0:
            num = num * base ** e
        else:
            den = den * base ** (-e)
    return RatFunc(num, den)


def _one_minus(c: int, a: int, b: int) -> RatFunc:
    return RatFunc.const(1) - _mono(c, a, b)


def _plus_ratio(t: Triple, dn: int, dk: int) -> RatFunc:
    """(q;q)_{m + step} / (q;q)_m for m = a n + b k + c and the step induced by (dn, dk)."""
    a, b, c = t
    step = a * dn + b * dk
    return _poch_step(c, a, b, step)


def _minus_ratio(t: Triple, dn: int, dk: int) -> RatFunc:
    a, b, c = t
    step = a * dn - b * dk
    return _poch_step(c, a, -b, step)


def _poch_step(c: int, a: int, b: int, step: int) -> RatFunc:
    """(q;q)_{m+step}/(q;q)_m with q^m = q^c x^a y^b."""
    out = RatFunc.const(1)
    if step >= 0:
        for i in range(1, step + 1):
            out = out * _one_minus(c + i, a, b)
    else:
        for i in range(0, -step):
            out = out / _one_minus(c - i, a, b)
    return out


def _quotient(desc: QProperDescriptor, dn: int, dk: int) -> RatFunc:
    out = RatFunc.const(1)
    for t in desc.alphas:
        out = out * _plus_ratio(t, dn, dk)
    for t in desc.betas:
        out = out * _minus_ratio(t, dn, dk)
    for t in desc.mus:
        out = out / _plus_ratio(t, dn, dk)
    for t in desc.nus:
        out = out / _minus_ratio(t, dn, dk)
    return out


def compile_qproper(desc: QProperDescriptor):
    """Shift quotients (f_x, f_y) of the described term, x = q^n, y = q^k."""
    from .telescope import validate_term

    fx = _quotient(desc, 1, 0) * sx(desc.p, QSHIFT) / desc.p
    fy = _quotient(desc, 0, 1) * sy(desc.p, QSHIFT) / desc.p
    fy = fy * RatFunc.const(desc.xi)
    if desc.gamma:
        fy = fy * _mono(0, 0, desc.gamma)
    return validate_term(fx, fy, QSHIFT)


def bound_report(term, desc: Optional[QProperDescriptor] = None):
    """Bounds only, without searching for the telescoper."""
    from .intlin import il_decompose, non_integer_linear_factor
    from .reduce import complement_basis, reduce_shell
    from .rnf import compute_rnf, standardize_kernel
    from .telescope import BoundInfo

    rnf = standardize_kernel(compute_rnf(term.fy, term.case))
    cb = complement_basis(rnf.kernel, term.case)
    r0 = reduce_shell(rnf.shell, cb).remainder
    bad = non_integer_linear_factor(r0.d, term.case)
    if bad is not None:
        raise NotApplicable(f"significant denominator has a non-integer-linear factor {bad}")
    dec = il_decompose(r0.d, term.case)
    upper = upper_bound(cb, dec, term.case)
    lower = lower_bound(dec, r0.is_zero())
    b = az_bound(desc) if desc is not None else None
    return BoundInfo(cb.dimension, upper - cb.dimension, upper, lower, b)

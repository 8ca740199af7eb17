"""Reduction of shells modulo the image of Delta_K(g) = K sigma_y(g) - g.

For a sigma_y-standard kernel K = u/v every shell S splits as

    S = Delta_K(g) + h + p/v

where h is proper with a sigma_y-normal denominator strongly coprime with K
and p lies in the standard complement of phi_K(p) = u sigma_y(p) - v p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .arith import (
    ONE, MPoly, RatFunc, as_ratfunc, deg, from_ycoeffs, pf_numerator,
    ycoeffs, yinv_mod, ymonomial, yrem,
)
from .shiftcase import (
    QSHIFT, SHIFT, CaseTag, irreducible_y_factors, is_normal, is_strongly_coprime,
    is_y_monomial, q_power_of, shift_assoc, sigma_y_equivalent, sy, ypp,
)

Coeffs = dict  # degree -> RatFunc (free of y)


def _axpy(acc: Coeffs, c: RatFunc, vec: Coeffs) -> None:
    """acc += c * vec, dropping zero entries."""
    for k, a in vec.items():
        s = acc.get(k)
        s = c * a if s is None else s + c * a
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s


def kernel_parts(K: RatFunc) -> tuple[RatFunc, MPoly]:
    """(u, v) with v the canonical F[y]-form of K's denominator and u = K v."""
    v = ypp(K.den)
    return K * RatFunc(v), v


def phi_K(p, K: RatFunc, case: CaseTag) -> RatFunc:
    """u sigma_y(p) - v p."""
    u, v = kernel_parts(K)
    p = as_ratfunc(p)
    return u * sy(p, case) - RatFunc(v) * p


def closed_form_dimension(K: RatFunc, case: CaseTag) -> int:
    """Dimension of the standard complement from the degrees of u and v."""
    u, v = kernel_parts(K)
    du, dv = deg(u.num), deg(v)
    top = max(du, dv)
    if case is SHIFT:
        diff = u - RatFunc(v)
        dd = -1 if diff.is_zero() else deg(diff.num)
        return top - (1 if (not diff.is_zero() and 0 <= dd <= du - 1) else 0)
    e = q_power_of(K)
    return top + (1 if e is not None and e <= 0 else 0)


@dataclass(eq=False)
class ComplementBasis:
    """Echelon basis of im(phi_K) and the complementary monomial degrees."""

    K: RatFunc
    case: CaseTag
    u: RatFunc
    v: MPoly
    offset: int
    stop: int
    pivots: dict = field(repr=False)
    complement: tuple
    ufactors: list = field(repr=False)
    vfactors: list = field(repr=False)
    _uinv: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.complement)

    def phi_monomial(self, i: int) -> Coeffs:
        return ycoeffs(self.u * sy(ymonomial(i), self.case) - RatFunc(self.v) * ymonomial(i))

    def pivot(self, k: int):
        """(image, preimage) with image of leading degree k, or None."""
        hit = self.pivots.get(k)
        if hit is not None:
            return hit
        if k <= self.stop:
            return None
        i = k - self.offset
        img = self.phi_monomial(i)
        assert max(img) == k
        hit = (img, {i: RatFunc.const(1)})
        self.pivots[k] = hit
        return hit

    def u_inverse(self, T: MPoly) -> RatFunc:
        key = str(T)
        inv = self._uinv.get(key)
        if inv is None:
            inv = yinv_mod(self.u, T)
            self._uinv[key] = inv
        return inv

    def in_complement(self, p: RatFunc) -> bool:
        return set(ycoeffs(p)) <= set(self.complement)


def complement_basis(K: RatFunc, case: CaseTag) -> ComplementBasis:
    u, v = kernel_parts(K)
    uc, vc = ycoeffs(u), ycoeffs(RatFunc(v))
    du, dv = max(uc), max(vc)
    top = max(du, dv)
    offset, special = top, None
    if case is SHIFT:
        if du == dv and uc[du] == vc[dv]:
            offset = du - 1
            zero = RatFunc.const(0)
            t = (uc.get(du - 1, zero) - vc.get(dv - 1, zero)) / uc[du]
            if t.is_constant() and t.scalar.denominator == 1 and t.scalar <= 0:
                special = int(-t.scalar)
    elif du == dv:
        e = q_power_of(vc[dv] / uc[du])
        if e is not None and e >= 0:
            special = e
    last = special if special is not None else 0
    pivots: dict = {}
    basis = ComplementBasis(K, case, u, v, offset, offset + last, pivots, (), [], [])
    for i in range(last + 1):
        img = basis.phi_monomial(i)
        pre = {i: RatFunc.const(1)}
        while img:
            k = max(img)
            hit = pivots.get(k)
            if hit is None:
                pivots[k] = (img, pre)
                break
            c = img[k] / hit[0][k]
            _axpy(img, -c, hit[0])
            _axpy(pre, -c, hit[1])
    basis.complement = tuple(k for k in range(offset + last + 1) if k not in pivots)
    basis.ufactors = [f for f, _ in irreducible_y_factors(u.num)] if deg(u.num) > 0 else []
    basis.vfactors = [f for f, _ in irreducible_y_factors(v)] if deg(v) > 0 else []
    return basis


def reduce_numerator(W: Coeffs, cb: ComplementBasis) -> tuple[Coeffs, Coeffs]:
    """Split the Laurent polynomial W as phi_K(g) + p with p in the complement."""
    W = dict(W)
    g: Coeffs = {}
    while W and min(W) < 0:
        if cb.case is SHIFT:
            raise AssertionError("negative powers of y cannot occur in the shift case")
        j = min(W)
        img = cb.phi_monomial(j)
        c = W[j] / img[j]
        _axpy(W, -c, img)
        _axpy(g, c, {j: RatFunc.const(1)})
    p: Coeffs = {}
    while W:
        k = max(W)
        hit = cb.pivot(k)
        if hit is None:
            p[k] = W.pop(k)
            continue
        img, pre = hit
        c = W[k] / img[k]
        _axpy(W, -c, img)
        _axpy(g, c, pre)
    return g, p


def reduce_polynomial(a, cb: ComplementBasis) -> tuple[RatFunc, RatFunc]:
    """``a = Delta_K(g) + p/v`` with g polynomial and p in the complement."""
    g, p = reduce_numerator(ycoeffs(as_ratfunc(a) * RatFunc(cb.v)), cb)
    return from_ycoeffs(g), from_ycoeffs(p)


@dataclass(frozen=True, eq=False)
class Remainder:
    h: RatFunc
    p: RatFunc
    v: MPoly
    case: CaseTag
    basis: Optional[ComplementBasis] = field(default=None, repr=False, compare=False)

    def value(self) -> RatFunc:
        return self.h + self.p / RatFunc(self.v)

    @property
    def d(self) -> MPoly:
        """Significant denominator."""
        return ONE if self.h.is_zero() else ypp(self.h.den)

    def is_zero(self) -> bool:
        return self.h.is_zero() and self.p.is_zero()

    def __eq__(self, other):
        return isinstance(other, Remainder) and self.h == other.h and self.p == other.p \
            and self.v == other.v and self.case is other.case

    __hash__ = None

    def shape_errors(self) -> list[str]:
        """Violated remainder invariants (empty when the shape is valid)."""
        errs = []
        if not self.h.is_proper():
            errs.append("h is not proper")
        d = self.d
        if not is_normal(d, self.case):
            errs.append("significant denominator is not sigma_y-normal")
        if self.basis is not None:
            if not is_strongly_coprime(d, self.basis.K, self.case):
                errs.append("significant denominator not strongly coprime with K")
            if not self.p.is_ypoly() or not self.basis.in_complement(self.p):
                errs.append("p is not in the standard complement")
        return errs


@dataclass(frozen=True, eq=False)
class ReductionResult:
    g: RatFunc
    remainder: Remainder

    @property
    def r(self) -> Remainder:
        return self.remainder


def delta_K(g: RatFunc, K: RatFunc, case: CaseTag) -> RatFunc:
    return K * sy(g, case) - g


# --- block moves -------------------------------------------------------------


def _step_up(X: RatFunc, T: MPoly, cb: ComplementBasis):
    """X = a/T  ->  Delta_K(-X) + Y/sigma(T) + W/v.  Returns (Y/sigma T, sigma T, -X, W)."""
    Xs = cb.K * sy(X, cb.case)
    sT = ypp(sy(T, cb.case).num)
    Yn = pf_numerator(Xs, sT)
    piece = Yn / RatFunc(sT)
    W = (Xs - piece) * RatFunc(cb.v)
    assert W.is_ypoly(), "move-up left a non-polynomial part"
    return piece, sT, -X, W


def _step_down(X: RatFunc, T: MPoly, cb: ComplementBasis):
    """X = a/T  ->  Delta_K(C) + C + W/v with C = c/sigma^-1(T)."""
    t = ypp(sy(T, cb.case, -1).num)
    st = sy(RatFunc(t), cb.case)
    A = X * st
    assert A.is_ypoly()
    c1 = yrem(yrem(A * RatFunc(cb.v), T) * cb.u_inverse(T), T)
    C = sy(c1, cb.case, -1) / RatFunc(t)
    W = (X - cb.K * sy(C, cb.case)) * RatFunc(cb.v)
    assert W.is_ypoly(), "move-down left a non-polynomial part"
    return C, t, C, W


def _blocks(S: RatFunc, case: CaseTag):
    """Partial fractions of S over its normal denominator factors.

    Returns ([(factor, multiplicity, piece)], laurent_rest).
    """
    if S.is_zero():
        return [], S
    if deg(S.den) <= 0:
        return [], S
    out = []
    rest = S
    for f, e in irreducible_y_factors(S.den):
        if case is QSHIFT and is_y_monomial(f):
            continue
        T = f ** e
        piece = pf_numerator(S, T) / RatFunc(T)
        out.append((f, e, piece))
        rest = rest - piece
    return out, rest


class _Class:
    """Members of one sigma_y-class: position -> [multiplicity, piece]."""

    def __init__(self, base: MPoly):
        self.base = base
        self.members: dict[int, list] = {}

    def block_of(self, pos: int, e: int, case: CaseTag) -> MPoly:
        return shift_assoc(self.base, 0, pos, case) ** e


def _group(blocks, case: CaseTag) -> list[_Class]:
    classes: list[_Class] = []
    for f, e, piece in blocks:
        for cl in classes:
            ell = sigma_y_equivalent(f, cl.base, case)
            if ell is not None:
                cl.members[ell] = [e, piece]
                break
        else:
            cl = _Class(f)
            cl.members[0] = [e, piece]
            classes.append(cl)
    for cl in classes:
        low = min(cl.members)
        if low:
            cl.base = shift_assoc(cl.base, 0, low, case)
            cl.members = {k - low: m for k, m in cl.members.items()}
    return classes


def _positions(base: MPoly, factors, case: CaseTag) -> list[int]:
    out = []
    for a in factors:
        ell = sigma_y_equivalent(a, base, case)
        if ell is not None:
            out.append(ell)
    return out


def representative_shift(base: MPoly, cb: ComplementBasis) -> int:
    """Least-effort m with sigma_y^m(base) strongly coprime with K.

    Case 2 (a shift of base divides u): one past the largest such shift, but
    never below 0.  Case 3 (a shift divides v): one before the smallest, but
    never above 0.  Otherwise 0.
    """
    U = _positions(base, cb.ufactors, cb.case)
    if U:
        return max(max(U) + 1, 0)
    V = _positions(base, cb.vfactors, cb.case)
    if V:
        return min(min(V) - 1, 0)
    return 0


def _move_class(cl: _Class, target: int, cb: ComplementBasis, g: list, W: list) -> None:
    case = cb.case
    while min(cl.members) < target:
        pos = min(cl.members)
        e, X = cl.members.pop(pos)
        piece, _, gpart, Wpart = _step_up(X, cl.block_of(pos, e, case), cb)
        g.append(gpart)
        W.append(Wpart)
        _merge(cl, pos + 1, e, piece)
    while max(cl.members) > target:
        pos = max(cl.members)
        e, X = cl.members.pop(pos)
        piece, _, gpart, Wpart = _step_down(X, cl.block_of(pos, e, case), cb)
        g.append(gpart)
        W.append(Wpart)
        _merge(cl, pos - 1, e, piece)


def _merge(cl: _Class, pos: int, e: int, piece: RatFunc) -> None:
    cur = cl.members.get(pos)
    if cur is None:
        cl.members[pos] = [e, piece]
    else:
        cur[0] = max(cur[0], e)
        cur[1] = cur[1] + piece


def _finish(h: RatFunc, W_terms: list, g_terms: list, cb: ComplementBasis,
            p0: Optional[RatFunc] = None) -> ReductionResult:
    Wsum: Coeffs = {}
    for w in W_terms:
        _axpy(Wsum, RatFunc.const(1), ycoeffs(w))
    gpoly, pco = reduce_numerator(Wsum, cb)
    p = from_ycoeffs(pco)
    if p0 is not None:
        p = p + p0
    g = from_ycoeffs(gpoly)
    for t in g_terms:
        g = g + t
    return ReductionResult(g, Remainder(h, p, cb.v, cb.case, cb))


def reduce_shell(S: RatFunc, cb: ComplementBasis) -> ReductionResult:
    """Decompose S = Delta_K(g) + h + p/v."""
    S = as_ratfunc(S)
    zero = RatFunc.const(0)
    if S.is_zero():
        return ReductionResult(zero, Remainder(zero, zero, cb.v, cb.case, cb))
    blocks, rest = _blocks(S, cb.case)
    W_terms = [rest * RatFunc(cb.v)]
    g_terms: list = []
    h = zero
    for cl in _group(blocks, cb.case):
        target = representative_shift(cl.base, cb)
        _move_class(cl, target, cb, g_terms, W_terms)
        h = h + cl.members[target][1]
    return _finish(h, W_terms, g_terms, cb)


def adjust(r: Remainder, d: MPoly, cb: Optional[ComplementBasis] = None) -> ReductionResult:
    """Re-anchor the proper part of r at the factors of d.

    Returns (g, t) with value(r) - value(t) = Delta_K(g) and the significant
    denominator of t sigma_y-coprime with d.
    """
    cb = cb or r.basis
    if cb is None:
        raise ValueError("remainder carries no complement basis")
    zero = RatFunc.const(0)
    if r.h.is_zero() or deg(d) <= 0:
        return ReductionResult(zero, r)
    dfacs = [f for f, _ in irreducible_y_factors(d)]
    blocks, rest = _blocks(r.h, cb.case)
    assert rest.is_zero(), "proper part has a polynomial component"
    W_terms: list = []
    g_terms: list = []
    h = zero
    for f, e, piece in blocks:
        steps = 0
        for a in dfacs:
            ell = sigma_y_equivalent(a, f, cb.case)
            if ell is not None:
                steps = ell
                break
        cl = _Class(f)
        cl.members[0] = [e, piece]
        _move_class(cl, steps, cb, g_terms, W_terms)
        h = h + cl.members[steps][1]
    return _finish(h, W_terms, g_terms, cb, r.p)


def adjust_remainder(r: Remainder, d: MPoly) -> Remainder:
    return adjust(r, d).remainder


def rnf_and_basis(fy: RatFunc, case: CaseTag):
    from .rnf import compute_rnf, standardize_kernel

    rnf = standardize_kernel(compute_rnf(fy, case))
    return rnf, complement_basis(rnf.kernel, case)


def is_summable(term) -> tuple[bool, Optional[RatFunc]]:
    """Decide whether ``term`` = Delta_y(G) for a term G = g H, H = T/S.

    On success the witness is g with S = Delta_K(g).
    """
    rnf, cb = rnf_and_basis(term.fy, term.case)
    res = reduce_shell(rnf.shell, cb)
    if res.remainder.is_zero():
        return True, res.g
    return False, None

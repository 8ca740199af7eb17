"""Creative telescoping by reduction.

A term T is given by its shift quotients f_x = sigma_x(T)/T and
f_y = sigma_y(T)/T.  With an RNF f_y = K sigma_y(S)/S and H = T/S, the shift
sigma_x^i(T) equals H * S_i where S_i = S * prod_{j<i} sigma_x^j(f_x).  Each
S_i is reduced modulo im(Delta_K); a telescoper is an F-linear dependency
among the remainders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .arith import MPoly, RatFunc, deg, normalize_vector, nullspace, rank_at_point, ycoeffs
from .errors import Incompatible, OrderCapExceeded, ZeroInput
from .intlin import common_multiple_D, il_decompose, non_integer_linear_factor
from .reduce import (
    ComplementBasis, ReductionResult, Remainder, adjust, complement_basis, delta_K,
    reduce_shell,
)
from .rnf import Rnf, compute_rnf, standardize_kernel
from .shiftcase import CaseTag, sx, sy


@dataclass(frozen=True)
class TermSpec:
    case: CaseTag
    fx: RatFunc
    fy: RatFunc


def compatibility_residual(fx: RatFunc, fy: RatFunc, case: CaseTag) -> RatFunc:
    return sx(fy, case) * fx - sy(fx, case) * fy


def validate_term(fx: RatFunc, fy: RatFunc, case: CaseTag) -> TermSpec:
    if fx.is_zero() or fy.is_zero():
        raise ZeroInput("shift quotients must be nonzero")
    res = compatibility_residual(fx, fy, case)
    if not res.is_zero():
        raise Incompatible("sigma_x(f_y) f_x != sigma_y(f_x) f_y", residual=res.numer())
    return TermSpec(case, fx, fy)


@dataclass(frozen=True)
class Telescoper:
    coefficients: tuple  # MPoly, free of y, content-free

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class Certificate:
    """G = g H with H = T / S."""

    g: RatFunc


@dataclass(frozen=True)
class BoundInfo:
    dim_complement: int
    deg_D0: int
    upper: int
    lower: int
    b_az: Optional[int] = None

    def as_dict(self) -> dict:
        out = {"dim_complement": self.dim_complement, "deg_D0": self.deg_D0,
               "upper": self.upper, "lower": self.lower}
        if self.b_az is not None:
            out["b_az"] = self.b_az
        return out


@dataclass(frozen=True)
class NoTelescoper:
    evidence: MPoly
    rnf: Rnf
    remainder: Remainder


@dataclass(frozen=True)
class Found:
    telescoper: Telescoper
    certificate: Certificate
    remainders: tuple
    bounds: BoundInfo
    rnf: Rnf
    D: MPoly = field(repr=False)
    D0: MPoly = field(repr=False)


def shell_sequence(term: TermSpec, rnf: Rnf, i: int) -> RatFunc:
    """Shell of sigma_x^i(T) for the fixed kernel of ``rnf``."""
    out = rnf.shell
    for j in range(i):
        out = out * sx(term.fx, term.case, j)
    return out


class _Shells:
    """Incrementally generated shells S_0, S_1, ... of a term."""

    def __init__(self, term: TermSpec, rnf: Rnf):
        self._fx = term.fx
        self._case = term.case
        self._prod = RatFunc.const(1)
        self._S = rnf.shell
        self.i = 0

    def next(self) -> RatFunc:
        out = self._S * self._prod
        self._prod = self._prod * sx(self._fx, self._case, self.i)
        self.i += 1
        return out


class _Dependency:
    """Incremental echelon form over F that reports the first linear relation."""

    def __init__(self):
        self.rows: list = []  # (pivot, vector dict, combination dict)

    def add(self, idx: int, vec: dict) -> Optional[dict]:
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        combo = {idx: RatFunc.const(1)}
        for pivot, rvec, rcombo in self.rows:
            c = vec.get(pivot)
            if c is None:
                continue
            f = c / rvec[pivot]
            for k, a in rvec.items():
                s = vec.get(k, RatFunc.const(0)) - f * a
                if s.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = s
            for k, a in rcombo.items():
                s = combo.get(k, RatFunc.const(0)) - f * a
                if s.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = s
        if not vec:
            return combo
        self.rows.append((min(vec, key=str), vec, combo))
        return None


def _coordinates(r: Remainder, D: MPoly, cb: ComplementBasis) -> dict:
    """Coordinates of r = a/D + p/v: y-coefficients of a, then of p."""
    vec = {}
    if not r.h.is_zero():
        a = r.h * RatFunc(D)
        assert a.is_ypoly(), "significant denominator does not divide D"
        for k, c in ycoeffs(a).items():
            vec[("a", k)] = c
    for k, c in ycoeffs(r.p).items():
        vec[("p", k)] = c
    return vec


def _dense(vecs, keys):
    return [[vec.get(k, RatFunc.const(0)) for vec in vecs] for k in keys]


def find_telescoper(term: TermSpec, max_order: Optional[int] = None,
                    b_az: Optional[int] = None):
    """Minimal telescoper with certificate, or NoTelescoper."""
    from .bounds import lower_bound, upper_bound

    case = term.case
    rnf = standardize_kernel(compute_rnf(term.fy, case))
    cb = complement_basis(rnf.kernel, case)
    shells = _Shells(term, rnf)
    first = reduce_shell(shells.next(), cb)
    d0 = first.remainder.d
    bad = non_integer_linear_factor(d0, case)
    if bad is not None:
        return NoTelescoper(bad, rnf, first.remainder)
    dec = il_decompose(d0, case)
    D, D0 = common_multiple_D(dec, rnf.kernel, case)
    upper = upper_bound(cb, dec, case)
    lower = lower_bound(dec, first.remainder.is_zero())
    bounds = BoundInfo(cb.dimension, deg(D0), upper, lower, b_az)
    cap = upper if max_order is None else min(max_order, upper)

    witnesses: list = []
    remainders: list = []
    coords: list = []
    dep = _Dependency()
    res = adjust(first.remainder, D, cb)
    step = ReductionResult(first.g + res.g, res.remainder)
    i = 0
    while True:
        witnesses.append(step.g)
        remainders.append(step.remainder)
        vec = _coordinates(step.remainder, D, cb)
        coords.append(vec)
        combo = dep.add(i, vec)
        if combo is not None:
            break
        if i >= cap:
            if max_order is not None and max_order < upper:
                raise OrderCapExceeded(f"no telescoper of order <= {max_order}")
            raise AssertionError("no dependency within the proven upper bound")
        i += 1
        red = reduce_shell(shells.next(), cb)
        res = adjust(red.remainder, D, cb)
        step = ReductionResult(red.g + res.g, res.remainder)

    order = i
    ell = [combo.get(j, RatFunc.const(0)) for j in range(order + 1)]
    coeffs = normalize_vector(ell, lead="last")
    _check_minimal(coords, order)
    g = RatFunc.const(0)
    for c, w in zip(coeffs, witnesses):
        if not c.is_zero():
            g = g + RatFunc(c) * w
    return Found(Telescoper(tuple(coeffs)), Certificate(g), tuple(remainders), bounds, rnf, D, D0)


_SAMPLE_POINTS = ({"x": 10007, "q": 7919}, {"x": -3571, "q": 101}, {"x": 65537, "q": -13})


def _check_minimal(coords: list, order: int) -> None:
    """The first ``order`` remainders are independent and all ``order + 1`` are not.

    A specialized rank only bounds the rank over F from below, so rank
    ``order`` at any point settles both claims; the symbolic check runs
    only when every sample point is degenerate.
    """
    keys = sorted({k for vec in coords for k in vec}, key=str)
    if not keys:
        assert order == 0
        return
    M = _dense(coords, keys)
    for pt in _SAMPLE_POINTS:
        if rank_at_point(M, **pt) == order:
            return
    full = nullspace(M)
    assert len(full) == 1, "dependency is not unique"
    if order:
        assert not nullspace(_dense(coords[:order], keys)), "shorter relation exists"


def apply_telescoper(term: TermSpec, rnf: Rnf, L: Telescoper) -> RatFunc:
    """L(T) / H as a rational function: sum_i l_i S_i."""
    out = RatFunc.const(0)
    shells = _Shells(term, rnf)
    for c in L.coefficients:
        S = shells.next()
        if not c.is_zero():
            out = out + RatFunc(c) * S
    return out


def verify_certificate(term: TermSpec, L: Telescoper, cert: Certificate, rnf: Rnf) -> bool:
    """sum_i l_i S_i == K sigma_y(g) - g."""
    if not L.coefficients or L.coefficients[-1].is_zero():
        return False
    lhs = apply_telescoper(term, rnf, L)
    return (lhs - delta_K(cert.g, rnf.kernel, term.case)).is_zero()


def verify_identity_direct(term: TermSpec, L: Telescoper, cert: Certificate, shell: RatFunc) -> bool:
    """L(T)/T == (sigma_y(G) - G)/T with G = g T / S, checked without using K.

    L(T)/T = sum_i l_i prod_{j<i} sigma_x^j(f_x)
    (sigma_y(G) - G)/T = sigma_y(g) f_y / sigma_y(S) - g / S
    """
    case = term.case
    lhs = RatFunc.const(0)
    prod = RatFunc.const(1)
    for i, c in enumerate(L.coefficients):
        if not c.is_zero():
            lhs = lhs + RatFunc(c) * prod
        prod = prod * sx(term.fx, case, i)
    rhs = sy(cert.g, case) * term.fy / sy(shell, case) - cert.g / shell
    return (lhs - rhs).is_zero()

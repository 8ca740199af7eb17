"""Random generators and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from ctelescope.arith import ONE, Q, X, Y, RatFunc, format_ratfunc
from ctelescope.shiftcase import QSHIFT, SHIFT

qs, xs, ys = sp.symbols("q x y")


def to_sympy(f) -> sp.Expr:
    """Independent view of a RatFunc (or MPoly) through its printed form."""
    text = format_ratfunc(f) if isinstance(f, RatFunc) else str(f)
    return sp.sympify(text.replace("^", "**"), locals={"q": qs, "x": xs, "y": ys})


def sym_shift(expr, var, case, k=1):
    if case is SHIFT:
        return expr.subs(var, var + k)
    return expr.subs(var, qs ** k * var)


def sym_zero(expr) -> bool:
    return sp.cancel(sp.together(expr)) == 0


# --- random polynomials ------------------------------------------------------

def linear_factor(rng: random.Random, case) -> RatFunc:
    """A random polynomial that is integer-linear in (x, y)."""
    if case is SHIFT:
        lam = rng.choice([0, 1, 1, 2])
        mu = rng.choice([1, 1, 2])
        return RatFunc(lam * X + mu * Y + rng.randint(-3, 3))
    lam = rng.choice([0, 1])
    mu = rng.choice([1, 1, 2])
    c = rng.choice([1, -1, 2])
    return RatFunc(ONE - c * Q ** rng.randint(0, 3) * X ** lam * Y ** mu)


def normal_il_poly(rng: random.Random, case, n: int):
    """Product of up to n integer-linear factors, dropping any that break normality."""
    from ctelescope.shiftcase import is_normal

    p = ONE
    for _ in range(n):
        f = linear_factor(rng, case).numer()
        if f.degrees()[0] == 0:
            continue
        cand = p * f ** rng.randint(1, 2)
        if is_normal(cand, case):
            p = cand
    return p


def random_poly(rng: random.Random, case, degree: int, vars=("x", "y")) -> RatFunc:
    gens = {"x": X, "y": Y}
    out = RatFunc.const(rng.randint(-3, 3))
    for _ in range(rng.randint(1, 4)):
        ey = rng.randint(0, degree)
        ex = rng.randint(0, max(0, degree - ey)) if "x" in vars else 0
        term = gens["y"] ** ey * gens["x"] ** ex
        if case is QSHIFT and rng.random() < 0.4:
            term = term * Q ** rng.randint(1, 2)
        out = out + RatFunc(term) * rng.choice([-2, -1, 1, 2, 3])
    return out


def random_ratfunc(rng: random.Random, case, degree: int = 4) -> RatFunc:
    """Product of a few shifted factors over another, capped at y-degree ``degree``."""
    from ctelescope.shiftcase import sy

    def side(limit):
        out = RatFunc.const(rng.choice([1, -1, 2, 3]))
        used = 0
        while used < limit and rng.random() < 0.8:
            f = linear_factor(rng, case) if rng.random() < 0.7 else random_poly(rng, case, 2)
            if f.is_zero() or f.is_constant():
                continue
            d = f.ydeg_num()
            if used + d > limit:
                break
            f = sy(f, case, rng.randint(-2, 2))
            out = out * f
            used += max(d, 0)
        return out

    while True:
        num, den = side(degree), side(degree)
        if not num.is_zero() and not den.is_zero():
            return num / den


# --- complement census oracle ------------------------------------------------

def _fraction_poly(p, point) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for (ey, ex, eq), c in p.terms():
        v = Fraction(int(c)) * point["x"] ** int(ex) * point["q"] ** int(eq)
        out[int(ey)] = out.get(int(ey), Fraction(0)) + v
    return {k: v for k, v in out.items() if v}


def _shift_monomial(i: int, case, q) -> dict[int, Fraction]:
    if case is SHIFT:
        from math import comb
        return {j: Fraction(comb(i, j)) for j in range(i + 1)}
    return {i: Fraction(q) ** i}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, c in a.items():
        for j, d in b.items():
            out[i + j] = out.get(i + j, 0) + c * d
    return {k: v for k, v in out.items() if v}


def census_dimension(K: RatFunc, case, N: int = 30,
                     point=None) -> int:
    """Codimension of span{phi(y^i)} by plain rational elimination at a sample point.

    Uses only the kernel's numerator and denominator and the definition of
    the shift, so it is independent of the library's complement logic.
    """
    point = point or {"x": Fraction(10007, 13), "q": Fraction(7, 3)}
    u = _fraction_poly(K.numer(), point)
    v = _fraction_poly(K.denom(), point)
    rows = []
    for i in range(N + 1):
        img = _mul(u, _shift_monomial(i, case, point["q"]))
        for k, c in _mul(v, {i: Fraction(1)}).items():
            img[k] = img.get(k, 0) - c
        rows.append({k: c for k, c in img.items() if c})
    top = max(rows[-1])
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row)
            if lead not in pivots:
                pivots[lead] = row
                break
            piv = pivots[lead]
            f = row[lead] / piv[lead]
            for k, c in piv.items():
                s = row.get(k, 0) - f * c
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return top + 1 - len(pivots)


def exceptional_kernel(rng: random.Random, case) -> RatFunc:
    """A standard kernel whose phi_K has a nonnegative exceptional index."""
    if case is SHIFT:
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        u = RatFunc(4 * Y) * RatFunc(Y + X)
        v = RatFunc(2 * Y + 2 * a + 1) * RatFunc(2 * Y + 2 * X + 2 * b + 1)
        return u / v
    e = rng.randint(0, 4)
    c = rng.choice([2, 3, -2])
    return RatFunc(Y - X) / RatFunc(Q ** e * Y - c)


def random_kernel(rng: random.Random, case, degree: int = 2) -> RatFunc:
    """A sigma_y-standard kernel, sometimes from the exceptional family."""
    from ctelescope.rnf import compute_rnf, standardize_kernel

    if rng.random() < 0.2:
        return exceptional_kernel(rng, case)
    return standardize_kernel(compute_rnf(random_ratfunc(rng, case, degree), case)).kernel


def shell_exactness_errors(S: RatFunc, cb) -> list:
    """Reduce S and return the violated properties (empty on success)."""
    from ctelescope.reduce import delta_K, reduce_shell

    res = reduce_shell(S, cb)
    errs = list(res.remainder.shape_errors())
    if S - res.remainder.value() != delta_K(res.g, cb.K, cb.case):
        errs.append("S - r != Delta_K(g)")
    return errs


def random_shell(rng: random.Random, case, K: RatFunc, degree: int = 4) -> RatFunc:
    """Random shell that often contains y-shifts of the kernel's own factors."""
    from ctelescope.shiftcase import irreducible_y_factors, sy

    S = random_ratfunc(rng, case, degree - 1)
    facs = [f for f, _ in irreducible_y_factors(K.num)] + [f for f, _ in irreducible_y_factors(K.den)]
    if facs and rng.random() < 0.7:
        f = sy(RatFunc(rng.choice(facs)), case, rng.randint(-3, 3))
        S = S / f if rng.random() < 0.7 else S * f
    return S


def eval_poly(p, point: dict) -> Fraction:
    total = Fraction(0)
    for (ey, ex, eq), c in p.terms():
        total += int(c) * point["y"] ** int(ey) * point["x"] ** int(ex) * point["q"] ** int(eq)
    return total


def eval_rf(f: RatFunc, point: dict) -> Fraction:
    """Value of f at a rational point; ZeroDivisionError at a pole."""
    return f.scalar * eval_poly(f.num, point) / eval_poly(f.den, point)


def random_points(rng: random.Random, n: int = 3):
    for _ in range(n):
        yield {"x": Fraction(rng.randint(-60, 60), rng.randint(1, 7)),
               "y": Fraction(rng.randint(-60, 60), rng.randint(1, 7)),
               "q": Fraction(rng.randint(2, 9), 1) + Fraction(1, rng.randint(11, 31))}


def shifted_point(point: dict, case, var: str = "y", k: int = 1) -> dict:
    out = dict(point)
    out[var] = point[var] + k if case is SHIFT else point[var] * point["q"] ** k
    return out


def _rising(case, a: int, b: int, c: int, step_x: int, step_y: int) -> RatFunc:
    """Gamma(a x + b y + c) (or (q;q)_{a n + b k + c}) shifted by (step_x, step_y), over itself."""
    step = a * step_x + b * step_y
    out = RatFunc.const(1)
    for j in range(abs(step)):
        if case is SHIFT:
            # Gamma(L + step)/Gamma(L) = L (L+1) ... (L+step-1)
            f = RatFunc(a * X + b * Y + c + (j if step > 0 else -j - 1))
        else:
            e = c + (j + 1 if step > 0 else -j)
            mono = Q ** e if e >= 0 else None
            base = RatFunc(X) ** a * RatFunc(Y) ** b if b >= 0 else RatFunc(X) ** a / RatFunc(Y) ** (-b)
            f = RatFunc.const(1) - base * (RatFunc(mono) if mono is not None else
                                            RatFunc(ONE) / RatFunc(Q ** (-e)))
        out = out * f if step > 0 else out / f
    return out


def random_term(rng: random.Random, case, factors: int = 2):
    """Quotients (f_x, f_y) of a random proper term built from shifted Gamma-type factors."""
    from ctelescope.shiftcase import sx, sy

    fx, fy = RatFunc.const(1), RatFunc.const(1)
    for _ in range(rng.randint(1, factors)):
        a, b = rng.randint(0, 1), rng.choice([-1, 1, 1, 2])
        c = rng.randint(0, 2)
        sign = rng.choice([1, -1])
        fx = fx * _rising(case, a, b, c, 1, 0) ** sign
        fy = fy * _rising(case, a, b, c, 0, 1) ** sign
    R = RatFunc.const(1)
    if rng.random() < 0.5:
        R = R / linear_factor(rng, case)
    if R.is_zero():
        R = RatFunc.const(1)
    fx = fx * sx(R, case) / R
    fy = fy * sy(R, case) / R
    ratio = rng.choice([1, 1, 2, -1])
    return fx, fy * RatFunc.const(ratio)

"""Exact arithmetic substrate.

Polynomials live in Z[q, x, y] and are plain ``flint.fmpz_mpoly`` objects;
the monomial order is lex with y > x > q.  Univariate polynomials P(z) reuse
the same ring with y playing the role of z.  Elements of K(x, y), K = Q or Q(q), are :class:`RatFunc`.

Polynomials in F[y], F = K(x), are handled up to F-units: a RatFunc whose
denominator is free of y is an F[y] element, and two polynomials in
Z[q, x, y] are associates in F[y] iff their y-primitive parts agree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Sequence

import flint

from .errors import NoInverse, ZeroInput

MPoly = flint.fmpz_mpoly

RING = flint.fmpz_mpoly_ctx.get(("y", "x", "q"), "lex")
Y, X, Q = RING.gens()
VAR_INDEX = {"y": 0, "x": 1, "q": 2}

ONE = RING.constant(1)
ZERO = RING.constant(0)


def const(c: int) -> MPoly:
    return RING.constant(int(c))


def _index(p: MPoly, var: str) -> int:
    return p.context().names().index(var)


def deg(p: MPoly, var: str = "y") -> int:
    """Degree in ``var``; the zero polynomial gets -1 (standing in for -inf)."""
    if p.is_zero():
        return -1
    return int(p.degrees()[_index(p, var)])


def coeffs_in(p: MPoly, var: str = "y") -> dict[int, MPoly]:
    """Coefficients of ``p`` with respect to ``var`` (each free of ``var``)."""
    ctx = p.context()
    i = _index(p, var)
    buckets: dict[int, dict] = {}
    for mon, c in p.terms():
        e = int(mon[i])
        m = list(mon)
        m[i] = 0
        buckets.setdefault(e, {})[tuple(m)] = c
    return {e: ctx.from_dict(d) for e, d in buckets.items()}


def leading_coeff_in(p: MPoly, var: str = "y") -> MPoly:
    i = _index(p, var)
    d = int(p.degrees()[i])
    ctx = p.context()
    terms = {}
    for mon, c in p.terms():
        if mon[i] == d:
            m = list(mon)
            m[i] = 0
            terms[tuple(m)] = c
    return ctx.from_dict(terms)


def is_free_of(p: MPoly, var: str) -> bool:
    return p.is_zero() or p.degrees()[_index(p, var)] == 0


def sign_normal(p: MPoly) -> MPoly:
    if not p.is_zero() and p.leading_coefficient() < 0:
        return -p
    return p


def primitive(p: MPoly) -> tuple[int, MPoly]:
    """Split ``p = c * pp`` with integer ``c`` and ``pp`` content-free, positive lc."""
    if p.is_zero():
        return 0, p
    c, pp = p.primitive()
    c = int(c)
    if pp.leading_coefficient() < 0:
        return -c, -pp
    return c, pp


def normalize(p: MPoly) -> MPoly:
    return primitive(p)[1]


def content_in(p: MPoly, var: str = "y") -> MPoly:
    """gcd of the ``var``-coefficients, normalized (primitive, positive lc)."""
    cs = list(coeffs_in(p, var).values())
    g = cs[0]
    for c in cs[1:]:
        if g.is_one():
            break
        g = g.gcd(c)
    return normalize(g)


def yprimitive(p: MPoly) -> tuple[MPoly, MPoly]:
    """Return ``(c, pp)`` with ``p = c * pp``, ``c`` free of y, ``pp`` y-primitive.

    ``pp`` is the canonical representative of the F[y]-associate class of p.
    """
    if p.is_zero():
        raise ZeroInput("zero polynomial has no primitive part")
    c = content_in(p, "y")
    pp = p / c
    if pp.leading_coefficient() < 0:
        pp, c = -pp, -c
    return c, pp


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Primitive, unit-normalized gcd in Z[q, x, y]."""
    if a.is_zero():
        return normalize(b) if not b.is_zero() else b
    if b.is_zero():
        return normalize(a)
    return normalize(a.gcd(b))


def ygcd(a: MPoly, b: MPoly) -> MPoly:
    """gcd in F[y], returned as its y-primitive representative."""
    g = poly_gcd(a, b)
    if deg(g, "y") <= 0:
        return ONE
    return yprimitive(g)[1]


def poly_key(p: MPoly):
    """Deterministic sort key for polynomials."""
    return (tuple(p.degrees()), str(p))


def factor_list(p: MPoly) -> tuple[int, list[tuple[MPoly, int]]]:
    """Complete factorization ``p = c * prod f^e`` with normalized factors."""
    if p.is_zero():
        raise ZeroInput("cannot factor zero")
    c, facs = p.factor()
    c = int(c)
    out = []
    for f, e in facs:
        if f.leading_coefficient() < 0:
            f = -f
            if e % 2:
                c = -c
        out.append((f, int(e)))
    out.sort(key=lambda fe: poly_key(fe[0]))
    return c, out


def factor_irreducible(p: MPoly, mainvar: str = "y") -> list[tuple[MPoly, int]]:
    """Irreducible factors of ``p`` that involve ``mainvar``.

    Factors free of ``mainvar`` are units of the ground field and are dropped;
    the product of the returned powers equals ``p`` up to such a unit.
    """
    _, facs = factor_list(p)
    return [(f, e) for f, e in facs if not is_free_of(f, mainvar)]


def squarefree_decompose(p: MPoly, mainvar: str = "y") -> list[tuple[MPoly, int]]:
    """Squarefree parts (grouped by multiplicity) that involve ``mainvar``."""
    if p.is_zero():
        raise ZeroInput("cannot decompose zero")
    _, facs = p.factor_squarefree()
    grouped: dict[int, MPoly] = {}
    for f, e in facs:
        f = normalize(f)
        if is_free_of(f, mainvar):
            continue
        e = int(e)
        grouped[e] = grouped[e] * f if e in grouped else f
    return sorted(((f, e) for e, f in grouped.items()), key=lambda fe: fe[1])


def multiply_out(facs: Iterable[tuple[MPoly, int]], ctx=RING) -> MPoly:
    out = ctx.constant(1)
    for f, e in facs:
        out *= f ** e
    return out


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(int(c))


class RatFunc:
    """Canonical element of K(x, y): ``scalar * num / den``.

    ``num`` and ``den`` are coprime, content-free and have positive leading
    coefficients; ``scalar`` is an exact rational.  Zero is ``0 * 0 / 1``.
    """

    __slots__ = ("num", "den", "scalar", "_hash")

    def __init__(self, num=0, den=None, scalar=1):
        s = Fraction(scalar)
        if isinstance(num, (int, Fraction)):
            s *= Fraction(num)
            num = ONE
        if den is None:
            den = ONE
        elif isinstance(den, (int, Fraction)):
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            s /= Fraction(den)
            den = ONE
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if num.is_zero() or s == 0:
            self.num, self.den, self.scalar = ZERO, ONE, Fraction(0)
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        cn, num = primitive(num)
        cd, den = primitive(den)
        self.num, self.den, self.scalar = num, den, s * Fraction(cn, cd)

    @classmethod
    def _raw(cls, num: MPoly, den: MPoly, scalar: Fraction) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj.scalar, obj._hash = num, den, scalar, None
        return obj

    # construction helpers
    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFunc":
        return cls(p)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = _as_fraction(c)
        if c == 0:
            return cls._raw(ZERO, ONE, Fraction(0))
        return cls._raw(ONE, ONE, c)

    # predicates
    def is_zero(self) -> bool:
        return self.scalar == 0

    def is_one(self) -> bool:
        return self.scalar == 1 and self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_free_of(self, var: str) -> bool:
        return is_free_of(self.num, var) and is_free_of(self.den, var)

    def is_ypoly(self) -> bool:
        """True if this is an element of F[y] (denominator free of y)."""
        return is_free_of(self.den, "y")

    # value polynomials carrying the scalar
    def numer(self) -> MPoly:
        """Integer-coefficient numerator including the scalar's numerator."""
        return self.num * self.scalar.numerator

    def denom(self) -> MPoly:
        return self.den * self.scalar.denominator

    # arithmetic
    def __add__(self, other):
        other = as_ratfunc(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        s1, s2 = self.scalar, other.scalar
        if self.den == other.den:
            n = self.num * (s1.numerator * s2.denominator) + other.num * (s2.numerator * s1.denominator)
            return RatFunc(n, self.den, Fraction(1, s1.denominator * s2.denominator))
        g = self.den.gcd(other.den)
        d1 = self.den / g
        d2 = other.den / g
        n = self.num * d2 * (s1.numerator * s2.denominator) + other.num * d1 * (s2.numerator * s1.denominator)
        return RatFunc(n, d1 * other.den, Fraction(1, s1.denominator * s2.denominator))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.num, self.den, -self.scalar)

    def __sub__(self, other):
        return self + (-as_ratfunc(other))

    def __rsub__(self, other):
        return as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = as_ratfunc(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        a, d2 = (self.num, other.den) if g1.is_one() else (self.num / g1, other.den / g1)
        b, d1 = (other.num, self.den) if g2.is_one() else (other.num / g2, self.den / g2)
        return RatFunc._raw(a * b, d1 * d2, self.scalar * other.scalar)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        s = self.scalar
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d, s = -n, -d, -s
        return RatFunc._raw(n, d, 1 / s)

    def __truediv__(self, other):
        return self * as_ratfunc(other).inv()

    def __rtruediv__(self, other):
        return as_ratfunc(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return RatFunc.const(1)
        return RatFunc._raw(self.num ** e, self.den ** e, self.scalar ** e)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = as_ratfunc(other)
            except TypeError:
                return NotImplemented
        return self.scalar == other.scalar and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den), self.scalar))
        return self._hash

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)})"

    def __str__(self):
        return format_ratfunc(self)

    # structure
    def ydeg_num(self) -> int:
        return deg(self.num, "y")

    def ydeg_den(self) -> int:
        return deg(self.den, "y")

    def is_proper(self) -> bool:
        """y-degree of numerator below that of the denominator (zero is proper)."""
        return self.is_zero() or self.ydeg_num() < self.ydeg_den()

    def subs(self, var: str, value: int) -> "RatFunc":
        n = self.num.subs({var: value})
        d = self.den.subs({var: value})
        if d.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at {var}={value}")
        return RatFunc(n, d, self.scalar)

    def evaluate(self, **values) -> Fraction:
        """Evaluate at rational points (all variables occurring must be given)."""
        if all(isinstance(v, int) for v in values.values()):
            def ev(p):
                names = p.context().names()
                return Fraction(int(p(*(values.get(n, 0) for n in names))))
            missing = {n for p in (self.num, self.den) for n, e in
                       zip(p.context().names(), p.degrees()) if e > 0} - set(values)
            if missing:
                raise KeyError(sorted(missing)[0])
        else:
            ev = self._ev_slow(values)
        d = ev(self.den)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes")
        return self.scalar * ev(self.num) / d

    @staticmethod
    def _ev_slow(values):
        def ev(p):
            total = Fraction(0)
            names = p.context().names()
            for mon, c in p.terms():
                t = Fraction(int(c))
                for name, e in zip(names, mon):
                    if e:
                        t *= Fraction(values[name]) ** int(e)
                total += t
            return total
        return ev


def as_ratfunc(obj) -> RatFunc:
    if isinstance(obj, RatFunc):
        return obj
    if isinstance(obj, (int, Fraction)):
        return RatFunc.const(obj)
    if isinstance(obj, flint.fmpz):
        return RatFunc.const(int(obj))
    if isinstance(obj, MPoly):
        return RatFunc(obj)
    raise TypeError(f"cannot convert {type(obj).__name__} to RatFunc")


# ----------------------------------------------------------------------------
# printing

_PRINT_ORDER = ("q", "x", "y")


def format_poly(p: MPoly, rename: dict[str, str] | None = None) -> str:
    """Expanded polynomial text, terms in descending lex order (y > x > q)."""
    if p.is_zero():
        return "0"
    names = p.context().names()
    shown = [rename.get(n, n) for n in names] if rename else names
    order = [names.index(v) for v in _PRINT_ORDER if v in names]
    order += [i for i in range(len(names)) if i not in order]
    parts = []
    for mon, c in p.terms():
        c = int(c)
        factors = []
        for i in order:
            e = mon[i]
            if e == 1:
                factors.append(shown[i])
            elif e > 1:
                factors.append(f"{shown[i]}^{e}")
        mono = "*".join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _atomic(text: str) -> bool:
    return all(ch not in text for ch in " *+-")


def format_ratfunc(f: RatFunc) -> str:
    """Canonical text ``N`` or ``N/D``; parses back to the same value."""
    if f.is_zero():
        return "0"
    ns = format_poly(f.numer())
    d = f.denom()
    if d.is_one():
        return ns
    ds = format_poly(d)
    if not _atomic(ns.lstrip("-")):
        ns = f"({ns})"
    if not _atomic(ds):
        ds = f"({ds})"
    return f"{ns}/{ds}"


# ----------------------------------------------------------------------------
# F[y] arithmetic on MPoly numerators and RatFunc values


def _pdivmod(A: MPoly, B: MPoly, want_quotient: bool = True):
    """Pseudo-division in y: ``s * A = Qt * B + R`` with ``deg_y R < deg_y B``.

    Returns ``(Qt, R, s)``; ``s`` is y-free.
    """
    db = deg(B, "y")
    lcB = leading_coeff_in(B, "y")
    R = A
    Qt = ZERO
    s = ONE
    while not R.is_zero():
        dr = deg(R, "y")
        if dr < db:
            break
        lcR = leading_coeff_in(R, "y")
        mono = Y ** (dr - db)
        R = lcB * R - lcR * mono * B
        if want_quotient:
            Qt = lcB * Qt + lcR * mono
        s = s * lcB
    return Qt, R, s


def ycontent_reduce(*polys: MPoly) -> tuple[MPoly, list[MPoly]]:
    """Divide the polys by the common y-free content; returns (content, reduced)."""
    g = None
    for p in polys:
        if p.is_zero():
            continue
        for c in coeffs_in(p, "y").values():
            g = c if g is None else g.gcd(c)
            if g.is_one():
                return ONE, list(polys)
    if g is None or g.is_one():
        return ONE, list(polys)
    g = normalize(g)
    return g, [p / g if not p.is_zero() else p for p in polys]


def yrem(a: RatFunc, B: MPoly) -> RatFunc:
    """Remainder of the F[y] element ``a`` modulo ``B`` (deg_y < deg_y B)."""
    if not a.is_ypoly():
        raise ValueError("yrem expects an element of F[y]")
    if deg(B, "y") <= 0:
        return RatFunc.const(0)
    if a.is_zero() or a.ydeg_num() < deg(B, "y"):
        return a
    _, R, s = _pdivmod(a.num, B, want_quotient=False)
    return RatFunc(R, a.den * s, a.scalar)


def ydivmod(a: RatFunc, B: RatFunc) -> tuple[RatFunc, RatFunc]:
    """Euclidean division in F[y]."""
    if not (a.is_ypoly() and B.is_ypoly()):
        raise ValueError("ydivmod expects elements of F[y]")
    Qt, R, s = _pdivmod(a.num, B.num)
    # s * a.num = Qt * B.num + R
    q = RatFunc(Qt, a.den * s, a.scalar) / RatFunc(ONE, B.den, B.scalar)
    r = RatFunc(R, a.den * s, a.scalar)
    return q, r


def yinv_mod(a: RatFunc, B: MPoly) -> RatFunc:
    """Inverse of the F[y] element ``a`` modulo ``B``; raises NoInverse."""
    if a.is_zero():
        raise NoInverse("zero is not invertible")
    if deg(B, "y") <= 0:
        raise NoInverse("modulus has no positive y-degree")
    base = yrem(a, B)
    if base.is_zero():
        raise NoInverse("not coprime")
    N = base.num
    # invariant: r_i == t_i * N (mod B), up to y-free factors tracked exactly
    r0, t0 = B, ZERO
    r1, t1 = N, ONE
    while deg(r1, "y") > 0:
        Qt, Rm, s = _pdivmod(r0, r1)
        if Rm.is_zero():
            raise NoInverse("not coprime")
        t2 = s * t0 - Qt * t1
        _, (Rm, t2) = ycontent_reduce(Rm, t2)
        r0, t0, r1, t1 = r1, t1, Rm, t2
    # r1 is y-free: N^{-1} = t1 / r1
    inv_n = RatFunc(t1, r1)
    res = yrem(inv_n, B)
    # base = base.scalar * N / base.den
    return res * RatFunc(base.den).__truediv__(RatFunc.const(base.scalar))


def as_ypoly_num(a: RatFunc) -> MPoly:
    """The y-primitive polynomial associated with a nonzero F[y] element."""
    return yprimitive(a.num)[1]


def ycoeffs(a: RatFunc) -> dict[int, RatFunc]:
    """Laurent coefficients in y of an element of F[y, 1/y].

    The denominator may only carry a power of y besides y-free factors.
    """
    if a.is_zero():
        return {}
    dcs = coeffs_in(a.den, "y")
    if len(dcs) != 1:
        raise ValueError("not a Laurent polynomial in y")
    (shift, dc), = dcs.items()
    base = RatFunc(ONE, dc, a.scalar)
    return {e - shift: RatFunc(c) * base for e, c in coeffs_in(a.num, "y").items()}


def from_ycoeffs(cs: dict[int, RatFunc]) -> RatFunc:
    total = RatFunc.const(0)
    for e, c in cs.items():
        if c.is_zero():
            continue
        mono = RatFunc(Y ** e) if e >= 0 else RatFunc(ONE, Y ** (-e))
        total = total + c * mono
    return total


def ymonomial(e: int) -> RatFunc:
    return RatFunc(Y ** e) if e >= 0 else RatFunc(ONE, Y ** (-e))


def strip_factor(p: MPoly, t: MPoly) -> tuple[MPoly, int]:
    """Remove every power of ``t`` from ``p``; returns (cofactor, multiplicity)."""
    k = 0
    while True:
        qq, r = divmod(p, t)
        if not r.is_zero():
            return p, k
        # divmod is multivariate division; confirm exactness
        if qq * t != p:
            return p, k
        p = qq
        k += 1


def pf_numerator(Xv: RatFunc, T: MPoly) -> RatFunc:
    """Partial-fraction numerator of ``Xv`` at the coprime block ``T``.

    ``Xv = Yn / T + (rest without poles at the factors of T)`` with
    ``deg_y Yn < deg_y T``; returns ``Yn``.  ``T`` must be a power of an
    irreducible (or any polynomial coprime with the cofactor of the
    denominator of ``Xv``).
    """
    if Xv.is_zero():
        return Xv
    _, dpp = yprimitive(Xv.den) if deg(Xv.den, "y") > 0 else (None, ONE)
    g = ygcd(dpp, T)
    if g.is_one():
        return RatFunc.const(0)
    M = dpp
    while True:
        g = ygcd(M, T)
        if g.is_one():
            break
        M = M / g
    N = Xv * RatFunc(T) * RatFunc(M)
    if not N.is_ypoly():
        raise ValueError("denominator does not divide T * cofactor")
    return yrem(yrem(N, T) * yinv_mod(RatFunc(M), T), T)


def poly_lcm(polys: Sequence[MPoly]) -> MPoly:
    out = ONE
    for p in polys:
        if p.is_one():
            continue
        out = out * (p / out.gcd(p))
    return normalize(out)


# ----------------------------------------------------------------------------
# fraction-free linear algebra over F

FracMatrix = list  # list of rows, each a list of RatFunc free of y


def clear_row(row: Sequence[RatFunc]) -> list[MPoly]:
    """Scale a row of RatFuncs by a common nonzero factor to polynomials."""
    dens = [e.den for e in row if not e.is_zero()]
    L = poly_lcm(dens) if dens else ONE
    sden = 1
    for e in row:
        if not e.is_zero():
            sden = sden * e.scalar.denominator // _igcd(sden, e.scalar.denominator)
    out = []
    for e in row:
        if e.is_zero():
            out.append(ZERO)
        else:
            v = e * RatFunc(L) * sden
            if not v.is_poly():
                raise AssertionError("row clearing failed")
            out.append(v.num * v.scalar.numerator)
    return out


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def bareiss_echelon(A: list[list[MPoly]]) -> tuple[list[list[MPoly]], list[int]]:
    """Fraction-free row echelon form; returns (matrix, pivot columns)."""
    A = [list(r) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    prev = ONE
    r = 0
    pivots = []
    for c in range(n):
        if r >= m:
            break
        piv = None
        for i in range(r, m):
            if not A[i][c].is_zero():
                if piv is None or len(A[i][c]) < len(A[piv][c]):
                    piv = i
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            for j in range(c + 1, n):
                A[i][j] = (p * A[i][j] - a * A[r][j]) / prev
            A[i][c] = ZERO
        # rows above r keep their entries; only rows below are eliminated
        prev = p
        pivots.append(c)
        r += 1
    return A, pivots


def normalize_vector(vec: Sequence[RatFunc], lead: str = "first") -> list[MPoly]:
    """Clear denominators and content, then fix the sign so that the first
    (``lead="first"``) or last (``lead="last"``) nonzero entry has positive
    leading coefficient."""
    polys = clear_row(vec)
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        return polys
    g = normalize(_fold(lambda a, b: a.gcd(b), nz))
    polys = [p if p.is_zero() else p / g for p in polys]
    pick = next(p for p in (polys if lead == "first" else reversed(polys)) if not p.is_zero())
    if pick.leading_coefficient() < 0:
        polys = [-p for p in polys]
    return polys


def nullspace(M: FracMatrix) -> list[list[MPoly]]:
    """Basis of the right nullspace of ``M`` over F by fraction-free elimination.

    Each vector has polynomial, content-free entries with the first nonzero
    entry unit-normalized.
    """
    if not M:
        return []
    n = len(M[0])
    A = [clear_row(row) for row in M]
    E, pivots = bareiss_echelon(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x: list[RatFunc] = [RatFunc.const(0)] * n
        x[f] = RatFunc.const(1)
        for k in reversed(range(len(pivots))):
            pc = pivots[k]
            acc = RatFunc.const(0)
            for j in range(pc + 1, n):
                if not E[k][j].is_zero() and not x[j].is_zero():
                    acc = acc + RatFunc(E[k][j]) * x[j]
            x[pc] = -acc / RatFunc(E[k][pc])
        basis.append(normalize_vector(x, "first"))
    return basis


def rank(M: FracMatrix) -> int:
    if not M:
        return 0
    return len(bareiss_echelon([clear_row(r) for r in M])[1])


def rank_at_point(M: FracMatrix, **values) -> int | None:
    """Rank of ``M`` with x and q specialized; a lower bound on its rank over F.

    Returns None when some denominator vanishes at the point.
    """
    if not M:
        return 0
    try:
        rows = [[e.evaluate(**values) for e in row] for row in M]
    except ZeroDivisionError:
        return None
    flat = [flint.fmpq(v.numerator, v.denominator) for row in rows for v in row]
    return flint.fmpq_mat(len(rows), len(rows[0]), flat).rank()


def mat_vec(M: FracMatrix, v: Sequence) -> list[RatFunc]:
    out = []
    for row in M:
        acc = RatFunc.const(0)
        for a, b in zip(row, v):
            acc = acc + a * as_ratfunc(b)
        out.append(acc)
    return out

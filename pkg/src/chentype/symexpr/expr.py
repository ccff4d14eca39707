"""Expression trees with delta kept atomic.

Trees are what users write (and what formulas are stated in); every
algebraic decision goes through :func:`canonicalize`.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from ..errors import DivisionNearZero, NonRationalStructure
from .canon import CanonForm, ONE_FORM, ZERO
from .symbols import Symbol, exponents, symbol_for_slot


def _frac(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"expressions take exact constants, got {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, type(mpq(0))):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact constant: {x!r}")


def as_expr(x) -> "Expr":
    if isinstance(x, Expr):
        return x
    if isinstance(x, CanonForm):
        return x.to_expr()
    return Const(_frac(x))


class Expr:
    __slots__ = ()

    # arithmetic builds trees, except with CanonForms which win the coercion
    def __add__(self, other):
        if isinstance(other, CanonForm):
            return canonicalize(self) + other
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, CanonForm):
            return other + canonicalize(self)
        return add(other, self)

    def __sub__(self, other):
        if isinstance(other, CanonForm):
            return canonicalize(self) - other
        return add(self, mul(-1, other))

    def __rsub__(self, other):
        if isinstance(other, CanonForm):
            return other - canonicalize(self)
        return add(other, mul(-1, self))

    def __mul__(self, other):
        if isinstance(other, CanonForm):
            return canonicalize(self) * other
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, CanonForm):
            return other * canonicalize(self)
        return mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, CanonForm):
            return canonicalize(self) / other
        return mul(self, power(other, -1))

    def __rtruediv__(self, other):
        if isinstance(other, CanonForm):
            return other / canonicalize(self)
        return mul(other, power(self, -1))

    def __neg__(self):
        return mul(-1, self)

    def __pow__(self, n):
        return power(self, n)

    def canonical(self) -> CanonForm:
        return canonicalize(self)

    def __repr__(self):
        return f"Expr({self})"


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = _frac(value)

    def diff_phi(self):
        return ZERO_E

    diff_u = diff_phi

    def evaluate(self, profile):
        return float(self.value)

    def magnitude(self, profile):
        return abs(float(self.value))

    def __str__(self):
        return str(self.value)

    def __eq__(self, other):
        return isinstance(other, Const) and other.value == self.value

    def __hash__(self):
        return hash(("c", self.value))


class Sym(Expr):
    __slots__ = ("symbol",)

    def __init__(self, symbol: Symbol):
        self.symbol = symbol

    def diff_phi(self):
        k = self.symbol.kind
        if k == "cos_phi":
            return -SIN_PHI
        if k == "sin_phi":
            return COS_PHI
        if k == "delta":
            return R * KAPPA * SIN_PHI
        return ZERO_E

    def diff_u(self):
        k = self.symbol.kind
        if k == "u":
            return ONE_E
        if k == "cos_u":
            return -SIN_U
        if k == "sin_u":
            return COS_U
        if k == "delta":
            return -(R * kappa_d(1) * COS_PHI)
        if k in ("kappa", "tau"):
            return Sym(Symbol(k, self.symbol.order + 1))
        return ZERO_E

    def evaluate(self, profile):
        return profile.value(self.symbol)

    def magnitude(self, profile):
        return abs(self.evaluate(profile))

    def __str__(self):
        return self.symbol.name

    def __eq__(self, other):
        return isinstance(other, Sym) and other.symbol == self.symbol

    def __hash__(self):
        return hash(("s", self.symbol))


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(terms)

    def diff_phi(self):
        return add(*(t.diff_phi() for t in self.terms))

    def diff_u(self):
        return add(*(t.diff_u() for t in self.terms))

    def evaluate(self, profile):
        return sum(t.evaluate(profile) for t in self.terms)

    def magnitude(self, profile):
        return sum(t.magnitude(profile) for t in self.terms)

    def __str__(self):
        out = str(self.terms[0])
        for t in self.terms[1:]:
            s = str(t)
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __eq__(self, other):
        return isinstance(other, Add) and other.terms == self.terms

    def __hash__(self):
        return hash(("+",) + self.terms)


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(factors)

    def diff_phi(self):
        return self._diff(lambda f: f.diff_phi())

    def diff_u(self):
        return self._diff(lambda f: f.diff_u())

    def _diff(self, d):
        parts = []
        for i, f in enumerate(self.factors):
            df = d(f)
            if isinstance(df, Const) and df.value == 0:
                continue
            parts.append(mul(*self.factors[:i], df, *self.factors[i + 1 :]))
        return add(*parts)

    def evaluate(self, profile):
        out = 1.0
        for f in self.factors:
            out *= f.evaluate(profile)
        return out

    def magnitude(self, profile):
        out = 1.0
        for f in self.factors:
            out *= f.magnitude(profile)
        return out

    def __str__(self):
        parts = []
        for f in self.factors:
            s = str(f)
            if isinstance(f, Add):
                s = f"({s})"
            parts.append(s)
        if parts[0] == "-1" and len(parts) > 1:
            return "-" + "*".join(parts[1:])
        return "*".join(parts)

    def __eq__(self, other):
        return isinstance(other, Mul) and other.factors == self.factors

    def __hash__(self):
        return hash(("*",) + self.factors)


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base: Expr, exp: int):
        if not isinstance(exp, int):
            raise NonRationalStructure("only integer powers are supported")
        self.base = base
        self.exp = exp

    def diff_phi(self):
        return mul(self.exp, power(self.base, self.exp - 1), self.base.diff_phi())

    def diff_u(self):
        return mul(self.exp, power(self.base, self.exp - 1), self.base.diff_u())

    def evaluate(self, profile):
        b = self.base.evaluate(profile)
        if self.exp < 0 and abs(b) < 1e-300:
            raise DivisionNearZero(f"{self.base} evaluates to {b:g}")
        return b**self.exp

    def magnitude(self, profile):
        b = abs(self.base.evaluate(profile))
        if self.exp < 0 and b < 1e-300:
            raise DivisionNearZero(f"{self.base} evaluates to {b:g}")
        return self.base.magnitude(profile) ** self.exp if self.exp > 0 else b**self.exp

    def __str__(self):
        b = str(self.base)
        if not isinstance(self.base, Sym):
            b = f"({b})"
        return f"{b}^{self.exp}" if self.exp >= 0 else f"{b}^({self.exp})"

    def __eq__(self, other):
        return isinstance(other, Pow) and other.base == self.base and other.exp == self.exp

    def __hash__(self):
        return hash(("^", self.base, self.exp))


# ------------------------------------------------------------ smart builders


def add(*terms) -> Expr:
    flat = []
    const = Fraction(0)
    for t in terms:
        t = as_expr(t)
        if isinstance(t, Add):
            items = t.terms
        else:
            items = (t,)
        for x in items:
            if isinstance(x, Const):
                const += x.value
            else:
                flat.append(x)
    if const:
        flat.append(Const(const))
    if not flat:
        return ZERO_E
    if len(flat) == 1:
        return flat[0]
    return Add(flat)


def mul(*factors) -> Expr:
    flat = []
    const = Fraction(1)
    for f in factors:
        f = as_expr(f)
        items = f.factors if isinstance(f, Mul) else (f,)
        for x in items:
            if isinstance(x, Const):
                const *= x.value
            else:
                flat.append(x)
    if const == 0:
        return ZERO_E
    if const != 1 or not flat:
        flat.insert(0, Const(const))
    if len(flat) == 1:
        return flat[0]
    return Mul(flat)


def power(base, n: int) -> Expr:
    if not isinstance(n, int) or isinstance(n, bool):
        raise NonRationalStructure(f"fractional or non-integer power {n!r}")
    base = as_expr(base)
    if n == 0:
        return ONE_E
    if n == 1:
        return base
    if isinstance(base, Const):
        if base.value == 0 and n < 0:
            raise ZeroDivisionError("zero to a negative power")
        return Const(base.value**n)
    if isinstance(base, Pow):
        return power(base.base, base.exp * n)
    return Pow(base, n)


# ------------------------------------------------------------ canonicalization


def canonicalize(e) -> CanonForm:
    """Canonical form of an expression; equal forms iff the difference vanishes."""
    if isinstance(e, CanonForm):
        return e
    memo: dict[int, CanonForm] = {}

    def walk(x: Expr) -> CanonForm:
        key = id(x)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(x, Const):
            out = CanonForm.const(mpq(x.value.numerator, x.value.denominator))
        elif isinstance(x, Sym):
            out = CanonForm.symbol(x.symbol)
        elif isinstance(x, Add):
            out = ZERO
            for t in x.terms:
                out = out + walk(t)
        elif isinstance(x, Mul):
            out = ONE_FORM
            for f in x.factors:
                out = out * walk(f)
        elif isinstance(x, Pow):
            out = walk(x.base) ** x.exp
        else:
            raise TypeError(f"not an expression: {x!r}")
        memo[key] = out
        return out

    return walk(as_expr(e))


def canon_to_expr(form: CanonForm) -> Expr:
    """Re-read a canonical form as a tree (delta atomic in the denominator)."""
    terms = []
    for m in sorted(form.num):
        v = form.num[m]
        factors = [Const(Fraction(int(v.numerator), int(v.denominator)))]
        for slot, e in sorted(exponents(m).items()):
            factors.append(power(Sym(symbol_for_slot(slot)), e))
        terms.append(mul(*factors))
    num = add(*terms)
    a, b, k, d = form.den
    den = [power(DELTA, -a), power(COS_PHI, -b), power(KAPPA, -k), power(R, -d)]
    return mul(num, *den)


def kappa_d(order: int) -> Expr:
    return Sym(Symbol("kappa", order))


def tau_d(order: int) -> Expr:
    return Sym(Symbol("tau", order))


ZERO_E = Const(0)
ONE_E = Const(1)
COS_PHI = Sym(Symbol("cos_phi"))
SIN_PHI = Sym(Symbol("sin_phi"))
DELTA = Sym(Symbol("delta"))
R = Sym(Symbol("r"))
U = Sym(Symbol("u"))
COS_U = Sym(Symbol("cos_u"))
SIN_U = Sym(Symbol("sin_u"))
KAPPA = kappa_d(0)
TAU = tau_d(0)
BETA = kappa_d(1) * COS_PHI + KAPPA * TAU * SIN_PHI

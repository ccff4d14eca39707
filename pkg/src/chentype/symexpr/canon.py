"""Canonical rational forms: a reduced polynomial over a monomial denominator.

A CanonForm is ``num / (delta^a cos(phi)^b kappa^k r^d)`` where ``num`` is a
sparse polynomial (packed-int monomial -> mpq coefficient) in which delta is
expanded as ``1 - r*kappa*cos(phi)``, ``sin(phi)^2`` and ``sin(u)^2`` are
eliminated, and no factor of delta, cos(phi), kappa or r is shared with the
denominator.  The representation is unique, so structural equality is
mathematical equality.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from gmpy2 import mpq

from ..errors import DivisionNearZero, ExpressionBudgetExceeded, NonRationalStructure
from .symbols import (
    BITS,
    COS,
    COSU,
    KAPPA,
    KAPPA1,
    MASK,
    R,
    SIN,
    SINU,
    SLOT_COS,
    SLOT_COSU,
    SLOT_R,
    SLOT_SIN,
    SLOT_SINU,
    SLOT_U,
    Symbol,
    exponent,
    exponents,
    slot_name,
    ufunc_slot,
    unit,
)

SLOT_KAPPA = ufunc_slot("kappa", 0)
_SIN_SHIFT = BITS * SLOT_SIN
_SINU_SHIFT = BITS * SLOT_SINU
# monomials touching any slot from tau (slot 7) upward involve tau or a
# derivative of kappa
_RING_SHIFT = BITS * (SLOT_KAPPA + 1)

ONE = mpq(1)

Poly = dict  # packed monomial -> mpq

# denominator tuple positions
_DEN_DELTA, _DEN_COS, _DEN_KAPPA, _DEN_R = range(4)
DEN_ATOMS = ("delta", "cos_phi", "kappa", "r")


# ---------------------------------------------------------------- polynomials


def _reduce(p: Poly) -> Poly:
    """Apply sin^2 -> 1 - cos^2 (for phi and u) until no monomial needs it."""
    bad = [m for m in p if (m >> _SIN_SHIFT) & MASK >= 2 or (m >> _SINU_SHIFT) & MASK >= 2]
    while bad:
        for m in bad:
            v = p.pop(m, None)
            if v is None:
                continue
            if (m >> _SIN_SHIFT) & MASK >= 2:
                base = m - 2 * SIN
                other = base + 2 * COS
            else:
                base = m - 2 * SINU
                other = base + 2 * COSU
            p[base] = p.get(base, 0) + v
            p[other] = p.get(other, 0) - v
        bad = [m for m in p if (m >> _SIN_SHIFT) & MASK >= 2 or (m >> _SINU_SHIFT) & MASK >= 2]
    return {m: v for m, v in p.items() if v}


def p_add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    get = out.get
    if sign == 1:
        for m, v in b.items():
            out[m] = get(m, 0) + v
    else:
        for m, v in b.items():
            out[m] = get(m, 0) - v
    return {m: v for m, v in out.items() if v}


def p_scale(a: Poly, q) -> Poly:
    if not q:
        return {}
    return {m: v * q for m, v in a.items()}


def p_shift(a: Poly, mono: int) -> Poly:
    if not mono:
        return a
    return {m + mono: v for m, v in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((m2, c2),) = b.items()
        out = {m + m2: v * c2 for m, v in a.items()}
    else:
        out = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                out[k] = get(k, 0) + c1 * c2
    return _reduce(out)


@lru_cache(maxsize=None)
def _delta_pow_items(j: int) -> tuple:
    # (1 - r kappa cos)^j
    rkc = R + KAPPA + COS
    return tuple((i * rkc, mpq((-1) ** i * comb(j, i))) for i in range(j + 1))


def delta_pow(j: int) -> Poly:
    return dict(_delta_pow_items(j))


def p_diff_phi(p: Poly) -> Poly:
    out = {}
    get = out.get
    for m, v in p.items():
        ec = m & MASK
        es = (m >> _SIN_SHIFT) & MASK
        if ec:
            k = m - COS + SIN
            out[k] = get(k, 0) - ec * v
        if es:
            k = m - SIN + COS
            out[k] = get(k, 0) + es * v
    return _reduce(out)


def p_diff_u(p: Poly) -> Poly:
    out = {}
    get = out.get
    for m, v in p.items():
        rest = m >> (BITS * SLOT_U)
        if not rest:
            continue
        slot = SLOT_U
        while rest:
            e = rest & MASK
            if e:
                u1 = unit(slot)
                if slot == SLOT_U:
                    k = m - u1
                    out[k] = get(k, 0) + e * v
                elif slot == SLOT_COSU:
                    k = m - u1 + SINU
                    out[k] = get(k, 0) - e * v
                elif slot == SLOT_SINU:
                    k = m - u1 + COSU
                    out[k] = get(k, 0) + e * v
                elif slot >= SLOT_KAPPA:
                    k = m - u1 + unit(slot + 2)
                    out[k] = get(k, 0) + e * v
            rest >>= BITS
            slot += 1
    return _reduce(out)


def _div_delta(num: Poly) -> Poly | None:
    """Exact quotient num / (1 - r kappa cos), or None if not divisible.

    Synthetic division in cos(phi): with A_j the cos^j coefficient,
    Q_j = A_j + r kappa Q_{j-1}, and divisibility requires the top step to
    cancel exactly.
    """
    groups: dict[int, dict] = {}
    for m, v in num.items():
        j = m & MASK
        g = groups.get(j)
        if g is None:
            groups[j] = g = {}
        g[m - j] = v
    top = max(groups)
    if top == 0:
        return None
    rk = R + KAPPA
    quotient = {}
    prev: dict = {}
    for j in range(top + 1):
        cur = dict(groups.get(j, ()))
        get = cur.get
        for m, v in prev.items():
            k = m + rk
            cur[k] = get(k, 0) + v
        cur = {m: v for m, v in cur.items() if v}
        if j == top:
            return None if cur else quotient
        for m, v in cur.items():
            quotient[m + j * COS] = v
        prev = cur
    return quotient  # pragma: no cover


def _min_exp(num: Poly, slot: int, cap: int) -> int:
    best = cap
    shift = BITS * slot
    for m in num:
        e = (m >> shift) & MASK
        if e < best:
            best = e
            if not best:
                break
    return best


def _times_den(num: Poly, den: tuple) -> Poly:
    a, b, k, d = den
    if a:
        num = p_mul(num, delta_pow(a))
    return p_shift(num, b * COS + k * KAPPA + d * R)


# ---------------------------------------------------------------- CanonForm


class CanonForm:
    """Reduced rational form with a monomial denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: tuple = (0, 0, 0, 0), _normalized: bool = False):
        if _normalized:
            self.num = num
            self.den = den
        else:
            self.num, self.den = _normalize(dict(num), tuple(den))
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, q) -> "CanonForm":
        q = mpq(q)
        return cls({0: q} if q else {}, (0, 0, 0, 0), _normalized=True)

    @classmethod
    def symbol(cls, sym: Symbol) -> "CanonForm":
        if sym.kind == "delta":
            return cls(delta_pow(1), _normalized=True)
        return cls({unit(sym.slot): ONE}, _normalized=True)

    # basic queries ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    def __len__(self):
        return len(self.num)

    def pole_order(self, atom: str) -> int:
        if atom not in DEN_ATOMS:
            raise ValueError(f"pole order is tracked for {DEN_ATOMS}, not {atom!r}")
        return self.den[DEN_ATOMS.index(atom)] if self.num else 0

    def is_polynomial(self) -> bool:
        return self.den == (0, 0, 0, 0)

    def max_slot(self) -> int:
        top = max((m.bit_length() for m in self.num), default=0)
        return (top + BITS - 1) // BITS

    def check_budget(self, budget: int | None):
        if budget is not None and len(self.num) > budget:
            raise ExpressionBudgetExceeded(len(self.num), budget)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        L = tuple(max(x, y) for x, y in zip(self.den, other.den))
        n1 = _times_den(self.num, tuple(x - y for x, y in zip(L, self.den)))
        n2 = _times_den(other.num, tuple(x - y for x, y in zip(L, other.den)))
        return CanonForm(p_add(n1, n2), L)

    __radd__ = __add__

    def __neg__(self):
        return CanonForm({m: -v for m, v in self.num.items()}, self.den, _normalized=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if other.den == (0, 0, 0, 0) and len(other.num) == 1 and 0 in other.num:
            return self.scale(other.num[0])
        den = tuple(x + y for x, y in zip(self.den, other.den))
        return CanonForm(p_mul(self.num, other.num), den)

    __rmul__ = __mul__

    def scale(self, q) -> "CanonForm":
        q = mpq(q)
        if not q:
            return ZERO
        return CanonForm({m: v * q for m, v in self.num.items()}, self.den, _normalized=True)

    def inverse(self) -> "CanonForm":
        if not self.num:
            raise ZeroDivisionError("inverse of zero form")
        num = self.num
        extra = 0
        while True:
            q = _div_delta(num)
            if q is None:
                break
            num = q
            extra += 1
        if len(num) != 1:
            raise NonRationalStructure(f"cannot invert non-monomial {self}")
        ((m, v),) = num.items()
        ex = exponents(m)
        if set(ex) - {SLOT_COS, SLOT_KAPPA, SLOT_R}:
            raise NonRationalStructure(f"cannot place {self} in a monomial denominator")
        new_num = p_scale(_times_den({0: ONE}, self.den), 1 / v)
        den = (extra, ex.get(SLOT_COS, 0), ex.get(SLOT_KAPPA, 0), ex.get(SLOT_R, 0))
        return CanonForm(new_num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise NonRationalStructure("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE_FORM
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus -------------------------------------------------------------
    def diff_phi(self) -> "CanonForm":
        a, b, k, d = self.den
        n_phi = p_diff_phi(self.num)
        if not a and not b:
            return CanonForm(n_phi, self.den)
        ea, eb = int(a > 0), int(b > 0)
        term1 = p_shift(p_mul(n_phi, delta_pow(ea)) if ea else n_phi, eb * COS)
        # N * (a r kappa sin cos^eb - b sin delta^ea)
        factor: Poly = {}
        if a:
            factor[R + KAPPA + SIN + eb * COS] = mpq(a)
        if b:
            factor = p_add(factor, p_shift(p_scale(delta_pow(ea), mpq(b)), SIN), sign=-1)
        term2 = p_mul(self.num, factor)
        return CanonForm(p_add(term1, term2, sign=-1), (a + ea, b + eb, k, d))

    def diff_u(self) -> "CanonForm":
        a, b, k, d = self.den
        n_u = p_diff_u(self.num)
        if not a and not k:
            return CanonForm(n_u, self.den)
        ea, ek = int(a > 0), int(k > 0)
        term1 = p_shift(p_mul(n_u, delta_pow(ea)) if ea else n_u, ek * KAPPA)
        # N * (-a r kappa' cos kappa^ek + k kappa' delta^ea)
        factor: Poly = {}
        if a:
            factor[R + KAPPA1 + COS + ek * KAPPA] = mpq(-a)
        if k:
            factor = p_add(factor, p_shift(p_scale(delta_pow(ea), mpq(k)), KAPPA1))
        term2 = p_mul(self.num, factor)
        return CanonForm(p_add(term1, term2, sign=-1), (a + ea, b, k + ek, d))

    # specialisations ------------------------------------------------------
    def specialize_ring(self) -> "CanonForm":
        """Set tau and every derivative of kappa to zero (constant curvature, planar spine)."""
        num = {m: v for m, v in self.num.items() if not m >> _RING_SHIFT}
        if len(num) == len(self.num):
            return self
        return CanonForm(num, self.den)

    def leading_term(self, atom: str) -> "CanonForm":
        """Highest-order pole part in ``atom`` (delta or cos_phi), modulo lower orders."""
        order = self.pole_order(atom)
        if order == 0:
            return self
        if atom == "cos_phi":
            part = {m: v for m, v in self.num.items() if not m & MASK}
            return CanonForm(part, self.den)
        if atom == "delta":
            # restrict the numerator to delta = 0, i.e. cos = 1/(r kappa)
            top = max(m & MASK for m in self.num)
            part: Poly = {}
            rk = R + KAPPA
            for m, v in self.num.items():
                j = m & MASK
                key = m - j + (top - j) * rk
                part[key] = part.get(key, 0) + v
            part = {m: v for m, v in part.items() if v}
            a, b, k, d = self.den
            return CanonForm(part, (a, b, k + top, d + top))
        raise ValueError(f"leading term is defined for delta and cos_phi, not {atom!r}")

    def substitute_constants(self, values: dict) -> "CanonForm":
        """Replace r and/or kappa by exact constants.

        The result stays symbolic in everything else.  Delta keeps its
        symbolic definition in the denominator, so the output is meant for
        display and evaluation, not for further canonical arithmetic.
        """
        slots = {}
        for name, q in values.items():
            slot = {"r": SLOT_R, "kappa": SLOT_KAPPA}[name]
            slots[slot] = mpq(q)
        num: Poly = {}
        for m, v in self.num.items():
            for slot, q in slots.items():
                e = exponent(m, slot)
                if e:
                    m -= e * unit(slot)
                    v = v * q**e
            num[m] = num.get(m, 0) + v
        num = {m: v for m, v in num.items() if v}
        a, b, k, d = self.den
        scale = ONE
        if SLOT_KAPPA in slots and k:
            scale /= slots[SLOT_KAPPA] ** k
            k = 0
        if SLOT_R in slots and d:
            scale /= slots[SLOT_R] ** d
            d = 0
        num = {m: v * scale for m, v in num.items()}
        return CanonForm(num, (a, b, k, d), _normalized=True)

    # evaluation -----------------------------------------------------------
    def evaluate(self, env, delta, one=1.0, coerce=float):
        """Evaluate with ``env[slot]`` values of any ring-like type.

        ``delta`` is the value of delta in the same type; used for the
        denominator only (the numerator has delta expanded).
        """
        powers: dict = {}

        def pw(slot, e):
            key = (slot, e)
            val = powers.get(key)
            if val is None:
                val = env[slot] if e == 1 else pw(slot, e - 1) * env[slot]
                powers[key] = val
            return val

        total = None
        for m in sorted(self.num):
            term = coerce(self.num[m])
            slot = 0
            rest = m
            while rest:
                e = rest & MASK
                if e:
                    term = term * pw(slot, e)
                rest >>= BITS
                slot += 1
            total = term if total is None else total + term
        if total is None:
            total = coerce(0) * one
        a, b, k, d = self.den
        den = one
        if a:
            den = den * delta**a
        if b:
            den = den * env[SLOT_COS] ** b
        if k:
            den = den * env[SLOT_KAPPA] ** k
        if d:
            den = den * env[SLOT_R] ** d
        if den is one:
            return total
        return total / den

    def eval(self, profile) -> float:
        from .profile import slot_env

        env = slot_env(profile, self.max_slot())
        delta = 1.0 - env[SLOT_R] * env[SLOT_KAPPA] * env[SLOT_COS]
        den = abs(delta) ** self.den[0] * abs(env[SLOT_COS]) ** self.den[1]
        den *= abs(env[SLOT_KAPPA]) ** self.den[2] * abs(env[SLOT_R]) ** self.den[3]
        if den < 1e-300:
            raise DivisionNearZero(f"denominator magnitude {den:g}")
        return self.evaluate(env, delta)

    # conversion & display -------------------------------------------------
    def to_expr(self):
        from .expr import canon_to_expr

        return canon_to_expr(self)

    def __eq__(self, other):
        if isinstance(other, CanonForm):
            return self.den == other.den and self.num == other.num
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, frozenset(self.num.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def numerator_str(self) -> str:
        return poly_str(self.num)

    def denominator_str(self) -> str:
        parts = []
        for name, e in zip(("delta", "cos(phi)", "kappa", "r"), self.den):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def factor_delta(self) -> tuple:
        """(j, q) with self = delta^j * q and q's numerator not divisible by delta."""
        j, num = 0, self.num
        while num:
            quot = _div_delta(num)
            if quot is None:
                break
            j, num = j + 1, quot
        return j, CanonForm(num, self.den, _normalized=True)

    def factored_str(self) -> str:
        """String with the polynomial factor delta^j kept symbolic."""
        j, q = self.factor_delta()
        if not j:
            return str(self)
        head = "delta" if j == 1 else f"delta^{j}"
        body = str(q)
        if body == "1":
            return head
        return f"{head}*({body})" if ("+" in body or "-" in body) else f"{head}*{body}"

    def __str__(self):
        num = self.numerator_str()
        den = self.denominator_str()
        if not den:
            return num
        if len(self.num) > 1 or "/" in num:
            num = f"({num})"
        if "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"CanonForm({self})"


def _coerce(x):
    if isinstance(x, CanonForm):
        return x
    if isinstance(x, (int, type(ONE))) and not isinstance(x, bool):
        return CanonForm.const(x)
    from fractions import Fraction

    if isinstance(x, Fraction):
        return CanonForm.const(mpq(x.numerator, x.denominator))
    from .expr import Expr, canonicalize

    if isinstance(x, Expr):
        return canonicalize(x)
    return NotImplemented


def _normalize(num: Poly, den: tuple):
    num = {m: v for m, v in num.items() if v}
    if not num:
        return {}, (0, 0, 0, 0)
    a, b, k, d = den
    while a:
        q = _div_delta(num)
        if q is None:
            break
        num = q
        a -= 1
    shift = 0
    if b:
        t = _min_exp(num, SLOT_COS, b)
        b -= t
        shift += t * COS
    if k:
        t = _min_exp(num, SLOT_KAPPA, k)
        k -= t
        shift += t * KAPPA
    if d:
        t = _min_exp(num, SLOT_R, d)
        d -= t
        shift += t * R
    if shift:
        num = {m - shift: v for m, v in num.items()}
    return num, (a, b, k, d)


def _coef_str(v) -> str:
    return str(v)


def mono_str(m: int) -> str:
    parts = []
    for slot, e in sorted(exponents(m).items()):
        name = slot_name(slot)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _term_key(m: int):
    ex = exponents(m)
    return (sum(ex.values()), sorted(ex.items()))


def poly_str(num: Poly) -> str:
    if not num:
        return "0"
    out = []
    for m in sorted(num, key=_term_key):
        v = num[m]
        mono = mono_str(m)
        neg = v < 0
        av = -v if neg else v
        if not mono:
            body = _coef_str(av)
        elif av == 1:
            body = mono
        else:
            body = f"{_coef_str(av)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


ZERO = CanonForm({}, _normalized=True)
ONE_FORM = CanonForm({0: ONE}, _normalized=True)

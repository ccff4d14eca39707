"""Exact symbolic scalars in the chart variables (u, phi).

Two representations cooperate: :class:`Expr` trees keep delta atomic and are
what formulas are written in; :class:`CanonForm` is the reduced rational
normal form every equality, pole-order and leading-term decision uses.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import ConsistencyError
from .canon import CanonForm, DEN_ATOMS, ONE_FORM, ZERO
from .expr import (
    BETA,
    COS_PHI,
    COS_U,
    DELTA,
    KAPPA,
    ONE_E,
    R,
    SIN_PHI,
    SIN_U,
    TAU,
    U,
    ZERO_E,
    Add,
    Const,
    Expr,
    Mul,
    Pow,
    Sym,
    add,
    as_expr,
    canonicalize,
    kappa_d,
    mul,
    power,
    tau_d,
)
from .profile import (
    NumericProfile,
    Sinusoid,
    TaylorFunction,
    UFunction,
    constant,
    default_profile,
    random_profile,
    ring_profile,
    sample_phi,
)
from .symbols import Symbol

ZERO_TOL = 1e-9
ZERO_SAMPLES = 20
_ZERO_SEED = 20231


def diff_phi(e):
    """Partial derivative in phi (numbers map to 0)."""
    if isinstance(e, (int,)) or hasattr(e, "numerator") and not hasattr(e, "diff_phi"):
        return 0
    return e.diff_phi()


def diff_u(e):
    """Partial derivative in u; kappa^(i) -> kappa^(i+1), tau likewise."""
    if isinstance(e, (int,)) or hasattr(e, "numerator") and not hasattr(e, "diff_u"):
        return 0
    return e.diff_u()


def eval_expr(e, profile: NumericProfile) -> float:
    """Float value of an Expr or CanonForm at a profile."""
    if isinstance(e, CanonForm):
        return e.eval(profile)
    return as_expr(e).evaluate(profile)


@lru_cache(maxsize=1)
def zero_test_profiles() -> tuple:
    rng = np.random.default_rng(_ZERO_SEED)
    return tuple(random_profile(rng) for _ in range(ZERO_SAMPLES))


def is_zero(e, check: bool = True) -> bool:
    """Canonical zero test, cross-validated numerically for expression trees.

    A disagreement between the canonical verdict and evaluation at the
    fixed random profiles raises :class:`ConsistencyError`.
    """
    form = canonicalize(e)
    verdict = form.is_zero
    if check and isinstance(e, Expr):
        small = []
        for p in zero_test_profiles():
            value = e.evaluate(p)
            scale = e.magnitude(p)
            small.append(abs(value) <= ZERO_TOL * max(scale, 1e-300))
        if verdict and not all(small):
            raise ConsistencyError(f"canonical zero but numerically nonzero: {e}")
        if not verdict and all(small):
            raise ConsistencyError(f"canonically nonzero but numerically zero: {e}")
    return verdict


def _atom_name(atom) -> str:
    if isinstance(atom, Symbol):
        atom = atom.kind
    if atom not in ("delta", "cos_phi"):
        raise ValueError("pole bookkeeping is defined for delta and cos_phi")
    return atom


def pole_order(e, atom) -> int:
    """Exponent of ``atom`` in the canonical denominator."""
    return canonicalize(e).pole_order(_atom_name(atom))


def leading_term(e, atom) -> CanonForm:
    """Top-order pole part in ``atom``; defined modulo lower-order poles."""
    return canonicalize(e).leading_term(_atom_name(atom))


def same_leading(a, b, atom) -> bool:
    """True when a and b have the same pole order in atom and agree at that order."""
    atom = _atom_name(atom)
    fa, fb = canonicalize(a), canonicalize(b)
    order = fa.pole_order(atom)
    if order != fb.pole_order(atom):
        return False
    if order == 0:
        return (fa - fb).is_zero
    return (fa - fb).pole_order(atom) < order


__all__ = [
    "BETA", "COS_PHI", "COS_U", "DELTA", "KAPPA", "ONE_E", "R", "SIN_PHI", "SIN_U", "TAU", "U",
    "ZERO_E", "Add", "CanonForm", "Const", "DEN_ATOMS", "Expr", "Mul", "NumericProfile", "ONE_FORM",
    "Pow", "Sinusoid", "Sym", "Symbol", "TaylorFunction", "UFunction", "ZERO", "add", "as_expr",
    "canonicalize", "constant", "default_profile", "diff_phi", "diff_u", "eval_expr", "is_zero",
    "kappa_d", "leading_term", "mul", "pole_order", "power", "random_profile", "ring_profile",
    "same_leading", "sample_phi", "tau_d", "zero_test_profiles",
]

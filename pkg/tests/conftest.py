from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

import sympy_oracle as so
from chentype.symexpr import TAU, CanonForm, canonicalize, kappa_d, random_profile
from chentype.symexpr.expr import COS_PHI, DELTA, KAPPA, R, SIN_PHI

_c, _s, _k, _r, _d = (canonicalize(x) for x in (COS_PHI, SIN_PHI, KAPPA, R, DELTA))

ENGINE_ATOMS = {
    "c": _c,
    "s": _s,
    "kappa": _k,
    "tau": canonicalize(TAU),
    "kappa1": canonicalize(kappa_d(1)),
    "delta": _d,
    "r": _r,
    "inv_delta": _d.inverse(),
    "inv_kc": (_k * _c).inverse(),
}
ATOM_NAMES = sorted(ENGINE_ATOMS)


@st.composite
def scalar_pairs(draw, max_terms=3, max_factors=3):
    """Matching (engine CanonForm, sympy expression) built from the same atoms."""
    engine, ref = CanonForm.const(0), 0
    for _ in range(draw(st.integers(1, max_terms))):
        q = Fraction(draw(st.integers(-6, 6).filter(bool)), draw(st.integers(1, 4)))
        e_term, s_term = CanonForm.const(q), so.sp.Rational(q.numerator, q.denominator)
        for name in draw(st.lists(st.sampled_from(ATOM_NAMES), min_size=1, max_size=max_factors)):
            e_term = e_term * ENGINE_ATOMS[name]
            s_term = s_term * so.ATOMS[name]
        engine, ref = engine + e_term, ref + s_term
    return engine, ref


@pytest.fixture(scope="session")
def profiles():
    rng = np.random.default_rng(1234)
    return [random_profile(rng, min_abs_cos=0.1) for _ in range(6)]

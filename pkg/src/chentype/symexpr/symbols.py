"""Atoms of the expression language and their packed-monomial slots.

Monomials are stored as a single Python int holding one 16-bit exponent
field per slot.  Fixed slots come first; the derivative families
kappa^(i) and tau^(i) interleave after them and are unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass

BITS = 16
MASK = (1 << BITS) - 1

SLOT_COS = 0
SLOT_SIN = 1
SLOT_R = 2
SLOT_U = 3
SLOT_COSU = 4
SLOT_SINU = 5
_FIRST_UFUNC = 6

KINDS = ("cos_phi", "sin_phi", "delta", "r", "u", "cos_u", "sin_u", "kappa", "tau")
UFUNCS = ("kappa", "tau")

_FIXED_SLOTS = {
    "cos_phi": SLOT_COS,
    "sin_phi": SLOT_SIN,
    "r": SLOT_R,
    "u": SLOT_U,
    "cos_u": SLOT_COSU,
    "sin_u": SLOT_SINU,
}


def ufunc_slot(name: str, order: int) -> int:
    return _FIRST_UFUNC + 2 * order + (0 if name == "kappa" else 1)


def unit(slot: int) -> int:
    return 1 << (BITS * slot)


COS = unit(SLOT_COS)
SIN = unit(SLOT_SIN)
R = unit(SLOT_R)
COSU = unit(SLOT_COSU)
SINU = unit(SLOT_SINU)
KAPPA = unit(ufunc_slot("kappa", 0))
KAPPA1 = unit(ufunc_slot("kappa", 1))


@dataclass(frozen=True, order=True)
class Symbol:
    kind: str
    order: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.order < 0:
            raise ValueError("derivative order must be non-negative")
        if self.order and self.kind not in UFUNCS:
            raise ValueError(f"{self.kind} carries no derivative order")

    @property
    def slot(self) -> int | None:
        """Packed-monomial slot, None for delta (which is not a free variable)."""
        if self.kind in UFUNCS:
            return ufunc_slot(self.kind, self.order)
        return _FIXED_SLOTS.get(self.kind)

    @property
    def name(self) -> str:
        return slot_name(self.slot) if self.kind != "delta" else "delta"

    def __str__(self):
        return self.name


def symbol_for_slot(slot: int) -> Symbol:
    for kind, s in _FIXED_SLOTS.items():
        if s == slot:
            return Symbol(kind)
    k = slot - _FIRST_UFUNC
    return Symbol("kappa" if k % 2 == 0 else "tau", k // 2)


def slot_name(slot: int) -> str:
    fixed = {
        SLOT_COS: "cos(phi)",
        SLOT_SIN: "sin(phi)",
        SLOT_R: "r",
        SLOT_U: "u",
        SLOT_COSU: "cos(u)",
        SLOT_SINU: "sin(u)",
    }
    if slot in fixed:
        return fixed[slot]
    k = slot - _FIRST_UFUNC
    base = "kappa" if k % 2 == 0 else "tau"
    order = k // 2
    if order == 0:
        return base
    if order <= 3:
        return base + "'" * order
    return f"{base}^({order})"


def exponents(m: int) -> dict[int, int]:
    """Nonzero exponent fields of a packed monomial, keyed by slot."""
    out = {}
    slot = 0
    while m:
        e = m & MASK
        if e:
            out[slot] = e
        m >>= BITS
        slot += 1
    return out


def exponent(m: int, slot: int) -> int:
    return (m >> (BITS * slot)) & MASK


def pack(exps: dict[int, int]) -> int:
    m = 0
    for slot, e in exps.items():
        if e < 0 or e > MASK:
            raise OverflowError(f"exponent {e} out of range for slot {slot}")
        m += e << (BITS * slot)
    return m

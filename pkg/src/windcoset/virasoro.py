"""Unitary minimal models: central charges, Kac table, characters, and a
Gram-matrix rank oracle for the irreducible quotient of the Verma module."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .qseries import QSeries, euler_phi, invert


class OutOfKacTable(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MinimalModelLabel:
    m: int
    r: int
    s: int

    def __post_init__(self):
        if self.m < 3:
            raise OutOfKacTable(f"m = {self.m} is below the unitary series (m >= 3)")
        if not (1 <= self.r <= self.m - 1 and 1 <= self.s <= self.m):
            raise OutOfKacTable(
                f"(r, s) = ({self.r}, {self.s}) outside 1 <= r <= {self.m - 1}, 1 <= s <= {self.m}")

    @property
    def partner(self) -> "MinimalModelLabel":
        return MinimalModelLabel(self.m, self.m - self.r, self.m + 1 - self.s)

    def canonical(self) -> "MinimalModelLabel":
        return min(self, self.partner, key=lambda x: (x.r, x.s))

    @property
    def h(self) -> Fraction:
        return kac_dimension(self)

    @property
    def c(self) -> Fraction:
        return unitary_central_charge(self.m)


def unitary_central_charge(m: int) -> Fraction:
    if m < 3:
        raise ValueError("m must be at least 3")
    return 1 - Fraction(6, m * (m + 1))


def kac_dimension(label: MinimalModelLabel) -> Fraction:
    m, r, s = label.m, label.r, label.s
    return Fraction(((m + 1) * r - m * s) ** 2 - 1, 4 * m * (m + 1))


def kac_table(m: int) -> List[List[Fraction]]:
    """Rows r = 1..m-1, columns s = 1..m."""
    return [[kac_dimension(MinimalModelLabel(m, r, s)) for s in range(1, m + 1)]
            for r in range(1, m)]


def canonical_labels(m: int) -> List[MinimalModelLabel]:
    seen = set()
    out = []
    for r in range(1, m):
        for s in range(1, m + 1):
            lab = MinimalModelLabel(m, r, s).canonical()
            if lab not in seen:
                seen.add(lab)
                out.append(lab)
    return out


@lru_cache(maxsize=None)
def _character_terms(m: int, r: int, s: int, max_order: int) -> Tuple[int, ...]:
    """Coefficients of Tr q^{L(0)-h} through q^max_order."""
    four = 4 * m * (m + 1)
    h = kac_dimension(MinimalModelLabel(m, r, s))

    def N(x):
        return Fraction(x * x - 1, four)

    numer = [0] * (max_order + 1)
    period = 2 * m * (m + 1)
    # exponents grow quadratically in |t|; scan until both signs leave the window
    t = 0
    while True:
        hit = False
        for tt in ({t, -t} if t else {0}):
            for x, sign in (((period * tt + (m + 1) * r - m * s), 1),
                            ((period * tt + (m + 1) * r + m * s), -1)):
                e = N(x) - h
                assert e.denominator == 1
                e = int(e)
                if 0 <= e <= max_order:
                    numer[e] += sign
                    hit = True
                elif e < 0:
                    raise AssertionError("exponent below the highest weight")
        if not hit and t > 0:
            break
        t += 1
    inv_phi = invert(euler_phi(max_order))
    out = QSeries.from_coeffs(numer, trunc=max_order + 1) * inv_phi
    return tuple(out.coeffs[: max_order + 1])


def minimal_character(label: MinimalModelLabel, max_order: int, normalized: bool = False) -> QSeries:
    """Tr q^{L(0)} (or q^{L(0)-c/24}) on L(h(r,s), c(m)), known through h + max_order."""
    coeffs = _character_terms(label.m, label.r, label.s, max_order)
    offset = label.h - (label.c / 24 if normalized else 0)
    return QSeries.from_coeffs(coeffs, offset=offset, trunc=offset + max_order + 1)


# -- Gram matrix oracle ---------------------------------------------------------------
#
# A state is {partition tuple (a1 >= a2 >= ... >= 1): coefficient} meaning
# L_{-a1} L_{-a2} ... |h>.  Commutator [L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3-m) delta.

def _apply(mode: int, mono: Tuple[int, ...], c: Fraction, h: Fraction) -> Dict[Tuple[int, ...], Fraction]:
    """L_mode acting on one ordered monomial, returned in ordered form."""
    if not mono:
        if mode > 0:
            return {}
        if mode == 0:
            return {(): h}
        return {(-mode,): Fraction(1)}
    a = mono[0]
    rest = mono[1:]
    if mode == 0:
        return {mono: h + sum(mono)}
    if mode < 0 and -mode >= a:
        return {(-mode,) + mono: Fraction(1)}
    out: Dict[Tuple[int, ...], Fraction] = {}
    # L_mode L_{-a} rest = L_{-a} (L_mode rest) + [L_mode, L_{-a}] rest
    for tail, coef in _apply(mode, rest, c, h).items():
        for mono2, coef2 in _apply(-a, tail, c, h).items():
            out[mono2] = out.get(mono2, 0) + coef * coef2
    factor = Fraction(mode + a)   # (m - n) with n = -a
    new_mode = mode - a
    if factor:
        for mono2, coef2 in _apply(new_mode, rest, c, h).items():
            out[mono2] = out.get(mono2, 0) + factor * coef2
    if new_mode == 0:
        central = c / 12 * (mode ** 3 - mode)
        if central:
            out[rest] = out.get(rest, 0) + central
    return {k: v for k, v in out.items() if v}


def _partitions(n: int, largest: int | None = None) -> List[Tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for tail in _partitions(n - first, first):
            out.append((first,) + tail)
    return out


def gram_matrix(c, h, level: int) -> List[List[Fraction]]:
    c, h = Fraction(c), Fraction(h)
    basis = _partitions(level)
    mat = []
    for left in basis:
        row = []
        for right in basis:
            state = {right: Fraction(1)}
            # <h| (L_{-a1} ... L_{-ak})^dagger = <h| L_{ak} ... L_{a1}; apply L_{a1} first
            for a in left:
                new: Dict[Tuple[int, ...], Fraction] = {}
                for mono, coef in state.items():
                    for mono2, coef2 in _apply(a, mono, c, h).items():
                        new[mono2] = new.get(mono2, 0) + coef * coef2
                state = {k: v for k, v in new.items() if v}
            row.append(state.get((), Fraction(0)))
        mat.append(row)
    return mat


def rank(mat: List[List[Fraction]]) -> int:
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = rows[i][col] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def shapovalov_rank_oracle(c, h, level: int, cap: int = 6) -> int:
    """dim of the degree-``level`` layer of the irreducible L(h, c)."""
    if level > cap:
        raise ValueError(f"level {level} exceeds the oracle cap {cap}")
    if level == 0:
        return 1
    return rank(gram_matrix(c, h, level))

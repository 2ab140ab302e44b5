"""Affine weights, central charges, conformal dimensions and characters."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .qseries import QSeries, substitute_power
from .rootsys import RootSystem, Weight, build


class NotIntegrable(ValueError):
    pass


@dataclass(frozen=True)
class AffineWeight:
    """k*Lambda_0 + finite - grade*delta (grade measured down from the top)."""

    algebra: str
    finite: Weight
    level: int
    grade: Fraction = Fraction(0)

    @classmethod
    def from_labels(cls, algebra: str, labels: Sequence[int]) -> "AffineWeight":
        """From affine Dynkin labels (lambda_0, lambda_1, ..., lambda_r)."""
        rs = build(algebra)
        if len(labels) != rs.rank + 1:
            raise ValueError(f"{algebra} needs {rs.rank + 1} affine Dynkin labels, got {len(labels)}")
        level = sum(a * x for a, x in zip(rs.affine_comarks, labels))
        return cls(algebra, tuple(int(x) for x in labels[1:]), int(level))

    @property
    def root_system(self) -> RootSystem:
        return build(self.algebra)

    @property
    def labels(self) -> Tuple:
        """Affine Dynkin labels; lambda_0 = k - (lambda, theta)."""
        rs = self.root_system
        lam0 = self.level - rs.inner(self.finite, rs.highest_root)
        lam0 = int(lam0) if lam0.denominator == 1 else lam0
        return (lam0,) + tuple(self.finite)

    def level_sum(self) -> Fraction:
        rs = self.root_system
        return sum((a * Fraction(x) for a, x in zip(rs.affine_comarks, self.labels)), Fraction(0))

    def is_integrable(self) -> bool:
        labels = self.labels
        return all(isinstance(x, int) or Fraction(x).denominator == 1 for x in labels) \
            and all(x >= 0 for x in labels) and self.level_sum() == self.level

    def check_integrable(self) -> None:
        if self.is_integrable():
            return
        rs = self.root_system
        terms = " + ".join(f"{a}*{x}" for a, x in zip(rs.affine_comarks, self.labels))
        raise NotIntegrable(
            f"{self.algebra} weight with labels {self.labels} is not integrable at level "
            f"{self.level}: comark sum {terms} = {self.level_sum()} and all labels must be "
            f"non-negative integers")

    def inner(self, other: "AffineWeight") -> Fraction:
        """(k L0 + x - n delta, k' L0 + y - n' delta) with (L0,delta)=1, (delta,delta)=(L0,L0)=0."""
        rs = self.root_system
        return rs.inner(self.finite, other.finite) - self.level * Fraction(other.grade) \
            - other.level * Fraction(self.grade)

    def name(self) -> str:
        parts = []
        for i, x in enumerate(self.labels):
            if x:
                parts.append(f"L{i}" if x == 1 else f"{x}L{i}")
        return "+".join(parts) if parts else "0"

    def __str__(self):
        return f"{self.algebra}:{self.name()}"


_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*(?:L|Λ|Lambda|Lambda_)_?(\d+)\s*$")


def parse_weight(algebra: str, text: str) -> AffineWeight:
    """Parse ``"2L0"``, ``"L0+L6"``, ``"Λ1+Λ5"`` or ``"0,1,0"`` (affine labels)."""
    rs = build(algebra)
    text = text.strip()
    if re.fullmatch(r"\s*\d+\s*(,\s*\d+\s*)+", text):
        labels = [int(x) for x in text.split(",")]
        return AffineWeight.from_labels(algebra, labels)
    labels = [0] * (rs.rank + 1)
    for piece in text.replace(" ", "").split("+"):
        m = _TERM.match(piece)
        if not m:
            raise ValueError(f"cannot parse weight term {piece!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        idx = int(m.group(2))
        if idx > rs.rank:
            raise ValueError(f"{algebra} has no node {idx}")
        labels[idx] += coeff
    return AffineWeight.from_labels(algebra, labels)


def integrable_weights(algebra: str, level: int) -> list:
    """All integrable highest weights at the given level (brute-force scan)."""
    rs = build(algebra)
    out = []

    def rec(i, remaining, labels):
        if i == rs.rank + 1:
            if remaining == 0:
                out.append(AffineWeight.from_labels(algebra, labels))
            return
        a = rs.affine_comarks[i]
        for x in range(remaining // a + 1):
            rec(i + 1, remaining - a * x, labels + [x])

    rec(0, level, [])
    return out


# -- central charges and dimensions -------------------------------------------

def sugawara_central_charge(g: RootSystem | str, k: int) -> Fraction:
    rs = build(g) if isinstance(g, str) else g
    if k < 1:
        raise ValueError("level must be positive")
    return Fraction(k * rs.dimension, k + rs.dual_coxeter_number)


def coset_central_charge(g, k: int, j: int) -> Fraction:
    if j < 1:
        raise ValueError("j must be a positive integer")
    return j * sugawara_central_charge(g, k) - sugawara_central_charge(g, j * k)


def conformal_dimension(g, k: int, weight: AffineWeight) -> Fraction:
    """(Lambda, Lambda + 2 rho) / (2 (k + h^vee))."""
    rs = build(g) if isinstance(g, str) else g
    if weight.level != k:
        raise NotIntegrable(f"weight {weight.name()} has level {weight.level}, not {k}")
    weight.check_integrable()
    lam = weight.finite
    shifted = tuple(a + 2 * b for a, b in zip(lam, rs.rho))
    return rs.inner(lam, shifted) / (2 * (k + rs.dual_coxeter_number))


def branching_prefactor(g, k: int, j: int) -> Fraction:
    """Exponent c(k) (j^2 - 1) / 24 multiplying the trace-form parent character."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    return sugawara_central_charge(g, k) * (j * j - 1) / 24


def unitary_index(c: Fraction) -> int | None:
    """m with c = 1 - 6/(m(m+1)), if any."""
    if c >= 1 or c <= 0:
        return None
    target = 6 / (1 - c)   # = m(m+1)
    if target.denominator != 1:
        return None
    t = int(target)
    m = int((t ** 0.5))
    for cand in (m - 1, m, m + 1):
        if cand >= 2 and cand * (cand + 1) == t:
            return cand
    return None


# -- characters -------------------------------------------------------------------

NORMALIZATIONS = ("trace", "normalized")


@dataclass(frozen=True, eq=False)
class WeightCharacter:
    """ch_L(Lambda)(z; q) as {dominant finite weight -> q-series of multiplicities}.

    In trace normalization each series is Tr q^{L(0)} restricted to the weight,
    so the highest weight sits at q^{h(Lambda)}.  The normalized form carries the
    extra q^{-c/24}.
    """

    algebra: str
    level: int
    highest: AffineWeight
    table: Dict[Weight, QSeries]
    normalization: str = "trace"
    wound: int = 1

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")

    @property
    def root_system(self) -> RootSystem:
        return build(self.algebra)

    def weights(self) -> list:
        return sorted(self.table, key=lambda w: (-self.root_system.norm(w), w), reverse=True)

    def __getitem__(self, weight) -> QSeries:
        weight = tuple(weight)
        rs = self.root_system
        if not rs.is_dominant(weight):
            weight = rs.to_dominant(weight)[0]
        if weight in self.table:
            return self.table[weight]
        return QSeries.zero(self.trunc)

    @property
    def trunc(self):
        ts = [s.trunc for s in self.table.values() if s.trunc is not None]
        return min(ts) if ts else None

    def shift(self, amount) -> "WeightCharacter":
        return WeightCharacter(self.algebra, self.level, self.highest,
                               {w: s.shifted(amount) for w, s in self.table.items()},
                               self.normalization, self.wound)

    def renormalized(self, to: str) -> "WeightCharacter":
        if to == self.normalization:
            return self
        c = sugawara_central_charge(self.algebra, self.level) * self.wound
        delta = -c / 24 if to == "normalized" else c / 24
        out = self.shift(delta)
        return WeightCharacter(out.algebra, out.level, out.highest, out.table, to, self.wound)

    def truncate(self, trunc) -> "WeightCharacter":
        return WeightCharacter(self.algebra, self.level, self.highest,
                               {w: s.truncate(trunc) for w, s in self.table.items()},
                               self.normalization, self.wound)

    def to_json(self) -> dict:
        rs = self.root_system
        return {
            "algebra": self.algebra,
            "level": self.level,
            "highest": list(self.highest.labels),
            "normalization": self.normalization,
            "entries": [{"weight": list(w), "series": self.table[w].to_json()}
                        for w in sorted(self.table, key=lambda w: (rs.norm(w), w))],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeightCharacter":
        hw = AffineWeight.from_labels(data["algebra"], data["highest"])
        table = {tuple(e["weight"]): QSeries.from_json(e["series"]) for e in data["entries"]}
        return cls(data["algebra"], data["level"], hw, table, data["normalization"])


def wind_character(ch: WeightCharacter, j: int) -> WeightCharacter:
    """ch(z; q) -> ch(z; q^j); finite weights are untouched."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    if j == 1:
        return ch
    return WeightCharacter(ch.algebra, ch.level, ch.highest,
                           {w: substitute_power(s, j) for w, s in ch.table.items()},
                           ch.normalization, ch.wound * j)


def specialize(ch: WeightCharacter, method: str = "formula", cap: int = 10**7) -> QSeries:
    """Evaluate at z = 1: sum over dominant weights of |W lambda| * series."""
    rs = ch.root_system
    total = None
    for w in sorted(ch.table):
        size = rs.orbit_size(w, cap=cap) if method == "bfs" else rs.orbit_size_formula(w)
        term = ch.table[w].scale(size)
        total = term if total is None else total + term
    return total if total is not None else QSeries.zero(ch.trunc)

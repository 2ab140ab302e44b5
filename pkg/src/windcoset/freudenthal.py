"""Weight multiplicities of integrable highest-weight modules of untwisted
affine algebras, grade by grade, via Freudenthal's recursion.

A weight is stored as (finite dominant weight, grade); the affine weight is
k*Lambda_0 + finite - grade*delta relative to the highest weight at grade 0.
Affine positive roots are alpha + m*delta (alpha in the finite roots, m >= 1),
the finite positive roots, and m*delta with multiplicity rank.

For every candidate lambda at grade n,

    (|Lambda+rho^|^2 - |lambda^+rho^|^2) mult(lambda^)
        = 2 sum_{alpha^ > 0} mult(alpha^) sum_{t >= 1} (lambda^ + t alpha^, alpha^) mult(lambda^ + t alpha^)

and |lambda^+rho^|^2 = |lambda+rho|^2 - 2 n (k + h^vee).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .affine import AffineWeight, WeightCharacter, conformal_dimension
from .qseries import QSeries, invert, euler_phi
from .rootsys import RootSystem, Weight, _inverse, build, dominant_weights_in_ball

log = logging.getLogger(__name__)

SIMPLY_LACED = ("A1", "A2", "E6", "E7", "E8")


class ZeroDenominator(ArithmeticError):
    pass


class InexactMultiplicity(ArithmeticError):
    pass


class EmptyString(LookupError):
    pass


@dataclass(eq=False)
class MultiplicityTable:
    highest: AffineWeight
    max_grade: int
    entries: Dict[Tuple[Weight, int], int] = field(default_factory=dict)

    @property
    def root_system(self) -> RootSystem:
        return self.highest.root_system

    def mult(self, weight, grade: int) -> int:
        """Multiplicity of an arbitrary finite weight at a grade (Weyl-reduced)."""
        if grade > self.max_grade:
            raise ValueError(f"grade {grade} beyond computed range {self.max_grade}")
        w = self.root_system.to_dominant(tuple(weight))[0]
        return self.entries.get((w, grade), 0)

    def weights_at(self, grade: int) -> Dict[Weight, int]:
        return {w: m for (w, g), m in self.entries.items() if g == grade}

    def support(self) -> List[Weight]:
        rs = self.root_system
        return sorted({w for w, _ in self.entries}, key=lambda w: (rs.norm(w), w))

    def truncated(self, max_grade: int) -> "MultiplicityTable":
        if max_grade > self.max_grade:
            raise ValueError("cannot extend a table by truncation")
        return MultiplicityTable(self.highest, max_grade,
                                 {key: m for key, m in self.entries.items() if key[1] <= max_grade})

    def grade_series(self, weight) -> QSeries:
        """Multiplicities of ``weight - n delta`` for n = 0..max_grade as a series in q^n."""
        w = self.root_system.to_dominant(tuple(weight))[0]
        coeffs = [self.entries.get((w, n), 0) for n in range(self.max_grade + 1)]
        return QSeries.from_coeffs(coeffs, trunc=self.max_grade + 1)

    def to_character(self) -> WeightCharacter:
        """Trace-normalized character Tr z^h q^{L(0)}."""
        hw = self.highest
        h = conformal_dimension(hw.algebra, hw.level, hw)
        table = {w: self.grade_series(w).shifted(h) for w in self.support()}
        return WeightCharacter(hw.algebra, hw.level, hw, table, "trace")

    def string_function(self, weight) -> QSeries:
        w = self.root_system.to_dominant(tuple(weight))[0]
        first = next((n for n in range(self.max_grade + 1) if self.entries.get((w, n))), None)
        if first is None:
            raise EmptyString(f"weight {w} does not occur up to grade {self.max_grade}")
        coeffs = [self.entries.get((w, n), 0) for n in range(first, self.max_grade + 1)]
        return QSeries.from_coeffs(coeffs, trunc=len(coeffs))

    def first_grade(self, weight) -> int | None:
        w = self.root_system.to_dominant(tuple(weight))[0]
        return next((n for n in range(self.max_grade + 1) if self.entries.get((w, n))), None)

    def to_json(self) -> dict:
        return {
            "algebra": self.highest.algebra,
            "level": self.highest.level,
            "highest": list(self.highest.labels),
            "max_grade": self.max_grade,
            "entries": [{"weight": list(w), "grade": g, "mult": m}
                        for (w, g), m in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        }


class _Engine:
    """State for one Freudenthal run; everything scaled by L so it stays integral."""

    def __init__(self, rs: RootSystem, hw: AffineWeight, max_grade: int):
        self.rs = rs
        self.hw = hw
        self.k = hw.level
        self.max_grade = max_grade
        self.L, self.G = rs.scaled_gram()
        self.rank = rs.rank
        self.hv = rs.dual_coxeter_number
        self.top = np.array(hw.finite, dtype=np.int64)
        self.rho = np.array(rs.rho, dtype=np.int64)
        self.top_norm = int(self.top @ self.G @ self.top)
        tr = self.top + self.rho
        self.top_rho = int(tr @ self.G @ tr)
        pos = np.array(rs.positive_roots_fw, dtype=np.int64).reshape(-1, self.rank)
        self.npos = pos.shape[0]
        self.roots = np.vstack([pos, -pos])
        self.root_norms = np.einsum("ij,jk,ik->i", self.roots, self.G, self.roots)
        self.cartan_inv = [[Fraction(x) for x in row] for row in _inverse(rs.cartan_matrix)]
        self.marks = rs.marks
        bound = Fraction(self.top_norm + 2 * self.k * max_grade * self.L, self.L)
        self.ball = dominant_weights_in_ball(rs, bound)
        top_coord = max((max(w) for w in self.ball), default=0)
        self.base = int(top_coord) + 1
        if self.base ** self.rank >= 2 ** 62:
            raise OverflowError("weight keys do not fit into 64 bits")
        self.powers = np.array([self.base ** i for i in range(self.rank)], dtype=np.int64)
        # per grade: sorted keys and matching multiplicities
        self.keys: List[np.ndarray] = []
        self.mults: List[np.ndarray] = []
        self.weights: List[List[Weight]] = []

    def bound(self, grade: int) -> int:
        return self.top_norm + 2 * self.k * grade * self.L

    def candidates(self, grade: int) -> List[Weight]:
        lim = self.bound(grade)
        out = []
        for w in self.ball:
            v = np.array(w, dtype=np.int64)
            if int(v @ self.G @ v) > lim:
                continue
            diff = [a - b for a, b in zip(self.hw.finite, w)]
            coords = [sum(self.cartan_inv[i][j] * diff[j] for j in range(self.rank))
                      for i in range(self.rank)]
            if any(c.denominator != 1 for c in coords):
                continue
            if any(c + grade * m < 0 for c, m in zip(coords, self.marks)):
                continue
            out.append(w)

        def shifted_norm(w):
            v = np.array(w, dtype=np.int64) + self.rho
            return int(v @ self.G @ v)

        out.sort(key=lambda w: (-shifted_norm(w), w))
        return out

    def lookup(self, grade: int, dom: np.ndarray) -> np.ndarray:
        keys = self.keys[grade]
        if keys.size == 0 or dom.shape[0] == 0:
            return np.zeros(dom.shape[0], dtype=object)
        k = dom @ self.powers
        pos = np.searchsorted(keys, k)
        pos_c = np.minimum(pos, keys.size - 1)
        hit = keys[pos_c] == k
        vals = self.mults[grade][pos_c]
        return np.where(hit, vals, 0)

    def run(self) -> MultiplicityTable:
        table = MultiplicityTable(self.hw, self.max_grade)
        for n in range(self.max_grade + 1):
            cands = self.candidates(n)
            arr = np.array(cands, dtype=np.int64).reshape(-1, self.rank)
            keys = arr @ self.powers
            order = np.argsort(keys)
            self.keys.append(keys[order])
            inv_order = np.empty_like(order)
            inv_order[order] = np.arange(order.size)
            mults = np.zeros(len(cands), dtype=object)
            self.mults.append(mults)
            self.weights.append(cands)
            for idx, w in enumerate(cands):
                if n == 0 and w == tuple(self.hw.finite):
                    m = 1
                else:
                    m = self._multiplicity(np.array(w, dtype=np.int64), n)
                mults[inv_order[idx]] = m
                if m:
                    table.entries[(w, n)] = int(m)
            log.info("%s %s grade %d: %d dominant weights", self.rs.label, self.hw.name(), n,
                     sum(1 for (w, g) in table.entries if g == n))
        return table

    def _multiplicity(self, lam: np.ndarray, n: int) -> int:
        G, L, k = self.G, self.L, self.k
        lr = lam + self.rho
        denom = self.top_rho - int(lr @ G @ lr) + 2 * n * (k + self.hv) * L
        lam_dot = self.roots @ G @ lam        # (lambda, alpha) * L for every root
        lam_norm = int(lam @ G @ lam)
        total = 0

        # real roots: collect lambda + t alpha for all t, reduce once
        blocks = []
        t = 1
        loosest = self.bound(n)
        while True:
            norms = lam_norm + 2 * t * lam_dot + t * t * self.root_norms
            ok = norms <= loosest
            if t > n:
                # beyond t = n only finite positive roots (m = 0) contribute,
                # and their norms grow with t
                ok[self.npos:] = False
                if not ok.any():
                    break
            if ok.any():
                ridx = np.nonzero(ok)[0]
                blocks.append((t, ridx, norms[ridx]))
            t += 1
        if blocks:
            all_pts = np.vstack([lam + t * self.roots[ridx] for t, ridx, _ in blocks])
            dom = self.rs.dominant_array(all_pts)
            start = 0
            for t, ridx, nrm in blocks:
                size = ridx.size
                d = dom[start:start + size]
                start += size
                # (lambda + t alpha, alpha) * L
                pair = lam_dot[ridx] + t * self.root_norms[ridx]
                positive = ridx < self.npos
                for m in range(0, n // t + 1):
                    g = n - t * m
                    sel = nrm <= self.bound(g)
                    if m == 0:
                        sel &= positive
                    if not sel.any():
                        continue
                    vals = self.lookup(g, d[sel])
                    coef = pair[sel] + m * k * L
                    total += int(np.dot(coef.astype(object), vals))
        # imaginary roots m*delta, multiplicity rank
        if k:
            key = int(lam @ self.powers)
            for m in range(1, n + 1):
                for t in range(1, n // m + 1):
                    g = n - t * m
                    keys = self.keys[g]
                    p = np.searchsorted(keys, key)
                    if p < keys.size and keys[p] == key:
                        total += self.rank * m * k * L * int(self.mults[g][p])
        total *= 2
        if denom == 0:
            if total == 0:
                return 0
            raise ZeroDenominator(f"vanishing norm difference at {tuple(lam)} grade {n}")
        if total % denom:
            raise InexactMultiplicity(
                f"{self.rs.label} {self.hw.name()}: {total}/{denom} at {tuple(lam)} grade {n}")
        m = total // denom
        if m < 0:
            raise InexactMultiplicity(f"negative multiplicity {m} at {tuple(lam)} grade {n}")
        return m


_CACHE: Dict[Tuple[str, Tuple], MultiplicityTable] = {}


def multiplicities(g, k: int, highest: AffineWeight, max_grade: int) -> MultiplicityTable:
    """Exact multiplicities of all weights of L(highest) up to ``max_grade``."""
    rs = build(g) if isinstance(g, str) else g
    if highest.level != k:
        raise ValueError(f"highest weight {highest.name()} has level {highest.level}, expected {k}")
    highest.check_integrable()
    if max_grade < 0:
        raise ValueError("max_grade must be non-negative")
    key = (rs.label, highest.labels)
    cached = _CACHE.get(key)
    if cached is not None and cached.max_grade >= max_grade:
        return cached if cached.max_grade == max_grade else cached.truncated(max_grade)
    table = _Engine(rs, highest, max_grade).run()
    _CACHE[key] = table
    return table


def clear_cache() -> None:
    _CACHE.clear()


def string_function(g, k: int, highest: AffineWeight, weight, max_grade: int) -> QSeries:
    """b^Lambda_lambda(q) with the O(1) normalization, known to max_grade - first grade."""
    return multiplicities(g, k, highest, max_grade).string_function(weight)


def character(g, k: int, highest: AffineWeight, max_grade: int) -> WeightCharacter:
    return multiplicities(g, k, highest, max_grade).to_character()


# -- level-one lattice construction (independent oracle) -------------------------

def level_one_theta_character(g, highest: AffineWeight, max_grade: int) -> WeightCharacter:
    """Level-1 character of a simply-laced algebra from the lattice construction.

    L(Lambda) = C[lambda_Lambda + Q] (x) Fock(rank bosons): the weight gamma sits at
    grade (|gamma|^2 - |lambda_Lambda|^2)/2 and carries 1/phi(q)^rank oscillators.
    Uses no multiplicity recursion.
    """
    rs = build(g) if isinstance(g, str) else g
    if rs.label not in SIMPLY_LACED:
        raise ValueError(f"{rs.label} is not simply laced")
    if highest.level != 1:
        raise ValueError("lattice construction is level one only")
    highest.check_integrable()
    top = highest.finite
    top_norm = rs.norm(top)
    osc = invert(euler_phi(max_grade)) ** rs.rank
    h = top_norm / 2
    table = {}
    for gamma in dominant_weights_in_ball(rs, top_norm + 2 * max_grade):
        diff = tuple(a - b for a, b in zip(gamma, top))
        if not rs.in_root_lattice(diff):
            continue
        shift = (rs.norm(gamma) - top_norm) / 2
        assert shift.denominator == 1
        series = osc.shifted(h + shift).truncate(h + max_grade + 1)
        table[gamma] = series
    return WeightCharacter(rs.label, 1, highest, table, "trace")

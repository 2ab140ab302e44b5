"""Finite simple Lie algebra data for A1, A2, E6, E7, E8, F4, G2.

Weights are integer (or rational) vectors in the fundamental-weight basis.
The bilinear form is normalized so the highest root has norm 2.

Node numbering (the affine node 0 is attached as indicated):

    A1   1
    A2   1-2,            0 attached to 1 and 2
    E6   1-2-3-4-5, 6 on 3,          0 on 6
    E7   1-2-3-4-5-6, 7 on 3,        0 on 1
    E8   1-2-3-4-5-6-7, 8 on 5,      0 on 1
    F4   1-2=>3-4 (1,2 long),        0 on 1
    G2   1=>2 (1 long),              0 on 1
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Sequence, Tuple

import numpy as np

SUPPORTED = ("A1", "A2", "E6", "E7", "E8", "F4", "G2")

# (rank, simply-laced edges, multiple bonds (long, short, multiplicity), short nodes)
_DIAGRAMS = {
    "A1": (1, [], [], ()),
    "A2": (2, [(1, 2)], [], ()),
    "E6": (6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], [], ()),
    "E7": (7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)], [], ()),
    "E8": (8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)], [], ()),
    "F4": (4, [(1, 2), (3, 4)], [(2, 3, 2)], (3, 4)),
    "G2": (2, [], [(1, 2, 3)], (2,)),
}

# Reference data used to cross-check the computed values:
# label -> (dimension, dual Coxeter number, number of roots, comarks a_1..a_r)
REFERENCE = {
    "A1": (3, 2, 2, (1,)),
    "A2": (8, 3, 6, (1, 1)),
    "E6": (78, 12, 72, (1, 2, 3, 2, 1, 2)),
    "E7": (133, 18, 126, (2, 3, 4, 3, 2, 1, 2)),
    "E8": (248, 30, 240, (2, 3, 4, 5, 6, 4, 2, 3)),
    "F4": (52, 9, 48, (2, 3, 2, 1)),
    "G2": (14, 4, 12, (2, 1)),
}

Weight = Tuple[int, ...]


class OrbitTooLarge(RuntimeError):
    pass


def _cartan(label: str) -> List[List[int]]:
    rank, edges, multi, short = _DIAGRAMS[label]
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    for long_, short_, m in multi:
        # A[i][j] = <alpha_i^vee, alpha_j>; the short coroot sees the long root m times
        a[short_ - 1][long_ - 1] = -m
        a[long_ - 1][short_ - 1] = -1
    return a


def _inverse(mat: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True, eq=False)
class RootSystem:
    label: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    root_norms: Tuple[Fraction, ...]          # (alpha_i, alpha_i)
    gram: Tuple[Tuple[Fraction, ...], ...]    # (omega_i, omega_j)
    positive_roots: Tuple[Weight, ...]        # simple-root coordinates
    positive_roots_fw: Tuple[Weight, ...]     # fundamental-weight coordinates
    highest_root: Weight                      # fundamental-weight coordinates
    marks: Tuple[int, ...]                    # theta in simple roots
    comarks: Tuple[int, ...]                  # theta^vee in simple coroots
    rho: Weight = field(default=())
    _np: dict = field(default_factory=dict, repr=False)

    # -- derived quantities -----------------------------------------------

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def roots_fw(self) -> Tuple[Weight, ...]:
        return self.positive_roots_fw + tuple(tuple(-x for x in r) for r in self.positive_roots_fw)

    @property
    def dual_coxeter_number(self) -> int:
        # 1 + (rho, theta^vee) and (theta, theta) = 2
        return 1 + int(self.inner(self.rho, self.highest_root))

    @property
    def coxeter_number(self) -> int:
        return 1 + sum(self.marks)

    @property
    def affine_comarks(self) -> Tuple[int, ...]:
        return (1,) + self.comarks

    def simple_root_fw(self, i: int) -> Weight:
        """alpha_i (0-based) in fundamental-weight coordinates."""
        return tuple(self.cartan_matrix[k][i] for k in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        """omega_i with 1-based node label."""
        return tuple(int(k == i - 1) for k in range(self.rank))

    # -- bilinear form ----------------------------------------------------

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        g = self.gram
        return sum((Fraction(x[i]) * g[i][j] * y[j]
                    for i in range(self.rank) for j in range(self.rank)
                    if x[i] and y[j]), Fraction(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.inner(x, x)

    def coroot_pairing(self, x: Sequence, i: int) -> Fraction:
        """(x, alpha_i^vee) for 0-based i: the i-th Dynkin label."""
        return Fraction(x[i])

    def to_root_coords(self, x: Sequence) -> Tuple[Fraction, ...]:
        """Coefficients of x in the simple-root basis."""
        inv = self._np.get("cartan_inv")
        if inv is None:
            inv = _inverse(self.cartan_matrix)
            self._np["cartan_inv"] = inv
        return tuple(sum((inv[i][j] * x[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def in_root_lattice(self, x: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.to_root_coords(x))

    def height(self, x: Sequence) -> Fraction:
        return sum(self.to_root_coords(x), Fraction(0))

    # -- Weyl group -------------------------------------------------------

    def reflect(self, x: Sequence, i: int) -> tuple:
        """Simple reflection s_i (0-based) in fundamental-weight coordinates."""
        c = x[i]
        if not c:
            return tuple(x)
        col = [self.cartan_matrix[k][i] for k in range(self.rank)]
        return tuple(x[k] - c * col[k] for k in range(self.rank))

    def is_dominant(self, x: Sequence) -> bool:
        return all(c >= 0 for c in x)

    def to_dominant(self, x: Sequence, shifted: bool = False):
        """Reduce x to the dominant chamber by simple reflections.

        Returns ``(dominant, sign, parity)`` where sign = det of the Weyl
        element used and parity = its length mod 2.  With ``shifted=True`` the
        dot action is used (reduce x + rho, subtract rho) and sign is 0 when
        x + rho lands on a wall.
        """
        x = tuple(x)
        if shifted:
            x = tuple(a + b for a, b in zip(x, self.rho))
        length = 0
        while True:
            i = next((k for k, c in enumerate(x) if c < 0), None)
            if i is None:
                break
            x = self.reflect(x, i)
            length += 1
        sign = -1 if length % 2 else 1
        if shifted:
            if any(c == 0 for c in x):
                sign = 0
            x = tuple(a - b for a, b in zip(x, self.rho))
        return x, sign, length % 2

    def orbit_size(self, x: Sequence, cap: int = 10**7) -> int:
        """|W x| by breadth-first closure under simple reflections."""
        x = tuple(x)
        if not self.is_dominant(x):
            raise ValueError("orbit_size expects a dominant weight")
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for i in range(self.rank):
                if y[i] > 0:      # only walk downward; each orbit point is reached from above
                    z = self.reflect(y, i)
                    if z not in seen:
                        seen.add(z)
                        if len(seen) > cap:
                            raise OrbitTooLarge(f"orbit of {x} exceeds {cap} points")
                        queue.append(z)
        return len(seen)

    def weyl_order(self, nodes: Sequence[int] | None = None) -> int:
        """Order of the (parabolic) Weyl group on the given 0-based nodes.

        Uses |W_J| = prod over positive roots of W_J of (ht+1)/ht.
        """
        nodes = set(range(self.rank)) if nodes is None else set(nodes)
        acc = Fraction(1)
        for r in self.positive_roots:
            if all(c == 0 for i, c in enumerate(r) if i not in nodes):
                h = sum(r)
                acc *= Fraction(h + 1, h)
        assert acc.denominator == 1
        return int(acc)

    def orbit_size_formula(self, x: Sequence) -> int:
        """|W x| = |W| / |W_J| with J the simple reflections fixing dominant x."""
        x = tuple(x)
        if not self.is_dominant(x):
            raise ValueError("orbit size formula expects a dominant weight")
        fixed = [i for i, c in enumerate(x) if c == 0]
        return self.weyl_order() // self.weyl_order(fixed)

    # -- numpy helpers used by the multiplicity engine ----------------------

    @property
    def cartan_columns(self) -> np.ndarray:
        """Row i holds alpha_i in fundamental-weight coordinates."""
        arr = self._np.get("cols")
        if arr is None:
            arr = np.array([self.simple_root_fw(i) for i in range(self.rank)], dtype=np.int64)
            self._np["cols"] = arr
        return arr

    def scaled_gram(self) -> Tuple[int, np.ndarray]:
        """(L, L*gram) with L the least common denominator of the gram entries."""
        cached = self._np.get("sgram")
        if cached is None:
            den = 1
            for row in self.gram:
                for g in row:
                    den = lcm(den, g.denominator)
            mat = np.array([[int(g * den) for g in row] for row in self.gram], dtype=np.int64)
            cached = (den, mat)
            self._np["sgram"] = cached
        return cached

    def dominant_array(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized reduction of integer weights (rows) to the dominant chamber."""
        pts = np.array(pts, dtype=np.int64, copy=True)
        if pts.size == 0:
            return pts
        cols = self.cartan_columns
        active = np.nonzero((pts < 0).any(axis=1))[0]
        while active.size:
            sub = pts[active]
            neg = sub < 0
            idx = neg.argmax(axis=1)
            c = sub[np.arange(sub.shape[0]), idx]
            sub -= c[:, None] * cols[idx]
            pts[active] = sub
            active = active[(sub < 0).any(axis=1)]
        return pts

    # -- export -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "root_norms": [str(x) for x in self.root_norms],
            "gram_fundamental_weights": [[str(x) for x in r] for r in self.gram],
            "positive_roots_simple_coords": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
            "marks": list(self.marks),
            "comarks": list(self.affine_comarks),
            "dual_coxeter_number": self.dual_coxeter_number,
            "dimension": self.dimension,
        }


def _enumerate_positive_roots(cartan: Sequence[Sequence[int]]) -> List[Weight]:
    """Positive roots (simple-root coordinates) by closure from the simple roots.

    beta + alpha_i is a root iff q > 0 in the alpha_i-string p..q through beta,
    where p - q = -<beta, alpha_i^vee> ... i.e. q = p - <beta, alpha_i^vee>.
    """
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                pairing = sum(beta[j] * cartan[i][j] for j in range(rank))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build(label: str) -> RootSystem:
    if label not in _DIAGRAMS:
        raise ValueError(f"unsupported algebra {label!r}; choose from {', '.join(SUPPORTED)}")
    rank, _, _, short = _DIAGRAMS[label]
    cartan = _cartan(label)
    bond = {n: m for _, sh, m in _DIAGRAMS[label][2] for n in short}
    norms = tuple(Fraction(2, bond[i + 1]) if (i + 1) in short else Fraction(2)
                  for i in range(rank))
    # symmetrizability check: A[i][j] * |a_i|^2 == A[j][i] * |a_j|^2
    for i in range(rank):
        for j in range(rank):
            assert cartan[i][j] * norms[i] == cartan[j][i] * norms[j], (label, i, j)
    inv = _inverse(cartan)
    gram = tuple(tuple(inv[i][j] * norms[i] / 2 for j in range(rank)) for i in range(rank))
    pos = _enumerate_positive_roots(cartan)
    pos_fw = tuple(tuple(sum(r[j] * cartan[i][j] for j in range(rank)) for i in range(rank))
                   for r in pos)
    top = max(range(len(pos)), key=lambda k: sum(pos[k]))
    marks = pos[top]
    theta = pos_fw[top]
    comarks = tuple(int(marks[i] * norms[i] / 2) for i in range(rank))
    rho = tuple(1 for _ in range(rank))
    rs = RootSystem(
        label=label,
        rank=rank,
        cartan_matrix=tuple(tuple(r) for r in cartan),
        root_norms=norms,
        gram=gram,
        positive_roots=tuple(pos),
        positive_roots_fw=pos_fw,
        highest_root=theta,
        marks=marks,
        comarks=comarks,
        rho=rho,
    )
    _validate(rs)
    return rs


def _validate(rs: RootSystem) -> None:
    dim, hv, nroots, comarks = REFERENCE[rs.label]
    if rs.norm(rs.highest_root) != 2:
        raise AssertionError(f"{rs.label}: (theta, theta) != 2")
    if 2 * len(rs.positive_roots) != nroots or rs.dimension != dim:
        raise AssertionError(f"{rs.label}: root count {2 * len(rs.positive_roots)} != {nroots}")
    if rs.dual_coxeter_number != hv:
        raise AssertionError(f"{rs.label}: h^vee {rs.dual_coxeter_number} != {hv}")
    if rs.comarks != comarks:
        raise AssertionError(f"{rs.label}: node numbering mismatch, comarks {rs.comarks} != {comarks}")
    if sum(rs.affine_comarks) != hv:
        raise AssertionError(f"{rs.label}: comark sum != h^vee")
    two_rho = [sum(r[i] for r in rs.positive_roots_fw) for i in range(rs.rank)]
    if two_rho != [2 * x for x in rs.rho]:
        raise AssertionError(f"{rs.label}: sum of positive roots != 2 rho")


def dominant_weights_in_ball(rs: RootSystem, bound: Fraction) -> List[Weight]:
    """All dominant integral weights with (x, x) <= bound.

    Fundamental weights have pairwise non-negative inner products, so the
    norm grows in every coordinate and a pruned depth-first search suffices.
    """
    den, g = rs.scaled_gram()
    lim = bound * den
    rank = rs.rank
    out: List[Weight] = []
    coords = [0] * rank

    def rec(i: int, partial: int):
        # partial = scaled norm of coords[:i] (coords[i:] are zero)
        if i == rank:
            out.append(tuple(coords))
            return
        c = 0
        while True:
            coords[i] = c
            val = partial + 2 * c * sum(int(g[i][j]) * coords[j] for j in range(i)) + c * c * int(g[i][i])
            if val > lim:
                break
            rec(i + 1, val)
            c += 1
        coords[i] = 0

    rec(0, 0)
    return out

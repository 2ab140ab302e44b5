"""Exact truncated q-series with rational exponent offsets.

A series is stored as ``q^offset * sum_i c_i q^(i/D)``.  Coefficients are
Python integers; exponents at or above ``trunc`` are unknown.  ``trunc=None``
marks an exact (finite) series such as a monomial prefactor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, lcm
from typing import Iterable, Iterator, Optional, Tuple


class NonUnitLeadingCoefficient(ArithmeticError):
    pass


class NonIntegerExponents(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point exponents are not allowed")
    return Fraction(x)


def _min_trunc(*ts: Optional[Fraction]) -> Optional[Fraction]:
    known = [t for t in ts if t is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class QSeries:
    offset: Fraction
    step_den: int
    coeffs: Tuple[int, ...]
    trunc: Optional[Fraction]

    def __post_init__(self):
        object.__setattr__(self, "offset", _frac(self.offset))
        if self.trunc is not None:
            object.__setattr__(self, "trunc", _frac(self.trunc))
        if self.step_den < 1:
            raise ValueError("step_den must be positive")
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if isinstance(c, Fraction):
                raise TypeError("coefficients must be integers")
        if self.trunc is not None:
            n = self._known_count(self.offset, self.step_den, self.trunc)
            coeffs = coeffs[:n] + (0,) * (n - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction ---------------------------------------------------

    @staticmethod
    def _known_count(offset: Fraction, den: int, trunc: Fraction) -> int:
        return max(0, ceil((trunc - offset) * den))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], offset=0, step_den: int = 1,
                    trunc=None) -> "QSeries":
        """Build ``q^offset * sum c_i q^(i/step_den)``.

        With ``trunc=None`` the given coefficients are taken to be all that
        are known, i.e. the series is truncated right after the last one.
        Pass ``trunc="exact"`` for an exact polynomial.
        """
        coeffs = tuple(int(c) for c in coeffs)
        offset = _frac(offset)
        if trunc is None:
            trunc = offset + Fraction(len(coeffs), step_den)
        elif trunc == "exact":
            trunc = None
        return cls(offset, step_den, coeffs, trunc)

    @classmethod
    def monomial(cls, exponent=0, coeff: int = 1) -> "QSeries":
        e = _frac(exponent)
        return cls(e, e.denominator, (int(coeff),), None)

    @classmethod
    def one(cls) -> "QSeries":
        return cls.monomial(0, 1)

    @classmethod
    def zero(cls, trunc=None) -> "QSeries":
        return cls(Fraction(0), 1, (), None if trunc is None else _frac(trunc))

    @classmethod
    def from_terms(cls, terms: dict, trunc) -> "QSeries":
        """Series from ``{exponent: coefficient}``; every exponent below
        ``trunc`` not listed is zero."""
        trunc = None if trunc is None else _frac(trunc)
        exps = [_frac(e) for e in terms]
        if trunc is not None:
            exps = [e for e in exps if e < trunc]
        if not exps:
            return cls.zero(trunc)
        lo = min(exps)
        den = 1
        for e in exps:
            den = lcm(den, (e - lo).denominator)
        if trunc is not None:
            den = lcm(den, (trunc - lo).denominator)
        size = (max(exps) - lo) * den + 1
        out = [0] * int(size)
        for e, c in terms.items():
            e = _frac(e)
            if trunc is not None and e >= trunc:
                continue
            out[int((e - lo) * den)] += int(c)
        return cls(lo, den, tuple(out), trunc)

    # -- inspection -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    def exponents(self) -> Iterator[Tuple[Fraction, int]]:
        """(exponent, coefficient) pairs for every stored coefficient."""
        step = Fraction(1, self.step_den)
        for i, c in enumerate(self.coeffs):
            yield self.offset + i * step, c

    def terms(self) -> dict:
        return {e: c for e, c in self.exponents() if c}

    def __getitem__(self, exponent) -> int:
        e = _frac(exponent)
        if self.trunc is not None and e >= self.trunc:
            raise IndexError(f"coefficient of q^{e} is beyond the truncation q^{self.trunc}")
        pos = (e - self.offset) * self.step_den
        if pos < 0 or pos.denominator != 1 or pos >= len(self.coeffs):
            return 0
        return self.coeffs[int(pos)]

    def valuation(self) -> Optional[Fraction]:
        """Lowest exponent carrying a nonzero coefficient, or None."""
        for e, c in self.exponents():
            if c:
                return e
        return None

    def leading(self) -> Tuple[Optional[Fraction], int]:
        v = self.valuation()
        return (v, 0) if v is None else (v, self[v])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def integral_coefficients(self, start=0) -> list:
        """Coefficients of q^start, q^(start+1), ... up to truncation.

        Only valid when all stored exponents differ from ``start`` by
        integers.
        """
        start = _frac(start)
        if self.trunc is None:
            raise ValueError("exact series has no natural end; use terms()")
        out = []
        e = start
        while e < self.trunc:
            out.append(self[e])
            e += 1
        return out

    # -- exponent grid handling -----------------------------------------

    def rescaled(self, den: int) -> "QSeries":
        """Same series on a finer exponent grid of spacing 1/den."""
        if den % self.step_den:
            raise ValueError("new step denominator must be a multiple")
        f = den // self.step_den
        if f == 1:
            return self
        out = [0] * (max(len(self.coeffs) - 1, 0) * f + (1 if self.coeffs else 0))
        for i, c in enumerate(self.coeffs):
            out[i * f] = c
        return QSeries(self.offset, den, tuple(out), self.trunc)

    def shifted(self, amount) -> "QSeries":
        """Multiply by q^amount."""
        amount = _frac(amount)
        return QSeries(self.offset + amount, self.step_den, self.coeffs,
                       None if self.trunc is None else self.trunc + amount)

    def truncate(self, trunc) -> "QSeries":
        trunc = _frac(trunc)
        new = trunc if self.trunc is None else min(trunc, self.trunc)
        return QSeries(self.offset, self.step_den, self.coeffs, new)

    def _on_grid(self, offset: Fraction, den: int) -> Tuple[int, ...]:
        """Coefficients placed on the grid offset + i/den (offset <= self.offset)."""
        s = self.rescaled(den)
        lead = (s.offset - offset) * den
        if lead.denominator != 1 or lead < 0:
            raise ValueError("series does not live on the requested grid")
        return (0,) * int(lead) + s.coeffs

    @staticmethod
    def _common_grid(a: "QSeries", b: "QSeries") -> Tuple[Fraction, int]:
        den = lcm(a.step_den, b.step_den, (a.offset - b.offset).denominator)
        return min(a.offset, b.offset), den

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, other)
        if not self.coeffs:
            return other.truncate(self.trunc) if self.trunc is not None else other
        if not other.coeffs:
            return self.truncate(other.trunc) if other.trunc is not None else self
        off, den = self._common_grid(self, other)
        a = self._on_grid(off, den)
        b = other._on_grid(off, den)
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] += c
        for i, c in enumerate(b):
            out[i] += c
        return QSeries(off, den, tuple(out), _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, self.step_den, tuple(-c for c in self.coeffs), self.trunc)

    def __sub__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, k: int) -> "QSeries":
        return QSeries(self.offset, self.step_den, tuple(k * c for c in self.coeffs), self.trunc)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = _min_trunc(
            None if self.trunc is None else self.trunc + other.offset,
            None if other.trunc is None else other.trunc + self.offset,
        )
        off = self.offset + other.offset
        den = lcm(self.step_den, other.step_den)
        a = self.rescaled(den).coeffs
        b = other.rescaled(den).coeffs
        if not a or not b:
            return QSeries(off, den, (), trunc)
        limit = len(a) + len(b) - 1
        if trunc is not None:
            limit = min(limit, self._known_count(off, den, trunc))
        out = [0] * max(limit, 0)
        for i, x in enumerate(a):
            if not x or i >= limit:
                continue
            for j in range(min(len(b), limit - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return QSeries(off, den, tuple(out), trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return invert(self) ** (-n)
        result = QSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------

    def overlap(self, other: "QSeries") -> Optional[Fraction]:
        return _min_trunc(self.trunc, other.trunc)

    def agrees_with(self, other: "QSeries") -> bool:
        diff = self - other
        return diff.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.agrees_with(other)

    def __hash__(self):
        raise TypeError("QSeries equality is truncation-relative; not hashable")

    def __repr__(self) -> str:
        parts = []
        for e, c in self.exponents():
            if c:
                parts.append(f"{c}*q^{e}")
            if len(parts) >= 8:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.trunc is None else f" + O(q^{self.trunc})"
        return f"QSeries({body}{tail})"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "offset": str(self.offset),
            "step_den": self.step_den,
            "coeffs": list(self.coeffs),
            "trunc": None if self.trunc is None else str(self.trunc),
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        trunc = data.get("trunc")
        return cls(Fraction(data["offset"]), int(data["step_den"]),
                   tuple(int(c) for c in data["coeffs"]),
                   None if trunc is None else Fraction(trunc))


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def euler_phi(order: int) -> QSeries:
    """prod_{n>=1} (1 - q^n), known through q^order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    c = [0] * (order + 1)
    c[0] = 1
    for n in range(1, order + 1):
        for i in range(order, n - 1, -1):
            c[i] -= c[i - n]
    return QSeries.from_coeffs(c, trunc=order + 1)


def invert(a: QSeries, order=None) -> QSeries:
    """Multiplicative inverse; the leading coefficient must be +1 or -1.

    For an exact input the result is truncated at ``q^order`` (exclusive)
    relative to the inverted offset.
    """
    if not a.coeffs or a.coeffs[0] not in (1, -1):
        lead = a.coeffs[0] if a.coeffs else 0
        raise NonUnitLeadingCoefficient(f"leading coefficient {lead} at q^{a.offset} is not a unit")
    u = a.coeffs[0]
    if a.trunc is None:
        if order is None:
            raise ValueError("inverting an exact series needs an explicit order")
        rel = _frac(order) + a.offset
    else:
        rel = a.trunc - a.offset
        if order is not None:
            rel = min(rel, _frac(order) + a.offset)
    n = QSeries._known_count(Fraction(0), a.step_den, rel)
    src = a.coeffs
    out = [0] * n
    for i in range(n):
        s = 1 if i == 0 else 0
        for j in range(1, min(i, len(src) - 1) + 1):
            if src[j]:
                s -= src[j] * out[i - j]
        out[i] = s * u
    return QSeries(-a.offset, a.step_den, tuple(out), rel - a.offset)


def substitute_power(a: QSeries, j: int) -> QSeries:
    """q -> q^j."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    if j == 1:
        return a
    off = a.offset * j
    step = Fraction(j, a.step_den)
    den = step.denominator
    spread = step.numerator
    out = [0] * (max(len(a.coeffs) - 1, 0) * spread + (1 if a.coeffs else 0))
    for i, c in enumerate(a.coeffs):
        out[i * spread] = c
    trunc = None if a.trunc is None else a.trunc * j
    return QSeries(off, den, tuple(out), trunc)


def parity_part(a: QSeries, parity: str) -> QSeries:
    """Keep only integer exponents that are even (or odd)."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    want = 0 if parity == "even" else 1
    terms = {}
    for e, c in a.exponents():
        if e.denominator != 1:
            if c:
                raise NonIntegerExponents(f"exponent {e} is not an integer")
            continue
        if int(e) % 2 == want and c:
            terms[e] = c
    return QSeries.from_terms(terms, a.trunc) if terms else QSeries.zero(a.trunc)


def partitions_series(order: int, colors: int = 1) -> QSeries:
    """1/phi(q)^colors through q^order."""
    return invert(euler_phi(order)) ** colors

"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A CycNumber is an element of Q(zeta_N) stored in the power basis
1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial, with
Fraction coordinates.  Reduction mod Phi_N is applied on construction,
so equality of values is equality of coefficient vectors (after the two
conductors are unified by embedding into Q(zeta_lcm)).

Plain ints and Fractions mix freely with CycNumbers: the reflected
arithmetic operators embed them at conductor 1.  Code that only ever
sees rational scalars (e.g. symmetric groups) therefore runs on raw
Fractions with no cyclotomic overhead.

No floating point is used anywhere; `approx` exists only as a display
helper and takes no part in equality logic.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction, "CycNumber"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_cyclo_cache: dict[int, list[int]] = {}


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficient list (low degree first) of Phi_n."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    # Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, by exact division.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact_int(num, cyclotomic_polynomial(d))
    _cyclo_cache[n] = num
    return num


def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q, r = divmod(c, den[dd])
            if r:
                raise ArithmeticError("non-exact polynomial division")
            out[i - dd] = q
            for j in range(dd + 1):
                num[i - dd + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


# Per conductor: tuple rows giving zeta_N^m in the power basis, m = 0..N-1.
_power_cache: dict[int, list[tuple[Fraction, ...]]] = {}


def _power_table(n: int) -> list[tuple[Fraction, ...]]:
    table = _power_cache.get(n)
    if table is not None:
        return table
    phi = _euler_phi(n)
    cyclo = cyclotomic_polynomial(n)
    # x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}), Phi_n monic.
    rows: list[list[Fraction]] = []
    for m in range(phi):
        row = [_ZERO] * phi
        row[m] = _ONE
        rows.append(row)
    for m in range(phi, n):
        prev = rows[m - 1]
        row = [_ZERO] + prev[: phi - 1]
        top = prev[phi - 1]
        if top:
            for j in range(phi):
                row[j] -= top * cyclo[j]
        rows.append(row)
    table = [tuple(r) for r in rows]
    _power_cache[n] = table
    return table


class CycNumber:
    """Element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: tuple[Fraction, ...]):
        self.conductor = conductor
        self.coeffs = coeffs

    # -- construction ------------------------------------------------

    @staticmethod
    def from_rational(q, conductor: int = 1) -> "CycNumber":
        q = Fraction(q)
        phi = _euler_phi(conductor)
        return CycNumber(conductor, (q,) + (_ZERO,) * (phi - 1))

    @staticmethod
    def from_powers(conductor: int, powers: dict[int, Fraction]) -> "CycNumber":
        """Sum of q * zeta^m over powers {m: q}, reduced mod Phi."""
        table = _power_table(conductor)
        phi = len(table[0]) if conductor > 1 else 1
        acc = [_ZERO] * phi
        for m, q in powers.items():
            row = table[m % conductor]
            for j in range(phi):
                if row[j]:
                    acc[j] += q * row[j]
        return CycNumber(conductor, tuple(acc))

    def lift(self, conductor: int) -> "CycNumber":
        """Embed into Q(zeta_conductor); self.conductor must divide it."""
        n = self.conductor
        if n == conductor:
            return self
        if conductor % n:
            raise ValueError(f"cannot lift conductor {n} into {conductor}")
        step = conductor // n
        return CycNumber.from_powers(
            conductor, {j * step: c for j, c in enumerate(self.coeffs) if c}
        )

    # -- predicates ---------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------

    def _unify(self, other: Scalar) -> tuple["CycNumber", "CycNumber"]:
        if isinstance(other, CycNumber):
            n, m = self.conductor, other.conductor
            if n == m:
                return self, other
            l = n * m // gcd(n, m)
            return self.lift(l), other.lift(l)
        return self, CycNumber.from_rational(other).lift(self.conductor)

    def __add__(self, other):
        if isinstance(other, CycNumber) and other.conductor == self.conductor:
            return CycNumber(
                self.conductor,
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            )
        if not isinstance(other, (int, Fraction, CycNumber)):
            return NotImplemented
        a, b = self._unify(other)
        return CycNumber(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, CycNumber)):
            return NotImplemented
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycNumber(self.conductor, (_ZERO,) * len(self.coeffs))
            return CycNumber(self.conductor, tuple(c * other for c in self.coeffs))
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._unify(other)
        n = a.conductor
        ca, cb = a.coeffs, b.coeffs
        phi = len(ca)
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        conv[i + j] += x * y
        if phi == 1:
            return CycNumber(n, (conv[0],))
        table = _power_table(n)
        acc = list(conv[:phi])
        for m in range(phi, 2 * phi - 1):
            c = conv[m]
            if c:
                row = table[m % n]
                for j in range(phi):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNumber(n, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        n = self.conductor
        if self.is_rational():
            return CycNumber.from_rational(1 / self.coeffs[0], n)
        # Extended Euclid in Q[x] against Phi_n.
        cyclo = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        r0, r1 = cyclo, a
        s0, s1 = [], [_ONE]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, r
        lead = r1[-1] if len(r1) > 1 else r1[0]
        if len(r1) > 1:
            raise ArithmeticError("Phi_N not coprime to element (bug)")
        inv = [c / lead for c in s1]
        phi = len(self.coeffs)
        inv = (inv + [_ZERO] * phi)[:phi]
        return CycNumber(n, tuple(inv))

    def __pow__(self, n: int) -> "CycNumber":
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNumber.from_rational(1, self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            if n > 1:
                base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / CycNumber.from_rational(other)
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "CycNumber":
        """Complex conjugation: zeta_N -> zeta_N^(-1)."""
        n = self.conductor
        if n <= 2:
            return self
        return CycNumber.from_powers(
            n, {(n - j) % n: c for j, c in enumerate(self.coeffs) if c}
        )

    # -- comparison / output -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        # Hash at own conductor; cross-conductor equal values are always
        # compared after the group-level promotion, never used as dict keys.
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        return self.to_string()

    def to_string(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                if c == 1:
                    parts.append(z)
                elif c == -1:
                    parts.append(f"-{z}")
                else:
                    parts.append(f"{c}*{z}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self):
        return {
            "conductor": self.conductor,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @staticmethod
    def from_json(data) -> "CycNumber":
        return CycNumber(
            data["conductor"],
            tuple(Fraction(num, den) for num, den in data["coeffs"]),
        )

    def approx(self) -> complex:
        """Floating display helper only; never used in equality logic."""
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    q = [_ZERO] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] / b[-1]
        q[len(a) - 1 - db] = c
        for j in range(db + 1):
            a[len(a) - 1 - db + j] -= c * b[j]
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = list(a) + [_ZERO] * (len(b) - len(a))
    for j, y in enumerate(b):
        out[j] -= y
    return out


def root_of_unity(j: int, n: int) -> Scalar:
    """zeta_n^j in canonical form (a plain Fraction when it is rational)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    j %= n
    if j == 0:
        return _ONE
    if 2 * j == n:
        return Fraction(-1)
    return CycNumber.from_powers(n, {j: _ONE})


def conj(s: Scalar) -> Scalar:
    """Complex conjugation on any scalar; fixes Q."""
    if isinstance(s, CycNumber):
        return s.conjugate()
    return s


def inv(s: Scalar) -> Scalar:
    """Multiplicative inverse; raises ZeroDivisionError on 0."""
    if isinstance(s, CycNumber):
        return s.inverse()
    if not s:
        raise ZeroDivisionError("inverse of zero")
    return Fraction(1, 1) / s


def as_rational(s: Scalar) -> Fraction:
    """Extract a rational value, raising if the scalar is irrational."""
    if isinstance(s, CycNumber):
        return s.as_fraction()
    return Fraction(s)


def promote(s: Scalar, conductor: int) -> Scalar:
    """Return s as a CycNumber at the given conductor (identity for Q at 1)."""
    if conductor == 1:
        return as_rational(s) if isinstance(s, CycNumber) else Fraction(s)
    if isinstance(s, CycNumber):
        return s.lift(conductor * s.conductor // gcd(conductor, s.conductor))
    return CycNumber.from_rational(s, conductor)


def scalar_to_json(s: Scalar):
    if isinstance(s, CycNumber):
        if s.is_rational():
            q = s.as_fraction()
            return [q.numerator, q.denominator]
        return s.to_json()
    q = Fraction(s)
    return [q.numerator, q.denominator]


def multiplicative_order(s: Scalar, bound: int = 1000) -> int:
    acc = s
    for m in range(1, bound + 1):
        if acc == 1:
            return m
        acc = acc * s
    raise ValueError("order exceeds bound")

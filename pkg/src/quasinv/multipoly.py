"""Sparse multivariate polynomials over cyclotomic scalars.

A MultiPoly maps exponent tuples to scalars (int / Fraction / CycNumber),
with zero coefficients never stored.  Variables come from an ordered tuple
of VarSpaces; the exponent tuple is flat across all of them, so C[V],
C[V*] and C[V* x V] are all the same machinery with different var tuples.

The grading weight of a VarSpace is +1 or -1; polynomial degree uses all
weights +1, while the bigrading used for Baker-Akhiezer prefactors puts
+1 on spectral variables and -1 on space variables.

Monomial order is graded lexicographic (degree first, then lex), used for
canonical printing and term iteration only, never for semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .cyclotomic import CycNumber, Scalar, conj, scalar_to_json

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class VarSpace:
    """A named block of variables with a grading weight (+1 or -1)."""

    name: str
    dim: int
    grade: int = 1

    def var_names(self) -> list[str]:
        if self.dim == 1:
            return [self.name]
        return [f"{self.name}{i + 1}" for i in range(self.dim)]


class NotDivisible(ArithmeticError):
    """Raised by exact division when a nonzero remainder survives."""

    def __init__(self, remainder: "MultiPoly"):
        super().__init__(f"not divisible; remainder {remainder}")
        self.remainder = remainder


def _monomial_key(exp: Exponent):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[VarSpace, ...], terms: dict[Exponent, Scalar]):
        self.vars = vars
        self.terms = terms

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(vars: tuple[VarSpace, ...]) -> "MultiPoly":
        return MultiPoly(vars, {})

    @staticmethod
    def const(vars: tuple[VarSpace, ...], c: Scalar) -> "MultiPoly":
        n = sum(v.dim for v in vars)
        return MultiPoly(vars, {(0,) * n: c} if c else {})

    @staticmethod
    def variable(vars: tuple[VarSpace, ...], index: int) -> "MultiPoly":
        n = sum(v.dim for v in vars)
        e = [0] * n
        e[index] = 1
        return MultiPoly(vars, {tuple(e): Fraction(1)})

    @staticmethod
    def linear_form(vars: tuple[VarSpace, ...], coeffs: Sequence[Scalar],
                    offset: int = 0) -> "MultiPoly":
        n = sum(v.dim for v in vars)
        terms: dict[Exponent, Scalar] = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[offset + i] = 1
                terms[tuple(e)] = c
        return MultiPoly(vars, terms)

    def nvars(self) -> int:
        return sum(v.dim for v in self.vars)

    # -- ring operations --------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if len(self.terms) != len(other.terms):
                return False
            for e, c in self.terms.items():
                oc = other.terms.get(e)
                if oc is None or not (c == oc):
                    return False
            return True
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, Fraction(other))
        return NotImplemented

    def __hash__(self):
        raise TypeError("MultiPoly is not hashable")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, Fraction(other))
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, Fraction(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    if c:
                        out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return MultiPoly(self.vars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "MultiPoly":
        if not c:
            return MultiPoly(self.vars, {})
        return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.const(self.vars, Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- degree / grading ---------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _weights(self) -> list[int]:
        w: list[int] = []
        for v in self.vars:
            w.extend([v.grade] * v.dim)
        return w

    def grade_degrees(self) -> set[int]:
        w = self._weights()
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def homogeneous_components(
        self, weights: Sequence[int] | None = None
    ) -> list[tuple[int, "MultiPoly"]]:
        """Split into weighted-homogeneous parts; summands reproduce self."""
        w = list(weights) if weights is not None else [1] * self.nvars()
        buckets: dict[int, dict[Exponent, Scalar]] = {}
        for e, c in self.terms.items():
            d = sum(a * b for a, b in zip(e, w))
            buckets.setdefault(d, {})[e] = c
        return [(d, MultiPoly(self.vars, t)) for d, t in sorted(buckets.items())]

    def bigrade_components(self) -> list[tuple[int, "MultiPoly"]]:
        return self.homogeneous_components(self._weights())

    def component_of_degree(self, d: int, weights: Sequence[int] | None = None
                            ) -> "MultiPoly":
        w = list(weights) if weights is not None else [1] * self.nvars()
        out = {e: c for e, c in self.terms.items()
               if sum(a * b for a, b in zip(e, w)) == d}
        return MultiPoly(self.vars, out)

    def degree_in_block(self, block: int) -> int:
        off, dim = self._block_span(block)
        return max((sum(e[off:off + dim]) for e in self.terms), default=0)

    def _block_span(self, block: int) -> tuple[int, int]:
        off = sum(v.dim for v in self.vars[:block])
        return off, self.vars[block].dim

    # -- calculus -------------------------------------------------------------

    def partial(self, index: int) -> "MultiPoly":
        out: dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                e2 = list(e)
                e2[index] = k - 1
                key = tuple(e2)
                v = out.get(key)
                v = c * k if v is None else v + c * k
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return MultiPoly(self.vars, out)

    def directional(self, direction: Sequence[Scalar], offset: int = 0
                    ) -> "MultiPoly":
        out = MultiPoly.zero(self.vars)
        for i, a in enumerate(direction):
            if a:
                out = out + self.partial(offset + i).scale(a)
        return out

    # -- substitution -----------------------------------------------------------

    def substitute_block(self, block: int, images: Sequence["MultiPoly"]
                         ) -> "MultiPoly":
        """Ring map sending variable i of the block to images[i].

        Variables outside the block are left alone; images live in the same
        var tuple.  Used for group actions (w . f)(x) = f(w^{-1} x).
        """
        off, dim = self._block_span(block)
        if len(images) != dim:
            raise ValueError("dimension mismatch in substitution")
        pow_cache: list[dict[int, MultiPoly]] = [dict() for _ in range(dim)]

        def img_pow(i: int, k: int) -> MultiPoly:
            cache = pow_cache[i]
            got = cache.get(k)
            if got is None:
                got = images[i] ** k
                cache[k] = got
            return got

        out = MultiPoly.zero(self.vars)
        for e, c in self.terms.items():
            rest = list(e)
            blockexp = rest[off:off + dim]
            for i in range(dim):
                rest[off + i] = 0
            piece = MultiPoly(self.vars, {tuple(rest): c})
            for i, k in enumerate(blockexp):
                if k:
                    piece = piece * img_pow(i, k)
            out = out + piece
        return out

    def substitute_linear(self, matrix: Sequence[Sequence[Scalar]], block: int = 0
                          ) -> "MultiPoly":
        """Substitute x_i -> sum_j matrix[i][j] x_j within one block."""
        off, dim = self._block_span(block)
        if len(matrix) != dim or any(len(r) != dim for r in matrix):
            raise ValueError("dimension mismatch in linear substitution")
        images = [
            MultiPoly.linear_form(self.vars, row, offset=off) for row in matrix
        ]
        return self.substitute_block(block, images)

    def embed(self, vars: tuple[VarSpace, ...], offset: int) -> "MultiPoly":
        """View in a larger var tuple, own variables starting at offset."""
        n = sum(v.dim for v in vars)
        own = self.nvars()
        out: dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            e2[offset:offset + own] = e
            out[tuple(e2)] = c
        return MultiPoly(vars, out)

    # -- division by linear forms ------------------------------------------------

    def divide_linear_power(self, alpha: "MultiPoly", m: int) -> "MultiPoly":
        """Exact division by alpha^m for a linear form alpha.

        Raises NotDivisible with the failing remainder as witness.
        """
        if m == 0:
            return self
        coeffs, pivot = _linear_data(alpha)
        out = self
        for _ in range(m):
            out = _divide_linear_once(out, coeffs, pivot, alpha)
        return out

    def alpha_adic(self, alpha: "MultiPoly", upto: int | None = None
                   ) -> list["MultiPoly"]:
        """Coefficients g_s of the expansion f = sum_s g_s alpha^s.

        Each g_s is free of the pivot variable of alpha.  With upto=None the
        full expansion is returned; otherwise only g_0..g_{upto-1} (cheaper).
        """
        coeffs, pivot = _linear_data(alpha)
        inv_piv = _inv(coeffs[pivot])
        rest = [0 if i == pivot else c for i, c in enumerate(coeffs)]
        rest_poly = MultiPoly.linear_form(self.vars, rest).scale(-inv_piv)
        max_e = max((e[pivot] for e in self.terms), default=0)
        rest_pows: list[MultiPoly] = [MultiPoly.const(self.vars, Fraction(1))]
        for _ in range(max_e):
            rest_pows.append(rest_pows[-1] * rest_poly)
        bound = max_e + 1 if upto is None else min(upto, max_e + 1)
        out = [MultiPoly.zero(self.vars) for _ in range(max(bound, 0))]
        for e, c in self.terms.items():
            k = e[pivot]
            base = list(e)
            base[pivot] = 0
            # x_pivot^k = ((inv_piv alpha) + (-inv_piv rest))^k, binomially
            mono = MultiPoly(self.vars, {tuple(base): c})
            for s in range(min(k, bound - 1) + 1):
                piece = mono.scale(comb(k, s) * inv_piv**s) * rest_pows[k - s]
                out[s] = out[s] + piece
        return out

    def valuation(self, alpha: "MultiPoly") -> int:
        """alpha-adic valuation (order of vanishing along Ker alpha)."""
        if not self.terms:
            raise ValueError("valuation of zero polynomial")
        exp = self.alpha_adic(alpha)
        for s, g in enumerate(exp):
            if g:
                return s
        raise AssertionError("nonzero polynomial with empty expansion")

    # -- inspection / output ------------------------------------------------------

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars(), Fraction(0))

    def coefficient(self, exp: Exponent) -> Scalar:
        return self.terms.get(exp, Fraction(0))

    def conjugate_coeffs(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: conj(c) for e, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: _monomial_key(t[0]),
                      reverse=True)

    def leading_term(self) -> tuple[Exponent, Scalar]:
        if not self.terms:
            raise ValueError("leading term of zero")
        return self.sorted_terms()[0]

    def monic(self) -> "MultiPoly":
        _, c = self.leading_term()
        return self.scale(_inv(c))

    def var_names(self) -> list[str]:
        names: list[str] = []
        for v in self.vars:
            names.extend(v.var_names())
        return names

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = self.var_names()
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            cs = c.to_string() if hasattr(c, "to_string") else str(c)
            if factors:
                mono = "*".join(factors)
                if cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append(f"-{mono}")
                elif any(op in cs[1:] for op in "+-"):
                    parts.append(f"({cs})*{mono}")
                else:
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs if not any(op in cs[1:] for op in "+-")
                             else f"({cs})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return self.to_string()

    def to_json(self):
        return [[list(e), scalar_to_json(c)] for e, c in self.sorted_terms()]


def _inv(c: Scalar) -> Scalar:
    from .cyclotomic import inv as _sinv

    return _sinv(c)


def _linear_data(alpha: MultiPoly) -> tuple[list[Scalar], int]:
    n = alpha.nvars()
    coeffs: list[Scalar] = [Fraction(0)] * n
    for e, c in alpha.terms.items():
        if sum(e) != 1:
            raise ValueError("alpha must be a homogeneous linear form")
        coeffs[e.index(1)] = c
    for i, c in enumerate(coeffs):
        if c:
            return coeffs, i
    raise ValueError("alpha must be nonzero")


def _divide_linear_once(f: MultiPoly, coeffs: list[Scalar], pivot: int,
                        alpha: MultiPoly) -> MultiPoly:
    """Single exact division of f by the linear form with given coefficients."""
    inv_piv = _inv(coeffs[pivot])
    rem = f
    out: dict[Exponent, Scalar] = {}
    # Repeatedly cancel the term with the highest pivot exponent.
    while rem.terms:
        best = None
        for e in rem.terms:
            if best is None or (e[pivot], _monomial_key(e)) > (best[pivot],
                                                               _monomial_key(best)):
                best = e
        if best[pivot] == 0:
            raise NotDivisible(rem)
        c = rem.terms[best] * inv_piv
        q = list(best)
        q[pivot] -= 1
        qe = tuple(q)
        prev = out.get(qe)
        out[qe] = c if prev is None else prev + c
        rem = rem - MultiPoly(f.vars, {qe: c}) * alpha
    return MultiPoly(f.vars, {e: c for e, c in out.items() if c})


def monomials_of_degree(vars: tuple[VarSpace, ...], d: int) -> list[Exponent]:
    """All exponent tuples of total degree d, in canonical (graded-lex) order."""
    n = sum(v.dim for v in vars)
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, slot: int):
        if slot == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slot + 1)

    if n == 0:
        return [()] if d == 0 else []
    rec([], d, 0)
    return out

"""The differential-reflection operator algebra and Dunkl operators.

Operators live in the crossed product of differential operators on the
complement of the arrangement with the group algebra.  A DiffReflOp is a
sum of normal-ordered terms

    coefficient(x) . partial^alpha . w

keyed by (alpha, w), where the coefficient is a localized polynomial whose
denominator is a monomial in the arrangement linear forms.  Composition
uses the rewriting rules

    w . f = (w f) . w,   w . d_xi = d_{w xi} . w,   d_xi . f = f . d_xi + f',

and equality of operators is equality of normal forms, which makes the
operator identities checked in this package (commutativity, intertwining,
conjugation formulas) decidable exactly.

Pure differential operators (Res images, shift operators) are DiffReflOps
whose group parts are all the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

from .cyclotomic import Scalar, inv
from .groups import Multiplicity, ReflectionGroup
from .multipoly import MultiPoly, NotDivisible, VarSpace

Partial = tuple[int, ...]


class UnexpectedDenominator(ArithmeticError):
    """An application that must produce a polynomial left a denominator."""


class NotInvariant(ValueError):
    """Res applied to a non-W-invariant operator; carries a witness."""

    def __init__(self, witness: int):
        super().__init__(f"operator not invariant under group element {witness}")
        self.witness = witness


class Frame:
    """Arrangement context tying localized coefficients to a variable tuple.

    deriv_indices are the flat variable slots that partial derivatives act
    on (the x block); act is the group action on polynomials in this frame.
    """

    def __init__(self, group: ReflectionGroup, vars: tuple[VarSpace, ...],
                 deriv_indices: list[int],
                 act: Callable[[int, MultiPoly], MultiPoly]):
        self.group = group
        self.vars = vars
        self.deriv_indices = deriv_indices
        self.act = act
        self.alphas = [
            MultiPoly.linear_form(vars, h.alpha_coeffs,
                                  offset=deriv_indices[0])
            for h in group.hyperplanes
        ]
        self._hyp_action: dict[int, list[tuple[int, Scalar]]] = {}
        self._conj_partial: dict[tuple[int, Partial], dict[Partial, Scalar]] = {}

    def hyperplane_action(self, w: int) -> list[tuple[int, Scalar]]:
        """For each hyperplane h: (h', s) with (w . alpha_h) = s * alpha_h'."""
        got = self._hyp_action.get(w)
        if got is not None:
            return got
        out = []
        for h in range(len(self.alphas)):
            img = self.act(w, self.alphas[h])
            target = None
            for h2, a2 in enumerate(self.alphas):
                e2, c2 = a2.leading_term()
                ci = img.coefficient(e2)
                if ci and img == a2.scale(ci * inv(c2)):
                    target = (h2, ci * inv(c2))
                    break
            if target is None:
                raise ArithmeticError("group action does not permute arrangement")
            out.append(target)
        self._hyp_action[w] = out
        return out

    def conjugated_partial(self, w: int, beta: Partial) -> dict[Partial, Scalar]:
        """w . partial^beta . w^{-1} as a constant-coefficient combination.

        Uses d_{w xi} = sum_j M[j][i] d_j for the matrix M of w.
        """
        key = (w, beta)
        got = self._conj_partial.get(key)
        if got is not None:
            return got
        dim = self.group.dim
        m = self.group.elements[w].matrix
        scratch = (VarSpace("t", dim),)
        acc = MultiPoly.const(scratch, Fraction(1))
        for i, b in enumerate(beta):
            if b:
                form = MultiPoly.linear_form(scratch,
                                             [m[j][i] for j in range(dim)])
                acc = acc * form**b
        out = dict(acc.terms)
        self._conj_partial[key] = out
        return out


def frame_x(group: ReflectionGroup) -> Frame:
    if not hasattr(group, "_frame_x"):
        group._frame_x = Frame(group, group.xvars, list(range(group.dim)),
                               group.act_x)
    return group._frame_x


def frame_joint(group: ReflectionGroup) -> Frame:
    """Joint (lam, x) frame: derivatives act on the x block."""
    if not hasattr(group, "_frame_joint"):
        group._frame_joint = Frame(group, group.jointvars,
                                   list(range(group.dim, 2 * group.dim)),
                                   group.act_joint)
    return group._frame_joint


class LocalizedPoly:
    """num / prod_h alpha_h^{den[h]} in reduced form."""

    __slots__ = ("frame", "num", "den")

    def __init__(self, frame: Frame, num: MultiPoly,
                 den: Optional[dict[int, int]] = None, reduce: bool = True):
        self.frame = frame
        self.num = num
        self.den = dict(den) if den else {}
        if reduce:
            self._reduce()

    def _reduce(self):
        if not self.num:
            self.den = {}
            return
        for h in sorted(self.den):
            p = self.den[h]
            alpha = self.frame.alphas[h]
            while p > 0:
                try:
                    self.num = self.num.divide_linear_power(alpha, 1)
                    p -= 1
                except NotDivisible:
                    break
            if p:
                self.den[h] = p
            else:
                del self.den[h]

    @staticmethod
    def poly(frame: Frame, f: MultiPoly) -> "LocalizedPoly":
        return LocalizedPoly(frame, f, None, reduce=False)

    @staticmethod
    def const(frame: Frame, c: Scalar) -> "LocalizedPoly":
        return LocalizedPoly(frame, MultiPoly.const(frame.vars, c), None,
                             reduce=False)

    def is_polynomial(self) -> bool:
        return not self.den

    def as_poly(self) -> MultiPoly:
        if self.den:
            raise UnexpectedDenominator(f"denominator survived: {self}")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, LocalizedPoly):
            return self.den == other.den and self.num == other.num
        return NotImplemented

    def __add__(self, other: "LocalizedPoly") -> "LocalizedPoly":
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return LocalizedPoly(self.frame, self.num + other.num, self.den)
        keys = set(self.den) | set(other.den)
        num1, num2 = self.num, other.num
        den: dict[int, int] = {}
        for h in keys:
            p1, p2 = self.den.get(h, 0), other.den.get(h, 0)
            p = max(p1, p2)
            den[h] = p
            alpha = self.frame.alphas[h]
            if p > p1:
                num1 = num1 * alpha ** (p - p1)
            if p > p2:
                num2 = num2 * alpha ** (p - p2)
        return LocalizedPoly(self.frame, num1 + num2, den)

    def __neg__(self):
        return LocalizedPoly(self.frame, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LocalizedPoly") -> "LocalizedPoly":
        den = dict(self.den)
        for h, p in other.den.items():
            den[h] = den.get(h, 0) + p
        return LocalizedPoly(self.frame, self.num * other.num, den)

    def scale(self, c: Scalar) -> "LocalizedPoly":
        if not c:
            return LocalizedPoly.poly(self.frame, MultiPoly.zero(self.frame.vars))
        return LocalizedPoly(self.frame, self.num.scale(c), self.den,
                             reduce=False)

    def mul_poly(self, f: MultiPoly) -> "LocalizedPoly":
        return LocalizedPoly(self.frame, self.num * f, self.den)

    def derivative(self, i: int) -> "LocalizedPoly":
        """Partial derivative in the i-th x-variable of the frame."""
        slot = self.frame.deriv_indices[i]
        out = LocalizedPoly(self.frame, self.num.partial(slot), self.den,
                            reduce=False)
        for h, p in self.den.items():
            c = self.frame.alphas[h].coefficient(_unit_exp(self.frame, slot))
            if c:
                den = dict(self.den)
                den[h] = p + 1
                out = out + LocalizedPoly(self.frame,
                                          self.num.scale(-p * c), den)
        return out

    def act(self, w: int) -> "LocalizedPoly":
        num = self.frame.act(w, self.num)
        table = self.frame.hyperplane_action(w)
        den: dict[int, int] = {}
        scal: Scalar = Fraction(1)
        for h, p in self.den.items():
            h2, s = table[h]
            den[h2] = den.get(h2, 0) + p
            scal = scal * inv(s) ** p
        return LocalizedPoly(self.frame, num.scale(scal), den, reduce=False)

    def clear_denominator(self) -> tuple[MultiPoly, dict[int, int]]:
        return self.num, dict(self.den)

    def __repr__(self):
        if not self.den:
            return self.num.to_string()
        dparts = []
        for h in sorted(self.den):
            a = self.frame.alphas[h].to_string()
            p = self.den[h]
            dparts.append(f"({a})" + (f"^{p}" if p > 1 else ""))
        return f"({self.num.to_string()})/" + "".join(dparts)


def _unit_exp(frame: Frame, slot: int) -> tuple[int, ...]:
    n = sum(v.dim for v in frame.vars)
    e = [0] * n
    e[slot] = 1
    return tuple(e)


class DiffReflOp:
    """Normal-ordered element of the differential-reflection algebra."""

    __slots__ = ("frame", "terms")

    def __init__(self, frame: Frame,
                 terms: Optional[dict[tuple[Partial, int], LocalizedPoly]] = None):
        self.frame = frame
        self.terms = terms or {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(frame: Frame) -> "DiffReflOp":
        return DiffReflOp(frame)

    @staticmethod
    def multiplication(frame: Frame, f: LocalizedPoly | MultiPoly) -> "DiffReflOp":
        if isinstance(f, MultiPoly):
            f = LocalizedPoly.poly(frame, f)
        dim = frame.group.dim
        if not f:
            return DiffReflOp(frame)
        return DiffReflOp(frame, {((0,) * dim, 0): f})

    @staticmethod
    def partial(frame: Frame, i: int) -> "DiffReflOp":
        dim = frame.group.dim
        e = [0] * dim
        e[i] = 1
        return DiffReflOp(frame, {(tuple(e), 0):
                                  LocalizedPoly.const(frame, Fraction(1))})

    @staticmethod
    def group_element(frame: Frame, w: int, coeff: Scalar = Fraction(1)
                      ) -> "DiffReflOp":
        dim = frame.group.dim
        return DiffReflOp(frame, {((0,) * dim, w):
                                  LocalizedPoly.const(frame, coeff)})

    # -- algebra -------------------------------------------------------------

    def _put(self, key, c: LocalizedPoly):
        cur = self.terms.get(key)
        c = c if cur is None else cur + c
        if c:
            self.terms[key] = c
        elif key in self.terms:
            del self.terms[key]

    def __add__(self, other: "DiffReflOp") -> "DiffReflOp":
        out = DiffReflOp(self.frame, dict(self.terms))
        for key, c in other.terms.items():
            out._put(key, c)
        return out

    def __neg__(self):
        return DiffReflOp(self.frame, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar) -> "DiffReflOp":
        if not c:
            return DiffReflOp(self.frame)
        return DiffReflOp(self.frame,
                          {k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other: "DiffReflOp") -> "DiffReflOp":
        return self.compose(other)

    def compose(self, other: "DiffReflOp") -> "DiffReflOp":
        """Normal form of self . other."""
        out = DiffReflOp(self.frame)
        mult = self.frame.group.multiply
        for (a1, w1), c1 in self.terms.items():
            for (b2, w2), c2 in other.terms.items():
                c2w = c2.act(w1)
                conj = self.frame.conjugated_partial(w1, b2)
                w = mult(w1, w2)
                # c1 . d^a1 . c2w . (sum_gamma conj[gamma] d^gamma) . w
                for mu, coeff, dmu in _leibniz_derivatives(a1, c2w):
                    base = c1.mul_poly(dmu.num) if not dmu.den else c1 * dmu
                    base = base.scale(coeff) if coeff != 1 else base
                    for gamma, cg in conj.items():
                        key = (tuple(m + g for m, g in zip(mu, gamma)), w)
                        out._put(key, base.scale(cg) if cg != 1 else base)
        return out

    def conjugate_by(self, w: int) -> "DiffReflOp":
        """w . self . w^{-1}."""
        g = DiffReflOp.group_element(self.frame, w)
        gi = DiffReflOp.group_element(self.frame,
                                      self.frame.group.elements[w].inverse)
        return g.compose(self).compose(gi)

    def is_invariant(self, witness: bool = False):
        for w in self.frame.group.generators():
            g = DiffReflOp.group_element(self.frame, w)
            if g.compose(self) != self.compose(g):
                return (False, w) if witness else False
        return (True, None) if witness else True

    # -- application ------------------------------------------------------------

    def apply(self, f: MultiPoly | LocalizedPoly) -> LocalizedPoly:
        if isinstance(f, MultiPoly):
            f = LocalizedPoly.poly(self.frame, f)
        out = LocalizedPoly.poly(self.frame, MultiPoly.zero(self.frame.vars))
        for (a, w), c in self.terms.items():
            g = f.act(w)
            for i, k in enumerate(a):
                for _ in range(k):
                    g = g.derivative(i)
                if not g:
                    break
            if g:
                out = out + c * g
        return out

    def apply_to_poly_strict(self, f: MultiPoly) -> MultiPoly:
        """Apply and certify the output is a true polynomial."""
        return self.apply(f).as_poly()

    # -- structure ---------------------------------------------------------------

    def is_differential(self) -> bool:
        return all(w == 0 for (_, w) in self.terms)

    def order(self) -> int:
        return max((sum(a) for (a, _) in self.terms), default=0)

    def res(self) -> "DiffReflOp":
        """Restriction to invariants: check W-invariance, drop group parts.

        The result agrees with self on every W-invariant function.
        """
        ok, w = self.is_invariant(witness=True)
        if not ok:
            raise NotInvariant(w)
        return self.res_unchecked()

    def res_unchecked(self) -> "DiffReflOp":
        out = DiffReflOp(self.frame)
        for (a, _), c in self.terms.items():
            out._put((a, 0), c)
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffReflOp):
            return NotImplemented
        if len(self.terms) != len(other.terms):
            return False
        for k, c in self.terms.items():
            oc = other.terms.get(k)
            if oc is None or oc != c:
                return False
        return True

    def __repr__(self):
        return self.to_string()

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = [f"d{i + 1}" for i in range(self.frame.group.dim)]
        parts = []
        for (a, w) in sorted(self.terms, key=lambda t: (sum(t[0]), t[0], t[1])):
            c = self.terms[(a, w)]
            piece = f"[{c!r}]"
            ds = "".join(
                f"{names[i]}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(a) if k
            )
            if ds:
                piece += f".{ds}"
            if w:
                piece += f".g{w}"
            parts.append(piece)
        return " + ".join(parts)

    def to_json(self):
        out = []
        for (a, w) in sorted(self.terms, key=lambda t: (sum(t[0]), t[0], t[1])):
            c = self.terms[(a, w)]
            out.append({
                "partial": list(a),
                "element": w,
                "numerator": c.num.to_json(),
                "denominator": sorted(c.den.items()),
            })
        return out


def _leibniz_derivatives(alpha: Partial, f: LocalizedPoly):
    """Yield (mu, multinomial coefficient, d^{alpha-mu} f) for mu <= alpha,
    where mu is the part of d^alpha passing to the right of f."""
    items: list[tuple[Partial, int, LocalizedPoly]] = [
        (alpha, 1, f)
    ]
    # peel one variable at a time
    for i, total in enumerate(alpha):
        if not total:
            continue
        new_items = []
        for mu, coeff, g in items:
            derivs = [g]
            for _ in range(total):
                derivs.append(derivs[-1].derivative(i))
            for j in range(total + 1):
                mu2 = list(mu)
                mu2[i] = j
                if derivs[total - j]:
                    new_items.append((tuple(mu2), coeff * comb(total, j),
                                      derivs[total - j]))
        items = new_items
    return items


# -- Dunkl operators ---------------------------------------------------------


def dunkl_operator(group: ReflectionGroup, k: Multiplicity,
                   direction: int | Sequence[Scalar],
                   frame: Optional[Frame] = None) -> DiffReflOp:
    """The Dunkl operator for a direction xi in V:

        T_xi = d_xi - sum_H (alpha_H(xi)/alpha_H) sum_i n_H k_{H,i} e_{H,i},

    expanded into normal form (the inner sum becomes the group-algebra
    coefficients kappa_H(w) over the cyclic stabilizer of H).
    """
    frame = frame or frame_x(group)
    group.validate_multiplicity(k)
    if isinstance(direction, int):
        xi = [Fraction(1 if i == direction else 0) for i in range(group.dim)]
    else:
        xi = list(direction)
    out = DiffReflOp(frame)
    for i, c in enumerate(xi):
        if c:
            out = out + DiffReflOp.partial(frame, i).scale(c)
    zero_part = (0,) * group.dim
    for h in group.hyperplanes:
        a_xi = sum((h.alpha_coeffs[i] * xi[i] for i in range(group.dim)
                    if h.alpha_coeffs[i] and xi[i]), Fraction(0))
        if not a_xi:
            continue
        for w, kap in group.kappa(h, k).items():
            if kap:
                coeff = LocalizedPoly(
                    frame,
                    MultiPoly.const(frame.vars, -(a_xi * kap)),
                    {h.index: 1}, reduce=False)
                out._put((zero_part, w), coeff)
    return out


def dunkl_apply_poly(group: ReflectionGroup, k: Multiplicity,
                     direction: int | Sequence[Scalar], f: MultiPoly,
                     act=None) -> MultiPoly:
    """Fast application of T_xi to a polynomial.

    Groups the reflection part per hyperplane so the division by alpha_H is
    exact by construction; raises UnexpectedDenominator if it is not (which
    would signal a bug, not user error).
    """
    act = act or group.act_x
    if isinstance(direction, int):
        xi = [Fraction(1 if i == direction else 0) for i in range(group.dim)]
    else:
        xi = list(direction)
    out = MultiPoly.zero(f.vars)
    for i, c in enumerate(xi):
        if c:
            out = out + f.partial(i).scale(c)
    for h in group.hyperplanes:
        a_xi = sum((h.alpha_coeffs[i] * xi[i] for i in range(group.dim)
                    if h.alpha_coeffs[i] and xi[i]), Fraction(0))
        if not a_xi:
            continue
        acc = MultiPoly.zero(f.vars)
        for w, kap in group.kappa(h, k).items():
            if kap:
                acc = acc + act(w, f).scale(kap)
        if not acc:
            continue
        alpha = MultiPoly.linear_form(f.vars, h.alpha_coeffs)
        try:
            quot = acc.divide_linear_power(alpha, 1)
        except NotDivisible as exc:
            raise UnexpectedDenominator(
                f"Dunkl reflection term not divisible by alpha_{h.index}"
            ) from exc
        out = out - quot.scale(a_xi)
    return out


def dunkl_for_polynomial(group: ReflectionGroup, k: Multiplicity,
                         p: MultiPoly, frame: Optional[Frame] = None
                         ) -> DiffReflOp:
    """T_p for p a polynomial in the dual variables (image of the algebra
    map determined by xi -> T_xi on commuting Dunkl operators)."""
    frame = frame or frame_x(group)
    cache: dict[tuple[int, int], DiffReflOp] = {}

    def t_power(i: int, j: int) -> DiffReflOp:
        if j == 0:
            return DiffReflOp.multiplication(
                frame, LocalizedPoly.const(frame, Fraction(1)))
        got = cache.get((i, j))
        if got is None:
            if j == 1:
                got = dunkl_operator(group, k, i, frame)
            else:
                got = t_power(i, j - 1).compose(t_power(i, 1))
            cache[(i, j)] = got
        return got

    out = DiffReflOp(frame)
    for e, c in p.sorted_terms():
        piece: Optional[DiffReflOp] = None
        for i, b in enumerate(e):
            if b:
                factor = t_power(i, b)
                piece = factor if piece is None else piece.compose(factor)
        if piece is None:
            piece = t_power(0, 0)
        out = out + piece.scale(c)
    return out


def dunkl_apply_poly_monomial(group: ReflectionGroup, k: Multiplicity,
                              p: MultiPoly, f: MultiPoly, act=None
                              ) -> MultiPoly:
    """T_p(f) by iterated fast application (no operator composition)."""
    out = MultiPoly.zero(f.vars)
    for e, c in p.sorted_terms():
        g = f
        for i, b in enumerate(e):
            for _ in range(b):
                if not g:
                    break
                g = dunkl_apply_poly(group, k, i, g, act=act)
        out = out + g.scale(c)
    return out


def calogero_moser_operator(group: ReflectionGroup, k: Multiplicity,
                            p: MultiPoly, frame: Optional[Frame] = None
                            ) -> DiffReflOp:
    """L_{p,k} = Res(T_{p,k}) for W-invariant p."""
    return dunkl_for_polynomial(group, k, p, frame).res()


# -- Euler operator and the central element ------------------------------------


def euler_operator(group: ReflectionGroup, k: Multiplicity,
                   basis: Optional[list[Sequence[Scalar]]] = None,
                   dual_basis: Optional[list[Sequence[Scalar]]] = None
                   ) -> DiffReflOp:
    """E(k) = sum_i x_i T_{xi_i, k} for dual bases {x_i}, {xi_i}."""
    frame = frame_x(group)
    out = DiffReflOp(frame)
    n = group.dim
    if basis is None:
        for i in range(n):
            xi = DiffReflOp.multiplication(
                frame, MultiPoly.variable(frame.vars, i))
            out = out + xi.compose(dunkl_operator(group, k, i, frame))
    else:
        for covec, vec in zip(dual_basis, basis):
            xi = DiffReflOp.multiplication(
                frame, MultiPoly.linear_form(frame.vars, covec))
            out = out + xi.compose(dunkl_operator(group, k, vec, frame))
    return out


def central_element_op(group: ReflectionGroup, k: Multiplicity) -> DiffReflOp:
    """z(k) embedded in the operator algebra."""
    from .wreps import central_element

    frame = frame_x(group)
    out = DiffReflOp(frame)
    for w, c in central_element(group, k).items():
        out = out + DiffReflOp.group_element(frame, w, c)
    return out


# -- the bilinear pairing -------------------------------------------------------


def dunkl_pairing(group: ReflectionGroup, k: Multiplicity, p: MultiPoly,
                  q: MultiPoly) -> Scalar:
    """(p, q)_k = T_{p,k}(q)(0) for p in the dual variables, q in C[V]."""
    return dunkl_apply_poly_monomial(group, k, p, q).constant_term()


def dual_dunkl_pairing(group: ReflectionGroup, k: Multiplicity, q: MultiPoly,
                       p: MultiPoly) -> Scalar:
    """(q, p)_k on the dual side: Dunkl operators of the dual representation
    applied to p in C[V*], evaluated at 0."""
    dual = group.dual()
    return dunkl_apply_poly_monomial(dual, k, q, p,
                                     act=dual.act_x).constant_term()


# -- twist automorphisms ---------------------------------------------------------


def twist_by_character(L: DiffReflOp, chi: Sequence[Scalar]) -> DiffReflOp:
    """w -> chi(w) w on normal forms."""
    out = DiffReflOp(L.frame)
    for (a, w), c in L.terms.items():
        out._put((a, w), c.scale(chi[w]))
    return out


def twist_by_one_form(L: DiffReflOp, orbit: int, lam: Scalar) -> DiffReflOp:
    """d_xi -> d_xi + omega(xi) for omega = lam * dlog(delta_C)."""
    frame = L.frame
    group = frame.group
    if not lam:
        return L
    omegas = []
    for i in range(group.dim):
        acc = DiffReflOp.partial(frame, i)
        for hid in group.orbits[orbit]:
            c = group.hyperplanes[hid].alpha_coeffs[i]
            if c:
                acc = acc + DiffReflOp.multiplication(
                    frame, LocalizedPoly(
                        frame, MultiPoly.const(frame.vars, lam * c),
                        {hid: 1}, reduce=False))
        omegas.append(acc)
    out = DiffReflOp(frame)
    for (a, w), c in L.terms.items():
        piece = DiffReflOp.multiplication(frame, c)
        for i, b in enumerate(a):
            for _ in range(b):
                piece = piece.compose(omegas[i])
        piece = piece.compose(DiffReflOp.group_element(frame, w))
        out = out + piece
    return out


def conjugate_by_delta(L: DiffReflOp, orbit: int, a: int) -> DiffReflOp:
    """L -> delta_C^a L delta_C^{-a} (a may be negative)."""
    if a == 0:
        return L
    frame = L.frame
    group = frame.group
    hids = group.orbits[orbit]
    if a > 0:
        left = LocalizedPoly.poly(frame, _delta_power(frame, hids, a))
        right = LocalizedPoly(frame, MultiPoly.const(frame.vars, Fraction(1)),
                              {h: a for h in hids}, reduce=False)
    else:
        left = LocalizedPoly(frame, MultiPoly.const(frame.vars, Fraction(1)),
                             {h: -a for h in hids}, reduce=False)
        right = LocalizedPoly.poly(frame, _delta_power(frame, hids, -a))
    lop = DiffReflOp.multiplication(frame, left)
    rop = DiffReflOp.multiplication(frame, right)
    return lop.compose(L).compose(rop)


def _delta_power(frame: Frame, hids: list[int], a: int) -> MultiPoly:
    out = MultiPoly.const(frame.vars, Fraction(1))
    for h in hids:
        out = out * frame.alphas[h] ** a
    return out

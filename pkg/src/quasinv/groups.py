"""Finite complex reflection groups with their arrangements.

A ReflectionGroup holds the full element list (unitary matrices over a
cyclotomic field), the reflection arrangement (hyperplanes with linear
forms alpha_H, normal vectors v_H, cyclic stabilizers of order n_H and
W-orbits), the invariant Hermitian form, and per-family irreducible
representations.

Built-in families: cyclic(n), the imprimitive groups G(m, p, N) with
p | m (dihedral(m, p) is G(m, p, 2)), and symmetric(N) acting in its
essential (N-1)-dimensional reflection representation in simple-root
coordinates.  Groups can also be generated from explicit matrices.

Conventions, fixed once:
  * group elements act on polynomials by (w . f)(x) = f(w^{-1} x);
  * alpha_H is normalized so its first nonzero coordinate is 1;
  * v_H is determined by alpha_H = (v_H, -) via the Hermitian form;
  * the linear characters of W_H are powers of det restricted to W_H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cyclotomic import CycNumber, Scalar, conj, inv, root_of_unity
from .linalg import RowSpace, kernel_basis
from .multipoly import MultiPoly, VarSpace

Matrix = tuple[tuple[Scalar, ...], ...]


class GroupConstructionError(ValueError):
    pass


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]),
                  Fraction(0)) for j in range(n))
        for i in range(n)
    )


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    n = len(a)
    return tuple(
        sum((a[i][k] * v[k] for k in range(n) if a[i][k] and v[k]), Fraction(0))
        for i in range(n)
    )


def vec_mat(v: Sequence[Scalar], a: Matrix) -> tuple[Scalar, ...]:
    n = len(a)
    return tuple(
        sum((v[k] * a[k][j] for k in range(n) if v[k] and a[k][j]), Fraction(0))
        for j in range(n)
    )


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def mat_det(a: Matrix) -> Scalar:
    n = len(a)
    rows = [list(r) for r in a]
    det: Scalar = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        ic = inv(rows[col][col])
        for r in range(col + 1, n):
            f = rows[r][col]
            if f:
                f = f * ic
                for c in range(col, n):
                    rows[r][c] = rows[r][c] - f * rows[col][c]
    return det


def mat_invert(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        ic = inv(rows[col][col])
        rows[col] = [x * ic for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)


def mat_rank(a: Matrix) -> int:
    space = RowSpace(len(a[0]))
    for row in a:
        space.insert(list(row))
    return space.dim()


@dataclass
class GroupElement:
    index: int
    matrix: Matrix
    det: Scalar
    inverse: int = -1

    def __repr__(self):
        return f"g{self.index}"


@dataclass
class Hyperplane:
    index: int
    alpha_coeffs: tuple[Scalar, ...]
    v_coords: tuple[Scalar, ...]
    n: int
    orbit: int
    stabilizer: list[int]  # element indices of W_H (cyclic, includes identity)


@dataclass(frozen=True)
class Multiplicity:
    """Per-orbit multiplicity vectors k_{C,i}, with an optional integrality
    class function a_C governing fractional values (k_{C,i} = a_C/n_C mod Z).

    Indices are periodic mod n_C.  The normalization k_{C,0} = 0 is required
    by quasi-invariant membership, not by the operator calculus, so it is
    checked where needed rather than enforced here.
    """

    per_orbit: tuple[tuple[Fraction, ...], ...]
    a: Optional[tuple[int, ...]] = None

    @staticmethod
    def make(values: Sequence[Sequence], a: Optional[Sequence[int]] = None
             ) -> "Multiplicity":
        per = tuple(tuple(Fraction(v) for v in orb) for orb in values)
        return Multiplicity(per, tuple(int(x) for x in a) if a is not None
                            else None)

    @staticmethod
    def zero(group: "ReflectionGroup") -> "Multiplicity":
        return Multiplicity(tuple((Fraction(0),) * group.orbit_order(c)
                                  for c in range(len(group.orbits))))

    def value(self, orbit: int, i: int) -> Fraction:
        vec = self.per_orbit[orbit]
        return vec[i % len(vec)]

    def a_of(self, orbit: int) -> int:
        return 0 if self.a is None else self.a[orbit]

    def n_orbits(self) -> int:
        return len(self.per_orbit)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for orb in self.per_orbit for v in orb)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for orb in self.per_orbit for v in orb)

    def qi_normalized(self) -> bool:
        """k_{C,0} = 0 for the plain quasi-invariant definition."""
        return all(orb[0] == 0 for orb in self.per_orbit)

    def co_compatible(self) -> bool:
        """k_{C,i} = a_C / n_C mod Z for every orbit and index."""
        for c, orb in enumerate(self.per_orbit):
            n = len(orb)
            target = Fraction(self.a_of(c), n)
            if any((v - target).denominator != 1 for v in orb):
                return False
        return True

    def __add__(self, other: "Multiplicity") -> "Multiplicity":
        per = tuple(tuple(x + y for x, y in zip(a, b))
                    for a, b in zip(self.per_orbit, other.per_orbit))
        if self.a is None and other.a is None:
            a = None
        else:
            a = tuple(x + y for x, y in zip(
                self.a or (0,) * len(per), other.a or (0,) * len(per)))
        return Multiplicity(per, a)

    def bump(self, orbit: int, i: int, amount=1) -> "Multiplicity":
        """Add `amount` to k_{orbit, i} (index periodic)."""
        per = list(list(orb) for orb in self.per_orbit)
        n = len(per[orbit])
        per[orbit][i % n] += Fraction(amount)
        return Multiplicity(tuple(tuple(o) for o in per), self.a)

    def g_transform(self, orbit: int) -> "Multiplicity":
        """The orbit symmetry k'_{C,i} = k_{C,i-1} - 1/n_C + [i = 0],
        with a' = a - 1_C."""
        per = list(self.per_orbit)
        orb = per[orbit]
        n = len(orb)
        per[orbit] = tuple(
            orb[(i - 1) % n] - Fraction(1, n) + (1 if i == 0 else 0)
            for i in range(n)
        )
        a = list(self.a) if self.a is not None else [0] * len(per)
        a[orbit] -= 1
        return Multiplicity(tuple(per), tuple(a))

    def delta_conj_transform(self, orbit: int) -> "Multiplicity":
        """Effect of conjugation by delta_C: k'_{C,i} = k_{C,i+1} + 1/n_C."""
        per = list(self.per_orbit)
        orb = per[orbit]
        n = len(orb)
        per[orbit] = tuple(orb[(i + 1) % n] + Fraction(1, n) for i in range(n))
        a = list(self.a) if self.a is not None else [0] * len(per)
        a[orbit] += 1
        return Multiplicity(tuple(per), tuple(a))

    def character_shift(self, shifts: Sequence[int]) -> "Multiplicity":
        """Index shift k'_{C,i} = k_{C,i+s_C} from twisting by a character."""
        per = tuple(
            tuple(orb[(i + shifts[c]) % len(orb)] for i in range(len(orb)))
            for c, orb in enumerate(self.per_orbit)
        )
        return Multiplicity(per, self.a)

    def to_string(self) -> str:
        return ";".join(",".join(str(v) for v in orb) for orb in self.per_orbit)

    def to_json(self):
        data = {"orbits": {str(c): [[v.numerator, v.denominator] for v in orb]
                           for c, orb in enumerate(self.per_orbit)}}
        if self.a is not None:
            data["a"] = {str(c): a for c, a in enumerate(self.a)}
        return data

    def __repr__(self):
        s = f"k[{self.to_string()}]"
        if self.a is not None:
            s += f" a={list(self.a)}"
        return s


class ReflectionGroup:
    def __init__(self, name: str, elements: list[GroupElement],
                 form: Matrix, family: dict, cap: int = 200):
        self.name = name
        self.family = family
        self.elements = elements
        self.dim = len(elements[0].matrix)
        self.form = form
        self._mat_index = {e.matrix: e.index for e in elements}
        self._fill_inverses()
        self.conductor = self._compute_conductor()
        self.xvars = (VarSpace("x", self.dim, grade=1),)
        self.lamvars = (VarSpace("l", self.dim, grade=1),)
        self.jointvars = (VarSpace("l", self.dim, grade=1),
                          VarSpace("x", self.dim, grade=-1))
        self.hyperplanes: list[Hyperplane] = []
        self.orbits: list[list[int]] = []
        self._build_arrangement()
        self.reps: list["WRep"] = []
        self._dual: ReflectionGroup | None = None

    # -- construction helpers ---------------------------------------------

    @staticmethod
    def from_matrices(name: str, generators: Sequence[Matrix],
                      form: Optional[Matrix] = None, cap: int = 200,
                      family: Optional[dict] = None) -> "ReflectionGroup":
        if not generators:
            raise GroupConstructionError("need at least one generator")
        n = len(generators[0])
        gens = [tuple(tuple(c if isinstance(c, (Fraction, CycNumber))
                            else Fraction(c) for c in row) for row in g)
                for g in generators]
        ident = identity_matrix(n)
        seen: dict[Matrix, int] = {ident: 0}
        mats: list[Matrix] = [ident]
        queue = [ident]
        while queue:
            m = queue.pop(0)
            for g in gens:
                prod = mat_mul(m, g)
                if prod not in seen:
                    if len(mats) >= cap:
                        raise GroupConstructionError(
                            f"group order exceeds cap {cap}")
                    seen[prod] = len(mats)
                    mats.append(prod)
                    queue.append(prod)
        elements = [GroupElement(i, m, mat_det(m)) for i, m in enumerate(mats)]
        return ReflectionGroup(name, elements,
                               form if form is not None else identity_matrix(n),
                               family or {"kind": "matrices"}, cap)

    def _fill_inverses(self):
        for e in self.elements:
            e.inverse = self._mat_index[mat_invert(e.matrix)]

    def _compute_conductor(self) -> int:
        c = 1
        for e in self.elements:
            for row in e.matrix:
                for x in row:
                    if isinstance(x, CycNumber):
                        c = c * x.conductor // gcd(c, x.conductor)
        return c

    def _build_arrangement(self):
        ident = identity_matrix(self.dim)
        refl_alphas: dict[tuple, int] = {}
        alphas: list[tuple[Scalar, ...]] = []
        for e in self.elements:
            diff = tuple(tuple(e.matrix[i][j] - ident[i][j]
                               for j in range(self.dim))
                         for i in range(self.dim))
            if e.index and mat_rank(diff) == 1:
                row = next(r for r in diff if any(r))
                lead = next(c for c in row if c)
                alpha = tuple(x * inv(lead) if x else Fraction(0) for x in row)
                if alpha not in refl_alphas:
                    refl_alphas[alpha] = len(alphas)
                    alphas.append(alpha)
        form_inv = mat_invert(self.form)
        hyps: list[Hyperplane] = []
        for hid, alpha in enumerate(alphas):
            ker = kernel_basis([list(alpha)], self.dim)
            stab = [e.index for e in self.elements
                    if all(mat_vec(e.matrix, b) == tuple(b) for b in ker)]
            # alpha_H = (v_H, -): v_H = conj(G^{-1} alpha) for Hermitian G
            v = tuple(conj(x) for x in mat_vec(form_inv, list(alpha)))
            hyps.append(Hyperplane(hid, alpha, v, len(stab), -1, stab))
        # W-orbits on hyperplanes: alpha o w^{-1}, normalized
        orbit_of = {h: -1 for h in range(len(hyps))}
        orbits: list[list[int]] = []
        for h in range(len(hyps)):
            if orbit_of[h] >= 0:
                continue
            oid = len(orbits)
            batch = [h]
            orbit_of[h] = oid
            while batch:
                cur = batch.pop()
                for e in self.elements:
                    c = vec_mat(hyps[cur].alpha_coeffs,
                                self.elements[e.inverse].matrix)
                    lead = next(x for x in c if x)
                    c = tuple(x * inv(lead) if x else Fraction(0) for x in c)
                    other = refl_alphas[c]
                    if orbit_of[other] < 0:
                        orbit_of[other] = oid
                        batch.append(other)
            orbits.append(sorted(i for i, o in orbit_of.items() if o == oid))
        for h in hyps:
            h.orbit = orbit_of[h.index]
        self.hyperplanes = hyps
        self.orbits = orbits

    # -- basic queries ----------------------------------------------------

    def order(self) -> int:
        return len(self.elements)

    def orbit_order(self, orbit: int) -> int:
        return self.hyperplanes[self.orbits[orbit][0]].n

    def multiply(self, i: int, j: int) -> int:
        return self._mat_index[mat_mul(self.elements[i].matrix,
                                       self.elements[j].matrix)]

    def reflections(self) -> list[int]:
        out = []
        for h in self.hyperplanes:
            out.extend(w for w in h.stabilizer if w != 0)
        return sorted(out)

    def element_order(self, i: int) -> int:
        cur, n = i, 1
        while cur != 0:
            cur = self.multiply(cur, i)
            n += 1
        return n

    def _subgroup_closure(self, seed: set[int]) -> set[int]:
        known = set(seed) | {0}
        queue = list(known)
        while queue:
            a = queue.pop()
            for b in list(known):
                for prod in (self.multiply(a, b), self.multiply(b, a)):
                    if prod not in known:
                        known.add(prod)
                        queue.append(prod)
        return known

    def generators(self) -> list[int]:
        """A small deterministic generating set (greedy by element index)."""
        if hasattr(self, "_generators"):
            return self._generators
        gens: list[int] = []
        known = {0}
        for i in range(1, self.order()):
            if i not in known:
                gens.append(i)
                known = self._subgroup_closure(known | {i})
                if len(known) == self.order():
                    break
        self._generators = gens
        return gens

    def conjugacy_classes(self) -> list[list[int]]:
        seen = set()
        classes = []
        for i in range(self.order()):
            if i in seen:
                continue
            cls = set()
            for g in range(self.order()):
                cls.add(self.multiply(self.multiply(g, i),
                                      self.elements[g].inverse))
            classes.append(sorted(cls))
            seen |= cls
        return classes

    def stabilizer_det_powers(self, h: Hyperplane) -> list[tuple[int, Scalar]]:
        """(element index, det value) over W_H, identity first."""
        pairs = [(w, self.elements[w].det) for w in h.stabilizer]
        return pairs

    # -- actions on polynomials --------------------------------------------

    def act_x(self, w: int, f: MultiPoly, block: int = 0) -> MultiPoly:
        """(w . f)(x) = f(w^{-1} x) on the x-variable block."""
        return f.substitute_linear(self.elements[self.elements[w].inverse].matrix,
                                   block=block)

    def act_dual(self, w: int, p: MultiPoly, block: int = 0) -> MultiPoly:
        """(w . p)(lam) = p(w^{-1} lam) on a dual-variable block."""
        m = self.elements[w].matrix
        mt = tuple(tuple(m[j][i] for j in range(self.dim))
                   for i in range(self.dim))
        return p.substitute_linear(mt, block=block)

    def act_joint(self, w: int, f: MultiPoly) -> MultiPoly:
        """Diagonal action on C[V* x V]: block 0 is dual, block 1 is x."""
        return self.act_x(w, self.act_dual(w, f, block=0), block=1)

    def alpha_poly(self, h: Hyperplane | int, vars=None) -> MultiPoly:
        if isinstance(h, int):
            h = self.hyperplanes[h]
        return MultiPoly.linear_form(vars or self.xvars, h.alpha_coeffs)

    def v_poly(self, h: Hyperplane | int, vars=None) -> MultiPoly:
        if isinstance(h, int):
            h = self.hyperplanes[h]
        return MultiPoly.linear_form(vars or self.lamvars, h.v_coords)

    def idempotent_apply(self, h: Hyperplane | int, i: int, f: MultiPoly
                         ) -> MultiPoly:
        """e_{H,i}(f) = (1/n_H) sum_{w in W_H} det(w)^{-i} (w . f)."""
        if isinstance(h, int):
            h = self.hyperplanes[h]
        out = MultiPoly.zero(f.vars)
        for w in h.stabilizer:
            d = self.elements[w].det
            coeff = inv(d) ** (i % h.n) if i % h.n else Fraction(1)
            out = out + self.act_x(w, f).scale(coeff)
        return out.scale(Fraction(1, h.n))

    def relative_invariant(self, scope: str = "all",
                           orbit: Optional[int] = None) -> MultiPoly:
        """delta, delta_C (x-side) and their duals delta*, delta*_C (lam-side).

        scope: 'all' | 'orbit' | 'dual-all' | 'dual-orbit'.
        """
        dual = scope.startswith("dual")
        hyps = (self.hyperplanes if scope in ("all", "dual-all")
                else [self.hyperplanes[i] for i in self.orbits[orbit]])
        vars = self.lamvars if dual else self.xvars
        out = MultiPoly.const(vars, Fraction(1))
        for h in hyps:
            out = out * (self.v_poly(h, vars) if dual
                         else self.alpha_poly(h, vars))
        return out

    def delta_x(self, orbit: Optional[int] = None, vars=None) -> MultiPoly:
        hyps = (self.hyperplanes if orbit is None
                else [self.hyperplanes[i] for i in self.orbits[orbit]])
        vars = vars or self.xvars
        out = MultiPoly.const(vars, Fraction(1))
        for h in hyps:
            out = out * self.alpha_poly(h, vars)
        return out

    def det_orbit_char(self, orbit: int, w: int) -> Scalar:
        """det_C(w): product of det over the reflection part in orbit C.

        Computed as the transformation character of delta_C: w . delta_C =
        det_C(w)^{-1} delta_C.
        """
        dc = self.delta_x(orbit)
        img = self.act_x(w, dc)
        le, lc = dc.leading_term()
        ic = img.coefficient(le)
        # img = det_C(w)^{-1} dc, both monomials known up to scalar
        return inv(ic * inv(lc))

    # -- invariant theory ----------------------------------------------------

    def fundamental_invariants(self) -> tuple[list[int], list[MultiPoly]]:
        """Degrees and explicit basic invariants, per family."""
        kind = self.family.get("kind")
        x = [MultiPoly.variable(self.xvars, i) for i in range(self.dim)]
        if kind == "cyclic":
            n = self.family["n"]
            return [n], [x[0] ** n]
        if kind == "imprimitive":
            m, p, nn = (self.family[k] for k in ("m", "p", "N"))
            polys = []
            degrees = []
            xm = [xi**m for xi in x]
            for r in range(1, nn):
                er = MultiPoly.zero(self.xvars)
                for combo in itertools.combinations(range(nn), r):
                    t = MultiPoly.const(self.xvars, Fraction(1))
                    for i in combo:
                        t = t * xm[i]
                    er = er + t
                polys.append(er)
                degrees.append(m * r)
            prod = MultiPoly.const(self.xvars, Fraction(1))
            for xi in x:
                prod = prod * xi
            polys.append(prod ** (m // p))
            degrees.append(nn * m // p)
            order = sorted(range(len(degrees)), key=lambda i: degrees[i])
            return [degrees[i] for i in order], [polys[i] for i in order]
        if kind == "symmetric":
            nn = self.family["N"]
            coords = []
            for i in range(nn):
                coeffs = [Fraction(0)] * self.dim
                if i < self.dim:
                    coeffs[i] = Fraction(1)
                if i > 0:
                    coeffs[i - 1] = Fraction(-1)
                coords.append(MultiPoly.linear_form(self.xvars, coeffs))
            degrees, polys = [], []
            for d in range(2, nn + 1):
                ps = MultiPoly.zero(self.xvars)
                for c in coords:
                    ps = ps + c**d
                degrees.append(d)
                polys.append(ps)
            return degrees, polys
        raise GroupConstructionError(
            f"no fundamental invariants attached for family {kind!r}")

    def fundamental_invariants_dual(self) -> tuple[list[int], list[MultiPoly]]:
        """Invariants of the dual action: the star images of the basic
        invariants, as polynomials in the lam block.

        For p(lam) W-invariant these are the symbols of the commuting
        Calogero-Moser operators.
        """
        degrees, polys = self.fundamental_invariants()
        return degrees, [self.star_x_to_lam(f) for f in polys]

    def star_x_to_lam(self, f: MultiPoly) -> MultiPoly:
        """The antilinear W-equivariant isomorphism C[V] -> C[V*] induced
        by the form: conjugate coefficients and substitute the star images
        of the coordinate covectors."""
        form_inv = mat_invert(self.form)
        images = [
            MultiPoly.linear_form(
                self.lamvars, [conj(form_inv[j][i]) for j in range(self.dim)])
            for i in range(self.dim)
        ]
        g = MultiPoly(self.lamvars, {e: conj(c) for e, c in f.terms.items()})
        return g.substitute_block(0, images)

    def star_lam_to_x(self, p: MultiPoly) -> MultiPoly:
        """Inverse star map C[V*] -> C[V]: lam_i -> sum_j G_{ij} x_j with
        conjugated coefficients."""
        images = [
            MultiPoly.linear_form(self.xvars,
                                  [self.form[i][j] for j in range(self.dim)])
            for i in range(self.dim)
        ]
        g = MultiPoly(self.xvars, {e: conj(c) for e, c in p.terms.items()})
        return g.substitute_block(0, images)

    def reynolds(self, f: MultiPoly) -> MultiPoly:
        out = MultiPoly.zero(f.vars)
        for e in self.elements:
            out = out + self.act_x(e.index, f)
        return out.scale(Fraction(1, self.order()))

    # -- dual group -----------------------------------------------------------

    def dual(self) -> "ReflectionGroup":
        """The same abstract group acting on V* (inverse-transpose matrices).

        Hyperplane data is inherited (alpha and v swap roles), keeping the
        normalization scales consistent with the primal arrangement.
        """
        if self._dual is not None:
            return self._dual
        n = self.dim
        elems = []
        for e in self.elements:
            m = self.elements[e.inverse].matrix
            mt = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
            elems.append(GroupElement(e.index, mt, inv(e.det)))
        dualform = mat_invert(self.form)
        dual = ReflectionGroup.__new__(ReflectionGroup)
        dual.name = self.name + "*"
        dual.family = {"kind": "dual", "of": self.family}
        dual.elements = elems
        dual.dim = n
        dual.form = dualform
        dual._mat_index = {e.matrix: e.index for e in elems}
        for e in elems:
            e.inverse = self.elements[e.index].inverse
        dual.conductor = self.conductor
        dual.xvars = self.lamvars
        dual.lamvars = self.xvars
        dual.jointvars = (VarSpace("x", n, grade=1), VarSpace("l", n, grade=-1))
        dual.hyperplanes = [
            Hyperplane(h.index, h.v_coords, h.alpha_coeffs, h.n, h.orbit,
                       list(h.stabilizer))
            for h in self.hyperplanes
        ]
        dual.orbits = [list(o) for o in self.orbits]
        dual.reps = []
        dual._dual = self
        self._dual = dual
        return dual

    # -- multiplicity helpers ---------------------------------------------------

    def multiplicity(self, values, a=None) -> Multiplicity:
        """Build a Multiplicity, padding each orbit list to length n_C.

        A list of length n_C - 1 is read as (0, k_1, ..., k_{n_C-1}).
        """
        if isinstance(values, Multiplicity):
            return values
        per = []
        for c, vals in enumerate(values):
            n = self.orbit_order(c)
            vals = [Fraction(v) for v in vals]
            if len(vals) == n - 1:
                vals = [Fraction(0)] + vals
            if len(vals) != n:
                raise ValueError(
                    f"orbit {c} expects {n} (or {n - 1}) entries, got {len(vals)}")
            per.append(tuple(vals))
        return Multiplicity(tuple(per), tuple(a) if a is not None else None)

    def validate_multiplicity(self, k: Multiplicity):
        if k.n_orbits() != len(self.orbits):
            raise ValueError("multiplicity orbit count mismatch")
        for c, orb in enumerate(k.per_orbit):
            if len(orb) != self.orbit_order(c):
                raise ValueError(f"orbit {c} multiplicity length mismatch")

    def kappa(self, h: Hyperplane, k: Multiplicity) -> dict[int, Scalar]:
        """kappa_H(w) = sum_i k_{H,i} det(w)^{-i} for w in W_H.

        These are the group-algebra coefficients of the reflection part of
        the Dunkl operator at H (after summing the idempotents).
        """
        out: dict[int, Scalar] = {}
        for w in h.stabilizer:
            d = self.elements[w].det
            dinv = inv(d)
            acc: Scalar = Fraction(0)
            power: Scalar = Fraction(1)
            for i in range(h.n):
                kv = k.value(h.orbit, i)
                if kv:
                    acc = acc + kv * power
                power = power * dinv
            out[w] = acc
        return out

    def __repr__(self):
        return (f"ReflectionGroup({self.name}, order={self.order()}, "
                f"dim={self.dim}, hyperplanes={len(self.hyperplanes)})")


# -- built-in families --------------------------------------------------------


def _root_log(value: Scalar, m: int) -> int:
    for t in range(m):
        if value == root_of_unity(t, m):
            return t
    raise ValueError(f"{value} is not an m-th root of unity (m={m})")


def cyclic_group(n: int, cap: int = 200) -> ReflectionGroup:
    if n < 2:
        raise GroupConstructionError("cyclic(n) needs n >= 2")
    if n > cap:
        raise GroupConstructionError(f"group order exceeds cap {cap}")
    elements = []
    for t in range(n):
        z = root_of_unity(t, n)
        elements.append(GroupElement(t, ((z,),), z))
    g = ReflectionGroup(f"cyclic({n})", elements, identity_matrix(1),
                        {"kind": "cyclic", "n": n}, cap)
    from .wreps import attach_cyclic_reps

    attach_cyclic_reps(g)
    return g


def imprimitive_group(m: int, p: int, N: int, cap: int = 200
                      ) -> ReflectionGroup:
    """G(m, p, N): monomial N x N matrices with m-th root of unity entries
    whose phase product is an (m/p)-th root of unity."""
    if m < 1 or N < 1 or p < 1 or m % p:
        raise GroupConstructionError("G(m,p,N) requires p | m, m,N >= 1")
    if N == 1:
        return cyclic_group(m // p, cap)
    order = m**N * _factorial(N) // p
    if order > cap:
        raise GroupConstructionError(f"group order {order} exceeds cap {cap}")
    elements = []
    decor = []
    idx = 0
    for perm in itertools.permutations(range(N)):
        for phases in itertools.product(range(m), repeat=N):
            if sum(phases) % p:
                continue
            mat = [[Fraction(0)] * N for _ in range(N)]
            for j in range(N):
                mat[perm[j]][j] = root_of_unity(phases[perm[j]], m)
            mt = tuple(tuple(r) for r in mat)
            det = root_of_unity(sum(phases), m) * _perm_sign(perm)
            elements.append(GroupElement(idx, mt, det))
            decor.append((perm, phases))
            idx += 1
    # identity must be element 0
    ident = identity_matrix(N)
    i0 = next(e.index for e in elements if e.matrix == ident)
    if i0 != 0:
        elements[0], elements[i0] = elements[i0], elements[0]
        elements[0].index, elements[i0].index = 0, i0
        decor[0], decor[i0] = decor[i0], decor[0]
    name = f"G({m},{p},{N})"
    g = ReflectionGroup(name, elements, identity_matrix(N),
                        {"kind": "imprimitive", "m": m, "p": p, "N": N,
                         "decor": decor}, cap)
    from .wreps import attach_imprimitive_rank2_reps

    if N == 2 and p in (1, m):
        attach_imprimitive_rank2_reps(g)
    return g


def dihedral_group(m: int, p: int, cap: int = 200) -> ReflectionGroup:
    if p not in (1, m):
        raise GroupConstructionError("dihedral(m, p) needs p in {1, m}")
    return imprimitive_group(m, p, 2, cap)


def symmetric_group(N: int, cap: int = 200) -> ReflectionGroup:
    """S_N in its essential reflection representation (simple-root basis)."""
    if N < 2:
        raise GroupConstructionError("symmetric(N) needs N >= 2")
    if _factorial(N) > cap:
        raise GroupConstructionError(f"group order exceeds cap {cap}")
    dim = N - 1
    elements = []
    perms = list(itertools.permutations(range(N)))
    perms.sort()
    # identity is lexicographically first
    for idx, perm in enumerate(perms):
        mat = _perm_root_matrix(perm, N)
        elements.append(GroupElement(idx, mat, Fraction(_perm_sign(perm))))
    form = tuple(
        tuple(Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0))
              for j in range(dim))
        for i in range(dim)
    )
    g = ReflectionGroup(f"symmetric({N})", elements, form,
                        {"kind": "symmetric", "N": N, "decor": perms}, cap)
    from .wreps import attach_symmetric_reps

    attach_symmetric_reps(g)
    return g


def _perm_root_matrix(perm: tuple[int, ...], N: int) -> Matrix:
    """Matrix of the permutation on the sum-zero subspace in the basis
    b_j = e_j - e_{j+1}: expresses perm(b_j) back in the b-basis."""
    dim = N - 1
    cols = []
    for j in range(dim):
        image = [Fraction(0)] * N  # coords in e-basis
        image[perm[j]] += 1
        image[perm[j + 1]] -= 1
        # convert sum-zero e-coordinates to b-coordinates:
        # if v = sum c_i e_i with sum c_i = 0 then v = sum_j (c_1+..+c_j) b_j
        coords = []
        acc = Fraction(0)
        for i in range(dim):
            acc += image[i]
            coords.append(acc)
        cols.append(coords)
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def builtin_family(spec: str | dict, cap: int = 200) -> ReflectionGroup:
    """Build a group from a spec like 'cyclic:3', 'dihedral:3:3',
    'symmetric:4', 'G:4:1:2', or a JSON-style dict."""
    if isinstance(spec, dict):
        fam = spec.get("family")
        if fam == "cyclic":
            return cyclic_group(spec["n"], cap)
        if fam == "dihedral":
            return dihedral_group(spec["m"], spec["p"], cap)
        if fam == "symmetric":
            return symmetric_group(spec["N"], cap)
        if fam == "G":
            return imprimitive_group(spec["m"], spec["p"], spec["N"], cap)
        if fam == "matrices":
            gens = [tuple(tuple(_scalar_from_json(c) for c in row)
                          for row in mat) for mat in spec["generators"]]
            return ReflectionGroup.from_matrices(
                spec.get("name", "custom"), gens, cap=cap)
        raise GroupConstructionError(f"unknown family {fam!r}")
    parts = spec.split(":")
    kind = parts[0]
    args = [int(x) for x in parts[1:]]
    if kind == "cyclic":
        return cyclic_group(args[0], cap)
    if kind == "dihedral":
        return dihedral_group(args[0], args[1] if len(args) > 1 else args[0],
                              cap)
    if kind == "symmetric":
        return symmetric_group(args[0], cap)
    if kind == "G":
        return imprimitive_group(args[0], args[1], args[2], cap)
    raise GroupConstructionError(f"unknown group spec {spec!r}")


def _scalar_from_json(data) -> Scalar:
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, list):
        return Fraction(data[0], data[1])
    if isinstance(data, dict):
        return CycNumber.from_json(data)
    raise ValueError(f"bad scalar spec {data!r}")


def parse_multiplicity(group: ReflectionGroup, text: str,
                       a_text: Optional[str] = None) -> Multiplicity:
    """Parse CLI multiplicity strings: per-orbit comma lists joined by ';'.

    A single-orbit list may omit the leading k_{C,0} = 0 entry.
    """
    orbit_parts = text.split(";")
    if len(orbit_parts) == 1 and len(group.orbits) > 1:
        orbit_parts = orbit_parts * len(group.orbits)
    values = [[Fraction(v) for v in part.split(",")] for part in orbit_parts]
    a = None
    if a_text is not None:
        a = [int(v) for v in a_text.split(";")]
    return group.multiplicity(values, a)

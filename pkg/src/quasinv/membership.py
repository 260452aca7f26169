"""Quasi-invariant membership tests and graded bases.

Membership of f in Q_k is the congruence

    e_{H,-i-a_H}(f) = 0  mod <alpha_H>^{n_H k_{H,i}}     for all H, i,

and two independent routes to it are implemented:

  * the idempotent route (`is_quasi_invariant`): apply the stabilizer
    idempotent and divide by the linear form, exactly;
  * the normal-expansion route (`s_set_membership`): expand f along the
    hyperplane normal and require that only exponents in the allowed set
    S_H survive (this is also what the basis solver uses, degree by
    degree, as its linear conditions).

Fractional multiplicities are admitted when an integrality class function
a_C is supplied with n_H k_{H,i} integral and k_{C,i} = a_C/n_C mod Z.

Bases are solved per degree; the solution space is split along the
isotypes of the diagonal subgroup of W first (monomials are grouped by
their diagonal character), which block-diagonalizes the linear systems
for the monomial-matrix families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cyclotomic import Scalar, inv
from .groups import Hyperplane, Multiplicity, ReflectionGroup
from .linalg import RowSpace, kernel_basis
from .multipoly import MultiPoly, NotDivisible, monomials_of_degree


class IncompatibleMultiplicity(ValueError):
    """Fractional k without a consistent integrality class function."""


@dataclass
class MembershipWitness:
    hyperplane: int
    index: int
    remainder: MultiPoly

    def __repr__(self):
        return (f"witness(H={self.hyperplane}, i={self.index}, "
                f"remainder={self.remainder})")


@dataclass(frozen=True)
class PeriodicSet:
    """Eventually periodic subset of Z: per residue class r mod period,
    all integers >= starts[r] congruent to r (starts[r] = None: empty)."""

    period: int
    starts: tuple[Optional[int], ...]

    def __contains__(self, s: int) -> bool:
        m = self.starts[s % self.period]
        return m is not None and s >= m

    def min_in_class(self, r: int) -> Optional[int]:
        return self.starts[r % self.period]

    def members_upto(self, bound: int) -> list[int]:
        out = [s for s in range(bound + 1) if s in self]
        return out

    def complement_upto(self, bound: int) -> list[int]:
        return [s for s in range(bound + 1) if s not in self]


def normal_expansion(f: MultiPoly, alpha: Sequence[Scalar],
                     v: Sequence[Scalar], offset: int = 0,
                     upto: Optional[int] = None) -> list[MultiPoly]:
    """Expansion of f along the normal vector v of the hyperplane Ker alpha:

        f(pi(x) + T v) = sum_s c_s(pi(x)) T^s,

    where pi is the projection onto the hyperplane along v.  The returned
    coefficients c_s are polynomials constant along v (functions on the
    hyperplane), in the same variables as f; the block of hyperplane
    coordinates starts at `offset`.

    f lies in <alpha>^m iff c_s = 0 for all s < m, and for w in the cyclic
    stabilizer, (w . f)_s = det(w)^{-s} f_s, which is what gives membership
    conditions their residue structure.
    """
    n = len(alpha)
    aval = sum((alpha[i] * v[i] for i in range(n) if alpha[i] and v[i]),
               Fraction(0))
    if not aval:
        raise ValueError("normal vector lies in the hyperplane")
    ia = inv(aval)
    tau = MultiPoly.linear_form(f.vars, [a * ia for a in alpha], offset=offset)
    nslots = f.nvars()
    # T-coefficient lists for the images of the block variables
    img_pows: list[list[list[MultiPoly]]] = []
    for i in range(n):
        base = MultiPoly.variable(f.vars, offset + i)
        if v[i]:
            lin0 = base - tau.scale(v[i])
            lin1 = MultiPoly.const(f.vars, v[i])
            img_pows.append([[MultiPoly.const(f.vars, Fraction(1))],
                             [lin0, lin1]])
        else:
            img_pows.append([[MultiPoly.const(f.vars, Fraction(1))], [base]])

    def image_power(i: int, p: int) -> list[MultiPoly]:
        pows = img_pows[i]
        while len(pows) <= p:
            pows.append(_tpoly_mul(pows[-1], pows[1], upto))
        return pows[p]

    out: list[MultiPoly] = []
    for e, c in f.terms.items():
        rest = list(e)
        block = rest[offset:offset + n]
        for i in range(n):
            rest[offset + i] = 0
        acc = [MultiPoly(f.vars, {tuple(rest): c})]
        for i, p in enumerate(block):
            if p:
                acc = _tpoly_mul(acc, image_power(i, p), upto)
        for s, g in enumerate(acc):
            while len(out) <= s:
                out.append(MultiPoly.zero(f.vars))
            out[s] = out[s] + g
    while out and not out[-1]:
        out.pop()
    return out


def _tpoly_mul(a: list[MultiPoly], b: list[MultiPoly],
               upto: Optional[int]) -> list[MultiPoly]:
    bound = len(a) + len(b) - 1
    if upto is not None:
        bound = min(bound, upto)
    if not a or not b:
        return []
    out = [MultiPoly.zero(a[0].vars) for _ in range(bound)]
    for i, x in enumerate(a):
        if not x or i >= bound:
            continue
        for j, y in enumerate(b):
            if i + j >= bound:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _check_k(group: ReflectionGroup, k: Multiplicity):
    group.validate_multiplicity(k)
    for c, orb in enumerate(k.per_orbit):
        n = len(orb)
        for v in orb:
            if (v * n).denominator != 1:
                raise IncompatibleMultiplicity(
                    f"n_C k_(C,i) = {n * v} is not an integer")
    if not k.is_integral():
        if k.a is None:
            raise IncompatibleMultiplicity(
                "fractional multiplicities need the class function a")
        if not k.co_compatible():
            raise IncompatibleMultiplicity(
                "k_(C,i) and a_C/n_C disagree mod Z")


def normal_expansion_sets(group: ReflectionGroup, k: Multiplicity,
                          h: Hyperplane | int) -> tuple[PeriodicSet, PeriodicSet]:
    """The allowed exponent set S of normal expansions of members of Q_k
    along H, and R = {r : r + S is contained in S} (integral k).

    S = union_i { n_H k_{H,i} + i + n_H Z_+ }.
    """
    if isinstance(h, int):
        h = group.hyperplanes[h]
    if not k.is_integral():
        raise IncompatibleMultiplicity("normal expansion sets need integral k")
    s = allowed_exponents(group, k, h)
    n = h.n
    r_starts = []
    for rho in range(n):
        # r = rho + n j, smallest j >= 0 with r + start_c >= start_{c+rho}
        lo = 0
        ok = True
        for c in range(n):
            a, b = s.starts[c], s.starts[(c + rho) % n]
            if a is None or b is None:
                ok = False
                break
            need = b - a  # r >= need
            lo = max(lo, need)
        if not ok:
            r_starts.append(None)
            continue
        # round lo up into the residue class rho
        rem = (lo - rho) % n
        if rem:
            lo += n - rem
        r_starts.append(lo)
    return s, PeriodicSet(n, tuple(r_starts))


def allowed_exponents(group: ReflectionGroup, k: Multiplicity,
                      h: Hyperplane | int) -> PeriodicSet:
    """Exponent classes allowed in the normal expansion along H, with the
    twist shift a_H: class (i + a_H) mod n_H starts at n_H k_{H,i} + i + a_H
    ... i.e. the s-values with s = i + a_H (mod n), s >= n_H k_{H,i}."""
    if isinstance(h, int):
        h = group.hyperplanes[h]
    n = h.n
    a = k.a_of(h.orbit)
    starts: list[Optional[int]] = [None] * n
    for i in range(n):
        m = k.value(h.orbit, i) * n
        if m.denominator != 1:
            raise IncompatibleMultiplicity("n_H k_{H,i} must be integral")
        rho = (i + a) % n
        lo = int(m)
        # smallest member of the class rho that is >= lo (and >= 0)
        lo = max(lo, 0)
        rem = (lo - rho) % n
        if rem:
            lo += n - rem
        starts[rho] = lo if starts[rho] is None else min(starts[rho], lo)
    return PeriodicSet(n, tuple(starts))


def is_quasi_invariant(group: ReflectionGroup, f: MultiPoly, k: Multiplicity
                       ) -> tuple[bool, Optional[MembershipWitness]]:
    """Idempotent-route membership test of f in Q_k, with failure witness."""
    _check_k(group, k)
    for h in group.hyperplanes:
        a = k.a_of(h.orbit)
        alpha = group.alpha_poly(h, f.vars)
        for i in range(h.n):
            m = int(k.value(h.orbit, i) * h.n)
            if m <= 0:
                continue
            g = _idempotent_in_vars(group, h, (-i - a) % h.n, f)
            if not g:
                continue
            try:
                g.divide_linear_power(alpha, m)
            except NotDivisible as exc:
                return False, MembershipWitness(h.index, i, exc.remainder)
    return True, None


def _idempotent_in_vars(group: ReflectionGroup, h: Hyperplane, i: int,
                        f: MultiPoly) -> MultiPoly:
    out = MultiPoly.zero(f.vars)
    for w in h.stabilizer:
        d = group.elements[w].det
        coeff = inv(d) ** i if i else Fraction(1)
        out = out + f.substitute_linear(
            group.elements[group.elements[w].inverse].matrix).scale(coeff)
    return out.scale(Fraction(1, h.n))


def s_set_membership(group: ReflectionGroup, f: MultiPoly, k: Multiplicity
                     ) -> tuple[bool, Optional[tuple[int, int, MultiPoly]]]:
    """Normal-expansion membership test: along each H only exponents in the
    allowed set may appear.  Independent of the idempotent route."""
    _check_k(group, k)
    for h in group.hyperplanes:
        allowed = allowed_exponents(group, k, h)
        comps = normal_expansion(f, h.alpha_coeffs, h.v_coords)
        for s, g in enumerate(comps):
            if g and s not in allowed:
                return False, (h.index, s, g)
    return True, None


def compute_ak_multiplicity(group: ReflectionGroup, k: Multiplicity
                            ) -> Multiplicity:
    """The multiplicity k' with A_k = {p : p Q_k in Q_k} = Q_{k'},
    decoded from the stabilizer sets R of the normal expansions."""
    per = []
    for c in range(len(group.orbits)):
        h = group.hyperplanes[group.orbits[c][0]]
        _, r = normal_expansion_sets(group, k, h)
        n = h.n
        vals = []
        for i in range(n):
            m = r.min_in_class(i)
            if m is None:
                raise ArithmeticError("R set empty in a residue class (bug)")
            vals.append(Fraction(m - i, n))
        per.append(vals)
    return group.multiplicity(per)


# -- per-degree bases -----------------------------------------------------------


@dataclass
class QIBasis:
    group: ReflectionGroup
    k: Multiplicity
    max_deg: int
    per_degree: list[list[MultiPoly]] = field(default_factory=list)

    def dims(self) -> list[int]:
        return [len(b) for b in self.per_degree]

    def all_elements(self) -> list[MultiPoly]:
        return [f for b in self.per_degree for f in b]

    def contains(self, f: MultiPoly) -> bool:
        """Exact span membership, degree by degree."""
        for d, comp in f.homogeneous_components():
            if d > self.max_deg:
                raise ValueError("degree exceeds basis range")
            basis = self.per_degree[d]
            exps = monomials_of_degree(self.group.xvars, d)
            index = {e: i for i, e in enumerate(exps)}
            space = RowSpace(len(exps))
            for g in basis:
                space.insert(_poly_vector(g, index))
            if not space.contains(_poly_vector(comp, index)):
                return False
        return True


def _poly_vector(f: MultiPoly, index: dict) -> list[Scalar]:
    v: list[Scalar] = [Fraction(0)] * len(index)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def _diagonal_classes(group: ReflectionGroup, exps: list[tuple[int, ...]]
                      ) -> list[list[int]]:
    """Split monomial indices by their character under the diagonal
    subgroup of W (a grading preserved by the membership conditions)."""
    diag = [e for e in group.elements
            if all(i == j or not e.matrix[i][j]
                   for i in range(group.dim) for j in range(group.dim))]
    if len(diag) <= 1:
        return [list(range(len(exps)))]
    classes: dict[tuple, list[int]] = {}
    for idx, exp in enumerate(exps):
        key = []
        for e in diag:
            val: Scalar = Fraction(1)
            for i, p in enumerate(exp):
                if p:
                    val = val * e.matrix[i][i] ** p
            key.append(val)
        classes.setdefault(_freeze(key), []).append(idx)
    return [classes[kk] for kk in sorted(classes, key=repr)]


def _freeze(key):
    out = []
    for v in key:
        if hasattr(v, "coeffs"):
            out.append((v.conductor, v.coeffs))
        else:
            out.append(v)
    return tuple(out)


class _AdicTables:
    """Per (hyperplane, monomial) alpha-adic decompositions, cached across
    multiplicities: the linear conditions for any k select rows of these."""

    def __init__(self, group: ReflectionGroup):
        self.group = group
        self.tables: dict[tuple[int, tuple[int, ...]],
                          dict[tuple[int, tuple[int, ...]], Scalar]] = {}

    def row(self, hid: int, exp: tuple[int, ...]
            ) -> dict[tuple[int, tuple[int, ...]], Scalar]:
        key = (hid, exp)
        got = self.tables.get(key)
        if got is None:
            h = self.group.hyperplanes[hid]
            mono = MultiPoly(self.group.xvars, {exp: Fraction(1)})
            comps = normal_expansion(mono, h.alpha_coeffs, h.v_coords)
            got = {}
            for s, g in enumerate(comps):
                for ce, cc in g.terms.items():
                    got[(s, ce)] = cc
            self.tables[key] = got
        return got


def _adic_tables(group: ReflectionGroup) -> _AdicTables:
    if not hasattr(group, "_qi_adic_tables"):
        group._qi_adic_tables = _AdicTables(group)
    return group._qi_adic_tables


def quasi_invariant_basis(group: ReflectionGroup, k: Multiplicity,
                          max_deg: int, normalize: bool = True) -> QIBasis:
    """Exact graded basis of Q_k up to max_deg by per-degree kernels of the
    normal-expansion conditions (the linear conditions of the defining
    congruences, written hyperplane by hyperplane)."""
    _check_k(group, k)
    tables = _adic_tables(group)
    out = QIBasis(group, k, max_deg)
    bad_sets = []
    for h in group.hyperplanes:
        allowed = allowed_exponents(group, k, h)
        bad_sets.append(allowed)
    for d in range(max_deg + 1):
        exps = monomials_of_degree(group.xvars, d)
        basis_d: list[MultiPoly] = []
        for cls in _diagonal_classes(group, exps):
            vecs = [{exps[i]: Fraction(1)} for i in cls]
            for h in group.hyperplanes:
                if not vecs:
                    break
                bad = bad_sets[h.index].complement_upto(d)
                if not bad:
                    continue
                badset = set(bad)
                rows_by_coord: dict[tuple, list[Scalar]] = {}
                for j, vec in enumerate(vecs):
                    for exp, c in vec.items():
                        for (s, ce), cc in tables.row(h.index, exp).items():
                            if s in badset:
                                row = rows_by_coord.get((s, ce))
                                if row is None:
                                    row = [Fraction(0)] * len(vecs)
                                    rows_by_coord[(s, ce)] = row
                                row[j] = row[j] + c * cc
                kern = kernel_basis(list(rows_by_coord.values()), len(vecs))
                vecs = [_combine(vecs, coeffs) for coeffs in kern]
            for vec in vecs:
                basis_d.append(MultiPoly(group.xvars, dict(vec)))
        if normalize:
            basis_d = _normalize_basis(group, basis_d, exps)
        out.per_degree.append(basis_d)
    return out


def _combine(vecs: list[dict], coeffs) -> dict:
    out: dict = {}
    for c, vec in zip(coeffs, vecs):
        if not c:
            continue
        for e, v in vec.items():
            acc = out.get(e, Fraction(0)) + c * v
            if acc:
                out[e] = acc
            elif e in out:
                del out[e]
    return out


def _normalize_basis(group: ReflectionGroup, basis: list[MultiPoly],
                     exps: list[tuple[int, ...]]) -> list[MultiPoly]:
    """Reduced echelon form with graded-lex leading monomials scaled to 1,
    for reproducible output."""
    order = {e: i for i, e in enumerate(exps)}  # exps already graded-lex
    space = RowSpace(len(exps))
    for f in basis:
        space.insert(_poly_vector(f, order))
    out = []
    for row in space.rows:
        terms = {exps[i]: c for i, c in enumerate(row) if c}
        out.append(MultiPoly(group.xvars, terms))
    out.sort(key=lambda f: order[f.leading_term()[0]])
    return out


def quasi_invariant_dims(group: ReflectionGroup, k: Multiplicity,
                         max_deg: int) -> list[int]:
    return quasi_invariant_basis(group, k, max_deg, normalize=False).dims()


# -- stability reports ------------------------------------------------------------


@dataclass
class StabilityFailure(Exception):
    element: MultiPoly
    image: MultiPoly
    detail: str

    def __str__(self):
        return f"stability failure ({self.detail}): {self.element} -> {self.image}"


def dunkl_stability_report(basis: QIBasis,
                           invariant_degree_bound: int = 0) -> dict:
    """Check that Q_k is stable under the invariant operators L_{p,k} =
    Res(T_{p,k}) for the basic invariants p up to the given degree bound.

    (Single Dunkl operators are not W-invariant and do not preserve the
    scalar quasi-invariants; their stability statement lives on the
    tau-valued modules, see the tau module checks.)
    """
    from .operators import calogero_moser_operator

    group, k = basis.group, basis.k
    degs, polys = group.fundamental_invariants_dual()
    lp_checked = 0
    for deg, p in zip(degs, polys):
        if invariant_degree_bound and deg > invariant_degree_bound:
            continue
        op = calogero_moser_operator(group, k, p)
        for d in range(basis.max_deg + 1):
            for f in basis.per_degree[d]:
                loc = op.apply(f)
                if not loc.is_polynomial():
                    raise StabilityFailure(f, loc.num,
                                           "L_p image is not polynomial")
                img = loc.as_poly()
                if img and not basis.contains(img):
                    raise StabilityFailure(f, img, "L_p image leaves Q_k")
                lp_checked += 1
    return {"lp_images_checked": lp_checked}

"""Irreducible representations of the built-in reflection group families.

Representations are supplied constructively per family (explicit matrices
indexed by group element), not through a generic character-table algorithm:
  * cyclic(n): the n linear characters sigma_j = det^j;
  * G(m,m,2): linear characters plus the two-dimensional rho_j;
  * G(m,1,2): wreath-product characters chi_{c,+-} and rho_{c1,c2};
  * symmetric(3), symmetric(4): explicit integer matrices.

The central element z(k) = sum_H sum_i n_H k_{H,i} e_{H,i} of the group
algebra acts on an irreducible tau by the scalar c_tau(k); that scalar and
isotype decompositions of W-stable spaces are computed here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cyclotomic import Scalar, as_rational, conj, inv, root_of_unity
from .groups import Matrix, Multiplicity, ReflectionGroup
from .linalg import RowSpace, solve_in_span


class NotStable(ValueError):
    """A span handed to isotype decomposition is not W-invariant."""


class WRep:
    def __init__(self, group: ReflectionGroup, name: str,
                 matrices: list[Matrix]):
        self.group = group
        self.name = name
        self.matrices = matrices
        self.dim = len(matrices[0])
        self._character: Optional[list[Scalar]] = None

    def matrix(self, w: int) -> Matrix:
        return self.matrices[w]

    def character(self) -> list[Scalar]:
        if self._character is None:
            self._character = [
                sum((m[i][i] for i in range(self.dim)), Fraction(0))
                for m in self.matrices
            ]
        return self._character

    def apply(self, w: int, vec: Sequence[Scalar]) -> list[Scalar]:
        m = self.matrices[w]
        return [
            sum((m[i][j] * vec[j] for j in range(self.dim) if m[i][j] and vec[j]),
                Fraction(0))
            for i in range(self.dim)
        ]

    def tensor_char(self, chi: list[Scalar], name: str) -> "WRep":
        """Tensor with a one-dimensional character given by its value list."""
        mats = [
            tuple(tuple(chi[w] * c for c in row) for row in m)
            for w, m in enumerate(self.matrices)
        ]
        return WRep(self.group, name, mats)

    def __repr__(self):
        return f"WRep({self.name}, dim={self.dim})"


def rep_by_name(group: ReflectionGroup, name: str) -> WRep:
    for r in group.reps:
        if r.name == name:
            return r
    raise KeyError(f"group {group.name} has no representation {name!r}")


def det_character(group: ReflectionGroup) -> list[Scalar]:
    return [e.det for e in group.elements]


def trivial_rep(group: ReflectionGroup) -> WRep:
    return WRep(group, "triv", [((Fraction(1),),)] * group.order())


def regular_rep(group: ReflectionGroup) -> WRep:
    """Left regular representation on the group algebra basis {g_j}."""
    n = group.order()
    mats = []
    for w in range(n):
        cols = [group.multiply(w, j) for j in range(n)]
        mats.append(tuple(
            tuple(Fraction(1 if cols[j] == i else 0) for j in range(n))
            for i in range(n)
        ))
    return WRep(group, "regular", mats)


# -- family constructions -----------------------------------------------------


def attach_cyclic_reps(group: ReflectionGroup):
    n = group.family["n"]
    reps = []
    for j in range(n):
        mats = [((root_of_unity(j * t, n),),) for t in range(n)]
        reps.append(WRep(group, f"sigma{j}", mats))
    group.reps = reps


def attach_imprimitive_rank2_reps(group: ReflectionGroup):
    m, p = group.family["m"], group.family["p"]
    decor = group.family["decor"]
    if p == 1:
        group.reps = _wreath_rank2_reps(group, m, decor)
    else:
        group.reps = _dihedral_reps(group, m, decor)


def _wreath_rank2_reps(group: ReflectionGroup, m: int, decor) -> list[WRep]:
    reps = []
    is_swap = [perm == (1, 0) for perm, _ in decor]
    for c in range(m):
        for eps, tag in ((1, "+"), (-1, "-")):
            mats = []
            for w, (perm, ph) in enumerate(decor):
                val = root_of_unity(c * (ph[0] + ph[1]), m)
                if is_swap[w] and eps < 0:
                    val = -val
                mats.append(((val,),))
            reps.append(WRep(group, f"chi{c}{tag}", mats))
    for c1 in range(m):
        for c2 in range(c1 + 1, m):
            mats = []
            for w, (perm, ph) in enumerate(decor):
                a = root_of_unity(c1 * ph[0] + c2 * ph[1], m)
                b = root_of_unity(c2 * ph[0] + c1 * ph[1], m)
                z = Fraction(0)
                if is_swap[w]:
                    mats.append(((z, a), (b, z)))
                else:
                    mats.append(((a, z), (z, b)))
            reps.append(WRep(group, f"rho{c1}_{c2}", mats))
    return reps


def _dihedral_reps(group: ReflectionGroup, m: int, decor) -> list[WRep]:
    # elements: rotations r_a = diag(z^a, z^-a) and reflections
    # s_a = antidiag(z^a, z^-a); decor phases are (a, -a mod m)
    reps = []
    is_refl = [perm == (1, 0) for perm, _ in decor]
    a_of = [ph[0] for _, ph in decor]

    def linear(eps: int, eta: int, name: str) -> WRep:
        mats = []
        for w in range(group.order()):
            val = Fraction(1 if a_of[w] % 2 == 0 else eps)
            if is_refl[w] and eta < 0:
                val = -val
            mats.append(((val,),))
        return WRep(group, name, mats)

    reps.append(linear(1, 1, "triv"))
    reps.append(linear(1, -1, "det"))
    if m % 2 == 0:
        reps.append(linear(-1, 1, "eps"))
        reps.append(linear(-1, -1, "epsdet"))
    top = (m - 1) // 2 if m % 2 else m // 2 - 1
    for j in range(1, top + 1):
        mats = []
        for w in range(group.order()):
            a = a_of[w]
            u = root_of_unity(j * a, m)
            v = root_of_unity(-j * a, m)
            z = Fraction(0)
            if is_refl[w]:
                mats.append(((z, u), (v, z)))
            else:
                mats.append(((u, z), (z, v)))
        reps.append(WRep(group, f"rho{j}", mats))
    return reps


_S3_2DIM = {
    (0, 1, 2): ((1, 0), (0, 1)),
    (1, 0, 2): ((-1, 1), (0, 1)),
    (0, 2, 1): ((1, 0), (1, -1)),
    (2, 1, 0): ((0, -1), (-1, 0)),
    (1, 2, 0): ((0, -1), (1, -1)),
    (2, 0, 1): ((-1, 1), (-1, 0)),
}


def attach_symmetric_reps(group: ReflectionGroup):
    n = group.family["N"]
    perms = group.family["decor"]
    reps = [trivial_rep(group)]
    sign = WRep(group, "sign", [((e.det,),) for e in group.elements])
    reps.append(sign)
    if n >= 3:
        std = WRep(group, "std",
                   [e.matrix for e in group.elements])
        reps.append(std)
    if n == 4:
        reps.append(std.tensor_char(det_character(group), "stds"))
        two = []
        for perm in perms:
            img = _s4_to_s3(perm)
            two.append(tuple(tuple(Fraction(c) for c in row)
                             for row in _S3_2DIM[img]))
        reps.append(WRep(group, "std2", two))
    if n > 4:
        raise NotImplementedError(
            "explicit irreducibles attached only for symmetric(N), N <= 4")
    group.reps = reps


def _s4_to_s3(perm: tuple[int, ...]) -> tuple[int, int, int]:
    """Action of S_4 on the three pair-partitions of {0,1,2,3}, labelled by
    the partner of 0 (1, 2, 3 -> labels 0, 1, 2)."""
    out = []
    for t in (1, 2, 3):
        pair = {perm[0], perm[t]}
        if 0 in pair:
            partner = (pair - {0}).pop()
        else:
            partner = ({1, 2, 3} - pair).pop()
        out.append(partner - 1)
    return tuple(out)


# -- characters, central element, isotypes ------------------------------------


def central_element(group: ReflectionGroup, k: Multiplicity) -> dict[int, Scalar]:
    """z(k) = sum_H sum_i n_H k_{H,i} e_{H,i} as {element index: coefficient}."""
    out: dict[int, Scalar] = {}
    for h in group.hyperplanes:
        kap = group.kappa(h, k)
        for w, c in kap.items():
            if c:
                out[w] = out.get(w, Fraction(0)) + c
    return {w: c for w, c in out.items() if c}


def c_value(group: ReflectionGroup, rep: WRep, k: Multiplicity) -> Fraction:
    """The scalar c_tau(k) by which z(k) acts on the irreducible tau."""
    chi = rep.character()
    acc: Scalar = Fraction(0)
    for w, coeff in central_element(group, k).items():
        acc = acc + coeff * chi[w]
    return as_rational(acc * Fraction(1, rep.dim))


def character_inner(group: ReflectionGroup, chi1: Sequence[Scalar],
                    chi2: Sequence[Scalar]) -> Scalar:
    acc: Scalar = Fraction(0)
    for w in range(group.order()):
        acc = acc + chi1[w] * conj(chi2[w])
    return acc * Fraction(1, group.order())


def span_character(group: ReflectionGroup,
                   vectors: list[list[Scalar]],
                   act: Callable[[int, list[Scalar]], list[Scalar]]
                   ) -> list[Scalar]:
    """Trace of each group element on the span of `vectors`.

    Raises NotStable if the span is not W-invariant.
    """
    chi = []
    for w in range(group.order()):
        images = [act(w, v) for v in vectors]
        trace: Scalar = Fraction(0)
        for i, img in enumerate(images):
            coeffs = solve_in_span(vectors, img)
            if coeffs is None:
                raise NotStable(f"span is not stable under element {w}")
            trace = trace + coeffs[i]
        chi.append(trace)
    return chi


def isotype_decompose(group: ReflectionGroup,
                      vectors: list[list[Scalar]],
                      act: Callable[[int, list[Scalar]], list[Scalar]],
                      reps: Optional[list[WRep]] = None) -> dict[str, int]:
    """Multiplicity of each irreducible in a W-stable span."""
    reps = reps if reps is not None else group.reps
    chi = span_character(group, vectors, act)
    out: dict[str, int] = {}
    total = 0
    for rep in reps:
        m = character_inner(group, chi, rep.character())
        mq = as_rational(m)
        if mq.denominator != 1 or mq < 0:
            raise ArithmeticError(
                f"non-integral isotype multiplicity {mq} for {rep.name}")
        if mq:
            out[rep.name] = int(mq)
            total += int(mq) * rep.dim
    if total != len(vectors):
        raise ArithmeticError("isotype multiplicities do not sum to dimension")
    return out


def isotype_component(group: ReflectionGroup,
                      vectors: list[list[Scalar]],
                      act: Callable[[int, list[Scalar]], list[Scalar]],
                      reps_wanted: list[WRep]) -> list[list[Scalar]]:
    """Basis of the sum of the given isotypic components of span(vectors).

    The projector sum_sigma (dim sigma/|W|) sum_w conj(chi_sigma(w)) act(w)
    is applied to each vector; the images span the component.
    """
    if not vectors:
        return []
    n = len(vectors[0])
    weights: dict[int, Scalar] = {}
    for rep in reps_wanted:
        chi = rep.character()
        scale = Fraction(rep.dim, group.order())
        for w in range(group.order()):
            c = conj(chi[w]) * scale
            if c:
                weights[w] = weights.get(w, Fraction(0)) + c
    space = RowSpace(n)
    out = []
    for v in vectors:
        img = [Fraction(0)] * n
        for w, c in weights.items():
            av = act(w, v)
            for i in range(n):
                if av[i]:
                    img[i] = img[i] + c * av[i]
        if space.insert(img):
            out.append(img)
    return out

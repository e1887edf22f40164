"""
Subgroups of the Weyl-Heisenberg group, stored by generators.

At construction the generators are row-reduced as group elements: every row
operation is a power or a product inside H, so the echelon rows are lifts of an
echelon basis of S_H and the leftover rows are central elements of H. No element
enumeration is needed unless explicitly requested.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import itertools

from config.numerics import MAX_ENUMERATION
from ..exceptions import ParamsMismatch, TooLarge, ZeroAlpha
from ..zp_linalg import SubspaceBasis, VecZp, dot, inv_mod, is_isotropic
from .element import GroupElement
from .params import GroupParams


class SubgroupClass(Enum):
    ABELIAN_NON_CENTRAL = "abelian_non_central"
    NORMAL_CONTAINS_CENTER = "normal_contains_center"


class Subgroup:
    def __init__(self, params: GroupParams, generators: Iterable[GroupElement] = ()):
        self.params = params
        self.generators: Tuple[GroupElement, ...] = tuple(generators)
        for g in self.generators:
            if g.params != params:
                raise ParamsMismatch(f"generator {g} does not belong to {params}")
        self._eliminate()

    def _eliminate(self):
        p, n = self.params.p, self.params.n
        rows: List[GroupElement] = list(self.generators)
        r = 0
        for c in range(2 * n):
            found = next((i for i in range(r, len(rows)) if rows[i].vector[c]), None)
            if found is None:
                continue
            rows[r], rows[found] = rows[found], rows[r]
            rows[r] = rows[r].power(inv_mod(rows[r].vector[c], p))
            for i in range(len(rows)):
                t = rows[i].vector[c]
                if i != r and t:
                    rows[i] = rows[i] * rows[r].power(-t)
            r += 1
        lifts = rows[:r]
        self.s_basis = SubspaceBasis(p, 2 * n, tuple(g.vector for g in lifts))

        contains_center = any(g.z for g in rows[r:])
        if not is_isotropic(self.s_basis):
            contains_center = True
        if p == 2 and any(dot(g.x, g.y, p) for g in lifts):
            contains_center = True
        self.contains_center = contains_center
        if contains_center:
            lifts = [GroupElement(self.params, g.x, g.y, 0) for g in lifts]
        self.lifts: Tuple[GroupElement, ...] = tuple(lifts)

    # ---- Derived data ----
    @property
    def dim(self) -> int:
        return self.s_basis.rank

    @property
    def order(self) -> int:
        return self.params.p ** (self.dim + (1 if self.contains_center else 0))

    @property
    def classification(self) -> SubgroupClass:
        if self.contains_center:
            return SubgroupClass.NORMAL_CONTAINS_CENTER
        return SubgroupClass.ABELIAN_NON_CENTRAL

    @property
    def is_abelian(self) -> bool:
        # commutators are (0, 0, <v, w>) with <,> the symplectic form
        return is_isotropic(self.s_basis)

    @property
    def canonical_generators(self) -> Tuple[GroupElement, ...]:
        if self.contains_center:
            return self.lifts + (GroupElement.central(self.params, 1),)
        return self.lifts

    # ---- Membership ----
    def canonical_representative(self, g: GroupElement) -> GroupElement:
        """Canonical element of the left coset gH."""
        if g.params != self.params:
            raise ParamsMismatch(f"{g} does not belong to {self.params}")
        for lift, c in zip(self.lifts, self.s_basis.pivots):
            t = g.vector[c]
            if t:
                g = g * lift.power(-t)
        if self.contains_center:
            g = GroupElement(self.params, g.x, g.y, 0)
        return g

    def contains(self, g: GroupElement) -> bool:
        return self.canonical_representative(g).is_identity()

    def __contains__(self, g: GroupElement) -> bool:
        return self.contains(g)

    def element_over(self, v: Sequence[int]) -> Optional[GroupElement]:
        """An element of H whose (x, y) part is v, or None if v is not in S_H."""
        if not self.s_basis.contains(v):
            return None
        g = GroupElement.identity(self.params)
        for lift, coeff in zip(self.lifts, self.s_basis.coordinates(v)):
            g = g * lift.power(coeff)
        return g

    def elements(self) -> Iterator[GroupElement]:
        if self.order > MAX_ENUMERATION:
            raise TooLarge(f"|H|={self.order} exceeds the enumeration cap {MAX_ENUMERATION}")
        centers = range(self.params.p) if self.contains_center else (0,)
        for coeffs in itertools.product(range(self.params.p), repeat=self.dim):
            g = GroupElement.identity(self.params)
            for lift, c in zip(self.lifts, coeffs):
                g = g * lift.power(c)
            for z in centers:
                yield g * GroupElement.central(self.params, z)

    def verify_closure(self) -> bool:
        """Closure of the enumerated set under the group law."""
        members = set(self.elements())
        return all(a * b in members for a in members for b in self.generators)

    # ---- Comparison ----
    def _key(self):
        return (self.params, self.s_basis, self.contains_center, tuple(g.z for g in self.lifts))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def same_as(self, other: "Subgroup") -> bool:
        return self == other

    # ---- Literal format: "p,n;gen=x|y|z;gen=..." ----
    def to_literal(self) -> str:
        head = f"{self.params.p},{self.params.n}"
        return ";".join([head] + [f"gen={g.to_literal()}" for g in self.canonical_generators])

    @classmethod
    def from_literal(cls, text: str) -> "Subgroup":
        parts = text.strip().split(";")
        try:
            p, n = (int(e) for e in parts[0].split(","))
        except ValueError:
            raise ValueError(f"subgroup literal must start with 'p,n', got {parts[0]!r}")
        params = GroupParams(p, n)
        gens = []
        for part in parts[1:]:
            if not part.startswith("gen="):
                raise ValueError(f"expected 'gen=x|y|z', got {part!r}")
            gens.append(GroupElement.from_literal(params, part[len("gen="):]))
        return cls(params, gens)

    def __repr__(self):
        return f"Subgroup({self.to_literal()!r})"

    def __str__(self):
        gens = ", ".join(str(g) for g in self.canonical_generators) or "e"
        return f"<{gens}> (order {self.order}, {self.classification.value})"


@dataclass(frozen=True)
class Conjugator:
    """(x^, y^, z^) with H^g = H_0; (x^, y^) is unique modulo S_H^perp, z^ fixed to 0."""

    xhat: VecZp
    yhat: VecZp
    zhat: int = 0

    def as_element(self, params: GroupParams) -> GroupElement:
        return GroupElement(params, self.xhat, self.yhat, self.zhat)

    @property
    def vector(self) -> VecZp:
        return tuple(self.xhat) + tuple(self.yhat)


@dataclass(frozen=True)
class GroupAutomorphism:
    """
    phi_(alpha, beta): (x, y, z) -> (alpha x, beta y, alpha beta z).

    beta defaults to alpha, giving phi_alpha, the map that keeps S_H fixed.
    """

    alpha: int
    beta: Optional[int] = None

    def __post_init__(self):
        if self.alpha == 0 or self.beta == 0:
            raise ZeroAlpha("automorphism scalars must be nonzero")

    @property
    def scalars(self) -> Tuple[int, int]:
        return self.alpha, self.alpha if self.beta is None else self.beta

    def label_factor(self, p: int) -> int:
        """U_alpha rho_k(H) U_alpha^dag = rho_(k * factor)(phi(H))."""
        a, b = self.scalars
        return inv_mod(a * b, p)

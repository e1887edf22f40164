"""
The label distribution of weak Fourier sampling, P(rho) = d_rho |H| r_rho(H) / |G|, exactly.

r_rho(H) is known in closed form, so nothing is enumerated except the support:
  chi_(a,b):  r = 1 iff (a, b) is Euclidean-orthogonal to S_H, else 0
  rho_k:      r = p^n / |H| if H misses the center, else 0
"""

from bisect import bisect_right
from fractions import Fraction
from itertools import accumulate
from math import lcm
from typing import Dict, List, Tuple

from ..data import GroupParams, IrrepLabel, Subgroup
from ..zp_linalg import BilinearForm, FormKind, complement_basis


def character_rank(label: IrrepLabel, H: Subgroup) -> Fraction:
    """r_rho(H), the rank of the projector rho(H)."""
    params = H.params
    if label.is_high_dim:
        if H.contains_center:
            return Fraction(0)
        return Fraction(params.register_dim, H.order)
    for row in H.s_basis.rows:
        if sum(a * b for a, b in zip(label.vector, row)) % params.p:
            return Fraction(0)
    return Fraction(1)


def one_dim_support(H: Subgroup) -> List[IrrepLabel]:
    params = H.params
    annihilator = complement_basis(H.s_basis, BilinearForm(FormKind.EUCLIDEAN, params.n))
    n = params.n
    labels = [IrrepLabel.one_dim(v[:n], v[n:], params.p) for v in annihilator.elements()]
    return sorted(labels, key=lambda label: label.sort_key(params))


class PlancherelDist:
    """Exact rational distribution over irrep labels, stored on its support."""

    def __init__(self, params: GroupParams, masses: Dict[IrrepLabel, Fraction]):
        self.params = params
        self.masses = {label: m for label, m in masses.items() if m}
        self._labels: List[IrrepLabel] = sorted(self.masses, key=lambda label: label.sort_key(params))
        self.denominator = lcm(*(m.denominator for m in self.masses.values())) if self.masses else 1
        numerators = [self.masses[label].numerator * (self.denominator // self.masses[label].denominator) for label in self._labels]
        self._cumulative: List[int] = list(accumulate(numerators))

    @property
    def labels(self) -> List[IrrepLabel]:
        return list(self._labels)

    def probability(self, label: IrrepLabel) -> Fraction:
        return self.masses.get(label, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def high_dim_mass(self) -> Fraction:
        return sum((m for label, m in self.masses.items() if label.is_high_dim), Fraction(0))

    def one_dim_mass(self) -> Fraction:
        return sum((m for label, m in self.masses.items() if not label.is_high_dim), Fraction(0))

    def sample(self, rng) -> IrrepLabel:
        """Exact inverse-CDF draw: a uniform integer below the common denominator."""
        draw = int(rng.integers(0, self._cumulative[-1]))
        return self._labels[bisect_right(self._cumulative, draw)]

    def items(self) -> List[Tuple[IrrepLabel, Fraction]]:
        return [(label, self.masses[label]) for label in self._labels]

    def __repr__(self):
        return f"PlancherelDist({self.params}, {len(self.masses)} labels)"


def plancherel(H: Subgroup, params: GroupParams = None) -> PlancherelDist:
    params = params or H.params
    if params != H.params:
        raise ValueError(f"{H} is not a subgroup of {params}")
    masses: Dict[IrrepLabel, Fraction] = {}
    for label in one_dim_support(H):
        masses[label] = Fraction(H.order, params.order)
    if not H.contains_center:
        mass = Fraction(params.register_dim * H.order, params.order) * character_rank(IrrepLabel.high_dim(1, params.p), H)
        for k in range(1, params.p):
            masses[IrrepLabel.high_dim(k, params.p)] = mass
    return PlancherelDist(params, masses)

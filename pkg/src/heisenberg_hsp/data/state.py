"""
Exact sparse operators: sums of c * w^e |ket><bra| with c rational and w = exp(2 pi i / p).
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config.numerics import MAX_STRUCTURED_TERMS
from ..exceptions import TooLarge


@lru_cache(maxsize=None)
def omega_powers(p: int) -> np.ndarray:
    """w^0 .. w^(p-1), computed once per p; every other power is a table lookup."""
    powers = np.exp(2j * np.pi * np.arange(p, dtype=np.float64) / p)
    powers.setflags(write=False)
    return powers


def exact_cyclotomic_value(counts: Sequence[Fraction], p: int) -> Fraction:
    """
    Value of sum_e counts[e] w^e when it is rational.

    Since 1 + w + ... + w^(p-1) = 0 is the only relation, the sum is rational exactly when
    counts[1] = ... = counts[p-1], and then equals counts[0] - counts[1].
    """
    if p == 2:
        return Fraction(counts[0]) - Fraction(counts[1])
    if any(c != counts[1] for c in counts[2:]):
        raise ValueError(f"sum over w-powers with counts {list(counts)} is not rational")
    return Fraction(counts[0]) - Fraction(counts[1])


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    phase: int
    ket: int
    bra: int


class StructuredState:
    """
    Operator on C^dim given exactly by terms.

    A state is either stored as terms directly or as a pure state
    scale * |v><v| with |v> = sum_j w^(phase_j) |index_j>; terms of a pure state are
    expanded on demand. `registers` is 1 or 2; two-register indices are
    first * register_dim + second. `subgroup` records the hidden subgroup a coset
    state was prepared from.
    """

    def __init__(self, p: int, dim: int, terms: Iterable[Term] = (), registers: int = 1, subgroup=None):
        self.p = p
        self.dim = dim
        self.registers = registers
        self.subgroup = subgroup
        self._terms: Optional[Tuple[Term, ...]] = tuple(terms)
        self._ket: Optional[Tuple[Tuple[int, int], ...]] = None
        self.scale: Optional[Fraction] = None

    @classmethod
    def pure(cls, p: int, dim: int, ket: Iterable[Tuple[int, int]], scale: Fraction, subgroup=None) -> "StructuredState":
        state = cls(p, dim, (), 1, subgroup)
        state._terms = None
        state._ket = tuple((phase % p, index) for phase, index in ket)
        state.scale = Fraction(scale)
        return state

    @property
    def is_pure(self) -> bool:
        return self._ket is not None

    @property
    def register_dim(self) -> int:
        return self.dim if self.registers == 1 else int(round(self.dim ** 0.5))

    @property
    def ket_terms(self) -> Tuple[Tuple[int, int], ...]:
        if self._ket is None:
            raise ValueError("state is not stored as a pure ket")
        return self._ket

    @property
    def terms(self) -> Tuple[Term, ...]:
        if self._terms is None:
            if len(self._ket) ** 2 > MAX_STRUCTURED_TERMS:
                raise TooLarge(f"expanding {len(self._ket)} amplitudes exceeds {MAX_STRUCTURED_TERMS} terms")
            self._terms = tuple(
                Term(self.scale, (e1 - e2) % self.p, i1, i2) for e1, i1 in self._ket for e2, i2 in self._ket
            )
        return self._terms

    def __len__(self):
        return len(self._ket) if self._terms is None else len(self._terms)

    # ---- Dense rendering ----
    def to_dense(self) -> np.ndarray:
        w = omega_powers(self.p)
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        if not self.terms:
            return out
        kets = np.array([t.ket for t in self.terms], dtype=np.int64)
        bras = np.array([t.bra for t in self.terms], dtype=np.int64)
        values = np.array([float(t.coeff) for t in self.terms]) * w[np.array([t.phase for t in self.terms])]
        np.add.at(out, (kets, bras), values)
        return out

    def to_ket(self) -> np.ndarray:
        w = omega_powers(self.p)
        out = np.zeros(self.dim, dtype=np.complex128)
        amp = float(self.scale) ** 0.5
        for phase, index in self.ket_terms:
            out[index] += amp * w[phase]
        return out

    # ---- Exact evaluation ----
    def diagonal(self) -> Dict[int, Fraction]:
        """Exact nonzero diagonal entries."""
        counts: Dict[int, List[Fraction]] = defaultdict(lambda: [Fraction(0)] * self.p)
        for t in self.terms:
            if t.ket == t.bra:
                counts[t.ket][t.phase] += t.coeff
        out = {}
        for index in sorted(counts):
            value = exact_cyclotomic_value(counts[index], self.p)
            if value:
                out[index] = value
        return out

    def trace(self) -> Fraction:
        return sum(self.diagonal().values(), Fraction(0))

    def merged(self) -> "StructuredState":
        """Combine terms sharing (phase, ket, bra) and drop zero coefficients."""
        acc: Dict[Tuple[int, int, int], Fraction] = defaultdict(Fraction)
        for t in self.terms:
            acc[(t.phase, t.ket, t.bra)] += t.coeff
        terms = [Term(c, e, k, b) for (e, k, b), c in sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0])) if c]
        return StructuredState(self.p, self.dim, terms, self.registers, self.subgroup)

    def scaled(self, factor: Fraction) -> "StructuredState":
        terms = [Term(t.coeff * factor, t.phase, t.ket, t.bra) for t in self.terms]
        return StructuredState(self.p, self.dim, terms, self.registers, self.subgroup)

    def tensor(self, other: "StructuredState") -> "StructuredState":
        """Two-register product state, this state in the first register."""
        if self.registers != 1 or other.registers != 1 or self.p != other.p or self.dim != other.dim:
            raise ValueError("tensor products are formed from two single-register states of equal dimension")
        if len(self.terms) * len(other.terms) > MAX_STRUCTURED_TERMS:
            raise TooLarge(f"product of {len(self.terms)} and {len(other.terms)} terms exceeds {MAX_STRUCTURED_TERMS}")
        d = self.dim
        terms = [
            Term(a.coeff * b.coeff, (a.phase + b.phase) % self.p, a.ket * d + b.ket, a.bra * d + b.bra)
            for a in self.terms
            for b in other.terms
        ]
        return StructuredState(self.p, d * d, terms, registers=2)

    def __repr__(self):
        kind = "pure" if self.is_pure else "operator"
        return f"StructuredState(p={self.p}, dim={self.dim}, registers={self.registers}, {kind}, {len(self)} terms)"

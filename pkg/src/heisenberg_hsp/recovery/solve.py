"""
Classical post-processing of round samples.

Accepted label-change samples satisfy  w + orient(x^, y^) in S_H^perp  for
w = orient(u, v)/(1 - alpha), so differences of the w's span S_H^perp and -w gives
the conjugator modulo S_H^perp.
"""

import math
from typing import List, Optional, Sequence, Tuple

from config.numerics import STABLE_REFERENCE_PRIME, STABLE_ROUNDS
from ..data import Conjugator, GroupParams, RoundSample, Subgroup
from ..exceptions import EvenCharacteristic, InsufficientSamples, NotIsotropic
from ..group import canonical_h0, conjugate_subgroup
from ..simulator import RESOLVED_CONVENTION, ComplementConvention
from ..zp_linalg import SubspaceBasis, VecZp, inv_mod, is_isotropic


def quiet_rounds(p: int) -> int:
    """
    Consecutive non-growing samples that end a span search over Z_p. A sample misses a
    proper subspace with probability at least 1 - 1/p, so the count is scaled to keep
    p^(-quiet) at the level STABLE_ROUNDS gives at STABLE_REFERENCE_PRIME.
    """
    scaled = math.ceil(STABLE_ROUNDS * math.log(STABLE_REFERENCE_PRIME) / math.log(p) - 1e-9)
    return max(STABLE_ROUNDS, scaled)


class SpanTracker:
    """
    Stop rule: done after `stable_rounds` consecutive additions without rank increase
    (quiet_rounds(p) by default), once the rank reaches `target_rank` when the final
    rank is known in advance, or once `cap` vectors have been added.

    With affine=True the first vector becomes the base point and later vectors
    contribute their difference to it.
    """

    def __init__(
        self,
        p: int,
        dim: int,
        cap: int,
        stable_rounds: Optional[int] = None,
        affine: bool = False,
        target_rank: Optional[int] = None,
    ):
        self.basis = SubspaceBasis(p, dim, ())
        self.cap = cap
        self.stable_rounds = quiet_rounds(p) if stable_rounds is None else stable_rounds
        self.target_rank = target_rank
        self.affine = affine
        self.base: Optional[VecZp] = None
        self.added = 0
        self.quiet = 0

    def add(self, v: Sequence[int]) -> bool:
        self.added += 1
        if self.affine and self.base is None:
            self.base = tuple(v)
            self.quiet = 0
            return True
        if self.affine:
            v = tuple((a - b) % self.basis.p for a, b in zip(v, self.base))
        if self.basis.contains(v):
            self.quiet += 1
            return False
        self.basis = self.basis.extend(v)
        self.quiet = 0
        return True

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def done(self) -> bool:
        if self.target_rank is not None and self.rank >= self.target_rank:
            return True
        return self.quiet >= self.stable_rounds or self.added >= self.cap


def scaled_sample(record: RoundSample, p: int, convention: ComplementConvention = RESOLVED_CONVENTION) -> VecZp:
    """w = orient(u, v) / (1 - alpha)."""
    if record.alpha % p in (0, 1):
        raise ValueError(f"sample with alpha={record.alpha} carries no affine offset")
    c = inv_mod(1 - record.alpha, p)
    return tuple((c * e) % p for e in convention.orient(record.u, record.v))


def solve_samples(
    records: List[RoundSample],
    params: GroupParams,
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> Tuple[SubspaceBasis, Conjugator]:
    """
    Args:
        records: accepted label-change samples
        params: group parameters
        convention: how (u, v) is read against the complement

    Returns:
        (echelon basis of the oriented S_H^perp, conjugator reduced modulo it)
    """
    if len(records) < 2:
        raise InsufficientSamples(f"need at least 2 accepted rounds, got {len(records)}")
    p = params.p
    ws = [scaled_sample(r, p, convention) for r in records]
    base = ws[0]
    diffs = [tuple((a - b) % p for a, b in zip(w, base)) for w in ws[1:]]
    S_perp = SubspaceBasis.span(diffs, p, 2 * params.n)
    offset = S_perp.reduce(tuple((-e) % p for e in base))
    xhat, yhat = convention.unorient(offset)
    return S_perp, Conjugator(xhat, yhat, 0)


def subgroup_projection(S_perp: SubspaceBasis, convention: ComplementConvention = RESOLVED_CONVENTION) -> SubspaceBasis:
    """S_H from the sampled complement; isotropy is the consistency check."""
    S = convention.complement(S_perp)
    if not is_isotropic(S):
        raise NotIsotropic(f"recovered S_H = {S.rows} is not isotropic")
    return S


def reconstruct(
    S_perp: SubspaceBasis,
    conj: Conjugator,
    params: GroupParams,
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> Subgroup:
    """H = g H_0 g^-1 for g = (x^, y^, 0), H_0 built over the complement of S_perp."""
    if params.p == 2:
        raise EvenCharacteristic("reconstruction through H_0 needs p > 2")
    S = subgroup_projection(S_perp, convention)
    g = conj.as_element(params)
    return conjugate_subgroup(canonical_h0(S, params), g.inverse())

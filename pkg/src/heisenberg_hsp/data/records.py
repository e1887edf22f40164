from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from ..zp_linalg import VecZp
from .irrep import IrrepLabel
from .subgroup import Conjugator, Subgroup


@dataclass(frozen=True)
class RoundSample:
    """
    Measurement record of one two-register round.

    alpha^2 = -k/l (mod p) always holds. alpha = 1 marks a sample taken without
    label change (p = 2, or a harvested k + l = 0 round): (u, v) then lies in S_H^perp
    directly.
    """

    k: int
    l: int
    alpha: int
    u: VecZp
    v: VecZp

    @property
    def vector(self) -> VecZp:
        return tuple(self.u) + tuple(self.v)

    def satisfies_label_relation(self, p: int) -> bool:
        return (self.alpha * self.alpha * self.l + self.k) % p == 0


class OutcomeTag(Enum):
    ACCEPTED = "accepted"
    ONE_DIM = "one_dim"
    SUM_ZERO = "sum_zero"
    NON_SQUARE = "non_square"


DISCARD_REASONS = (OutcomeTag.ONE_DIM.value, OutcomeTag.SUM_ZERO.value, OutcomeTag.NON_SQUARE.value)


@dataclass(frozen=True)
class RoundOutcome:
    tag: OutcomeTag
    sample: Optional[RoundSample] = None
    labels: tuple = ()
    k: Optional[int] = None
    l: Optional[int] = None

    @classmethod
    def accepted(cls, sample: RoundSample, labels=()) -> "RoundOutcome":
        return cls(OutcomeTag.ACCEPTED, sample, tuple(labels), sample.k, sample.l)

    @classmethod
    def one_dim(cls, labels) -> "RoundOutcome":
        return cls(OutcomeTag.ONE_DIM, None, tuple(labels))

    @classmethod
    def sum_zero(cls, k: int, l: int, labels=(), sample: Optional[RoundSample] = None) -> "RoundOutcome":
        """A k + l = 0 discard; `sample` is filled when the round was measured anyway."""
        return cls(OutcomeTag.SUM_ZERO, sample, tuple(labels), k, l)

    @classmethod
    def non_square(cls, k: int, l: int, labels=()) -> "RoundOutcome":
        return cls(OutcomeTag.NON_SQUARE, None, tuple(labels), k, l)

    @property
    def is_accepted(self) -> bool:
        return self.tag is OutcomeTag.ACCEPTED

    @property
    def reason(self) -> Optional[str]:
        return None if self.is_accepted else self.tag.value


@dataclass
class RecoveryResult:
    """
    Outcome and statistics of one recovery run.

    Queries add up as 2 * rounds + fourier_samples + abelian_samples + 2 (detection)
    + verification_queries, summed over retries.
    """

    subgroup: Optional[Subgroup] = None
    s_basis: object = None
    conjugator: Optional[Conjugator] = None
    route: str = ""
    rounds: int = 0
    accepted_rounds: int = 0
    harvested_rounds: int = 0
    discards: Dict[str, int] = field(default_factory=lambda: {r: 0 for r in DISCARD_REASONS})
    fourier_samples: int = 0
    abelian_samples: int = 0
    verification_queries: int = 0
    oracle_queries: int = 0
    retries: int = 0
    label_counts: Dict[str, int] = field(default_factory=dict)

    def record_labels(self, labels):
        for label in labels:
            key = str(label)
            self.label_counts[key] = self.label_counts.get(key, 0) + 1

    def record_round(self, outcome: RoundOutcome):
        self.rounds += 1
        self.record_labels(outcome.labels)
        if outcome.is_accepted:
            self.accepted_rounds += 1
        else:
            self.discards[outcome.reason] += 1

    def to_dict(self) -> dict:
        return {
            "recovered": None if self.subgroup is None else self.subgroup.to_literal(),
            "route": self.route,
            "rounds": self.rounds,
            "accepted_rounds": self.accepted_rounds,
            "harvested_rounds": self.harvested_rounds,
            "discards": dict(self.discards),
            "fourier_samples": self.fourier_samples,
            "abelian_samples": self.abelian_samples,
            "verification_queries": self.verification_queries,
            "queries": self.oracle_queries,
            "retries": self.retries,
            "conjugator": None if self.conjugator is None else list(self.conjugator.vector),
        }

"""
Hidden function f: G -> labels, constant and distinct on the left cosets gH.

The label of g is its canonical coset representative (reduction against the echelon
lifts of H, see Subgroup.canonical_representative) written as fixed-width text.
"""

import threading
from typing import Dict, List

from .data import GroupElement, GroupParams, Subgroup


class HiddenFunction:
    """
    Oracle for a planted subgroup. Callers learn about H only through query();
    the simulator, which models the quantum computer holding coset states, reads
    the planted subgroup through `_hidden`.
    """

    def __init__(self, subgroup: Subgroup):
        self._hidden = subgroup
        self._lock = threading.Lock()
        self._queries = 0
        self._width = len(str(subgroup.params.p - 1))

    @property
    def params(self) -> GroupParams:
        return self._hidden.params

    @property
    def query_count(self) -> int:
        return self._queries

    def _charge(self, count: int = 1):
        with self._lock:
            self._queries += count

    def label_of(self, g: GroupElement) -> str:
        rep = self._hidden.canonical_representative(g)
        w = self._width

        def _pad(entries):
            return ",".join(f"{e:0{w}d}" for e in entries)

        return f"{_pad(rep.x)}|{_pad(rep.y)}|{rep.z:0{w}d}"

    def query(self, g: GroupElement) -> str:
        self._charge(1)
        return self.label_of(g)

    def __call__(self, g: GroupElement) -> str:
        return self.query(g)

    def __repr__(self):
        return f"HiddenFunction({self.params}, queries={self._queries})"


def make(H: Subgroup) -> HiddenFunction:
    return HiddenFunction(H)


def query(f: HiddenFunction, g: GroupElement) -> str:
    return f.query(g)


def query_count(f: HiddenFunction) -> int:
    return f.query_count


def coset_partition(H: Subgroup) -> Dict[int, int]:
    """
    Brute-force codec: element index -> smallest element index of its left coset gH.
    Enumerates all of G, so only for small groups.
    """
    params = H.params
    members = list(H.elements())
    label: Dict[int, int] = {}
    for i in range(params.order):
        if i in label:
            continue
        g = GroupElement.from_index(params, i)
        coset: List[int] = [(g * h).index for h in members]
        smallest = min(coset)
        for j in coset:
            label[j] = smallest
    return label

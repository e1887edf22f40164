"""
Exact arithmetic and linear algebra over Z_p.

Vectors are tuples of residues, matrices are int64 numpy arrays reduced mod p.
Subspaces are stored in reduced row echelon form so that two spans are equal
exactly when their SubspaceBasis values compare equal.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import itertools

import numpy as np
from sympy import isprime

from config.numerics import MAX_PRIME
from .exceptions import InconsistentSystem, ZeroInverse

VecZp = Tuple[int, ...]
MatZp = np.ndarray


@dataclass(frozen=True)
class FieldParams:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or self.p < 2 or not isprime(int(self.p)):
            raise ValueError(f"p must be a prime, got {self.p!r}")
        if self.p >= MAX_PRIME:
            raise ValueError(f"p={self.p} exceeds the supported bound {MAX_PRIME}")
        object.__setattr__(self, "p", int(self.p))


Modulus = Union[int, FieldParams]


def _modulus(p: Modulus) -> int:
    return p.p if isinstance(p, FieldParams) else int(p)


def mod_p(A, p: Modulus) -> np.ndarray:
    return np.asarray(np.asarray(A, dtype=np.int64) % _modulus(p), dtype=np.int64)


def vec(entries: Iterable[int], p: Modulus) -> VecZp:
    q = _modulus(p)
    return tuple(int(e) % q for e in entries)


def dot(v: Sequence[int], w: Sequence[int], p: Modulus) -> int:
    return sum(int(a) * int(b) for a, b in zip(v, w)) % _modulus(p)


def inv_mod(a: int, p: Modulus) -> int:
    q = _modulus(p)
    a = int(a) % q
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {q}")
    return pow(a, q - 2, q)


def sqrt_mod(a: int, p: Modulus) -> Optional[int]:
    """
    Smaller square root of a modulo p, or None when a is not a square.

    Exhaustive search; p is bounded by MAX_PRIME.
    """
    q = _modulus(p)
    a = int(a) % q
    for r in range((q // 2) + 1):
        if (r * r) % q == a:
            return r
    return None


def is_square(a: int, p: Modulus) -> bool:
    return sqrt_mod(a, p) is not None


def rref_mod(A, p: Modulus) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(p).

    Returns:
        (R, pivot_cols)
    """
    q = _modulus(p)
    R = mod_p(np.array(A, dtype=np.int64, copy=True), q)
    if R.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {R.shape}")
    m, n = R.shape
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r >= m:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r, :] = (R[r, :] * inv_mod(R[r, c], q)) % q
        for i in range(m):
            if i != r and R[i, c] != 0:
                R[i, :] = (R[i, :] - R[i, c] * R[r, :]) % q
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A, p: Modulus) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    _, pivots = rref_mod(A, p)
    return len(pivots)


@dataclass(frozen=True)
class SubspaceBasis:
    """Echelon basis of a subspace of Z_p^dim; equality is subspace equality."""

    p: int
    dim: int
    rows: Tuple[VecZp, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], p: Modulus, dim: int) -> "SubspaceBasis":
        q = _modulus(p)
        vectors = [vec(v, q) for v in vectors]
        for v in vectors:
            if len(v) != dim:
                raise ValueError(f"vector {v} does not have dimension {dim}")
        if not vectors:
            return cls(q, dim, ())
        R, pivots = rref_mod(np.array(vectors, dtype=np.int64), q)
        rows = tuple(tuple(int(e) for e in R[i]) for i in range(len(pivots)))
        return cls(q, dim, rows)

    @classmethod
    def full(cls, p: Modulus, dim: int) -> "SubspaceBasis":
        q = _modulus(p)
        return cls(q, dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(c for c, e in enumerate(row) if e) for row in self.rows)

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.rank, self.dim)

    def reduce(self, v: Sequence[int]) -> VecZp:
        """Canonical representative of v modulo this subspace."""
        out = list(vec(v, self.p))
        for row, c in zip(self.rows, self.pivots):
            t = out[c]
            if t:
                out = [(a - t * b) % self.p for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def extend(self, v: Sequence[int]) -> "SubspaceBasis":
        return SubspaceBasis.span(list(self.rows) + [v], self.p, self.dim)

    def coordinates(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Coefficients of v in the echelon rows (v must lie in the span)."""
        v = vec(v, self.p)
        if not self.contains(v):
            raise ValueError(f"{v} is not in the span")
        return tuple(v[c] for c in self.pivots)

    def combination(self, coeffs: Sequence[int]) -> VecZp:
        out = [0] * self.dim
        for c, row in zip(coeffs, self.rows):
            if c:
                out = [(a + c * b) % self.p for a, b in zip(out, row)]
        return tuple(out)

    def elements(self) -> Iterator[VecZp]:
        for coeffs in itertools.product(range(self.p), repeat=self.rank):
            yield self.combination(coeffs)

    def random_element(self, rng) -> VecZp:
        coeffs = rng.integers(0, self.p, size=self.rank)
        return self.combination(coeffs)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(row) for row in self.rows)


def kernel_basis(M, p: Modulus) -> SubspaceBasis:
    """Echelon basis of {v : M v = 0}."""
    q = _modulus(p)
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return SubspaceBasis.full(q, n)
    R, pivots = rref_mod(M, q)
    free = [j for j in range(n) if j not in pivots]
    null = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row_idx, pc in enumerate(pivots):
            x[pc] = int(-R[row_idx, f]) % q
        null.append(x)
    return SubspaceBasis.span(null, q, n)


def solve_mod(A, b, p: Modulus) -> VecZp:
    """
    One particular solution of A x = b over GF(p), free variables set to 0.

    Raises:
        InconsistentSystem: when no solution exists
    """
    q = _modulus(p)
    A = mod_p(A, q)
    m, n = A.shape
    if m == 0:
        return tuple([0] * n)
    aug = np.concatenate([A, mod_p(np.asarray(b).reshape(-1, 1), q)], axis=1)
    R, pivots = rref_mod(aug, q)
    if n in pivots:
        raise InconsistentSystem(f"linear system over GF({q}) has no solution")
    x = [0] * n
    for row_idx, pc in enumerate(pivots):
        x[pc] = int(R[row_idx, n])
    return tuple(x)


class FormKind(Enum):
    SYMPLECTIC = "symplectic"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class BilinearForm:
    """
    Symplectic form x.y' - y.x' on Z_p^(2n), or the Euclidean dot product on Z_p^(2n).
    """

    kind: FormKind
    n: int

    @property
    def ambient_dim(self) -> int:
        return 2 * self.n

    def gram(self, p: Modulus) -> np.ndarray:
        q = _modulus(p)
        eye = np.eye(self.n, dtype=np.int64)
        if self.kind is FormKind.EUCLIDEAN:
            return np.eye(2 * self.n, dtype=np.int64)
        zeros = np.zeros((self.n, self.n), dtype=np.int64)
        top = np.concatenate([zeros, eye], axis=1)
        bot = np.concatenate([mod_p(-eye, q), zeros], axis=1)
        return np.concatenate([top, bot], axis=0)

    def evaluate(self, v: Sequence[int], w: Sequence[int], p: Modulus) -> int:
        q = _modulus(p)
        if self.kind is FormKind.EUCLIDEAN:
            return dot(v, w, q)
        n = self.n
        return (dot(v[:n], w[n:], q) - dot(v[n:], w[:n], q)) % q


SYMPLECTIC = FormKind.SYMPLECTIC
EUCLIDEAN = FormKind.EUCLIDEAN


def symplectic_product(v: Sequence[int], w: Sequence[int], p: Modulus) -> int:
    return BilinearForm(FormKind.SYMPLECTIC, len(v) // 2).evaluate(v, w, p)


def complement_basis(S: SubspaceBasis, form: BilinearForm) -> SubspaceBasis:
    """Basis of {w : form(v, w) = 0 for every v in S}."""
    if S.dim != form.ambient_dim:
        raise ValueError(f"ambient dimension {S.dim} does not match form dimension {form.ambient_dim}")
    if S.rank == 0:
        return SubspaceBasis.full(S.p, S.dim)
    M = mod_p(S.as_array() @ form.gram(S.p), S.p)
    return kernel_basis(M, S.p)


def is_isotropic(S: SubspaceBasis) -> bool:
    return all(symplectic_product(v, w, S.p) == 0 for v, w in itertools.combinations(S.rows, 2))


def is_totally_singular(S: SubspaceBasis) -> bool:
    """Isotropic, and x.y = 0 on every basis row (needed for lifts of order 2 at p=2)."""
    n = S.dim // 2
    return is_isotropic(S) and all(dot(v[:n], v[n:], S.p) == 0 for v in S.rows)


# recorded in result documents; random_isotropic is not uniform over isotropic subspaces
ISOTROPIC_SAMPLER = "greedy-nonuniform"


def random_isotropic(n: int, d: int, p: Modulus, rng, singular: bool = False) -> SubspaceBasis:
    """
    Random d-dimensional isotropic subspace of Z_p^(2n).

    Greedy: each new vector is drawn from the symplectic complement of the span so far
    and rejected if it already lies in the span. The result is not exactly uniform over
    isotropic subspaces. With singular=True rows must also satisfy x.y = 0.
    """
    if not 0 <= d <= n:
        raise ValueError(f"isotropic dimension must lie in [0, {n}], got {d}")
    q = _modulus(p)
    form = BilinearForm(FormKind.SYMPLECTIC, n)
    S = SubspaceBasis(q, 2 * n, ())
    while S.rank < d:
        perp = complement_basis(S, form)
        v = perp.random_element(rng)
        if S.contains(v):
            continue
        if singular and dot(v[:n], v[n:], q) != 0:
            continue
        S = S.extend(v)
    return S


def random_subspace(dim: int, d: int, p: Modulus, rng) -> SubspaceBasis:
    if not 0 <= d <= dim:
        raise ValueError(f"subspace dimension must lie in [0, {dim}], got {d}")
    q = _modulus(p)
    S = SubspaceBasis(q, dim, ())
    while S.rank < d:
        v = vec(rng.integers(0, q, size=dim), q)
        if not S.contains(v):
            S = S.extend(v)
    return S

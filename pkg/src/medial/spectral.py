"""Multicirculant matrices, their spectra, and the interchange-basis test.

For ``s = (s1, ..., sk)`` the index set is ``Z_s1 x ... x Z_sk``, flattened by
``(x1, ..., xk)* = x1 + x2*s1 + x3*s1*s2 + ...``.  A multicirculant matrix is
determined by its top row ``c``: ``a[x*][y*] = c[(y - x)*]``.  Its eigenvalues
are ``sum_x c_x * xi1^x1 * ... * xik^xk`` over all tuples of roots of unity
``xi_i`` of order dividing ``s_i``, with eigenvectors ``v[x*] = prod xi_i^x_i``.

Exact integer work (determinants, ranks) never goes through floating point.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .groups import GroupSpec

__all__ = [
    "MulticirculantSpec",
    "Spectrum",
    "BasisReport",
    "star_index",
    "unstar",
    "build_multicirculant",
    "eigenvalues",
    "eigenpairs",
    "bareiss_determinant",
    "bareiss_rank",
    "integer_rank",
    "v_matrix",
    "v_identity_row",
    "exact_basis_witness",
    "interchange_basis_decision",
    "generating_pairs",
    "determinant_agrees",
]

Number = Union[int, Fraction]
Matrix = List[List[Number]]


@dataclass(frozen=True)
class MulticirculantSpec:
    s: Tuple[int, ...]
    top_row: Tuple[Number, ...]

    def __post_init__(self):
        s = tuple(int(v) for v in self.s)
        row = tuple(Fraction(v) if not isinstance(v, int) else v for v in self.top_row)
        if not s or any(v < 1 for v in s):
            raise ValueError(f"s must be a nonempty sequence of positive integers: {self.s}")
        if len(row) != math.prod(s):
            raise ValueError(f"top row has {len(row)} entries, expected {math.prod(s)}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "top_row", row)

    @property
    def n(self) -> int:
        return math.prod(self.s)

    @property
    def integral(self) -> bool:
        return all(isinstance(v, int) or v.denominator == 1 for v in self.top_row)


def _check_tuple(x: Sequence[int], s: Sequence[int]) -> None:
    if len(x) != len(s):
        raise ValueError(f"index {tuple(x)} has {len(x)} components, expected {len(s)}")
    for xi, si in zip(x, s):
        if not 0 <= xi < si:
            raise ValueError(f"component {xi} out of range [0, {si})")


def star_index(x: Sequence[int], s: Sequence[int]) -> int:
    _check_tuple(x, s)
    idx, scale = 0, 1
    for xi, si in zip(x, s):
        idx += xi * scale
        scale *= si
    return idx


def unstar(i: int, s: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for si in s:
        i, r = divmod(i, si)
        out.append(r)
    return tuple(out)


def _indices(s: Sequence[int]) -> List[Tuple[int, ...]]:
    return [unstar(i, s) for i in range(math.prod(s))]


def build_multicirculant(spec: MulticirculantSpec) -> Matrix:
    idx = _indices(spec.s)
    top = spec.top_row
    return [
        [top[star_index(tuple((yi - xi) % si for xi, yi, si in zip(x, y, spec.s)), spec.s)] for y in idx]
        for x in idx
    ]


# --------------------------------------------------------------------------
# spectrum


def _phases(s: Sequence[int]) -> np.ndarray:
    """``P[k*, x*] = prod_i exp(2 pi i k_i x_i / s_i)``."""
    n = math.prod(s)
    idx = np.array(_indices(s), dtype=np.int64).reshape(n, len(s))
    weights = np.array([n // si for si in s], dtype=np.int64)
    # reduce the exponent modulo n before converting to an angle
    e = (idx * weights) @ idx.T % n
    return np.exp(2j * np.pi * e / n)


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    determinant: complex
    exact_determinant: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "determinant": [float(self.determinant.real), float(self.determinant.imag)],
            "exact_determinant": None if self.exact_determinant is None else str(self.exact_determinant),
        }


def eigenvalues(spec: MulticirculantSpec, exact: bool = True) -> Spectrum:
    """Eigenvalues indexed by the root-of-unity tuple ``k`` (``xi_i = e^{2 pi i k_i/s_i}``).

    With ``exact`` the determinant is also computed by fraction-free
    elimination and checked against the product of the eigenvalues.
    """
    c = np.array([float(v) for v in spec.top_row])
    lam = _phases(spec.s) @ c
    det = complex(np.prod(lam))
    exact_det = None
    if exact:
        exact_det = bareiss_determinant(build_multicirculant(spec))
        if not determinant_agrees(lam, exact_det):
            raise ArithmeticError(f"eigenvalue product {det} disagrees with determinant {exact_det}")
    return Spectrum(lam, det, exact_det)


def determinant_agrees(lam: np.ndarray, exact: Fraction, rtol: float = 1e-6) -> bool:
    """Does the product of ``lam`` match ``exact``?

    The error is measured relative to ``|exact|``; for a singular matrix it is
    measured relative to ``prod max(1, |lambda|)``, the size of the cofactors
    that multiply the rounding error of a vanishing eigenvalue.
    """
    det = complex(np.prod(lam))
    scale = abs(float(exact)) if exact != 0 else float(np.prod(np.maximum(1.0, np.abs(lam))))
    return abs(det - float(exact)) <= rtol * max(1.0, scale)


def eigenpairs(spec: MulticirculantSpec) -> Iterator[Tuple[complex, np.ndarray]]:
    P = _phases(spec.s)
    lam = P @ np.array([float(v) for v in spec.top_row])
    for k in range(spec.n):
        yield complex(lam[k]), P[k].copy()


# --------------------------------------------------------------------------
# exact linear algebra


def _integerize(a: Matrix) -> Tuple[List[List[int]], int]:
    den = 1
    for row in a:
        for v in row:
            if isinstance(v, Fraction):
                den = math.lcm(den, v.denominator)
    return [[int(v * den) for v in row] for row in a], den


def bareiss_determinant(a: Matrix) -> Fraction:
    """Exact determinant; rational entries are cleared by a common denominator."""
    m, den = _integerize(a)
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], den ** n)


def bareiss_rank(a: Matrix) -> int:
    m, _ = _integerize(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def _primes_below(start: int) -> Iterator[int]:
    p = start - 1
    while p > 2:
        if _is_prime(p):
            yield p
        p -= 1


_PRIMES: List[int] = []


def _prime(i: int) -> int:
    gen = _primes_below((1 << 30) if not _PRIMES else _PRIMES[-1])
    while len(_PRIMES) <= i:
        _PRIMES.append(next(gen))
    return _PRIMES[i]


def _rank_mod(a: np.ndarray, p: int) -> int:
    m = a % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        below = m[r + 1:, c].copy()
        m[r + 1:] = (m[r + 1:] - np.outer(below, m[r]) % p) % p
        r += 1
        if r == rows:
            break
    return r


def integer_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix.

    Ranks modulo primes near 2^30 never exceed the true rank, and a prime
    undercounts only if it divides a nonzero maximal minor.  Once the product
    of the primes exceeds the Hadamard bound on every minor, some prime cannot
    divide it, so the maximum over the primes is exact.
    """
    arr = np.array(a, dtype=object)
    if arr.size == 0:
        return 0
    if max(abs(int(v)) for v in arr.flat) >= 1 << 30:
        return bareiss_rank([list(map(int, row)) for row in a])
    arr = arr.astype(np.int64)
    norms = [math.sqrt(float(np.dot(row, row))) for row in arr]
    log_bound = sum(math.log2(max(1.0, v)) for v in norms)
    best, log_prod, i = 0, 0.0, 0
    while log_prod <= log_bound + 1:
        p = _prime(i)
        best = max(best, _rank_mod(arr, p))
        log_prod += math.log2(p)
        i += 1
    return best


# --------------------------------------------------------------------------
# interchange-basis decision


def v_identity_row(g: GroupSpec) -> List[int]:
    return v_matrix(g)[0]


def v_matrix(g: GroupSpec) -> List[List[int]]:
    """Rows ``v_h = -e_h + e_{alpha h} + e_{beta h}`` in * order."""
    s = (g.m, g.n)
    rows = []
    for h in g.elements():
        row = [0] * g.order
        row[star_index(h, s)] -= 1
        row[star_index(g.mul(g.alpha, h), s)] += 1
        row[star_index(g.mul(g.beta, h), s)] += 1
        rows.append(row)
    return rows


def exact_basis_witness(g: GroupSpec) -> Optional[Tuple[int, int]]:
    """A character ``(j, k)`` killing ``-1 + chi(alpha) + chi(beta)``, or None.

    The sum vanishes only when the two unit terms are the primitive sixth
    roots ``e^{+-i pi/3}``, which is a pair of congruences modulo ``6mn``.
    """
    m, n = g.m, g.n
    (a, a2), (b, b2) = g.alpha, g.beta
    mod, mn = 6 * m * n, m * n
    for j in range(m):
        for k in range(n):
            u = (6 * n * a * j + 6 * m * a2 * k) % mod
            v = (6 * n * b * j + 6 * m * b2 * k) % mod
            if (u, v) in ((mn, 5 * mn), (5 * mn, mn)):
                return (j, k)
    return None


@dataclass
class BasisReport:
    group: str
    verdict: bool
    exact: bool
    rank: bool
    closed_form: Optional[bool]
    rank_value: int
    order: int
    witness: Optional[Tuple[int, int]] = None
    min_eigenvalue_modulus: float = field(default=float("nan"))

    @property
    def consistent(self) -> bool:
        return self.exact == self.rank and self.closed_form in (None, self.exact)

    def to_json(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness) if self.witness else None
        d["consistent"] = self.consistent
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def interchange_basis_decision(g: GroupSpec) -> BasisReport:
    """Do the interchange laws form a basis for the identities of ``(G; alpha, beta)``?

    The verdict of record is the exact congruence test; the integer rank of
    the ``v`` matrix and, for generators ``(1,0), (0,1)``, the closed form
    "m and n are not both multiples of 6" are reported alongside it.
    """
    witness = exact_basis_witness(g)
    exact = witness is None
    r = integer_rank(v_matrix(g))
    closed = None
    if g.alpha == g.reduce((1, 0)) and g.beta == g.reduce((0, 1)):
        closed = not (g.m % 6 == 0 and g.n % 6 == 0)
    top = v_identity_row(g)
    lam = eigenvalues(MulticirculantSpec((g.m, g.n), tuple(top)), exact=False).eigenvalues
    return BasisReport(
        group=g.encode(),
        verdict=exact,
        exact=exact,
        rank=r == g.order,
        closed_form=closed,
        rank_value=r,
        order=g.order,
        witness=witness,
        min_eigenvalue_modulus=float(np.min(np.abs(lam))),
    )


def generating_pairs(m: int, n: int) -> Iterator[GroupSpec]:
    """Every ``(alpha, beta)`` generating ``Z_m x Z_n``."""
    elems = list(itertools.product(range(m), range(n)))
    for alpha in elems:
        for beta in elems:
            try:
                yield GroupSpec(m, n, alpha, beta)
            except ValueError:
                continue

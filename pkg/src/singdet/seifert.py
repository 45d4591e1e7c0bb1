"""Seifert data and the singular determinant delta_p.

A symmetrized Seifert matrix M = A + A^t is symmetric with even diagonal;
delta_p(M) is the Legendre class of the nondegenerate block of M mod p with
a parity correction, invariant under unimodular congruence and hyperbolic
stabilization, hence a link invariant.  The spanning-surface variant works
for matrices with odd diagonal entries via the oddity correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import (
    IntegerSymmetricMatrix,
    UnimodularTransform,
    corank_mod_p,
    det_exact,
    mod_p_block_reduce,
    transpose,
)
from .numtheory import is_prime, legendre

import random


@dataclass(frozen=True)
class SeifertData:
    """Unsymmetrized Seifert matrix A with derived symmetrization M = A + A^t."""

    A: tuple[tuple[int, ...], ...]

    def __init__(self, A):
        rows = tuple(tuple(int(x) for x in row) for row in A)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Seifert matrix must be square")
        object.__setattr__(self, "A", rows)
        if not self.M.has_even_diagonal():
            raise AssertionError("A + A^t always has even diagonal")

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def M(self) -> IntegerSymmetricMatrix:
        at = transpose(self.A)
        return IntegerSymmetricMatrix(
            [[self.A[i][j] + at[i][j] for j in range(self.n)] for i in range(self.n)]
        )


@dataclass(frozen=True)
class SpanningSurfaceData:
    """Gordon-Litherland style data: symmetric matrix R plus the surface count mu.

    mu cannot be inferred from R alone (it depends on how many components the
    spanning surface has), so the caller supplies it.
    """

    R: IntegerSymmetricMatrix
    mu: int

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError("mu must be >= 1")


@dataclass(frozen=True)
class LinkInvariantBundle:
    c: int
    det: int
    sigma: int
    d_p: dict[int, int]
    delta_p: dict[int, int]
    arf_sign: int | None


def mu_of(M: IntegerSymmetricMatrix) -> int:
    """Corank of M over F_2 plus one; equals the link's component count."""
    if not M.has_even_diagonal():
        raise ValueError("matrix must have even diagonal entries")
    return corank_mod_p(M.entries, 2) + 1


def _delta_from_block(n: int, mu: int, d_p: int, detN: int, p: int, oddity8: int = 0) -> int:
    e2 = n + mu - 1 - oddity8
    if e2 % 2 != 0:
        raise ValueError("exponent (n + mu - 1 - o)/2 is not an integer")
    e = d_p + e2 // 2
    sign = -1 if e % 2 else 1
    val = legendre(sign * detN, p)
    if val == 0:
        raise AssertionError("unit block determinant divisible by p")
    return val


def _unit_block_class_mod_p(M: IntegerSymmetricMatrix, p: int) -> tuple[int, int]:
    """(d_p, Legendre class of the unit block's determinant) over F_p only.

    Symmetric elimination carried out entirely mod p; equivalent to the
    integer-lifted reduction but immune to coefficient growth, which matters
    for the large matrices produced by diagram untangling.
    """
    n = M.n
    w = [[x % p for x in row] for row in M.entries]
    cls = 1
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if w[i][i] % p), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if w[i][j] % p),
                None,
            )
            if off is None:
                break
            i, j = off
            for t in range(n):  # add row/col j into i: diagonal picks up 2*w[i][j]
                w[i][t] = (w[i][t] + w[j][t]) % p
            for t in range(n):
                w[t][i] = (w[t][i] + w[t][j]) % p
            piv = i
        if piv != k:
            for t in range(n):
                w[k][t], w[piv][t] = w[piv][t], w[k][t]
            for t in range(n):
                w[t][k], w[t][piv] = w[t][piv], w[t][k]
        a = w[k][k]
        cls = cls * legendre(a, p)
        inv = pow(a, -1, p)
        for i in range(k + 1, n):
            c = (-w[i][k] * inv) % p
            if c:
                for t in range(n):
                    w[i][t] = (w[i][t] + c * w[k][t]) % p
                for t in range(n):
                    w[t][i] = (w[t][i] + c * w[t][k]) % p
        k += 1
    return n - k, cls


def delta_p(M: IntegerSymmetricMatrix, p: int, rng: random.Random | None = None) -> int:
    """Singular determinant of an even-diagonal symmetric matrix at odd prime p.

    Independent of the reduction path; unchanged by unimodular congruence
    and by hyperbolic stabilization.  Defined for singular M as well.
    The default path works over F_p; passing an rng exercises the
    integer-lifted reduction with randomized pivots instead (used by the
    path-independence suites).
    """
    if not M.has_even_diagonal():
        raise ValueError("matrix must have even diagonal entries")
    if p == 2 or not is_prime(p):
        raise ValueError(f"p = {p} is not an odd prime")
    if rng is None:
        d, cls = _unit_block_class_mod_p(M, p)
        e2 = M.n + mu_of(M) - 1
        e = d + e2 // 2
        return cls * legendre(-1, p) ** (e % 2)
    _, N, d = mod_p_block_reduce(M, p, rng=rng)
    return _delta_from_block(M.n, mu_of(M), d, det_exact(N.entries), p)


def d_p_of(M: IntegerSymmetricMatrix, p: int) -> int:
    """Corank of M over F_p (the F_p-dimension of the relevant homology)."""
    return corank_mod_p(M.entries, p)


def characteristic_vector(R: IntegerSymmetricMatrix) -> list[int]:
    """A 0/1 vector v with w^t R w = v^t R w (mod 2) for all w.

    Equivalent to solving R v = diag(R) over F_2, which is always solvable
    for symmetric matrices; when R has even diagonal, v = 0.  (For matrices
    whose diagonal parities already solve the system, such as even-diagonal
    ones, this agrees with taking v_i = R_ii mod 2.)
    """
    n = R.n
    a = [[R.entries[i][j] % 2 for j in range(n)] + [R.entries[i][i] % 2] for i in range(n)]
    rank = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(rank, n) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(n):
            if r != rank and a[r][col]:
                a[r] = [(x + y) % 2 for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
    v = [0] * n
    for r, col in enumerate(pivots):
        v[col] = a[r][n]
    for r in range(rank, n):
        if a[r][n]:
            raise AssertionError("characteristic system unsolvable for symmetric matrix")
    return v


def oddity(R: IntegerSymmetricMatrix) -> int:
    """v^t R v mod 8 for a characteristic vector v.

    Well-defined over all characteristic vectors when det(R) is odd (the
    mod-2 class of v is then unique); a fixed deterministic solution is used
    in general.
    """
    v = characteristic_vector(R)
    total = sum(v[i] * R.entries[i][j] * v[j] for i in range(R.n) for j in range(R.n))
    return total % 8


def delta_p_gl(S: SpanningSurfaceData, p: int) -> int:
    """Singular determinant from spanning-surface data (odd diagonals allowed).

    Agrees with delta_p when R has even diagonal and mu matches; invariant
    under appending (+1), (-1) diagonal blocks, and under appending (0) with
    mu raised by one (the zero stabilization adds a hyperbolic-free kernel
    direction, matching how mu behaves for symmetrized Seifert matrices).
    """
    R = S.R
    _, N, d = mod_p_block_reduce(R, p)
    return _delta_from_block(R.n, S.mu, d, det_exact(N.entries), p, oddity8=oddity(R))


def gl_stabilize(S: SpanningSurfaceData, block: int) -> SpanningSurfaceData:
    """Append a (+1), (-1) or (0) diagonal block; (0) also increments mu."""
    if block not in (1, -1, 0):
        raise ValueError("block must be +1, -1 or 0")
    R = S.R.block_sum(IntegerSymmetricMatrix([[block]]))
    return SpanningSurfaceData(R, S.mu + (1 if block == 0 else 0))


def signature(M: IntegerSymmetricMatrix) -> int:
    """Exact signature via symmetric congruent diagonalization over Q."""
    n = M.n
    a = [[Fraction(x) for x in row] for row in M.entries]

    def shear(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        for r in a:
            r[dst] += c * r[src]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]

    sig = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                continue  # zero row: kernel direction, contributes nothing
            if a[j][j] != 0:
                swap(k, j)
            else:
                shear(j, k, 1)  # a[k][k] becomes 2*a[k][j] != 0
        piv = a[k][k]
        sig += 1 if piv > 0 else -1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                shear(k, i, -a[i][k] / piv)
    return sig


def stabilize(M: IntegerSymmetricMatrix) -> IntegerSymmetricMatrix:
    """Append the hyperbolic block [[0,1],[1,0]] (the S-equivalence move)."""
    return M.block_sum(IntegerSymmetricMatrix([[0, 1], [1, 0]]))


def crossing_change_pair(
    P: IntegerSymmetricMatrix, a: int, case: int
) -> tuple[IntegerSymmetricMatrix, IntegerSymmetricMatrix]:
    """Matrices (M_plus, M_minus) for the two links across one crossing change.

    The pair is identical except for the last diagonal entry, greater by two
    in M_minus.  case 1 appends the 1x1 block (a -+ 1); case 2 the 2x2 block
    [[0, 1], [1, a -+ 1]].  a must be odd so diagonals stay even.
    """
    if case not in (1, 2):
        raise ValueError("case must be 1 or 2")
    if a % 2 == 0:
        raise ValueError("a must be odd to keep diagonals even")
    if not P.has_even_diagonal():
        raise ValueError("P must have even diagonal entries")
    if case == 1:
        plus = P.block_sum(IntegerSymmetricMatrix([[a - 1]]))
        minus = P.block_sum(IntegerSymmetricMatrix([[a + 1]]))
    else:
        plus = P.block_sum(IntegerSymmetricMatrix([[0, 1], [1, a - 1]]))
        minus = P.block_sum(IntegerSymmetricMatrix([[0, 1], [1, a + 1]]))
    return plus, minus


def arf_sign_from_det(det: int) -> int:
    """+1 when det = +-1 mod 8, -1 when det = +-3 mod 8 (knot determinants are odd)."""
    r = det % 8
    if r in (1, 7):
        return 1
    if r in (3, 5):
        return -1
    raise ValueError(f"determinant {det} is even")


def classical_invariants(A: SeifertData, primes: list[int]) -> LinkInvariantBundle:
    """Component count, determinant, signature, d_p and delta_p per odd prime."""
    M = A.M
    c = mu_of(M)
    det = abs(det_exact(M.entries))
    sig = signature(M)
    dps = {p: d_p_of(M, p) for p in primes}
    deltas = {p: delta_p(M, p) for p in primes}
    arf = arf_sign_from_det(det) if c == 1 else None
    return LinkInvariantBundle(c=c, det=det, sigma=sig, d_p=dps, delta_p=deltas, arf_sign=arf)


def load_seifert_data(text: str) -> SeifertData:
    """Seifert file format: the square-matrix text format; A itself need not
    be symmetric, only A + A^t is validated (even diagonal is automatic)."""
    from .exactlinalg import parse_matrix

    return SeifertData(parse_matrix(text))

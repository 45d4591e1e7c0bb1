"""Exact special values of the Jones, Q and Alexander polynomials.

Values live in fixed rings with integer coordinates:

* ``Cyclo24``  - Z[zeta] for zeta = exp(i*pi/12), basis 1..zeta^7 with
  zeta^8 = zeta^4 - 1.  This is the smallest cyclotomic ring containing
  every evaluation point's half power (t^(1/2) at t = 1, -1, zeta_3, i,
  zeta_6) together with i, sqrt3 and sqrt2; sqrt2 is genuinely needed since
  V(i) of an even-component proper link is an odd power of sqrt2.
* ``Root5`` - Z[sqrt5] for the Q-polynomial values, with ``GoldenInt``
  (Z[(1+sqrt5)/2]) used transiently when evaluating a Q polynomial at the
  reciprocal golden ratio, which is a unit there.

Equality is coordinatewise and exact; a float shadow exists only in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import IntegerSymmetricMatrix, det_exact, minor, transpose
from .linkform import LinkingFormPresentation, r_total, wall_decompose
from .numtheory import legendre, nu, p_part
from .seifert import SeifertData, LinkInvariantBundle, d_p_of, delta_p

# zeta^8 = zeta^4 - 1; powers of zeta as coordinate vectors
_DIM = 8


def _zeta_power_table() -> list[tuple[int, ...]]:
    table = []
    cur = [1, 0, 0, 0, 0, 0, 0, 0]
    for _ in range(24):
        table.append(tuple(cur))
        nxt = [0] + cur[:-1]
        if cur[-1]:  # zeta^8 = zeta^4 - 1
            nxt[4] += cur[-1]
            nxt[0] -= cur[-1]
        cur = nxt
    return table


_ZPOW = _zeta_power_table()


@dataclass(frozen=True)
class Cyclo24:
    """Element of Z[zeta_24] with exact integer coordinates."""

    coords: tuple[int, ...]

    def __init__(self, coords):
        c = tuple(int(x) for x in coords)
        if len(c) != _DIM:
            raise ValueError("Cyclo24 needs 8 coordinates")
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_int(cls, n: int) -> "Cyclo24":
        return cls((n, 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def zero(cls) -> "Cyclo24":
        return cls.from_int(0)

    @classmethod
    def one(cls) -> "Cyclo24":
        return cls.from_int(1)

    @classmethod
    def zeta_pow(cls, k: int) -> "Cyclo24":
        return cls(_ZPOW[k % 24])

    @classmethod
    def i(cls) -> "Cyclo24":
        return cls.zeta_pow(6)

    @classmethod
    def i_pow(cls, k: int) -> "Cyclo24":
        return cls.zeta_pow(6 * (k % 4))

    @classmethod
    def sqrt3(cls) -> "Cyclo24":
        # 2*zeta^2 - i
        return cls.zeta_pow(2) * 2 - cls.i()

    @classmethod
    def i_sqrt3(cls) -> "Cyclo24":
        # 2*zeta^4 - 1
        return cls.zeta_pow(4) * 2 - cls.one()

    @classmethod
    def sqrt2(cls) -> "Cyclo24":
        return cls.zeta_pow(3) + cls.zeta_pow(-3)

    def __add__(self, other: "Cyclo24") -> "Cyclo24":
        return Cyclo24(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Cyclo24") -> "Cyclo24":
        return Cyclo24(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Cyclo24":
        return Cyclo24(tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo24(tuple(a * other for a in self.coords))
        out = [0] * _DIM
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                k = i + j
                if k < _DIM:
                    out[k] += a * b
                else:
                    zk = _ZPOW[k]
                    for t in range(_DIM):
                        out[t] += a * b * zk[t]
        return Cyclo24(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cyclo24":
        if k < 0:
            raise ValueError("negative powers only for roots of unity")
        out = Cyclo24.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Cyclo24":
        out = Cyclo24.zero()
        for j, a in enumerate(self.coords):
            if a:
                out = out + Cyclo24.zeta_pow(-j) * a
        return out

    def norm_sq(self) -> "Cyclo24":
        return self * self.conj()

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def as_int(self) -> int | None:
        if all(a == 0 for a in self.coords[1:]):
            return self.coords[0]
        return None

    def to_complex(self) -> complex:
        from cmath import exp, pi

        z = exp(1j * pi / 12)
        return sum(a * z**j for j, a in enumerate(self.coords))

    def _as_monomial(self) -> tuple[int, int, int, int] | None:
        """Decompose as m * i^a * sqrt3^b * sqrt2^c with a,b,c in {0,1}."""
        if self.is_zero():
            return (0, 0, 0, 0)
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    basis = Cyclo24.i_pow(a) * Cyclo24.sqrt3() ** b * Cyclo24.sqrt2() ** c
                    ref = next(x for x in basis.coords if x != 0)
                    idx = basis.coords.index(ref)
                    num = self.coords[idx]
                    if num % ref != 0:
                        continue
                    m = num // ref
                    if basis * m == self:
                        return (m, a, b, c)
        return None

    def __str__(self) -> str:
        mono = self._as_monomial()
        if mono is None:
            return "zeta24" + str(self.coords)
        m, a, b, c = mono
        if m == 0:
            return "0"
        parts = []
        if abs(m) != 1 or (a == b == c == 0):
            parts.append(str(abs(m)))
        if a:
            parts.append("i")
        if b:
            parts.append("sqrt3")
        if c:
            parts.append("sqrt2")
        return ("-" if m < 0 else "") + "*".join(parts)


@dataclass(frozen=True)
class Root5:
    """Element a + b*sqrt5 of Z[sqrt5]."""

    a: int
    b: int

    @classmethod
    def from_int(cls, n: int) -> "Root5":
        return cls(n, 0)

    @classmethod
    def sqrt5_pow(cls, k: int) -> "Root5":
        if k < 0:
            raise ValueError("negative powers not in the ring")
        if k % 2 == 0:
            return cls(5 ** (k // 2), 0)
        return cls(0, 5 ** ((k - 1) // 2))

    def __add__(self, o: "Root5") -> "Root5":
        return Root5(self.a + o.a, self.b + o.b)

    def __neg__(self) -> "Root5":
        return Root5(-self.a, -self.b)

    def __sub__(self, o: "Root5") -> "Root5":
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return Root5(self.a * o, self.b * o)
        return Root5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def to_float(self) -> float:
        return self.a + self.b * 5**0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            if self.b == 1:
                return "sqrt5"
            if self.b == -1:
                return "-sqrt5"
            return f"{self.b}*sqrt5"
        sign = "+" if self.b > 0 else "-"
        babs = abs(self.b)
        btxt = "sqrt5" if babs == 1 else f"{babs}*sqrt5"
        return f"{self.a}{sign}{btxt}"


@dataclass(frozen=True)
class GoldenInt:
    """Element a + b*phi of Z[phi], phi = (1+sqrt5)/2, phi^2 = phi + 1.

    phi is a unit (1/phi = phi - 1), so Laurent polynomials in
    z = (sqrt5-1)/2 = 1/phi evaluate exactly in this ring.
    """

    a: int
    b: int

    def __add__(self, o: "GoldenInt") -> "GoldenInt":
        return GoldenInt(self.a + o.a, self.b + o.b)

    def __neg__(self) -> "GoldenInt":
        return GoldenInt(-self.a, -self.b)

    def __sub__(self, o: "GoldenInt") -> "GoldenInt":
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return GoldenInt(self.a * o, self.b * o)
        return GoldenInt(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    @classmethod
    def phi_pow(cls, k: int) -> "GoldenInt":
        out = cls(1, 0)
        base = cls(0, 1) if k >= 0 else cls(-1, 1)  # phi or 1/phi
        for _ in range(abs(k)):
            out = out * base
        return out

    def to_root5(self) -> Root5:
        # a + b*phi = (a + b/2) + (b/2) sqrt5
        if self.b % 2 != 0:
            raise ValueError(f"{self} is not in Z[sqrt5]")
        return Root5(self.a + self.b // 2, self.b // 2)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finitely supported Laurent polynomial; exponents may be half-integers,
    stored doubled (key = 2 * exponent)."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (doubled exponent, coefficient)

    def __init__(self, coeffs):
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = coeffs
        d: dict[int, int] = {}
        for e2, c in items:
            if c:
                d[int(e2)] = d.get(int(e2), 0) + int(c)
        object.__setattr__(
            self, "coeffs", tuple(sorted((e, c) for e, c in d.items() if c))
        )

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, e2: int, c: int = 1) -> "LaurentPolynomial":
        return cls({e2: c})

    def __add__(self, o: "LaurentPolynomial") -> "LaurentPolynomial":
        d = dict(self.coeffs)
        for e, c in o.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial(d)

    def __sub__(self, o: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + o * -1

    def __mul__(self, o):
        if isinstance(o, int):
            return LaurentPolynomial({e: c * o for e, c in self.coeffs})
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in o.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(d)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval_root_of_unity(self, halfpower_as_zeta24: int) -> Cyclo24:
        """Value when t^(1/2) = zeta_24^e; keys are exponents of t^(1/2)."""
        out = Cyclo24.zero()
        for e2, c in self.coeffs:
            out = out + Cyclo24.zeta_pow(halfpower_as_zeta24 * e2) * c
        return out

    def eval_golden_reciprocal_raw(self) -> GoldenInt:
        """Value at z = (sqrt5-1)/2 = 1/phi for integer-exponent polynomials."""
        out = GoldenInt(0, 0)
        for e2, c in self.coeffs:
            if e2 % 2 != 0:
                raise ValueError("Q polynomials have integer exponents")
            out = out + GoldenInt.phi_pow(-(e2 // 2)) * c
        return out

    def eval_golden_reciprocal(self) -> Root5:
        """Golden value converted into Z[sqrt5] (Q values always land there)."""
        return self.eval_golden_reciprocal_raw().to_root5()

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e2, c in self.coeffs:
            exp = Fraction(e2, 2)
            if exp == 0:
                t = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                estr = str(exp) if exp.denominator == 1 else f"({exp})"
                t = f"{mag}{var}^{estr}"
            terms.append(("- " if c < 0 else "+ ") + t)
        first = terms[0].replace("+ ", "").replace("- ", "-")
        return " ".join([first] + terms[1:])

    def __str__(self) -> str:
        return self.to_str()


# half powers t^(1/2) at the five evaluation points, as powers of zeta_24
HALFPOWER = {"1": 0, "-1": 6, "zeta3": 4, "i": 3, "zeta6": 2}


@dataclass(frozen=True)
class JonesSpecialValues:
    at_1: Cyclo24
    at_minus1: Cyclo24
    at_zeta3: Cyclo24
    at_i: Cyclo24
    at_zeta6: Cyclo24

    def as_dict(self) -> dict[str, Cyclo24]:
        return {
            "1": self.at_1,
            "-1": self.at_minus1,
            "zeta3": self.at_zeta3,
            "i": self.at_i,
            "zeta6": self.at_zeta6,
        }


def jones_at_zeta6_knot(det: int, dim_f3: int, wall_parity: int) -> Cyclo24:
    """Closed form for a knot's Jones value at the primitive sixth root.

    With det = 3^alpha * q (q coprime to 3):
    nu(q) * (-1)^(alpha + dim_f3 + wall_parity) * (i*sqrt3)^dim_f3,
    where wall_parity is the parity of non-residue summands in the Wall
    decomposition of the linking form at p = 3 (the parity the diagram
    oracle pins down; the residue-summand parity differs from it by
    dim_f3).
    """
    if det <= 0 or det % 2 == 0:
        raise ValueError("knot determinants are odd and positive")
    alpha, q = p_part(det, 3)
    sign = nu(q) * (-1) ** ((alpha + dim_f3 + wall_parity) % 2)
    return Cyclo24.i_sqrt3() ** dim_f3 * sign


def jones_zeta6_closed_form(M: IntegerSymmetricMatrix) -> Cyclo24:
    """Knot route: determinant, F_3-dimension and Wall parities from M."""
    from .linkform import b_total

    det = abs(det_exact(M.entries))
    d3 = d_p_of(M, 3)
    b3 = b_total(wall_decompose(LinkingFormPresentation(M)), 3)
    return jones_at_zeta6_knot(det, d3, b3)


def jones_zeta6_via_delta3(M: IntegerSymmetricMatrix, c: int | None = None) -> Cyclo24:
    """Link route: delta_3 * i^(c-1) * (i*sqrt3)^(d_3)."""
    from .seifert import mu_of

    cc = mu_of(M) if c is None else c
    d3 = d_p_of(M, 3)
    return Cyclo24.i_pow(cc - 1) * Cyclo24.i_sqrt3() ** d3 * delta_p(M, 3)


def jones_special_values(
    bundle: LinkInvariantBundle, delta3: int, proper_arf: int | None
) -> JonesSpecialValues:
    """The five special values from classical invariants.

    proper_arf is the multiplicative Arf sign of a proper link and must be
    None exactly when the link is improper (then the value at i is 0).
    """
    c = bundle.c
    if c == 1 and proper_arf is None:
        raise ValueError("a knot is proper; its Arf sign is required")
    if 3 not in bundle.d_p:
        raise ValueError("bundle must carry d_3")
    at_1 = Cyclo24.from_int((-2) ** (c - 1))
    at_minus1 = Cyclo24.i_pow(bundle.sigma) * bundle.det
    at_zeta3 = Cyclo24.from_int((-1) ** (c - 1))
    if proper_arf is None:
        at_i = Cyclo24.zero()
    else:
        at_i = (Cyclo24.sqrt2() ** (c - 1)) * ((-1) ** (c - 1) * proper_arf)
    at_zeta6 = Cyclo24.i_pow(c - 1) * Cyclo24.i_sqrt3() ** bundle.d_p[3] * delta3
    return JonesSpecialValues(at_1, at_minus1, at_zeta3, at_i, at_zeta6)


def q_at_golden(det: int, d5: int, wall_parity: int) -> Root5:
    """Closed form for a knot's Q value at (sqrt5-1)/2.

    With det = 5^alpha * q and wall_parity the parity of non-residue Wall
    summands at 5: legendre(q,5) * (-1)^wall_parity * sqrt5^d5.
    """
    if det <= 0 or det % 2 == 0:
        raise ValueError("knot determinants are odd and positive")
    _, q = p_part(det, 5)
    return Root5.sqrt5_pow(d5) * (legendre(q, 5) * (-1) ** (wall_parity % 2))


def q_golden_closed_form(M: IntegerSymmetricMatrix) -> Root5:
    """Knot route via the Wall invariants at p = 5."""
    from .linkform import b_total

    det = abs(det_exact(M.entries))
    d5 = d_p_of(M, 5)
    b5 = b_total(wall_decompose(LinkingFormPresentation(M)), 5)
    return q_at_golden(det, d5, b5)


def q_at_golden_link(M: IntegerSymmetricMatrix) -> Root5:
    """delta_5(M) * sqrt5^(d_5), valid for links (even-diagonal M)."""
    return Root5.sqrt5_pow(d_p_of(M, 5)) * delta_p(M, 5)


def alexander_poly(A: SeifertData) -> LaurentPolynomial:
    """Conway-normalized Alexander polynomial det(-t^(1/2) A + t^(-1/2) A^t).

    Computed as x^(-n) P(x^2) for P(y) = det(A^t - y A), with P found by
    evaluation at n+1 integers and exact Lagrange interpolation.
    """
    n = A.n
    if n == 0:
        return LaurentPolynomial.one()
    at = transpose(A.A)
    pts = []
    for y in range(n + 1):
        m = [[at[i][j] - y * A.A[i][j] for j in range(n)] for i in range(n)]
        pts.append((y, det_exact(m)))
    coeffs = _interpolate_int(pts)
    return LaurentPolynomial({2 * j - n: c for j, c in enumerate(coeffs) if c})


def _interpolate_int(pts: list[tuple[int, int]]) -> list[int]:
    """Exact Lagrange interpolation; result must be integral."""
    n = len(pts)
    coeffs = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == k:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] -= c * xj
                new[d + 1] += c
            basis = new
            denom *= xk - xj
        for d, c in enumerate(basis):
            coeffs[d] += c * yk / denom
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("interpolation of an integer polynomial failed")
        out.append(int(c))
    return out


def alexander_at_minus1(A: SeifertData) -> Cyclo24:
    """Exact value at t = -1 (understood as t^(1/2) = i)."""
    return alexander_poly(A).eval_root_of_unity(HALFPOWER["-1"])

"""p-adic valuations, Newton polygons and the monodromy-group decision procedures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

INF = math.inf
PadicValue = Union[Fraction, float]  # a Fraction, or INF for zero
RationalMatrix = list[list[Fraction]]


class PadicError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def is_prime_power(r: int) -> bool:
    if r < 2:
        return False
    for q in range(2, r + 1):
        if r % q == 0:
            # q is the smallest prime factor
            while r % q == 0:
                r //= q
            return r == 1
    return False


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise PadicError(f"{p} is not prime")


def _int_vp(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(x, p: int) -> PadicValue:
    """p-adic valuation of a rational number, ``INF`` for zero."""
    _check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(_int_vp(x.numerator, p) - _int_vp(x.denominator, p))


def format_value(v: PadicValue) -> str:
    return "inf" if v == INF else str(v)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


def newton_polygon_slopes(coeffs: Sequence, p: int) -> list[PadicValue]:
    """Valuations of the roots of ``sum coeffs[i] X^i``, with multiplicity, ascending.

    Read off the lower convex hull of the points ``(i, v_p(c_i))``: a segment
    of slope ``s`` and width ``w`` accounts for ``w`` roots of valuation ``-s``.
    Roots at zero (vanishing low coefficients) get valuation ``INF``.
    """
    _check_prime(p)
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise PadicError("zero polynomial")
    zeros = 0
    while cs[zeros] == 0:
        zeros += 1
    pts = [(i, vp(c, p)) for i, c in enumerate(cs) if c != 0]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out: list[PadicValue] = [INF] * zeros
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.extend([-(y2 - y1) / (x2 - x1)] * (x2 - x1))
    return sorted(out)


def cyclotomic_coefficients(m: int) -> list[int]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise PadicError("m must be positive")
    # Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}
    num = [1]
    den = [1]

    def mul(a: list[int], d: int) -> list[int]:
        out = [0] * (len(a) + d)
        for i, c in enumerate(a):
            out[i + d] += c
            out[i] -= c
        return out

    for d in range(1, m + 1):
        if m % d == 0:
            mu = _moebius(m // d)
            if mu == 1:
                num = mul(num, d)
            elif mu == -1:
                den = mul(den, d)
    # exact division num / den
    q = [0] * (len(num) - len(den) + 1)
    r = list(num)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, dj in enumerate(den):
            r[i + j] -= c * dj
    assert not any(r)
    return q


def _moebius(n: int) -> int:
    out = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    if n > 1:
        out = -out
    return out


def _shift_one_minus(coeffs: Sequence[int]) -> list[int]:
    """Coefficients of f(1 - X) from those of f(X)."""
    d = len(coeffs) - 1
    out = [0] * (d + 1)
    for k, c in enumerate(coeffs):
        if c:
            for j in range(k + 1):
                out[j] += c * math.comb(k, j) * (-1) ** j
    return out


def cyclotomic_unit_valuation(p: int, l: int, n: int) -> PadicValue:
    """v_p(lambda) when 1 - lambda is a primitive l^n-th root of unity.

    Computed from the Newton polygon of Phi_{l^n}(1 - X); for l = p this is
    ``1 / (p^(n-1) (p - 1))``.
    """
    _check_prime(p)
    if not is_prime(l):
        raise PadicError(f"{l} is not prime")
    if not isinstance(n, int) or n < 1:
        raise PadicError("n must be a positive integer")
    slopes = newton_polygon_slopes(_shift_one_minus(cyclotomic_coefficients(l**n)), p)
    if len(set(slopes)) != 1:
        raise ArithmeticError(f"unexpected Newton polygon {slopes}")
    return slopes[0]


def stated_cyclotomic_exponent(p: int, n: int) -> Fraction:
    """The alternative exponent ``n / (p^n - 1)``; it agrees with the classical value at n = 1 only."""
    return Fraction(n, p**n - 1)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def parse_matrix(rows: Iterable[Iterable]) -> RationalMatrix:
    M = [[Fraction(x) if not isinstance(x, str) else Fraction(x.strip()) for x in row] for row in rows]
    if not M or any(len(row) != len(M) for row in M):
        raise PadicError("matrix must be square and nonempty")
    return M


def charpoly(M: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients of det(x I - M), highest degree first (Berkowitz, division free)."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    C = [Fraction(1)]
    for k in range(n):
        a = A[k][k]
        R = A[k][:k]
        S = [A[i][k] for i in range(k)]
        q = [Fraction(1), -a]
        v = S
        for _ in range(k):
            q.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(k)) for i in range(k)]
        C = [sum(q[j] * C[i - j] for j in range(i + 1) if i - j < len(C)) for i in range(k + 2)]
    return C


def eigenvalue_deviation_bound(M: Sequence[Sequence], p: int) -> PadicValue:
    """Minimum p-adic valuation over the eigenvalues of M (INF if M is nilpotent)."""
    cp = charpoly(M)
    slopes = newton_polygon_slopes(cp[::-1], p)
    return min(slopes)


def min_entry_valuation(M: Sequence[Sequence], p: int) -> PadicValue:
    return min((vp(x, p) for row in M for x in row), default=INF)


def _identity_minus(G: Sequence[Sequence]) -> RationalMatrix:
    n = len(G)
    return [[Fraction(G[i][j]) - (1 if i == j else 0) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> RationalMatrix:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def threshold(p: int) -> tuple[Fraction, bool]:
    """Lower bound on q for the connectedness criterion and whether it is strict."""
    _check_prime(p)
    if p == 2:
        return Fraction(1), False
    return Fraction(1, p - 1), True


def threshold_ok(p: int, q) -> bool:
    t, strict = threshold(p)
    q = Fraction(q)
    return q > t if strict else q >= t


@dataclass(frozen=True)
class CertificateResult:
    passed: bool
    p: int
    q: Fraction
    threshold: Fraction
    strict: bool
    per_generator: tuple[tuple[PadicValue, PadicValue], ...]
    reasons: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "p": self.p,
            "q": str(self.q),
            "threshold": str(self.threshold),
            "threshold_strict": self.strict,
            "per_generator": [
                {"congruence_valuation": format_value(c), "eigenvalue_valuation_bound": format_value(e)}
                for c, e in self.per_generator
            ],
            "reasons": list(self.reasons),
        }


def connectedness_certificate(generators: Sequence[Sequence[Sequence]], p: int, q) -> CertificateResult:
    """Check the hypotheses of the connectedness criterion on explicit generators.

    Passes iff q clears the threshold (q > 1/(p-1) for odd p, q >= 1 for p = 2)
    and every generator is congruent to the identity modulo p^q entrywise.
    The per-generator eigenvalue bound certifies that no eigenvalue of G is a
    nontrivial root of unity.
    """
    _check_prime(p)
    q = Fraction(q)
    if q <= 0:
        raise PadicError("q must be positive")
    gens = [parse_matrix(G) for G in generators]
    t, strict = threshold(p)
    reasons = []
    if not threshold_ok(p, q):
        reasons.append("q <= 1/(p-1)" if strict else "q < 1 for p = 2")
    per = []
    for idx, G in enumerate(gens):
        if charpoly(G)[-1] == 0:
            raise PadicError(f"generator {idx} is not invertible")
        D = _identity_minus(G)
        cong = min_entry_valuation(D, p)
        eig = eigenvalue_deviation_bound(D, p)
        if cong < q:
            reasons.append(f"generator {idx} is only congruent to I modulo p^{cong}")
        per.append((cong, eig))
    return CertificateResult(not reasons, p, q, t, strict, tuple(per), tuple(reasons))


# ---------------------------------------------------------------------------
# Classifiers
# ---------------------------------------------------------------------------

SL_OR_FINITE_MOD_SCALARS = "G_E contains SL or G_E modulo scalars is finite"
SL_OR_FINITE = "G_E^0 = SL or G_E finite"
ORTHOGONAL_OR_FINITE = "G_E = O or SO or finite"
SYMPLECTIC_OR_FINITE = "G_E = Sp or finite"
INCONCLUSIVE = "inconclusive"
ALMOST_SIMPLE = "almost simple"


def larsen_classify(
    r: int,
    dim_endend: int,
    sym2_nonzero: bool,
    wedge2_nonzero: bool,
    det_finite_order: bool,
) -> str:
    """Moment criterion from the invariants of End(End E)."""
    if dim_endend < 1:
        raise PadicError("dim Gamma(End(End E)) is at least 1")
    if dim_endend == 2 and (sym2_nonzero or wedge2_nonzero):
        raise PadicError("a bilinear form forces dim Gamma(End(End E)) >= 3")
    if dim_endend == 2:
        return SL_OR_FINITE if det_finite_order else SL_OR_FINITE_MOD_SCALARS
    if dim_endend == 3:
        if sym2_nonzero and not wedge2_nonzero:
            return ORTHOGONAL_OR_FINITE
        if wedge2_nonzero and not sym2_nonzero and r >= 3:
            return SYMPLECTIC_OR_FINITE
    return INCONCLUSIVE


def almost_simplicity_test(r: int, dim_inv_r: int, r_is_prime_power: bool | None = None) -> str:
    """A proper product of simple factors forces at least 4 invariants in V^{(x) r}."""
    if r < 2:
        raise PadicError("rank must be at least 2")
    if dim_inv_r < 0:
        raise PadicError("invariant dimension must be nonnegative")
    if r_is_prime_power is None:
        r_is_prime_power = is_prime_power(r)
    if dim_inv_r <= 3 or r_is_prime_power:
        return ALMOST_SIMPLE
    return INCONCLUSIVE


def analytic_dimension_estimate(sizes: Sequence[int], p: int) -> int | None:
    """Stable growth exponent k with #G_n ~ c p^{kn}, or None if the tail has not settled.

    The tail is the last third of the step exponents, at least two of them.
    """
    _check_prime(p)
    sizes = [int(s) for s in sizes]
    if any(s < 1 for s in sizes):
        raise PadicError("sizes must be positive")
    ks = []
    for a, b in zip(sizes, sizes[1:]):
        if b % a:
            raise PadicError(f"{a} does not divide {b}")
        ratio = b // a
        k = 0
        while ratio % p == 0:
            ratio //= p
            k += 1
        if ratio != 1:
            raise PadicError(f"size ratio {b // a} is not a power of {p}")
        ks.append(k)
    if len(ks) < 2:
        return None
    tail = ks[-max(2, math.ceil(len(ks) / 3)):]
    return tail[0] if len(set(tail)) == 1 else None

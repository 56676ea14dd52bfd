"""Kernel and cokernel bundles on projective space.

A :class:`KernelBundleSpec` records either ``0 -> E -> sum O(a_i) -> sum O(b_j) -> 0``
(``form="kernel"``) or ``0 -> sum O(a_i) -> sum O(b_j) -> E -> 0``
(``form="cokernel"``) on P^n.  Chow classes live in Z[h]/h^(n+1) with
``h^n`` evaluated to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import padic


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class ChowClass:
    coefficients: tuple[int, ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.ambient_dim + 1:
            raise BundleError("a class on P^n has n + 1 coefficients")

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __mul__(self, other: "ChowClass") -> "ChowClass":
        if other.ambient_dim != self.ambient_dim:
            raise BundleError("ambient dimensions differ")
        n = self.ambient_dim
        out = [0] * (n + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients[: n + 1 - i]):
                out[i + j] += a * b
        return ChowClass(tuple(out), n)

    @classmethod
    def one(cls, n: int) -> "ChowClass":
        return cls((1,) + (0,) * n, n)

    @classmethod
    def linear(cls, a: int, n: int) -> "ChowClass":
        """1 + a h."""
        return cls(((1, a) + (0,) * (n - 1)) if n >= 1 else (1,), n)

    @classmethod
    def inverse_linear(cls, a: int, n: int) -> "ChowClass":
        """(1 + a h)^-1 truncated."""
        return cls(tuple((-a) ** k for k in range(n + 1)), n)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0 and i:
                continue
            terms.append(str(c) if i == 0 else f"{c}*h" if i == 1 else f"{c}*h^{i}")
        return " + ".join(terms)


@dataclass(frozen=True)
class KernelBundleSpec:
    n: int
    form: str
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.form not in ("kernel", "cokernel"):
            raise BundleError(f"form must be 'kernel' or 'cokernel', got {self.form!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise BundleError("ambient dimension must be a positive integer")
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if self.rank <= 0:
            raise BundleError(f"rank {self.rank} is not positive")

    @property
    def rank(self) -> int:
        return len(self.a) - len(self.b) if self.form == "kernel" else len(self.b) - len(self.a)

    @property
    def degree(self) -> int:
        s = sum(self.a) - sum(self.b)
        return s if self.form == "kernel" else -s

    def dual(self) -> "KernelBundleSpec":
        """Presentation of the dual bundle: twists negated and swapped, form flipped."""
        other = "cokernel" if self.form == "kernel" else "kernel"
        return KernelBundleSpec(self.n, other, tuple(-x for x in self.b), tuple(-x for x in self.a))

    @classmethod
    def from_json(cls, data: Mapping) -> "KernelBundleSpec":
        try:
            return cls(int(data["n"]), str(data.get("form", "kernel")), tuple(data["a"]), tuple(data.get("b", ())))
        except KeyError as exc:
            raise BundleError(f"bundle spec missing field {exc}") from None

    def to_json(self) -> dict:
        return {"n": self.n, "form": self.form, "a": list(self.a), "b": list(self.b)}


# syzygy bundle Syz(X^2, Y^2, pZ^2 + XY)(3) on P^2
EXAMPLE_SYZYGY = KernelBundleSpec(2, "kernel", (1, 1, 1), (3,))


def total_chern(spec: KernelBundleSpec) -> ChowClass:
    n = spec.n
    c = ChowClass.one(n)
    top, bottom = (spec.a, spec.b) if spec.form == "kernel" else (spec.b, spec.a)
    for x in top:
        c = c * ChowClass.linear(x, n)
    for x in bottom:
        c = c * ChowClass.inverse_linear(x, n)
    return c


@dataclass(frozen=True)
class BundleInvariants:
    rank: int
    c1: int
    slope: Fraction
    c2: int | None
    discriminant: int | None

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "c1": self.c1,
            "slope": str(self.slope),
            "c2": self.c2,
            "discriminant": self.discriminant,
        }


def numeric_invariants(spec: KernelBundleSpec, need_discriminant: bool = True) -> BundleInvariants:
    """Rank, c1, slope, c2 and discriminant 2 r c2 - (r - 1) c1^2."""
    if spec.n < 2 and need_discriminant:
        raise BundleError("c2 and the discriminant need ambient dimension >= 2")
    c = total_chern(spec)
    r = spec.rank
    c1 = c[1]
    if spec.n < 2:
        return BundleInvariants(r, c1, Fraction(c1, r), None, None)
    c2 = c[2]
    return BundleInvariants(r, c1, Fraction(c1, r), c2, 2 * r * c2 - (r - 1) * c1 * c1)


STABLE = "stable"
NOT_STABLE = "not_stable"
PRECONDITION_VIOLATED = "precondition_violated"


def bs_stability(spec: KernelBundleSpec) -> str:
    """Stability of a rank-n bundle on P^n from a minimal resolution by line bundles.

    With both twist lists sorted descending the resolution must satisfy
    ``a_i < b_{i+n}`` (1-based); the bundle is then stable iff ``b_1 < mu(E)``.
    """
    if spec.form != "cokernel":
        raise BundleError("stability criterion needs the cokernel (resolution) form; use spec.dual()")
    r = spec.rank
    if spec.n != r:
        raise BundleError(f"criterion applies to rank-n bundles on P^n (rank {r}, n = {spec.n})")
    a = sorted(spec.a, reverse=True)
    b = sorted(spec.b, reverse=True)
    if any(not a[i] < b[i + r] for i in range(len(a))):
        return PRECONDITION_VIOLATED
    mu = Fraction(sum(b) - sum(a), r)
    return STABLE if b[0] < mu else NOT_STABLE


@dataclass(frozen=True)
class LangerResult:
    bound: Fraction
    a_min: int

    def to_json(self) -> dict:
        return {"bound": str(self.bound), "a_min": self.a_min}


def langer_bound(r: int, discriminant_degree: int, top_selfint: int = 1) -> LangerResult:
    """Smallest integer a with a > (r-1)/r * Delta.H^(n-2) + 1/(r (r-1) H^n)."""
    if r < 2:
        raise BundleError("restriction bound needs rank >= 2")
    if top_selfint < 1:
        raise BundleError("H^n must be positive")
    bound = Fraction(r - 1, r) * discriminant_degree + Fraction(1, r * (r - 1) * top_selfint)
    return LangerResult(bound, math.floor(bound) + 1)


def langer_restriction_degree(spec: KernelBundleSpec, hyperplane_selfint: int = 1) -> LangerResult:
    inv = numeric_invariants(spec)
    return langer_bound(inv.rank, inv.discriminant, hyperplane_selfint)


# ---------------------------------------------------------------------------
# Vanishing calculus
# ---------------------------------------------------------------------------

Key = tuple[int, int, int]  # (tensor power, twist, cohomological degree)


@dataclass(frozen=True)
class VanishingEntry:
    key: Key
    via: str  # "line-bundle" or "sequence"
    depends_on: tuple[Key, ...]
    depth: int


@dataclass
class VanishingReport:
    r: int
    twists_a: tuple[int, ...]
    twists_b: tuple[int, ...]
    claims: list[Key]
    entries: dict[Key, VanishingEntry] = field(default_factory=dict)

    def certified(self, n: int, m: int, k: int) -> bool:
        return (n, m, k) in self.entries

    def sections_vanish(self) -> dict[int, bool]:
        """Gamma(P^r, E^{(x) n}) = 0 for 0 < n < r."""
        return {n: self.certified(n, 0, 0) for n in range(1, self.r)}

    def chain_length(self, n: int, m: int, k: int) -> int:
        return self.entries[(n, m, k)].depth

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "claims": [list(c) for c in self.claims],
            "sections_vanish": {str(n): v for n, v in self.sections_vanish().items()},
            "entries": [
                {"key": list(e.key), "via": e.via, "depends_on": [list(d) for d in e.depends_on], "depth": e.depth}
                for _, e in sorted(self.entries.items())
            ],
        }


def _line_bundle_vanishes(r: int, m: int, k: int) -> bool:
    """H^k(P^r, O(m)) = 0 for 0 < k < r, and for k = 0 when m < 0."""
    return 0 < k < r or (k == 0 and m < 0)


def cohomology_vanishing(spec: KernelBundleSpec, m_min: int | None = None) -> VanishingReport:
    """Certify H^k(E^{(x) n}(m)) = 0 for m_min <= m <= 0, 0 < n < r, k < r - n.

    Each entry is justified either by line-bundle cohomology (n = 0) or by the
    twisted resolution ``0 -> sum E^{n-1}(m + a_i) -> sum E^{n-1}(m + b_j) -> E^n(m) -> 0``:
    H^k(E^n(m)) dies once every H^k(E^{n-1}(m + b_j)) and H^{k+1}(E^{n-1}(m + a_i)) does.
    """
    if spec.form != "cokernel":
        raise BundleError("vanishing calculus needs the cokernel (resolution) form")
    r = spec.rank
    verdict = bs_stability(spec)
    if verdict != STABLE:
        raise BundleError(f"resolution is {verdict}, not stable")
    if spec.degree != 0:
        raise BundleError(f"degree {spec.degree} is not 0")
    for name, twists in (("a", spec.a), ("b", spec.b)):
        for x in twists:
            if x >= 0:
                raise BundleError(f"twist {name} = {x} is not negative")
    if m_min is None:
        m_min = -r
    claims = [(n, m, k) for n in range(1, r) for m in range(m_min, 1) for k in range(r - n)]
    report = VanishingReport(r, spec.a, spec.b, claims)
    entries = report.entries

    def prove(key: Key) -> bool:
        if key in entries:
            return True
        n, m, k = key
        if n == 0:
            if _line_bundle_vanishes(r, m, k):
                entries[key] = VanishingEntry(key, "line-bundle", (), 0)
                return True
            return False
        deps = [(n - 1, m + b, k) for b in spec.b] + [(n - 1, m + a, k + 1) for a in spec.a]
        deps = list(dict.fromkeys(deps))
        if not all(prove(d) for d in deps):
            return False
        depth = 1 + max(entries[d].depth for d in deps)
        entries[key] = VanishingEntry(key, "sequence", tuple(deps), depth)
        return True

    for c in claims:
        if not prove(c):
            raise BundleError(f"could not certify vanishing of H^{c[2]}(E^{c[0]}({c[1]}))")
    return report


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

QUOTED_CURVE_DEGREE = "d > 7"


@dataclass
class BundleReport:
    spec: KernelBundleSpec
    invariants: BundleInvariants
    resolution: KernelBundleSpec
    stability: str
    langer: LangerResult | None
    vanishing: VanishingReport | None
    p: int
    q: Fraction
    trivial_mod_pq: bool
    threshold_passed: bool
    conclusions: list[str]
    notes: list[str]
    group: str | None

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "invariants": self.invariants.to_json(),
            "resolution": self.resolution.to_json(),
            "stability": self.stability,
            "langer": self.langer.to_json() if self.langer else None,
            "min_curve_degree": self.langer.a_min if self.langer else None,
            "sections_vanish": (
                {str(n): v for n, v in self.vanishing.sections_vanish().items()} if self.vanishing else None
            ),
            "p": self.p,
            "q": str(self.q),
            "trivial_mod_pq": self.trivial_mod_pq,
            "trivial_mod_pq_provenance": "asserted by caller",
            "threshold_passed": self.threshold_passed,
            "conclusions": self.conclusions,
            "notes": self.notes,
            "group": self.group,
        }

    def render(self) -> str:
        inv = self.invariants
        lines = [
            f"bundle: {self.spec.form} on P^{self.spec.n}, a={list(self.spec.a)}, b={list(self.spec.b)}",
            f"rank {inv.rank}, c1 = {inv.c1}, c2 = {inv.c2}, slope = {inv.slope}, discriminant = {inv.discriminant}",
            f"resolution: a={list(self.resolution.a)}, b={list(self.resolution.b)} -> {self.stability}",
        ]
        if self.langer:
            lines.append(
                f"restriction: stable on curves of degree a > {self.langer.bound}, i.e. a >= {self.langer.a_min}"
                f" (quoted: {QUOTED_CURVE_DEGREE})"
            )
        if self.vanishing:
            for n, ok in self.vanishing.sections_vanish().items():
                lines.append(f"Gamma(P^{self.vanishing.r}, E^{n}) = 0: {'certified' if ok else 'not certified'}")
        lines.append(
            f"p = {self.p}, q = {self.q}: trivial mod p^q asserted = {self.trivial_mod_pq}, "
            f"threshold {'passed' if self.threshold_passed else 'failed'}"
        )
        lines.extend(f"note: {n}" for n in self.notes)
        lines.extend(f"=> {c}" for c in self.conclusions)
        if self.group:
            lines.append(f"G = {self.group}")
        return "\n".join(lines)


def analyze_bundle(
    spec: KernelBundleSpec,
    p: int,
    q,
    trivial_mod_pq: bool,
    sections_at_r: int | None = None,
) -> BundleReport:
    """Run the geometric checks, then the group-theoretic conclusions they license."""
    q = Fraction(q)
    inv = numeric_invariants(spec)
    r = inv.rank
    resolution = spec if spec.form == "cokernel" else spec.dual()
    notes: list[str] = []
    if spec.form == "kernel":
        notes.append("stability and vanishing are checked on the dual presentation (E stable iff E* stable)")
        if r == 2 and inv.c1 == 0:
            notes.append("rank 2 with trivial determinant: E is isomorphic to its dual")
        else:
            notes.append("invariants of tensor powers of E and of its dual have equal dimension")
    try:
        stability = bs_stability(resolution)
    except BundleError as exc:
        stability = PRECONDITION_VIOLATED
        notes.append(str(exc))
    langer = langer_restriction_degree(spec) if r >= 2 else None
    vanishing = None
    if stability == STABLE and inv.c1 == 0:
        vanishing = cohomology_vanishing(resolution)
    passed = padic.threshold_ok(p, q)
    conclusions: list[str] = []
    group = None
    if stability == STABLE:
        conclusions.append(f"restriction to a smooth curve of degree >= {langer.a_min} is stable")
    if not trivial_mod_pq:
        notes.append("no trivial-mod-p^q model asserted: group conclusions withheld")
    elif not passed:
        t, strict = padic.threshold(p)
        notes.append(f"q = {q} does not clear the threshold {'>' if strict else '>='} {t}: group conclusions withheld")
    elif stability != STABLE or inv.c1 != 0:
        notes.append("group conclusions need a stable bundle of degree 0")
    else:
        conclusions.append("Tannaka group is connected")
        conclusions.append("Tannaka group is semisimple (stable, det trivial)")
        if vanishing and all(vanishing.sections_vanish().values()):
            conclusions.append(f"no invariants in E^n for 0 < n < {r}: all simple components are of type A")
        verdict = None
        if sections_at_r is not None:
            verdict = padic.almost_simplicity_test(r, sections_at_r)
        elif padic.is_prime_power(r):
            verdict = padic.ALMOST_SIMPLE
        if verdict is not None:
            conclusions.append(f"almost simplicity: {verdict}")
        if r == 2:
            conclusions.append("the only faithful irreducible 2-dimensional representation of a semisimple group is SL(2)")
            group = "SL(2)"
        elif verdict == padic.ALMOST_SIMPLE:
            group = f"almost simple of type A, rank-{r} faithful irreducible"
    return BundleReport(spec, inv, resolution, stability, langer, vanishing, p, q, trivial_mod_pq, passed,
                        conclusions, notes, group)

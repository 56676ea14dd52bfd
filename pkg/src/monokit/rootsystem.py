"""Cartan data for simple and composite root systems.

Conventions
-----------
Weights are integer tuples of Dynkin labels (coordinates in the basis of
fundamental weights).  ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the
simple root ``alpha_j`` written in Dynkin labels is the j-th *column* of the
Cartan matrix and ``diag(symmetrizer) @ cartan`` is the (symmetric) Gram
matrix of the simple roots.  Long roots have squared length 2 in every
component.  Node numbering follows the Bourbaki planches:

====  ==========================================================
type  numbering
====  ==========================================================
A_l   chain 1 - 2 - ... - l
B_l   chain 1 - ... - (l-1) => l, alpha_l short
C_l   chain 1 - ... - (l-1) <= l, alpha_l long
D_l   chain 1 - ... - (l-2), fork (l-2) - (l-1) and (l-2) - l
E_l   chain 1 - 3 - 4 - ... - l, branch node 2 attached to 4
F_4   1 - 2 => 3 - 4, alpha_3 and alpha_4 short
G_2   1 <= 2, alpha_1 short
====  ==========================================================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Weight = tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Invalid root-system or weight input."""


def _check_component(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    allowed = {
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family, True)
    if not allowed:
        rule = {
            "B": "B needs rank >= 2",
            "C": "C needs rank >= 3",
            "D": "D needs rank >= 3",
            "E": "E needs rank 6, 7 or 8",
            "F": "F needs rank 4",
            "G": "G needs rank 2",
        }[family]
        raise RootSystemError(f"{family}{rank}: {rule}")


def _simple_component(family: str, l: int) -> tuple[list[list[int]], list[Fraction]]:
    """Cartan matrix and symmetrizer of one simple component."""
    A = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    d = [Fraction(1)] * l

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        A[i][j] = aij
        A[j][i] = aji

    if family == "A":
        for i in range(l - 1):
            link(i, i + 1)
    elif family == "B":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 2, l - 1, -1, -2)
        d[l - 1] = Fraction(1, 2)
    elif family == "C":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 2, l - 1, -2, -1)
        d = [Fraction(1, 2)] * (l - 1) + [Fraction(1)]
    elif family == "D":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 3, l - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, l - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
        d = [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)]
    elif family == "G":
        link(0, 1, -3, -1)
        d = [Fraction(1, 3), Fraction(1)]
    return A, d


def _dual_permutation(family: str, l: int) -> list[int]:
    """Permutation p with (-w0 lambda)_i = lambda_{p[i]} on one component."""
    ident = list(range(l))
    if family == "A":
        return ident[::-1]
    if family == "D" and l % 2 == 1:
        return ident[: l - 2] + [l - 1, l - 2]
    if family == "E" and l == 6:
        # (a1..a6) -> (a6, a2, a5, a4, a3, a1)
        return [5, 1, 4, 3, 2, 0]
    return ident


def _mat_inverse(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith normal form of a square integer matrix.

    Returns ``(diag, U)`` with ``U`` unimodular such that ``U A V = diag``
    for some unimodular ``V``.  Only ``U`` is tracked because it is all that
    lattice membership tests need.
    """
    n = len(A)
    S = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def add_row(dst: int, src: int, f: int) -> None:
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def swap_cols(i: int, j: int) -> None:
        for row in S:
            row[i], row[j] = row[j], row[i]

    def add_col(dst: int, src: int, f: int) -> None:
        for row in S:
            row[dst] += f * row[src]

    for t in range(n):
        nonzero = [(abs(S[i][j]), i, j) for i in range(t, n) for j in range(t, n) if S[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, n):
                q = S[i][t] // S[t][t]
                if q:
                    add_row(i, t, -q)
                if S[i][t]:
                    done = False
                    if abs(S[i][t]) < abs(S[t][t]):
                        swap_rows(t, i)
            for j in range(t + 1, n):
                q = S[t][j] // S[t][t]
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    done = False
                    if abs(S[t][j]) < abs(S[t][t]):
                        swap_cols(t, j)
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return [S[i][i] for i in range(n)], U


@dataclass(frozen=True)
class FundamentalGroupInfo:
    invariant_factors: tuple[int, ...]
    order: int
    exponent: int


@dataclass(frozen=True)
class RootSystem:
    """A (possibly composite) reduced root system given by its Dynkin components."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise RootSystemError("a root system needs at least one component")
        for fam, rank in self.components:
            _check_component(fam, rank)

    # -- basic data ---------------------------------------------------------

    def __str__(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)

    @property
    def total_rank(self) -> int:
        return sum(r for _, r in self.components)

    rank = total_rank

    @cached_property
    def _blocks(self) -> tuple[tuple[list[list[int]], list[Fraction]], ...]:
        return tuple(_simple_component(f, r) for f, r in self.components)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.total_rank
        M = [[0] * n for _ in range(n)]
        off = 0
        for A, _ in self._blocks:
            for i, row in enumerate(A):
                for j, x in enumerate(row):
                    M[off + i][off + j] = x
            off += len(A)
        return tuple(tuple(row) for row in M)

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        return tuple(x for _, d in self._blocks for x in d)

    @cached_property
    def delta(self) -> Weight:
        return (1,) * self.total_rank

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, off = [], 0
        for _, r in self.components:
            out.append(off)
            off += r
        return tuple(out)

    def component_slices(self) -> list[slice]:
        return [slice(o, o + r) for o, (_, r) in zip(self.offsets, self.components)]

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        """Simple roots in Dynkin labels (columns of the Cartan matrix)."""
        A = self.cartan
        n = self.total_rank
        return tuple(tuple(A[i][j] for i in range(n)) for j in range(n))

    # -- bilinear form ------------------------------------------------------

    @cached_property
    def weight_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix ``(lambda_i, lambda_j)`` of the fundamental weights."""
        inv = _mat_inverse(self.cartan)
        d = self.symmetrizer
        return tuple(tuple(d[i] * inv[i][j] for j in range(len(d))) for i in range(len(d)))

    @cached_property
    def form_scale(self) -> int:
        """Smallest N making ``N * weight_form`` an integer matrix."""
        return math.lcm(*(x.denominator for row in self.weight_form for x in row))

    @cached_property
    def int_form(self) -> tuple[tuple[int, ...], ...]:
        N = self.form_scale
        return tuple(tuple(int(x * N) for x in row) for row in self.weight_form)

    def check_weight(self, lam: Iterable[int]) -> Weight:
        lam = tuple(lam)
        if len(lam) != self.total_rank:
            raise RootSystemError(
                f"weight {lam} has {len(lam)} labels, {self} needs {self.total_rank}"
            )
        if not all(isinstance(x, int) for x in lam):
            raise RootSystemError(f"weight labels must be integers: {lam}")
        return lam

    def inner_product(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        lam = self.check_weight(lam)
        mu = self.check_weight(mu)
        return Fraction(self.int_inner(lam, mu), self.form_scale)

    def int_inner(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """``form_scale * (lam, mu)``, an exact integer."""
        G = self.int_form
        return sum(lam[i] * sum(G[i][j] * mu[j] for j in range(len(mu))) for i in range(len(lam)) if lam[i])

    # -- roots --------------------------------------------------------------

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in _mat_inverse(self.cartan))

    @cached_property
    def _int_inverse(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        inv = self.inverse_cartan
        den = math.lcm(*(x.denominator for row in inv for x in row))
        return den, tuple(tuple(int(x * den) for x in row) for row in inv)

    def root_coordinates(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the basis of simple roots."""
        den, M = self._int_inverse
        return tuple(Fraction(sum(a * b for a, b in zip(row, lam)), den) for row in M)

    def is_nonneg_root_combination(self, diff: Sequence[int]) -> bool:
        """True iff ``diff`` is a nonnegative *integer* combination of simple roots."""
        den, M = self._int_inverse
        for row in M:
            s = sum(a * b for a, b in zip(row, diff))
            if s < 0 or s % den:
                return False
        return True

    def dominates(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """Dominance order: ``mu <= lam`` iff ``lam - mu`` is in Q+."""
        return self.is_nonneg_root_combination([a - b for a, b in zip(lam, mu)])

    @cached_property
    def positive_roots_root_coords(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots as nonnegative integer combinations of simple roots, by height."""
        n = self.total_rank
        A = self.cartan
        simple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        roots: list[tuple[int, ...]] = list(simple)
        seen = set(roots)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                labels = [sum(A[i][j] * beta[j] for j in range(n)) for i in range(n)]
                for i in range(n):
                    # p = how far beta - k alpha_i stays a root
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in seen:
                            p += 1
                        else:
                            break
                    q = p - labels[i]
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in seen:
                            seen.add(up)
                            nxt.append(up)
            roots.extend(sorted(nxt))
            layer = nxt
        return tuple(roots)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        """Positive roots in Dynkin labels, ordered by height."""
        A = self.cartan
        n = self.total_rank
        return tuple(
            tuple(sum(A[i][j] * k[j] for j in range(n)) for i in range(n))
            for k in self.positive_roots_root_coords
        )

    @cached_property
    def weyl_group_order(self) -> int:
        return self.parabolic_order(range(self.total_rank))

    def parabolic_order(self, nodes: Iterable[int]) -> int:
        """Order of the Weyl subgroup generated by the given simple reflections.

        Uses ``|W| = prod_{alpha > 0} (ht(alpha) + 1) / ht(alpha)``.
        """
        nodes = set(nodes)
        out = Fraction(1)
        for k in self.positive_roots_root_coords:
            if all(i in nodes for i, c in enumerate(k) if c):
                h = sum(k)
                out *= Fraction(h + 1, h)
        assert out.denominator == 1
        return int(out)

    # -- Weyl group actions --------------------------------------------------

    def reflect(self, lam: Sequence[int], i: int) -> Weight:
        c = lam[i]
        col = self.simple_roots[i]
        return tuple(a - c * b for a, b in zip(lam, col))

    def to_dominant(self, lam: Sequence[int]) -> tuple[Weight, int]:
        """Dominant Weyl conjugate of ``lam`` and the parity of the reflection count."""
        x = list(lam)
        roots = self.simple_roots
        n = len(x)
        parity = 0
        i = 0
        while i < n:
            c = x[i]
            if c < 0:
                col = roots[i]
                for j in range(n):
                    x[j] -= c * col[j]
                parity ^= 1
                i = 0
            else:
                i += 1
        return tuple(x), parity

    def orbit(self, lam: Sequence[int]) -> list[Weight]:
        """The Weyl orbit of a weight (enumerated from its dominant representative)."""
        dom, _ = self.to_dominant(lam)
        out = [dom]
        seen = {dom}
        stack = [dom]
        n = self.total_rank
        while stack:
            x = stack.pop()
            for i in range(n):
                if x[i] > 0:
                    y = self.reflect(x, i)
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        stack.append(y)
        return out

    def orbit_size(self, lam: Sequence[int]) -> int:
        dom, _ = self.to_dominant(lam)
        return self.weyl_group_order // self.parabolic_order(i for i, c in enumerate(dom) if c == 0)

    def dual_involution(self, lam: Sequence[int]) -> Weight:
        """``-w0(lam)``, the highest weight of the dual module."""
        lam = self.check_weight(lam)
        out = list(lam)
        for off, (fam, r) in zip(self.offsets, self.components):
            perm = _dual_permutation(fam, r)
            for i, p in enumerate(perm):
                out[off + i] = lam[off + p]
        return tuple(out)

    def is_self_dual(self, lam: Sequence[int]) -> bool:
        return self.dual_involution(lam) == tuple(lam)

    # -- lattice data --------------------------------------------------------

    @cached_property
    def _snf(self) -> tuple[list[int], list[list[int]]]:
        return smith_normal_form(self.cartan)

    def fundamental_group(self) -> FundamentalGroupInfo:
        diag, _ = self._snf
        factors = tuple(sorted(abs(x) for x in diag if abs(x) != 1))
        order = math.prod(factors) if factors else 1
        exponent = math.lcm(*factors) if factors else 1
        return FundamentalGroupInfo(factors, order, exponent)

    def lattice_class(self, lam: Sequence[int]) -> tuple[int, ...]:
        """Image of ``lam`` in the weight lattice modulo the root lattice."""
        diag, U = self._snf
        out = []
        for s, row in zip(diag, U):
            s = abs(s)
            if s != 1:
                out.append(sum(a * b for a, b in zip(row, lam)) % s)
        return tuple(out)

    def in_root_lattice(self, lam: Sequence[int]) -> bool:
        return not any(self.lattice_class(lam))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(x >= 0 for x in lam)

    def is_simply_laced(self) -> bool:
        return all(f in "ADE" for f, _ in self.components)


_TOKEN = re.compile(r"^([A-Ga-g])(\d+)$")


@lru_cache(maxsize=None)
def _build(components: tuple[tuple[str, int], ...]) -> RootSystem:
    return RootSystem(components)


def build_root_system(components: Iterable[tuple[str, int]] | str) -> RootSystem:
    """Build a root system from ``[(family, rank), ...]`` or a string like ``"A1xB2"``."""
    if isinstance(components, str):
        return parse_root_system(components)
    comps = tuple((str(f).upper(), int(r)) for f, r in components)
    return _build(comps)


def parse_root_system(text: str) -> RootSystem:
    parts = [p.strip() for p in text.strip().split("x")] if text.strip() else []
    comps = []
    for p in parts:
        m = _TOKEN.match(p)
        if not m:
            raise RootSystemError(f"cannot parse root-system component {p!r}")
        comps.append((m.group(1).upper(), int(m.group(2))))
    if not comps:
        raise RootSystemError("empty root-system string")
    return _build(tuple(comps))


def parse_weight(text: str) -> Weight:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise RootSystemError(f"cannot parse weight {text!r}") from None


def format_weight(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam)

"""Characters, dimensions and tensor decompositions of irreducible modules.

Everything is exact: multiplicities come from Freudenthal's recursion run in
integer arithmetic (the bilinear form is scaled by ``RootSystem.form_scale``),
tensor products from the Klimyk rule, with an independent character-stripping
path kept for verification.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import _accel
from .rootsystem import RootSystem, RootSystemError, Weight


class NotDominantError(RootSystemError):
    pass


class CounterexampleError(AssertionError):
    """Raised when a computation contradicts a statement it is meant to confirm."""


def _require_dominant(rs: RootSystem, lam: Sequence[int]) -> Weight:
    lam = rs.check_weight(lam)
    if any(x < 0 for x in lam):
        raise NotDominantError(f"{lam} is not dominant")
    return lam


def _sorted_items(d: Mapping[Weight, int]) -> list[tuple[Weight, int]]:
    return sorted(d.items())


# ---------------------------------------------------------------------------
# Decompositions and weight multisets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Isotypic decomposition: dominant highest weight -> multiplicity."""

    rs: RootSystem
    entries: Mapping[Weight, int]

    def __getitem__(self, lam: Sequence[int]) -> int:
        return self.entries.get(tuple(lam), 0)

    def __iter__(self) -> Iterator[Weight]:
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> list[tuple[Weight, int]]:
        return _sorted_items(self.entries)

    def dimension(self) -> int:
        return sum(m * weyl_dimension(self.rs, lam) for lam, m in self.entries.items())

    def as_dict(self) -> dict[Weight, int]:
        return dict(self.items())

    def to_json(self) -> list[dict]:
        return [{"weight": list(lam), "multiplicity": m} for lam, m in self.items()]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Decomposition):
            return self.rs == other.rs and dict(self.entries) == dict(other.entries)
        if isinstance(other, Mapping):
            return dict(self.entries) == {tuple(k): v for k, v in other.items()}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rs, tuple(self.items())))


@dataclass(frozen=True, eq=False)
class WeightMultiset:
    """The character of V(lambda), stored on the dominant chamber.

    ``dominant`` maps every dominant weight of V(lambda) to its multiplicity;
    multiplicities of other weights are read off their dominant conjugates.
    """

    rs: RootSystem
    highest: Weight
    dominant: Mapping[Weight, int]
    depth: Mapping[Weight, int] = field(repr=False)

    def multiplicity(self, mu: Sequence[int]) -> int:
        dom, _ = self.rs.to_dominant(mu)
        return self.dominant.get(dom, 0)

    def __contains__(self, mu: Sequence[int]) -> bool:
        return self.multiplicity(mu) > 0

    def total_mass(self) -> int:
        rs = self.rs
        return sum(m * rs.orbit_size(mu) for mu, m in self.dominant.items())

    def items(self) -> list[tuple[Weight, int]]:
        return _sorted_items(self.dominant)

    def full(self) -> dict[Weight, int]:
        """All weights with multiplicities (Weyl-orbit expansion)."""
        return _full_character(self.rs, self.highest)

    def to_json(self) -> list[dict]:
        return [{"weight": list(mu), "multiplicity": m} for mu, m in self.items()]


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------


def _root_forms(rs: RootSystem) -> list[tuple[int, ...]]:
    """For each positive root alpha the integer vector G alpha (so (mu, alpha) = mu . G alpha / N)."""
    G = rs.int_form
    n = rs.total_rank
    return [tuple(sum(G[i][j] * a[j] for j in range(n)) for i in range(n)) for a in rs.positive_roots]


@lru_cache(maxsize=None)
def _root_tables(rs: RootSystem) -> tuple[tuple[Weight, ...], tuple[tuple[int, ...], ...], tuple[int, ...], tuple[int, ...]]:
    roots = rs.positive_roots
    forms = tuple(_root_forms(rs))
    norms = tuple(sum(a * b for a, b in zip(r, f)) for r, f in zip(roots, forms))
    delta_pair = tuple(sum(f) for f in forms)
    return roots, forms, norms, delta_pair


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """Dimension of V(lambda) by Weyl's product formula."""
    lam = _require_dominant(rs, lam)
    return _weyl_dimension(rs, lam)


@lru_cache(maxsize=1 << 16)
def _weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    _, forms, _, dpair = _root_tables(rs)
    num = 1
    den = 1
    for f, d in zip(forms, dpair):
        num *= d + sum(a * b for a, b in zip(lam, f))
        den *= d
    q, r = divmod(num, den)
    if r:
        raise CounterexampleError(f"Weyl dimension of {lam} is not integral")
    return q


# ---------------------------------------------------------------------------
# Freudenthal
# ---------------------------------------------------------------------------


def dominant_weights_below(rs: RootSystem, lam: Sequence[int]) -> dict[Weight, int]:
    """Dominant weights mu <= lam (in Q+ order), mapped to their depth ht(lam - mu)."""
    lam = tuple(lam)
    roots = rs.positive_roots
    heights = [sum(k) for k in rs.positive_roots_root_coords]
    depth = {lam: 0}
    stack = [lam]
    while stack:
        mu = stack.pop()
        d = depth[mu]
        for r, h in zip(roots, heights):
            nu = tuple(a - b for a, b in zip(mu, r))
            if nu not in depth and all(x >= 0 for x in nu):
                depth[nu] = d + h
                stack.append(nu)
    return depth


def weight_multiplicities(rs: RootSystem, lam: Sequence[int]) -> WeightMultiset:
    """Multiplicities of the dominant weights of V(lambda) (Freudenthal)."""
    lam = _require_dominant(rs, lam)
    return _weight_multiplicities(rs, lam)


@lru_cache(maxsize=4096)
def _weight_multiplicities(rs: RootSystem, lam: Weight) -> WeightMultiset:
    depth = dominant_weights_below(rs, lam)
    order = sorted(depth, key=lambda mu: (depth[mu], mu))
    roots, forms, norms, _ = _root_tables(rs)
    mults = _accel.freudenthal(
        lam, order, roots, forms, norms, rs.int_form, rs.simple_roots
    )
    dominant = {mu: m for mu, m in zip(order, mults) if m}
    return WeightMultiset(rs, lam, dominant, {mu: depth[mu] for mu in dominant})


@lru_cache(maxsize=256)
def _full_character(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    wm = _weight_multiplicities(rs, lam)
    out: dict[Weight, int] = {}
    for mu, m in wm.dominant.items():
        for nu in rs.orbit(mu):
            out[nu] = m
    return out


@lru_cache(maxsize=256)
def _weight_list(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, ...], tuple[int, ...]]:
    full = _full_character(rs, lam)
    keys = tuple(sorted(full))
    return keys, tuple(full[k] for k in keys)


# ---------------------------------------------------------------------------
# Tensor products
# ---------------------------------------------------------------------------


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> Decomposition:
    """Decompose V(lam) (x) V(mu) with the Klimyk rule."""
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    return Decomposition(rs, _klimyk(rs, lam, mu))


@lru_cache(maxsize=1 << 14)
def _klimyk(rs: RootSystem, lam: Weight, mu: Weight) -> dict[Weight, int]:
    # shift the larger module by the weights of the smaller one
    if _weyl_dimension(rs, lam) < _weyl_dimension(rs, mu) or (
        _weyl_dimension(rs, lam) == _weyl_dimension(rs, mu) and lam < mu
    ):
        lam, mu = mu, lam
    weights, mults = _weight_list(rs, mu)
    out = _accel.klimyk(lam, weights, mults, rs.simple_roots)
    bad = {k: v for k, v in out.items() if v < 0}
    if bad:
        raise CounterexampleError(f"negative Klimyk multiplicities {bad}")
    return out


def tensor_decompose_oracle(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> Decomposition:
    """Decompose V(lam) (x) V(mu) by multiplying characters and stripping.

    The dominant part of the product character is ``sum_{pi + tau = nu}
    m_lam(pi) m_mu(tau)``; the highest remaining dominant weight is peeled off
    together with its full character until nothing is left.  Shares no code
    with the Klimyk path beyond the Freudenthal multiplicities.
    """
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    top = tuple(a + b for a, b in zip(lam, mu))
    depth = dominant_weights_below(rs, top)
    full_mu = _full_character(rs, mu)
    lw, lm = _weight_list(rs, lam)
    remaining = _accel.convolve_dominant(list(depth), lw, lm, full_mu)
    out: dict[Weight, int] = {}
    for nu in sorted(depth, key=lambda w: (depth[w], w)):
        c = remaining.get(nu, 0)
        if c == 0:
            continue
        if c < 0:
            raise CounterexampleError(f"character stripping went negative at {nu}")
        out[nu] = c
        for kappa, m in _weight_multiplicities(rs, nu).dominant.items():
            remaining[kappa] = remaining.get(kappa, 0) - c * m
    return Decomposition(rs, out)


def _fold(rs: RootSystem, dec: Mapping[Weight, int], lam: Weight) -> dict[Weight, int]:
    acc: dict[Weight, int] = defaultdict(int)
    for kappa, m in dec.items():
        for nu, c in _klimyk(rs, kappa, lam).items():
            acc[nu] += m * c
    return dict(acc)


def tensor_product(rs: RootSystem, factors: Sequence[Sequence[int]]) -> Decomposition:
    """Decomposition of V(f1) (x) ... (x) V(fk), folded left to right."""
    if not factors:
        raise RootSystemError("need at least one tensor factor")
    facs = [_require_dominant(rs, f) for f in factors]
    dec: dict[Weight, int] = {facs[0]: 1}
    for f in facs[1:]:
        dec = _fold(rs, dec, f)
    return Decomposition(rs, dec)


def invariant_dimension(rs: RootSystem, factors: Sequence[Sequence[int]]) -> int:
    """Dimension of the invariants in V(f1) (x) ... (x) V(fk)."""
    return tensor_product(rs, factors)[(0,) * rs.total_rank]


class _PowerCache:
    """Running decompositions of V(lam)^{(x) n}."""

    def __init__(self) -> None:
        self._store: dict[tuple[RootSystem, Weight], list[dict[Weight, int]]] = {}

    def get(self, rs: RootSystem, lam: Weight, n: int) -> dict[Weight, int]:
        key = (rs, lam)
        powers = self._store.setdefault(key, [{(0,) * rs.total_rank: 1}])
        while len(powers) <= n:
            powers.append(_fold(rs, powers[-1], lam))
        return powers[n]

    def clear(self) -> None:
        self._store.clear()


_powers = _PowerCache()


def tensor_power(rs: RootSystem, lam: Sequence[int], n: int) -> Decomposition:
    lam = _require_dominant(rs, lam)
    if n < 0:
        raise ValueError("tensor power must be nonnegative")
    return Decomposition(rs, _powers.get(rs, lam, n))


def clear_caches() -> None:
    _powers.clear()
    _klimyk.cache_clear()
    _weight_multiplicities.cache_clear()
    _full_character.cache_clear()
    _weight_list.cache_clear()


def min_invariant_power(rs: RootSystem, lam: Sequence[int], n_max: int) -> tuple[int, int] | None:
    """Smallest n <= n_max with nonzero invariants in V(lam)^{(x) n}, with their dimension."""
    lam = _require_dominant(rs, lam)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    zero = (0,) * rs.total_rank
    for n in range(1, n_max + 1):
        d = _powers.get(rs, lam, n).get(zero, 0)
        if d:
            return n, d
    return None


def contains_module(rs: RootSystem, lam: Sequence[int], n: int, mu: Sequence[int]) -> int:
    """Multiplicity of V(mu) in V(lam)^{(x) n}."""
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    if n < 1:
        raise ValueError("n must be positive")
    return _powers.get(rs, lam, n).get(mu, 0)


def tensor_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Multiplicity of V(nu) in V(lam) (x) V(mu) without decomposing the product.

    Evaluates ``sum_w sign(w) m_mu(w(nu + delta) - lam - delta)`` over the Weyl
    orbit of ``nu + delta``, visiting only orbit points that can reach a weight
    of V(mu) (the orbit walk descends, so the dominance bound prunes it).
    """
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    nu = _require_dominant(rs, nu)
    if not rs.in_root_lattice([a + b - c for a, b, c in zip(lam, mu, nu)]):
        return 0
    wm = _weight_multiplicities(rs, mu)
    delta = rs.delta
    shift = tuple(a + d for a, d in zip(lam, delta))
    lowest = tuple(-x for x in rs.dual_involution(mu))
    floor = tuple(a + b for a, b in zip(shift, lowest))
    start = tuple(a + d for a, d in zip(nu, delta))
    mu_norm = rs.int_inner(mu, mu)
    total = 0
    seen = {start: 0}
    stack = [start]
    while stack:
        x = stack.pop()
        sign = -1 if seen[x] % 2 else 1
        y = tuple(a - b for a, b in zip(x, shift))
        if rs.int_inner(y, y) <= mu_norm:
            total += sign * wm.multiplicity(y)
        for i in range(rs.total_rank):
            if x[i] > 0:
                z = rs.reflect(x, i)
                if z not in seen and rs.dominates(z, floor):
                    seen[z] = seen[x] + 1
                    stack.append(z)
    return total


# ---------------------------------------------------------------------------
# root-string and chain verifiers
# ---------------------------------------------------------------------------


def verify_line_multiplicities(rs: RootSystem, lam: Sequence[int], i: int) -> bool:
    """Check m_lam(lam - t alpha_i) = 1 for 0 <= t <= <lam, alpha_i>."""
    lam = _require_dominant(rs, lam)
    _check_index(rs, i)
    wm = _weight_multiplicities(rs, lam)
    alpha = rs.simple_roots[i]
    return all(
        wm.multiplicity(tuple(a - t * b for a, b in zip(lam, alpha))) == 1
        for t in range(lam[i] + 1)
    )


def cartan_chain(rs: RootSystem, lam: Sequence[int], i: int) -> list[Weight]:
    """The highest weights 2 lam - t alpha_i, t = 0..<lam, alpha_i>."""
    lam = rs.check_weight(lam)
    alpha = rs.simple_roots[i]
    return [tuple(2 * a - t * b for a, b in zip(lam, alpha)) for t in range(lam[i] + 1)]


def verify_cartan_chain(rs: RootSystem, lam: Sequence[int], i: int) -> bool:
    """Check V(2 lam - t alpha_i) is a summand of V(lam) (x) V(lam) for all t <= <lam, alpha_i>."""
    lam = _require_dominant(rs, lam)
    _check_index(rs, i)
    return all(tensor_multiplicity(rs, lam, lam, nu) >= 1 for nu in cartan_chain(rs, lam, i))


def _check_index(rs: RootSystem, i: int) -> None:
    if not 0 <= i < rs.total_rank:
        raise RootSystemError(f"simple-root index {i} out of range for {rs}")


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------


def self_dual_submodule_search(rs: RootSystem, lam: Sequence[int], n_max: int) -> tuple[int, Weight] | None:
    """Smallest n <= n_max such that V(lam)^{(x) n} has a self-dual summand.

    Returns ``(n, mu)`` with ``mu`` the lexicographically smallest self-dual
    highest weight at that n.
    """
    lam = _require_dominant(rs, lam)
    for n in range(1, n_max + 1):
        dec = _powers.get(rs, lam, n)
        hits = sorted(mu for mu in dec if rs.is_self_dual(mu))
        if hits:
            return n, hits[0]
    return None


def enumerate_dominant_weights(
    rs: RootSystem,
    dim_bound: int,
    only_non_self_dual: bool = False,
    per_max_label: bool = False,
    max_label_cap: int | None = None,
) -> list[Weight]:
    """All dominant weights with dim V(lam) <= bound, sorted.

    With ``per_max_label`` the bound is ``dim_bound * max(lam)`` (the zero
    weight is then excluded).  Completeness rests on the Weyl dimension being
    strictly increasing in every label, which lets each label loop stop at the
    first overshoot.
    """
    if dim_bound < 1:
        raise ValueError("dim_bound must be positive")
    n = rs.total_rank

    def dfs(bound: int, cap: int | None) -> list[Weight]:
        found = []
        cur = [0] * n

        def rec(i: int) -> None:
            if i == n:
                found.append(tuple(cur))
                return
            v = 0
            while cap is None or v <= cap:
                cur[i] = v
                if _weyl_dimension(rs, tuple(cur)) > bound:
                    break
                rec(i + 1)
                v += 1
            cur[i] = 0

        rec(0)
        return found

    if not per_max_label:
        out = dfs(dim_bound, None)
    else:
        out = []
        M = 0
        while True:
            M += 1
            if max_label_cap is not None and M > max_label_cap:
                break
            out.extend(w for w in dfs(dim_bound * M, M) if max(w) == M)
            if _beyond_bound(rs, dim_bound, M):
                break
    if only_non_self_dual:
        out = [w for w in out if not rs.is_self_dual(w)]
    return sorted(out)


def _beyond_bound(rs: RootSystem, dim_bound: int, M: int) -> bool:
    """True if no weight with max label > M can satisfy dim <= dim_bound * max label.

    dim(M lambda_j) = prod_k (1 + c_k M) over roots with c_k > 0; the ratio
    dim / M is nondecreasing once sum_k c_k M / (1 + c_k M) >= 1, so it is
    enough to see the ratio above the bound at M + 1 in that regime.
    """
    _, forms, _, dpair = _root_tables(rs)
    for j in range(rs.total_rank):
        cs = [Fraction(f[j], d) for f, d in zip(forms, dpair) if f[j]]
        m = M + 1
        if sum(c * m / (1 + c * m) for c in cs) < 1:
            return False
        lam = tuple(m if k == j else 0 for k in range(rs.total_rank))
        if _weyl_dimension(rs, lam) <= dim_bound * m:
            return False
    return True


# ---------------------------------------------------------------------------
# Conjecture scan and classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjectureRecord:
    lam: Weight
    mu: Weight
    n_found: int | None
    bound: int
    holds: bool
    searched_up_to: int
    lattice_admissible: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "n_found": self.n_found,
            "bound": self.bound,
            "holds": self.holds,
            "searched_up_to": self.searched_up_to,
            "lattice_admissible_n": list(self.lattice_admissible),
        }


def conjecture_bound(rs: RootSystem) -> int:
    pi = rs.fundamental_group()
    return pi.exponent if pi.order > 1 else 2


def conjecture_scan(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], slack: int | None = None) -> ConjectureRecord:
    """Smallest n with V(mu) inside V(lam)^{(x) n}, against the fundamental-group bound."""
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    bound = conjecture_bound(rs)
    if slack is None:
        slack = max(rs.fundamental_group().exponent, 2)
    cap = bound + slack
    if mu not in _weight_multiplicities(rs, lam).dominant and not any(
        rs.dominates([n * a for a in lam], mu) for n in range(2, cap + 1)
    ):
        # mu below n*lam is a weight of V(n lam), a summand of the n-th power
        raise RootSystemError(f"{mu} is not a weight of V({lam})^n for any n <= {cap}")
    admissible = []
    n_found = None
    for n in range(1, cap + 1):
        ok = rs.in_root_lattice([n * a - b for a, b in zip(lam, mu)])
        c = _powers.get(rs, lam, n).get(mu, 0)
        if ok:
            admissible.append(n)
        elif c:
            raise CounterexampleError(f"V{mu} in V{lam}^{n} although n*lam - mu is not in the root lattice")
        if c and n_found is None:
            n_found = n
            break
    return ConjectureRecord(lam, mu, n_found, bound, n_found is not None and n_found <= bound, cap, tuple(admissible))


@dataclass(frozen=True)
class ConjectureSweep:
    lam: Weight
    records: tuple[ConjectureRecord, ...]
    uniform_n: int | None
    bound: int

    @property
    def holds_per_mu(self) -> bool:
        return all(r.holds for r in self.records)

    @property
    def holds_uniform(self) -> bool:
        return self.uniform_n is not None and self.uniform_n <= self.bound

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "bound": self.bound,
            "holds_per_mu": self.holds_per_mu,
            "uniform_n": self.uniform_n,
            "holds_uniform": self.holds_uniform,
            "records": [r.to_json() for r in self.records],
        }


def conjecture_sweep(rs: RootSystem, lam: Sequence[int], slack: int | None = None) -> ConjectureSweep:
    """Scan every dominant weight of V(lam); report per-mu and uniform readings."""
    lam = _require_dominant(rs, lam)
    mus = sorted(_weight_multiplicities(rs, lam).dominant)
    records = tuple(conjecture_scan(rs, lam, mu, slack) for mu in mus)
    cap = max(r.searched_up_to for r in records)
    uniform = None
    for n in range(1, cap + 1):
        dec = _powers.get(rs, lam, n)
        if all(dec.get(mu, 0) for mu in mus):
            uniform = n
            break
    return ConjectureSweep(lam, records, uniform, conjecture_bound(rs))


@dataclass(frozen=True)
class ComponentVerdict:
    dimension: int
    witness: tuple[int, int] | None
    type_A_forced: bool
    families: tuple[str, ...]

    @property
    def hypothesis_holds(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "witness": list(self.witness) if self.witness else None,
            "hypothesis_holds": self.hypothesis_holds,
            "type_A_forced": self.type_A_forced,
            "components": list(self.families),
        }


def is_type_a(family: str, rank: int) -> bool:
    return family == "A" or (family == "D" and rank == 3)


def is_faithful(rs: RootSystem, lam: Sequence[int]) -> bool:
    """V(lam) is faithful iff lam is nonzero on every simple component."""
    return all(any(lam[s]) for s in rs.component_slices())


def classify_components(rs: RootSystem, lam: Sequence[int], require_faithful: bool = True) -> ComponentVerdict:
    """Test whether invariants of V^{(x) n} vanish for n < dim V, and what that forces.

    If they vanish, every component must be of type A (D3 counts as A3);
    anything else raises :class:`CounterexampleError`.
    """
    lam = _require_dominant(rs, lam)
    if require_faithful and not is_faithful(rs, lam):
        raise RootSystemError(f"V{lam} is not faithful on every component of {rs}")
    r = _weyl_dimension(rs, lam)
    witness = min_invariant_power(rs, lam, r - 1) if r > 1 else None
    families = tuple(f"{f}{k}" for f, k in rs.components)
    if witness is None:
        if not all(is_type_a(f, k) for f, k in rs.components):
            raise CounterexampleError(f"{rs}, V{lam}: no invariants below dim {r} on a non-A system")
        return ComponentVerdict(r, None, True, families)
    return ComponentVerdict(r, witness, False, families)

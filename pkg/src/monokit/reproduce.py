"""Canned inputs for the worked computations: the E6 table, the syzygy
example, the D_l exclusion, the type-A scan and the conjecture sweep.

Sweeps take an optional ``deadline`` (a ``time.monotonic()`` value); when it
passes they stop and report ``complete = False`` with what they have.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import bundles, reps
from .rootsystem import RootSystem, Weight, build_root_system, format_weight

E6_DIMENSION_FACTOR = 24576


def _expired(deadline: float | None) -> bool:
    return deadline is not None and time.monotonic() >= deadline


def dominant_box(rs: RootSystem, max_label: int) -> list[Weight]:
    return [tuple(w) for w in itertools.product(range(max_label + 1), repeat=rs.total_rank)]


# ---------------------------------------------------------------------------
# E6
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightFamily:
    """Either a single weight or ``{k * base : 1 <= k <= top}``."""

    base: Weight
    top: int | None
    members: tuple[Weight, ...]

    def label(self, letter: str | None = None) -> str:
        if self.top is None:
            return format_weight(self.base)
        letter = letter or "a"
        body = ",".join(letter if x else "0" for x in self.base)
        return f"({body}) with {letter} <= {self.top}"

    def to_json(self) -> dict:
        return {
            "base": list(self.base),
            "max_multiple": self.top,
            "members": [list(m) for m in self.members],
        }


def group_families(weights: Sequence[Weight]) -> list[WeightFamily]:
    """Collect multiples of one fundamental weight into a family; keep the rest single."""
    lines: dict[int, list[Weight]] = {}
    singles = []
    for w in weights:
        support = [i for i, x in enumerate(w) if x]
        if len(support) == 1:
            lines.setdefault(support[0], []).append(w)
        else:
            singles.append(w)
    out = []
    for i, ws in sorted(lines.items()):
        base = tuple(1 if j == i else 0 for j in range(len(ws[0])))
        top = max(w[i] for w in ws)
        if sorted(w[i] for w in ws) == list(range(1, top + 1)):
            out.append(WeightFamily(base, top, tuple(sorted(ws))))
        else:
            singles.extend(ws)
    out.extend(WeightFamily(w, None, (w,)) for w in sorted(singles))
    return out


@dataclass
class E6Table:
    weights: list[Weight]
    representatives: list[Weight]
    families: list[WeightFamily]
    factor: int

    def to_json(self) -> dict:
        return {
            "dimension_bound": f"{self.factor} * max label",
            "non_self_dual_weights": [list(w) for w in self.weights],
            "representatives": [list(w) for w in self.representatives],
            "families": [f.to_json() for f in self.families],
        }

    def render(self) -> str:
        letters = iter("ab")
        lines = [f"non-self-dual E6 weights with dim <= {self.factor} * max label, up to duality:"]
        for f in self.families:
            lines.append("  " + f.label(next(letters) if f.top is not None else None))
        lines.append(f"{len(self.families)} families, {len(self.representatives)} weights, "
                     f"{len(self.weights)} counting duals")
        return "\n".join(lines)


def e6_table(factor: int = E6_DIMENSION_FACTOR) -> E6Table:
    """Non-self-dual E6 weights under the linear dimension bound, one per dual pair."""
    rs = build_root_system("E6")
    weights = reps.enumerate_dominant_weights(rs, factor, only_non_self_dual=True, per_max_label=True)
    reps_ = sorted({max(w, rs.dual_involution(w)) for w in weights})
    return E6Table(weights, reps_, group_families(reps_), factor)


# ---------------------------------------------------------------------------
# syzygy example
# ---------------------------------------------------------------------------


def beispi(p: int = 3, q=1, trivial_mod_pq: bool = True) -> bundles.BundleReport:
    return bundles.analyze_bundle(bundles.EXAMPLE_SYZYGY, p, q, trivial_mod_pq)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepResult:
    name: str
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    complete: bool = True
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.complete and not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "complete": self.complete,
            "ok": self.ok,
            "checked": len(self.rows),
            "failures": self.failures,
            "rows": self.rows,
        }


def chain_witness(rs: RootSystem, lam: Weight) -> Weight:
    """2 lam - t alpha_j on the larger fork node j, with t the fork-label difference."""
    l = rs.total_rank
    j = l - 2 if lam[l - 2] >= lam[l - 1] else l - 1
    t = abs(lam[l - 2] - lam[l - 1])
    alpha = rs.simple_roots[j]
    return tuple(2 * a - t * b for a, b in zip(lam, alpha))


def dl_exclusion(rank: int = 5, max_label: int = 1, n_max: int = 4, deadline: float | None = None) -> SweepResult:
    """Self-dual summands in tensor powers for D_l (l odd) weights with a_{l-1} != a_l."""
    rs = build_root_system([("D", rank)])
    res = SweepResult(f"D{rank} self-dual search")
    t0 = time.monotonic()
    for lam in dominant_box(rs, max_label):
        if lam[-2] == lam[-1]:
            continue
        if _expired(deadline):
            res.complete = False
            break
        found = reps.self_dual_submodule_search(rs, lam, n_max)
        witness = chain_witness(rs, lam)
        row = {
            "lambda": list(lam),
            "n": found[0] if found else None,
            "mu": list(found[1]) if found else None,
            "chain_witness": list(witness),
            "chain_witness_ok": rs.is_self_dual(witness) and reps.tensor_multiplicity(rs, lam, lam, witness) >= 1,
        }
        res.rows.append(row)
        if found is None or not row["chain_witness_ok"]:
            res.failures.append(row)
    res.elapsed = time.monotonic() - t0
    return res


SMALL_SIMPLE = ("A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2")


def invar_sweep(
    systems: Sequence[str] = SMALL_SIMPLE, max_dim: int = 10, deadline: float | None = None
) -> SweepResult:
    """Faithful irreducibles of small dimension: invariants below dim force type A."""
    res = SweepResult("invariants below the dimension")
    t0 = time.monotonic()
    for name in systems:
        rs = build_root_system(name)
        for lam in reps.enumerate_dominant_weights(rs, max_dim):
            if not reps.is_faithful(rs, lam):
                continue
            if _expired(deadline):
                res.complete = False
                res.elapsed = time.monotonic() - t0
                return res
            row = {"system": name, "lambda": list(lam)}
            try:
                v = reps.classify_components(rs, lam)
            except reps.CounterexampleError as exc:
                row["error"] = str(exc)
                res.failures.append(row)
                res.rows.append(row)
                continue
            row.update(v.to_json())
            res.rows.append(row)
    res.elapsed = time.monotonic() - t0
    return res


CONJECTURE_SYSTEMS = ("A1", "A2", "A3", "B2")


def conjecture_table(
    systems: Sequence[str] = CONJECTURE_SYSTEMS, max_label: int = 2, deadline: float | None = None
) -> SweepResult:
    """Record the conjectured bound against the observed n for every (lambda, mu).

    A pair where the bound fails is a finding, not a failure; only an
    incomplete scan or a lattice contradiction counts against the run.
    """
    res = SweepResult("tensor-power containment")
    t0 = time.monotonic()
    for name in systems:
        rs = build_root_system(name)
        for lam in dominant_box(rs, max_label):
            if not any(lam):
                continue
            if _expired(deadline):
                res.complete = False
                res.elapsed = time.monotonic() - t0
                return res
            try:
                sweep = reps.conjecture_sweep(rs, lam)
            except reps.CounterexampleError as exc:
                res.failures.append({"system": name, "lambda": list(lam), "error": str(exc)})
                continue
            for r in sweep.records:
                row = {"system": name, **r.to_json()}
                res.rows.append(row)
            res.rows.append({"system": name, "lambda": list(lam), "summary": True,
                             "holds_per_mu": sweep.holds_per_mu, "uniform_n": sweep.uniform_n,
                             "holds_uniform": sweep.holds_uniform, "bound": sweep.bound})
    res.elapsed = time.monotonic() - t0
    return res

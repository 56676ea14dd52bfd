"""Command-line front end.

    monokit rootsys {cartan|posroots|pi0|dual}
    monokit rep {dim|mults|tensor|invariants|min-inv-power|contains|verify-gewicht|
                 verify-kompo|selfdual-search|enumerate|conjecture}
    monokit padic {vp|newton|cyclotomic|eigbound|certify|larsen|almost-simple|growth}
    monokit bundle {chern|invariants|bs-stable|langer|vanishing|analyze}
    monokit paper {e6-table|beispi|dl-exclusion|invar-sweep|conjecture-sweep}

Exit status is 0 on success, 1 when the input is rejected on mathematical
grounds, 2 on a usage error.  ``--format json`` (or ``MONOKIT_FORMAT=json``)
emits one JSON document carrying a ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Callable

from . import bundles, padic, reps, reproduce
from .rootsystem import RootSystemError, format_weight, parse_root_system, parse_weight

SCHEMA_VERSION = 1
FORMAT_ENV = "MONOKIT_FORMAT"
CANNED_SPECS = {"example-beispi": bundles.EXAMPLE_SYZYGY}

DOMAIN_ERRORS = (RootSystemError, padic.PadicError, bundles.BundleError, ValueError, ArithmeticError)


class Output:
    def __init__(self, payload, text: str, ok: bool = True):
        self.payload = payload
        self.text = text
        self.ok = ok


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------


def _rs_arg(text: str):
    try:
        return parse_root_system(text)
    except (RootSystemError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad root system {text!r}: {exc}")


def _weight_arg(text: str):
    try:
        return parse_weight(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight literal {text!r}")


def _int_list_arg(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()] if text.strip() else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}")


def _fraction_list_arg(text: str) -> list[Fraction]:
    return [_fraction_arg(t) for t in text.split(",")]


def _json_arg(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise argparse.ArgumentTypeError(f"bad JSON literal {text[:40]!r}")


def _matrix_arg(text: str):
    data = _json_arg(text)
    try:
        return padic.parse_matrix(data)
    except (padic.PadicError, ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad matrix literal {text[:40]!r}")


def _matrices_arg(text: str):
    data = _json_arg(text)
    try:
        return [padic.parse_matrix(m) for m in data]
    except (padic.PadicError, ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad matrix list literal {text[:40]!r}")


def _spec_arg(text: str) -> bundles.KernelBundleSpec:
    if text in CANNED_SPECS:
        return CANNED_SPECS[text]
    data = _json_arg(text)
    try:
        return bundles.KernelBundleSpec.from_json(data)
    except (bundles.BundleError, TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad bundle spec {text[:40]!r}: {exc}")


def _index_arg(text: str) -> int:
    try:
        i = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index {text!r}")
    if i < 1:
        raise argparse.ArgumentTypeError("node indices start at 1")
    return i - 1


# ---------------------------------------------------------------------------
# rendering helpers
# ---------------------------------------------------------------------------


def _fw(w) -> str:
    return "(" + format_weight(w) + ")"


def _value(v) -> str:
    return padic.format_value(v)


def _dec_text(dec: reps.Decomposition) -> str:
    return "\n".join(f"{_fw(w)}: {m}" for w, m in dec.items())


# ---------------------------------------------------------------------------
# rootsys
# ---------------------------------------------------------------------------


def cmd_cartan(a) -> Output:
    A = a.rs.cartan
    return Output({"cartan": [list(r) for r in A], "symmetrizer": [str(d) for d in a.rs.symmetrizer]},
                  "\n".join(" ".join(f"{x:3d}" for x in r) for r in A))


def cmd_posroots(a) -> Output:
    roots = a.rs.positive_roots
    return Output({"count": len(roots), "roots": [list(r) for r in roots]},
                  "\n".join(_fw(r) for r in roots) + f"\n{len(roots)} positive roots")


def cmd_pi0(a) -> Output:
    info = a.rs.fundamental_group()
    return Output({"invariant_factors": list(info.invariant_factors), "order": info.order, "exponent": info.exponent},
                  f"invariant factors {list(info.invariant_factors)}, order {info.order}, exponent {info.exponent}")


def cmd_dual(a) -> Output:
    d = a.rs.dual_involution(a.weight)
    return Output({"weight": list(a.weight), "dual": list(d), "self_dual": d == tuple(a.weight)}, _fw(d))


# ---------------------------------------------------------------------------
# rep
# ---------------------------------------------------------------------------


def cmd_dim(a) -> Output:
    d = reps.weyl_dimension(a.rs, a.weight)
    return Output({"dimension": d}, str(d))


def cmd_mults(a) -> Output:
    wm = reps.weight_multiplicities(a.rs, a.weight)
    items = sorted(wm.full().items()) if a.all_weights else wm.items()
    payload = {"dimension": wm.total_mass(), "dominant_only": not a.all_weights,
               "weights": [{"weight": list(w), "multiplicity": m} for w, m in items]}
    return Output(payload, "\n".join(f"{_fw(w)}: {m}" for w, m in items))


def cmd_tensor(a) -> Output:
    f = reps.tensor_decompose_oracle if a.oracle else reps.tensor_decompose
    dec = f(a.rs, a.weight, a.mu)
    return Output({"decomposition": dec.to_json(), "dimension": dec.dimension()}, _dec_text(dec))


def cmd_invariants(a) -> Output:
    d = reps.invariant_dimension(a.rs, a.weights)
    return Output({"invariant_dimension": d}, str(d))


def cmd_min_inv(a) -> Output:
    r = reps.min_invariant_power(a.rs, a.weight, a.n_max)
    if r is None:
        return Output({"n": None, "invariant_dimension": None}, f"no invariants up to n = {a.n_max}")
    return Output({"n": r[0], "invariant_dimension": r[1]}, f"n = {r[0]}, invariants of dimension {r[1]}")


def cmd_contains(a) -> Output:
    m = reps.contains_module(a.rs, a.weight, a.n, a.mu)
    return Output({"multiplicity": m}, str(m))


def cmd_gewicht(a) -> Output:
    idx = [a.index] if a.index is not None else range(a.rs.total_rank)
    res = {i + 1: reps.verify_line_multiplicities(a.rs, a.weight, i) for i in idx}
    return Output({"results": {str(k): v for k, v in res.items()}, "all": all(res.values())},
                  "\n".join(f"node {k}: {v}" for k, v in res.items()))


def cmd_kompo(a) -> Output:
    idx = [a.index] if a.index is not None else range(a.rs.total_rank)
    res = {i + 1: reps.verify_cartan_chain(a.rs, a.weight, i) for i in idx}
    chains = {str(i + 1): [list(w) for w in reps.cartan_chain(a.rs, a.weight, i)] for i in idx}
    return Output({"results": {str(k): v for k, v in res.items()}, "chains": chains, "all": all(res.values())},
                  "\n".join(f"node {k}: {v}" for k, v in res.items()))


def cmd_selfdual(a) -> Output:
    r = reps.self_dual_submodule_search(a.rs, a.weight, a.n_max)
    if r is None:
        return Output({"n": None, "mu": None}, f"none up to n = {a.n_max}")
    return Output({"n": r[0], "mu": list(r[1])}, f"n = {r[0]}, mu = {_fw(r[1])}")


def cmd_enumerate(a) -> Output:
    ws = reps.enumerate_dominant_weights(a.rs, a.dim_bound, a.non_self_dual, a.per_max_label)
    rows = [{"weight": list(w), "dimension": reps.weyl_dimension(a.rs, w)} for w in ws]
    return Output({"count": len(ws), "weights": rows},
                  "\n".join(f"{_fw(r['weight'])}: {r['dimension']}" for r in rows) + f"\n{len(ws)} weights")


def cmd_conjecture(a) -> Output:
    if a.mu is not None:
        rec = reps.conjecture_scan(a.rs, a.weight, a.mu, a.slack)
        return Output(rec.to_json(),
                      f"n_found = {rec.n_found}, bound = {rec.bound}, holds = {rec.holds}")
    sw = reps.conjecture_sweep(a.rs, a.weight, a.slack)
    lines = [f"{_fw(r.mu)}: n = {r.n_found}, bound {r.bound}, holds = {r.holds}" for r in sw.records]
    lines.append(f"per-mu reading holds: {sw.holds_per_mu}; uniform n = {sw.uniform_n}, holds: {sw.holds_uniform}")
    return Output(sw.to_json(), "\n".join(lines))


# ---------------------------------------------------------------------------
# padic
# ---------------------------------------------------------------------------


def cmd_vp(a) -> Output:
    v = padic.vp(a.x, a.p)
    return Output({"valuation": _value(v)}, _value(v))


def cmd_newton(a) -> Output:
    s = padic.newton_polygon_slopes(a.coeffs, a.p)
    return Output({"root_valuations": [_value(x) for x in s]}, " ".join(_value(x) for x in s))


def cmd_cyclotomic(a) -> Output:
    v = padic.cyclotomic_unit_valuation(a.p, a.l, a.n)
    stated = padic.stated_cyclotomic_exponent(a.p, a.n) if a.l == a.p else Fraction(0)
    return Output({"valuation": _value(v), "stated_exponent": str(stated)},
                  f"{_value(v)} (stated exponent {stated})")


def cmd_eigbound(a) -> Output:
    v = padic.eigenvalue_deviation_bound(a.matrix, a.p)
    e = padic.min_entry_valuation(a.matrix, a.p)
    return Output({"eigenvalue_bound": _value(v), "min_entry_valuation": _value(e)},
                  f"{_value(v)} (entries: {_value(e)})")


def cmd_certify(a) -> Output:
    r = padic.connectedness_certificate(a.generators, a.p, a.q)
    lines = [f"passed: {r.passed}"] + [f"reason: {x}" for x in r.reasons]
    return Output(r.to_json(), "\n".join(lines))


def cmd_larsen(a) -> Output:
    v = padic.larsen_classify(a.r, a.dim_endend, a.sym2, a.wedge2, a.det_finite)
    return Output({"classification": v}, v)


def cmd_almost_simple(a) -> Output:
    v = padic.almost_simplicity_test(a.r, a.dim_inv, a.prime_power)
    return Output({"verdict": v}, v)


def cmd_growth(a) -> Output:
    k = padic.analytic_dimension_estimate(a.sizes, a.p)
    return Output({"k": k}, "unsettled" if k is None else str(k))


# ---------------------------------------------------------------------------
# bundle
# ---------------------------------------------------------------------------


def cmd_chern(a) -> Output:
    c = bundles.total_chern(a.spec)
    return Output({"coefficients": list(c.coefficients)}, str(c))


def cmd_binvariants(a) -> Output:
    inv = bundles.numeric_invariants(a.spec, need_discriminant=a.spec.n >= 2)
    return Output(inv.to_json(),
                  f"r = {inv.rank}, c1 = {inv.c1}, mu = {inv.slope}, c2 = {inv.c2}, discriminant = {inv.discriminant}")


def _resolution(a) -> bundles.KernelBundleSpec:
    if a.spec.form == "kernel" and a.dual:
        return a.spec.dual()
    return a.spec


def cmd_bs(a) -> Output:
    spec = _resolution(a)
    v = bundles.bs_stability(spec)
    return Output({"resolution": spec.to_json(), "verdict": v}, v)


def cmd_langer(a) -> Output:
    if a.spec is not None:
        res = bundles.langer_restriction_degree(a.spec, a.hn)
    elif a.rank is not None and a.disc is not None:
        res = bundles.langer_bound(a.rank, a.disc, a.hn)
    else:
        raise bundles.BundleError("give --spec, or --rank and --disc")
    return Output(res.to_json(), f"bound {res.bound}, a_min = {res.a_min}")


def cmd_vanishing(a) -> Output:
    rep = bundles.cohomology_vanishing(_resolution(a))
    lines = [f"Gamma(E^{n}) = 0: {v}" for n, v in rep.sections_vanish().items()]
    lines.append(f"{len(rep.claims)} claims certified from {len(rep.entries)} table entries")
    return Output(rep.to_json(), "\n".join(lines))


def cmd_analyze(a) -> Output:
    rep = bundles.analyze_bundle(a.spec, a.p, a.q, a.trivial_mod_pq, a.sections_at_r)
    return Output(rep.to_json(), rep.render())


# ---------------------------------------------------------------------------
# paper
# ---------------------------------------------------------------------------


def _deadline(a) -> float | None:
    return None if a.max_seconds is None else time.monotonic() + a.max_seconds


def cmd_e6(a) -> Output:
    t = reproduce.e6_table()
    return Output(t.to_json(), t.render())


def cmd_beispi(a) -> Output:
    rep = reproduce.beispi(a.p, a.q)
    return Output(rep.to_json(), rep.render())


def _sweep_output(res: reproduce.SweepResult) -> Output:
    status = "complete" if res.complete else "interrupted (partial)"
    text = f"{res.name}: {len(res.rows)} checked, {len(res.failures)} failures, {status}"
    return Output(res.to_json(), text, res.ok)


def cmd_dl(a) -> Output:
    res = reproduce.dl_exclusion(a.rank, a.max_label, a.n_max, _deadline(a))
    out = _sweep_output(res)
    out.text = "\n".join(
        [f"{_fw(r['lambda'])}: n = {r['n']}, mu = {_fw(r['mu']) if r['mu'] else None}" for r in res.rows]
        + [out.text])
    return out


def cmd_invar(a) -> Output:
    res = reproduce.invar_sweep(max_dim=a.max_dim, deadline=_deadline(a))
    out = _sweep_output(res)
    held = [r for r in res.rows if r.get("hypothesis_holds")]
    out.text = "\n".join([f"no invariants below dim: {r['system']} {_fw(r['lambda'])}" for r in held] + [out.text])
    return out


def cmd_conj_sweep(a) -> Output:
    res = reproduce.conjecture_table(max_label=a.max_label, deadline=_deadline(a))
    out = _sweep_output(res)
    over = [r for r in res.rows if not r.get("summary") and not r["holds"]]
    out.text += f"\n{len(over)} pairs need n above the bound"
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser, top: bool = False) -> None:
    # leaves suppress the default so a value given before the group survives
    p.add_argument("--format", choices=("text", "json"), default=None if top else argparse.SUPPRESS,
                   help=f"output format (default: ${FORMAT_ENV} or text)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monokit", description="Exact representation theory, "
                                     "p-adic certificates and kernel bundles.")
    _add_format(parser, top=True)
    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP")

    def leaf(sub, name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _add_format(p)
        p.set_defaults(func=fn)
        return p

    def with_rs(p, weight=True):
        p.add_argument("--rs", type=_rs_arg, required=True, help="root system, e.g. A2, D5, A1xA1")
        if weight:
            p.add_argument("--weight", type=_weight_arg, required=True, help="Dynkin labels, e.g. 1,0")
        return p

    g = groups.add_parser("rootsys", help="Cartan data")
    s = g.add_subparsers(dest="cmd", required=True, metavar="CMD")
    with_rs(leaf(s, "cartan", cmd_cartan, "Cartan matrix"), weight=False)
    with_rs(leaf(s, "posroots", cmd_posroots, "positive roots in Dynkin labels"), weight=False)
    with_rs(leaf(s, "pi0", cmd_pi0, "fundamental group"), weight=False)
    with_rs(leaf(s, "dual", cmd_dual, "highest weight of the dual module"))

    g = groups.add_parser("rep", help="representation theory")
    s = g.add_subparsers(dest="cmd", required=True, metavar="CMD")
    with_rs(leaf(s, "dim", cmd_dim, "Weyl dimension"))
    p = with_rs(leaf(s, "mults", cmd_mults, "weight multiplicities"))
    p.add_argument("--all-weights", action="store_true", help="expand Weyl orbits")
    p = with_rs(leaf(s, "tensor", cmd_tensor, "decompose V(weight) (x) V(mu)"))
    p.add_argument("--mu", type=_weight_arg, required=True)
    p.add_argument("--oracle", action="store_true", help="use character stripping")
    p = with_rs(leaf(s, "invariants", cmd_invariants, "invariants in a tensor product"), weight=False)
    p.add_argument("--weights", type=_weight_arg, nargs="+", required=True)
    p = with_rs(leaf(s, "min-inv-power", cmd_min_inv, "first tensor power with invariants"))
    p.add_argument("--n-max", type=int, default=8)
    p = with_rs(leaf(s, "contains", cmd_contains, "multiplicity of V(mu) in V(weight)^n"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=_weight_arg, required=True)
    for name, fn, h in (("verify-gewicht", cmd_gewicht, "multiplicity one along root strings"),
                        ("verify-kompo", cmd_kompo, "chain 2 lambda - t alpha in V (x) V")):
        p = with_rs(leaf(s, name, fn, h))
        p.add_argument("--index", type=_index_arg, default=None, help="simple root, 1-based (default: all)")
    p = with_rs(leaf(s, "selfdual-search", cmd_selfdual, "first self-dual summand of a tensor power"))
    p.add_argument("--n-max", type=int, default=4)
    p = with_rs(leaf(s, "enumerate", cmd_enumerate, "dominant weights under a dimension bound"), weight=False)
    p.add_argument("--dim-bound", type=int, required=True)
    p.add_argument("--non-self-dual", action="store_true")
    p.add_argument("--per-max-label", action="store_true", help="bound is dim-bound * max label")
    p = with_rs(leaf(s, "conjecture", cmd_conjecture, "tensor-power containment against the fundamental group"))
    p.add_argument("--mu", type=_weight_arg, default=None, help="omit to scan every dominant weight")
    p.add_argument("--slack", type=int, default=None)

    g = groups.add_parser("padic", help="valuations and monodromy certificates")
    s = g.add_subparsers(dest="cmd", required=True, metavar="CMD")
    p = leaf(s, "vp", cmd_vp, "p-adic valuation")
    p.add_argument("--x", type=_fraction_arg, required=True)
    p.add_argument("--p", type=int, required=True)
    p = leaf(s, "newton", cmd_newton, "root valuations from the Newton polygon")
    p.add_argument("--coeffs", type=_fraction_list_arg, required=True, help="constant term first")
    p.add_argument("--p", type=int, required=True)
    p = leaf(s, "cyclotomic", cmd_cyclotomic, "v_p(1 - zeta) for zeta of order l^n")
    for f in ("--p", "--l", "--n"):
        p.add_argument(f, type=int, required=True)
    p = leaf(s, "eigbound", cmd_eigbound, "minimal eigenvalue valuation")
    p.add_argument("--matrix", type=_matrix_arg, required=True, help='JSON, e.g. [["3","0"],["0","9/2"]]')
    p.add_argument("--p", type=int, required=True)
    p = leaf(s, "certify", cmd_certify, "connectedness certificate")
    p.add_argument("--generators", type=_matrices_arg, required=True, help="JSON list of matrices or @file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_fraction_arg, required=True)
    p = leaf(s, "larsen", cmd_larsen, "moment classifier")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--dim-endend", type=int, required=True)
    p.add_argument("--sym2", action="store_true")
    p.add_argument("--wedge2", action="store_true")
    p.add_argument("--det-finite", action="store_true")
    p = leaf(s, "almost-simple", cmd_almost_simple, "almost simplicity from invariants of V^r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--dim-inv", type=int, required=True)
    p.add_argument("--prime-power", action=argparse.BooleanOptionalAction, default=None)
    p = leaf(s, "growth", cmd_growth, "stable growth exponent of a quotient tower")
    p.add_argument("--sizes", type=_int_list_arg, required=True)
    p.add_argument("--p", type=int, required=True)

    g = groups.add_parser("bundle", help="kernel bundles on projective space")
    s = g.add_subparsers(dest="cmd", required=True, metavar="CMD")
    spec_help = 'JSON like {"n":2,"form":"kernel","a":[1,1,1],"b":[3]}, @file, or example-beispi'
    for name, fn, h in (("chern", cmd_chern, "total Chern class"),
                        ("invariants", cmd_binvariants, "rank, c1, slope, c2, discriminant")):
        leaf(s, name, fn, h).add_argument("--spec", type=_spec_arg, required=True, help=spec_help)
    for name, fn, h in (("bs-stable", cmd_bs, "stability from the resolution"),
                        ("vanishing", cmd_vanishing, "vanishing of twisted tensor-power cohomology")):
        p = leaf(s, name, fn, h)
        p.add_argument("--spec", type=_spec_arg, required=True, help=spec_help)
        p.add_argument("--dual", action="store_true", help="pass a kernel-form spec through its dual")
    p = leaf(s, "langer", cmd_langer, "minimal degree for stable restriction")
    p.add_argument("--spec", type=_spec_arg, default=None, help=spec_help)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--disc", type=int, default=None, help="Delta . H^(n-2)")
    p.add_argument("--hn", type=int, default=1, help="H^n")
    p = leaf(s, "analyze", cmd_analyze, "full pipeline")
    p.add_argument("--spec", type=_spec_arg, required=True, help=spec_help)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_fraction_arg, required=True)
    p.add_argument("--trivial-mod-pq", action="store_true", help="assert a model trivial mod p^q")
    p.add_argument("--sections-at-r", type=int, default=None)

    g = groups.add_parser("paper", help="canned reproductions")
    s = g.add_subparsers(dest="cmd", required=True, metavar="CMD")
    leaf(s, "e6-table", cmd_e6, "non-self-dual E6 table")
    p = leaf(s, "beispi", cmd_beispi, "syzygy bundle on P^2")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--q", type=_fraction_arg, default=Fraction(1))

    def budget(p):
        p.add_argument("--max-seconds", type=float, default=None, help="stop and report partial results")

    p = leaf(s, "dl-exclusion", cmd_dl, "self-dual summands for D_l, l odd")
    p.add_argument("--rank", type=int, default=5)
    p.add_argument("--max-label", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4)
    budget(p)
    p = leaf(s, "invar-sweep", cmd_invar, "small modules without low invariants are type A")
    p.add_argument("--max-dim", type=int, default=10)
    budget(p)
    p = leaf(s, "conjecture-sweep", cmd_conj_sweep, "containment bound over A1, A2, A3, B2")
    p.add_argument("--max-label", type=int, default=2)
    budget(p)
    return parser


def render(out: Output, fmt: str, command: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "ok": out.ok, "result": out.payload}
        return json.dumps(doc, sort_keys=True)
    return out.text


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or os.environ.get(FORMAT_ENV, "text")
    if fmt not in ("text", "json"):
        print(f"monokit: {FORMAT_ENV} must be text or json, got {fmt!r}", file=stderr)
        return 2
    command = f"{args.group} {args.cmd}"
    try:
        out = args.func(args)
    except reps.CounterexampleError as exc:
        print(f"monokit: counterexample: {exc}", file=stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        if fmt == "json":
            print(json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "ok": False,
                              "error": str(exc)}, sort_keys=True), file=stdout)
        print(f"monokit: {exc}", file=stderr)
        return 1
    print(render(out, fmt, command), file=stdout)
    return 0 if out.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

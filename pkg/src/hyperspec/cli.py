"""``hyperspec`` command line: spectral invariants of uniform hypergraphs from
HGF (hypergraph) and TNS (tensor) files."""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import warnings
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from hyperspec import __version__
from hyperspec.generation import (
    canonical_form, census, census_feasible, iter_hypergraphs, label_class_count,
    label_class_search, minimise_specimen,
)
from hyperspec.hypergraph import (
    HGFError, Hypergraph, components, core_vertices, degrees, find_half_sum_labeling,
    find_odd_bipartition, is_connected, is_regular, parse_hypergraph, power_hypergraph,
    serialize_hypergraph,
)
from hyperspec.polynomial import RootFindingError, poly_roots
from hyperspec.spectra import (
    ConvergenceError, WitnessError, conjecture_probe, graph_spectrum,
    lift_adjacency_eigenpair, lift_regular, neg_rho_witness, slap_null_witness,
    slap_phase_witness, spectral_radius_power,
)
from hyperspec.tensor import (
    TENSOR_KINDS, HypergraphOperator, Tensor, TNSError, hypergraph_tensor, parse_tensor,
)
from hyperspec.trace import (
    BudgetExceeded, DEFAULT_BUDGET, charpoly_coefficients, charpoly_n2,
    laplacian_trace_formula, regular_coefficient_formula, trace_d,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CONJECTURE_MAX_K, CONJECTURE_MAX_N = 6, 9
ENUM_CLASS_BUDGET = 500  # estimated classes per edge level before capping


class UsageError(Exception):
    """Precondition or parse failure (exit 2)."""


@dataclass
class CommandReport:
    command: str
    digest: str | None
    payload: dict[str, Any]
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CommandReport":
        return cls(**json.loads(text))


# -- formatting ---------------------------------------------------------------

def fmt_real(x: float) -> str:
    x = float(x)
    return "0" if x == 0 else f"{x:.12g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    re, im = fmt_real(z.real), fmt_real(abs(z.imag))
    return f"{re}{'-' if z.imag < 0 else '+'}{im}i"


def fmt_scalar(v) -> str:
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return str(Fraction(v))
    if isinstance(v, (complex, np.complexfloating)):
        return fmt_complex(v)
    return fmt_real(v)


def fmt_vector(xs) -> list[str]:
    return [fmt_scalar(v) for v in xs]


def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for key, v in value.items():
            if isinstance(v, str) and "\n" in v:
                out.append(f"{pad}{key}: |")
                out.extend(f"{pad}  {ln}" for ln in v.rstrip("\n").split("\n"))
            elif isinstance(v, list) and any(isinstance(x, str) and "\n" in x for x in v):
                out.append(f"{pad}{key}:")
                for x in v:
                    lines = x.rstrip("\n").split("\n")
                    out.append(f"{pad}  - {lines[0]}")
                    out.extend(f"{pad}    {ln}" for ln in lines[1:])
            elif isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                          (v.values() if isinstance(v, dict) else v)):
                out.append(f"{pad}{key}:")
                out.extend(_render(v, indent + 1))
            else:
                out.append(f"{pad}{key}: {_inline(v)}")
        return out
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, dict):
                lines = _render(item, indent + 1)
                out.append(f"{pad}- " + lines[0].lstrip())
                out.extend(lines[1:])
            else:
                out.append(f"{pad}- {_inline(item)}")
        return out
    return [f"{pad}{_inline(value)}"]


def _inline(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "{" + ", ".join(_inline(x) for x in v) + "}" if v else "{}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_inline(x)}" for k, x in v.items())
    return str(v)


def render_text(report: CommandReport) -> str:
    lines = [f"# {report.command}" + (f" [{report.digest}]" if report.digest else "")]
    lines += _render(report.payload)
    lines += [f"warning: {w}" for w in report.warnings]
    return "\n".join(lines)


# -- input --------------------------------------------------------------------

def load_input(path: str):
    """Read an HGF or TNS file; the header decides (``k n m`` vs ``k n``)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    digest = hashlib.sha256(raw).hexdigest()[:16]
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not UTF-8 text") from None
    header = next((ln.split() for ln in text.splitlines()
                   if ln.strip() and not ln.lstrip().startswith("#")), None)
    if header is None:
        raise UsageError(f"{path}: empty input")
    if len(header) == 3:
        return parse_hypergraph(text), digest
    if len(header) == 2:
        return parse_tensor(text), digest
    raise UsageError(f"{path}: header must be 'k n m' (HGF) or 'k n' (TNS)")


def _need_hypergraph(obj, what: str) -> Hypergraph:
    if not isinstance(obj, Hypergraph):
        raise UsageError(f"{what} needs an HGF hypergraph file")
    return obj


def _dense(obj, kind: str) -> Tensor:
    if isinstance(obj, Tensor):
        return obj
    if obj.n > DEFAULT_BUDGET.max_dim:
        raise BudgetExceeded(f"dimension {obj.n} exceeds the trace budget ({DEFAULT_BUDGET.max_dim})")
    return hypergraph_tensor(obj, kind)


# -- commands -----------------------------------------------------------------

def cmd_info(args, obj) -> dict:
    H = _need_hypergraph(obj, "info")
    return {"k": H.k, "n": H.n, "m": H.m, "degrees": list(degrees(H)),
            "connected": is_connected(H), "components": len(components(H)),
            "core_vertices": sorted(core_vertices(H)), "regular": is_regular(H)}


def cmd_trace(args, obj) -> dict:
    T = _dense(obj, args.tensor)
    if args.d < 1:
        raise UsageError("--d must be >= 1")
    value = trace_d(T, args.d)
    out = {"tensor": args.tensor if isinstance(obj, Hypergraph) else "tns",
           "d": args.d, "trace": fmt_scalar(value)}
    if args.formula:
        H = _need_hypergraph(obj, "--formula")
        if args.d > H.k:
            raise UsageError(f"closed form holds only for d <= k = {H.k}")
        if args.tensor == "adj":
            closed = Fraction(0) if args.d < H.k else None
            if closed is None:
                raise UsageError("no adjacency closed form at d = k")
        else:
            closed = laplacian_trace_formula(H, args.d, signless=args.tensor == "slap")
        out["formula"] = fmt_scalar(closed)
        out["verdict"] = "EQUAL" if closed == value else "DIFFER"
    return out


def cmd_charpoly(args, obj) -> dict:
    if args.n2:
        T = obj if isinstance(obj, Tensor) else hypergraph_tensor(obj, args.tensor)
        if T.dim != 2:
            raise UsageError(f"--n2 needs dimension 2 (got {T.dim})")
        if not T.exact:
            raise UsageError("--n2 needs exact rational entries")
        p = charpoly_n2(T)
        return {"degree": p.degree, "coefficients": fmt_vector(p.descending()),
                "roots": fmt_vector(poly_roots(p))}
    if args.t is None:
        raise UsageError("give --t T or --n2")
    T = _dense(obj, args.tensor)
    if args.t > T.order:
        raise UsageError(f"--t {args.t} exceeds k = {T.order}; traces beyond k are refused")
    traces = [trace_d(T, d) for d in range(1, args.t + 1)]
    p = charpoly_coefficients(traces)
    out = {"tensor": args.tensor if isinstance(obj, Hypergraph) else "tns",
           "traces": fmt_vector(traces), "coefficients": fmt_vector(p)}
    if args.regular:
        H = _need_hypergraph(obj, "--regular")
        d = is_regular(H)
        if d is None:
            raise UsageError("--regular: hypergraph is not regular")
        if args.tensor == "adj":
            raise UsageError("--regular compares Laplacian or signless Laplacian coefficients")
        idx = 0 if args.tensor == "lap" else 1
        want = [regular_coefficient_formula(H.n, H.k, d, t)[idx] for t in range(1, args.t + 1)]
        out["regular_degree"] = d
        out["formula"] = fmt_vector(want)
        out["verdict"] = "EQUAL" if want == p else "DIFFER"
    return out


def cmd_rho(args, obj, notes: list[str]) -> dict:
    if args.tensor == "lap":
        raise UsageError("rho needs a nonnegative tensor (adj or slap)")
    if isinstance(obj, Hypergraph):
        if obj.m == 0:
            notes.append("hypergraph has no edges; spectral radius is 0")
            return {"tensor": args.tensor, "rho": "0", "residual": "0",
                    "x": ["1"] * obj.n, "components": len(components(obj))}
        T = HypergraphOperator(obj, args.tensor)
    else:
        T = obj
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        pair = spectral_radius_power(T, tol=args.tol, max_iter=args.max_iter)
    notes.extend(str(w.message) for w in caught)
    return {"tensor": args.tensor if isinstance(obj, Hypergraph) else "tns",
            "rho": fmt_real(pair.lam), "residual": f"{float(pair.residual):.3e}",
            "x": fmt_vector(pair.x), "components": len(T.support_components())}


def cmd_oddbip(args, obj) -> dict:
    H = _need_hypergraph(obj, "oddbip")
    lab = find_odd_bipartition(H)
    out = {"odd_bipartite": lab is not None,
           "V1": sorted(lab.part()) if lab is not None else None}
    if args.witness and lab is not None:
        if H.k % 2:
            out["witness"] = "n/a (k odd)"
        else:
            pair = slap_null_witness(H, lab)
            out["witness"] = {"eigenvalue": "0", "x": fmt_vector(pair.x),
                              "residual": fmt_scalar(pair.residual)}
    return out


def cmd_labeling(args, obj, notes: list[str]) -> dict:
    H = _need_hypergraph(obj, "labeling")
    if H.k % 2:
        return {"labeling": None, "reason": "k odd"}
    lab = find_half_sum_labeling(H)
    out = {"labeling": list(lab.values) if lab is not None else None}
    if args.witness and lab is not None:
        z = slap_phase_witness(H, lab)
        out["zero_witness"] = {"x": fmt_vector(z.x), "residual": fmt_scalar(z.residual)}
        if is_connected(H) and H.m:
            neg = neg_rho_witness(H, lab)
            out["neg_rho_witness"] = {"eigenvalue": fmt_real(neg.lam), "x": fmt_vector(neg.x),
                                      "residual": f"{neg.residual:.3e}"}
        else:
            notes.append("-rho witness needs a connected hypergraph with edges; skipped")
    return out


def cmd_power(args, obj) -> dict:
    G = _need_hypergraph(obj, "power")
    if G.k != 2:
        raise UsageError("power needs a 2-uniform input")
    if args.k < 3:
        raise UsageError("--k must be >= 3")
    Gk = power_hypergraph(G, args.k)
    text = serialize_hypergraph(Gk)
    out = {"k": Gk.k, "n": Gk.n, "m": Gk.m}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out["written"] = args.out
    else:
        out["hgf"] = text
    return out


def cmd_lift(args, obj) -> dict:
    G = _need_hypergraph(obj, "lift")
    if G.k != 2:
        raise UsageError("lift needs a 2-uniform input")
    if args.k < 3:
        raise UsageError("--k must be >= 3")
    if args.tensor != "adj":
        if args.k % 2:
            raise UsageError("Laplacian-type lifts need an even --k")
        if is_regular(G) is None:
            raise UsageError(f"{args.tensor} lift needs a regular graph")
        if args.d is not None and args.d != is_regular(G):
            raise UsageError(f"graph is {is_regular(G)}-regular, not {args.d}-regular")
    w, V = graph_spectrum(G)
    rows = []
    for i, alpha in enumerate(w):
        row: dict[str, Any] = {"alpha": fmt_real(alpha)}
        if abs(alpha) < 1e-12:
            row["status"] = "skipped (alpha = 0)"
            rows.append(row)
            continue
        try:
            if args.tensor == "adj":
                pair = lift_adjacency_eigenpair(G, alpha, V[:, i], args.k)
                row.update(lifted=fmt_complex(pair.lam), residual=f"{pair.residual:.3e}",
                           status="verified")
            else:
                rep = lift_regular(G, alpha, V[:, i], args.k, args.tensor)
                row["lifted"] = [fmt_complex(x) for x in rep.lifted_values]
                row["residuals"] = [f"{p.residual:.3e}" for p in rep.witnesses]
                row["status"] = "verified"
                if rep.spectral_radius is not None:
                    row["rho"] = fmt_real(rep.spectral_radius)
        except WitnessError as exc:
            row["status"] = f"failed: {exc}"
        rows.append(row)
    return {"tensor": args.tensor, "k": args.k, "source_spectrum": [fmt_real(a) for a in w],
            "lifts": rows}


def _edge_cap(k: int, n: int, explicit: int | None) -> int | None:
    if explicit is not None:
        return explicit
    slots = math.comb(n, k)
    if slots <= 20:
        return None
    m = 0
    while m < slots and math.comb(slots, m + 1) / math.factorial(n) <= ENUM_CLASS_BUDGET:
        m += 1
    return max(m, 1)


def _probe_row(H: Hypergraph) -> dict:
    rep = conjecture_probe(H)
    return {"c1": rep.odd_bipartite, "c4": rep.half_sum,
            "w2": rep.zero_slap is not None and rep.zero_slap.residual <= 1e-8,
            "w3": rep.neg_rho is not None and rep.neg_rho.residual <= 1e-8,
            "specimen": rep.specimen}


def cmd_conjecture(args, obj, notes: list[str]) -> dict:
    if obj is not None:
        H = _need_hypergraph(obj, "conjecture")
        if not is_connected(H):
            raise UsageError("conjecture probe needs a connected hypergraph")
        rep = conjecture_probe(H)
        return {"k": H.k, "n": H.n, "m": H.m,
                "condition_1_odd_bipartite": rep.odd_bipartite,
                "condition_4_half_sum": rep.half_sum,
                "V1": sorted(rep.bipartition) if rep.bipartition else None,
                "labeling": list(rep.labeling) if rep.labeling else None,
                "witness_2_residual": fmt_scalar(rep.zero_slap.residual) if rep.zero_slap else None,
                "witness_3": ({"eigenvalue": fmt_real(rep.neg_rho.lam),
                               "residual": f"{rep.neg_rho.residual:.3e}"} if rep.neg_rho else None),
                "specimen": rep.specimen, "consistent": rep.consistent}
    if args.k is None or args.nmax is None:
        raise UsageError("give a file or both --k and --nmax")
    K, N = args.k, args.nmax
    if not 2 <= K <= CONJECTURE_MAX_K or not K <= N <= CONJECTURE_MAX_N:
        raise UsageError(f"budget: 2 <= K <= {CONJECTURE_MAX_K} and K <= N <= {CONJECTURE_MAX_N}")
    levels = []
    totals: Counter = Counter()
    specimens = []
    budget = args.witness_limit
    for n in range(K, N + 1):
        counts: Counter = Counter()
        if census_feasible(K, n):
            c = census(K, n, keep=args.keep, collect=budget)
            counts.update({"instances": c.connected,
                           "(1)=T (4)=T": c.both, "(1)=F (4)=T": c.half_sum_only,
                           "(1)=T (4)=F": c.odd_bip_only, "(1)=F (4)=F": c.neither,
                           "violations (1)=>(4)": c.violations,
                           "specimens (4) and not (1)": c.half_sum_only})
            for mask in c.half_sum_masks:
                row = _probe_row(c.hypergraph(mask))
                counts["witness probes"] += 1
                counts["witnessed (2),(3)"] += row["w2"] and row["w3"]
            budget -= len(c.half_sum_masks)
            for mask in c.specimen_masks[:max(args.keep - len(specimens), 0)]:
                specimens.append(serialize_hypergraph(c.hypergraph(mask)))
            mode, cap = "census", None
        else:
            cap = _edge_cap(K, n, args.max_edges)
            mode = "generation"
            for H in iter_hypergraphs(K, n, max_edges=cap):
                if H.m == 0:
                    continue
                row = _probe_row(H)
                counts["instances"] += 1
                counts[f"(1)={'T' if row['c1'] else 'F'} (4)={'T' if row['c4'] else 'F'}"] += 1
                counts["witness probes"] += row["c4"]
                counts["witnessed (2),(3)"] += row["w2"] and row["w3"]
                counts["violations (1)=>(4)"] += row["c1"] and not row["c4"]
                if row["specimen"]:
                    counts["specimens (4) and not (1)"] += 1
                    if len(specimens) < args.keep:
                        specimens.append(serialize_hypergraph(H))
            if cap is not None:
                notes.append(f"n={n}: enumeration capped at {cap} edges; "
                             "the label-class search covers all edge counts")
        totals.update(counts)
        levels.append({"n": n, "mode": mode, "max_edges": "all" if cap is None else cap,
                       **dict(sorted(counts.items()))})
    if totals["witnessed (2),(3)"] != totals["witness probes"]:
        notes.append("some (4) instances lack verified (2)/(3) witnesses")
    cert = label_class_search(K, N, keep=max(args.keep, 1) * 4)
    minimal, seen = [], set()
    for H, f in cert.specimens:
        Hm, fm = minimise_specimen(H, f)
        key = (Hm.n, canonical_form(Hm.n, Hm.edges))
        if key in seen or len(minimal) >= args.keep:
            continue
        seen.add(key)
        minimal.append({"hgf": serialize_hypergraph(Hm), "labeling": list(fm)})
    return {
        "k": K, "nmax": N, "levels": levels,
        "totals": dict(sorted(totals.items())),
        "enumerated_specimens": specimens,
        "label_classes": {"checked": cert.classes_checked,
                          "expected": label_class_count(K, N),
                          "specimen_exists": cert.found,
                          "specimens": minimal},
    }


def cmd_check(args, obj) -> tuple[dict, int]:
    from hyperspec.checks import run_checks
    results = run_checks()
    payload = {"checks": [{"name": r.name, "status": "PASS" if r.ok else "FAIL", "detail": r.detail}
                          for r in results],
               "passed": sum(r.ok for r in results), "total": len(results)}
    return payload, EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def _globals(parser: argparse.ArgumentParser, defaults: bool):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--tol", type=float, default=d(1e-10), help="power-iteration gap tolerance")
    parser.add_argument("--max-iter", type=int, default=d(200_000), help="power-iteration step limit")
    parser.add_argument("--seed", type=int, default=d(0),
                        help="recorded in reports; every command is deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperspec", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hyperspec {__version__}")
    _globals(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, file=True, optional_file=False):
        p = sub.add_parser(name, help=help_, parents=[common])
        if file:
            p.add_argument("file", nargs="?" if optional_file else None)
        return p

    add("info", "size, degrees, connectivity, core vertices")
    p = add("trace", "exact generalized trace Tr_d")
    p.add_argument("--tensor", choices=TENSOR_KINDS, default="adj")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--formula", action="store_true", help="compare with the Laplacian closed form")
    p = add("charpoly", "codegree coefficients, or the full n=2 polynomial")
    p.add_argument("--tensor", choices=TENSOR_KINDS, default="lap")
    p.add_argument("--t", type=int)
    p.add_argument("--n2", action="store_true")
    p.add_argument("--regular", action="store_true", help="compare with the regular closed form")
    p = add("rho", "spectral radius by power iteration")
    p.add_argument("--tensor", choices=TENSOR_KINDS, default="adj")
    p = add("oddbip", "odd bipartition")
    p.add_argument("--witness", action="store_true")
    p = add("labeling", "half-sum labeling")
    p.add_argument("--witness", action="store_true")
    p = add("power", "k-th power hypergraph of a graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p = add("lift", "lift graph eigenvalues to the power hypergraph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tensor", choices=TENSOR_KINDS, default="adj")
    p.add_argument("--d", type=int, help="expected regularity")
    p = add("conjecture", "probe the labeling conditions on a file or an enumerated corpus",
            optional_file=True)
    p.add_argument("--k", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--keep", type=int, default=3, help="specimens to print")
    p.add_argument("--witness-limit", type=int, default=200,
                   help="numeric (2)/(3) witnesses built per run in census mode")
    add("check", "run the invariant battery", file=False)
    return parser


def run(argv: list[str] | None = None) -> CommandReport:
    args = build_parser().parse_args(argv)
    notes: list[str] = []
    digest = None
    code = EXIT_OK
    try:
        obj = None
        if getattr(args, "file", None):
            obj, digest = load_input(args.file)
        cmd = args.command
        if cmd == "check":
            payload, code = cmd_check(args, obj)
        elif cmd in ("rho", "labeling", "conjecture"):
            payload = globals()[f"cmd_{cmd}"](args, obj, notes)
        else:
            payload = globals()[f"cmd_{cmd}"](args, obj)
    except (UsageError, HGFError, TNSError, BudgetExceeded, ValueError, TypeError) as exc:
        payload, code = {"error": str(exc)}, EXIT_USAGE
    except (ConvergenceError, RootFindingError) as exc:
        payload, code = {"error": str(exc)}, EXIT_NUMERIC
    return CommandReport(args.command, digest, payload, notes, code)


def main(argv: list[str] | None = None) -> int:
    args_json = "--json" in (argv if argv is not None else sys.argv[1:])
    report = run(argv)
    if args_json:
        print(report.to_json())
    elif "error" in report.payload and report.exit_code:
        print(f"hyperspec {report.command}: {report.payload['error']}", file=sys.stderr)
    elif report.command == "power" and "hgf" in report.payload:
        sys.stdout.write(report.payload["hgf"])
    else:
        print(render_text(report))
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

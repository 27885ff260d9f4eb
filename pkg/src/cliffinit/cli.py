"""Command-line surface: search / terms / compare.

Every output file starts with a single manifest header line that fully
reconstructs the run (inputs, template, strategy, seeds). Wall-clock
time is printed on stdout only, so serial reruns with the same seed
produce byte-identical files. Exit codes: 0 success, 2 input error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .ansatz import ParameterAssignment, bitstring_assignment, build_su2
from .baselines import (
    EXACT_QUBIT_CAP,
    chem_accurate,
    exact_ground,
    ground_statevector,
    hf_search,
    recovered_correlation,
)
from ._dense import pauli_expectation
from .errors import (
    CliffInitError,
    DegenerateDenominator,
    SchemaError,
)
from .magic import DENSE_QUBIT_CAP, exhaustive_extended, kt_search
from .objective import ConstraintSpec, term_breakdown
from .pauli import Hamiltonian, load_hamiltonian
from .search import (
    DEFAULT_EXHAUSTIVE_CAP,
    SearchConfig,
    bo_search,
    exhaustive,
    random_search,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RUNTIME = 3

AUTO_EXHAUSTIVE_LIMIT = 4**8


@dataclass
class RunManifest:
    """Everything needed to reproduce a run, embedded in output headers."""

    command: str
    hamiltonians: list
    n: int | None
    reps: int
    strategy: str | None
    k: int | None
    active_slots: list | None
    config: dict | None
    constraint_weight: float | None
    outputs: list
    version: str
    wall_ms: float | None = None  # stdout only; never written to files

    def header_json(self) -> str:
        d = {k: v for k, v in asdict(self).items() if v is not None and k != "wall_ms"}
        return json.dumps(d, sort_keys=True)

    def header_line(self) -> str:
        return f"# manifest: {self.header_json()}"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(float(x))  # plain-float repr even for numpy scalars
    return str(x)


def _write_lines(path: Path, lines) -> None:
    path.write_text("\n".join(lines) + "\n")


def _parse_active(spec: str | None):
    if spec is None:
        return None
    try:
        return tuple(int(v) for v in spec.split(","))
    except ValueError:
        raise ValueError(f"bad --active list {spec!r}; expected e.g. 0,3,7") from None


def _parse_stagnation(spec: str | None):
    if spec is None:
        return None
    try:
        window, tol = spec.split(":")
        return (int(window), float(tol))
    except ValueError:
        raise ValueError(
            f"bad --stagnation {spec!r}; expected window:tol, e.g. 500:1e-9"
        ) from None


def _override_weight(h: Hamiltonian, weight: float | None) -> Hamiltonian:
    if weight is None or not h.constraints:
        return h
    cons = tuple(
        ConstraintSpec(c.name, c.observable, c.target, weight) for c in h.constraints
    )
    return Hamiltonian(h.n, h.terms, cons, h.name, h.metadata)


def _load(path: str) -> Hamiltonian:
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"no such file: {path}")
    return load_hamiltonian(p)


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        budget=args.budget,
        seed=args.seed if args.seed is not None else 0,
        warmup=args.warmup,
        pool_size=args.pool,
        trees=args.trees,
        stop_on_stagnation=_parse_stagnation(args.stagnation),
    )


def _run_strategy(strategy, template, h, args, active):
    """Dispatch one search run; returns a SearchTrace."""
    k = args.k or 0
    if k > 0:
        if strategy == "exhaustive":
            return exhaustive_extended(
                template, h, k, cap=args.cap, active_slots=active
            )
        if strategy == "bo":
            return kt_search(template, h, k, _search_config(args), active_slots=active)
        raise ValueError(f"--k is not supported with strategy {strategy!r}")
    if strategy == "exhaustive":
        return exhaustive(template, h, cap=args.cap, active_slots=active)
    if strategy == "random":
        return random_search(template, h, _search_config(args), active_slots=active)
    return bo_search(template, h, _search_config(args), active_slots=active)


def _needs_seed(strategy: str) -> bool:
    return strategy in ("bo", "random")


def _config_dict(args, strategy) -> dict | None:
    if not _needs_seed(strategy):
        return None
    return {
        "budget": args.budget,
        "warmup": args.warmup,
        "pool_size": args.pool,
        "trees": args.trees,
        "seed": args.seed,
        "stagnation": args.stagnation,
    }


# ---------------- search ----------------


def cmd_search(args) -> int:
    try:
        h = _override_weight(_load(args.ham), args.constraint_weight)
        template = build_su2(h.n, args.reps)
        active = _parse_active(args.active)
        strategy = args.strategy
        if _needs_seed(strategy) and args.seed is None:
            print("error: --seed is required for sampled strategies", file=sys.stderr)
            return EXIT_INPUT
        _search_config(args)  # validate early
    except (SchemaError, ValueError, OSError, CliffInitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    t0 = time.perf_counter()
    try:
        trace = _run_strategy(strategy, template, h, args, active)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CliffInitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    wall_ms = 1e3 * (time.perf_counter() - t0)

    out = Path(args.out) if args.out else Path(Path(args.ham).stem + "_trace")
    csv_path = out.parent / (out.name + ".csv")
    json_path = out.parent / (out.name + ".json")
    png_path = out.parent / (out.name + ".png")
    outputs = [str(csv_path), str(json_path)] + ([] if args.no_plot else [str(png_path)])
    manifest = RunManifest(
        command="search",
        hamiltonians=[args.ham],
        n=h.n,
        reps=args.reps,
        strategy=strategy,
        k=args.k,
        active_slots=list(active) if active else None,
        config=_config_dict(args, strategy),
        constraint_weight=args.constraint_weight,
        outputs=outputs,
        version=__version__,
        wall_ms=wall_ms,
    )

    lines = [manifest.header_line(), "iteration,total,best_so_far"]
    for it, total, best in trace.csv_rows():
        lines.append(f"{it},{_fmt(total)},{_fmt(best)}")
    _write_lines(csv_path, lines)
    blob = {"manifest": json.loads(manifest.header_json()), **trace.to_jsonable()}
    json_path.write_text(json.dumps(blob, indent=2) + "\n")
    if not args.no_plot:
        from .plotting import save_trace_figure

        entries = trace.entries
        save_trace_figure(
            png_path,
            [e.iteration for e in entries],
            [e.record.total for e in entries],
            [e.best_so_far for e in entries],
            trace.warmup_used,
            title=h.name or Path(args.ham).stem,
        )
    print(
        f"best_energy={_fmt(trace.best_record.raw_energy)}"
        f" best_total={_fmt(trace.best_total)}"
        f" iterations={trace.evaluations_used}"
        f" iterations_to_best={trace.iterations_to_best}"
        f" guided_iterations_to_best={trace.guided_iterations_to_best}"
        f" wall_ms={wall_ms:.1f}"
    )
    return EXIT_OK


# ---------------- terms ----------------


def _load_assignment(path: str, template) -> ParameterAssignment:
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"no such file: {path}")
    try:
        blob = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"assignment file is not valid JSON: {e}") from None
    if isinstance(blob, dict):
        if "assignment" in blob:
            blob = blob["assignment"]
        elif "best" in blob and isinstance(blob["best"], dict):
            blob = blob["best"].get("assignment")
    if not isinstance(blob, list) or not all(isinstance(v, int) for v in blob):
        raise SchemaError("assignment must be a JSON list of integers")
    if len(blob) != template.num_slots:
        raise SchemaError(
            f"assignment has {len(blob)} entries, template needs {template.num_slots}"
        )
    return ParameterAssignment(tuple(blob))


def cmd_terms(args) -> int:
    try:
        h = _load(args.ham)
        template = build_su2(h.n, args.reps)
        if args.assignment is not None:
            a = _load_assignment(args.assignment, template)
        elif args.bitstring is not None:
            a = bitstring_assignment(template, args.bitstring)
        else:
            print("error: need --assignment or --bitstring", file=sys.stderr)
            return EXIT_INPUT
        if args.exact and h.n > EXACT_QUBIT_CAP:
            print(
                f"error: --exact caps at {EXACT_QUBIT_CAP} qubits, got {h.n}",
                file=sys.stderr,
            )
            return EXIT_INPUT
    except (SchemaError, ValueError, OSError, CliffInitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        rows = term_breakdown(h, template, a)
        hf_col = exact_col = None
        if args.hf:
            witness = hf_search(h).witness
            hf_rows = term_breakdown(h, template, bitstring_assignment(template, witness))
            hf_col = {id(t): v for (t, _), (t2, v) in zip(rows, hf_rows)}
        if args.exact:
            psi = ground_statevector(h)
            exact_col = {
                id(term): pauli_expectation(psi, term.pauli).real for term, _ in rows
            }
    except CliffInitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    diagonal = [(t, v) for t, v in rows if t.pauli.is_diagonal]
    lit = [(t, v) for t, v in rows if not t.pauli.is_diagonal and v != 0]
    rest = [(t, v) for t, v in rows if not t.pauli.is_diagonal and v == 0]
    if exact_col is not None:
        rest.sort(key=lambda tv: -exact_col[id(tv[0])])
    ordered = diagonal + lit + rest
    group_sizes = [len(diagonal), len(lit), len(rest)]

    out = Path(args.out) if args.out else Path(Path(args.ham).stem + "_terms")
    csv_path = out.parent / (out.name + ".csv")
    png_path = out.parent / (out.name + ".png")
    outputs = [str(csv_path)] + ([] if args.no_plot else [str(png_path)])
    manifest = RunManifest(
        command="terms",
        hamiltonians=[args.ham],
        n=h.n,
        reps=args.reps,
        strategy=None,
        k=None,
        active_slots=None,
        config=None,
        constraint_weight=None,
        outputs=outputs,
        version=__version__,
    )
    header = ["term_label", "coeff", "expectation_cafqa"]
    if hf_col is not None:
        header.append("expectation_hf")
    if exact_col is not None:
        header.append("expectation_exact")
    lines = [manifest.header_line(), ",".join(header)]
    for term, v in ordered:
        cells = [term.pauli.label(), _fmt(term.coeff), _fmt(v)]
        if hf_col is not None:
            cells.append(_fmt(hf_col[id(term)]))
        if exact_col is not None:
            cells.append(_fmt(exact_col[id(term)]))
        lines.append(",".join(cells))
    _write_lines(csv_path, lines)

    if not args.no_plot:
        from .plotting import save_terms_figure

        columns = {"cafqa": [float(v) for _, v in ordered]}
        if hf_col is not None:
            columns["hf"] = [float(hf_col[id(t)]) for t, _ in ordered]
        if exact_col is not None:
            columns["exact"] = [exact_col[id(t)] for t, _ in ordered]
        save_terms_figure(
            png_path,
            [t.pauli.label() for t, _ in ordered],
            columns,
            group_sizes,
            title=h.name or Path(args.ham).stem,
        )
    total = sum(t.coeff * v for t, v in rows)
    print(f"terms={len(rows)} raw_energy={_fmt(total)} wrote={csv_path}")
    return EXIT_OK


# ---------------- compare ----------------


def cmd_compare(args) -> int:
    out = Path(args.out) if args.out else Path("compare")
    rows = []
    any_ok = False
    any_runtime_error = False
    for ham_path in args.ham:
        row = {
            "name": "",
            "bond_length": None,
            "n": None,
            "e_exact": None,
            "e_hf": None,
            "e_cafqa": None,
            "abs_err": None,
            "recovered_pct": None,
            "chem_accurate": None,
            "relative_accuracy": None,
            "error": "",
        }
        rows.append(row)
        try:
            h = _override_weight(_load(ham_path), args.constraint_weight)
        except (SchemaError, OSError) as e:
            row["name"] = Path(ham_path).stem
            row["error"] = str(e)
            continue
        row["name"] = h.name or Path(ham_path).stem
        bl = h.metadata.get("bond_length")
        row["bond_length"] = float(bl) if isinstance(bl, (int, float)) else None
        row["n"] = h.n
        template = build_su2(h.n, args.reps)

        flags = []
        try:
            if h.n <= EXACT_QUBIT_CAP:
                row["e_exact"] = exact_ground(h).energy
            row["e_hf"] = hf_search(h).energy

            strategy = args.strategy
            if strategy == "auto":
                strategy = (
                    "exhaustive"
                    if template.space_size <= AUTO_EXHAUSTIVE_LIMIT
                    else "bo"
                )
            if _needs_seed(strategy) and args.seed is None:
                raise ValueError(
                    f"--seed required: strategy resolved to {strategy!r} for {ham_path}"
                )
            trace = _run_strategy(strategy, template, h, args, None)
            row["e_cafqa"] = trace.best_record.raw_energy
            any_ok = True
        except (CliffInitError, ValueError) as e:
            row["error"] = str(e)
            any_runtime_error = True
            continue

        if row["e_exact"] is not None:
            row["abs_err"] = abs(row["e_cafqa"] - row["e_exact"])
            row["chem_accurate"] = chem_accurate(row["e_cafqa"], row["e_exact"])
            try:
                row["recovered_pct"] = recovered_correlation(
                    row["e_cafqa"], row["e_hf"], row["e_exact"]
                )
            except DegenerateDenominator:
                flags.append("DegenerateDenominator")
            err_cafqa = abs(row["e_cafqa"] - row["e_exact"])
            err_hf = abs(row["e_hf"] - row["e_exact"])
            row["relative_accuracy"] = (
                float("inf") if err_cafqa < 1e-12 else err_hf / err_cafqa
            )
        row["error"] = ";".join(flags)

    csv_path = out.parent / (out.name + ".csv")
    png_path = out.parent / (out.name + ".png")
    outputs = [str(csv_path)] + ([] if args.no_plot else [str(png_path)])
    manifest = RunManifest(
        command="compare",
        hamiltonians=list(args.ham),
        n=None,
        reps=args.reps,
        strategy=args.strategy,
        k=args.k,
        active_slots=None,
        config=_config_dict(args, "bo" if args.seed is not None else "exhaustive"),
        constraint_weight=args.constraint_weight,
        outputs=outputs,
        version=__version__,
    )
    header = (
        "name,bond_length,n_qubits,e_exact,e_hf,e_cafqa,abs_err,"
        "recovered_pct,chem_accurate,relative_accuracy,error"
    )
    lines = [manifest.header_line(), header]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r["name"],
                    _fmt(r["bond_length"]),
                    _fmt(r["n"]),
                    _fmt(r["e_exact"]),
                    _fmt(r["e_hf"]),
                    _fmt(r["e_cafqa"]),
                    _fmt(r["abs_err"]),
                    _fmt(r["recovered_pct"]),
                    _fmt(r["chem_accurate"]),
                    _fmt(r["relative_accuracy"]),
                    r["error"],
                ]
            )
        )
    _write_lines(csv_path, lines)
    if not args.no_plot:
        from .plotting import save_compare_figure

        save_compare_figure(png_path, rows, title=out.stem)
    for r in rows:
        print(
            f"{r['name']}: e_exact={_fmt(r['e_exact'])} e_hf={_fmt(r['e_hf'])}"
            f" e_cafqa={_fmt(r['e_cafqa'])} recovered={_fmt(r['recovered_pct'])}"
            + (f" error={r['error']}" if r["error"] else "")
        )
    if any_ok:
        return EXIT_OK
    return EXIT_RUNTIME if any_runtime_error else EXIT_INPUT


# ---------------- parser ----------------


def _add_common_search_flags(p):
    p.add_argument("--reps", type=int, default=1, help="entangling-layer repetitions")
    p.add_argument("--strategy", default=None)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--warmup", type=int, default=None)
    p.add_argument("--pool", type=int, default=500, help="surrogate candidate pool")
    p.add_argument("--trees", type=int, default=20, help="surrogate forest size")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="max non-Clifford slots")
    p.add_argument("--constraint-weight", type=float, default=None)
    p.add_argument("--stagnation", default=None, help="window:tol early stop")
    p.add_argument("--cap", type=int, default=DEFAULT_EXHAUSTIVE_CAP)
    p.add_argument("--threads", type=int, default=1,
                   help="evaluation parallelism (current build evaluates serially)")
    p.add_argument("--out", default=None)
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cliffinit",
        description="Search the Clifford space of a hardware-efficient ansatz "
        "for low-energy initializations of variational quantum algorithms.",
    )
    ap.add_argument("--version", action="version", version=f"cliffinit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("search", help="run a discrete search over one Hamiltonian")
    ps.add_argument("--ham", required=True, help="Hamiltonian JSON file")
    ps.add_argument("--active", default=None, help="comma list of tunable slots")
    _add_common_search_flags(ps)
    ps.set_defaults(func=cmd_search)

    pt = sub.add_parser("terms", help="per-term expectation breakdown")
    pt.add_argument("--ham", required=True)
    pt.add_argument("--assignment", default=None, help="assignment JSON file")
    pt.add_argument("--bitstring", default=None, help="basis state, e.g. 0110")
    pt.add_argument("--hf", action="store_true", help="add the HF witness column")
    pt.add_argument("--exact", action="store_true", help="add the exact ground column")
    pt.add_argument("--reps", type=int, default=1)
    pt.add_argument("--threads", type=int, default=1)
    pt.add_argument("--out", default=None)
    pt.add_argument("--no-plot", action="store_true")
    pt.set_defaults(func=cmd_terms)

    pc = sub.add_parser("compare", help="exact / HF / search comparison table")
    pc.add_argument("--ham", required=True, nargs="+")
    _add_common_search_flags(pc)
    pc.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "search" and args.strategy is None:
        args.strategy = "bo"
    if args.command == "compare" and args.strategy is None:
        args.strategy = "auto"
    if args.command in ("search", "compare"):
        if args.strategy not in ("bo", "random", "exhaustive", "auto"):
            print(f"error: unknown strategy {args.strategy!r}", file=sys.stderr)
            return EXIT_INPUT
        if args.command == "search" and args.strategy == "auto":
            print("error: strategy 'auto' is compare-only", file=sys.stderr)
            return EXIT_INPUT
        if args.threads < 1:
            print("error: --threads must be >= 1", file=sys.stderr)
            return EXIT_INPUT
        if args.k is not None and args.k < 0:
            print("error: --k must be >= 0", file=sys.stderr)
            return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

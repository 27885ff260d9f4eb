"""hamgen command line: emit qubit-Hamiltonian JSON files for molecules."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import HamgenError
from .generate import (
    DEFAULT_CONSTRAINT_WEIGHT,
    MoleculeSpec,
    generate,
    molecule_geometry,
)


def parse_lengths(spec: str):
    """'a:b:step' inclusive range, or a comma list of values."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad --lengths {spec!r}; expected start:stop:step")
        start, stop, step = (float(v) for v in parts)
        if step <= 0:
            raise ValueError("--lengths step must be positive")
        out = []
        r = start
        while r <= stop + 1e-9:
            out.append(round(r, 10))
            r += step
        return out
    return [float(v) for v in spec.split(",")]


def _parse_orbitals(spec: str | None):
    if not spec:
        return []
    return [int(v) for v in spec.split(",")]


def default_reduction(molecule: str, charge: int):
    """Preset frozen/removed orbitals matching the compact registers."""
    if molecule == "LiH":
        return [0], "pi"  # freeze the core; drop the symmetry-isolated pi pair
    return [], []


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="hamgen",
        description="Generate molecular qubit-Hamiltonian JSON files "
        "(STO-3G, parity mapping with two-qubit reduction).",
    )
    ap.add_argument("--molecule", required=True, help="H2, LiH, or H6")
    ap.add_argument("--lengths", required=True, help="start:stop:step or comma list")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--charge", type=int, default=0)
    ap.add_argument("--multiplicity", type=int, default=None)
    ap.add_argument("--mapping", default="parity", choices=["parity", "jordan_wigner"])
    ap.add_argument("--no-reduction", action="store_true")
    ap.add_argument("--freeze", default=None, help="comma list of orbitals to freeze")
    ap.add_argument("--remove", default=None, help="comma list of orbitals to drop")
    ap.add_argument(
        "--weight", type=float, default=DEFAULT_CONSTRAINT_WEIGHT,
        help="constraint penalty weight",
    )
    args = ap.parse_args(argv)

    try:
        lengths = parse_lengths(args.lengths)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    multiplicity = args.multiplicity
    if multiplicity is None:
        # odd-electron systems need a doublet default
        multiplicity = 2 if args.charge % 2 else 1

    if args.freeze is None and args.remove is None:
        frozen, removed = default_reduction(args.molecule, args.charge)
    else:
        frozen = _parse_orbitals(args.freeze)
        removed = _parse_orbitals(args.remove)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    written = 0
    for r in lengths:
        name = f"{args.molecule}_r{r:g}"
        try:
            spec = MoleculeSpec(
                geometry=molecule_geometry(args.molecule, r),
                charge=args.charge,
                multiplicity=multiplicity,
                frozen_orbitals=frozen,
                removed_orbitals=removed,
                mapping=args.mapping,
                two_qubit_reduction=not args.no_reduction,
                name=name,
                constraint_weight=args.weight,
            )
            path = out_dir / f"{name}.json"
            doc = generate(spec, path, extra_metadata={"bond_length": float(r)})
            print(f"wrote {path} ({doc['num_qubits']} qubits, {len(doc['terms'])} terms)")
            written += 1
        except HamgenError as e:
            print(f"error at {r:g} A: {e}", file=sys.stderr)
            failures += 1
    if written == 0:
        return 2
    if failures:
        print(f"{failures} length(s) failed", file=sys.stderr)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

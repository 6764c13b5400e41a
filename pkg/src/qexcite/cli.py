"""Command-line front end: synth, verify, stats, compare.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from fractions import Fraction

from .circuit import emit_qasm, resources
from .pauli import DEFAULT_MAX_QUBITS, ExcitationKind, ExcitationSpec, exact_unitary
from .simulator import equal_up_to_global_phase, unitary_of
from .synthesis import build

TOL_ENV = "QEXCITE_TOL"
KINDS = [k.value for k in ExcitationKind]


class ConfigError(ValueError):
    pass


def parse_theta(text: str) -> float:
    """Radians, or ``pi``, ``-pi``, ``pi/k``, ``a*pi/k``, ``a*pi``."""
    s = text.strip().replace(" ", "")
    try:
        return float(s)
    except ValueError:
        pass
    m = re.fullmatch(r"([+-]?)(?:([0-9.]+)\*)?pi(?:/([0-9.]+))?", s)
    if not m:
        raise ConfigError(f"cannot parse theta {text!r}")
    sign = -1.0 if m.group(1) == "-" else 1.0
    num = float(m.group(2)) if m.group(2) else 1.0
    den = float(m.group(3)) if m.group(3) else 1.0
    if den == 0:
        raise ConfigError("theta denominator is zero")
    return sign * num * math.pi / den


def parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"indices must be comma-separated integers, got {text!r}") from None


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return 1e-10
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"{TOL_ENV}={raw!r} is not a number") from None
    return tol


def spec_from_args(args) -> ExcitationSpec:
    try:
        return ExcitationSpec(ExcitationKind(args.kind), parse_indices(args.indices),
                              parse_theta(args.theta), args.n_qubits)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def formula(kind: ExcitationKind, n: int, method: str) -> tuple[int, int]:
    """Published (count, depth) for an excitation touching ``n`` qubits."""
    if kind.is_single:
        if method == "standard":
            return 4 * (n - 1), 4 * (n - 1)
        if n == 2:
            return 3, 3
        return 2 * n - 1, max(5, 2 * n - 3)
    if method == "standard":
        return 16 * (n - 1), 16 * (n - 1)
    if n == 4:
        return 13, 11
    return 2 * n + 5, max(13, 2 * n - 1)


def canonical_spec(kind: ExcitationKind, n: int) -> ExcitationSpec:
    """Smallest register spec touching ``n`` qubits: (0, n-1) or (0, 1, 2, n-1)."""
    if kind.is_single:
        if n < 2:
            raise ConfigError("single excitations touch at least 2 qubits")
        return ExcitationSpec(kind, (0, n - 1), 0.0)
    if n < 4:
        raise ConfigError("double excitations touch at least 4 qubits")
    return ExcitationSpec(kind, (0, 1, 2, n - 1), 0.0)


def _dump(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=False) + "\n"


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[a]) for row in cells)) for a, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    cfg.update(extra)
    return cfg


def cmd_synth(args) -> tuple[int, str]:
    spec = spec_from_args(args)
    circuit = build(spec, args.method)
    if args.format == "qasm":
        return 0, emit_qasm(circuit)
    if args.format != "json":
        raise ConfigError(f"synth supports qasm or json, not {args.format}")
    gates = [{"kind": g.kind.name, "angle": g.angle, "operands": list(g.operands)} for g in circuit.gates]
    doc = {
        "command": "synth",
        "config": _config(args, theta=spec.theta, n_qubits=spec.n_qubits),
        "results": {"n_qubits": circuit.n_qubits, "gates": gates, **resources(circuit).as_dict()},
    }
    return 0, _dump(doc)


def cmd_verify(args) -> tuple[int, str]:
    spec = spec_from_args(args)
    tol = default_tol() if args.tol is None else args.tol
    if not tol > 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    if spec.n_qubits > args.max_qubits:
        raise ConfigError(f"{spec.n_qubits} qubits exceeds the verification cap of {args.max_qubits}")
    circuit = build(spec, args.method)
    ok, dist = equal_up_to_global_phase(unitary_of(circuit, args.max_qubits),
                                        exact_unitary(spec, args.max_qubits), tol)
    rep = resources(circuit)
    doc = {
        "command": "verify",
        "config": _config(args, theta=spec.theta, n_qubits=spec.n_qubits, tol=tol),
        "results": {"distance": dist, "pass": ok, "cnot_count": rep.cnot_count, "cnot_depth": rep.cnot_depth},
    }
    return (0 if ok else 1), _dump(doc)


def _range(args) -> range:
    if args.n_max < args.n_min:
        raise ConfigError(f"empty range {args.n_min}..{args.n_max}")
    return range(args.n_min, args.n_max + 1)


def stats_rows(kind: ExcitationKind, ns) -> list[dict]:
    rows = []
    for n in ns:
        spec = canonical_spec(kind, n)
        opt = resources(build(spec, "optimized"))
        std = resources(build(spec, "standard"))
        fc, fd = formula(kind, n, "optimized")
        sc, sd = formula(kind, n, "standard")
        rows.append({
            "n": n,
            "optimized_count": opt.cnot_count, "optimized_depth": opt.cnot_depth,
            "standard_count": std.cnot_count, "standard_depth": std.cnot_depth,
            "formula_count": fc, "formula_depth": fd,
            "match": (opt.cnot_count, opt.cnot_depth, std.cnot_count, std.cnot_depth) == (fc, fd, sc, sd),
        })
    return rows


def compare_rows(kind: ExcitationKind, ns) -> list[dict]:
    rows = []
    for r in stats_rows(kind, ns):
        ratio = Fraction(r["standard_count"], r["optimized_count"])
        rows.append({"n": r["n"], "standard_count": r["standard_count"], "optimized_count": r["optimized_count"],
                     "ratio": float(ratio), "ratio_fraction": f"{ratio.numerator}/{ratio.denominator}"})
    return rows


def _fermionic(args) -> ExcitationKind:
    kind = ExcitationKind(args.kind)
    if not kind.is_fermionic:
        raise ConfigError("stats and compare take a fermionic kind (sf or df)")
    return kind


def _render(rows, fmt, command, cfg, extra=None) -> str:
    if fmt == "json":
        results = {"rows": rows, **(extra or {})} if extra else rows
        return _dump({"command": command, "config": cfg, "results": results})
    if fmt == "csv":
        return _csv(rows)
    if fmt == "table":
        text = _table(rows)
        if extra:
            text += "".join(f"{k}: {v}\n" for k, v in extra.items())
        return text
    raise ConfigError(f"{command} supports table, csv or json, not {fmt}")


def cmd_stats(args) -> tuple[int, str]:
    rows = stats_rows(_fermionic(args), _range(args))
    return 0, _render(rows, args.format, "stats", _config(args))


def cmd_compare(args) -> tuple[int, str]:
    kind = _fermionic(args)
    rows = compare_rows(kind, _range(args))
    extra = {"asymptotic_ratio": rows[-1]["ratio"], "limit": 2 if kind.is_single else 8}
    return 0, _render(rows, args.format, "compare", _config(args), extra)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qexcite", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def excitation(p, need_indices=True):
        p.add_argument("--kind", choices=KINDS, required=True)
        if need_indices:
            p.add_argument("--indices", required=True, help="ascending, comma separated, e.g. 0,1,2,3")
            p.add_argument("--theta", default="0", help="radians, or pi/k style")
            p.add_argument("--n-qubits", type=int, default=None, help="defaults to max index + 1")
            p.add_argument("--method", choices=["optimized", "standard"], default="optimized")
        p.add_argument("--out", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("synth", help="build a circuit and print QASM or JSON")
    excitation(p)
    p.add_argument("--format", choices=["qasm", "json"], default="qasm")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="compare a circuit with the exact unitary")
    excitation(p)
    p.add_argument("--tol", type=float, default=None, help=f"default 1e-10 or ${TOL_ENV}")
    p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (("stats", cmd_stats, "CNOT counts and depths against the formulas"),
                              ("compare", cmd_compare, "standard/optimized CNOT-count ratios")):
        p = sub.add_parser(name, help=help_)
        excitation(p, need_indices=False)
        p.add_argument("--n-min", type=int, required=True)
        p.add_argument("--n-max", type=int, required=True)
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"qexcite {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

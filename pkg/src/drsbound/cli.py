"""Command-line front end.

Subcommands: solve (classified roots of one spec), table (regenerate a
bundled table as CSV), audit (classify every published value of a table),
wavefunction (sample a normalized component), potential-grid (export the
potential surface on a tensor grid).

Parameter precedence, highest first: command-line flags, DRSBOUND_*
environment variables, `key = value` lines of a --config file, built-in
defaults (mass 5, c_s 5, c_ps -5, d_e 15, r_e 0.4, k 1, all fm powers).
Exit codes: 0 success, 1 no result, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .model import (
    Kratzer,
    Oscillator,
    PhysicalParams,
    ProblemSpec,
    Pseudospin,
    QuantumNumbers,
    RingParams,
    Spin,
)
from .spectrum import (
    DEFAULT_PARAMS,
    TABLE_KINDS,
    audit_table,
    find_roots,
    load_table_data,
)
from .wavefun import ComplexSectorError, NonNormalizableError, SpinorField

ENV_PREFIX = "DRSBOUND_"
CONFIG_KEYS = ("mass", "c_s", "c_ps", "d_e", "r_e", "k")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mass: float = DEFAULT_PARAMS["mass"]
    c_s: float = DEFAULT_PARAMS["c_s"]
    c_ps: float = DEFAULT_PARAMS["c_ps"]
    d_e: float = DEFAULT_PARAMS["d_e"]
    r_e: float = DEFAULT_PARAMS["r_e"]
    k: float = DEFAULT_PARAMS["k"]

    def as_params(self):
        return {k: getattr(self, k) for k in CONFIG_KEYS}


def fmt(x: float) -> str:
    """Fixed 10-significant-digit formatting for deterministic output."""
    return f"{x:.10g}"


def parse_config_file(path) -> dict:
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                key, _, val = line.partition("=")
                key = key.strip()
                if key not in CONFIG_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
                values[key] = float(val.strip())
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    return values


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, val in parse_config_file(args.config).items():
            setattr(cfg, key, val)
    for key in CONFIG_KEYS:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            try:
                setattr(cfg, key, float(env))
            except ValueError as exc:
                raise UsageError(f"bad value for {ENV_PREFIX + key.upper()}: {env!r}") from exc
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    return cfg


def build_spec(args, cfg: RunConfig) -> ProblemSpec:
    if args.n < 0 or args.nprime < 0:
        raise UsageError("quantum numbers n and nprime must be nonnegative")
    if args.a < 0 or args.b < 0:
        raise UsageError("ring strengths a and b must be nonnegative")
    symmetry = Spin(cfg.c_s) if args.symmetry == "spin" else Pseudospin(cfg.c_ps)
    if args.potential == "kratzer":
        potential = Kratzer(cfg.d_e, cfg.r_e)
    else:
        potential = Oscillator(cfg.k)
    return ProblemSpec(
        symmetry=symmetry,
        potential=potential,
        ring=RingParams(args.a, args.b),
        params=PhysicalParams(cfg.mass),
        qn=QuantumNumbers(n=args.n, n_prime=args.nprime, m=args.m),
    )


def _root_row(root):
    return {
        "energy_re": root.energy.real,
        "energy_im": root.energy.imag,
        "class": root.root_class.value,
        "residual": root.residual_norm,
        "branch": root.branch.label(),
    }


def cmd_solve(args) -> int:
    cfg = resolve_config(args)
    spec = build_spec(args, cfg)
    roots = find_roots(spec, mode=args.mode)
    if args.format == "json":
        print(json.dumps([_root_row(r) for r in roots], indent=2))
    else:
        print("energy_re,energy_im,class,residual,branch")
        for r in roots:
            row = _root_row(r)
            print(
                f"{fmt(row['energy_re'])},{fmt(row['energy_im'])},{row['class']},"
                f"{fmt(row['residual'])},{row['branch']}"
            )
    return 0 if roots else 1


def cmd_table(args) -> int:
    cfg = resolve_config(args)
    rows = load_table_data(args.table)
    sym_kind, pot_kind = TABLE_KINDS[args.table]
    lines = ["n,n_prime,m,a,b,symmetry,potential,energy_re,energy_im,class,residual,branch"]
    for n, n_prime, m, a, b, _values in rows:
        spec = ProblemSpec(
            symmetry=Spin(cfg.c_s) if sym_kind == "spin" else Pseudospin(cfg.c_ps),
            potential=Kratzer(cfg.d_e, cfg.r_e) if pot_kind == "kratzer" else Oscillator(cfg.k),
            ring=RingParams(a, b),
            params=PhysicalParams(cfg.mass),
            qn=QuantumNumbers(n=n, n_prime=n_prime, m=m),
        )
        for r in find_roots(spec, mode=args.mode):
            row = _root_row(r)
            lines.append(
                f"{n},{n_prime},{m},{fmt(a)},{fmt(b)},{sym_kind},{pot_kind},"
                f"{fmt(row['energy_re'])},{fmt(row['energy_im'])},{row['class']},"
                f"{fmt(row['residual'])},{row['branch']}"
            )
    text = "\n".join(lines) + "\n"
    try:
        with open(args.output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from exc
    print(f"wrote {len(lines) - 1} rows to {args.output}")
    return 0


def cmd_audit(args) -> int:
    cfg = resolve_config(args)
    published = None
    if args.data:
        try:
            published = load_table_data(args.table, path=args.data)
        except OSError as exc:
            raise UsageError(f"cannot read data file: {exc}") from exc
    try:
        report = audit_table(
            args.table, published=published, tolerance=args.tolerance, params=cfg.as_params()
        )
    except FileNotFoundError as exc:
        raise UsageError(f"missing bundled data: {exc}") from exc
    print(report.to_text())
    if args.output:
        try:
            with open(args.output, "w") as fh:
                json.dump(report.to_json(), fh, indent=2)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
        print(f"wrote JSON report to {args.output}")
    return 0


def cmd_wavefunction(args) -> int:
    cfg = resolve_config(args)
    spec = build_spec(args, cfg)
    roots = find_roots(spec, mode="strict")
    if not roots:
        print("no class-A root found for this spec", file=sys.stderr)
        return 1
    energy = roots[args.state].energy.real if args.state < len(roots) else roots[0].energy.real
    try:
        field = SpinorField.build(spec, energy)
    except (ComplexSectorError, NonNormalizableError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    r = np.linspace(args.r_max / args.r_samples, args.r_max, args.r_samples)
    theta = (np.arange(args.theta_samples) + 0.5) * math.pi / args.theta_samples
    phi = np.linspace(0.0, 2.0 * math.pi, args.phi_samples, endpoint=False)
    lines = [
        f"# symmetry={args.symmetry} potential={args.potential} "
        f"n={args.n} nprime={args.nprime} m={args.m} a={fmt(args.a)} b={fmt(args.b)}",
        f"# energy={fmt(energy)} normalization={fmt(field.normalization)}",
        "# r theta phi re im",
    ]
    for rv in r:
        for tv in theta:
            vals = field(rv, tv, phi)
            for pv, val in zip(phi, np.atleast_1d(vals)):
                lines.append(
                    f"{fmt(rv)} {fmt(tv)} {fmt(pv)} {fmt(val.real)} {fmt(val.imag)}"
                )
    try:
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from exc
    print(f"wrote {len(lines) - 3} samples to {args.output}")
    return 0


GRID_DEFAULTS = {
    "kratzer": {"a": 1.0, "b": 1.0, "d_e": 12.0, "r_e": 0.4},
    "oscillator": {"a": 1.0, "b": 1.0, "k": 1.0},
}


def cmd_potential_grid(args) -> int:
    defaults = GRID_DEFAULTS[args.potential]
    a = defaults["a"] if args.a is None else args.a
    b = defaults["b"] if args.b is None else args.b
    if args.potential == "kratzer":
        pot = Kratzer(
            defaults["d_e"] if args.d_e is None else args.d_e,
            defaults["r_e"] if args.r_e is None else args.r_e,
        )
    else:
        pot = Oscillator(defaults["k"] if args.k is None else args.k)
    ring = RingParams(a, b)
    if args.r_min <= 0:
        raise UsageError("r range must exclude 0")
    r = np.linspace(args.r_min, args.r_max, args.r_samples)
    if args.theta_min is None or args.theta_max is None:
        theta = (np.arange(args.theta_samples) + 0.5) * math.pi / args.theta_samples
    else:
        theta = np.linspace(args.theta_min, args.theta_max, args.theta_samples)
    for t in theta:
        if min(abs(math.sin(t)), abs(math.cos(t))) < 1e-12:
            raise UsageError(f"theta = {t} hits a singular ray of the angular term")
    lines = [f"# potential={args.potential} a={fmt(a)} b={fmt(b)}", "# r theta V"]
    for rv in r:
        for tv in theta:
            v = ring.angular(tv) / rv**2 + pot.radial(rv)
            lines.append(f"{fmt(rv)} {fmt(tv)} {fmt(v)}")
    try:
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from exc
    print(f"wrote {len(lines) - 2} grid points to {args.output}")
    return 0


def _add_param_flags(p):
    p.add_argument("--config", help="key = value parameter file")
    p.add_argument("--mass", type=float, help="particle mass (fm^-1)")
    p.add_argument("--cs", dest="c_s", type=float, help="spin symmetry constant C_s")
    p.add_argument("--cps", dest="c_ps", type=float, help="pseudospin constant C_ps")
    p.add_argument("--de", dest="d_e", type=float, help="Kratzer dissociation energy")
    p.add_argument("--re", dest="r_e", type=float, help="Kratzer equilibrium distance")
    p.add_argument("--k", type=float, help="oscillator elastic coefficient")


def _add_spec_flags(p):
    p.add_argument("--symmetry", required=True, choices=("spin", "pseudospin"))
    p.add_argument("--potential", required=True, choices=("kratzer", "oscillator"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)


def make_parser():
    parser = argparse.ArgumentParser(
        prog="drsbound",
        description="Bound states and table audits for double ring-shaped potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="classified roots of one spec")
    _add_spec_flags(p)
    _add_param_flags(p)
    p.add_argument("--mode", choices=("strict", "paper-compat"), default="strict")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="regenerate one bundled table as CSV")
    p.add_argument("table", type=int, choices=sorted(TABLE_KINDS))
    p.add_argument("--output", required=True)
    p.add_argument("--mode", choices=("strict", "paper-compat"), default="paper-compat")
    _add_param_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("audit", help="classify every published value of a table")
    p.add_argument("table", type=int, choices=sorted(TABLE_KINDS))
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--data", help="columnar table file overriding the bundled one")
    p.add_argument("--output", help="write the JSON report here")
    _add_param_flags(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("wavefunction", help="sample a normalized component")
    _add_spec_flags(p)
    _add_param_flags(p)
    p.add_argument("--state", type=int, default=0, help="index into the class-A roots")
    p.add_argument("--r-max", dest="r_max", type=float, default=6.0)
    p.add_argument("--r-samples", dest="r_samples", type=int, default=40)
    p.add_argument("--theta-samples", dest="theta_samples", type=int, default=20)
    p.add_argument("--phi-samples", dest="phi_samples", type=int, default=8)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("potential-grid", help="export V(r, theta) on a tensor grid")
    p.add_argument("--potential", required=True, choices=("kratzer", "oscillator"))
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--de", dest="d_e", type=float, default=None)
    p.add_argument("--re", dest="r_e", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--r-min", dest="r_min", type=float, default=0.1)
    p.add_argument("--r-max", dest="r_max", type=float, default=4.0)
    p.add_argument("--r-samples", dest="r_samples", type=int, default=40)
    p.add_argument("--theta-min", dest="theta_min", type=float, default=None)
    p.add_argument("--theta-max", dest="theta_max", type=float, default=None)
    p.add_argument("--theta-samples", dest="theta_samples", type=int, default=40)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_potential_grid)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

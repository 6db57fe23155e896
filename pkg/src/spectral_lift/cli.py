"""Command-line front end: build examples, lift, verify, sweep.

Exit codes: 0 all checks pass, 1 a verification or lift failure, 2 usage or
I/O errors.  Flags can be preloaded from a ``key = value`` config file;
explicit flags win.
"""

from __future__ import annotations

import dataclasses
import sys
from pathlib import Path

import click
import numpy as np

from . import interchange
from .errors import SchemaError, SpectralLiftError
from .fredholm import build_circle_module, build_torus_module, validate_axioms
from .lift import LiftConfig, build_triple
from .verify import BASE_SEED, commutator_norm_sweep, verify_triple

EXAMPLES = {
    "circle": build_circle_module,
    "torus2": lambda n: build_torus_module(2, n),
}

_CONFIG_CASTS = {
    "p": float,
    "mode": str,
    "ball_radius": int,
    "scale_margin": float,
    "kernel_tol": float,
    "epsilon_guard": float,
    "seed": int,
    "size": int,
}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _merge_config(ctx: click.Context, config_path, values: dict) -> dict:
    """Fill in values from a key = value file; explicit flags keep priority."""
    if not config_path:
        return values
    try:
        text = Path(config_path).read_text()
    except OSError as exc:
        _fail(2, f"cannot read config file: {exc}")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            _fail(2, f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in values:
            _fail(2, f"config line {lineno}: unknown key {key!r}")
        source = ctx.get_parameter_source(key)
        if source is not None and source.name != "DEFAULT":
            continue  # flag given explicitly
        try:
            values[key] = _CONFIG_CASTS.get(key, str)(raw)
        except ValueError:
            _fail(2, f"config line {lineno}: cannot parse value for {key!r}")
    return values


def _lift_config(values: dict) -> LiftConfig:
    try:
        return LiftConfig(
            p=values["p"],
            mode=values["mode"],
            ball_radius=values["ball_radius"],
            scale_margin=values["scale_margin"],
            epsilon_guard=values["epsilon_guard"],
            kernel_tol=values["kernel_tol"],
        )
    except ValueError as exc:
        _fail(2, str(exc))


def lift_options(fn):
    for opt in reversed(
        [
            click.option("--p", type=float, default=None, help="Summability order; fitted when omitted."),
            click.option("--mode", type=click.Choice(["schatten", "weak"]), default="schatten", show_default=True),
            click.option("--ball-radius", type=int, default=None, help="Averaging ball radius; module default when omitted."),
            click.option("--scale-margin", type=float, default=0.1, show_default=True),
            click.option("--epsilon-guard", type=float, default=0.9, show_default=True),
            click.option("--kernel-tol", type=float, default=0.0, show_default=True),
            click.option("--config", "config_path", type=click.Path(), default=None, help="key = value file with flag defaults."),
        ]
    ):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Numerical lifting of Fredholm modules to spectral triples."""


@main.command()
@click.option("--example", type=click.Choice(sorted(EXAMPLES)), required=True)
@click.option("--size", type=int, required=True, help="Mode cutoff N of the truncation.")
@click.option("--out", type=click.Path(), required=True)
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.pass_context
def build(ctx, example, size, out, config_path):
    """Construct a canonical example module and write its interchange file."""
    values = _merge_config(ctx, config_path, {"size": size})
    size = values["size"]
    if size < 2:
        _fail(2, "size must be >= 2")
    module = EXAMPLES[example](size)
    try:
        interchange.save_module(module, out)
    except OSError as exc:
        _fail(2, f"cannot write {out}: {exc}")
    click.echo(f"wrote {out} (dim {module.dim})")
    for name, residual in validate_axioms(module).items():
        if name != "max":
            click.echo(f"axiom {name}: residual {residual:.3e}")


@main.command()
@click.argument("module_path", type=click.Path())
@click.option("--out", type=click.Path(), required=True)
@lift_options
@click.pass_context
def lift(ctx, module_path, out, config_path, **cfg_values):
    """Lift a module file to a spectral triple file."""
    values = _merge_config(ctx, config_path, dict(cfg_values))
    cfg = _lift_config(values)
    try:
        module = interchange.load_module(module_path)
    except (OSError, SchemaError) as exc:
        _fail(2, f"cannot load module: {exc}")
    except SpectralLiftError as exc:
        _fail(1, f"module rejected: {exc}")
    try:
        triple = build_triple(module, cfg)
    except SpectralLiftError as exc:
        _fail(1, f"lift failed: {exc}")
    try:
        interchange.save_triple(triple, out)
    except OSError as exc:
        _fail(2, f"cannot write {out}: {exc}")
    prov = triple.provenance
    click.echo(f"wrote {out}")
    click.echo(f"sigma = {prov['sigma']:.17g}")
    click.echo(f"ball_radius = {prov['ball_radius']}")
    click.echo(f"tail_bound = {prov['tail_bound']:.17g}")
    click.echo(f"kernel_dim = {prov['kernel_dim']}")


def _report_to_jsonable(report) -> dict:
    def convert(obj):
        if dataclasses.is_dataclass(obj):
            return {k: convert(v) for k, v in dataclasses.asdict(obj).items()}
        if isinstance(obj, dict):
            return {k: convert(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [convert(v) for v in obj]
        if isinstance(obj, (np.floating, float)):
            return float(obj)
        if isinstance(obj, (np.integer, int)):
            return int(obj)
        if isinstance(obj, (np.bool_, bool)):
            return bool(obj)
        return obj

    return convert(report)


@main.command()
@click.argument("triple_path", type=click.Path())
@click.argument("module_path", type=click.Path())
@click.option("--out", type=click.Path(), required=True, help="CSV report path; JSON goes beside it.")
@click.option("--report", type=click.Choice(["csv", "json", "both"]), default="both", show_default=True)
@click.option("--seed", type=int, default=BASE_SEED, envvar="SPECTRAL_LIFT_SEED", show_default=True)
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.pass_context
def verify(ctx, triple_path, module_path, out, report, seed, config_path):
    """Certify a lifted triple against its module; exit 1 on any hard failure."""
    values = _merge_config(ctx, config_path, {"seed": seed})
    seed = values["seed"]
    try:
        triple = interchange.load_triple(triple_path)
        module = interchange.load_module(module_path)
    except (OSError, SchemaError) as exc:
        _fail(2, f"cannot load inputs: {exc}")
    except SpectralLiftError as exc:
        _fail(1, f"module rejected: {exc}")
    if triple.D.shape[0] != module.dim:
        _fail(2, f"dimension mismatch: triple {triple.D.shape[0]}, module {module.dim}")
    try:
        result = verify_triple(triple, module, seed=seed)
    except SpectralLiftError as exc:
        _fail(1, f"verification aborted: {exc}")
    rows = [
        {"name": name, "value": value, "threshold": threshold, "pass": ok}
        for name, value, threshold, ok in result.rows()
    ]
    out = Path(out)
    try:
        if report in ("csv", "both"):
            interchange.write_csv(rows, out, ["name", "value", "threshold", "pass"])
        if report in ("json", "both"):
            interchange.write_json(_report_to_jsonable(result), out.with_suffix(".json"))
    except OSError as exc:
        _fail(2, f"cannot write report: {exc}")
    failed = [r for r in rows if not r["pass"]]
    for row in rows:
        status = "pass" if row["pass"] else "FAIL"
        click.echo(f"{status} {row['name']} = {row['value']:.6g}")
    if failed:
        click.echo(f"{len(failed)} check(s) failed", err=True)
        sys.exit(1)
    click.echo("all checks passed")


@main.command()
@click.option("--example", type=click.Choice(sorted(EXAMPLES)), required=True)
@click.option("--sizes", required=True, help="Comma-separated truncation sizes, at least two.")
@click.option("--out", type=click.Path(), required=True)
@lift_options
@click.pass_context
def sweep(ctx, example, sizes, out, config_path, **cfg_values):
    """Lift at several sizes and tabulate boundedness/decay indicators."""
    values = _merge_config(ctx, config_path, dict(cfg_values))
    cfg = _lift_config(values)
    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip()]
    except ValueError:
        _fail(2, f"cannot parse sizes {sizes!r}")
    if len(size_list) < 2:
        _fail(2, "need at least two sizes")
    builder = EXAMPLES[example]
    try:
        rows = commutator_norm_sweep(builder, size_list, cfg, collect_decay=True)
    except SpectralLiftError as exc:
        _fail(1, f"sweep failed: {exc}")
    out = Path(out)
    decay_paths = []
    for row in rows:
        mu_theta, mu_g = row.pop("_decay")
        decay_path = out.with_name(f"{out.stem}_decay_N{row['size']}.csv")
        decay_rows = [
            {"m": m, "mu_theta": float(t), "mu_G": float(g)}
            for m, (t, g) in enumerate(zip(mu_theta, mu_g))
        ]
        interchange.write_csv(decay_rows, decay_path, ["m", "mu_theta", "mu_G"])
        decay_paths.append(decay_path)
    columns = list(rows[0].keys())
    try:
        interchange.write_csv(rows, out, columns)
    except OSError as exc:
        _fail(2, f"cannot write {out}: {exc}")
    click.echo(f"wrote {out} and {len(decay_paths)} decay files")
    for row in rows:
        click.echo(
            f"size {row['size']}: dim {row['dim']}, lambda {row['lambda']:.4g}, "
            f"runtime {row['runtime_s']:.2f}s"
        )


if __name__ == "__main__":
    main()

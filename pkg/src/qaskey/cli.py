"""Command-line front end: ``qaskey eval | verify | gram | tabulate``.

Exit codes are a stable contract: 0 success, 1 tolerance failure, 2 invalid
configuration, 3 numerical failure.

A run is described by a YAML (or JSON) config file whose keys mirror
:class:`RunConfig`; command-line flags override file values::

    family: mv-aw
    q: 0.5
    params: {a: 0.3, b: 0.2, c: -0.4, d: 0.1}
    chain: [0.5]
    max_total_degree: 3
    nodes_per_dim: 128
    tolerances: {diag_rel: 1.0e-6, offdiag: 1.0e-7}
    output_path: report.json
    special: {kind: qhermite}
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import click
import numpy as np
import yaml

from .askey_wilson import specialize
from .errors import BudgetExceeded, DomainError, InvalidParams, NumericalError, QAskeyError
from .multivar import Family, FamilySpec, mv_norm, mv_poly, mv_weight
from .qcore import ParameterChain
from .quadrature import QuadratureGrid, default_nodes, gram, multi_indices

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_PARAMS = {"a": 0.3, "b": 0.2, "c": -0.4, "d": 0.1}
DEFAULT_CHAIN = (0.5, 0.3)
DEFAULT_TOLERANCES = {1: (1e-8, 1e-8), 2: (1e-6, 1e-7), 3: (1e-5, 1e-6)}
FALLBACK_TOLERANCES = (1e-4, 1e-5)
CLI_SPECIALIZATIONS = ("qjacobi", "qjacobi-alt", "qultraspherical", "qhermite")
CORRUPT_NORM_FACTOR = 1 + 1e-3

_PARAM_USES = {Family.AW: "abcd", Family.AW_TILDE: "abcd", Family.DUAL_QHAHN: "abc",
               Family.ASC: "bc"}


class ConfigError(QAskeyError):
    pass


@dataclass
class RunConfig:
    family: str = Family.AW.value
    q: float = 0.5
    params: dict = field(default_factory=dict)
    chain: Optional[List[float]] = None
    s: Optional[int] = None
    max_total_degree: int = 2
    nodes_per_dim: Optional[int] = None
    tolerances: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    special: Optional[dict] = None

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    def resolve(self, n_len: Optional[int] = None, theta_len: Optional[int] = None) -> "RunConfig":
        """Fill defaults that depend on the dimension and check consistency."""
        try:
            family = Family(self.family)
        except ValueError:
            raise ConfigError(f"unknown family {self.family!r}; expected one of "
                              f"{', '.join(f.value for f in Family)}") from None
        s = self.s
        if self.chain is not None:
            if s is not None and s != len(self.chain) + 1:
                raise ConfigError(f"s={s} does not match a chain of length {len(self.chain)}")
            s = len(self.chain) + 1
        for what, length in (("--n", n_len), ("--theta", theta_len)):
            if length is not None:
                if s is not None and length != s:
                    raise ConfigError(f"{what} has {length} entries, expected s={s}")
                s = length
        s = 1 if s is None else int(s)
        chain = self.chain
        if chain is None:
            if s - 1 > len(DEFAULT_CHAIN):
                raise ConfigError(f"no default chain for s={s}; pass --chain")
            chain = list(DEFAULT_CHAIN[:s - 1])
        used = _PARAM_USES[family]
        extra = set(self.params) - set(used)
        if extra:
            raise ConfigError(f"{family.value} does not take parameter(s) {', '.join(sorted(extra))}")
        params = {k: float(self.params.get(k, DEFAULT_PARAMS[k])) for k in used}
        if self.special:
            if family not in (Family.AW, Family.AW_TILDE):
                raise ConfigError("specializations apply to mv-aw and mv-aw-tilde only")
            kind = self.special.get("kind")
            if kind not in CLI_SPECIALIZATIONS:
                raise ConfigError(f"unknown specialization {kind!r}; expected one of "
                                  f"{', '.join(CLI_SPECIALIZATIONS)}")
            opts = {k: v for k, v in self.special.items() if k != "kind"}
            sp = specialize(kind, float(self.q), **opts)
            params = dict(zip("abcd", (float(v) for v in sp.params.abcd)))
        diag, off = DEFAULT_TOLERANCES.get(s, FALLBACK_TOLERANCES)
        tolerances = {"diag_rel": float(self.tolerances.get("diag_rel", diag)),
                      "offdiag": float(self.tolerances.get("offdiag", off))}
        nodes = int(self.nodes_per_dim) if self.nodes_per_dim is not None else default_nodes(s)
        return RunConfig(family.value, float(self.q), params, [float(v) for v in chain], s,
                         int(self.max_total_degree), nodes, tolerances, self.output_path,
                         self.special)

    def family_spec(self) -> FamilySpec:
        chain = ParameterChain(self.q, chain=tuple(self.chain), **self.params)
        return FamilySpec(Family(self.family), chain)


def _floats(text: Optional[str], what: str) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{what} must be a comma-separated list of numbers, got {text!r}") from None


def _ints(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--n must be a comma-separated list of integers, got {text!r}") from None


def _points(text: Optional[str]) -> Optional[List[List[float]]]:
    if text is None:
        return None
    return [_floats(p, "--theta") for p in text.split(";") if p.strip()]


def build_config(opts: dict, n_len=None, theta_len=None) -> RunConfig:
    data = {}
    if opts.get("config"):
        with open(opts["config"]) as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"{opts['config']}: expected a mapping at top level")
        data.update(loaded)
    cfg = RunConfig.from_mapping(data)
    if opts.get("family"):
        cfg.family = opts["family"]
    if opts.get("q") is not None:
        cfg.q = opts["q"]
    params = dict(cfg.params or {})
    for k in "abcd":
        if opts.get(k) is not None:
            params[k] = opts[k]
    cfg.params = params
    chain = _floats(opts.get("chain"), "--chain")
    if chain is not None:
        cfg.chain = chain
    if opts.get("max_degree") is not None:
        cfg.max_total_degree = opts["max_degree"]
    if opts.get("nodes") is not None:
        cfg.nodes_per_dim = opts["nodes"]
    tol = dict(cfg.tolerances or {})
    if opts.get("tol_diag") is not None:
        tol["diag_rel"] = opts["tol_diag"]
    if opts.get("tol_offdiag") is not None:
        tol["offdiag"] = opts["tol_offdiag"]
    cfg.tolerances = tol
    if opts.get("out"):
        cfg.output_path = opts["out"]
    if opts.get("special"):
        special = {"kind": opts["special"]}
        for k in ("alpha", "beta", "lam"):
            if opts.get(k) is not None:
                special[k] = opts[k]
        cfg.special = special
    return cfg.resolve(n_len, theta_len)


def fmt(value: float) -> str:
    """Number formatting used for every printed value (15 significant digits)."""
    return f"{float(value):.15g}"


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _run(fn):
    """Map library exceptions onto the exit-code contract."""
    try:
        return fn()
    except (ConfigError, InvalidParams, DomainError, OSError, yaml.YAMLError, TypeError) as exc:
        _fail(EXIT_CONFIG, str(exc))
    except (NumericalError, BudgetExceeded, QAskeyError) as exc:
        _fail(EXIT_NUMERIC, str(exc))


def common_options(f):
    options = [
        click.option("--family", type=click.Choice([fam.value for fam in Family]), default=None,
                     help="Polynomial system."),
        click.option("--config", "config", type=click.Path(), default=None,
                     help="YAML/JSON run configuration."),
        click.option("--q", type=float, default=None, help="Base 0 < q < 1."),
        click.option("--a", type=float, default=None),
        click.option("--b", type=float, default=None),
        click.option("--c", type=float, default=None),
        click.option("--d", type=float, default=None),
        click.option("--chain", default=None, help="Chain parameters a2,a3,..."),
        click.option("--special", type=click.Choice(CLI_SPECIALIZATIONS), default=None,
                     help="Replace a, b, c, d by a special-family substitution."),
        click.option("--alpha", type=float, default=None),
        click.option("--beta", type=float, default=None),
        click.option("--lam", type=float, default=None),
        click.option("--out", default=None, help="Output path (default: stdout)."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def gram_options(f):
    options = [
        click.option("--max-degree", type=int, default=None, help="Maximum total degree."),
        click.option("--nodes", type=int, default=None, help="Quadrature nodes per dimension."),
        click.option("--tol-diag", type=float, default=None),
        click.option("--tol-offdiag", type=float, default=None),
        click.option("--format", "fmt_", type=click.Choice(["json", "csv"]), default="json"),
        click.option("--corrupt-norm", is_flag=True, hidden=True),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
def cli():
    """Evaluate multivariable Askey-Wilson polynomials and verify their orthogonality."""


@cli.command("eval")
@common_options
@click.option("--n", "n_text", required=True, help="Degree vector n1,n2,...")
@click.option("--theta", "theta_text", required=True, help="Angles t1,t2,... in (0, pi).")
@click.option("--weight", is_flag=True, help="Also print the weight at the point.")
def eval_cmd(n_text, theta_text, weight, **opts):
    """Print the polynomial value (and optionally the weight) at one point."""

    def run():
        n = _ints(n_text)
        theta = _floats(theta_text, "--theta")
        cfg = build_config(opts, len(n), len(theta))
        spec = cfg.family_spec()
        lines = [fmt(mv_poly(spec, n, theta))]
        if weight:
            lines.append(fmt(mv_weight(spec, theta)))
        _emit("\n".join(lines) + "\n", cfg.output_path)

    _run(run)


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _gram_run(opts, gated: bool):
    fmt_ = opts.pop("fmt_")
    corrupt = opts.pop("corrupt_norm")
    cfg = build_config(opts)
    spec = cfg.family_spec()
    grid = QuadratureGrid(cfg.nodes_per_dim, cfg.s)
    norm = mv_norm
    if corrupt:
        def norm(sp, n):
            return mv_norm(sp, n) * CORRUPT_NORM_FACTOR
    report = gram(spec, cfg.max_total_degree, grid, norm=norm)
    tol = cfg.tolerances
    passed = report.passed(tol["diag_rel"], tol["offdiag"])
    doc = report.to_dict()
    doc["config"] = asdict(cfg)
    doc["tolerances"] = tol
    doc["passed"] = passed
    if fmt_ == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "s", "n", "m", "value", "norm"])
        idx = {tuple(n): i for i, n in enumerate(report.indices)}
        for e in doc["entries"]:
            norm_v = report.norms[idx[tuple(e["n"])]] if e["n"] == e["m"] else ""
            writer.writerow([cfg.family, cfg.s, ";".join(map(str, e["n"])),
                             ";".join(map(str, e["m"])), fmt(e["value"]),
                             fmt(norm_v) if norm_v != "" else ""])
        text = buf.getvalue()
    _emit(text, cfg.output_path)
    status = "PASS" if passed else "FAIL"
    summary = (f"{cfg.family} s={cfg.s} D={cfg.max_total_degree} M={cfg.nodes_per_dim}: "
               f"max_diag_rel_err={report.max_diag_rel_err:.3e} (tol {tol['diag_rel']:.1e}) "
               f"offdiag_max={report.offdiag_max:.3e} (tol {tol['offdiag']:.1e})")
    click.echo(f"{status if gated else 'DONE'} {summary}", err=cfg.output_path is None)
    return EXIT_OK if passed or not gated else EXIT_TOLERANCE


@cli.command("verify")
@common_options
@gram_options
def verify_cmd(**opts):
    """Compute the Gram matrix and exit 1 unless it matches the closed-form norms."""
    sys.exit(_run(lambda: _gram_run(opts, gated=True)))


@cli.command("gram")
@common_options
@gram_options
def gram_cmd(**opts):
    """Compute and write the Gram report without pass/fail gating."""
    sys.exit(_run(lambda: _gram_run(opts, gated=False)))


@cli.command("tabulate")
@common_options
@click.option("--n", "n_text", default=None, help="Single degree vector (default: all up to --max-degree).")
@click.option("--max-degree", type=int, default=None)
@click.option("--theta", "theta_text", default=None,
              help="Points as 't1,t2;t1,t2;...' (default: midpoint grid).")
@click.option("--grid", "grid_size", type=int, default=4, show_default=True,
              help="Midpoint nodes per dimension when --theta is absent.")
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv")
def tabulate_cmd(n_text, max_degree, theta_text, grid_size, fmt_, **opts):
    """Tabulate polynomial values over a set of points."""

    def run():
        n = _ints(n_text)
        points = _points(theta_text)
        opts["max_degree"] = max_degree
        cfg = build_config(opts, len(n) if n else None, len(points[0]) if points else None)
        spec = cfg.family_spec()
        indices = [tuple(n)] if n else multi_indices(cfg.s, cfg.max_total_degree)
        if points is None:
            nodes = (np.arange(grid_size) + 0.5) * (np.pi / grid_size)
            points = [list(map(float, p)) for p in np.array(np.meshgrid(
                *([nodes] * cfg.s), indexing="ij")).reshape(cfg.s, -1).T]
        rows = []
        for idx in indices:
            for pt in points:
                if len(pt) != cfg.s:
                    raise ConfigError(f"point {pt} has {len(pt)} angles, expected s={cfg.s}")
                rows.append({"family": cfg.family, "s": cfg.s,
                             "n": ";".join(map(str, idx)),
                             "theta": ";".join(repr(float(t)) for t in pt),
                             "value": fmt(mv_poly(spec, idx, pt))})
        if fmt_ == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, ["family", "s", "n", "theta", "value"], lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            text = buf.getvalue()
        else:
            text = json.dumps(rows, indent=2) + "\n"
        _emit(text, cfg.output_path)

    _run(run)


def main(argv=None):
    cli.main(args=argv, prog_name="qaskey")


if __name__ == "__main__":
    main()

"""Config-driven experiments: validation, execution, CSV results and manifests.

A config is a flat JSON object.  Every run is a pure function of its config:
spectra are indexed by ``(seed, sample_index)`` and aggregated in index
order, so results do not depend on the number of worker threads.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import SpectralWindow, f2_limit, r_pm_limit, r_pp_limit, sine_kernel_r2
from .ensemble import BETA_MAX, EnsembleParams, empirical_density
from .observables import MCEstimate, estimate_f2, estimate_r_pm, estimate_r_pp, sample_spectra
from .transfer import (
    delta_s_coefficients,
    first_type_eigenvalue,
    hermite_discretize,
    landscape_check,
    rep_eigenvalue_u,
    sigma_model_closed_forms,
    sigma_model_integrals,
)

__all__ = [
    "EXPERIMENTS",
    "RunConfig",
    "RunManifest",
    "Observable",
    "Check",
    "validate_config",
    "load_config",
    "config_to_text",
    "run",
    "crossover_sweep",
    "factor_pairs",
    "format_number",
    "OUT_ENV",
]

EXPERIMENTS = (
    "density",
    "f2-vs-sine",
    "r-pm",
    "r-pp",
    "crossover-sweep",
    "transfer-suite",
    "landscape",
    "rep-eigen",
    "sigma-integrals",
    "delta-bound",
)

ACCEPT_Z = 3.0
DEVIATE_Z = 5.0
OUT_ENV = "BANDLAB_OUT"


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on.  Unused fields are ignored by an experiment."""

    experiment: str
    n: int = 2
    W: int = 128
    beta: float = 0.1
    seed: int = 1
    E: float = 0.0
    eps: float = 1.0
    xi: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    samples: int = 1000
    bins: int = 100
    deltas: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5)
    N: int = 512
    ratios: tuple[float, ...] = ()
    K: int = 16
    grid: int = 200
    energies: tuple[float, ...] = (0.5, 1.0, 1.5, math.sqrt(2.0))
    tW: float = 1e4
    lmax: int = 4
    points: int = 20
    mmax: int = 12
    max_cdf_distance: float = 0.03
    output: str = "runs"
    plots: bool = False

    def ensemble(self, n: int | None = None, W: int | None = None) -> EnsembleParams:
        return EnsembleParams(n=self.n if n is None else n, W=self.W if W is None else W, beta=self.beta, seed=self.seed)

    def window(self, xi=None) -> SpectralWindow:
        return SpectralWindow(self.E, self.eps, tuple(self.xi if xi is None else xi))

    def to_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_FIELDS = ("n", "W", "seed", "samples", "bins", "N", "K", "grid", "lmax", "points", "mmax")
_FLOAT_FIELDS = ("beta", "E", "eps", "tW", "max_cdf_distance")
_LIST_FIELDS = ("xi", "deltas", "ratios", "energies")


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v) -> bool:
    return (isinstance(v, (int, float)) and not isinstance(v, bool)) and math.isfinite(v)


def validate_config(text: str) -> tuple[RunConfig | None, list[str]]:
    """Parse a JSON config and collect every violation.

    Returns ``(config, [])`` on success and ``(None, errors)`` otherwise;
    never raises on bad input.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        return None, [f"config is not valid JSON: {exc.msg} (line {exc.lineno})"]
    if not isinstance(raw, dict):
        return None, ["config must be a JSON object"]

    errors = []
    for key in raw:
        if key not in _FIELDS:
            errors.append(f"unknown field {key!r}")
    exp = raw.get("experiment")
    if exp is None:
        errors.append("experiment is required")
    elif exp not in EXPERIMENTS:
        errors.append(f"experiment must be one of {', '.join(EXPERIMENTS)}")

    values = {}
    for key, v in raw.items():
        if key not in _FIELDS or key == "experiment":
            continue
        if key in _INT_FIELDS:
            if not _is_int(v):
                errors.append(f"{key} must be an integer")
                continue
        elif key in _FLOAT_FIELDS:
            if not _is_num(v):
                errors.append(f"{key} must be a finite number")
                continue
            v = float(v)
        elif key in _LIST_FIELDS:
            if not isinstance(v, list) or not all(_is_num(x) for x in v):
                errors.append(f"{key} must be a list of numbers")
                continue
            v = tuple(float(x) for x in v)
        elif key == "output":
            if not isinstance(v, str) or not v:
                errors.append("output must be a nonempty string")
                continue
        elif key == "plots":
            if not isinstance(v, bool):
                errors.append("plots must be true or false")
                continue
        values[key] = v

    get = lambda k: values.get(k, _FIELDS[k].default)  # noqa: E731
    for key in ("n", "W", "samples", "bins", "N", "K", "grid", "points"):
        if key in values and get(key) < 1:
            errors.append(f"{key} must be positive")
    if "lmax" in values and get("lmax") < 0:
        errors.append("lmax must be nonnegative")
    if "samples" in values and get("samples") < 2:
        errors.append("samples must be at least 2")
    if "seed" in values and not 0 <= get("seed") < 2**64:
        errors.append("seed must be an integer in [0, 2**64)")
    if "beta" in values and not 0.0 <= get("beta") < BETA_MAX:
        errors.append("beta must lie in [0, 0.25)")
    if "E" in values and not abs(get("E")) < 2.0:
        errors.append("E must satisfy |E|<2")
    if "eps" in values and not get("eps") > 0.0:
        errors.append("eps must be > 0")
    if "xi" in values and len(get("xi")) != 4:
        errors.append("xi must have four components")
    if "tW" in values and not get("tW") > 0:
        errors.append("tW must be > 0")
    if "K" in values and get("K") > 40:
        errors.append("K must be at most 40")
    if "lmax" in values and get("lmax") > 64:
        errors.append("lmax must be at most 64")
    if "mmax" in values and not 0 <= get("mmax") <= 12:
        errors.append("mmax must lie in [0, 12]")
    if "energies" in values and not all(0.0 < abs(e) < 2.0 for e in get("energies")):
        errors.append("energies must satisfy 0<|E|<2")
    if "ratios" in values and not all(r > 0 for r in get("ratios")):
        errors.append("ratios must be positive")
    if "max_cdf_distance" in values and not get("max_cdf_distance") > 0:
        errors.append("max_cdf_distance must be > 0")
    if exp in ("transfer-suite", "landscape") and get("beta") == 0.0:
        errors.append(f"beta must be > 0 for {exp}")
    if exp == "crossover-sweep" and not errors:
        try:
            _sweep_pairs(get("N"), get("ratios"))
        except ValueError as exc:
            errors.append(str(exc))

    if errors:
        return None, errors
    return RunConfig(experiment=exp, **values), []


def load_config(path) -> RunConfig:
    """Read and validate a config file; raises ``ValueError`` listing all problems."""
    cfg, errors = validate_config(Path(path).read_text())
    if errors:
        raise ValueError("; ".join(errors))
    return cfg


def config_to_text(cfg: RunConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class Observable:
    """One estimate with its prediction; ``zscore = |estimate - prediction| / stderr``."""

    name: str
    estimate: complex
    stderr: float
    prediction: complex
    nsamples: int

    @property
    def zscore(self) -> float:
        return MCEstimate(self.estimate, self.stderr, self.nsamples).zscore(self.prediction)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "estimate": [self.estimate.real, self.estimate.imag],
            "stderr": self.stderr,
            "prediction": [self.prediction.real, self.prediction.imag],
            "zscore": self.zscore,
            "nsamples": self.nsamples,
        }


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    relation: str  # "<=" or ">"

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return bool(self.value <= self.threshold)
        return bool(self.value > self.threshold)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value if isinstance(self.value, int) else float(self.value),
            "relation": self.relation,
            "threshold": self.threshold,
            "passed": self.passed,
        }


@dataclass
class RunManifest:
    config: RunConfig
    started: str
    finished: str = ""
    observables: list[Observable] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    files: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "artifact": "bandlab",
            "version": __version__,
            "experiment": self.config.experiment,
            "config": self.config.to_dict(),
            "started": self.started,
            "finished": self.finished,
            "thresholds": {"accept_z": ACCEPT_Z, "deviate_z": DEVIATE_Z},
            "observables": [o.to_dict() for o in self.observables],
            "checks": [c.to_dict() for c in self.checks],
            "verdict": "PASS" if self.passed else "FAIL",
            "files": list(self.files),
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def format_number(x) -> str:
    """17 significant digits, ``.`` decimal separator."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_number(x) for x in r])
    return buf.getvalue()


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S%z")


# ---------------------------------------------------------------- experiments


def factor_pairs(N: int, min_block: int = 4) -> list[tuple[int, int]]:
    """All ``(n, W)`` with ``n * W = N``, ``n >= 2`` and ``W >= min_block``, by decreasing ``W/n``."""
    pairs = [(n, N // n) for n in range(2, N + 1) if N % n == 0 and N // n >= min_block]
    return sorted(pairs, key=lambda p: -p[1] / p[0])


def _sweep_pairs(N: int, ratios) -> list[tuple[int, int]]:
    if not ratios:
        # N = 512 gives (2,256), (4,128), ..., (128,4)
        pairs = factor_pairs(N)
        if not pairs:
            raise ValueError(f"N={N} has no admissible block factorization")
        return pairs
    pairs = []
    for r in ratios:
        n = math.sqrt(N / r)
        ni = round(n)
        if ni < 1 or abs(ni - n) > 1e-9 * n or N % ni:
            raise ValueError(f"W/n={r:g} does not factor N={N}")
        pairs.append((ni, N // ni))
    return pairs


def _spectra(cfg: RunConfig, threads: int, n=None, W=None):
    return sample_spectra(cfg.ensemble(n, W), cfg.samples, threads=threads)


def _delta_window(cfg: RunConfig, d: float) -> SpectralWindow:
    return SpectralWindow(cfg.E, cfg.eps, (d / 2.0, -d / 2.0, d / 2.0, -d / 2.0))


def _exp_density(cfg, threads, man):
    spectra = _spectra(cfg, threads)
    h = empirical_density(spectra, bins=cfg.bins)
    man.checks.append(Check("cdf_distance", h.cdf_distance, cfg.max_cdf_distance, "<="))
    rows = [[c, d] for c, d in zip(h.centers, h.density)]
    plot = None
    if cfg.plots:
        plot = ("density", h)
    return {"results.csv": _csv_text(["center", "density"], rows)}, plot


def _exp_f2(cfg, threads, man):
    params = cfg.ensemble()
    spectra = _spectra(cfg, threads)
    rows = []
    for d in cfg.deltas:
        est = estimate_f2(params, _delta_window(cfg, d), spectra=spectra)
        pred = f2_limit(cfg.E, d, cfg.eps)
        obs = Observable(f"f2[d={d:g}]", est.mean, est.stderr, complex(pred), est.nsamples)
        man.observables.append(obs)
        man.checks.append(Check(f"|z| f2[d={d:g}]", obs.zscore, ACCEPT_Z, "<="))
        rows.append([d, est.mean.real, est.stderr, pred, sine_kernel_r2(d), obs.zscore])
    header = ["delta", "estimate", "stderr", "f2_limit", "sine_r2", "zscore"]
    return {"results.csv": _csv_text(header, rows)}, (("f2", rows) if cfg.plots else None)


def _exp_ratio(cfg, threads, man, kind):
    params = cfg.ensemble()
    w = cfg.window()
    spectra = _spectra(cfg, threads)
    if kind == "r-pm":
        est, pred = estimate_r_pm(params, w, spectra=spectra), r_pm_limit(w)
    else:
        est, pred = estimate_r_pp(params, w, spectra=spectra), r_pp_limit(w)
    obs = Observable(kind, est.mean, est.stderr, pred, est.nsamples)
    man.observables.append(obs)
    man.checks.append(Check(f"|z| {kind}", obs.zscore, ACCEPT_Z, "<="))
    header = ["estimate_re", "estimate_im", "stderr", "prediction_re", "prediction_im", "zscore"]
    row = [est.mean.real, est.mean.imag, est.stderr, pred.real, pred.imag, obs.zscore]
    return {"results.csv": _csv_text(header, [row])}, None


def crossover_sweep(cfg: RunConfig, threads: int = 1, deltas=(0.5, 1.0)) -> tuple[str, list[dict]]:
    """F2 at each ``(n, W)`` factorization of ``N`` against the smoothed sine kernel.

    The prediction is ``f2_limit(E, d, eps)`` at the run's ``eps``.  Returns
    the CSV text and one record per ``(ratio, d)``.
    """
    pairs = _sweep_pairs(cfg.N, cfg.ratios)
    records = []
    for n, W in pairs:
        params = cfg.ensemble(n, W)
        spectra = sample_spectra(params, cfg.samples, threads=threads)
        for d in deltas:
            est = estimate_f2(params, _delta_window(cfg, d), spectra=spectra)
            pred = f2_limit(cfg.E, d, cfg.eps)
            z = est.zscore(pred)
            records.append(
                dict(n=n, W=W, ratio=W / n, delta=d, estimate=est.mean.real, stderr=est.stderr,
                     prediction=pred, sine_r2=sine_kernel_r2(d), zscore=z, nsamples=est.nsamples)
            )
    header = ["n", "W", "ratio", "delta", "estimate", "stderr", "prediction", "sine_r2", "zscore"]
    rows = [[r[k] for k in header] for r in records]
    return _csv_text(header, rows), records


def _exp_crossover(cfg, threads, man):
    text, records = crossover_sweep(cfg, threads)
    for r in records:
        man.observables.append(
            Observable(f"f2[W/n={r['ratio']:g},d={r['delta']:g}]", complex(r["estimate"]), r["stderr"],
                       complex(r["prediction"]), r["nsamples"])
        )
    top = max(r["ratio"] for r in records)
    bottom = min(r["ratio"] for r in records)
    for r in records:
        if r["ratio"] == top:
            man.checks.append(Check(f"|z| delocalized d={r['delta']:g}", r["zscore"], ACCEPT_Z, "<="))
        if r["ratio"] == bottom and r["delta"] == 0.5:
            man.checks.append(Check("|z| localized d=0.5", r["zscore"], DEVIATE_Z, ">"))
    return {"results.csv": text}, (("crossover", records) if cfg.plots else None)


def _exp_transfer(cfg, threads, man):
    rows = []
    worst_q = worst_alt = worst_off = 0.0
    kmax = min(9, cfg.K)
    for sign in ("+", "-"):
        M = hermite_discretize(sign, cfg.E, cfg.beta, cfg.K)
        ev = M.eigenvalues()
        qk, aq = M.q_powers(), M.alternating_q_powers()
        for k in range(kmax):
            dq, da = abs(ev[k] - qk[k]), abs(ev[k] - aq[k])
            worst_q, worst_alt = max(worst_q, dq), max(worst_alt, da)
            rows.append([sign, k, qk[k].real, qk[k].imag, ev[k].real, ev[k].imag, dq, da])
        worst_off = max(worst_off, M.offdiag_ratio())
    man.checks.append(Check("max |lambda_k - q^k|", worst_q, 1e-6, "<="))
    man.checks.append(Check("max |lambda_k - (-q)^k|", worst_alt, 1e-6, "<="))
    man.checks.append(Check("offdiag/diag", worst_off, 1e-8, "<="))
    header = ["sign", "k", "q_pow_re", "q_pow_im", "eig_re", "eig_im", "dev_q_pow", "dev_alt_q_pow"]
    return {"results.csv": _csv_text(header, rows)}, None


def _exp_landscape(cfg, threads, man):
    rows = []
    for E in cfg.energies:
        r = landscape_check(E, cfg.beta, cfg.grid)
        m = r.margins
        rows.append([E, r.phi0, "" if r.psi is None else r.psi, r.c, m["lambda1"], m["lambda2"],
                     m.get("cross", ""), r.passed])
        man.checks.append(Check(f"landscape E={E:.6g} c", r.c if r.passed else 0.0, 0.0, ">"))
    header = ["E", "phi0", "psi", "c", "margin_lambda1", "margin_lambda2", "margin_cross", "passed"]
    return {"results.csv": _csv_text(header, rows)}, None


def _exp_rep(cfg, threads, man):
    tW = cfg.tW
    rows = []
    for l in range(cfg.lmax + 1):
        v = rep_eigenvalue_u(l, 0, tW)
        lead = 1.0 - l * (l + 1) / tW
        rows.append(["type0", l, 0, 0, v, lead, abs(v - lead)])
        man.checks.append(Check(f"type0 l={l} abs dev", abs(v - lead), 5e-6, "<="))
        for s in (1, 2):
            v = rep_eigenvalue_u(l, s, tW)
            lead = math.factorial(s) * tW**-s
            rows.append([f"u_s{s}", l, 0, s, v, lead, abs(v / lead - 1.0)])
            man.checks.append(Check(f"u s={s} l={l} rel dev", abs(v / lead - 1.0), 0.01, "<="))
        for q in range(-l + 1, l):
            v = first_type_eigenvalue(l, q, max(0, -q), tW)
            lead = math.sqrt((l + q + 1) * (l - q)) / tW
            rows.append(["first", l, q, max(0, -q), v, lead, abs(v / lead - 1.0)])
            man.checks.append(Check(f"first l={l} q={q} rel dev", abs(v / lead - 1.0), 0.01, "<="))
    v = rep_eigenvalue_u(0, 0, tW)
    man.checks.append(Check("l=0 s=0 vs 1-exp(-tW)", abs(v - (1.0 - math.exp(-tW))), 1e-12, "<="))
    header = ["kind", "l", "q", "s", "value", "asymptotic", "deviation"]
    return {"results.csv": _csv_text(header, rows)}, None


def _exp_sigma(cfg, threads, man):
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    rows = []
    worst = 0.0
    for _ in range(cfg.points):
        c, a1, a2 = rng.uniform(0.2, 2.0), rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0)
        q0, q2 = sigma_model_integrals(c, a1, a2)
        f0, f2 = sigma_model_closed_forms(c, a1, a2)
        err = max(abs(q0 - f0) / abs(f0), abs(q2 - f2) / abs(f2))
        worst = max(worst, err)
        rows.append([c, a1, a2, q0, f0, q2, f2, err])
    man.checks.append(Check("max rel err", worst, 1e-8, "<="))
    header = ["c", "alpha1", "alpha2", "I0_quad", "I0_closed", "I2_quad", "I2_closed", "rel_err"]
    return {"results.csv": _csv_text(header, rows)}, None


def _exp_delta(cfg, threads, man):
    rows = []
    for m in range(cfg.mmax + 1):
        _, S = delta_s_coefficients(m)
        bound = 4**m * math.factorial(m) ** 2
        rows.append([m, S, bound, S <= bound])
        man.checks.append(Check(f"Sigma_{m} - bound", S - bound, 0, "<="))
    return {"results.csv": _csv_text(["m", "sigma", "bound", "holds"], rows)}, None


_RUNNERS = {
    "density": _exp_density,
    "f2-vs-sine": _exp_f2,
    "r-pm": lambda c, t, m: _exp_ratio(c, t, m, "r-pm"),
    "r-pp": lambda c, t, m: _exp_ratio(c, t, m, "r-pp"),
    "crossover-sweep": _exp_crossover,
    "transfer-suite": _exp_transfer,
    "landscape": _exp_landscape,
    "rep-eigen": _exp_rep,
    "sigma-integrals": _exp_sigma,
    "delta-bound": _exp_delta,
}


def _out_dir(cfg: RunConfig, out: str | os.PathLike | None) -> Path:
    if out is not None:
        return Path(out)
    return Path(os.environ.get(OUT_ENV, cfg.output))


def run(cfg: RunConfig, out: str | os.PathLike | None = None, threads: int = 1) -> RunManifest:
    """Execute ``cfg`` and write ``results.csv``, ``manifest.json`` and optional plots.

    The output directory is ``out``, else ``$BANDLAB_OUT``, else ``cfg.output``.
    """
    man = RunManifest(config=cfg, started=_now())
    files, plot = _RUNNERS[cfg.experiment](cfg, threads, man)
    d = _out_dir(cfg, out)
    d.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (d / name).write_text(text, newline="")
        man.files.append(name)
    (d / "config.json").write_text(config_to_text(cfg))
    man.files.append("config.json")
    if plot is not None:
        from .plots import write_plot

        name = write_plot(plot, d, cfg)
        man.files.append(name)
    man.finished = _now()
    (d / "manifest.json").write_text(man.to_text())
    return man


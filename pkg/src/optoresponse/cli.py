"""
Command-line front end.

Subcommands: ``spectrum``, ``optimize``, ``opa``, ``stability``, ``noise``.
Each takes one TOML or JSON configuration (``--config`` or a shipped
``--preset``); command-line flags override file values.

Exit status: 0 success, 2 configuration error, 3 infeasible or unstable input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, InstabilityError, ResponseError
from .linsys import eigen_stability
from .noise import BathOccupations, keldysh_and_teff, qubit_polarization
from .opa import OpaParams, negativity_window, opa_cpsf
from .params import DimensionlessParams, SystemParams, from_dimensionless
from .response import chi_elements, greens, self_energy
from .stability import (
    collective_cooperativities,
    negativity_check,
    optimize_paramps,
    quadrature_stable,
    stability_report,
)
from .tables import SpectrumTable, format_float

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE = 0, 2, 3

PRESETS = ("fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5")

DIMENSIONLESS_KEYS = ("c0", "c1", "xi_m", "xi_d", "kappa_over_gamma_m", "gamma_ratio")
RELATIVE_KEYS = ("xi_m_rel", "xi_d_rel")
SYSTEM_KEYS = (
    "kappa", "gamma_m", "gamma_d", "g", "G", "lambda_m", "lambda_d", "phi_m", "phi_d",
)
OPA_KEYS = ("xi_k", "delta_k")
BATH_KEYS = ("n_c", "n_m", "n_d", "kappa_probe", "omega_ref")
SWEEP_KEYS = ("omega_min", "omega_max", "points", "outputs", "format")
SPECTRUM_OUTPUTS = ("cpsf", "kappa_eff", "chi", "greens", "t_eff", "reflectivity", "opa")
TOP_LEVEL = ("version", "description", "params", "system", "opa", "sweep", "curves",
             "bath", "optimize")

CHI_NAMES = ("aa", "aa_dag", "ab", "ab_dag", "ad", "ad_dag")


# -- configuration ------------------------------------------------------------


def load_config_text(text: str, source: str, fmt: str) -> dict:
    try:
        if fmt == "json":
            return json.loads(text)
        return tomllib.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return load_config_text(text, str(path), "json" if path.suffix == ".json" else "toml")


def load_preset(name: str) -> dict:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    ref = resources.files("optoresponse") / "presets" / f"{name}.toml"
    return load_config_text(ref.read_text(encoding="utf-8"), f"preset {name}", "toml")


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"[{section}].{key}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"[{section}].{key}: must be finite")
    return float(value)


def _table(cfg: dict, section: str, allowed: tuple[str, ...]) -> dict:
    raw = cfg.get(section, {})
    if not isinstance(raw, dict):
        raise ConfigError(f"[{section}] must be a table")
    for key in raw:
        if key not in allowed:
            raise ConfigError(f"[{section}]: unknown field {key!r}")
    return dict(raw)


@dataclass
class SweepConfig:
    curves: list[tuple[str, object]]
    omega_min: float = -1e-3
    omega_max: float = 1e-3
    n_points: int = 2001
    outputs: list[str] = field(default_factory=lambda: ["cpsf", "kappa_eff"])
    format: str = "csv"
    bath: BathOccupations = field(default_factory=BathOccupations)
    kappa_probe: float = 0.01
    omega_ref: float = 0.0

    def __post_init__(self) -> None:
        if not self.omega_min < self.omega_max:
            raise ConfigError("[sweep]: omega_min must be smaller than omega_max")
        if self.n_points < 2:
            raise ConfigError("[sweep].points: need at least 2 points")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"[sweep].format: expected csv or json, got {self.format!r}")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.n_points)


def _flag_overrides(args, keys) -> dict:
    out = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    return out


def _resolve_dimensionless(values: dict, section: str) -> DimensionlessParams:
    vals = {k: _number(section, k, v) for k, v in values.items() if k != "label"}
    rel = {k: vals.pop(k) for k in RELATIVE_KEYS if k in vals}
    if "c0" not in vals:
        raise ConfigError(f"[{section}]: missing required field 'c0'")
    try:
        d = DimensionlessParams(**vals)
        if rel:
            # relative paramps refer to the closed-form maxima at the other
            # mode's operating paramp
            xi_m = vals.get("xi_m", 0.0)
            xi_d = vals.get("xi_d", 0.0)
            if "xi_d_rel" in rel:
                _, c_d = collective_cooperativities(d.with_paramps(xi_m, 0.0))
                xi_d = rel["xi_d_rel"] * (1.0 + c_d)
            if "xi_m_rel" in rel:
                c_m, _ = collective_cooperativities(d.with_paramps(0.0, xi_d))
                xi_m = rel["xi_m_rel"] * (1.0 + c_m)
            d = d.with_paramps(xi_m, xi_d)
    except ValueError as exc:
        raise ConfigError(f"[{section}]: {exc}") from None
    return d


def _resolve_system(values: dict, section: str) -> SystemParams:
    vals = {k: _number(section, k, v) for k, v in values.items() if k != "label"}
    try:
        return SystemParams(**vals)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}]: {exc}") from None


def _label(curve: dict, index: int) -> str:
    label = str(curve.get("label", f"curve{index}"))
    if any(ch in label for ch in ",\n\r\""):
        raise ConfigError(f"[[curves]][{index}].label: must not contain commas or quotes")
    return label


def _curves(cfg: dict, args, kind: str) -> list[tuple[str, object]]:
    """Merge base section, per-curve overrides and flag overrides."""
    if kind == "opa":
        base_section, keys = "opa", OPA_KEYS
    elif "system" in cfg:
        base_section, keys = "system", SYSTEM_KEYS
    else:
        base_section, keys = "params", DIMENSIONLESS_KEYS + RELATIVE_KEYS
    base = _table(cfg, base_section, keys)
    for key, value in base.items():
        _number(base_section, key, value)
    raw_curves = cfg.get("curves") or [{}]
    if not isinstance(raw_curves, list):
        raise ConfigError("[[curves]] must be an array of tables")
    flags = _flag_overrides(args, keys)
    out = []
    for i, curve in enumerate(raw_curves):
        if not isinstance(curve, dict):
            raise ConfigError(f"[[curves]][{i}] must be a table")
        for key in curve:
            if key != "label" and key not in keys:
                raise ConfigError(f"[[curves]][{i}]: unknown field {key!r}")
        merged = {**base, **curve}
        for key, value in flags.items():
            merged[key] = value
            if key in ("xi_m", "xi_d"):
                merged.pop(key + "_rel", None)
        section = f"curves[{i}]"
        if kind == "opa":
            vals = {k: _number(section, k, v) for k, v in merged.items() if k != "label"}
            obj = OpaParams.from_dimensionless(vals.get("xi_k", 0.0), vals.get("delta_k", 0.0))
        elif base_section == "system":
            obj = _resolve_system(merged, section)
        else:
            obj = _resolve_dimensionless(merged, section)
        out.append((_label(curve, i), obj))
    return out


def build_sweep(cfg: dict, args, kind: str = "spectrum") -> SweepConfig:
    for key in cfg:
        if key not in TOP_LEVEL:
            raise ConfigError(f"unknown top-level field {key!r}")
    sweep = _table(cfg, "sweep", SWEEP_KEYS)
    bath = _table(cfg, "bath", BATH_KEYS)
    for key in ("omega_min", "omega_max"):
        if getattr(args, key, None) is not None:
            sweep[key] = args.omega_min if key == "omega_min" else args.omega_max
    if getattr(args, "points", None) is not None:
        sweep["points"] = args.points
    if getattr(args, "format", None) is not None:
        sweep["format"] = args.format
    bath.update(_flag_overrides(args, BATH_KEYS))

    kw = {}
    for key in ("omega_min", "omega_max"):
        if key in sweep:
            kw[key] = _number("sweep", key, sweep[key])
    if "points" in sweep:
        pts = sweep["points"]
        if isinstance(pts, bool) or not isinstance(pts, int):
            raise ConfigError(f"[sweep].points: expected an integer, got {pts!r}")
        kw["n_points"] = pts
    if "outputs" in sweep:
        outs = sweep["outputs"]
        if not isinstance(outs, list) or not all(isinstance(o, str) for o in outs):
            raise ConfigError("[sweep].outputs: expected a list of names")
        bad = [o for o in outs if o not in SPECTRUM_OUTPUTS]
        if bad:
            raise ConfigError(
                f"[sweep].outputs: unknown column group(s) {bad}; "
                f"choose from {list(SPECTRUM_OUTPUTS)}"
            )
        kw["outputs"] = outs
    if "format" in sweep:
        kw["format"] = sweep["format"]
    occ = {k: _number("bath", k, bath[k]) for k in ("n_c", "n_m", "n_d") if k in bath}
    try:
        kw["bath"] = BathOccupations(**occ)
    except ValueError as exc:
        raise ConfigError(f"[bath]: {exc}") from None
    for key in ("kappa_probe", "omega_ref"):
        if key in bath:
            kw[key] = _number("bath", key, bath[key])
    return SweepConfig(curves=_curves(cfg, args, kind), **kw)


def _system(obj) -> SystemParams:
    return from_dimensionless(obj) if isinstance(obj, DimensionlessParams) else obj


def _require_stable(label: str, p: SystemParams) -> None:
    v = eigen_stability(p)
    if not v.strictly_stable:
        raise InstabilityError(
            f"curve {label!r}: unstable operating point (max Re eig = {v.max_real:.3e})"
        )


# -- per-frequency evaluation -----------------------------------------------


def _chunked(fn, w: np.ndarray, jobs: int) -> dict[str, np.ndarray]:
    """Evaluate ``fn`` on chunks of ``w`` (possibly in threads), reassembled in order."""
    if jobs <= 1 or len(w) < 2 * jobs:
        return fn(w)
    parts = np.array_split(w, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(fn, parts))
    return {k: np.concatenate([r[k] for r in results]) for k in results[0]}


def spectrum_columns(outputs: list[str]) -> list[str]:
    cols = ["curve", "omega_over_kappa"]
    for group in SPECTRUM_OUTPUTS:
        if group not in outputs:
            continue
        if group == "cpsf":
            cols.append("kappa_cpsf")
        elif group == "kappa_eff":
            cols.append("kappa_eff_over_kappa")
        elif group == "chi":
            cols += [f"chi_{n}_{part}" for n in CHI_NAMES for part in ("re", "im")]
        elif group == "greens":
            cols += ["g_ret_aad_re", "g_ret_aad_im", "g_ret_aa_re", "g_ret_aa_im"]
        elif group == "t_eff":
            cols += ["keldysh", "noise_ratio", "t_eff_over_kappa"]
        elif group == "reflectivity":
            cols.append("reflectivity")
        elif group == "opa":
            cols.append("opa_equiv_kappa_cpsf")
    return cols


def _spectrum_fn(p: SystemParams, cfg: SweepConfig):
    k = p.kappa
    outs = cfg.outputs
    if "opa" in outs:
        se0 = self_energy(p, 0.0)
        kbar = k - 2.0 * float(se0.sigma_a.imag)
        lt0 = float(se0.lambda_tilde.real)

    def fn(x: np.ndarray) -> dict[str, np.ndarray]:
        w = x * k
        out: dict[str, np.ndarray] = {"omega_over_kappa": x}
        if "cpsf" in outs or "kappa_eff" in outs or "greens" in outs:
            gs = greens(p, w)
            out["kappa_cpsf"] = k * gs.cpsf
            out["kappa_eff_over_kappa"] = gs.kappa_eff / k
            out["g_ret_aad_re"] = k * gs.g_ret_aad.real
            out["g_ret_aad_im"] = k * gs.g_ret_aad.imag
            out["g_ret_aa_re"] = k * gs.g_ret_aa.real
            out["g_ret_aa_im"] = k * gs.g_ret_aa.imag
        if "chi" in outs:
            for name, val in zip(CHI_NAMES, chi_elements(p, w)):
                out[f"chi_{name}_re"] = k * val.real
                out[f"chi_{name}_im"] = k * val.imag
        if "t_eff" in outs or "reflectivity" in outs:
            ns = keldysh_and_teff(
                p, cfg.bath, w, kappa_probe=cfg.kappa_probe, omega_ref=cfg.omega_ref * k
            )
            out["keldysh"] = k * ns.g_keldysh.imag
            out["noise_ratio"] = ns.ratio
            out["t_eff_over_kappa"] = ns.t_eff / k
            out["reflectivity"] = ns.reflectivity
        if "opa" in outs:
            s = kbar**2 / 4 - lt0**2
            with np.errstate(divide="ignore", invalid="ignore"):
                out["opa_equiv_kappa_cpsf"] = (
                    k * kbar * (w**2 + s) / ((s - w**2) ** 2 + (w * kbar) ** 2)
                )
        return out

    return fn


def _noise_fn(p: SystemParams, cfg: SweepConfig):
    k = p.kappa

    def fn(x: np.ndarray) -> dict[str, np.ndarray]:
        w = x * k
        ns = keldysh_and_teff(
            p, cfg.bath, w, kappa_probe=cfg.kappa_probe, omega_ref=cfg.omega_ref * k
        )
        energy = w + cfg.omega_ref * k
        return {
            "omega_over_kappa": x,
            "kappa_cpsf": k * ns.cpsf,
            "keldysh": k * ns.g_keldysh.imag,
            "noise_ratio": ns.ratio,
            "t_eff_over_kappa": ns.t_eff / k,
            "t_eff_defined": ns.t_eff_defined.astype(float),
            "reflectivity": ns.reflectivity,
            "sigma_z": np.where(ns.t_eff_defined, qubit_polarization(energy, ns.t_eff), np.nan),
        }

    return fn


NOISE_COLUMNS = [
    "curve", "omega_over_kappa", "kappa_cpsf", "keldysh", "noise_ratio",
    "t_eff_over_kappa", "t_eff_defined", "reflectivity", "sigma_z",
]
OPA_COLUMNS = [
    "curve", "omega_over_kappa", "kappa_cpsf", "f_over_kappa2", "window_lo", "window_hi",
]


def _params_meta(obj) -> dict:
    return {k: (v if not isinstance(v, complex) else [v.real, v.imag])
            for k, v in asdict(obj).items()}


def cmd_spectrum(cfg: SweepConfig, jobs: int = 1) -> SpectrumTable:
    table = SpectrumTable(spectrum_columns(cfg.outputs), meta={"command": "spectrum",
                                                               "version": __version__})
    table.meta["curves"] = {}
    for label, obj in cfg.curves:
        p = _system(obj)
        _require_stable(label, p)
        table.meta["curves"][label] = _params_meta(obj)
        table.extend(label, _chunked(_spectrum_fn(p, cfg), cfg.grid, jobs))
    return table


def cmd_noise(cfg: SweepConfig, jobs: int = 1) -> SpectrumTable:
    table = SpectrumTable(list(NOISE_COLUMNS), meta={"command": "noise",
                                                     "version": __version__,
                                                     "bath": asdict(cfg.bath)})
    for label, obj in cfg.curves:
        p = _system(obj)
        _require_stable(label, p)
        table.extend(label, _chunked(_noise_fn(p, cfg), cfg.grid, jobs))
    return table


def cmd_opa(cfg: SweepConfig, jobs: int = 1) -> SpectrumTable:
    table = SpectrumTable(list(OPA_COLUMNS), meta={"command": "opa", "version": __version__})
    for label, o in cfg.curves:
        if not (o.stable or (o.marginal and o.delta_p == 0.0)):
            raise InstabilityError(f"curve {label!r}: OPA is unstable")
        window = negativity_window(o)
        lo, hi = window if window else (math.nan, math.nan)

        def fn(x, o=o, lo=lo, hi=hi):
            a, f = opa_cpsf(o, x * o.kappa)
            return {
                "omega_over_kappa": x,
                "kappa_cpsf": o.kappa * a,
                "f_over_kappa2": f / o.kappa**2,
                "window_lo": np.full_like(x, lo / o.kappa),
                "window_hi": np.full_like(x, hi / o.kappa),
            }

        table.extend(label, _chunked(fn, cfg.grid, jobs))
    return table


def _check_dict(d: DimensionlessParams) -> dict:
    try:
        chk = negativity_check(d)
    except ResponseError as exc:
        return {"xi_m": d.xi_m, "xi_d": d.xi_d, "error": str(exc)}
    return {"xi_m": d.xi_m, "xi_d": d.xi_d, **asdict(chk)}


def cmd_optimize(cfg: dict, args) -> tuple[dict, bool]:
    """Run the paramp search; returns the JSON payload and the feasibility flag."""
    for key in cfg:
        if key not in TOP_LEVEL:
            raise ConfigError(f"unknown top-level field {key!r}")
    base = _table(cfg, "params", DIMENSIONLESS_KEYS)
    opt = _table(cfg, "optimize", ("target_m", "reference"))
    base.update(_flag_overrides(args, ("c0", "c1", "kappa_over_gamma_m", "gamma_ratio")))
    reference = opt.get("reference")
    if args.xi_m is not None or args.xi_d is not None:
        ref = list(reference) if reference else [0.0, 0.0]
        if args.xi_m is not None:
            ref[0] = args.xi_m
        if args.xi_d is not None:
            ref[1] = args.xi_d
        reference = ref
    target = args.target_m if args.target_m is not None else opt.get("target_m")
    if target is None:
        raise ConfigError("[optimize].target_m: required (or pass --target-m)")
    target = _number("optimize", "target_m", target)
    if not target < 0:
        raise ConfigError("[optimize].target_m: must be negative")
    base.pop("xi_m", None)
    base.pop("xi_d", None)
    d = _resolve_dimensionless(base, "params")
    res = optimize_paramps(d, target)
    payload = {
        "command": "optimize",
        "version": __version__,
        "params": asdict(d) | {"xi_m": None, "xi_d": None},
        "result": asdict(res),
        "verification": {},
    }
    if res.feasible:
        payload["verification"]["optimum"] = _check_dict(d.with_paramps(res.xi_m_opt, res.xi_d_opt))
    if reference is not None:
        if not isinstance(reference, list) or len(reference) != 2:
            raise ConfigError("[optimize].reference: expected [xi_m, xi_d]")
        rm = _number("optimize", "reference[0]", reference[0])
        rd = _number("optimize", "reference[1]", reference[1])
        try:
            ref_d = d.with_paramps(rm, rd)
        except ValueError as exc:
            raise ConfigError(f"[optimize].reference: {exc}") from None
        payload["verification"]["reference"] = _check_dict(ref_d)
    return payload, res.feasible


def cmd_stability(cfg: dict, args) -> tuple[dict, bool]:
    for key in cfg:
        if key not in TOP_LEVEL:
            raise ConfigError(f"unknown top-level field {key!r}")
    curves = _curves(cfg, args, "spectrum")
    reports = {}
    all_stable = True
    for label, obj in curves:
        if not isinstance(obj, DimensionlessParams):
            raise ConfigError("stability needs dimensionless [params]")
        rep = stability_report(obj)
        entry = {"params": asdict(obj), **asdict(rep),
                 "stable_quadrature": quadrature_stable(obj)}
        try:
            entry["kappa_cpsf_0"] = negativity_check(obj).m
        except ResponseError as exc:
            entry["kappa_cpsf_0"] = None
            entry["note"] = str(exc)
        all_stable &= rep.stable_eigen
        reports[label] = entry
    return {"command": "stability", "version": __version__, "curves": reports}, all_stable


# -- argument parsing ---------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser, *, sweep: bool, noise: bool = False) -> None:
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="TOML or JSON configuration file")
    src.add_argument("--preset", choices=PRESETS, help="shipped preset configuration")
    sp.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    sp.add_argument("--format", choices=("csv", "json"))
    if sweep:
        sp.add_argument("--omega-min", type=float, dest="omega_min")
        sp.add_argument("--omega-max", type=float, dest="omega_max")
        sp.add_argument("--points", type=int)
        sp.add_argument("--jobs", type=int, default=1, help="worker threads")
    for flag in ("c0", "c1", "xi-m", "xi-d", "kappa-over-gamma-m", "gamma-ratio"):
        sp.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))
    if noise:
        for flag in ("n-c", "n-m", "n-d", "kappa-probe", "omega-ref"):
            sp.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optoresponse",
        description="Cavity spectral function of a two-mechanics parametrically "
        "driven optomechanical system.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="per-frequency response table")
    _add_common(sp, sweep=True, noise=True)

    sp = sub.add_parser("noise", help="Keldysh function, effective temperature, reflectivity")
    _add_common(sp, sweep=True, noise=True)

    sp = sub.add_parser("optimize", help="paramps for a target on-resonance negativity")
    _add_common(sp, sweep=False)
    sp.add_argument("--target-m", type=float, dest="target_m")

    sp = sub.add_parser("stability", help="closed-form and eigenvalue stability report")
    _add_common(sp, sweep=False)

    sp = sub.add_parser("opa", help="detuned OPA reference spectra")
    _add_common(sp, sweep=True)
    sp.add_argument("--xi-k", type=float, dest="xi_k")
    sp.add_argument("--delta-k", type=float, dest="delta_k")
    return parser


def _config_from_args(args) -> dict:
    if args.config:
        return load_config(args.config)
    if args.preset:
        return load_preset(args.preset)
    return {}


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    def clean(x):
        if isinstance(x, float) and not math.isfinite(x):
            return None
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, list):
            return [clean(v) for v in x]
        return x

    return json.dumps(clean(payload), indent=1, allow_nan=False) + "\n"


def _flat_csv(payload: dict) -> str:
    """One row per curve for the stability report."""
    rows = []
    header = None
    for label, entry in payload["curves"].items():
        flat = {"curve": label, **{k: v for k, v in entry.items() if k not in ("params", "note")}}
        header = header or list(flat)
        rows.append(",".join(
            str(v) if isinstance(v, (str, bool)) or v is None else format_float(v)
            for v in (flat[h] for h in header)
        ))
    return ",".join(header) + "\n" + "\n".join(rows) + "\n"


def _is_negative_number(token: str) -> bool:
    if not token.startswith("-"):
        return False
    try:
        float(token)
    except ValueError:
        return False
    return True


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--flag -1e-6`` through; argparse would take the value for an option."""
    out: list[str] = []
    for tok in argv:
        prev = out[-1] if out else ""
        if prev.startswith("--") and "=" not in prev and _is_negative_number(tok):
            out[-1] = f"{prev}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        cfg = _config_from_args(args)
        if args.command in ("spectrum", "noise", "opa"):
            jobs = max(1, args.jobs)
            sweep = build_sweep(cfg, args, "opa" if args.command == "opa" else "spectrum")
            fn = {"spectrum": cmd_spectrum, "noise": cmd_noise, "opa": cmd_opa}[args.command]
            table = fn(sweep, jobs)
            _emit(table.render(sweep.format), args.output)
            return EXIT_OK
        if args.command == "optimize":
            payload, feasible = cmd_optimize(cfg, args)
            _emit(_json_text(payload), args.output)
            if not feasible:
                print("error: target negativity is not reachable in the stable region",
                      file=sys.stderr)
                return EXIT_INFEASIBLE
            return EXIT_OK
        payload, stable = cmd_stability(cfg, args)
        text = _flat_csv(payload) if args.format == "csv" else _json_text(payload)
        _emit(text, args.output)
        return EXIT_OK if stable else EXIT_INFEASIBLE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResponseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""End-to-end experiments and artifact emission.

Subcommands:
  spectrum     ESD of the centered Gram matrix vs the semicircle law
  mp           ESD of the raw Gram matrix vs Marchenko-Pastur
  moments      trace-moment statistics of the centered matrix over repeats
  code-info    structural code report (dual distance, weights, coherence)
  paths-audit  brute-force audit of the closed-walk counting identities

Every emitted JSON embeds the resolved config and sha256 checksums of the
artifact files, so identical (config, seed) runs are byte-comparable.
Exit codes: 0 ok, 2 parameter error, 3 resource (budget) error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import statistics
import sys
from dataclasses import asdict, dataclass
from math import sqrt
from pathlib import Path

import numpy as np

from .codes import LinearCode, code_report, load_generator, make_even_weight, \
    make_gold, make_rm1
from .errors import ParameterError, ResourceError
from .laws import LawSpec
from .paths import paths_audit
from .signal import MODE_DISTINCT, MODE_WITH_REPLACEMENT, sample_codewords
from .spectra import SpectralSummary, summarize
from .svg import render_histogram_svg

MOMENT_BOUND_MULTIPLIER = 3.0  # converts the unconstanted error scale into a gate


@dataclass
class ExperimentConfig:
    command: str
    code: str = "gold"
    m: int | None = None
    n: int | None = None
    file: str | None = None
    p: int | None = None
    y: float | None = None
    mode: str | None = None
    seed: int = 1
    repeats: int = 10
    bins: int = 40
    lmax: int = 6
    out: str = "out"

    def as_dict(self) -> dict:
        return asdict(self)


def resolve_code(cfg: ExperimentConfig) -> LinearCode:
    if cfg.code == "gold":
        if cfg.m is None:
            raise ParameterError("gold code needs --m")
        return make_gold(cfg.m)
    if cfg.code == "rm1":
        if cfg.m is None:
            raise ParameterError("rm1 code needs --m")
        return make_rm1(cfg.m)
    if cfg.code == "even":
        if cfg.n is None:
            raise ParameterError("even-weight code needs --n")
        return make_even_weight(cfg.n)
    if cfg.code == "file":
        if cfg.file is None:
            raise ParameterError("file code needs --file")
        return load_generator(cfg.file)
    raise ParameterError(f"unknown code selector: {cfg.code!r}")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_eigs_csv(path: Path, eigs) -> None:
    lines = ["lambda"] + [f"{x:.17g}" for x in eigs]
    path.write_text("\n".join(lines) + "\n")


def _write_hist_csv(path: Path, edges, densities) -> None:
    lines = ["bin_left,bin_right,density"]
    for left, right, dens in zip(edges[:-1], edges[1:], densities):
        lines.append(f"{left:.17g},{right:.17g},{dens:.17g}")
    path.write_text("\n".join(lines) + "\n")


def _histogram(eigs: np.ndarray, bins: int, law: LawSpec):
    lo_s, hi_s = law.support
    lo = min(float(np.min(eigs)), lo_s)
    hi = max(float(np.max(eigs)), hi_s)
    densities, edges = np.histogram(eigs, bins=bins, range=(lo, hi), density=True)
    return edges, densities


def _finish(summary: dict, out_dir: Path, name: str) -> dict:
    target = out_dir / name
    target.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def _run_esd_experiment(
    cfg: ExperimentConfig, code: LinearCode, p: int, law: LawSpec,
    mode: str, centered: bool,
) -> dict:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    per_repeat = []
    artifacts: dict[str, str] = {}
    for r in range(cfg.repeats):
        sig = sample_codewords(code, p, mode, cfg.seed, stream_index=r)
        summary = summarize(sig, law, centered=centered, ell_max=cfg.lmax)
        eigs = np.array(summary.eigenvalues)

        eig_path = out_dir / f"eigs_r{r:02d}.csv"
        _write_eigs_csv(eig_path, eigs)
        edges, dens = _histogram(eigs, cfg.bins, law)
        hist_path = out_dir / f"hist_r{r:02d}.csv"
        _write_hist_csv(hist_path, edges, dens)
        svg_path = out_dir / f"esd_r{r:02d}.svg"
        title = (f"{code.label}  p={p}  law={law.kind}"
                 + (f"(y={law.y:g})" if law.y is not None else ""))
        render_histogram_svg(svg_path, edges, dens, law, title)
        for f in (eig_path, hist_path, svg_path):
            artifacts[f.name] = _sha256(f)

        per_repeat.append({
            "stream_index": r,
            "ks": summary.ks_to_law,
            "moments": [[ell, a] for ell, a in summary.moments],
            "eig_min": float(eigs.min()),
            "eig_max": float(eigs.max()),
        })
    ks_values = [r["ks"] for r in per_repeat]
    return {
        "config": cfg.as_dict(),
        "code": {"label": code.label, "n": code.n, "k": code.k, "N": code.N},
        "p": p,
        "law": {"kind": law.kind, "y": law.y},
        "mode": mode,
        "per_repeat": per_repeat,
        "ks_values": ks_values,
        "median_ks": statistics.median(ks_values),
        "artifacts": artifacts,
    }


def cmd_spectrum(cfg: ExperimentConfig) -> dict:
    code = resolve_code(cfg)
    if cfg.p is None:
        raise ParameterError("spectrum needs --p")
    mode = cfg.mode or MODE_DISTINCT
    if mode != MODE_DISTINCT:
        raise ParameterError("the semicircle experiment requires distinct sampling")
    summary = _run_esd_experiment(
        cfg, code, cfg.p, LawSpec("sc"), mode, centered=True
    )
    return _finish(summary, Path(cfg.out), "summary.json")


def cmd_mp(cfg: ExperimentConfig) -> dict:
    code = resolve_code(cfg)
    if cfg.y is None:
        raise ParameterError("mp needs --y")
    law = LawSpec("mp", cfg.y)
    p = round(cfg.y * code.n)
    if p < 2:
        raise ParameterError(f"round(y*n) = {p} is too small")
    mode = cfg.mode or MODE_WITH_REPLACEMENT
    summary = _run_esd_experiment(cfg, code, p, law, mode, centered=False)
    if mode == MODE_DISTINCT:
        summary["warning"] = (
            "distinct sampling differs from the with-replacement setting "
            "of the Marchenko-Pastur reference"
        )
    return _finish(summary, Path(cfg.out), "summary.json")


def cmd_moments(cfg: ExperimentConfig) -> dict:
    code = resolve_code(cfg)
    if cfg.p is None:
        raise ParameterError("moments needs --p")
    if cfg.lmax > 12:
        raise ParameterError("moments supports --lmax up to 12")
    if cfg.repeats < 2:
        raise ParameterError("moments needs at least 2 repeats")
    mode = cfg.mode or MODE_DISTINCT
    if mode != MODE_DISTINCT:
        raise ParameterError("moment statistics use distinct sampling")

    report = code_report(code)
    c = report.coherence_constant
    n, p, big_n = code.n, cfg.p, code.N
    law = LawSpec("sc")

    samples: dict[int, list[float]] = {ell: [] for ell in range(1, cfg.lmax + 1)}
    for r in range(cfg.repeats):
        sig = sample_codewords(code, p, mode, cfg.seed, stream_index=r)
        summary = summarize(sig, law, centered=True, ell_max=cfg.lmax)
        for ell, a in summary.moments:
            samples[ell].append(a)

    per_l = []
    for ell in range(1, cfg.lmax + 1):
        vals = samples[ell]
        mean = statistics.fmean(vals)
        var = statistics.variance(vals)
        if ell % 2 == 0:
            scale = c**ell / p + n / big_n + p / n
        else:
            scale = c**ell / sqrt(p) + sqrt(p / n)
        reference = law.moment(ell)
        bound = MOMENT_BOUND_MULTIPLIER * scale
        per_l.append({
            "l": ell,
            "mean": mean,
            "variance": var,
            "sc_moment": reference,
            "error_scale": scale,
            "bound": bound,
            "deviation": abs(mean - reference),
            "within_bound": abs(mean - reference) <= bound,
        })

    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {
        "config": cfg.as_dict(),
        "code": {"label": code.label, "n": n, "k": code.k, "N": big_n},
        "code_report": report.as_dict(),
        "multiplier": MOMENT_BOUND_MULTIPLIER,
        "per_l": per_l,
        "artifacts": {},
    }
    return _finish(summary, out_dir, "moments.json")


def cmd_code_info(cfg: ExperimentConfig) -> dict:
    code = resolve_code(cfg)
    report = code_report(code)
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {
        "config": cfg.as_dict(),
        "label": code.label,
        "report": report.as_dict(),
        "artifacts": {},
    }
    return _finish(summary, out_dir, "code_info.json")


def cmd_paths_audit(cfg: ExperimentConfig) -> dict:
    code = resolve_code(cfg)
    audit = paths_audit(code, cfg.lmax)
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {
        "config": cfg.as_dict(),
        "audit": audit,
        "artifacts": {},
    }
    return _finish(summary, out_dir, "paths_audit.json")


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "mp": cmd_mp,
    "moments": cmd_moments,
    "code-info": cmd_code_info,
    "paths-audit": cmd_paths_audit,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codespectra",
        description="Spectral experiments on matrices built from linear codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--code", default="gold",
                       choices=["gold", "rm1", "even", "file"])
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--file", default=None)
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--y", type=float, default=None)
        p.add_argument("--mode", default=None,
                       choices=[MODE_DISTINCT, MODE_WITH_REPLACEMENT])
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--repeats", type=int, default=10)
        p.add_argument("--bins", type=int, default=40)
        p.add_argument("--lmax", type=int, default=6,
                       help="max trace-moment order; walk length for paths-audit")
        p.add_argument("--out", default="out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = ExperimentConfig(**vars(args))
    try:
        result = _COMMANDS[cfg.command](cfg)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())

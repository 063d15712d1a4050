"""Command-line front end: regime reports, field/kernel grid sampling,
oracle comparisons, trajectory runs.

Output is deterministic (fixed float formatting, no timestamps): identical
configuration and version produce byte-identical bytes.  CSV is the primary
format; JSON mirrors the same field names.  Every table carries a comment
line recording σ₅, b, the regulators, and the package version.

Exit codes: 0 ok; 2 configuration problem; 3 every grid point on singular
support; 4 quadrature failure; 5 trajectory crossed singular support.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import sys
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .errors import (ComplexRoots, DegenerateVelocity, LightlikeVelocity,
                     OnCone, OnSingularSupport, PreMaxwellError,
                     QuadratureFailure, SingularSupportCrossed,
                     StencilOnSupport)
from .fields import (SmoothField, concatenate, delta_decomposition,
                     eval_field)
from .fivespace import FiveVector, FourVector, Signature
from .greens import (KernelFamily, eval_classic_41, eval_land_horwitz,
                     eval_laplace4, eval_maxwell_pp, eval_oron_horwitz,
                     eval_unified)
from .oracle import (concatenate_numeric, convolve_ums, extrapolated_field,
                     pairing_convolution, rho_sequence)
from .dynamics import EventState, integrate as integrate_traj, mass_ratio_sq
from .source import classify
from .source import UniformSource
from .verify import dalembert_residual

FMT = "%.12g"


class ConfigError(PreMaxwellError):
    pass


class AllSingular(PreMaxwellError):
    pass


@dataclass
class RunConfig:
    sigma5: int = 1
    b: Tuple[float, ...] = (0.0, 0.0, 0.0, 0.0, 1.0)
    offset: Tuple[float, ...] = (0.0, 0.0, 0.0, 0.0, 0.0)
    charge: float = 1.0
    grid: Dict[str, Tuple[float, float, int]] = dc_field(default_factory=dict)
    epsilon: float = 1e-4
    rho: float = 1e-2
    width: float = 1e-2
    fmt: str = "csv"
    out: Optional[str] = None

    def signature(self) -> Signature:
        return Signature(self.sigma5)

    def source(self) -> UniformSource:
        return UniformSource(b=FiveVector.of(*self.b),
                             offset=FiveVector.of(*self.offset),
                             charge=self.charge)


GRID_AXES = ("t", "x", "y", "z", "tau")


def _parse_floats(text: str, n: int, what: str) -> Tuple[float, ...]:
    try:
        vals = tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse {what}: {text!r}") from exc
    if len(vals) != n:
        raise ConfigError(f"{what} needs {n} comma-separated values: {text!r}")
    return vals


def _parse_grid_spec(spec: str) -> Tuple[str, Tuple[float, float, int]]:
    try:
        axis, rng = spec.split("=", 1)
        lo, hi, cnt = rng.split(":")
        axis = axis.strip()
        if axis not in GRID_AXES:
            raise ValueError(f"unknown axis {axis!r}")
        count = int(cnt)
        if count < 1:
            raise ValueError("count must be >= 1")
        return axis, (float(lo), float(hi), count)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad grid spec {spec!r} "
                          "(expected axis=min:max:count)") from exc


def grid_points(cfg: RunConfig) -> List[Tuple[FourVector, float]]:
    """Cartesian product of the configured axes in canonical order; axes not
    mentioned stay at 0."""
    axes = []
    for name in GRID_AXES:
        if name in cfg.grid:
            lo, hi, cnt = cfg.grid[name]
            axes.append(np.linspace(lo, hi, cnt) if cnt > 1 else np.array([lo]))
        else:
            axes.append(np.array([0.0]))
    pts = []
    for t in axes[0]:
        for x in axes[1]:
            for y in axes[2]:
                for z in axes[3]:
                    for tau in axes[4]:
                        pts.append((FourVector(float(t), float(x), float(y),
                                               float(z)), float(tau)))
    return pts


def load_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        parser = configparser.ConfigParser()
        read = parser.read(args.config)
        if not read:
            raise ConfigError(f"config file not found: {args.config}")
        try:
            if parser.has_section("source"):
                s = parser["source"]
                if "sigma5" in s:
                    cfg.sigma5 = int(s["sigma5"])
                if "b" in s:
                    cfg.b = _parse_floats(s["b"], 5, "b")
                if "offset" in s:
                    cfg.offset = _parse_floats(s["offset"], 5, "offset")
                if "charge" in s:
                    cfg.charge = float(s["charge"])
            if parser.has_section("grid"):
                for axis, rng in parser["grid"].items():
                    a, spec = _parse_grid_spec(f"{axis}={rng}")
                    cfg.grid[a] = spec
            if parser.has_section("regulators"):
                r = parser["regulators"]
                cfg.epsilon = float(r.get("epsilon", cfg.epsilon))
                cfg.rho = float(r.get("rho", cfg.rho))
                cfg.width = float(r.get("width", cfg.width))
            if parser.has_section("output"):
                o = parser["output"]
                cfg.fmt = o.get("format", cfg.fmt)
                cfg.out = o.get("path", cfg.out)
        except (ValueError, configparser.Error) as exc:
            raise ConfigError(f"bad config file: {exc}") from exc
    # flags override the file
    if getattr(args, "sigma5", None) is not None:
        cfg.sigma5 = args.sigma5
    if getattr(args, "b", None) is not None:
        cfg.b = _parse_floats(args.b, 5, "b")
    if getattr(args, "offset", None) is not None:
        cfg.offset = _parse_floats(args.offset, 5, "offset")
    if getattr(args, "charge", None) is not None:
        cfg.charge = args.charge
    for spec in getattr(args, "grid", None) or []:
        axis, rng = _parse_grid_spec(spec)
        cfg.grid[axis] = rng
    if getattr(args, "epsilon", None) is not None:
        cfg.epsilon = args.epsilon
    if getattr(args, "rho", None) is not None:
        cfg.rho = args.rho
    if getattr(args, "width", None) is not None:
        cfg.width = args.width
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    if getattr(args, "out", None) is not None:
        cfg.out = args.out
    if cfg.sigma5 not in (1, -1):
        raise ConfigError("sigma5 must be +1 or -1")
    if cfg.epsilon < 0 or cfg.rho < 0 or cfg.width <= 0:
        raise ConfigError("regulators must be nonnegative (width positive)")
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg.fmt!r}")
    return cfg


def _fnum(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return FMT % v
    return str(v)


def _meta(cfg: RunConfig) -> str:
    return ("sigma5=%+d b=%s charge=%s epsilon=%s rho=%s width=%s version=%s"
            % (cfg.sigma5, ",".join(FMT % c for c in cfg.b),
               FMT % cfg.charge, FMT % cfg.epsilon, FMT % cfg.rho,
               FMT % cfg.width, __version__))


def write_table(cfg: RunConfig, header: List[str], rows: List[List],
                extra_comments: Optional[List[str]] = None) -> None:
    buf = io.StringIO()
    if cfg.fmt == "csv":
        buf.write(f"# {_meta(cfg)}\n")
        for c in extra_comments or []:
            buf.write(f"# {c}\n")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_fnum(v) for v in row) + "\n")
    else:
        doc = {"meta": _meta(cfg), "comments": extra_comments or [],
               "rows": [dict(zip(header, row)) for row in rows]}
        buf.write(json.dumps(doc, indent=1, sort_keys=True,
                             default=lambda v: None) + "\n")
    text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_regime(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    rows = []
    b_list = [cfg.b]
    for b in b_list:
        reg = classify(FiveVector.of(*b), sig)
        n = reg.n.components()
        rows.append([cfg.sigma5, *b, reg.bb, reg.zeta, reg.label.value,
                     reg.mass_ratio_sq, *n])
    header = ["sigma5", "b0", "b1", "b2", "b3", "b5", "bb", "zeta", "label",
              "mass_ratio_sq", "n0", "n1", "n2", "n3", "n5"]
    write_table(cfg, header, rows)
    return 0


def cmd_field(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    src = cfg.source()
    reg = classify(src.b, sig)
    if reg.zeta == 0:
        raise ConfigError("field sampling undefined on the lightlike boundary")
    pts = grid_points(cfg)
    rows = []
    n_on_support = 0
    if reg.smooth:
        header = ["t", "x", "y", "z", "tau", "a0", "a1", "a2", "a3", "a5",
                  "regime_flag"]
        for x4, tau in pts:
            try:
                val = eval_field(src, sig, x4, tau)
                a = val.a.components()
                rows.append([x4.t, x4.x, x4.y, x4.z, tau, *a, reg.label.value])
            except OnSingularSupport:
                n_on_support += 1
                rows.append([x4.t, x4.x, x4.y, x4.z, tau] +
                            [float("nan")] * 5 + ["on_singular_support"])
    else:
        header = ["t", "x", "y", "z", "tau", "Q", "weight", "tau1", "tau2",
                  "root_coefficient", "regime_flag"]
        for x4, tau in pts:
            val = eval_field(src, sig, x4, tau)
            r1, r2 = val.roots if val.roots else (None, None)
            rows.append([x4.t, x4.x, x4.y, x4.z, tau, val.q_value, val.weight,
                         r1, r2, val.root_coefficient, reg.label.value])
    if n_on_support == len(pts):
        raise AllSingular("every grid point lies on the singular support")
    write_table(cfg, header, rows)
    return 0


def cmd_concat(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    src = cfg.source()
    pts = grid_points(cfg)
    rows = []
    compare = getattr(args, "compare_numeric", False)
    header = ["t", "x", "y", "z", "A0", "A1", "A2", "A3", "flag"]
    if compare:
        header += ["A0_num", "A1_num", "A2_num", "A3_num", "rel_error"]
    max_err = 0.0
    for x4, _tau in pts:
        try:
            a = concatenate(src, sig, x4)
            comps = a.components()
            flag = "zero_support" if all(c == 0.0 for c in comps) else "ok"
            row = [x4.t, x4.x, x4.y, x4.z, *comps, flag]
            if compare:
                num = concatenate_numeric(src, sig, x4)
                nc = num.components()
                scale = max(max(abs(c) for c in comps), 1e-300)
                err = max(abs(u - v) for u, v in zip(comps, nc)) / scale
                max_err = max(max_err, err)
                row += [*nc, err]
        except OnCone:
            row = [x4.t, x4.x, x4.y, x4.z] + [float("nan")] * 4 + ["on_cone"]
            if compare:
                row += [float("nan")] * 5
        rows.append(row)
    comments = [f"max_rel_error={FMT % max_err}"] if compare else None
    write_table(cfg, header, rows, comments)
    return 0


def cmd_gf(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    fam = KernelFamily(args.family)
    pts = grid_points(cfg)
    rows = []
    header = ["t", "x", "y", "z", "tau", "smooth", "delta_weight", "flag"]
    for x4, tau in pts:
        flag = "ok"
        smooth = float("nan")
        dw = None
        try:
            if fam is KernelFamily.UNIFIED_5D:
                kv = eval_unified(sig, x4, tau, cfg.epsilon)
                smooth = kv.smooth
                dw = kv.boundary_delta.weight if kv.boundary_delta else None
            elif fam is KernelFamily.LAND_HORWITZ_PP:
                kv = eval_land_horwitz(sig, x4, tau, cfg.epsilon)
                smooth = kv.smooth
                dw = kv.boundary_delta.weight if kv.boundary_delta else None
            elif fam is KernelFamily.ORON_HORWITZ_RETARDED:
                smooth = eval_oron_horwitz(x4, tau)
            elif fam is KernelFamily.MAXWELL_PP_4D:
                smooth = eval_maxwell_pp(x4, cfg.width)
            elif fam in (KernelFamily.CLASSIC41_G, KernelFamily.CLASSIC41_H):
                variant = "G" if fam is KernelFamily.CLASSIC41_G else "H"
                kv = eval_classic_41((x4.x, x4.y, x4.z), x4.t, variant,
                                     cfg.epsilon)
                smooth = kv.smooth
                dw = kv.boundary_delta.weight if kv.boundary_delta else None
            else:  # Laplace: radial distance from the spatial part
                r = math.sqrt(x4.x**2 + x4.y**2 + x4.z**2)
                smooth = eval_laplace4(r)
        except PreMaxwellError as exc:
            flag = type(exc).__name__
        rows.append([x4.t, x4.x, x4.y, x4.z, tau, smooth, dw, flag])
    write_table(cfg, header, rows)
    return 0


def _pairing_comparison(src, sig, x4, cfg):
    """Closed two-spike pairing vs the τ-integral of the oracle against a
    Gaussian test function spanning both roots."""
    dec = delta_decomposition(src, sig, x4)
    mu = 0.5 * (dec.tau1 + dec.tau2)
    s = max(0.5 * (dec.tau2 - dec.tau1), 0.5)

    def phi(t):
        return math.exp(-0.5 * ((t - mu) / s) ** 2)

    closed = dec.coefficient * (phi(dec.tau1) + phi(dec.tau2))
    num = pairing_convolution(src, sig, x4, phi, cfg.epsilon, cfg.rho)
    return closed, num


def cmd_convolve(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    src = cfg.source()
    reg = classify(src.b, sig)
    if reg.zeta == 0:
        raise ConfigError("convolution undefined on the lightlike boundary")
    pts = grid_points(cfg)

    if reg.singular:
        if not getattr(args, "pairing", False):
            raise ConfigError(
                "delta-regime source: pointwise closed-vs-oracle comparison "
                "is meaningless; rerun with --pairing for the distributional "
                "pairing comparison")
        header = ["t", "x", "y", "z", "closed_pairing", "numeric_pairing",
                  "rel_error"]
        rows = []
        max_err = 0.0
        for x4, _tau in pts:
            try:
                closed, num = _pairing_comparison(src, sig, x4, cfg)
                err = abs(closed - num) / max(abs(closed), 1e-300)
                max_err = max(max_err, err)
                rows.append([x4.t, x4.x, x4.y, x4.z, closed, num, err])
            except (ComplexRoots, OnSingularSupport, DegenerateVelocity):
                rows.append([x4.t, x4.x, x4.y, x4.z, None, None, None])
        write_table(cfg, header, rows, [f"max_rel_error={FMT % max_err}"])
        return 0

    if getattr(args, "rho_sweep", False):
        header = ["t", "x", "y", "z", "tau", "rho", "a0", "a1", "a2", "a3",
                  "a5", "divergent_coefficient"]
        rows = []
        for x4, tau in pts:
            scale = max(x4.euclid(), abs(tau), 1.0)
            for r in rho_sequence(scale):
                res = convolve_ums(src, sig, x4, tau, cfg.epsilon, r)
                rows.append([x4.t, x4.x, x4.y, x4.z, tau, r,
                             *res.value.components(),
                             res.divergent_coefficient])
        write_table(cfg, header, rows)
        return 0

    header = ["t", "x", "y", "z", "tau",
              "a0_closed", "a1_closed", "a2_closed", "a3_closed", "a5_closed",
              "a0_oracle", "a1_oracle", "a2_oracle", "a3_oracle", "a5_oracle",
              "rel_error", "c1_ratio"]
    rows = []
    max_err = 0.0
    for x4, tau in pts:
        try:
            closed = eval_field(src, sig, x4, tau)
            assert isinstance(closed, SmoothField)
            ext = extrapolated_field(src, sig, x4, tau)
            cc = closed.a.components()
            oc = ext.value.components()
            scale = max(max(abs(c) for c in cc), 1e-300)
            err = max(abs(u - v) for u, v in zip(cc, oc)) / scale
            max_err = max(max_err, err)
            rows.append([x4.t, x4.x, x4.y, x4.z, tau, *cc, *oc, err,
                         ext.c1_ratio])
        except OnSingularSupport:
            rows.append([x4.t, x4.x, x4.y, x4.z, tau] + [float("nan")] * 12)
    write_table(cfg, header, rows, [f"max_rel_error={FMT % max_err}"])
    return 0


def cmd_trajectory(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    src = cfg.source()
    init = EventState(x=FourVector(*_parse_floats(args.init_x, 4, "init-x")),
                      u=FourVector(*_parse_floats(args.init_u, 4, "init-u")),
                      tau=args.tau0)
    header = ["tau", "t", "x", "y", "z", "ut", "ux", "uy", "uz", "msq_ratio"]

    def rows_for(h, n):
        traj = integrate_traj(src, sig, init, args.e0, args.mass, h, n)
        return traj

    comments = []
    if getattr(args, "h_sweep", False):
        # reference at h/8, compare endpoint errors at h and h/2
        n = args.steps
        ref = rows_for(args.h / 8.0, 8 * n)[-1]

        def endpoint_err(hh, nn):
            end = rows_for(hh, nn)[-1]
            dx = [a - b for a, b in zip(end.x.components(),
                                        ref.x.components())]
            du = [a - b for a, b in zip(end.u.components(),
                                        ref.u.components())]
            return max(max(abs(v) for v in dx), max(abs(v) for v in du))

        e1 = endpoint_err(args.h, n)
        e2 = endpoint_err(args.h / 2.0, 2 * n)
        ratio = e1 / e2 if e2 > 0 else float("inf")
        comments.append(f"h_sweep_error_h={FMT % e1}")
        comments.append(f"h_sweep_error_h2={FMT % e2}")
        comments.append(f"h_sweep_ratio={FMT % ratio} (16 = 4th order)")
    traj = rows_for(args.h, args.steps)
    rows = [[s.tau, *s.x.components(), *s.u.components(), mass_ratio_sq(s)]
            for s in traj]
    write_table(cfg, header, rows, comments or None)
    return 0


def cmd_residual(cfg: RunConfig, args) -> int:
    sig = cfg.signature()
    src = cfg.source()
    pts = grid_points(cfg)
    target = args.target

    if target == "field":
        reg = classify(src.b, sig)
        if not reg.smooth:
            raise ConfigError("residual target 'field' needs a smooth regime")

        def sampler(x4, tau):
            val = eval_field(src, sig, x4, tau)
            return 1.0 / val.denominator
    else:
        def sampler(x4, tau):
            return eval_unified(sig, x4, tau, cfg.epsilon).smooth

    header = ["t", "x", "y", "z", "tau", "residual", "normalized_residual",
              "order_estimate", "flag"]
    rows = []
    n_bad = 0
    for x4, tau in pts:
        try:
            rep = dalembert_residual(sampler, sig, x4, tau,
                                     h=getattr(args, "h_stencil", None))
            rows.append([x4.t, x4.x, x4.y, x4.z, tau, rep.residual,
                         rep.normalized_residual, rep.order_estimate, "ok"])
        except StencilOnSupport:
            n_bad += 1
            rows.append([x4.t, x4.x, x4.y, x4.z, tau] + [float("nan")] * 3 +
                        ["stencil_on_support"])
    if pts and n_bad == len(pts):
        raise AllSingular("all stencil points touch singular support")
    write_table(cfg, header, rows)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config file; flags override it")
    common.add_argument("--sigma5", type=int, choices=(1, -1))
    common.add_argument("--b", help="source 5-velocity 'b0,b1,b2,b3,b5'")
    common.add_argument("--offset", help="worldline offset 'z0,z1,z2,z3,tau0'")
    common.add_argument("--charge", type=float)
    common.add_argument("--grid", action="append",
                        help="axis=min:max:count (repeatable; axes t,x,y,z,tau)")
    common.add_argument("--epsilon", type=float)
    common.add_argument("--rho", type=float)
    common.add_argument("--width", type=float, help="mollifier width")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output path (default stdout)")

    p = argparse.ArgumentParser(
        prog="premaxwell",
        description="Fields of uniformly moving point sources in 5D "
                    "off-shell electrodynamics")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("regime", parents=[common],
                        help="velocity-regime classification report")
    sp.set_defaults(func=cmd_regime)

    sp = sub.add_parser("field", parents=[common],
                        help="sample the closed-form field on a grid")
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("concat", parents=[common],
                        help="concatenated (Maxwell) potential on a grid")
    sp.add_argument("--compare-numeric", action="store_true",
                    help="add numeric-integration columns and error")
    sp.set_defaults(func=cmd_concat)

    sp = sub.add_parser("gf", parents=[common],
                        help="evaluate a Green-function kernel on a grid")
    sp.add_argument("--family", required=True,
                    choices=[f.value for f in KernelFamily])
    sp.set_defaults(func=cmd_gf)

    sp = sub.add_parser("convolve", parents=[common],
                        help="closed form vs convolution oracle")
    sp.add_argument("--rho-sweep", action="store_true",
                    help="emit the regulator sequence per point")
    sp.add_argument("--pairing", action="store_true",
                    help="distributional pairing mode for delta-regime sources")
    sp.set_defaults(func=cmd_convolve)

    sp = sub.add_parser("trajectory", parents=[common],
                        help="test-particle run in a smooth-regime field")
    sp.add_argument("--init-x", default="0,2,0,0", help="t,x,y,z")
    sp.add_argument("--init-u", default="1,0,0,0", help="ut,ux,uy,uz")
    sp.add_argument("--tau0", type=float, default=0.0)
    sp.add_argument("--e0", type=float, default=0.1)
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--h-sweep", action="store_true",
                    help="report 4th-order convergence against an h/8 run")
    sp.set_defaults(func=cmd_trajectory)

    sp = sub.add_parser("residual", parents=[common],
                        help="finite-difference wave-equation residual")
    sp.add_argument("--target", choices=("field", "gf"), default="field")
    sp.add_argument("--h-stencil", type=float, default=None)
    sp.set_defaults(func=cmd_residual)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except AllSingular as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except QuadratureFailure as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 4
    except SingularSupportCrossed as exc:
        print(f"trajectory aborted: {exc}", file=sys.stderr)
        return 5
    except (LightlikeVelocity, PreMaxwellError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

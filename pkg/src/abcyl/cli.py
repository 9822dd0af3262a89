"""Command-line interface.

Commands: spectrum | persistent | packet | sweep | verify.

Data goes to stdout (or --out) in CSV or JSON; diagnostics go to
stderr only, so the data streams stay machine-clean and byte-identical
across runs with the same configuration.  Exit codes: 0 ok, 1 verify
failure, 2 config error, 3 regime error, 4 resolution error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import currents, fermi, verify
from .currents import GaussianPacket, MomentumRule, ResolutionError
from .params import (ConfigError, DimensionlessParams, parse_config_text,
                     resolve_params, validate_regime)
from .spectrum import energy_finite, energy_infinite

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_REGIME = 3
EXIT_RESOLUTION = 4

# e*c in C m/s and nm -> m, for --physical ampere output
_E_C = 1.602176634e-19 * 2.99792458e8
_HBARC_EV_NM = 197.3269804


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


class _Failure(Exception):
    def __init__(self, code: int, msg: str):
        self.code = code
        self.msg = msg
        super().__init__(msg)


_PARAM_FLAGS = {
    "mu": "mu", "nu": "nu", "beta": "beta", "alpha": "alpha",
    "mass_eV": "mass_eV", "radius_nm": "radius_nm",
    "length_nm": "length_nm", "b_field_T": "b_field_T",
    "fermi_eV": "fermi_eV",
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters (dimensionless or physical)")
    for flag in _PARAM_FLAGS:
        g.add_argument(f"--{flag.replace('_', '-')}", dest=f"par_{flag}",
                       type=float, default=None)


def _gather_params(args) -> DimensionlessParams:
    values: dict[str, float] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise _Failure(EXIT_CONFIG, f"cannot read config: {exc}")
    for key in _PARAM_FLAGS:
        v = getattr(args, f"par_{key}", None)
        if v is not None:
            values[key] = v
    try:
        return resolve_params(values)
    except (ConfigError, ValueError) as exc:
        raise _Failure(EXIT_CONFIG, str(exc))


def _emit(args, header: list[str], rows: list[list], json_payload=None) -> None:
    stream = io.StringIO()
    if args.format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    else:
        payload = json_payload
        if payload is None:
            payload = {"schema_version": SCHEMA_VERSION,
                       "columns": header,
                       "rows": rows}
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    data = stream.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def _half_odd_range(lmax: float):
    out = []
    lam = 0.5
    while lam <= lmax + 1e-12:
        out.extend([lam, -lam])
        lam += 1.0
    return sorted(out)


def cmd_spectrum(args) -> int:
    d = _gather_params(args)
    energy_scale = 1.0
    current_scale = 1.0
    if args.physical:
        energy_scale = 1.0 / d.radius_natural            # -> eV
        radius_m = d.radius_natural * _HBARC_EV_NM * 1e-9
        current_scale = _E_C / radius_m                  # -> A
    rows = []
    if args.geometry == "finite":
        if d.nu <= 0.0:
            raise _Failure(EXIT_REGIME, "finite spectrum needs nu > 0 "
                           "(or length_nm)")
        for n in range(1, args.nmax + 1):
            for lam in _half_odd_range(args.lmax):
                re_ = energy_finite(n, lam, d)
                ch = currents.chi(n, lam, d)
                rows.append([n, lam, re_ * energy_scale,
                             ch, ch / (2 * math.pi) * current_scale])
        rows.sort(key=lambda r: (r[2], r[0], r[1]))
        header = ["n", "lambda", "R_E", "chi", "R_Ic"]
    else:
        if args.k is None:
            raise _Failure(EXIT_CONFIG, "infinite geometry needs --k")
        lams = ([args.lam] if args.lam is not None
                else _half_odd_range(args.lmax))
        for lam in lams:
            re_ = energy_infinite(args.k, lam, d)
            ch = (lam + d.beta) / re_
            rows.append([args.k, lam, re_ * energy_scale,
                         ch, ch / (2 * math.pi) * current_scale])
        rows.sort(key=lambda r: (r[2], r[1]))
        header = ["k", "lambda", "R_E", "chi", "R_Ic"]
    _emit(args, header, rows)
    return EXIT_OK


def _report_dict(rep: fermi.PersistentReport) -> dict:
    return {
        "method": rep.method,
        "value": rep.value,
        "N_e": rep.N_e,
        "n_F": rep.n_F,
        "lambda_F": rep.lambda_F,
        "c": rep.c,
        "sum_lambda_n": rep.sum_lambda_n,
        "flags": sorted(rep.flags),
        "notes": list(rep.notes),
    }


def cmd_persistent(args) -> int:
    d = _gather_params(args)
    if d.nu <= 0.0:
        raise _Failure(EXIT_REGIME, "persistent currents need nu > 0")
    reports = fermi.persistent_all(d)
    if reports["exact"].N_e == 0:
        _diag("warning: empty Fermi sea (no state below the Fermi level)")
    names = sorted(reports)
    deviations = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            va, vb = reports[a].value, reports[b].value
            scale = max(abs(va), abs(vb))
            deviations[f"{a}_vs_{b}"] = (abs(va - vb) / scale if scale else 0.0)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {"mu": d.mu, "nu": d.nu, "beta": d.beta, "alpha": d.alpha},
        "regime": sorted(validate_regime(d).flags),
        "methods": {name: _report_dict(rep) for name, rep in reports.items()},
        "pairwise_relative_deviation": deviations,
    }
    header = ["method", "value", "N_e", "n_F", "lambda_F", "c"]
    rows = [[r.method, r.value, r.N_e, r.n_F,
             "" if r.lambda_F is None else r.lambda_F,
             "" if r.c is None else r.c]
            for r in (reports[n] for n in names)]
    _emit(args, header, rows, json_payload=payload)
    return EXIT_OK


def cmd_packet(args) -> int:
    d = _gather_params(args)
    if d.nu != 0.0:
        raise _Failure(EXIT_REGIME, "packet states live on the infinite "
                       "cylinder (nu must be 0)")
    packet = GaussianPacket(lam=args.lam, k0=args.k0, width=args.width,
                            weight_plus=args.mix_plus,
                            weight_minus=args.mix_minus)
    rule = MomentumRule(order=args.korder)
    zs = [args.zmin + i * (args.zmax - args.zmin) / (args.zsteps - 1)
          for i in range(args.zsteps)]
    try:
        direct = currents.longitudinal_current_packet_direct(
            packet, d, args.t, zs, rule)
        formula = currents.longitudinal_current_packet_formula(
            packet, d, args.t, zs, rule)
    except ResolutionError as exc:
        raise _Failure(EXIT_RESOLUTION, str(exc))
    ric = currents.circular_current_packet(packet, d, rule)
    re_ = currents.packet_energy(packet, d, rule)
    pol = currents.packet_polarization(packet, rule)
    window = abs(args.t) + 8.0 / args.width + max(abs(args.zmin), abs(args.zmax))
    norm = currents.packet_norm(packet, d, args.t, window, rule,
                                z_order=args.quad_order or 1200)
    header = ["row", "z", "I3_direct", "I3_formula", "difference"]
    rows = [["I3", z, float(a), float(b), float(a - b)]
            for z, a, b in zip(zs, direct, formula)]
    rows.append(["R_Ic", "", ric, "", ""])
    rows.append(["R_E", "", re_, "", ""])
    rows.append(["polarization", "", pol, "", ""])
    rows.append(["norm", "", norm, "", ""])
    _emit(args, header, rows)
    return EXIT_OK


_SWEEP_PARAMS = ("beta", "mu", "nu", "alpha", "lambda", "n")


def cmd_sweep(args) -> int:
    base = _gather_params(args)
    if args.param not in _SWEEP_PARAMS:
        raise _Failure(EXIT_CONFIG, f"unknown sweep parameter {args.param!r}")
    if args.param == "lambda":
        lam = math.floor(args.start - 0.5) + 0.5
        if lam < args.start:
            lam += 1.0
        points = []
        while lam <= args.stop + 1e-12:
            points.append(lam)
            lam += 1.0
    elif args.param == "n":
        points = list(range(max(1, math.ceil(args.start)),
                            math.floor(args.stop) + 1))
    else:
        if args.steps < 2:
            raise _Failure(EXIT_CONFIG, "sweep needs steps >= 2")
        if not args.stop > args.start:
            raise _Failure(EXIT_CONFIG, "sweep needs stop > start")
        if args.scale == "log":
            if args.start <= 0:
                raise _Failure(EXIT_CONFIG, "log sweep needs start > 0")
            lo, hi = math.log(args.start), math.log(args.stop)
            points = [math.exp(lo + i * (hi - lo) / (args.steps - 1))
                      for i in range(args.steps)]
        else:
            points = [args.start + i * (args.stop - args.start) / (args.steps - 1)
                      for i in range(args.steps)]

    def at(value: float) -> DimensionlessParams:
        kw = {"mu": base.mu, "nu": base.nu, "beta": base.beta,
              "alpha": base.alpha, "radius_natural": base.radius_natural}
        if args.param not in ("lambda", "n"):
            kw[args.param] = value
        return DimensionlessParams(**kw)

    rows = []
    for x in points:
        d = at(x)
        lam = x if args.param == "lambda" else args.lam
        n = x if args.param == "n" else args.n
        if args.observable == "chi":
            y = currents.chi(n, lam, d)
        elif args.observable == "energy":
            y = energy_finite(n, lam, d)
        elif args.observable == "persistent_exact":
            y = fermi.persistent_exact(d).value
        elif args.observable == "persistent_linearized":
            y = fermi.persistent_linearized(d).value
        else:
            raise _Failure(EXIT_CONFIG, f"unknown observable {args.observable!r}")
        rows.append([x, y])
    _emit(args, [args.param, args.observable], rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suites(seed=args.seed, fault=args.fault)
    ok = all(r.passed for r in results)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "passed": ok,
        "suites": [r.to_dict() for r in results],
    }
    header = ["suite", "tolerance", "worst", "passed"]
    rows = [[r.suite, r.tolerance, r.worst, r.passed] for r in results]
    _emit(args, header, rows, json_payload=payload)
    return EXIT_OK if ok else EXIT_VERIFY


def _add_global_flags(p: argparse.ArgumentParser, top: bool) -> None:
    # the same flags live on the top parser (with real defaults) and on
    # every subparser (defaults suppressed), so they work in either
    # position without the subparser default clobbering a top-level value
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--config", default=d(None), help="key=value parameter file")
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    p.add_argument("--out", default=d(None),
                   help="write data here instead of stdout")
    p.add_argument("--quad-order", type=int, default=d(None),
                   help="override the z-axis Gauss-Legendre order")
    p.add_argument("--seed", type=int, default=d(0),
                   help="seed for randomized residual sample points")
    p.add_argument("--physical", action="store_true", default=d(False),
                   help="emit energies in eV and currents in amperes")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="abcyl",
        description="Relativistic currents on ideal Aharonov-Bohm cylinders")
    _add_global_flags(p, top=True)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="mode energies and circular currents")
    _add_global_flags(sp, top=False)
    _add_param_flags(sp)
    sp.add_argument("--geometry", choices=("finite", "infinite"), default="finite")
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--lmax", type=float, default=2.5)
    sp.add_argument("--k", type=float, default=None)
    sp.add_argument("--lambda", dest="lam", type=float, default=None)
    sp.set_defaults(func=cmd_spectrum)

    pp = sub.add_parser("persistent", help="T=0 persistent current, all methods")
    _add_global_flags(pp, top=False)
    _add_param_flags(pp)
    pp.set_defaults(func=cmd_persistent)

    kp = sub.add_parser("packet", help="packet currents on the infinite cylinder")
    _add_global_flags(kp, top=False)
    _add_param_flags(kp)
    kp.add_argument("--k0", type=float, default=0.0)
    kp.add_argument("--width", type=float, default=1.0)
    kp.add_argument("--lambda", dest="lam", type=float, default=0.5)
    kp.add_argument("--mix-plus", type=float, default=1.0)
    kp.add_argument("--mix-minus", type=float, default=0.0)
    kp.add_argument("--t", type=float, default=0.0)
    kp.add_argument("--zmin", type=float, default=-5.0)
    kp.add_argument("--zmax", type=float, default=5.0)
    kp.add_argument("--zsteps", type=int, default=21)
    kp.add_argument("--korder", type=int, default=400)
    kp.set_defaults(func=cmd_packet)

    sw = sub.add_parser("sweep", help="one-parameter scan of an observable")
    _add_global_flags(sw, top=False)
    _add_param_flags(sw)
    sw.add_argument("--param", required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--steps", type=int, default=11)
    sw.add_argument("--scale", choices=("linear", "log"), default="linear")
    sw.add_argument("--observable", default="chi")
    sw.add_argument("--n", type=int, default=1)
    sw.add_argument("--lambda", dest="lam", type=float, default=0.5)
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run every invariant suite")
    _add_global_flags(vf, top=False)
    vf.add_argument("--fault", default=None,
                    help="test-only fault injection, e.g. energy-off-by-1e-3")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        _diag(f"error: {exc.msg}")
        return exc.code
    except ResolutionError as exc:
        _diag(f"error: {exc}")
        return EXIT_RESOLUTION
    except (ConfigError, ValueError) as exc:
        _diag(f"error: {exc}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

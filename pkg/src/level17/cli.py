"""Command line entry point: ``level17 <command> ...``.

Exit status is 0 when every requested check passes, 1 when a mathematical
check fails and 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import mpmath

from . import catalog as cat_mod
from . import modeq, pi_series, recurrence, singular

ENV_DIGITS = "LEVEL17_DIGITS"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    order: int | None = None  # None: each check uses its own default
    digits: int = 30
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.order is not None and self.order < 10:
            raise UsageError("truncation order must be at least 10")
        if self.digits < 10:
            raise UsageError("precision must be at least 10 digits")
        if self.fmt not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")


def default_digits() -> int:
    raw = os.environ.get(ENV_DIGITS)
    if raw is None:
        return 30
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_DIGITS} must be an integer, got {raw!r}") from None


# -- individual checks ---------------------------------------------------------
#
# Each check is a top-level function (so it can run in a worker process) that
# returns a JSON-ready dict with at least "check" and "status".

IDENTITY_ORDER = 150
ODE_ORDER = 60
PSI_ORDER = 120
COEFF_COUNT = 50


def _identity_check(name: str, order: int | None) -> dict:
    required = cat_mod.IDENTITIES[name][2]
    trunc = order if order is not None else max(IDENTITY_ORDER, required + 1 if required else 0)
    return cat_mod.verify_identity(name, trunc).to_json()


def _ode_check(order: int | None) -> dict:
    trunc = order if order is not None else ODE_ORDER
    if trunc < 30:
        return {"check": "z-ode", "status": "INSUFFICIENT_ORDER", "trunc": trunc, "required_order": 30}
    return cat_mod.verify_ode(trunc).to_json()


def _coeff_check(order: int | None) -> dict:
    N = COEFF_COUNT if order is None else order
    rec = recurrence.gen_A(N)
    comp = recurrence.solve_A_by_composition(N)
    ok = rec.values == comp.values and rec.all_integral()
    return {
        "check": "A_n recurrence vs composition",
        "count": N + 1,
        "integral": rec.all_integral(),
        "first": [str(v) for v in rec.values[:6]],
        "status": "PASS" if ok else "FAIL",
    }


def _radius_check(digits: int) -> dict:
    rad = recurrence.radius(max(digits, 60))
    with mpmath.workdps(max(digits, 60) + 20):
        resid = abs(mpmath.polyval(list(reversed(recurrence.RADIUS_POLY)), rad))
    ok = mpmath.nstr(rad, 4) == "0.05122" and resid < mpmath.mpf(10) ** -50
    return {"check": "radius of convergence", "radius": mpmath.nstr(rad, 30),
            "residual": mpmath.nstr(resid, 5), "status": "PASS" if ok else "FAIL"}


def _psi_check(n: int, order: int | None) -> dict:
    trunc = order if order is not None else PSI_ORDER
    if trunc < 20:
        return {"check": f"psi{n}", "status": "INSUFFICIENT_ORDER", "trunc": trunc, "required_order": 20}
    return modeq.verify_psi(n, trunc).to_json()


def _psi2_derivation_check() -> dict:
    derived = modeq.derive_psi2()
    return {"check": "psi2 derivation by pole elimination", "matches_stored": derived == modeq.PSI2,
            "status": "PASS" if derived == modeq.PSI2 else "FAIL"}


def _diagonal2_check() -> dict:
    d = modeq.diagonal(2)
    # -X^2 (X - 1)(X + 1)(9X^2 + 24X - 1), lowest degree first
    want = {((0, 1), 2), ((-1, 1), 1), ((1, 1), 1), ((-1, 24, 9), 1)}
    ok = d.content == -1 and set(d.factors) == want and d.expand() == d.coeffs
    return {"check": "Psi_2(X,X) factorization", **d.to_json(), "status": "PASS" if ok else "FAIL"}


def _singular_check(index: int, digits: int) -> dict:
    row = (singular.SINGULAR_ROWS + (singular.ELLIPTIC_ROW,))[index]
    cert = singular.certify_value(row.form, row.claimed, row.n, max(digits, 60))
    return {"check": f"singular value {row.form}", **cert.to_json()}


def _transform_check() -> dict:
    reports = singular.verify_table2()
    return {"check": "Delta_n^*(17) elements", "rows": [r.to_json() for r in reports],
            "status": "PASS" if all(r.passed for r in reports) else "FAIL"}


def _pi_check(index: int, digits: int) -> dict:
    row = pi_series.SERIES_ROWS[index]
    res = pi_series.check_spec(row.spec(), digits)
    return {"check": f"pi series {row.label}", **res.to_json()}


def _level5_check(digits: int) -> dict:
    res = pi_series.check_spec(pi_series.LEVEL5_SERIES, digits)
    return {"check": "pi series level5", **res.to_json()}


def _bc_check(index: int) -> dict:
    cfg = pi_series.CONFIGS[index]
    results = pi_series.rebuild_published((cfg,))
    if not results:
        return {"check": f"B,C rebuild {cfg.label}", "status": "SKIPPED"}
    r = results[0]
    return {"check": f"B,C rebuild {cfg.label}", **r.to_json(), "status": "PASS" if r.matches_published else "FAIL"}


def build_checks(cfg: RunConfig) -> list[tuple]:
    checks: list[tuple] = [(_identity_check, name, cfg.order) for name in cat_mod.IDENTITIES]
    checks.append((_ode_check, cfg.order))
    checks.append((_coeff_check, None))
    checks.append((_radius_check, cfg.digits))
    checks += [(_psi_check, n, cfg.order) for n in (2, 3)]
    checks += [(_psi2_derivation_check,), (_diagonal2_check,)]
    checks += [(_singular_check, i, cfg.digits) for i in range(len(singular.SINGULAR_ROWS) + 1)]
    checks.append((_transform_check,))
    checks += [(_pi_check, i, cfg.digits) for i in range(len(pi_series.SERIES_ROWS))]
    checks.append((_level5_check, cfg.digits))
    checks += [(_bc_check, i) for i in range(len(pi_series.CONFIGS))]
    return checks


def _run(spec):
    fn, *args = spec
    t0 = time.perf_counter()
    try:
        out = fn(*args)
    except Exception as exc:  # a crashing check is a failure, not an abort
        out = {"check": fn.__name__, "status": "ERROR", "error": f"{type(exc).__name__}: {exc}"}
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def verify_all(cfg: RunConfig) -> dict:
    checks = build_checks(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run, checks))
    else:
        results = [_run(c) for c in checks]
    passed = all(r["status"] == "PASS" for r in results)
    return {"status": "PASS" if passed else "FAIL", "checks": results}


# -- output ---------------------------------------------------------------------


def _rows_for_table(payload) -> list[dict]:
    if isinstance(payload, dict) and "checks" in payload:
        return payload["checks"]
    if isinstance(payload, list):
        return payload
    return [payload]


def _flatten(row):
    # lists of scalars (coefficients, forms) survive as one space-separated cell
    if not isinstance(row, dict):
        return row
    flat = {"check": row.get("check") or row.get("name") or row.get("label") or ""}
    for k, v in row.items():
        if k == "check":
            continue
        if isinstance(v, list) and not any(isinstance(e, (dict, list)) for e in v):
            v = " ".join(map(str, v))
        flat[k] = v
    return flat


def emit(payload, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
        return
    rows = [_flatten(r) for r in _rows_for_table(payload)]
    if fmt == "csv":
        keys: list[str] = []
        for r in rows:
            for k, v in r.items():
                if k not in keys and not isinstance(v, (dict, list)):
                    keys.append(k)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: r.get(k, "") for k in keys})
        out.write(buf.getvalue())
        return
    for r in rows:
        label = r["check"]
        status = r.get("status", "")
        extra = ", ".join(f"{k}={v}" for k, v in r.items()
                          if k not in ("check", "name", "label", "status") and not isinstance(v, (dict, list)))
        out.write(f"{status:<20} {label}  {extra}".rstrip() + "\n")


def _status_code(payload) -> int:
    rows = _rows_for_table(payload)
    statuses = [r.get("status") for r in rows if isinstance(r, dict) and "status" in r]
    if isinstance(payload, dict) and "status" in payload:
        statuses.append(payload["status"])
    return EXIT_OK if all(s == "PASS" for s in statuses) else EXIT_FAIL


# -- commands -------------------------------------------------------------------


def cmd_expand(args, cfg):
    if args.name not in cat_mod.NAMES:
        raise UsageError(f"unknown series {args.name!r}; choose from {', '.join(cat_mod.NAMES)}")
    s = cat_mod.build(args.name, cfg.order or 20)
    return s.to_json(), EXIT_OK


def cmd_verify(args, cfg):
    names = list(cat_mod.IDENTITIES) + ["z-ode", "z-as-series-in-x"]
    if args.identity == "all":
        chosen = names
    elif args.identity in names:
        chosen = [args.identity]
    else:
        raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(names)} or all")
    out = []
    for name in chosen:
        if name == "z-ode":
            out.append(_ode_check(cfg.order))
        elif name == "z-as-series-in-x":
            out.append(recurrence.verify_composition(cfg.order or 60).to_json())
        else:
            out.append(_identity_check(name, cfg.order))
    payload = out[0] if len(out) == 1 else out
    return payload, _status_code(payload)


def cmd_coeffs(args, cfg):
    N = args.count
    seq = recurrence.gen_A(N)
    payload = {
        "A": [str(v) for v in seq.values],
        "integral": seq.all_integral(),
        "radius": mpmath.nstr(recurrence.radius(cfg.digits), cfg.digits),
    }
    if args.check:
        comp = recurrence.solve_A_by_composition(N)
        payload["matches_composition"] = comp.values == seq.values
        payload["status"] = "PASS" if payload["matches_composition"] and seq.all_integral() else "FAIL"
    return payload, _status_code(payload) if args.check else EXIT_OK


def cmd_modeq(args, cfg):
    if args.action == "verify":
        payload = _psi_check(args.n, cfg.order)
        return payload, _status_code(payload)
    if args.action == "derive":
        if args.method == "poles":
            if args.n != 2:
                raise UsageError("pole elimination is implemented for n = 2 only")
            d = modeq.derive_psi2_details(cfg.order or 40)
            poly = d.psi
        else:
            poly = modeq.derive_psi_kernel(args.n)
        stored = args.n in modeq.available_degrees()
        payload = {"n": args.n, "terms": poly.to_json(), "symmetric": poly.is_symmetric()}
        if stored:
            payload["matches_stored"] = poly == modeq.psi(args.n)
        return payload, EXIT_OK if payload.get("matches_stored", True) else EXIT_FAIL
    if args.action == "diagonal":
        return {"n": args.n, **modeq.diagonal(args.n).to_json()}, EXIT_OK
    raise UsageError(f"unknown modeq action {args.action!r}")


def cmd_singular(args, cfg):
    if args.action == "eval":
        if not args.form:
            raise UsageError("singular eval needs --form a,b,c")
        try:
            form = singular.BQForm.parse(args.form)
        except ValueError as exc:
            raise UsageError(f"bad form: {exc}") from None
        xv = singular.eval_x(singular.tau_of(form, cfg.digits + 10), cfg.digits, trunc=cfg.order)
        return {"form": form.to_json(), "disc": form.disc, **xv.to_json(cfg.digits)}, EXIT_OK
    if args.action == "certify-table1":
        rows = [_singular_check(i, cfg.digits) for i in range(len(singular.SINGULAR_ROWS) + 1)]
        return rows, _status_code(rows)
    if args.action == "table2":
        payload = _transform_check()
        return payload, _status_code(payload)
    if args.action == "scan":
        if args.d is None:
            raise UsageError("singular scan needs -d D")
        entries = singular.class_scan(args.d, cfg.digits)
        return {"d": args.d, "class_number": singular.class_number(args.d),
                "entries": [e.to_json() for e in entries]}, EXIT_OK
    raise UsageError(f"unknown singular action {args.action!r}")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_pi(args, cfg):
    if args.action == "verify":
        rows = pi_series.SERIES_ROWS
        if args.row is not None:
            if not 1 <= args.row <= len(rows):
                raise UsageError(f"--row must be between 1 and {len(rows)}")
            rows = (rows[args.row - 1],)
        res = [r.to_json() for r in pi_series.verify_corollary53(cfg.digits, rows)]
        if args.row is None:
            res.append(_level5_check(cfg.digits))
        return res, _status_code(res)
    if args.action == "eval":
        if not args.spec:
            raise UsageError("pi eval needs --spec file.json")
        try:
            spec = pi_series.PiSeriesSpec.from_json(_load_json(args.spec))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad series spec: {exc}") from None
        sv = pi_series.eval_series(spec, cfg.digits)
        with mpmath.workdps(cfg.digits + 10):
            inv_pi = 1 / pi_series.pi_chudnovsky(cfg.digits + 10)
            err = abs(sv.value - inv_pi)
        return {
            "value": mpmath.nstr(sv.value.real, cfg.digits),
            "imag": mpmath.nstr(sv.value.imag, 5),
            "terms": sv.terms,
            "tail_estimate": mpmath.nstr(sv.tail_estimate, 5),
            "distance_to_inverse_pi": mpmath.nstr(err, 5),
        }, EXIT_OK
    if args.action == "bc":
        if args.config:
            # a built-in configuration label, or a JSON file with an explicit input
            named = {c.label: c for c in pi_series.CONFIGS}
            if args.config in named:
                inp = pi_series.bc_input(named[args.config], cfg.digits)
            else:
                data = _load_json(args.config)
                try:
                    inp = pi_series.Theorem52Input.from_json(data)
                except (KeyError, ValueError) as exc:
                    raise UsageError(f"bad configuration: {exc}") from None
            B, C = pi_series.compute_BC(inp)
            return {"check": args.config, "input": inp.to_json(), "B": B.to_json(), "C": C.to_json(),
                    "B_text": repr(B), "C_text": repr(C), "status": "PASS"}, EXIT_OK
        res = [r.to_json() for r in pi_series.rebuild_published()]
        for r in res:
            r["status"] = "PASS" if r["matches_published"] else "FAIL"
        return res, _status_code(res)
    raise UsageError(f"unknown pi action {args.action!r}")


def cmd_verify_all(args, cfg):
    payload = verify_all(cfg)
    return payload, _status_code(payload)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=argparse.SUPPRESS, help="q-expansion truncation order")
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS,
                        help=f"decimal precision (default 30, or ${ENV_DIGITS})")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for verify-all")
    common.add_argument("--row", type=int, default=argparse.SUPPRESS, help="series row (1-based) for pi verify")

    p = argparse.ArgumentParser(prog="level17", parents=[common],
                                description="Level 17 modular functions and series for 1/pi.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="print the q-expansion of a named series")
    s.add_argument("name")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", parents=[common], help="check a q-series identity")
    s.add_argument("identity")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("coeffs", parents=[common], help="A_n from the recurrence")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--check", action="store_true", help="compare with the composition oracle")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("modeq", parents=[common], help="modular equations Psi_n")
    s.add_argument("action", choices=("verify", "derive", "diagonal"))
    s.add_argument("-n", type=int, default=2)
    s.add_argument("--method", choices=("kernel", "poles"), default="kernel")
    s.set_defaults(func=cmd_modeq)

    s = sub.add_parser("singular", parents=[common], help="singular values of x")
    s.add_argument("action", choices=("eval", "certify-table1", "table2", "scan"))
    s.add_argument("--form")
    s.add_argument("-d", type=int)
    s.set_defaults(func=cmd_singular)

    s = sub.add_parser("pi", parents=[common], help="series for 1/pi")
    s.add_argument("action", choices=("verify", "eval", "bc"))
    s.add_argument("--spec")
    s.add_argument("--config")
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("verify-all", parents=[common], help="run every check")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        digits = getattr(args, "digits", None)
        cfg = RunConfig(
            order=getattr(args, "order", None),
            digits=digits if digits is not None else default_digits(),
            fmt=getattr(args, "fmt", "json"),
            jobs=getattr(args, "jobs", 1),
        )
        args.row = getattr(args, "row", None)
        payload, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"level17: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except singular.InsufficientOrderError as exc:
        print(f"level17: insufficient order: {exc}", file=sys.stderr)
        return EXIT_FAIL
    emit(payload, cfg.fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``fgltheta {verify,theta,coefficients,velu,lubin-tate}``.

Exit codes: 0 all checks pass, 1 some check fails, 2 invalid configuration or
unwritable output, 3 internal mismatch (two computations that must agree did
not).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from fgltheta.ellfgl import FormalGroupLaw, InternalMismatch, canonical_isogeny_check, residual_v1_v2
from fgltheta.realization import (
    LubinTateModel,
    additive_law,
    check_realization_problem,
    gamma13_law,
    height_diagnostics,
    lubin_tate_invariants,
    multiplicative_law,
    orbit_basis_report,
    substituted_curve_law,
)
from fgltheta.theta import DEFAULT_ORDER, NEGATIVE_CONTROL, theta_pipeline

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_FGL_ORDER = 12
ASSOCIATIVITY_ORDER = 8
HEIGHT_ORDER = 6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    digits: int
    order: int = DEFAULT_ORDER
    fgl_order: int = DEFAULT_FGL_ORDER
    fmt: str = "text"
    out: str | None = None
    inject_negative_control: bool = False
    series: str = "c"

    def validate(self):
        if self.digits < 8:
            raise ConfigError(f"--digits must be >= 8 (got {self.digits})")
        if self.order < 2:
            raise ConfigError(f"--order must be >= 2 (got {self.order})")
        if self.fgl_order < 5:
            raise ConfigError(f"--fgl-order must be >= 5 (got {self.fgl_order})")
        return self


def default_digits() -> int:
    raw = os.environ.get("FGLTHETA_DEFAULT_DIGITS", "64")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"FGLTHETA_DEFAULT_DIGITS is not an integer: {raw!r}") from None


# ---------------------------------------------------------------------------
# checks


def _check(name, claim, passed, detail):
    return {"name": name, "claim": claim, "status": "pass" if passed else "fail", "detail": detail}


def _theta(cfg: RunConfig):
    return theta_pipeline(
        cfg.digits, cfg.order, NEGATIVE_CONTROL if cfg.inject_negative_control else None
    )


def _theta_check(cfg):
    rep = _theta(cfg)
    detail = {
        "verdict": rep.verdict,
        "negative_powers": [[k, v.signed()] for k, v in rep.negative_powers],
        "stray_exponents": [[k, v.signed()] for k, v in rep.stray_exponents],
        "odd_degrees": rep.odd_degrees,
    }
    claim = "psi^2(x^-1) lies in Z_2[x^-1]^ and psi^2(s) - s^2 is even, so theta preserves the subring"
    return _check("theta_stability", claim, rep.stable, detail), rep


def _curve_law_checks(cfg):
    A, F = gamma13_law(cfg.fgl_order)
    out = []
    rep = check_realization_problem(A, F)
    out.append(
        _check(
            "realization_axioms",
            "Z_(2)[a,b] with the law of y^2 + a xy + b y = x^3 satisfies the four axioms",
            rep.passed,
            rep.to_dict(),
        )
    )
    v1, v2 = residual_v1_v2(F)
    out.append(
        _check(
            "v1_v2_residues",
            "v1 = a mod 2 and v2 = b mod (2, v1)",
            v1 == A.gen("a") and v2 == A.gen("b"),
            {"v1": str(v1), "v2": str(v2)},
        )
    )
    additive = check_realization_problem(A, FormalGroupLaw.additive(A, cfg.fgl_order))
    A0, F0 = gamma13_law(cfg.fgl_order, ("a",))
    b_zero = check_realization_problem(A0, F0)
    out.append(
        _check(
            "realization_negative_controls",
            "the additive law and the b = 0 specialization are rejected",
            not additive.passed and not b_zero.passed,
            {"additive": additive.verdicts, "b_zero": b_zero.verdicts},
        )
    )
    n = min(cfg.fgl_order, ASSOCIATIVITY_ORDER)
    left, right = F.unit_residual()
    unit = left.is_zero() and right.is_zero()
    comm = F.commutativity_residual().is_zero()
    assoc = not F.associativity_residual(n)
    out.append(
        _check(
            "fgl_axioms",
            "the curve law is unital, commutative and associative",
            unit and comm and assoc,
            {"unit": unit, "commutative": comm, f"associative_below_degree_{n}": assoc},
        )
    )
    return out


def _lubin_tate_checks(cfg):
    B = LubinTateModel(8, 8)
    inv = lubin_tate_invariants(B)
    orbit = orbit_basis_report(B)
    heights = {
        "curve_law": height_diagnostics(B, substituted_curve_law(B, HEIGHT_ORDER)),
        "multiplicative": height_diagnostics(B, multiplicative_law(B, HEIGHT_ORDER)),
        "additive": height_diagnostics(B, additive_law(B, HEIGHT_ORDER)),
    }
    expected = {"curve_law": (True, True), "multiplicative": (True, False), "additive": (False, False)}
    return [
        _check(
            "lubin_tate_invariants",
            "the G-fixed degree-0 part of the Lubin-Tate ring is Z_2[[u1^3]]",
            inv.matches,
            inv.to_dict(),
        ),
        _check(
            "orbit_basis",
            "the six G-translates of omega (1 + u + u^2) are independent mod (2, u1)",
            orbit["total_independent"] and orbit["degreewise_spanning"],
            orbit,
        ),
        _check(
            "height_diagnostics",
            "the curve law has height 1 away from u1 = 0 and height 2 on it; controls behave",
            heights == expected,
            {k: list(v) for k, v in heights.items()},
        ),
    ]


def _velu_check(cfg):
    r = canonical_isogeny_check(8, 32)
    ok = all(r[k] for k in ("kernel_on_curve", "kernel_two_torsion", "exact_match", "two_adic_match"))
    return _check(
        "canonical_isogeny",
        "the 2-isogeny with kernel (-d^-2, -d^-3) has codomain y^2 + (t^2 + 3d - t d^2) xy + y = x^3",
        ok,
        r,
    )


def run_verify(cfg):
    checks = []
    checks += _curve_law_checks(cfg)
    checks += _lubin_tate_checks(cfg)
    checks.append(_velu_check(cfg))
    theta_check, theta_rep = _theta_check(cfg)
    checks.append(theta_check)
    passed = all(c["status"] == "pass" for c in checks)
    report = {
        "command": "verify",
        "certificate": {"padic": cfg.digits, "order": cfg.order, "fgl_order": cfg.fgl_order},
        "negative_control_injected": cfg.inject_negative_control,
        "verdict": theta_rep.verdict,
        "passed": passed,
        "checks": checks,
    }
    return report, EXIT_OK if passed else EXIT_FAIL


def run_theta(cfg):
    rep = _theta(cfg)
    return rep.to_dict(), EXIT_OK if rep.stable else EXIT_FAIL


def run_velu(cfg):
    check = _velu_check(cfg)
    return {"command": "velu", "checks": [check]}, EXIT_OK if check["status"] == "pass" else EXIT_FAIL


def run_lubin_tate(cfg):
    checks = _lubin_tate_checks(cfg)
    ok = all(c["status"] == "pass" for c in checks)
    return {"command": "lubin-tate", "checks": checks}, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify": run_verify,
    "theta": run_theta,
    "coefficients": run_theta,
    "velu": run_velu,
    "lubin-tate": run_lubin_tate,
}


# ---------------------------------------------------------------------------
# formatting


def _csv(report, series):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "coefficient_signed"])
    for row in report["series"][series]:
        w.writerow([row["degree"], row["signed"]])
    return buf.getvalue()


def _text_checks(report):
    lines = []
    if "certificate" in report:
        lines.append("certificate: " + ", ".join(f"{k}={v}" for k, v in report["certificate"].items()))
    for c in report["checks"]:
        lines.append(f"[{c['status'].upper()}] {c['name']}: {c['claim']}")
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def _text_series(report):
    p = report["precision"]
    lines = [f"variable s = x^-1; exact modulo (2^{p['padic']}, s^{p['order']})"]
    for name in ("c", "psi2", "theta"):
        rows = report["series"][name]
        body = ", ".join(f"{r['signed']}" for r in rows) if rows else "(undefined)"
        lines.append(f"{name}: [{body}]")
    res = report["residuals"]
    lines.append(f"negative powers: {res['negative_powers']}")
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def render(cfg, report):
    if cfg.fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.fmt == "csv":
        if "series" not in report:
            raise ConfigError(f"--format csv is only available for theta/coefficients, not {cfg.command}")
        return _csv(report, cfg.series)
    return _text_checks(report) if "checks" in report else _text_series(report)


def build_parser():
    p = argparse.ArgumentParser(prog="fgltheta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--digits", type=int, default=None, help="2-adic precision N (default 64)")
        s.add_argument("--order", type=int, default=DEFAULT_ORDER, help="s-adic order K")
        s.add_argument("--fgl-order", type=int, default=DEFAULT_FGL_ORDER, help="formal group law order")
        s.add_argument("--format", choices=("text", "json", "csv"), default="text", dest="fmt")
        s.add_argument("--out", default=None, help="write the report here instead of stdout")
        s.add_argument("--inject-negative-control", action="store_true")
        s.add_argument("--series", choices=("c", "psi2", "theta"), default="c", help="table for csv output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            digits=args.digits if args.digits is not None else default_digits(),
            order=args.order,
            fgl_order=args.fgl_order,
            fmt=args.fmt,
            out=args.out,
            inject_negative_control=args.inject_negative_control,
            series=args.series,
        ).validate()
        if cfg.fmt == "csv" and cfg.command not in ("theta", "coefficients"):
            raise ConfigError(f"--format csv is only available for theta/coefficients, not {cfg.command}")
        report, code = COMMANDS[cfg.command](cfg)
        text = render(cfg, report)
    except ConfigError as exc:
        print(f"fgltheta: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InternalMismatch as exc:
        print(f"fgltheta: internal mismatch: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"fgltheta: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: identity suites, tables, bound scans, symbolic checks.

Output is deterministic byte-for-byte: floats are rendered in scientific
notation with 17 significant digits, JSON objects keep fixed key order,
and lines end with LF.  Exit codes: 0 all checks passed, 1 at least one
check failed, 2 usage or parameter error.

The random-state seed defaults to --seed and is overridden by the
DEFORMALG_SEED environment variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from . import fockrep, gup, symorder
from .spectral import CaseId, SpectralFunction, eval_K, make_case

__all__ = ["main"]

EXACT_TOL = 1e-14
ROBERTSON_STATES = 200

_CLI_CASES = (
    CaseId.CLASSICAL,
    CaseId.ARIK_COON,
    CaseId.MACFARLANE_BIEDENHARN,
    CaseId.CHUNG,
    CaseId.BORZOV,
    CaseId.NONLINEAR,
)


class UsageError(ValueError):
    """Parameter or range error reported with exit code 2."""


# ---------------------------------------------------------------------------
# deterministic formatting


def fmt_float(x: float) -> str:
    """Scientific notation with 17 significant digits; -0.0 normalized."""
    if x == 0.0:
        x = 0.0
    return f"{x:.16e}"


def _json_text(value, level: int = 0) -> str:
    pad = "  " * level
    inner = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f"{inner}{json.dumps(k)}: {_json_text(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rows = [f"{inner}{_json_text(v, level + 1)}" for v in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value)
    if value is None:
        return "null"
    return json.dumps(value)


def render_json(payload: dict) -> str:
    return _json_text(payload) + "\n"


def render_csv(header: list, rows: list) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "wb") as fh:
            fh.write(text.encode("utf-8"))


def _param_columns(K: SpectralFunction) -> list:
    return [
        fmt_float(getattr(K, name)) if getattr(K, name) is not None else ""
        for name in ("q", "alpha", "beta", "gamma")
    ]


# ---------------------------------------------------------------------------
# verification suite


def _diag(values) -> np.ndarray:
    return np.diag(np.asarray(values, dtype=complex))


def _check(name, A, B, margin, tol) -> fockrep.IdentityReport:
    return fockrep.verify_window(A, B, margin=margin, tol=tol, name=name)


def _exact_check(name, A, B) -> fockrep.IdentityReport:
    residual = fockrep.scaled_max_residual(A, B, margin=0)
    return fockrep.IdentityReport(
        name=name,
        window=A.shape[0],
        max_abs_residual=residual,
        tol=EXACT_TOL,
        passed=residual <= EXACT_TOL,
    )


def run_verify_checks(K: SpectralFunction, D: int, margin: int, tol: float, seed: int) -> list:
    """All identity checks for one case; exact structure first, then the
    windowed identities and the case closed forms."""
    rep = fockrep.build_rep(K, D)
    quads = fockrep.quadratures(rep)
    a, ad, N = rep.mat_a, rep.mat_ad, rep.mat_N
    x, p, H = quads.mat_x, quads.mat_p, quads.mat_H
    eye = np.eye(D, dtype=complex)
    levels = np.array([eval_K(K, n) for n in range(D + 2)])
    checks = [
        _exact_check("ladder_product_diagonal", ad @ a, _diag(levels[:D])),
        _exact_check("number_raises_creation", fockrep.commutator(N, ad), ad),
        _exact_check("number_lowers_annihilation", fockrep.commutator(N, a), -a),
        _exact_check("vacuum_annihilated", a[:, :1], np.zeros((D, 1), dtype=complex)),
        _exact_check("position_hermitian", x, x.conj().T),
        _exact_check("momentum_hermitian", p, p.conj().T),
    ]
    delta = levels[1 : D + 1] - levels[:D]
    hdiag = 0.5 * (levels[:D] + levels[1 : D + 1])
    checks += [
        _check("ladder_commutator_step", fockrep.commutator(a, ad), _diag(delta), margin, tol),
        _check("hamiltonian_diagonal_form", H, _diag(hdiag), margin, tol),
        _check("xp_commutator_step", fockrep.commutator(x, p), 0.5j * _diag(delta), margin, tol),
        _check(
            "lie_hamilton_x",
            fockrep.commutator(x, H),
            fockrep.lie_hamilton_rhs(rep, quads, "x"),
            margin,
            tol,
        ),
        _check(
            "lie_hamilton_p",
            fockrep.commutator(p, H),
            fockrep.lie_hamilton_rhs(rep, quads, "p"),
            margin,
            tol,
        ),
    ]

    worst_violation = 0.0
    for k in range(ROBERTSON_STATES):
        state = fockrep.truncation_safe(fockrep.random_state(D, seed + k), margin)
        moments = fockrep.uncertainty_product(state, quads)
        bound = 0.5 * abs(moments.xp_commutator_mean)
        worst_violation = max(worst_violation, bound - moments.product)
    checks.append(
        fockrep.IdentityReport(
            name="robertson_inequality_random_states",
            window=ROBERTSON_STATES,
            max_abs_residual=max(worst_violation, 0.0),
            tol=1e-12,
            passed=worst_violation <= 1e-12,
        )
    )

    nn = np.arange(D, dtype=float)
    case = K.case_id
    if case is CaseId.CLASSICAL:
        checks += [
            _check("xp_commutator_constant", fockrep.commutator(x, p), 0.5j * eye, margin, tol),
            _check("lie_hamilton_x_classical", fockrep.commutator(x, H), 1j * p, margin, tol),
            _check("lie_hamilton_p_classical", fockrep.commutator(p, H), -1j * x, margin, tol),
            _check("hamiltonian_number_shift", H, N + 0.5 * eye, margin, tol),
        ]
    elif case is CaseId.ARIK_COON:
        q = K.q
        c1 = _diag(-0.25 * (1.0 - q * q) * q ** (nn - 1.0))
        c2 = _diag(0.25 * (1.0 + q) ** 2 * q ** (nn - 1.0))
        checks += [
            _check("lie_hamilton_x_closed", fockrep.commutator(x, H), c1 @ x + 1j * c2 @ p, margin, tol),
            _check("lie_hamilton_p_closed", fockrep.commutator(p, H), c1 @ p - 1j * c2 @ x, margin, tol),
            _check("xp_commutator_qpower", fockrep.commutator(x, p), 0.5j * _diag(q**nn), margin, tol),
            _check(
                "xp_commutator_hamiltonian_form",
                fockrep.commutator(x, p),
                (1j / (1.0 + q)) * (eye - (1.0 - q) * H),
                margin,
                tol,
            ),
        ]
        rescaled = gup.kempf_rescale(quads, q)
        checks.append(
            _check(
                "kempf_rescaled_commutator",
                fockrep.commutator(rescaled.mat_x, rescaled.mat_p),
                1j * (eye - ((1.0 - q) / (1.0 + q)) * rescaled.mat_H),
                margin,
                tol,
            )
        )
    elif case is CaseId.MACFARLANE_BIEDENHARN:
        q = K.q
        h = np.real(np.diag(H))
        root = np.sqrt((q - 1.0 / q) ** 2 * h**2 + (q + 1.0) ** 2 / q)
        cx = (q - 1.0) * (q - 1.0 / q) / (2.0 * (1.0 + q))
        checks += [
            _check(
                "lie_hamilton_x_closed",
                fockrep.commutator(x, H),
                cx * _diag(h) @ x + 0.5j * _diag(root) @ p,
                margin,
                tol,
            ),
            _check(
                "lie_hamilton_p_closed",
                fockrep.commutator(p, H),
                cx * _diag(h) @ p - 0.5j * _diag(root) @ x,
                margin,
                tol,
            ),
            _check(
                "xp_commutator_sqrt_form",
                fockrep.commutator(x, p),
                (1j * q / (1.0 + q) ** 2) * _diag(root),
                margin,
                tol,
            ),
        ]
    elif case is CaseId.NONLINEAR:
        al, be = K.alpha, K.beta
        h = np.real(np.diag(H))
        root = np.sqrt(be * be - al * al + 4.0 * al * h)
        checks += [
            _check(
                "lie_hamilton_x_closed",
                fockrep.commutator(x, H),
                al * x + 1j * _diag(root) @ p,
                margin,
                tol,
            ),
            _check(
                "lie_hamilton_p_closed",
                fockrep.commutator(p, H),
                al * p - 1j * _diag(root) @ x,
                margin,
                tol,
            ),
            _check(
                "xp_commutator_sqrt_form",
                fockrep.commutator(x, p),
                0.5j * _diag(root),
                margin,
                tol,
            ),
        ]
    return checks


# ---------------------------------------------------------------------------
# subcommands


def _case_from_args(args) -> SpectralFunction:
    try:
        return make_case(args.case, q=args.q, alpha=args.alpha, beta=args.beta, gamma=args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _validate_geometry(args) -> None:
    if args.dim < 4:
        raise UsageError(f"--dim must be >= 4, got {args.dim}")
    if not 0 < args.margin < args.dim:
        raise UsageError(f"--margin must satisfy 0 < margin < dim, got {args.margin}")


def cmd_verify(args, seed: int) -> int:
    _validate_geometry(args)
    K = _case_from_args(args)
    checks = run_verify_checks(K, args.dim, args.margin, args.tol, seed)
    all_pass = all(c.passed for c in checks)
    if args.format == "json":
        payload = {
            "case": K.case_id.value,
            "params": {k: v for k, v in K.params().items()},
            "D": args.dim,
            "margin": args.margin,
            "window": args.dim - args.margin,
            "tol": args.tol,
            "seed": seed,
            "checks": [
                {
                    "name": c.name,
                    "window": c.window,
                    "max_abs_residual": c.max_abs_residual,
                    "tol": c.tol,
                    "pass": c.passed,
                }
                for c in checks
            ],
            "pass": all_pass,
        }
        _emit(render_json(payload), args.out)
    else:
        header = ["case", "q", "alpha", "beta", "gamma", "name", "window", "max_abs_residual", "tol", "pass"]
        base = [K.case_id.value] + _param_columns(K)
        rows = [
            base
            + [c.name, str(c.window), fmt_float(c.max_abs_residual), fmt_float(c.tol), "true" if c.passed else "false"]
            for c in checks
        ]
        _emit(render_csv(header, rows), args.out)
    return 0 if all_pass else 1


def cmd_table(args, seed: int) -> int:
    _validate_geometry(args)
    if args.format == "json":
        raise UsageError("table output is CSV only")
    K = _case_from_args(args)
    if args.levels < 1:
        raise UsageError(f"--levels must be >= 1, got {args.levels}")
    if args.levels > args.dim - args.margin:
        raise UsageError(
            f"--levels {args.levels} exceeds dim - margin = {args.dim - args.margin}"
        )
    header = ["n", "K_n", "K_np1", "H_n", "delta_n"]
    rows = []
    for n in range(args.levels):
        kn = eval_K(K, n)
        knp1 = eval_K(K, n + 1)
        rows.append(
            [str(n), fmt_float(kn), fmt_float(knp1), fmt_float(0.5 * (kn + knp1)), fmt_float(knp1 - kn)]
        )
    _emit(render_csv(header, rows), args.out)
    return 0


_SCAN_HEADER = [
    "case",
    "q",
    "alpha",
    "beta",
    "gamma",
    "n",
    "delta_x",
    "delta_p",
    "product",
    "robertson_bound",
    "case_bound",
    "square_sum_bound",
    "margin_robertson",
    "margin_case",
]

_CASE_BOUNDS = (CaseId.ARIK_COON, CaseId.MACFARLANE_BIEDENHARN, CaseId.NONLINEAR)


def _scan_row(K: SpectralFunction, n: int, D: int) -> list:
    rep = fockrep.build_rep(K, D)
    quads = fockrep.quadratures(rep)
    state = fockrep.number_state(D, n)
    spec = gup.BoundSpec(K.case_id) if K.case_id in _CASE_BOUNDS else None
    report = gup.uncertainty_report(state, rep, quads, spec)
    return (
        [K.case_id.value]
        + _param_columns(K)
        + [
            str(n),
            fmt_float(report.delta_x),
            fmt_float(report.delta_p),
            fmt_float(report.product),
            fmt_float(report.robertson_bound),
            fmt_float(report.case_bound) if report.case_bound is not None else "",
            fmt_float(report.square_sum_bound),
            fmt_float(report.margin_robertson),
            fmt_float(report.margin_case) if report.margin_case is not None else "",
        ]
    )


def cmd_gup_scan(args, seed: int) -> int:
    _validate_geometry(args)
    if args.format == "json":
        raise UsageError("gup-scan output is CSV only")
    K = _case_from_args(args)
    n_cap = args.dim - 1 - args.margin
    rows = []
    if args.q_from is not None or args.q_to is not None:
        if args.q_from is None or args.q_to is None:
            raise UsageError("--q-from and --q-to must be given together")
        if K.q is None:
            raise UsageError(f"case {K.case_id.value!r} has no q parameter to scan")
        if args.q_steps < 1:
            raise UsageError(f"--q-steps must be >= 1, got {args.q_steps}")
        n_fixed = args.n_from if args.n_from is not None else 0
        if not 0 <= n_fixed <= n_cap:
            raise UsageError(f"scan level must lie in 0..{n_cap}, got {n_fixed}")
        for i in range(args.q_steps):
            if args.q_steps == 1:
                qi = args.q_from
            else:
                qi = args.q_from + (args.q_to - args.q_from) * i / (args.q_steps - 1)
            if not qi > 0:
                raise UsageError(f"q grid point {qi} is not positive")
            Ki = make_case(
                K.case_id, q=qi, alpha=K.alpha, beta=K.beta, gamma=K.gamma
            )
            rows.append(_scan_row(Ki, n_fixed, args.dim))
    else:
        n_from = args.n_from if args.n_from is not None else 0
        n_to = args.n_to if args.n_to is not None else n_from
        if not 0 <= n_from <= n_to:
            raise UsageError(f"need 0 <= --n-from <= --n-to, got {n_from}..{n_to}")
        if n_to > n_cap:
            raise UsageError(f"--n-to {n_to} exceeds dim - 1 - margin = {n_cap}")
        for n in range(n_from, n_to + 1):
            rows.append(_scan_row(K, n, args.dim))
    _emit(render_csv(_SCAN_HEADER, rows), args.out)
    return 0


def cmd_symbolic(args, seed: int) -> int:
    _validate_geometry(args)
    if args.format == "csv":
        raise UsageError("symbolic output is JSON only")
    K = _case_from_args(args)
    text = args.check
    if text is None:
        raise UsageError("--check is required (an identity 'LHS == RHS' or a builtin name)")
    source = text.strip()
    if source in symorder.BUILTIN_IDENTITIES:
        identity = symorder.BUILTIN_IDENTITIES[source]
    elif "==" not in source:
        raise UsageError(
            f"unknown builtin {source!r}; available: {', '.join(sorted(symorder.BUILTIN_IDENTITIES))}"
        )
    else:
        identity = source
    try:
        lhs, rhs = symorder.parse_identity(identity)
        nf_l = symorder.normal_order(lhs, K)
        nf_r = symorder.normal_order(rhs, K)
        nf_report = symorder.nf_equal(nf_l, nf_r, tol=args.tol)
        mat_l = symorder.expr_to_matrix(lhs, K, args.dim)
        mat_r = symorder.expr_to_matrix(rhs, K, args.dim)
    except (symorder.ExprSyntaxError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    residual = fockrep.scaled_max_residual(mat_l, mat_r, args.margin)
    matrix_pass = residual <= args.tol
    payload = {
        "case": K.case_id.value,
        "params": {k: v for k, v in K.params().items()},
        "check": source,
        "identity": identity,
        "normal_form": {
            "pass": nf_report.passed,
            "max_deviation": nf_report.max_abs_residual,
            "grid_max": nf_report.window - 1,
        },
        "matrix_oracle": {
            "pass": matrix_pass,
            "max_abs_residual": residual,
            "D": args.dim,
            "window": args.dim - args.margin,
        },
        "pass": nf_report.passed and matrix_pass,
    }
    _emit(render_json(payload), args.out)
    return 0 if (nf_report.passed and matrix_pass) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--case", required=True, choices=[c.value for c in _CLI_CASES])
    sub.add_argument("--q", type=float, default=None)
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--dim", type=int, default=fockrep.DEFAULT_DIM)
    sub.add_argument("--margin", type=int, default=fockrep.DEFAULT_MARGIN)
    sub.add_argument("--tol", type=float, default=fockrep.DEFAULT_TOL)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deformalg",
        description="Verification and analysis toolkit for deformed oscillator algebras.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_verify = subparsers.add_parser("verify", help="run the identity suite for one case")
    _add_common(p_verify)
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")
    p_verify.set_defaults(func=cmd_verify)

    p_table = subparsers.add_parser("table", help="emit the spectrum table as CSV")
    _add_common(p_table)
    p_table.add_argument("--format", choices=["json", "csv"], default="csv")
    p_table.add_argument("--levels", type=int, default=8)
    p_table.set_defaults(func=cmd_table)

    p_scan = subparsers.add_parser("gup-scan", help="scan uncertainty bounds over levels or q")
    _add_common(p_scan)
    p_scan.add_argument("--format", choices=["json", "csv"], default="csv")
    p_scan.add_argument("--n-from", type=int, default=None)
    p_scan.add_argument("--n-to", type=int, default=None)
    p_scan.add_argument("--q-from", type=float, default=None)
    p_scan.add_argument("--q-to", type=float, default=None)
    p_scan.add_argument("--q-steps", type=int, default=5)
    p_scan.set_defaults(func=cmd_gup_scan)

    p_sym = subparsers.add_parser("symbolic", help="check an operator identity symbolically")
    _add_common(p_sym)
    p_sym.add_argument("--format", choices=["json", "csv"], default="json")
    p_sym.add_argument("--check", default=None)
    p_sym.set_defaults(func=cmd_symbolic)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    env_seed = os.environ.get("DEFORMALG_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            print(f"error: DEFORMALG_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return 2
    else:
        seed = args.seed
    try:
        return args.func(args, seed)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

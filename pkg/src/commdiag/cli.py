"""Command-line front end.

Every subcommand writes a :class:`~commdiag.report.VerificationReport`
(``--format text`` or ``json``) and exits with

* 0 when every residual is within its limit,
* 1 when a check failed (for example the matrices do not commute),
* 2 on unreadable or malformed input,
* 3 on a numerical failure (not diagonalizable, no convergence, block leakage).
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .eigen import eigendecompose, is_normal
from .exceptions import CheckFailed, InputError, NumericalError
from .generator import (
    RNG_ALGORITHM,
    PairSpec,
    generate_commuting_pair,
    generate_star_commuting_pair,
)
from .linalg import ToleranceConfig, frobenius_norm, unitarity_defect
from .matfile import read_matrix, read_source, render_matrix, write_matrix
from .permutation import PermutationSpec, conjugate, general_permute, invariance_report, pairing_gap
from .report import STATUS_CHECK_FAILED, STATUS_ERROR, VerificationReport, render
from .simdiag import check_commute, cluster_eigenvalues, simultaneous_diagonalize
from .svd import check_star_commute, singular_values, sort_svd, svd_commuting_pair

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _load(report, label, spec):
    m, digest = read_matrix(spec)
    report.inputs[label] = digest
    return m


def _load_permutation(report, label, spec, n):
    """A permutation from a matrix file or comma-separated one-line notation."""
    try:
        raw = read_source(spec)
    except InputError:
        raw = None
    if raw is not None:
        p = PermutationSpec.from_matrix(_load(report, label, spec).real)
    else:
        try:
            p = PermutationSpec(tuple(int(t) for t in spec.replace(" ", "").split(",") if t))
        except ValueError:
            raise InputError(f"{spec}: neither a matrix file nor a one-line permutation") from None
        report.details[f"{label}_image"] = list(p.image)
    if len(p) != n:
        raise InputError(f"permutation {label} has order {len(p)}, expected {n}")
    return p


def cmd_commute(args, tol, report):
    a = _load(report, "A", args.a)
    b = _load(report, "B", args.b)
    _, residual = check_commute(a, b, tol)
    report.add_residual("commutator", residual, tol.rtol)
    _, star = check_star_commute(a, b, tol)
    report.details["star_commutator"] = star


def cmd_eigen(args, tol, report):
    a = _load(report, "A", args.a)
    d = eigendecompose(a, tol)
    report.add_residual("eigen_residual", d.residual, tol.rtol)
    report.spectra["eigenvalues"] = d.eigenvalues
    report.details["cond_estimate"] = d.cond_estimate
    report.details["is_normal"] = is_normal(a, tol)
    report.details["is_unitary"] = d.is_unitary
    report.details["cluster_sizes"] = cluster_eigenvalues(d.eigenvalues, tol).sizes
    if args.vectors_out:
        write_matrix(args.vectors_out, d.s, ["eigenvector matrix, columns in canonical eigenvalue order"])


def cmd_simdiag(args, tol, report):
    a = _load(report, "A", args.a)
    b = _load(report, "B", args.b)
    r = simultaneous_diagonalize(a, b, tol, force_full=args.force_full)
    report.add_residual("residual_a", r.residual_a, tol.rtol)
    report.add_residual("residual_b", r.residual_b, tol.rtol)
    if r.restriction is not None:
        report.add_residual(
            "off_block_residual",
            r.restriction.off_block_residual,
            tol.rtol * frobenius_norm(b) + tol.atol,
        )
    report.spectra["diag_a"] = r.diag_a
    report.spectra["diag_b"] = r.diag_b
    report.details["used_shortcut"] = r.used_shortcut
    report.details["cluster_sizes_a"] = r.partition.sizes
    if args.out:
        write_matrix(args.out, r.s_common, ["common eigenvector matrix S = S_A S_T"])


def cmd_svd(args, tol, report):
    a = _load(report, "A", args.a)
    b = _load(report, "B", args.b)
    r = svd_commuting_pair(a, b, tol)
    if args.sort:
        r = sort_svd(r, by="a")
    n = a.shape[0]
    report.add_residual("reconstruction_a", r.residual_a, tol.rtol)
    report.add_residual("reconstruction_b", r.residual_b, tol.rtol)
    report.add_residual("u_unitarity", unitarity_defect(r.u), tol.rtol * n)
    report.add_residual("v_a_unitarity", unitarity_defect(r.v_a), tol.rtol * n)
    report.add_residual("v_b_unitarity", unitarity_defect(r.v_b), tol.rtol * n)
    report.spectra["sigma_a"] = r.sigma_a
    report.spectra["sigma_b"] = r.sigma_b
    report.details["sorted"] = bool(args.sort)
    if args.out_prefix:
        prefix = args.out_prefix
        write_matrix(f"{prefix}_u.txt", r.u, ["shared left-singular matrix U"])
        write_matrix(f"{prefix}_v_a.txt", r.v_a, ["right-singular matrix V_A"])
        write_matrix(f"{prefix}_v_b.txt", r.v_b, ["right-singular matrix V_B"])


def cmd_permute(args, tol, report):
    a = _load(report, "A", args.a)
    n = a.shape[0]
    p = _load_permutation(report, "P", args.p, n)
    if args.general:
        q = _load_permutation(report, "Q", args.general, n)
        out = general_permute(a, p, q)
        report.details["mode"] = "general"
        sv_a, sv_out = singular_values(a, tol), singular_values(out, tol)
        scale = max(float(np.max(sv_a)), 1.0)
        report.add_residual("singular_gap", pairing_gap(sv_a, sv_out), tol.cluster_tol * scale)
        report.spectra["singular_values"] = sv_out
    else:
        out = conjugate(a, p)
        report.details["mode"] = "conjugate"
        inv = invariance_report(a, out, tol)
        scale = max(float(np.max(np.abs(singular_values(a, tol)))), 1.0)
        report.add_residual("eigen_gap", inv.eigen_gap, tol.cluster_tol * scale)
        report.add_residual("singular_gap", inv.singular_gap, tol.cluster_tol * scale)
        if args.b:
            b = _load(report, "B", args.b)
            b_hat = conjugate(b, p)
            before = frobenius_norm(a @ b - b @ a)
            after = frobenius_norm(out @ b_hat - b_hat @ out)
            report.add_residual(
                "commutator_change",
                abs(after - before),
                tol.rtol * frobenius_norm(a) * frobenius_norm(b) + tol.atol,
            )
    if args.out:
        write_matrix(args.out, out, [f"permuted ({report.details['mode']}) {args.a}"])
    else:
        report.details["result"] = render_matrix(out)


def _parse_pair_spec(text):
    try:
        source = Path(text).read_text(encoding="utf-8")
    except OSError:
        source = text
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(f"--spec is neither a JSON file nor inline JSON: {exc}") from None
    if not isinstance(raw, dict) or "n" not in raw:
        raise InputError("--spec must be a JSON object with at least 'n'")
    try:
        return PairSpec(**raw)
    except TypeError as exc:
        raise InputError(f"--spec: {exc}") from None


def cmd_gen(args, tol, report):
    spec = _parse_pair_spec(args.spec)
    make = generate_star_commuting_pair if args.star else generate_commuting_pair
    a, b = make(spec)
    header = [
        f"generated by commdiag {__version__} ({'star-commuting' if args.star else 'commuting'} pair)",
        f"rng {RNG_ALGORITHM}",
        "spec " + json.dumps(spec.as_dict(), sort_keys=True),
    ]
    report.details["spec"] = spec.as_dict()
    report.details["rng"] = RNG_ALGORITHM
    _, residual = check_commute(a, b, tol)
    report.add_residual("commutator", residual, tol.rtol)
    if args.star:
        _, star = check_star_commute(a, b, tol)
        report.add_residual("star_commutator", star, tol.rtol)
    if args.out_a:
        write_matrix(args.out_a, a, header + ["matrix A"])
    if args.out_b:
        write_matrix(args.out_b, b, header + ["matrix B"])


def cmd_verify(args, tol, report):
    """Re-run the command recorded in a JSON report and compare the outputs."""
    try:
        text = Path(args.report).read_text(encoding="utf-8")
        recorded = json.loads(text)
        argv = recorded["argv"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.report}: not a readable JSON report ({exc})") from None
    if argv and argv[0] == "verify":
        raise InputError("refusing to verify a verify report")
    code, fresh = execute(argv, forced_format="json")
    reproduced = json.loads(fresh) == recorded
    report.details["recorded_status"] = recorded.get("status")
    report.details["reproduced"] = reproduced
    report.details["rerun_exit_code"] = code
    report.add_residual("mismatch", 0.0 if reproduced else 1.0, 0.0)
    if recorded.get("status") != "ok":
        report.add_residual("recorded_not_ok", 1.0, 0.0)


COMMANDS = {
    "commute": cmd_commute,
    "eigen": cmd_eigen,
    "simdiag": cmd_simdiag,
    "svd": cmd_svd,
    "permute": cmd_permute,
    "gen": cmd_gen,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="commdiag",
        description="Simultaneous diagonalization and SVD of commuting matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", "-o", help="write the report here instead of stdout")
    parser.add_argument("--rtol", type=float, help="relative residual tolerance (env SIMDIAG_TOL)")
    parser.add_argument("--atol", type=float)
    parser.add_argument("--cluster-tol", type=float)
    parser.add_argument("--cond-max", type=float)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("commute", help="check AB = BA")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("eigen", help="eigendecomposition of A")
    p.add_argument("a")
    p.add_argument("--vectors-out", help="write the eigenvector matrix to this file")

    p = sub.add_parser("simdiag", help="simultaneously diagonalize A and B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--force-full", action="store_true", help="skip the distinct-eigenvalue shortcut")
    p.add_argument("--out", help="write the common eigenvector matrix to this file")

    p = sub.add_parser("svd", help="SVDs of a star-commuting pair with shared U")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--sort", action="store_true", help="order columns by descending sigma_a")
    p.add_argument("--out-prefix", help="write PREFIX_u.txt, PREFIX_v_a.txt, PREFIX_v_b.txt")

    p = sub.add_parser("permute", help="permute A and check spectrum invariance")
    p.add_argument("a")
    p.add_argument("p", help="permutation matrix file or one-line image such as 3,0,2,4,5,1")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--conjugate", action="store_true", help="P A P^T (default)")
    mode.add_argument("--general", metavar="Q", help="P A Q with a second permutation Q")
    p.add_argument("--b", help="also conjugate B and check the commutator is preserved")
    p.add_argument("--out", help="write the permuted matrix to this file")

    p = sub.add_parser("gen", help="generate a seeded commuting pair")
    p.add_argument("--spec", required=True, help="PairSpec as inline JSON or a JSON file path")
    p.add_argument("--star", action="store_true", help="real symmetric A, star-commuting pair")
    p.add_argument("--out-a")
    p.add_argument("--out-b")

    p = sub.add_parser("verify", help="re-run a JSON report's command and compare")
    p.add_argument("report")
    return parser


def execute(argv, forced_format=None):
    """Run one invocation; return ``(exit_code, rendered_report)``."""
    args = build_parser().parse_args(argv)
    return _execute(args, list(argv), forced_format or args.format)


def _execute(args, argv, fmt):
    try:
        tol = ToleranceConfig.from_env(
            rtol=args.rtol, atol=args.atol, cluster_tol=args.cluster_tol, cond_max=args.cond_max
        )
    except InputError as exc:
        report = VerificationReport(args.command, argv, {})
        report.fail(STATUS_ERROR, str(exc))
        return EXIT_INPUT, render(report, fmt)
    report = VerificationReport(args.command, argv, tol.as_dict())
    code = EXIT_OK
    try:
        COMMANDS[args.command](args, tol, report)
    except InputError as exc:
        report.fail(STATUS_ERROR, f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT
    except CheckFailed as exc:
        report.fail(STATUS_CHECK_FAILED, f"{type(exc).__name__}: {exc}")
        code = EXIT_CHECK
    except NumericalError as exc:
        report.fail(STATUS_ERROR, f"{type(exc).__name__}: {exc}")
        code = EXIT_NUMERIC
    except OSError as exc:
        report.fail(STATUS_ERROR, f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT
    if code == EXIT_OK and report.settle() == STATUS_CHECK_FAILED:
        code = EXIT_CHECK
    return code, render(report, fmt)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    code, text = _execute(args, argv, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Evaluates the eta functions on points or grids, dumps operator spectra as
CSV, and runs the verification suites.  All numeric output uses fixed
17-significant-digit formatting so identical invocations produce
byte-identical documents; records are only emitted after every requested
computation has succeeded.

Exit codes: 0 success; 1 verification failure; 2 invalid usage or
parameters; 3 internal inconsistency detected during computation.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import serialize, verification
from .nilmanifold import (
    CaseTag,
    LatticeCharacterData,
    RouteDisagreement,
    eta_nil,
    eta_nil_special,
    sign_prediction,
)
from .rep_oracle import (
    GenericRepParams,
    GradedMetric,
    SchrodingerParams,
    SpectralPairingError,
    TruncationConfig,
    closed_form_schrodinger_spectrum,
    generic_S,
    generic_scale,
    hermitian_eigenvalues,
    scalar_S,
    schrodinger_S,
    schrodinger_scale,
    trusted_window,
)
from .specfun import eta_hurw, im_polylog_even, polylog_circle
from .tilde_eta import tilde_eta

_INTERNAL_ERRORS = (SpectralPairingError, RouteDisagreement)


def _parse_s(text: str) -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise click.UsageError(f"cannot parse s value {text!r}; expected RE or RE,IM")


def _parse_s_list(text: str) -> list:
    # semicolons separate points, each RE[,IM]; a purely comma-separated
    # list is read as real points
    if ";" in text:
        entries = [e for e in (p.strip() for p in text.split(";")) if e]
    else:
        entries = [e for e in (p.strip() for p in text.split(",")) if e]
    if not entries:
        raise click.UsageError("empty --s-list")
    return [_parse_s(e) for e in entries]


def _json_s_value(raw) -> complex:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return complex(float(raw), 0.0)
    if isinstance(raw, str):
        return _parse_s(raw)
    if isinstance(raw, list) and len(raw) == 2:
        try:
            return complex(float(raw[0]), float(raw[1]))
        except (TypeError, ValueError):
            pass
    raise click.UsageError(f"cannot parse job s value {raw!r}")


def _lattice_data(r, c, gamma_norm) -> LatticeCharacterData:
    if r is None or c is None or gamma_norm is None:
        raise click.UsageError("--fn nil requires --r, --c and --gamma-norm")
    if r < 1:
        raise click.UsageError("--r must be a positive integer")
    tag = CaseTag.COMMUTATOR_TRIVIAL if c % r == 0 else CaseTag.GENERIC
    return LatticeCharacterData(r=r, c=c, gamma_norm=gamma_norm, case_tag=tag)


def _eval_one(fn, point, r, c, gamma_norm, a, l):
    """One evaluation record for the requested function at one point."""
    if fn == "nil":
        result = eta_nil(point, _lattice_data(r, c, gamma_norm))
        return serialize.eta_record(
            result.s, result.value, result.is_pole, result.residue, None
        )
    if fn == "tilde":
        if a is None:
            raise click.UsageError("--fn tilde requires --a")
        result = tilde_eta(point, a)
        return serialize.eta_record(
            result.s, result.value, result.is_pole, result.residue, None
        )
    if fn == "hurw-eta":
        if a is None:
            raise click.UsageError("--fn hurw-eta requires --a")
        value = eta_hurw(point, a)
        return serialize.eta_record(point, value, False, 0.0, None)
    if fn == "polylog-im":
        if a is None:
            raise click.UsageError("--fn polylog-im requires --a")
        if point.imag == 0.0 and point.real == round(point.real) and point.real >= 2:
            order = int(round(point.real))
            if order % 2 == 0:
                value = complex(im_polylog_even((order - 2) // 2, a), 0.0)
                return serialize.eta_record(point, value, False, 0.0, None)
        if point.real <= 1.0:
            raise click.UsageError("--fn polylog-im requires Re s > 1")
        value = complex(polylog_circle(point, a).imag, 0.0)
        return serialize.eta_record(point, value, False, 0.0, None)
    raise click.UsageError(f"unknown --fn {fn!r}")


def _eval_request(fn, points, r, c, gamma_norm, a, l):
    if fn == "polylog-im" and l is not None:
        if points:
            raise click.UsageError("--fn polylog-im takes either --l or --s, not both")
        if l < 0:
            raise click.UsageError("--l must be non-negative")
        points = [complex(2 * l + 2, 0.0)]
    if not points:
        raise click.UsageError("no evaluation points: pass --s, --s-list or --job-file")
    if fn != "polylog-im" and l is not None:
        raise click.UsageError("--l applies only to --fn polylog-im")
    if fn in ("tilde", "hurw-eta", "polylog-im") and (
        r is not None or c is not None or gamma_norm is not None
    ):
        raise click.UsageError("--r/--c/--gamma-norm apply only to --fn nil")
    if fn == "nil" and a is not None:
        raise click.UsageError("--a does not apply to --fn nil")
    return [_eval_one(fn, p, r, c, gamma_norm, a, l) for p in points]


def _load_job_file(path) -> list:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read job file: {exc}")
    if not isinstance(doc, list):
        raise click.UsageError("job file must hold a JSON array of requests")
    jobs = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise click.UsageError(f"job {i}: not an object")
        command = entry.get("command", "eval")
        if command != "eval":
            raise click.UsageError(f"job {i}: unsupported command {command!r}")
        fn = entry.get("fn")
        if fn not in ("nil", "tilde", "hurw-eta", "polylog-im"):
            raise click.UsageError(f"job {i}: bad fn {fn!r}")
        if "s" in entry and "s_list" in entry:
            raise click.UsageError(f"job {i}: pass s or s_list, not both")
        points = []
        if "s" in entry:
            points = [_json_s_value(entry["s"])]
        elif "s_list" in entry:
            raw = entry["s_list"]
            if isinstance(raw, str):
                points = _parse_s_list(raw)
            elif isinstance(raw, list):
                points = [_json_s_value(v) for v in raw]
            else:
                raise click.UsageError(f"job {i}: bad s_list")
        known = {"command", "fn", "s", "s_list", "r", "c", "gamma_norm", "a", "l"}
        extra = sorted(set(entry) - known)
        if extra:
            raise click.UsageError(f"job {i}: unknown fields {extra}")
        jobs.append(
            dict(
                fn=fn,
                points=points,
                r=entry.get("r"),
                c=entry.get("c"),
                gamma_norm=entry.get("gamma_norm"),
                a=entry.get("a"),
                l=entry.get("l"),
            )
        )
    return jobs


@click.group()
def main():
    """Eta invariants of the middle-degree operator on (2,3,5) nilmanifolds.

    Evaluate the closed-form eta functions (eval, special-values), dump
    truncated representation spectra with diagnostics (spectrum), or run
    the acceptance suites (verify).
    """


@main.command("eval")
@click.option("--fn", "fn", required=True,
              type=click.Choice(["nil", "tilde", "hurw-eta", "polylog-im"]),
              help="Which function to evaluate.")
@click.option("--r", type=int, default=None, help="Lattice period r >= 1 (nil).")
@click.option("--c", type=int, default=None, help="Character offset c (nil).")
@click.option("--gamma-norm", type=float, default=None,
              help="Squared lattice norm of the center generator (nil).")
@click.option("--a", type=float, default=None,
              help="Shift parameter (tilde, hurw-eta, polylog-im).")
@click.option("--l", type=int, default=None,
              help="Evaluate Im Li_{2l+2} (polylog-im shorthand for --s 2l+2).")
@click.option("--s", "s_text", default=None, metavar="RE[,IM]",
              help="Single evaluation point.")
@click.option("--s-list", "s_list_text", default=None, metavar="LIST",
              help="Points separated by ';' (each RE[,IM]); commas alone list real points.")
@click.option("--job-file", type=click.Path(), default=None,
              help="JSON array of eval requests, executed concurrently.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Concurrent workers for --job-file.")
def eval_cmd(fn, r, c, gamma_norm, a, l, s_text, s_list_text, job_file, jobs):
    """Evaluate an eta function; one NDJSON record per point, input order."""
    given = sum(x is not None for x in (s_text, s_list_text, job_file))
    if given > 1:
        raise click.UsageError("pass exactly one of --s, --s-list, --job-file")
    if jobs < 1:
        raise click.UsageError("--jobs must be >= 1")
    try:
        if job_file is not None:
            requests = _load_job_file(job_file)
            if jobs > 1 and len(requests) > 1:
                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    futures = [
                        pool.submit(_eval_request, **req) for req in requests
                    ]
                    blocks = [f.result() for f in futures]
            else:
                blocks = [_eval_request(**req) for req in requests]
            records = [rec for block in blocks for rec in block]
        else:
            points = []
            if s_text is not None:
                points = [_parse_s(s_text)]
            elif s_list_text is not None:
                points = _parse_s_list(s_list_text)
            records = _eval_request(fn, points, r, c, gamma_norm, a, l)
    except _INTERNAL_ERRORS as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sys.stdout.write(serialize.render_ndjson(records))


@main.command("special-values")
@click.option("--r", type=int, required=True, help="Lattice period r >= 1.")
@click.option("--c", type=int, required=True, help="Character offset c.")
@click.option("--gamma-norm", type=float, required=True,
              help="Squared lattice norm of the center generator.")
@click.option("--l-max", type=int, required=True,
              help="Report values at s = -2l for l = 1..l_max.")
def special_values_cmd(r, c, gamma_norm, l_max):
    """Zero checks at s in {0,-1,-3,-5} plus the values at s = -2l."""
    if l_max < 0:
        raise click.UsageError("--l-max must be >= 0")
    try:
        data = _lattice_data(r, c, gamma_norm)
        records = []
        for row in eta_nil_special(data):
            records.append(
                serialize.eta_record(
                    row["s"], row["value"], False, 0.0, None,
                    abs_deviation=float(row["abs_deviation"]),
                )
            )
        for l in range(1, l_max + 1):
            result = eta_nil(complex(-2 * l, 0.0), data)
            predicted = (
                sign_prediction(l, data) if data.case_tag is CaseTag.GENERIC else 0
            )
            records.append(
                serialize.eta_record(
                    result.s, result.value, result.is_pole, result.residue, None,
                    sign_predicted=predicted,
                )
            )
    except _INTERNAL_ERRORS as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sys.stdout.write(serialize.render_ndjson(records))


@main.command("spectrum")
@click.option("--rep", required=True,
              type=click.Choice(["scalar", "schroedinger", "generic"]),
              help="Representation family.")
@click.option("--alpha", type=float, default=None, help="Scalar model parameter.")
@click.option("--beta", type=float, default=None, help="Scalar model parameter.")
@click.option("--hbar", type=float, default=None, help="Planck parameter (nonzero).")
@click.option("--lambda", "lam", type=float, default=None,
              help="Generic-family parameter.")
@click.option("--mu", type=float, default=None, help="Generic-family parameter.")
@click.option("--nu", type=float, default=None, help="Generic-family parameter.")
@click.option("--g33", type=float, default=1.0, show_default=True,
              help="Metric weight of the center direction.")
@click.option("--g44", type=float, default=1.0, show_default=True,
              help="Metric weight of the first top direction.")
@click.option("--g55", type=float, default=1.0, show_default=True,
              help="Metric weight of the second top direction.")
@click.option("--basis-size", type=int, default=256, show_default=True,
              help="Oscillator modes per block (ignored for scalar).")
@click.option("--trusted-count", type=int, default=None,
              help="Override the trusted-window size (default basis/8).")
def spectrum_cmd(rep, alpha, beta, hbar, lam, mu, nu, g33, g44, g55,
                 basis_size, trusted_count):
    """Eigenvalues as CSV on stdout; JSON diagnostics on stderr."""
    try:
        g = GradedMetric(g33, g44, g55)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    scalar_opts = alpha is not None or beta is not None
    schro_opts = hbar is not None
    generic_opts = lam is not None or mu is not None or nu is not None
    try:
        if rep == "scalar":
            if schro_opts or generic_opts or not (alpha is not None and beta is not None):
                raise click.UsageError("--rep scalar takes exactly --alpha and --beta")
            mat = scalar_S(alpha, beta, g)
            eigs = np.sort(np.linalg.eigvalsh(mat.entries))
            sidecar = {
                "rep": "scalar",
                "alpha": float(alpha),
                "beta": float(beta),
                "metric": {"g33": g.g33, "g44": g.g44, "g55": g.g55},
                "eigenvalue_count": int(eigs.size),
            }
        else:
            if basis_size < 8:
                raise click.UsageError("--basis-size must be >= 8")
            if rep == "schroedinger":
                if scalar_opts or generic_opts or hbar is None:
                    raise click.UsageError("--rep schroedinger takes exactly --hbar")
                params = SchrodingerParams(hbar=hbar)
                mat = schrodinger_S(params, g, basis_size)
                unit = schrodinger_scale(params, g)
            else:
                if scalar_opts or schro_opts or lam is None or mu is None:
                    raise click.UsageError(
                        "--rep generic takes --lambda, --mu and optionally --nu"
                    )
                params = GenericRepParams(lam=lam, mu=mu, nu=0.0 if nu is None else nu)
                mat = generic_S(params, g, basis_size)
                unit = generic_scale(params, g)
            eigs = np.sort(np.asarray(hermitian_eigenvalues(mat)))
            kernel_eps = 1e-6 * unit
            if trusted_count is None:
                cfg = TruncationConfig(
                    basis_size=basis_size,
                    kernel_eps=kernel_eps,
                    trusted_count=max(1, basis_size // 8),
                )
            else:
                cfg = TruncationConfig(
                    basis_size=basis_size,
                    kernel_eps=kernel_eps,
                    trusted_count=trusted_count,
                )
            trusted = sorted(trusted_window(eigs, cfg))
            sidecar = {
                "rep": rep,
                "metric": {"g33": g.g33, "g44": g.g44, "g55": g.g55},
                "basis_size": int(basis_size),
                "spectral_unit": float(unit),
                "kernel_eps": float(kernel_eps),
                "kernel_count": int(np.count_nonzero(np.abs(eigs) < kernel_eps)),
                "trusted_count": len(trusted),
                "trusted": [float(t) for t in trusted],
            }
            if rep == "schroedinger":
                sidecar["hbar"] = float(hbar)
                if g.bg_proportional:
                    exact = sorted(
                        closed_form_schrodinger_spectrum(params, g, 2 * len(trusted)),
                        key=abs,
                    )
                    by_abs = sorted(trusted, key=abs)
                    err = max(
                        (abs(t - e) / abs(e) for t, e in zip(by_abs, exact)),
                        default=0.0,
                    )
                    sidecar["closed_form_comparison"] = {
                        "count": len(by_abs),
                        "max_rel_error": float(err),
                    }
            else:
                sidecar["lambda"] = float(lam)
                sidecar["mu"] = float(mu)
                sidecar["nu"] = float(params.nu)
                if g.bg_proportional and trusted:
                    arr = np.asarray(trusted)
                    if arr.size % 2:
                        arr = np.sort(arr[np.argsort(np.abs(arr))[:-1]])
                    sym = float(
                        np.max(np.abs(arr + arr[::-1])) / np.max(np.abs(arr))
                    ) if arr.size else 0.0
                    sidecar["pairing_symmetry"] = sym
    except _INTERNAL_ERRORS as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sys.stdout.write(serialize.spectrum_csv(eigs))
    sys.stderr.write(serialize.render_json(sidecar) + "\n")


@main.command("verify")
@click.option("--suite", required=True,
              type=click.Choice(["specfun", "tilde-eta", "oracle", "nilmanifold", "all"]),
              help="Which acceptance suite to run.")
@click.option("--basis-size", type=int, default=256, show_default=True,
              help="Basis size for eigensolver-backed criteria (<256 degrades tolerances).")
def verify_cmd(suite, basis_size):
    """Run an acceptance suite; NDJSON per criterion plus a summary line."""
    if basis_size < 16:
        raise click.UsageError("--basis-size must be >= 16")
    try:
        records = verification.run_suite(suite, basis_size)
    except _INTERNAL_ERRORS as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    n_passed = sum(1 for rec in records if rec["passed"])
    summary = {
        "suite": suite,
        "basis_size": int(basis_size),
        "n_passed": n_passed,
        "n_total": len(records),
        "passed": n_passed == len(records),
    }
    sys.stdout.write(serialize.render_ndjson(records))
    sys.stdout.write(serialize.render_json(summary) + "\n")
    if n_passed != len(records):
        sys.exit(1)


if __name__ == "__main__":
    main()

"""Command line interface.

Subcommands
-----------
strength   --effect FILE --ray FILE [--oracle]
           Strength of the effect along the ray; with --oracle also runs
           the bisection route and fails (exit 1) if the two disagree by
           more than 1e-6.
verify     --suite NAME --dims LIST --p LIST [--trials N] [--seed S]
           [--expect MODE] [--json FILE]
           Seeded verification suites over a grid of dimensions and
           parameters, both conjugation flags.  Suites: order,
           zero-product, ortho, sequential, transition, scalar-pair,
           coexist, strength-oracle, pexider, all.  The rigidity suites
           (ortho, sequential) hold only at p = 0; with --expect auto a
           parameter p != 0 is required to produce a counterexample and
           the suite entry is annotated accordingly.
apply      --map FILE --effect FILE
           Image of the effect under the map, printed as a matrix
           document.
fit        --map FILE --grid N
           Recover the order parameter of a map file from its action on
           scalar effects.

Documents
---------
Matrix document: {"n": N, "rows": [[[re, im], ...], ...]} with N rows of
N entries.  Vector document (rays): {"n": N, "entries": [[re, im], ...]}.
Map document: {"U": <matrix document>, "conjugate": bool, "p": double}.

All numbers are emitted with 17 significant digits, so reports are
byte-identical for identical flags and seed; parse, serialize, parse is
the identity.  The default seed comes from the EFFECTKIT_SEED
environment variable (0 when unset).  --tol scales every internal
tolerance by the given factor.

Exit codes: 0 all checks passed; 1 a mathematical check failed;
2 unusable input (parse failure, malformed document, dimension mismatch,
invalid parameter).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__, numkern
from .autos import (
    EffectAutomorphism,
    VerificationReport,
    apply as apply_map,
    fit_p,
    random_automorphism,
    verify_ortho,
    verify_order,
    verify_scalar_pair,
    verify_sequential,
    verify_transition,
    verify_zero_product,
)
from .coexist import (
    coexist_rank_one,
    coexist_trivial_witness,
    coexists_with_all_probe,
)
from .effects import (
    Effect,
    is_scalar,
    make_effect,
    make_ray,
    sample_effect,
    sample_ray,
    scalar_effect,
)
from .errors import (
    DegenerateRanges,
    DimensionError,
    DomainError,
    FitError,
    HermiticityViolation,
    NotInFamily,
    NotPositiveSemidefinite,
    NotScalarAction,
    OrderViolation,
    OrthogonalityError,
    ParamError,
    QuotientFailure,
    RankError,
    SpanError,
    SpectrumOutOfRange,
    UnitarityViolation,
)
from .fracfun import FracParams, FpParam, fit_frac, f_eval, g_symmetry_check, interior_grid, verify_pexider
from .numkern import DEFAULT_TOL, ToleranceConfig
from .strength import strength_bisect, strength_closed, strength_two_block

AUTO_SUITES = ("order", "zero-product", "ortho", "sequential", "transition", "scalar-pair")
OTHER_SUITES = ("coexist", "strength-oracle", "pexider")
ALL_SUITES = AUTO_SUITES + OTHER_SUITES
RIGIDITY_SUITES = ("ortho", "sequential")
SCALAR_PAIR_LAMBDA = 0.3
ORACLE_GAP_LIMIT = 1e-6

# Input-shaped problems exit 2; failed mathematical checks exit 1.
_USAGE_ERRORS = (
    DimensionError,
    HermiticityViolation,
    SpectrumOutOfRange,
    NotPositiveSemidefinite,
    UnitarityViolation,
    ParamError,
    DomainError,
    RankError,
    OrthogonalityError,
    SpanError,
    DegenerateRanges,
)
_CHECK_ERRORS = (NotInFamily, NotScalarAction, QuotientFailure, OrderViolation, FitError)


class ParseFailure(Exception):
    """Malformed document or flag value."""


# ---------------------------------------------------------------------------
# canonical JSON with 17-significant-digit floats


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return format(float(x), ".17g")


def dump_json(obj, level: int = 0) -> str:
    """Serialize dicts/lists/str/bool/int/float/None deterministically."""
    pad = "  " * level
    inner = "  " * (level + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f"{inner}{json.dumps(str(k))}: {dump_json(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        parts = [f"{inner}{dump_json(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    raise ValueError(f"cannot serialize object of type {type(obj).__name__}")


# ---------------------------------------------------------------------------
# documents


def matrix_to_doc(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    return {
        "n": int(M.shape[0]),
        "rows": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def _entry_to_complex(entry, where: str) -> complex:
    if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
        raise ParseFailure(f"{where}: each entry must be a [re, im] pair")
    re, im = entry
    if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in (re, im)):
        raise ParseFailure(f"{where}: entries must be finite numbers")
    return complex(float(re), float(im))


def doc_to_matrix(doc, where: str = "matrix document") -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseFailure(f"{where}: expected an object")
    n = doc.get("n")
    rows = doc.get("rows")
    if not isinstance(n, int) or n < 1:
        raise ParseFailure(f"{where}: field 'n' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseFailure(f"{where}: field 'rows' must hold {n} rows")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseFailure(f"{where}: row {i} must hold {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _entry_to_complex(entry, f"{where}: row {i}")
    return out


def doc_to_vector(doc, where: str = "vector document") -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseFailure(f"{where}: expected an object")
    n = doc.get("n")
    entries = doc.get("entries")
    if not isinstance(n, int) or n < 1:
        raise ParseFailure(f"{where}: field 'n' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseFailure(f"{where}: field 'entries' must hold {n} pairs")
    return np.array([_entry_to_complex(e, where) for e in entries], dtype=np.complex128)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path}: invalid JSON: {exc}") from exc


def load_effect(path: str, tol: ToleranceConfig) -> Effect:
    return make_effect(doc_to_matrix(_load_json(path), path), tol)


def load_ray(path: str):
    return make_ray(doc_to_vector(_load_json(path), path))


def load_map(path: str) -> EffectAutomorphism:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseFailure(f"{path}: expected an object")
    if "U" not in doc or "conjugate" not in doc or "p" not in doc:
        raise ParseFailure(f"{path}: map document needs fields 'U', 'conjugate', 'p'")
    if not isinstance(doc["conjugate"], bool):
        raise ParseFailure(f"{path}: field 'conjugate' must be a boolean")
    if not isinstance(doc["p"], (int, float)) or not math.isfinite(doc["p"]):
        raise ParseFailure(f"{path}: field 'p' must be a finite number")
    U = doc_to_matrix(doc["U"], f"{path}: field 'U'")
    return EffectAutomorphism(U=U, conjugate=doc["conjugate"], p=FpParam(float(doc["p"])))


def map_to_doc(phi: EffectAutomorphism) -> dict:
    return {"U": matrix_to_doc(phi.U), "conjugate": phi.conjugate, "p": phi.p.p}


# ---------------------------------------------------------------------------
# extra suites wired only through the CLI


def _suite_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _coexist_suite(n: int, trials: int, seed: int, tol: ToleranceConfig) -> VerificationReport:
    """Witness validity, the rank-one criterion, and the scalar probe."""
    failures = 0
    worst = 0.0
    counterexample = None

    def fail(note: str, amount: float = 1.0) -> None:
        nonlocal failures, worst, counterexample
        failures += 1
        worst = max(worst, amount)
        if counterexample is None:
            counterexample = {"check": note, "inputs": {}}

    # Fixed controls: a pair known to coexist nowhere near trivially, and
    # the overlapping weighted pair known not to coexist.
    rng = np.random.default_rng([seed, 0])
    p_vec = numkern.random_ray(n, rng)
    basis = np.linalg.qr(p_vec.reshape(n, 1), mode="complete")[0]
    perp = basis[:, 1]
    overlap_vec = math.sqrt(0.96) * p_vec + math.sqrt(0.04) * perp
    P0 = make_ray(p_vec)
    Q0 = make_ray(overlap_vec)
    if coexist_rank_one(0.9, P0, 0.9, Q0, tol):
        fail("overlapping-0.9-pair-reported-coexistent")
    if not coexists_with_all_probe(scalar_effect(n, 0.37), 60, _suite_seed(seed, 1), tol):
        fail("scalar-probe-returned-false")
    atom = make_effect(0.9 * P0.projection.matrix, tol)
    if n >= 2 and coexists_with_all_probe(atom, 200, _suite_seed(seed, 2), tol):
        fail("rank-one-probe-found-no-counterexample")

    for k in range(trials):
        rng = np.random.default_rng([seed, 3 + k])
        A = sample_effect(n, rng, tol)
        B = sample_effect(n, rng, tol)
        top = float(np.linalg.eigvalsh(A.matrix + B.matrix)[-1])
        if top > 1.0:
            scale = (1.0 - 1e-12) / top
            A = make_effect(A.matrix * scale, tol)
            B = make_effect(B.matrix * scale, tol)
        witness = coexist_trivial_witness(A, B, tol)
        if witness is None:
            fail("trivial-witness-missing-for-substochastic-pair")
            continue
        residual = witness.residual_for(A, B)
        worst = max(worst, residual)
        if not witness.is_valid_for(A, B, tol):
            fail("trivial-witness-invalid", residual)
        lam = float(rng.uniform(0.02, 0.98))
        P = sample_ray(n, rng)
        Q = sample_ray(n, rng)
        if float(np.abs(np.vdot(P.vector, Q.vector)) ** 2) < 1.0 - tol.eps_rank:
            if not coexist_rank_one(lam, P, 1.0 - lam, Q, tol):
                fail("convex-split-pair-reported-incompatible")
    return VerificationReport("coexist", trials, failures, worst, counterexample, seed)


def _strength_oracle_suite(n: int, trials: int, seed: int, tol: ToleranceConfig) -> VerificationReport:
    """Closed form against bisection, and the two-block reduction."""
    failures = 0
    worst = 0.0
    counterexample = None
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        A = sample_effect(n, rng, tol)
        ray = sample_ray(n, rng)
        closed = strength_closed(A, ray, tol)
        gap = abs(closed.value - strength_bisect(A, ray, tol))
        worst = max(worst, gap)
        if gap > ORACLE_GAP_LIMIT:
            failures += 1
            if counterexample is None:
                counterexample = {"check": "closed-vs-bisect", "inputs": {"A": matrix_to_doc(A.matrix)["rows"]}}
        if n >= 2:
            V = numkern.haar_unitary(n, rng)
            P = make_ray(V[:, 0])
            Q = make_ray(V[:, 1])
            theta = float(rng.uniform(0.15, math.pi / 2 - 0.15))
            phase = float(rng.uniform(0.0, 2.0 * math.pi))
            R = make_ray(math.cos(theta) * V[:, 0] + math.sin(theta) * np.exp(1j * phase) * V[:, 1])
            mu = float(rng.uniform(0.05, 0.95))
            E = make_effect(mu * P.projection.matrix + Q.projection.matrix, tol)
            two_block_gap = abs(
                strength_closed(E, R, tol).value - strength_two_block(mu, P, Q, R, tol)
            )
            worst = max(worst, two_block_gap)
            if two_block_gap > 1e-8:
                failures += 1
                if counterexample is None:
                    counterexample = {"check": "two-block", "inputs": {"E": matrix_to_doc(E.matrix)["rows"]}}
    return VerificationReport("strength-oracle", trials, failures, worst, counterexample, seed)


def _pexider_suite(trials: int, seed: int, tol: ToleranceConfig) -> VerificationReport:
    """Functional equation residuals, fit recovery, and the symmetry pin."""
    failures = 0
    worst = 0.0
    counterexample = None

    def fail(note: str, amount: float = 1.0) -> None:
        nonlocal failures, worst, counterexample
        failures += 1
        worst = max(worst, amount)
        if counterexample is None:
            counterexample = {"check": note, "inputs": {}}

    if not g_symmetry_check(1.0, 1.0, 50):
        fail("symmetry-rejects-identity-pair")
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        a = float(np.exp(rng.uniform(-1.6, 1.6)))
        c = float(np.exp(rng.uniform(-0.9, 0.9)))
        params = FracParams(a=a, b=1.0, c=c)
        residual = verify_pexider(params, 1.0, c, 20)
        worst = max(worst, residual)
        if residual > 1e-10:
            fail("functional-equation-residual", residual)
        samples = [(float(x), f_eval(params, float(x))) for x in interior_grid(12)]
        fit = fit_frac(samples)
        err = max(abs(fit.a - a), abs(fit.c - c))
        worst = max(worst, err)
        if err > 1e-6:
            fail("fit-recovery", err)
        sb = 1.0 + float(rng.choice([-1.0, 1.0])) * float(rng.uniform(1.5e-3, 0.5))
        sc = 1.0 + float(rng.choice([-1.0, 1.0])) * float(rng.uniform(1.5e-3, 0.5))
        if g_symmetry_check(sb, sc, 40):
            fail("symmetry-accepts-off-family-pair")
    return VerificationReport("pexider", trials, failures, worst, counterexample, seed)


# ---------------------------------------------------------------------------
# subcommands


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    raw = os.environ.get("EFFECTKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseFailure(f"EFFECTKIT_SEED must be an integer, got {raw!r}") from exc


def cmd_strength(args: argparse.Namespace) -> int:
    tol = DEFAULT_TOL.scaled(args.tol)
    A = load_effect(args.effect, tol)
    ray = load_ray(args.ray)
    result = strength_closed(A, ray, tol)
    out = {"value": result.value, "in_range": result.in_range, "near_cutoff": result.near_cutoff}
    code = 0
    if args.oracle:
        oracle = strength_bisect(A, ray, tol)
        gap = abs(result.value - oracle)
        out["oracle"] = oracle
        out["gap"] = gap
        if gap > ORACLE_GAP_LIMIT:
            code = 1
    sys.stdout.write(dump_json(out) + "\n")
    return code


def cmd_apply(args: argparse.Namespace) -> int:
    tol = DEFAULT_TOL.scaled(args.tol)
    phi = load_map(args.map)
    A = load_effect(args.effect, tol)
    sys.stdout.write(dump_json(matrix_to_doc(apply_map(phi, A).matrix)) + "\n")
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    tol = DEFAULT_TOL.scaled(args.tol)
    phi = load_map(args.map)
    param = fit_p(phi, args.grid, tol=tol)
    samples = []
    for x in interior_grid(args.grid):
        _, mu = is_scalar(phi(scalar_effect(phi.dim, float(x))), tol)
        samples.append((float(x), float(mu)))
    fit = fit_frac(samples)
    out = {
        "p": param.p,
        "a": fit.a,
        "c": fit.c,
        "c_deviation": abs(fit.c - 1.0),
        "residual": fit.residual,
    }
    sys.stdout.write(dump_json(out) + "\n")
    return 0


def _expected_for(suite: str, p: float, expect: str) -> str:
    if suite not in RIGIDITY_SUITES:
        return "preserve"
    if expect != "auto":
        return expect
    return "preserve" if p == 0.0 else "counterexample"


def cmd_verify(args: argparse.Namespace) -> int:
    tol = DEFAULT_TOL.scaled(args.tol)
    seed = _resolve_seed(args.seed)
    dims = _parse_int_list(args.dims, "dims")
    ps = _parse_float_list(args.p, "p")
    for p in ps:
        FpParam(p)  # validates p < 1 up front
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)

    runners = {
        "order": verify_order,
        "zero-product": verify_zero_product,
        "ortho": verify_ortho,
        "sequential": verify_sequential,
        "transition": verify_transition,
    }

    entries = []
    overall = True
    counter = 0
    for suite in suites:
        if suite in AUTO_SUITES:
            for n in dims:
                for p in ps:
                    for conjugate in (False, True):
                        child = _suite_seed(seed, counter)
                        counter += 1
                        phi = random_automorphism(n, p, conjugate, child)
                        if suite == "scalar-pair":
                            report = verify_scalar_pair(
                                phi, SCALAR_PAIR_LAMBDA, args.trials, child, tol=tol
                            )
                        else:
                            report = runners[suite](phi, args.trials, child, tol=tol)
                        expected = _expected_for(suite, p, args.expect)
                        satisfied = (report.failures == 0) == (expected == "preserve")
                        overall = overall and satisfied
                        entry = report.to_dict()
                        entry["suite"] = f"{suite}[n={n},p={p:g},conj={int(conjugate)}]"
                        entry["expected"] = expected
                        entry["satisfied"] = satisfied
                        entries.append(entry)
        elif suite in ("coexist", "strength-oracle"):
            runner = _coexist_suite if suite == "coexist" else _strength_oracle_suite
            for n in dims:
                child = _suite_seed(seed, counter)
                counter += 1
                report = runner(n, args.trials, child, tol)
                satisfied = report.failures == 0
                overall = overall and satisfied
                entry = report.to_dict()
                entry["suite"] = f"{suite}[n={n}]"
                entry["expected"] = "preserve"
                entry["satisfied"] = satisfied
                entries.append(entry)
        else:  # pexider
            child = _suite_seed(seed, counter)
            counter += 1
            report = _pexider_suite(args.trials, child, tol)
            satisfied = report.failures == 0
            overall = overall and satisfied
            entry = report.to_dict()
            entry["expected"] = "preserve"
            entry["satisfied"] = satisfied
            entries.append(entry)

    run_report = {
        "tool_version": __version__,
        "seed": seed,
        "suites": entries,
        "overall": "pass" if overall else "fail",
    }
    text = dump_json(run_report) + "\n"
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if overall else 1


def _parse_int_list(raw: str, name: str) -> list[int]:
    try:
        values = [int(part) for part in raw.split(",") if part != ""]
    except ValueError as exc:
        raise ParseFailure(f"--{name} must be a comma-separated integer list") from exc
    if not values or any(v < 1 for v in values):
        raise ParseFailure(f"--{name} needs positive integers")
    return values


def _parse_float_list(raw: str, name: str) -> list[float]:
    try:
        values = [float(part) for part in raw.split(",") if part != ""]
    except ValueError as exc:
        raise ParseFailure(f"--{name} must be a comma-separated number list") from exc
    if not values or any(not math.isfinite(v) for v in values):
        raise ParseFailure(f"--{name} needs finite numbers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="effectkit", description="Effect algebra toolkit")

    def add_tol(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--tol", type=float, default=1.0, help="scale all tolerances by this factor")

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("strength", help="strength of an effect along a ray")
    s.add_argument("--effect", required=True, help="matrix document file")
    s.add_argument("--ray", required=True, help="vector document file")
    s.add_argument("--oracle", action="store_true", help="cross-check against bisection")
    add_tol(s)
    s.set_defaults(func=cmd_strength)

    v = sub.add_parser("verify", help="seeded verification suites")
    v.add_argument("--suite", default="all", choices=ALL_SUITES + ("all",))
    v.add_argument("--dims", default="2,3", help="comma-separated dimensions")
    v.add_argument("--p", default="0,0.5", help="comma-separated order parameters (each < 1)")
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=None, help="default: EFFECTKIT_SEED or 0")
    v.add_argument("--expect", default="auto", choices=("auto", "preserve", "counterexample"))
    v.add_argument("--json", default=None, help="also write the report to this file")
    add_tol(v)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("apply", help="apply a map document to an effect")
    a.add_argument("--map", required=True, help="map document file")
    a.add_argument("--effect", required=True, help="matrix document file")
    add_tol(a)
    a.set_defaults(func=cmd_apply)

    f = sub.add_parser("fit", help="fit the order parameter of a map document")
    f.add_argument("--map", required=True, help="map document file")
    f.add_argument("--grid", type=int, default=25, help="number of interior sample points")
    add_tol(f)
    f.set_defaults(func=cmd_fit)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except ParseFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except _CHECK_ERRORS as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return 1
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def run() -> None:
    sys.exit(main())

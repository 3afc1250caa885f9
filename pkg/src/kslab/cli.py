"""Command-line front end.

Exit status: 0 all checks pass, 1 some check fails, 2 usage error,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .boson import InconsistencyError, hurwitz_tau, q_product_identity_check
from .fermion import FockVec, bf_correspond, cross_check_operator
from .boson import schur_poly
from .grassmann import sato_wave, tau_from_basis
from .kacschwarz import (
    CheckReport,
    check_annihilation,
    check_commutator,
    check_ladder,
    check_recursion,
    check_w_constraints,
)
from .laurent import series_eq_to_order
from .models import ModelId, build_basis, build_phi, parse_model
from .oracle import check_tau_vs_oracle
from .partitions import partitions_upto

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_N, DEFAULT_JMAX, DEFAULT_DMAX = 40, 8, 5

BF_OPERATORS = [f"alpha({m})" for m in (1, -1, 2, -2, 3, -3, 4, -4)] + ["L(0)", "L(1)", "L(-1)", "K0"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: ModelId | None = None
    order: int = DEFAULT_N
    j_max: int = DEFAULT_JMAX
    k_max: int = 3
    l_max: int = 3
    d_max: int = DEFAULT_DMAX
    b_max: int = 6
    fmt: str = "json"
    output: str | None = None
    w_constraints: bool = False
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self):
        for name in ("order", "j_max", "k_max", "l_max", "d_max", "b_max", "jobs"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '')} must be positive")
        if self.fmt not in ("json", "tsv"):
            raise UsageError("--format must be json or tsv")


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def reports_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_json() for r in sorted(reports, key=CheckReport.sort_key)], indent=2) + "\n"


def reports_tsv(reports: list[CheckReport]) -> str:
    lines = ["check\tmodel\tstatus\tparams\tresidual"]
    for r in sorted(reports, key=CheckReport.sort_key):
        res = "; ".join(f"{k}:{v}" for k, v in r.residual)
        lines.append(f"{r.check_name}\t{r.model}\t{r.status}\t{json.dumps(r.params, sort_keys=True)}\t{res}")
    return "\n".join(lines) + "\n"


def _render(reports, cfg: RunConfig) -> str:
    return reports_json(reports) if cfg.fmt == "json" else reports_tsv(reports)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _run_task(task):
    fn, args = task
    return fn(*args)


def _dispatch(tasks, jobs: int) -> list[CheckReport]:
    if jobs <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks))


def cmd_verify(cfg: RunConfig):
    model = cfg.model or ModelId("hurwitz")
    N, J = cfg.order, cfg.j_max
    tasks = [
        (check_annihilation, (model, N)),
        (check_ladder, (model, J, N)),
        (check_recursion, (model, J, N)),
        (check_commutator, (model,)),
    ]
    if cfg.w_constraints:
        tasks.append((check_w_constraints, (model, cfg.k_max, cfg.l_max, 4, min(N, 30))))
    reports = _dispatch(tasks, cfg.jobs)
    return reports, _render(reports, cfg)


def _tau_for(model: ModelId, d_max: int):
    if model.family == "hurwitz":
        return hurwitz_tau(d_max)
    return tau_from_basis(build_basis(model, d_max, d_max), d_max)


def cmd_tau(cfg: RunConfig):
    model = cfg.model or ModelId("hurwitz")
    tau = _tau_for(model, cfg.d_max)
    if cfg.fmt == "tsv":
        return [], tau.to_tsv()
    rows = [
        {"grade": mu.size, "partition": list(mu), "coefficient": str(c)}
        for mu, c in sorted(tau.terms.items(), key=lambda kv: (kv[0].size, [-x for x in kv[0]]))
    ]
    return [], json.dumps({"model": str(model), "d_max": cfg.d_max, "terms": rows}, indent=2) + "\n"


def cmd_wave(cfg: RunConfig):
    model = cfg.model or ModelId("hurwitz")
    N = cfg.order
    tau = _tau_for(model, N)
    w = sato_wave(tau, N, tau_grade=N)
    phi0 = build_phi(model, 0, N)
    bad = series_eq_to_order(w, phi0)
    residual = [] if bad is None else [(bad.exponent, f"{bad.left} vs {bad.right}")]
    report = CheckReport("sato_wave", str(model), {"N": N}, residual)
    if cfg.fmt == "tsv":
        return [report], w.to_tsv()
    return [report], reports_json([report])


def cmd_oracle(cfg: RunConfig):
    if cfg.d_max > 6 or cfg.b_max > 8:
        raise UsageError("oracle bounds are --dmax <= 6 and --bmax <= 8")
    report, rows = check_tau_vs_oracle(cfg.d_max, cfg.b_max)
    lines = ["d\tmu\tb\tN\tnormalized\ttau\tmatch"]
    for d, mu, b, n, norm, tc, ok in rows:
        lines.append(f"{d}\t{mu}\t{b}\t{n}\t{norm}\t{tc}\t{'yes' if ok else 'NO'}")
    lines.append("ALL MATCH" if report.passed else "MISMATCH")
    return [report], "\n".join(lines) + "\n"


def _bf_basis_report(d_max: int) -> CheckReport:
    residual = []
    for lam in partitions_upto(d_max):
        if bf_correspond(FockVec.basis(lam), d_max) != schur_poly(lam):
            residual.append((str(lam), "bf image differs from s_lam"))
    return CheckReport("bf_schur", "fock", {"d_max": d_max}, residual)


def cmd_bf_check(cfg: RunConfig):
    tasks = [(_bf_basis_report, (cfg.d_max,))]
    tasks += [(cross_check_operator, (op, cfg.d_max)) for op in BF_OPERATORS]
    reports = _dispatch(tasks, cfg.jobs)
    return reports, _render(reports, cfg)


def cmd_identities(cfg: RunConfig):
    ex = cfg.extra
    tasks = [
        (q_product_identity_check, (ex.get("xmax_a", 6), ex.get("qmax_a", 20), True)),
        (q_product_identity_check, (ex.get("xmax", 8), ex.get("qmax", 25), False)),
    ]
    reports = _dispatch(tasks, cfg.jobs)
    return reports, _render(reports, cfg)


COMMANDS = {
    "verify": cmd_verify,
    "tau": cmd_tau,
    "wave": cmd_wave,
    "oracle": cmd_oracle,
    "bf-check": cmd_bf_check,
    "identities": cmd_identities,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    cfg.validate()
    reports, text = COMMANDS[cfg.command](cfg)
    status = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    return status, text


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kslab", description="Exact Kac-Schwarz and tau-function checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True):
        if model:
            sp.add_argument("--model", default="hurwitz", help="hurwitz | mv:r=<int> | coni:a=<int> | conii:a=<int>")
        sp.add_argument("--format", dest="fmt", default="json", choices=["json", "tsv"])
        sp.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")

    sp = sub.add_parser("verify", help="Kac-Schwarz suite for one model")
    common(sp)
    sp.add_argument("--order", type=int, default=DEFAULT_N)
    sp.add_argument("--jmax", type=int, default=DEFAULT_JMAX)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--lmax", type=int, default=3)
    sp.add_argument("--w-constraints", action="store_true", help="also check W-constraint containment")

    sp = sub.add_parser("tau", help="tau-function coefficient table")
    common(sp)
    sp.add_argument("--dmax", type=int, default=DEFAULT_DMAX)

    sp = sub.add_parser("wave", help="wave function from the tau-function vs phi_0")
    common(sp)
    sp.add_argument("--order", type=int, default=8)

    sp = sub.add_parser("oracle", help="tau coefficients vs symmetric-group enumeration")
    common(sp, model=False)
    sp.add_argument("--dmax", type=int, default=DEFAULT_DMAX)
    sp.add_argument("--bmax", type=int, default=6)

    sp = sub.add_parser("bf-check", help="boson-fermion correspondence checks")
    common(sp, model=False)
    sp.add_argument("--dmax", type=int, default=DEFAULT_DMAX)

    sp = sub.add_parser("identities", help="q-series product identities")
    common(sp, model=False)
    sp.add_argument("--xmax", type=int, default=8, help="x bound for the a=0 forms")
    sp.add_argument("--qmax", type=int, default=25, help="q bound for the a=0 forms")
    sp.add_argument("--xmax-a", type=int, default=6, help="x bound with symbolic a")
    sp.add_argument("--qmax-a", type=int, default=20, help="q bound with symbolic a")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, output=ns.output, jobs=ns.jobs)
    if hasattr(ns, "model"):
        try:
            cfg.model = parse_model(ns.model)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    for attr, name in (("order", "order"), ("j_max", "jmax"), ("k_max", "kmax"), ("l_max", "lmax"),
                       ("d_max", "dmax"), ("b_max", "bmax")):
        if hasattr(ns, name):
            setattr(cfg, attr, getattr(ns, name))
    cfg.w_constraints = getattr(ns, "w_constraints", False)
    if ns.command == "identities":
        cfg.extra = {"xmax": ns.xmax, "qmax": ns.qmax, "xmax_a": ns.xmax_a, "qmax_a": ns.qmax_a}
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        cfg = config_from_args(ns)
        status, text = run(cfg)
    except UsageError as exc:
        print(f"kslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistencyError, ArithmeticError, AssertionError) as exc:
        print(f"kslab: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

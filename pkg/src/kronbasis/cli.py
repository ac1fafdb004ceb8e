"""
Command-line front end: run one verification or the whole battery and report.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or I/O error,
3 a budget was exceeded or a result is incomplete (and nothing failed).
Every flag can also be set through an environment variable named
``KRONBASIS_<FLAG>``, e.g. ``KRONBASIS_BUDGET_CELLS``; flags win.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import DEFAULT_BUDGET_CELLS, BudgetExceeded, VerificationError
from .report import Check, Report, ReportError, emit_report, jsonable

log = logging.getLogger("kronbasis")

SUBCOMMANDS = ("basis", "rank", "grid", "schurweyl", "hecke-verify", "omega", "decompose",
               "vertices", "counterexample", "suite")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3
ENV_PREFIX = "KRONBASIS_"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: Optional[int] = None
    r: Optional[int] = None
    direction: str = "increasing"
    seed: int = 0
    budget_cells: int = DEFAULT_BUDGET_CELLS
    budget_perms: int = 720
    out: Optional[str] = None
    format: str = "text"
    timing: bool = True
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.r is not None and self.r < 0:
            raise UsageError("--r must be nonnegative")
        if self.direction not in ("increasing", "decreasing"):
            raise UsageError("--direction must be increasing or decreasing")
        if self.budget_cells <= 0 or self.budget_perms <= 0:
            raise UsageError("budgets must be positive")
        if self.format not in ("json", "csv", "text"):
            raise UsageError("--format must be json, csv or text")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")

    def require(self, *names: str) -> None:
        missing = [f"--{k}" for k in names if getattr(self, k) is None]
        if missing:
            raise UsageError(f"{self.subcommand} needs {', '.join(missing)}")

    def check_perms(self, n: int) -> None:
        if factorial(n) > self.budget_perms:
            raise BudgetExceeded(f"S_{n} has {factorial(n)} elements, budget is {self.budget_perms}")


# --------------------------------------------------------------------------
# running checks

def run_check(name: str, inputs: dict, expected, compute: Callable[[], tuple]) -> tuple[Check, float]:
    """``compute`` returns ``(actual, ok)`` or ``(actual, ok, detail)``.

    Budget overruns become ``incomplete``; verification failures and
    unexpected exceptions become ``fail`` with the message as detail.
    """
    t0 = time.perf_counter()
    try:
        res = compute()
        actual, ok = res[0], res[1]
        detail = res[2] if len(res) > 2 else ""
        status = "pass" if ok else "fail"
    except BudgetExceeded as exc:
        actual, status, detail = None, "incomplete", str(exc)
    except VerificationError as exc:
        actual, status, detail = None, "fail", str(exc)
    except Exception as exc:  # noqa: BLE001 - a crash is a failed check, not a crashed run
        log.exception("check %s raised", name)
        actual, status, detail = None, "fail", f"{type(exc).__name__}: {exc}"
    return Check(name, inputs, expected, actual, status, detail), time.perf_counter() - t0


def _words(perms) -> list[str]:
    return ["".join(map(str, w)) if len(w) < 10 else w.to_text() for w in perms]


# each task returns (Check, seconds); all are module-level so worker processes can run them

def task_basis(n: int, r: int, direction: str, budget: int) -> tuple[Check, float]:
    from .tensorrep import rsk_count, span_rank, theorem1_basis

    def go():
        basis = theorem1_basis(n, r, direction, budget=budget)
        rank_ = span_rank(n, r, budget)
        actual = {"count": len(basis), "span_rank": rank_, "independent": True, "basis": _words(basis)}
        return actual, len(basis) == rank_ == rsk_count(n, r)
    return run_check(f"basis n={n} r={r} {direction}", {"n": n, "r": r, "direction": direction},
                     {"count": rsk_count(n, r)}, go)


def task_theorem1(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .tensorrep import rsk_count, theorem1_report

    expected = rsk_count(n, r)

    def go():
        rep = theorem1_report(n, r, budget)
        actual = {k: rep[k] for k in ("span_rank", "increasing_count", "decreasing_count",
                                      "rsk_count", "kernel_dim", "w0_exchange")}
        ok = (rep["span_rank"] == rep["increasing_count"] == rep["decreasing_count"] == expected
              and rep["w0_exchange"])
        return actual, ok
    return run_check(f"theorem1 n={n} r={r}", {"n": n, "r": r}, {"span_rank": expected}, go)


def task_rank(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .permcomb import all_permutations, lis
    from .tensorrep import kernel_dim, rsk_count, span_rank

    def go():
        rank_ = span_rank(n, r, budget)
        lis_count = sum(1 for w in all_permutations(n) if lis(w) >= n - r)
        actual = {"span_rank": rank_, "lis_count": lis_count, "rsk_count": rsk_count(n, r),
                  "kernel_dim": kernel_dim(n, r, budget)}
        return actual, rank_ == lis_count == actual["rsk_count"]
    return run_check(f"rank n={n} r={r}", {"n": n, "r": r}, "span_rank = lis count = rsk count", go)


def task_grid(n: int) -> tuple[Check, float]:
    from .permcomb import all_permutations, consecutive_cycles, grid, lis

    def go():
        g = grid(n)
        flat = {w for row in g for w in row}
        lis_set = {w for w in all_permutations(n) if lis(w) >= n - 1}
        restricts = True
        if n >= 2:
            # dropping value n and slot n from grid(n) gives grid(n - 1)
            small = grid(n - 1)
            for k in range(n - 1):
                for j in range(n - 1):
                    restricts &= tuple(x for x in g[k][j] if x != n) == tuple(small[k][j])
        actual = {"distinct": len(flat), "equals_consecutive_cycles": flat == consecutive_cycles(n),
                  "equals_lis_set": flat == lis_set, "restricts": restricts}
        ok = len(flat) == n * n - 2 * n + 2 and flat == consecutive_cycles(n) == lis_set and restricts
        return actual, ok
    return run_check(f"grid n={n}", {"n": n}, {"distinct": n * n - 2 * n + 2}, go)


def task_schurweyl(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .partalg import schur_weyl_check

    def go():
        rep = schur_weyl_check(n, r, budget)
        actual = {k: v for k, v in rep.items() if k not in ("n", "r", "pass")}
        return actual, rep["pass"]
    return run_check(f"schurweyl n={n} r={r}", {"n": n, "r": r},
                     "diagram span = orbit commutant; centralizer = span of Kronecker powers", go)


def task_hecke(n: int) -> tuple[Check, float]:
    from .hecke import verify_all

    def go():
        rep = verify_all(n)
        actual = {k: v for k, v in rep.items() if k not in ("n", "pass")}
        return actual, rep["pass"]
    return run_check(f"hecke n={n}", {"n": n},
                     "KL elements, unitriangularity, Murphy ranks, sign identity, cell triangularity", go)


def task_theorem2a(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .hecke import theorem2a_check
    from .tensorrep import rsk_count

    expected = factorial(n) - rsk_count(n, r)

    def go():
        rep = theorem2a_check(n, r, budget)
        return {k: v for k, v in rep.items() if k not in ("n", "r")}, rep["pass"] and rep["size"] == expected
    return run_check(f"theorem2a n={n} r={r}", {"n": n, "r": r}, {"size": expected}, go)


def task_remark4(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .tensorrep import remark4_basis

    def go():
        chosen = remark4_basis(n, r, budget=budget)
        return {"count": len(chosen), "basis": _words(chosen)}, True
    return run_check(f"remark4 n={n} r={r}", {"n": n, "r": r}, "independent and spanning the S_{n-1} span", go)


def task_gamma_vertices(n: int, r: int, budget: int) -> tuple[Check, float]:
    from .permcomb import all_permutations
    from .stochastic import OmegaCoordinates, is_vertex
    from .tensorrep import kron_power

    def go():
        coords = OmegaCoordinates.build(n, r, budget=budget)
        flags = [is_vertex(kron_power(w, r), n, r, coords) for w in all_permutations(n)]
        return {"vertices": sum(flags), "points": len(flags)}, all(flags)
    return run_check(f"gamma vertices n={n} r={r}", {"n": n, "r": r}, {"vertices": factorial(n)}, go)


def task_greedy(n: int, r: int, count: int, seed: int, budget: int) -> tuple[Check, float]:
    from .stochastic import OmegaCoordinates, greedy_decompose, sample_omega_points
    from .tensorrep import phi

    def go():
        coords = OmegaCoordinates.build(n, r, budget=budget)
        pts = sample_omega_points(n, r, count, seed=seed, coords=coords)
        good = 0
        for p in pts:
            res = greedy_decompose(p.matrix, n, r, coords)
            if res.success and phi(res.certificate.weights, r, n) == p.matrix:
                good += 1
        return {"decomposed": good, "points": len(pts)}, good == len(pts) == count
    return run_check(f"greedy n={n} r={r}", {"n": n, "r": r, "count": count, "seed": seed},
                     {"decomposed": count}, go)


def task_counterexample(out_dir: Optional[str] = None) -> tuple[Check, float]:
    def go():
        facts = counterexample_facts()
        actual = {k: facts[k] for k in ("doubly_stochastic", "in_image", "positive_diagonal",
                                        "conv_hull", "farkas_verified", "is_vertex")}
        ok = (facts["doubly_stochastic"] and facts["in_image"] and facts["positive_diagonal"] is None
              and facts["conv_hull"] == "infeasible" and facts["farkas_verified"])
        if out_dir is not None:
            _write(Path(out_dir) / "counterexample.mtx", facts["matrix"].to_text())
            _write(Path(out_dir) / "counterexample_farkas.json", _dump(facts["certificate"].to_json()))
        return actual, ok, facts["summary"]
    return run_check("counterexample n=4 r=2", {"n": 4, "r": 2},
                     {"doubly_stochastic": True, "in_image": True, "positive_diagonal": None,
                      "conv_hull": "infeasible"}, go)


def task_vertices(n: int, r: int, cross_check: bool, seed: int, budget: int,
                  max_rays: int = 200_000, out_dir: Optional[str] = None) -> tuple[Check, float]:
    from .permcomb import all_permutations
    from .stochastic import OmegaCoordinates, enumerate_vertices, is_vertex, vertex_orbits
    from .tensorrep import kron_power

    def go():
        res = enumerate_vertices(n, r, budget=budget, max_rays=max_rays, cross_check=cross_check, seed=seed)
        if out_dir is not None:
            write_vertices(res, Path(out_dir))
        if not res.complete:
            raise BudgetExceeded(f"{len(res.vertices)} vertices found before stopping: {res.note}")
        coords = OmegaCoordinates.build(n, r, budget=budget)
        verified = all(is_vertex(v.matrix, n, r, coords) for v in res.vertices)
        gamma = {kron_power(w, r) for w in all_permutations(n)}
        gamma_hits = sum(1 for v in res.vertices if v.matrix in gamma)
        actual = {"vertices": len(res.vertices), "all_verified": verified, "gamma_points": gamma_hits,
                  "orbit_sizes": vertex_orbits(coords, [v.coordinates for v in res.vertices])}
        ok = verified and gamma_hits == factorial(n)
        if (n, r) == (4, 2):
            ok = ok and len(res.vertices) == 162
        return actual, ok, res.note
    expected = {"vertices": 162, "gamma_points": 24} if (n, r) == (4, 2) else {"gamma_points": factorial(n)}
    return run_check(f"vertices n={n} r={r}", {"n": n, "r": r, "cross_check": cross_check, "seed": seed},
                     expected, go)


# --------------------------------------------------------------------------
# counterexample and files

COUNTEREXAMPLE_SUMMARY = ("doubly stochastic: {ds}; in im(Φ): {im}; positive diagonal: {pd}; "
                          "conv hull: {ch}")


def counterexample_facts() -> dict:
    from .stochastic import (OmegaCoordinates, conv_hull_membership, in_span, is_doubly_stochastic,
                             is_vertex, positive_kron_diagonal, roberson_schmidt_matrix)

    M = roberson_schmidt_matrix().matrix
    coords = OmegaCoordinates.build(4, 2)
    cert = conv_hull_membership(M, 4, 2)
    diag = positive_kron_diagonal(M, 4, 2)
    facts = {
        "matrix": M,
        "certificate": cert,
        "doubly_stochastic": is_doubly_stochastic(M),
        "in_image": in_span(M, 4, 2, coords),
        "positive_diagonal": None if diag is None else diag.to_text(),
        "conv_hull": "feasible" if cert.feasible else "infeasible",
        "farkas_verified": cert.farkas is not None and cert.verify(M, 4, 2),
        "is_vertex": is_vertex(M, 4, 2, coords),
    }
    yn = {True: "yes", False: "no"}
    facts["summary"] = COUNTEREXAMPLE_SUMMARY.format(
        ds=yn[facts["doubly_stochastic"]], im=yn[facts["in_image"]],
        pd="none" if diag is None else facts["positive_diagonal"], ch=facts["conv_hull"])
    return facts


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportError(f"cannot write {path}: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# subcommands

def cmd_basis(cfg: RunConfig, report: Report) -> None:
    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    check, secs = task_basis(cfg.n, cfg.r, cfg.direction, cfg.budget_cells)
    report.add(check, secs)
    if check.passed:
        words = check.actual["basis"]
        report.output.append(f"{len(words)} permutations ({cfg.direction}, n={cfg.n}, r={cfg.r}):")
        report.output.append(" ".join(words))
        report.output.append(f"independent: yes; span rank: {check.actual['span_rank']}; "
                             f"count matches RSK shape sum: yes")


def cmd_rank(cfg: RunConfig, report: Report) -> None:
    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    report.add(*task_rank(cfg.n, cfg.r, cfg.budget_cells))


def cmd_grid(cfg: RunConfig, report: Report) -> None:
    from .permcomb import grid_text

    cfg.require("n")
    cfg.check_perms(cfg.n)
    report.output.append(grid_text(cfg.n).rstrip("\n"))
    report.output.append("")
    report.output.append(grid_text(cfg.n, cycles=True).rstrip("\n"))
    report.add(*task_grid(cfg.n))


def cmd_schurweyl(cfg: RunConfig, report: Report) -> None:
    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    report.add(*task_schurweyl(cfg.n, cfg.r, cfg.budget_cells))


def cmd_hecke(cfg: RunConfig, report: Report) -> None:
    cfg.require("n")
    cfg.check_perms(cfg.n)
    report.add(*task_hecke(cfg.n))
    if cfg.r is not None:
        report.add(*task_theorem2a(cfg.n, cfg.r, cfg.budget_cells))


def cmd_omega(cfg: RunConfig, report: Report) -> None:
    from .stochastic import OmegaCoordinates, section5_solution_space
    from .tensorrep import span_rank

    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    n, r = cfg.n, cfg.r

    def go():
        coords = OmegaCoordinates.build(n, r, budget=cfg.budget_cells)
        sol = section5_solution_space(n, r, budget=cfg.budget_cells)
        rank_ = span_rank(n, r, cfg.budget_cells)
        actual = {"dim": coords.dim, "entry_functionals": len(coords.rows), "linear_conditions_dim": len(sol)}
        return actual, coords.dim == len(sol) == rank_
    report.add(*run_check(f"omega n={n} r={r}", {"n": n, "r": r}, "coordinate dim = solution dim = span rank", go))
    count = int(cfg.extra.get("count") or 20)
    report.add(*task_greedy(n, r, count, cfg.seed, cfg.budget_cells))


def cmd_decompose(cfg: RunConfig, report: Report) -> None:
    from .exactlin import read_matrix
    from .stochastic import conv_hull_membership, greedy_decompose, omega_membership

    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    path = cfg.extra.get("matrix")
    if not path:
        raise UsageError("decompose needs --matrix FILE")
    try:
        M = read_matrix(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix {path}: {exc}") from exc
    n, r = cfg.n, cfg.r
    cert_out = cfg.extra.get("certificate")

    def go():
        if not omega_membership(M, n, r):
            return {"in_omega": False}, False, "matrix is not a doubly stochastic element of the span"
        res = greedy_decompose(M, n, r)
        cert = res.certificate if res.success else conv_hull_membership(M, n, r)
        if cert_out:
            _write(Path(cert_out), _dump(cert.to_json()))
        actual = {"in_omega": True, "greedy": res.success, "steps": len(res.steps),
                  "conv_hull": "feasible" if cert.feasible else "infeasible"}
        actual.update(cert.to_json())
        # a verified Farkas certificate is a correct answer, not a failure
        return actual, cert.verify(M, n, r)
    report.add(*run_check(f"decompose {Path(path).name}", {"n": n, "r": r, "matrix": str(path)},
                          "greedy weights or exact certificate", go))


def cmd_vertices(cfg: RunConfig, report: Report) -> None:
    cfg.require("n", "r")
    cfg.check_perms(cfg.n)
    out_dir = cfg.extra.get("dir")
    report.add(*task_vertices(cfg.n, cfg.r, bool(cfg.extra.get("cross_check")), cfg.seed,
                              cfg.budget_cells, int(cfg.extra.get("max_rays") or 200_000), out_dir))
    if out_dir:
        report.output.append(f"vertex matrices and index.json written to {out_dir}")


def write_vertices(res, out_dir: Path) -> None:
    """One matrix file per vertex plus ``index.json`` with coordinates."""
    from .permcomb import all_permutations
    from .tensorrep import kron_power

    index = []
    gamma = {}
    if res.vertices:
        n, r = res.vertices[0].n, res.vertices[0].r
        gamma = {kron_power(w, r): w for w in all_permutations(n)}
    width = len(str(len(res.vertices)))
    for k, v in enumerate(res.vertices):
        name = f"vertex_{k:0{width}d}.mtx"
        _write(out_dir / name, v.matrix.to_text())
        w = gamma.get(v.matrix)
        index.append({"file": name, "coordinates": list(v.coordinates),
                      "gamma": None if w is None else w.to_text()})
    meta = {"method": res.method, "complete": res.complete, "note": res.note, "vertices": index}
    _write(out_dir / "index.json", _dump(meta))


def cmd_counterexample(cfg: RunConfig, report: Report) -> None:
    out_dir = cfg.extra.get("dir") or "."
    check, secs = task_counterexample(out_dir)
    report.add(check, secs)
    if check.actual is not None:
        report.output.append(check.detail)
        report.output.append(f"matrix written to {Path(out_dir) / 'counterexample.mtx'}")


# desk-scale instance lists for the full battery
SUITE_THEOREM1 = [(n, r) for n in range(2, 7) for r in (1, 2)] + [(n, 3) for n in range(2, 6)]
SUITE_GRID = list(range(2, 11))
SUITE_GREEDY = [(2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]
SUITE_SCHURWEYL = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]
SUITE_HECKE = [1, 2, 3, 4]
SUITE_THEOREM2A = [(4, 1), (4, 2), (5, 1), (5, 2), (5, 3)]
SUITE_REMARK4 = [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)]


def suite_tasks(cfg: RunConfig) -> list[tuple[Callable, tuple]]:
    b = cfg.budget_cells
    quick = bool(cfg.extra.get("quick"))
    tasks: list[tuple[Callable, tuple]] = []
    tasks += [(task_theorem1, (n, r, b)) for n, r in SUITE_THEOREM1 if not (quick and n ** (2 * r) > 2000)]
    tasks += [(task_grid, (n,)) for n in SUITE_GRID]
    tasks.append((task_counterexample, ()))
    tasks.append((task_gamma_vertices, (4, 2, b)))
    count = 10 if quick else 100
    tasks += [(task_greedy, (n, r, count, cfg.seed, b)) for n, r in SUITE_GREEDY]
    tasks.append((task_vertices, (4, 2, not quick, cfg.seed, b)))
    tasks += [(task_schurweyl, (n, r, b)) for n, r in SUITE_SCHURWEYL if not (quick and n ** r > 16)]
    tasks += [(task_hecke, (n,)) for n in SUITE_HECKE]
    tasks += [(task_theorem2a, (n, r, b)) for n, r in SUITE_THEOREM2A if not (quick and n ** r > 25)]
    tasks += [(task_remark4, (n, r, b)) for n, r in SUITE_REMARK4]
    return tasks


def _call(task) -> tuple[Check, float]:
    fn, args = task
    return fn(*args)


def cmd_suite(cfg: RunConfig, report: Report) -> None:
    tasks = suite_tasks(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_call, tasks))
    else:
        results = []
        for task in tasks:
            results.append(_call(task))
            log.info("%s: %s", results[-1][0].name, results[-1][0].status)
    for check, secs in sorted(results, key=lambda cs: cs[0].name):
        report.add(check, secs)


COMMANDS = {
    "basis": cmd_basis, "rank": cmd_rank, "grid": cmd_grid, "schurweyl": cmd_schurweyl,
    "hecke-verify": cmd_hecke, "omega": cmd_omega, "decompose": cmd_decompose,
    "vertices": cmd_vertices, "counterexample": cmd_counterexample, "suite": cmd_suite,
}


# --------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _env_int(name: str, default):
    raw = _env(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=_env_int("n", None))
    common.add_argument("--r", type=int, default=_env_int("r", None))
    common.add_argument("--direction", default=_env("direction", "increasing"),
                        choices=["increasing", "decreasing"])
    common.add_argument("--seed", type=int, default=_env_int("seed", 0))
    common.add_argument("--budget-cells", type=int, default=_env_int("budget_cells", DEFAULT_BUDGET_CELLS),
                        help="largest n^(2r) * n! elimination allowed")
    common.add_argument("--budget-perms", type=int, default=_env_int("budget_perms", 720),
                        help="largest n! allowed")
    common.add_argument("--out", default=_env("out"), help="report path (default: stdout)")
    common.add_argument("--format", default=_env("format", "text"), choices=["json", "csv", "text"])
    common.add_argument("--no-timing", action="store_true", help="omit wall times from the report")
    common.add_argument("--jobs", type=int, default=_env_int("jobs", 1))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="kronbasis", description="Exact verifications for Kronecker powers of permutation matrices.")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    helps = {
        "basis": "increasing/decreasing basis of the Kronecker-power span",
        "rank": "span rank by elimination and by counting",
        "grid": "slot-filling grid as words and as cycles",
        "schurweyl": "partition algebra commutant and bicommutant",
        "hecke-verify": "Kazhdan-Lusztig and Murphy checks (with --r: annihilator basis)",
        "omega": "coordinates of the doubly stochastic set and seeded decompositions",
        "decompose": "decompose a matrix file into Kronecker powers or certify it cannot be",
        "vertices": "enumerate the vertices of the doubly stochastic set",
        "counterexample": "the doubly stochastic matrix outside the convex hull",
        "suite": "the full acceptance battery",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in SUBCOMMANDS}
    subs["omega"].add_argument("--count", type=int, default=_env_int("count", 20))
    subs["decompose"].add_argument("--matrix", default=_env("matrix"), help="matrix file to decompose")
    subs["decompose"].add_argument("--certificate", default=None, help="write the certificate JSON here")
    subs["vertices"].add_argument("--dir", default=_env("dir"), help="write vertex matrices and index.json here")
    subs["vertices"].add_argument("--cross-check", action="store_true",
                                  help="confirm the vertex set with the pivoting enumerator")
    subs["vertices"].add_argument("--max-rays", type=int, default=_env_int("max_rays", 200_000))
    subs["counterexample"].add_argument("--dir", default=_env("dir"), help="where to write counterexample.mtx")
    subs["suite"].add_argument("--quick", action="store_true", help="smaller instances, no pivot cross-check")
    return parser


EXTRA_KEYS = ("count", "matrix", "certificate", "dir", "cross_check", "max_rays", "quick")


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    if args.subcommand is None:
        raise UsageError(f"choose a subcommand: {', '.join(SUBCOMMANDS)}")
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    extra = {k: getattr(args, k) for k in EXTRA_KEYS if hasattr(args, k)}
    return RunConfig(args.subcommand, args.n, args.r, args.direction, args.seed, args.budget_cells,
                     args.budget_perms, args.out, args.format, not args.no_timing, args.jobs, extra)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> tuple[int, Optional[Report]]:
    """Parse, dispatch, write the report; returns the exit status and the report."""
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"kronbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    report = Report()
    try:
        COMMANDS[cfg.subcommand](cfg, report)
    except UsageError as exc:
        print(f"kronbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except BudgetExceeded as exc:
        report.add(Check(cfg.subcommand, {"n": cfg.n, "r": cfg.r}, None, None, "incomplete", str(exc)))
    except ReportError as exc:
        print(f"kronbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, report
    try:
        text = emit_report(report, cfg.format, cfg.out, cfg.timing)
    except ReportError as exc:
        print(f"kronbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, report
    if cfg.out is None:
        stdout.write(text)
    elif report.output:
        stdout.write("\n".join(report.output) + "\n")
    return report.exit_code(), report


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

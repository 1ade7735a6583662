"""Batch front end: ``mopuc --job job.json [--out DIR] [--seed N] [--threads N]``.

A job file names a functional system, a scalar field, a task and an index
set.  The report is written as JSON (``report_version`` 1) and summarized on
stdout.  Exit status: 0 when everything passes or skips, 1 when any check
fails, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import core, hermite_pade, real_mop, relations
from .core import MultiIndexPair
from .descriptors import SchemaError, system_from_json
from .errors import HypothesisViolated, InvalidInput, MomentUnavailable, MopucError, NotNormal, NotSymmetric
from .moments import FunctionalSystem, szego_map
from .scalars import scalar_to_json

__all__ = ["JobSpec", "parse_job", "run", "main", "REPORT_VERSION", "TASKS"]

REPORT_VERSION = 1
TASKS = ("compute", "verify", "hermite-pade", "szego-bridge")
JOB_FIELDS = {"system", "field", "task", "indices", "box", "depth", "output", "seed", "christoffel_darboux"}


@dataclass
class JobSpec:
    system: FunctionalSystem
    field: str
    task: str
    indices: list  # MultiIndexPair, or tuples of ints for szego-bridge
    depth: int | None
    output: str
    seed: int
    cd: dict | None


def _int(obj, path, minimum=None):
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise SchemaError(path, f"expected an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        raise SchemaError(path, f"must be >= {minimum}")
    return obj


def _int_list(obj, path, r):
    if not isinstance(obj, list) or len(obj) != r:
        raise SchemaError(path, f"expected a list of {r} integers")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(obj))


def _box(box, r, real: bool):
    box = dict(box)
    unknown = set(box) - {"n_max", "m_max", "total_max"}
    if unknown:
        raise SchemaError(f"box.{sorted(unknown)[0]}", "unknown field")
    if "n_max" not in box:
        raise SchemaError("box.n_max", "missing")
    n_max = _int(box["n_max"], "box.n_max", 0)
    m_max = 0 if real else _int(box.get("m_max", 0), "box.m_max", 0)
    total = box.get("total_max")
    if total is not None:
        total = _int(total, "box.total_max", 0)
    out = []
    for n in itertools.product(range(n_max + 1), repeat=r):
        if real:
            if total is None or sum(n) <= total:
                out.append(n)
            continue
        for m in itertools.product(range(m_max + 1), repeat=r):
            if total is None or sum(n) + sum(m) <= total:
                out.append(MultiIndexPair(n, m))
    return sorted(out, key=_order_key)


def _order_key(i):
    if isinstance(i, MultiIndexPair):
        return (i.abs_n + i.abs_m, i.n, i.m)
    return (sum(i), i)


def parse_job(obj, seed: int | None = None) -> JobSpec:
    """Validate a decoded job object; raises SchemaError naming the bad field."""
    if not isinstance(obj, dict):
        raise SchemaError("job", "expected an object")
    unknown = set(obj) - JOB_FIELDS
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unknown field")
    if "system" not in obj:
        raise SchemaError("system", "missing")
    system = system_from_json(obj["system"])
    fld = obj.get("field", "exact")
    if fld not in ("exact", "float"):
        raise SchemaError("field", "must be \"exact\" or \"float\"")
    task = obj.get("task")
    if task not in TASKS:
        raise SchemaError("task", f"must be one of {list(TASKS)}")
    real = task == "szego-bridge"
    if system.kind == "real":
        if not real:
            raise SchemaError("system", "real-line functionals are only accepted by the szego-bridge task")
        system = FunctionalSystem([szego_map(M) for M in system], f"Sz({system.description})")
    if real and not system.symmetric:
        raise SchemaError("system", "szego-bridge needs functionals with c_k = c_-k")
    if fld == "float":
        system = system.to_float()
    r = system.r

    if ("indices" in obj) == ("box" in obj):
        raise SchemaError("indices", "give exactly one of \"indices\" or \"box\"")
    if "indices" in obj:
        raw = obj["indices"]
        if not isinstance(raw, list) or not raw:
            raise SchemaError("indices", "expected a nonempty list")
        indices = []
        for k, item in enumerate(raw):
            path = f"indices[{k}]"
            if real:
                n = _int_list(item, path, r)
                if min(n) < 0:
                    raise SchemaError(path, "real-line multi-indices are nonnegative")
                indices.append(n)
                continue
            if not isinstance(item, dict) or set(item) != {"n", "m"}:
                raise SchemaError(path, "expected {\"n\": [...], \"m\": [...]}")
            idx = MultiIndexPair(_int_list(item["n"], f"{path}.n", r), _int_list(item["m"], f"{path}.m", r))
            if not idx.in_domain():
                raise SchemaError(path, f"{idx} has some n_j + m_j < 0")
            indices.append(idx)
    else:
        if not isinstance(obj["box"], dict):
            raise SchemaError("box", "expected an object")
        indices = _box(obj["box"], r, real)
    if not indices:
        raise SchemaError("box", "the index set is empty")

    depth = obj.get("depth")
    if depth is not None:
        depth = _int(depth, "depth", 0)
        if task == "hermite-pade":
            need = max(i.abs_n + i.abs_m for i in indices)
            if depth < need:
                raise SchemaError("depth", f"must be >= {need} (largest |n|+|m| in the index set)")
    if task == "hermite-pade":
        for k, i in enumerate(indices):
            if min(i.n + i.m) < 0:
                raise SchemaError(f"indices[{k}]", "Hermite-Pade tasks need n, m >= 0")

    cd = obj.get("christoffel_darboux")
    if cd is not None:
        if task != "verify":
            raise SchemaError("christoffel_darboux", "only used by the verify task")
        if not isinstance(cd, dict):
            raise SchemaError("christoffel_darboux", "expected an object")
        unknown = set(cd) - {"m", "n_max", "points"}
        if unknown:
            raise SchemaError(f"christoffel_darboux.{sorted(unknown)[0]}", "unknown field")
        cd = {
            "m": _int_list(cd.get("m", [0] * r), "christoffel_darboux.m", r),
            "n_max": _int(cd.get("n_max", 3), "christoffel_darboux.n_max", 0),
            "points": _int(cd.get("points", 8), "christoffel_darboux.points", 1),
        }
        if min(cd["m"]) < 0:
            raise SchemaError("christoffel_darboux.m", "must be nonnegative")

    output = obj.get("output", "report.json")
    if not isinstance(output, str) or not output or Path(output).name != output:
        raise SchemaError("output", "expected a plain file name")
    job_seed = _int(obj.get("seed", 0), "seed")
    return JobSpec(system, fld, task, indices, depth, output, job_seed if seed is None else seed, cd)


# -- tasks ------------------------------------------------------------------------------


def _json_or_none(x):
    return None if x is None else scalar_to_json(x)


def _try(f, *args):
    try:
        return f(*args)
    except (NotNormal, ArithmeticError):
        return None


def _compute_one(S, idx: MultiIndexPair) -> dict:
    normal = core.is_normal(S, idx)
    row = {"index": idx.to_json(), "normal": normal, "det_T": scalar_to_json(core.det_T(S, idx))}
    if not normal:
        return row
    r = S.r
    row["alpha"] = scalar_to_json(core.alpha(S, idx))
    row["beta"] = scalar_to_json(core.beta(S, idx))
    row["rho"] = [_json_or_none(_try(core.rho, S, idx, j)) for j in range(r)]
    row["sigma"] = [_json_or_none(_try(core.sigma, S, idx, j)) for j in range(r)]
    row["gamma"] = {
        f"{k},{l}": _json_or_none(_try(core.gamma, S, idx, k, l)) for k in range(r) for l in range(r) if k != l
    }
    row["eta"] = {
        f"{k},{l}": _json_or_none(_try(core.eta, S, idx, k, l)) for k in range(r) for l in range(r) if k != l
    }
    row["phi"] = core.phi(S, idx).to_json()
    row["phi_star"] = core.phi_star(S, idx).to_json()
    row["xi"] = core.xi(S, idx).to_json()
    row["xi_star"] = core.xi_star(S, idx).to_json()
    return row


def _verify_one(S, idx):
    return [rep.to_json() for rep in relations.verify_index(S, idx)]


def _cd_reports(S, cd, seed):
    points = relations.random_points(cd["points"], seed)
    m = cd["m"]
    start = tuple(-x for x in m)
    out = []
    for steps in itertools.product(range(cd["n_max"] + 1), repeat=S.r):
        if sum(steps) > cd["n_max"] or sum(steps) == 0:
            continue
        target = tuple(s + k for s, k in zip(start, steps))
        if not core.is_normal(S, MultiIndexPair(target, m)):
            continue
        for path in relations.enumerate_paths(m, target):
            for z, xi in points:
                out += [rep.to_json() for rep in relations.christoffel_darboux(S, path, z, xi)]
    return out


def _hp_one(S, idx, depth):
    rows = []
    for fam in hermite_pade.FAMILIES:
        if not core.is_normal(S, idx):
            rows.append({"family": fam, "index": idx.to_json(), "status": "skip", "reason": f"{idx} is not normal"})
            continue
        pair = hermite_pade.approximant(S, idx, fam)
        cert = hermite_pade.certify_orders(S, pair, idx, depth)
        row = cert.to_json()
        row["status"] = "pass" if cert.passed else "fail"
        rows.append(row)
    return rows


def _bridge_one(S, n):
    M = real_mop.real_system_of(S)
    rows = []
    try:
        checks = real_mop.szego_polynomial_check(S, n)
    except HypothesisViolated as e:
        return [{"n": list(n), "status": "skip", "reason": str(e)}]
    rows += [rep.to_json() for rep in checks]
    for j in range(S.r):
        row = {"n": list(n), "j": j}
        try:
            reps = real_mop.geronimus_check(S, n, j)
        except HypothesisViolated as e:
            rows.append(dict(row, status="skip", reason=str(e)))
            continue
        try:
            a_real, b_real = real_mop.nn_coefficients(M, n, j, check=False)
            row["real"] = {"a": scalar_to_json(a_real), "b": scalar_to_json(b_real)}
        except NotNormal:
            row["real"] = None
        a_pred, b_pred, _ = real_mop.geronimus_prediction(S, n, j)
        row["circle"] = {"a": scalar_to_json(a_pred), "b": scalar_to_json(b_pred)}
        row["checks"] = [rep.to_json() for rep in reps]
        statuses = {rep.status for rep in reps}
        row["status"] = "fail" if "fail" in statuses else ("pass" if "pass" in statuses else "skip")
        rows.append(row)
    return rows


def _statuses(rows):
    counts = {"pass": 0, "fail": 0, "skip": 0}

    def walk(x):
        if isinstance(x, dict):
            if x.get("status") in counts and "checks" not in x:
                counts[x["status"]] += 1
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(rows)
    return counts


def run(job: JobSpec, threads: int = 1) -> dict:
    """Execute a validated job and return the report object."""
    S = job.system
    if job.task == "compute":
        work = lambda i: [_compute_one(S, i)]  # noqa: E731
    elif job.task == "verify":
        work = lambda i: _verify_one(S, i)  # noqa: E731
    elif job.task == "hermite-pade":
        work = lambda i: _hp_one(S, i, job.depth)  # noqa: E731
    else:
        work = lambda n: _bridge_one(S, n)  # noqa: E731
    # map() keeps submission order, so the report does not depend on scheduling
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        chunks = list(pool.map(work, job.indices))
    results = [row for chunk in chunks for row in chunk]
    if job.task == "verify" and job.cd is not None:
        results += _cd_reports(S, job.cd, job.seed)
    if job.task == "szego-bridge" and S.r == 1:
        depth = job.depth if job.depth is not None else max(sum(n) for n in job.indices)
        reps = real_mop.classical_geronimus_check(S, depth, strict=False)
        results += [rep.to_json() for rep in reps]
    report = {
        "report_version": REPORT_VERSION,
        "task": job.task,
        "system": S.description,
        "r": S.r,
        "field": job.field,
        "seed": job.seed,
        "results": results,
    }
    if job.task == "szego-bridge":
        report["conventions"] = (
            "a is the monic recurrence coefficient M[P_n x^n]/M[P_(n-e_j) x^(n_j-1)]; "
            "classical relations use alpha_0 = 1 and alpha_-1 = 0"
        )
    if job.task != "compute":
        report["summary"] = _statuses(results)
    return report


def _table(report) -> str:
    lines = [f"task {report['task']} on {report['system']} (r={report['r']}, {report['field']})"]
    if report["task"] == "compute":
        for row in report["results"]:
            idx = MultiIndexPair(row["index"]["n"], row["index"]["m"])
            if not row["normal"]:
                lines.append(f"  {str(idx):<24} not normal")
                continue
            lines.append(f"  {str(idx):<24} alpha={_fmt(row['alpha'])}  beta={_fmt(row['beta'])}")
        return "\n".join(lines)
    s = report["summary"]
    lines.append(f"  pass {s['pass']}  fail {s['fail']}  skip {s['skip']}")
    if report["task"] == "szego-bridge":
        for row in report["results"]:
            if "circle" in row and row.get("real"):
                lines.append(
                    f"  n={row['n']} j={row['j']}  circle a={_fmt(row['circle']['a'])} b={_fmt(row['circle']['b'])}"
                    f"  real a={_fmt(row['real']['a'])} b={_fmt(row['real']['b'])}  {row['status']}"
                )
    return "\n".join(lines)


def _fmt(s) -> str:
    re, im = s["re"], s["im"]
    if isinstance(re, str):
        re = re[:-2] if re.endswith("/1") else re
        if im in ("0/1", "0"):
            return re
        im = im[:-2] if im.endswith("/1") else im
        return f"({re})+({im})i"
    return f"{complex(re, im):.6g}"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mopuc", description="Laurent multiple orthogonal polynomials on the unit circle")
    parser.add_argument("--job", required=True, help="path to the JSON job file")
    parser.add_argument("--out", default=".", help="directory for the report (default: current directory)")
    parser.add_argument("--seed", type=int, default=None, help="seed for random evaluation points")
    parser.add_argument("--threads", type=int, default=1, help="worker threads")
    args = parser.parse_args(argv)

    try:
        text = Path(args.job).read_text()
    except OSError as e:
        print(f"error: cannot read job file: {e}", file=sys.stderr)
        return 2
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        print(f"error: {args.job}:{e.lineno}:{e.colno}: {e.msg}", file=sys.stderr)
        return 2
    try:
        job = parse_job(obj, args.seed)
        report = run(job, args.threads)
    except SchemaError as e:
        print(f"error: {args.job}: field {e}", file=sys.stderr)
        return 2
    except MomentUnavailable as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InvalidInput, NotSymmetric) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except MopucError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / job.output
    path.write_text(json.dumps(report, indent=2) + "\n")
    print(_table(report))
    print(f"report written to {path}")
    return 1 if report.get("summary", {}).get("fail", 0) else 0


if __name__ == "__main__":
    sys.exit(main())

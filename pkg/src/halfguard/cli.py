"""Command-line front end: ``halfguard <command> ...``.

Exit codes: 0 pass, 1 coverage failure, 2 parse error, 3 class mismatch,
4 oracle timeout.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable

from .bounds import (
    GuardSolution,
    convex_partition_guards,
    fisk_double,
    lshape_guards,
    mountain_guards,
    mountain_high_reflex_guards,
)
from .classify import classify
from .families import Family, FamilySpec, generate
from .geom import HalfGuard, Polygon, PolygonFormatError, format_scalar, read_polygon_text, write_polygon_text
from .oracle import OracleTimeout
from .oracle import solve as oracle_solve
from .visibility import covers, half_visibility_polygon

EXIT_PASS, EXIT_UNCOVERED, EXIT_PARSE, EXIT_CLASS, EXIT_TIMEOUT = 0, 1, 2, 3, 4


@dataclass
class RunReport:
    instance: str
    flags: str
    algorithm: str
    guard_count: int
    bound: int
    opt: int | None
    ratio: float | None
    covered: bool
    wall_time: float
    status: str = "PASS"
    error: str = ""

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


def _staircase(poly: Polygon, vertex_guards: bool = False) -> GuardSolution:
    from .staircase import solve_staircase

    return solve_staircase(poly, vertex_guards=vertex_guards)


def _spiral(poly: Polygon, dump: str | None = None, allow_vertical: bool = False) -> GuardSolution:
    from .spiral import spiral_dp

    return spiral_dp(poly, allow_vertical=allow_vertical, dump_path=dump)


# algorithm name -> (class flag it needs, runner)
ALGORITHMS: dict[str, tuple[str, Callable[..., GuardSolution]]] = {
    "fisk": ("simple", fisk_double),
    "convex": ("simple", convex_partition_guards),
    "lshape": ("orthogonal", lshape_guards),
    "mountain": ("monotone_mountain", mountain_guards),
    "mountain-high": ("monotone_mountain", mountain_high_reflex_guards),
    "staircase": ("staircase", _staircase),
    "spiral": ("spiral", _spiral),
}


class ClassMismatch(ValueError):
    pass


def run_algorithm(poly: Polygon, alg: str, **kw) -> GuardSolution:
    need, fn = ALGORITHMS[alg]
    cls = classify(poly)
    if not getattr(cls, need):
        raise ClassMismatch(f"--alg {alg} needs a polygon of class {need.replace('_', '-')}")
    return fn(poly, **kw)


def solve_report(
    poly: Polygon,
    alg: str,
    instance: str = "",
    with_oracle: bool = False,
    timeout: float | None = None,
    **kw,
) -> tuple[RunReport, GuardSolution]:
    t0 = time.perf_counter()
    cls = classify(poly)
    sol = run_algorithm(poly, alg, **kw)
    covered = covers(sol.guards, poly).covered
    opt = None
    ratio = None
    if with_oracle:
        res = oracle_solve(poly, k_max=len(sol.guards), timeout=timeout)
        opt = res.opt if res is not None else len(sol.guards)
        ratio = len(sol.guards) / opt
    rep = RunReport(
        instance=instance,
        flags=" ".join(cls.names()),
        algorithm=sol.algorithm.value,
        guard_count=len(sol.guards),
        bound=sol.bound,
        opt=opt,
        ratio=ratio,
        covered=covered,
        wall_time=round(time.perf_counter() - t0, 4),
        status="PASS" if covered else "FAIL",
    )
    return rep, sol


def _load(path: str) -> Polygon:
    with open(path) as fh:
        return read_polygon_text(fh.read())


def _guard_text(g: HalfGuard) -> str:
    return f"{g.dir.value} {format_scalar(g.position.x)} {format_scalar(g.position.y)}"


def _report_json(rep: RunReport, guards: list[HalfGuard], path: str) -> None:
    data = asdict(rep)
    data["guards"] = [
        {"x": format_scalar(g.position.x), "y": format_scalar(g.position.y), "dir": g.dir.value} for g in guards
    ]
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)


def cmd_classify(args) -> int:
    poly = _load(args.file)
    for name in classify(poly).names():
        print(name)
    return EXIT_PASS


def cmd_generate(args) -> int:
    spec = FamilySpec(Family.parse(args.family), n=args.n, seed=args.seed, eps=Fraction(args.eps), length=Fraction(args.length))
    poly = generate(spec)
    text = write_polygon_text(poly, comment=f"{spec.family.value} n={spec.n} seed={spec.seed}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_solve(args) -> int:
    poly = _load(args.file)
    kw = {}
    if args.alg == "staircase":
        kw["vertex_guards"] = args.vertex_guards
    if args.alg == "spiral":
        kw["dump"] = args.dump_dp
        kw["allow_vertical"] = args.allow_vertical
    rep, sol = solve_report(poly, args.alg, instance=args.file, with_oracle=args.oracle, timeout=args.timeout, **kw)
    for g in sol.guards:
        print(_guard_text(g))
    line = f"{rep.status} {rep.algorithm} guards={rep.guard_count} bound={rep.bound}"
    if rep.opt is not None:
        line += f" opt={rep.opt} ratio={rep.ratio:.3f}"
    print(line)
    if args.json:
        _report_json(rep, sol.guards, args.json)
    return EXIT_PASS if rep.covered else EXIT_UNCOVERED


def cmd_oracle(args) -> int:
    poly = _load(args.file)
    res = oracle_solve(poly, k_max=args.kmax, timeout=args.timeout, rich=args.rich)
    if res is None:
        print(f"no cover with at most {args.kmax} guards among the candidates")
        return EXIT_UNCOVERED
    for g in res.guards:
        print(_guard_text(g))
    print(f"OPT={res.opt} candidates={res.candidates} witnesses={len(res.witnesses)} rounds={res.rounds}")
    return EXIT_PASS


def cmd_render(args) -> int:
    from .render import Scene, write_svg

    poly = _load(args.file)
    scene = Scene(poly, title=args.file)
    if args.alg:
        if args.alg == "staircase":
            from .staircase import run_staircase

            run = run_staircase(poly, vertex_guards=args.vertex_guards)
            scene.guards = run.guards
            scene.witnesses = list(run.chain.witnesses)
        else:
            scene.guards = run_algorithm(poly, args.alg).guards
    if args.regions:
        for g in scene.guards:
            scene.regions.extend((piece, g.dir) for piece in half_visibility_polygon(g, poly).pieces)
    write_svg(args.output, scene)
    return EXIT_PASS


def _batch_jobs(spec: dict) -> list[dict]:
    jobs = []
    for entry in spec.get("runs", []):
        seeds = entry.get("seeds", [0])
        if isinstance(seeds, int):
            seeds = list(range(seeds))
        sizes = entry.get("sizes", [entry.get("n", 0)])
        for n in sizes:
            for seed in seeds:
                for alg in entry.get("algorithms", []):
                    jobs.append({
                        "family": entry["family"],
                        "n": n,
                        "seed": seed,
                        "alg": alg,
                        "oracle": bool(entry.get("oracle", False)),
                        "timeout": entry.get("timeout"),
                    })
    return jobs


def _run_job(job: dict) -> RunReport:
    name = f"{job['family']}:n={job['n']}:seed={job['seed']}"
    t0 = time.perf_counter()
    try:
        poly = generate(FamilySpec(Family.parse(job["family"]), n=job["n"], seed=job["seed"]))
        rep, _ = solve_report(poly, job["alg"], instance=name, with_oracle=job["oracle"], timeout=job["timeout"])
        return rep
    except Exception as exc:  # recorded in the row; the batch carries on
        return RunReport(name, "", job["alg"], 0, 0, None, None, False, round(time.perf_counter() - t0, 4),
                         status="ERROR", error=f"{type(exc).__name__}: {exc}")


def cmd_batch(args) -> int:
    with open(args.spec) as fh:
        text = fh.read()
    spec = json.loads(text) if text.strip() else {}
    jobs = _batch_jobs(spec)
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run_job, jobs))  # map keeps spec order
    else:
        reports = [_run_job(j) for j in jobs]
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(RunReport.header())
        for r in reports:
            w.writerow(r.row())
    finally:
        if args.output:
            out.close()
    return EXIT_PASS if all(r.status == "PASS" for r in reports) else EXIT_UNCOVERED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="halfguard", description="Opposing half guards in simple polygons, with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="print the classes a polygon belongs to")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("generate", help="write a polygon from one of the built-in families")
    g.add_argument("--family", required=True, help=", ".join(f.value for f in Family))
    g.add_argument("--n", type=int, default=0, help="size parameter of the family")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--eps", default="1/100", help="offset used by witness constructions")
    g.add_argument("--length", default="100", help="corridor length for TwoGuardable")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="place guards with one of the algorithms and verify coverage")
    s.add_argument("file")
    s.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    s.add_argument("--vertex-guards", action="store_true", help="staircase: slide stair guards onto vertices")
    s.add_argument("--allow-vertical", action="store_true", help="spiral: accept vertical edges")
    s.add_argument("--dump-dp", metavar="JSON", help="spiral: write the DP table")
    s.add_argument("--oracle", action="store_true", help="also compute OPT and the ratio")
    s.add_argument("--timeout", type=float, default=None, help="oracle timeout in seconds")
    s.add_argument("--json", metavar="PATH", help="write a JSON report next to the text output")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact minimum cover over the candidate set")
    o.add_argument("file")
    o.add_argument("--kmax", type=int, default=8)
    o.add_argument("--rich", action="store_true", help="add crossings of vertex-pair lines as candidates")
    o.add_argument("--timeout", type=float, default=None)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("render", help="draw the polygon, and optionally guards, as SVG")
    r.add_argument("file")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--alg", choices=sorted(ALGORITHMS))
    r.add_argument("--regions", action="store_true", help="fill each guard's visibility region")
    r.add_argument("--vertex-guards", action="store_true")
    r.set_defaults(func=cmd_render)

    b = sub.add_parser("batch", help="run a JSON batch spec and write CSV")
    b.add_argument("spec")
    b.add_argument("-o", "--output")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolygonFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClassMismatch as exc:
        print(f"class mismatch: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except OracleTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())

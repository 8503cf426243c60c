"""Timing comparison of the two rational backends.

The backend is fixed at import time by SECANTGEO_BACKEND, so every
measurement runs in a fresh subprocess.  Workloads are the hot paths:
a full report on a mid-sized chart, a large join-oracle rank, and a
tangential rank on the widest chart in the zoo.
"""

import argparse
import json
import os
import subprocess
import sys
import time


def work_severi_h_report():
    from secantgeo.report import AnalyzeOptions, analyze
    from secantgeo.zoo import severi

    analyze(None, AnalyzeOptions(), descriptor="severi_H", entry=severi("H"))


def work_severi_o_join2():
    from secantgeo.genericity import derive_stream
    from secantgeo.oracles import join_dimension
    from secantgeo.zoo import severi

    join_dimension(severi("O").map, 2, derive_stream(0, "bench", "join"))


def work_g27_tangent():
    from secantgeo.genericity import derive_stream
    from secantgeo.oracles import tangent_join_dimension
    from secantgeo.zoo import grassmannian

    tangent_join_dimension(grassmannian(2, 7).map, derive_stream(0, "bench", "tangent"))


WORKLOADS = {
    "severi_H_report": work_severi_h_report,
    "severi_O_join2": work_severi_o_join2,
    "g27_tangent": work_g27_tangent,
}


def run_child(name: str) -> None:
    from secantgeo.scalars import BACKEND

    t0 = time.perf_counter()
    WORKLOADS[name]()
    seconds = time.perf_counter() - t0
    print(json.dumps({"workload": name, "backend": BACKEND, "seconds": seconds}))


def measure(backend: str, workload: str, repeat: int) -> float | None:
    env = dict(os.environ, SECANTGEO_BACKEND=backend)
    best = None
    for _ in range(repeat):
        proc = subprocess.run([sys.executable, os.path.abspath(__file__),
                               "--child", workload],
                              env=env, capture_output=True, text=True)
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            return None
        result = json.loads(proc.stdout)
        assert result["backend"] == backend, result
        if best is None or result["seconds"] < best:
            best = result["seconds"]
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    ap.add_argument("--child", choices=sorted(WORKLOADS), help=argparse.SUPPRESS)
    args = ap.parse_args(argv)

    if args.child:
        run_child(args.child)
        return 0

    names = sorted(WORKLOADS)
    width = max(len(n) for n in names)
    times: dict[str, dict[str, float | None]] = {}
    for backend in ("gmpy2", "fractions"):
        times[backend] = {}
        for name in names:
            times[backend][name] = measure(backend, name, args.repeat)

    print("%-10s  %s" % ("backend", "  ".join("%*s" % (width, n) for n in names)))
    for backend in ("gmpy2", "fractions"):
        cells = []
        for name in names:
            t = times[backend][name]
            cells.append("%*s" % (width, "n/a" if t is None else "%.2fs" % t))
        print("%-10s  %s" % (backend, "  ".join(cells)))
    for name in names:
        tg, tf = times["gmpy2"][name], times["fractions"][name]
        if tg and tf:
            print("%s: fractions/gmpy2 = %.2fx" % (name, tf / tg))
    return 0


if __name__ == "__main__":
    sys.exit(main())

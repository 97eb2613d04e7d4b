"""Time the compiled kernels against the pure-Python twins.

Run with ``python benchmarks/bench_kernels.py``; ``--repeat`` sets how many
timings are taken per case (the best is reported).
"""

from __future__ import annotations

import argparse
import timeit

from rootposet import kernels
from rootposet.rootdata import crystallographic_root_poset, h3_fixture, h4_fixtures
from rootposet.search.v2 import SearchSpec, V2Search


def _cases():
    H4 = h4_fixtures()[0]
    F4 = crystallographic_root_poset("F4")
    H3 = h3_fixture()

    def antichains(k, P):
        return lambda: k.antichains(list(P.below), list(P.above))

    def census(k, P):
        simples = sum(1 << i for i in range(P.n) if not P.below[i])
        return lambda: k.census(list(P.below), list(P.above), simples)

    def orbits(k, P):
        acs = k.antichains(list(P.below), list(P.above))
        return lambda: k.orbits(list(P.below), acs)

    def search(k, profile, props):
        return lambda: V2Search(SearchSpec.make(profile, props), backend=k).run()

    return [
        ("antichains H4 fixture", lambda k: antichains(k, H4)),
        ("census F4", lambda k: census(k, F4)),
        ("orbits H4 fixture", lambda k: orbits(k, H4)),
        ("search H3 1-3", lambda k: search(k, "H3", "1-3")),
        ("search B4 1-5", lambda k: search(k, "B4", "1-5")),
    ]


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    py, cy = kernels.backend("python"), kernels.backend("cython")
    print(f"{'case':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, make in _cases():
        times = []
        for k in (py, cy):
            fn = make(k)
            timer = timeit.Timer(fn)
            loops, _ = timer.autorange()
            times.append(min(timer.repeat(args.repeat, loops)) / loops * 1e3)
        print(f"{name:<24}{times[0]:>12.3f}{times[1]:>12.3f}{times[0] / times[1]:>9.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels, the pure-Python kernels and a naive Fraction recursion.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import sys
import timeit
from fractions import Fraction

from tentmorph.kernels import available_backends

HALF = Fraction(1, 2)


def naive_commuter(mu, x, d):
    if d == 0:
        return x
    if x <= HALF:
        return naive_commuter(mu, 2 * mu * x, d - 1) / 2
    return 1 - naive_commuter(mu, 2 * mu * (1 - x), d - 1) / 2


def naive_orbit(mu, x, n):
    out = [x]
    for _ in range(n - 1):
        x = 2 * mu * x if x <= HALF else 2 * mu * (1 - x)
        out.append(x)
    return out


def cases(module):
    ps = list(range(0, 2001))
    return {
        "commuter_value d=40 x=3/10 mu=3/4": lambda: module.commuter_value(3, 10, 3, 4, 40),
        "commuter_value d=100 x=3/10 mu=3/4": lambda: module.commuter_value(3, 10, 3, 4, 100),
        "commuter_sweep 2001 pts d=30 mu=3/4": lambda: module.commuter_sweep(ps, 2000, 3, 4, 30),
        "orbit_numerators n=12 x=23/100 mu=1": lambda: module.orbit_numerators(23, 100, 1, 1, 12),
    }


def naive_cases():
    mu = Fraction(3, 4)
    xs = [Fraction(p, 2000) for p in range(2001)]
    return {
        "commuter_value d=40 x=3/10 mu=3/4": lambda: naive_commuter(mu, Fraction(3, 10), 40),
        "commuter_value d=100 x=3/10 mu=3/4": lambda: naive_commuter(mu, Fraction(3, 10), 100),
        "commuter_sweep 2001 pts d=30 mu=3/4": lambda: [naive_commuter(mu, x, 30) for x in xs],
        "orbit_numerators n=12 x=23/100 mu=1": lambda: naive_orbit(Fraction(1), Fraction(23, 100), 12),
    }


def best(fn, repeat):
    timer = timeit.Timer(fn)
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    columns = {name: cases(mod) for name, mod in sorted(available_backends().items())}
    columns["naive"] = naive_cases()
    if "cython" not in columns:
        print("compiled extension not built; showing pure-Python and naive only", file=sys.stderr)

    names = list(columns)
    print(f"{'case':<38}" + "".join(f"{n:>14}" for n in names) + "   vs python")
    for case in columns["naive"]:
        times = {n: best(columns[n][case], args.repeat) for n in names}
        ref = times.get("python")
        fastest = min(times, key=times.get)
        speedup = f"{ref / times[fastest]:.1f}x ({fastest})" if ref else ""
        print(f"{case:<38}" + "".join(f"{times[n] * 1e6:>12.1f}us" for n in names) + f"   {speedup}")


if __name__ == "__main__":
    main()

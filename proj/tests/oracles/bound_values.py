#!/usr/bin/env python3
"""Regenerates the frozen reference constants used by the bound tests.

Evaluates the finite-class bound quantities at 60 decimal digits with mpmath,
independently of the C++ implementation. Run it whenever a frozen constant in
tests/test_bounds.cpp or tests/test_sizer.cpp needs to be re-derived.
"""

from mpmath import mp, mpf, log, sqrt, ceil, nstr

mp.dps = 60

DELTA = mpf(10) ** -8


def two_log_term(param_count, bits=32, delta=DELTA):
    """2 * ln(2 * 2^bits * P / delta)"""
    return 2 * (log(2) + bits * log(2) + log(param_count) - log(delta))


def margin(n, param_count, bits=32, delta=DELTA, metric_range=1):
    return metric_range * sqrt(two_log_term(param_count, bits, delta) / n)


def required_n(epsilon, param_count, bits=32, delta=DELTA, metric_range=1):
    raw = two_log_term(param_count, bits, delta) * metric_range**2 / mpf(epsilon) ** 2
    return int(ceil(raw)), raw


def main():
    print("two_log_term(17)    =", nstr(two_log_term(17), 15))
    print("two_log_term(769)   =", nstr(two_log_term(769), 15))
    print("two_log_term(4097)  =", nstr(two_log_term(4097), 15))
    print("two_log_term(15401) =", nstr(two_log_term(15401), 15))
    print("margin(65536, 4097) =", nstr(margin(65536, 4097), 15))
    print("margin(10000, 769)  =", nstr(margin(10000, 769), 15))
    print("margin(100, 1e9, bits=64) =", nstr(margin(100, 10**9, bits=64), 15))
    print("2000 * margin(1000, 769)  =", nstr(2000 * margin(1000, 769), 15))

    for eps, p in [("0.05", 4097), ("0.06565", 769), ("0.06405", 769), ("0.0744", 769)]:
        n, raw = required_n(mpf(eps), p)
        print(f"required_n(eps={eps}, P={p}) = {n}  (raw {nstr(raw, 12)})")

    # Golden table fixtures: published N_train values and the recomputation
    # from their printed mean gaps (epsilon = gap / 2).
    tables = {
        "dim768_corrupted": (769, [("0.1313", 22263), ("0.1281", 23362), ("0.0879", 49647),
                                   ("0.1331", 21662), ("0.1488", 17331)]),
        "dim768_encoders": (769, [("0.0344", 324563), ("0.0492", 158315), ("0.0355", 303516),
                                  ("0.0091", 4600037), ("0.0320", 373513)]),
        "dim4096_sentlen": (4097, [("0.065", 95156), ("0.128", 24375), ("0.178", 12481),
                                   ("0.196", 10285)]),
        "dim4096_coordinv": (4097, [("0.025", 635040), ("0.019", 1128961), ("0.041", 231499),
                                    ("0.051", 151861), ("0.063", 100153)]),
    }
    for name, (p, rows) in tables.items():
        for gap, published in rows:
            n, _ = required_n(mpf(gap) / 2, p)
            dev = abs(n - published) / mpf(published)
            print(f"{name} gap={gap:7s} recomputed={n:>9d} published={published:>9d} "
                  f"dev={nstr(dev * 100, 4)}%")


if __name__ == "__main__":
    main()

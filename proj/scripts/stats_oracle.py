#!/usr/bin/env python3
"""Reference values for the t-test fixtures in tests/unit/test_stats_ueq.cpp."""
from scipy import stats

fixtures = {
    "welch_textbook": ([1, 2, 3, 4, 5], [2, 3, 4, 5, 6]),
    "unequal": ([3.1, 2.4, 5.6, 4.4, 3.9, 4.8], [2.2, 1.9, 3.4, 2.8]),
}

for name, (a, b) in fixtures.items():
    for equal_var in (False, True):
        r = stats.ttest_ind(a, b, equal_var=equal_var)
        kind = "student" if equal_var else "welch"
        print(f"{name} {kind}: t={r.statistic!r} df={r.df!r} p={r.pvalue!r}")

for t, df in [(-1.3, 4.5), (2.0, 1.0), (0.7, 30)]:
    print(f"t_cdf({t}, {df}) = {stats.t.cdf(t, df)!r}")

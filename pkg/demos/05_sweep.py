"""Every triple in small dimensions, tallied by route."""

import time

from gbs_locc.sweep import run_sweep

start = time.perf_counter()
report = run_sweep(4, 6)
for d, row in report["per_dimension"].items():
    print(f"d={d}: {row['triples']} triples, {len(row['failures'])} failures")
    for route, count in row["routes"].items():
        print(f"    {route:<24}{count}")
print(f"{time.perf_counter() - start:.1f}s")

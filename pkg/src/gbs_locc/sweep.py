"""Exhaustive synthesize-and-verify sweep over every triple of generalized Bell states."""

from __future__ import annotations

import datetime as dt
import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from math import comb

from .document import ProtocolDocument
from .locc_sim import DEFAULT_TOL, verify_perfect_discrimination
from .synthesizer import EXTERNAL_D4, LEMMA2_ROUTES, ROUTES, Triple, synthesize
from .weyl import GbsIndex

DEFAULT_CAP = 10
JOBS_ENV = "GBS_LOCC_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def all_labels(d: int) -> list:
    return [GbsIndex(d, m, n) for m in range(d) for n in range(d)]


def check_triple(t: Triple, tol: float = DEFAULT_TOL, roundtrip: bool = False) -> dict:
    """Synthesize and verify one triple; returns a small result record."""
    protocol, cert = synthesize(t)
    replays = cert.replays()
    out = {"route": cert.route, "replays": replays, "problems": []}
    if not replays:
        out["problems"].append("certificate does not replay")
    if cert.route in LEMMA2_ROUTES and len({i.m for i in cert.canonical}) != 3:
        out["problems"].append("computational-basis route on colliding m labels")
    if protocol is None:
        if cert.route != EXTERNAL_D4 or t.dim != 4:
            out["problems"].append("no protocol outside the d=4 external case")
    else:
        report = verify_perfect_discrimination(t.states(), protocol, tol)
        if not report.perfect:
            out["problems"].extend(reason for _, reason in report.failures[:3])
    if roundtrip:
        doc = ProtocolDocument(t.dim, t.indices, protocol, cert)
        if ProtocolDocument.loads(doc.dumps()) != doc:
            out["problems"].append("JSON round trip changed the document")
    return out


def _check_block(d: int, first: int, tol: float, roundtrip: bool) -> tuple:
    # every triple whose smallest label index is ``first``
    labels = all_labels(d)
    routes = Counter()
    replayed = 0
    failures = []
    for j, k in itertools.combinations(range(first + 1, d * d), 2):
        t = Triple(d, (labels[first], labels[j], labels[k]))
        res = check_triple(t, tol, roundtrip)
        routes[res["route"]] += 1
        replayed += res["replays"]
        if res["problems"]:
            failures.append(
                {"triple": [list(i.pair()) for i in t.indices], "route": res["route"],
                 "problems": res["problems"]}
            )
    return routes, replayed, failures


def sweep_dimension(d: int, tol: float = DEFAULT_TOL, jobs: int = 1, roundtrip: bool = False) -> dict:
    blocks = range(d * d - 2)
    args = [(d, b, tol, roundtrip) for b in blocks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_block, *zip(*args)))
    else:
        results = [_check_block(*a) for a in args]
    routes = Counter()
    replayed = 0
    failures = []
    for r, n_replayed, f in results:
        routes.update(r)
        replayed += n_replayed
        failures.extend(f)
    total = sum(routes.values())
    return {
        "triples": total,
        "expected_triples": comb(d * d, 3),
        "routes": {name: routes[name] for name in ROUTES if routes[name]},
        "external_certificates": routes[EXTERNAL_D4],
        "certificates_replayed": replayed,
        "failures": failures,
    }


def run_sweep(
    dmin: int,
    dmax: int,
    jobs: int = 1,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
    roundtrip: bool = False,
) -> dict:
    if not 4 <= dmin <= dmax <= cap:
        raise ValueError(f"need 4 <= dmin <= dmax <= {cap}, got dmin={dmin}, dmax={dmax}")
    per_dim = {}
    for d in range(dmin, dmax + 1):
        per_dim[str(d)] = sweep_dimension(d, tol, jobs, roundtrip)
    n_fail = sum(len(v["failures"]) for v in per_dim.values())
    return {
        "schema": 1,
        "dmin": dmin,
        "dmax": dmax,
        "tol": tol,
        "roundtrip_checked": roundtrip,
        "per_dimension": per_dim,
        "total_triples": sum(v["triples"] for v in per_dim.values()),
        "total_failures": n_fail,
        "generated_at": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
    }

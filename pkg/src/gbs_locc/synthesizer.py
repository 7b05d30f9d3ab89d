"""Constructive LOCC protocols for any three generalized Bell states, d >= 4.

The synthesizer works on exact labels. A triple is first brought to the form
{I, X^m, Z^n} by a translation, then pushed through H_alpha conjugations until
either all shift labels differ (measure both sides in the computational basis)
or it lands on one of the two exceptional families {I, X^(d/2), Z^(d/2)} and
{I, X^(3k), Z^(2k)} with d = 4k, which need a pairwise measurement on Alice's
side. Every label transformation is emitted as an explicit local unitary pair,
so the resulting protocol can be checked by simulation on the original states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.linalg import null_space

from .locc_sim import LocalUnitary, Protocol, computational_measurement, measurement_from_vectors
from .states import gbs_state
from .weyl import DomainError, GbsIndex, PreconditionError, conjugate_by_h, translate

ALL_M_DISTINCT = "AllMDistinct"
ALL_N_DISTINCT = "AllNDistinct-H0"
CASE_I_I = "CaseI-i"
CASE_I_II = "CaseI-ii"
CASE_II_I = "CaseII-i"
CASE_II_II_1 = "CaseII-ii-1"
CASE_II_III = "CaseII-iii"
EXCEPTIONAL1 = "Exceptional1"
EXCEPTIONAL2 = "Exceptional2"
FOURIER_TO_EXCEPTIONAL2 = "FourierToExceptional2"
EXTERNAL_D4 = "ExternalSingal-d4"

ROUTES = (
    ALL_M_DISTINCT,
    ALL_N_DISTINCT,
    CASE_I_I,
    CASE_I_II,
    CASE_II_I,
    CASE_II_II_1,
    CASE_II_III,
    EXCEPTIONAL1,
    EXCEPTIONAL2,
    FOURIER_TO_EXCEPTIONAL2,
    EXTERNAL_D4,
)
PAIR_ROUTES = (EXCEPTIONAL1, EXCEPTIONAL2, FOURIER_TO_EXCEPTIONAL2)
LEMMA2_ROUTES = (ALL_M_DISTINCT, ALL_N_DISTINCT, CASE_I_I, CASE_I_II, CASE_II_I, CASE_II_II_1, CASE_II_III)

EXTERNAL_REFERENCE = (
    "d=4 triple equivalent to {I, X^3, Z^2}: LOCC-distinguishable by the known complete "
    "analysis of four generalized Bell states in 4x4 (Singal et al.); no protocol emitted"
)

ORTHO_TOL = 1e-12


class NotApplicableError(ValueError):
    """The triple does not have the shared-label structure the reduction needs."""


class UnsupportedDimensionError(ValueError):
    pass


class ExternalReferenceError(ValueError):
    """The requested protocol is only known from an external reference."""


@dataclass(frozen=True)
class Triple:
    dim: int
    indices: tuple

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dim}")
        idx = tuple(
            i if isinstance(i, GbsIndex) else GbsIndex(self.dim, *i) for i in self.indices
        )
        if len(idx) != 3:
            raise DomainError(f"a triple needs three indices, got {len(idx)}")
        if any(i.dim != self.dim for i in idx):
            raise DomainError("index dimension does not match the triple")
        if len(set(idx)) != 3:
            raise DomainError("the three indices must be pairwise distinct")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_pairs(cls, d: int, pairs: Iterable[Sequence[int]]) -> "Triple":
        for m, n in pairs:
            if not (0 <= m < d and 0 <= n < d):
                raise DomainError(f"labels must lie in [0, {d}), got ({m}, {n})")
        return cls(d, tuple(GbsIndex(d, m, n) for m, n in pairs))

    def states(self) -> list:
        return [gbs_state(self.dim, i.m, i.n) for i in self.indices]


@dataclass(frozen=True)
class ReductionStep:
    """One exact label map together with the local unitary pair realizing it.

    ``shift_x``  a:     (m, n) -> (m - a, n),  Alice applies X^-a
    ``shift_z``  b:     (m, n) -> (m, n - b),  Bob applies (Z^-b)^T
    ``conjugate_h`` alpha: (m, n) -> (alpha m + n, -m),
                        Alice applies H_alpha, Bob applies (H_alpha^dagger)^T
    """

    kind: str
    param: int

    KINDS = ("shift_x", "shift_z", "conjugate_h")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown reduction step {self.kind!r}")

    def apply(self, idx: GbsIndex) -> GbsIndex:
        if self.kind == "shift_x":
            return translate(idx, self.param, 0)
        if self.kind == "shift_z":
            return translate(idx, 0, self.param)
        return conjugate_by_h(self.param, idx)

    def local_steps(self, d: int) -> list:
        if self.kind == "shift_x":
            return [LocalUnitary("A", "X", (-self.param) % d)]
        if self.kind == "shift_z":
            return [LocalUnitary("B", "Z", (-self.param) % d, transpose=True)]
        a = self.param % d
        return [
            LocalUnitary("A", "H", a),
            LocalUnitary("B", "H", a, adjoint=True, transpose=True),
        ]


@dataclass(frozen=True)
class Certificate:
    """Which branch of the case analysis handled a triple, and how it got there."""

    route: str
    start: tuple
    trace: tuple
    canonical: tuple
    pair: Optional[tuple] = None
    note: str = ""

    def __post_init__(self):
        if self.route not in ROUTES:
            raise DomainError(f"unknown route {self.route!r}")

    def replay(self) -> tuple:
        return replay_trace(self.start, self.trace)

    def replays(self) -> bool:
        return self.replay() == tuple(self.canonical)


def replay_trace(indices: Iterable[GbsIndex], trace: Iterable[ReductionStep]) -> tuple:
    labels = tuple(indices)
    for step in trace:
        labels = tuple(step.apply(i) for i in labels)
    return labels


def _distinct(values) -> bool:
    values = list(values)
    return len(set(values)) == len(values)


def order_for_reduction(t: Triple) -> tuple:
    """Order the triple as (m1, n1), (m1, n2), (m2, n2).

    The middle slot is the index that shares its m with one member and its n with
    the other; when neither all m nor all n differ that index exists and is unique.
    """
    idx = t.indices
    if _distinct(i.m for i in idx) or _distinct(i.n for i in idx):
        raise NotApplicableError("all m or all n are distinct; use the direct measurement")
    for mid in idx:
        others = [i for i in idx if i is not mid]
        same_m = [i for i in others if i.m == mid.m]
        same_n = [i for i in others if i.n == mid.n]
        if len(same_m) == 1 and len(same_n) == 1:
            return (same_m[0], mid, same_n[0])
    raise AssertionError("unreachable: no index shares both labels")


def reduce_to_canonical(t: Triple) -> tuple:
    """Return ((m, n), trace) with the trace mapping the ordered triple to (Z^n, I, X^m)."""
    first, mid, third = order_for_reduction(t)
    d = t.dim
    trace = []
    if mid.m:
        trace.append(ReductionStep("shift_x", mid.m))
    if mid.n:
        trace.append(ReductionStep("shift_z", mid.n))
    m = (third.m - first.m) % d
    n = (first.n - mid.n) % d
    return (m, n), tuple(trace)


def _route_canonical(d: int, m: int, n: int) -> tuple:
    """Route for {I, X^m, Z^n} and the H_alpha conjugations to apply, in order."""
    if d % 2:
        return (CASE_I_I, [1]) if m != n else (CASE_I_II, [2])
    if (2 * m) % d and (2 * m - n) % d:
        return CASE_II_I, [2]
    if (2 * m) % d == 0:
        # d = 2m
        if (2 * n) % d and (2 * n - m) % d:
            return CASE_II_II_1, [2, 2]
        if (2 * n) % d == 0:
            return EXCEPTIONAL1, []
        # d = 4k, m = 2k, n in {k, 3k}; H_0 (three times when n = k) gives {I, X^3k, Z^2k}
        k = d // 4
        return (EXTERNAL_D4 if k == 1 else EXCEPTIONAL2), ([0] if n == 3 * k else [0, 0, 0])
    # 2m = n mod d
    if (4 * m) % d:
        return CASE_II_III, [4]
    # d = 4k, n = 2k, m in {k, 3k}
    k = d // 4
    if m == 3 * k:
        return (EXTERNAL_D4 if k == 1 else EXCEPTIONAL2), []
    # H_0 swaps to {I, Z^3k, X^2k}, which the m = 2k, n = 3k branch finishes with another H_0
    return (EXTERNAL_D4 if k == 1 else FOURIER_TO_EXCEPTIONAL2), [0, 0]


def is_exceptional1(d: int, labels: Iterable[GbsIndex]) -> bool:
    return d % 2 == 0 and set(i.pair() for i in labels) == {(0, 0), (d // 2, 0), (0, d // 2)}


def is_exceptional2(d: int, labels: Iterable[GbsIndex]) -> bool:
    if d % 4:
        return False
    k = d // 4
    return set(i.pair() for i in labels) == {(0, 0), (3 * k, 0), (0, 2 * k)}


def synthesize(t: Triple) -> tuple:
    """Protocol and certificate for a triple; the protocol is None for the d=4 external case."""
    d = t.dim
    if d < 4:
        raise UnsupportedDimensionError(f"synthesis needs d >= 4, got {d}")
    pair = None
    if _distinct(i.m for i in t.indices):
        route, trace = ALL_M_DISTINCT, ()
    elif _distinct(i.n for i in t.indices):
        route, trace = ALL_N_DISTINCT, (ReductionStep("conjugate_h", 0),)
    else:
        pair, trace = reduce_to_canonical(t)
        route, alphas = _route_canonical(d, *pair)
        trace = trace + tuple(ReductionStep("conjugate_h", a % d) for a in alphas)
    labels = replay_trace(t.indices, trace)
    note = EXTERNAL_REFERENCE if route == EXTERNAL_D4 else ""
    cert = Certificate(route, t.indices, trace, labels, pair, note)
    if route == EXTERNAL_D4:
        return None, cert

    steps = [s for r in trace for s in r.local_steps(d)]
    if route in PAIR_ROUTES:
        stage, decision = _pair_stage(d, labels, len(steps))
    else:
        stage, decision = _lemma2_stage(d, labels, len(steps))
    return Protocol(d, tuple(steps) + tuple(stage), decision), cert


def _lemma2_stage(d: int, labels: Sequence[GbsIndex], offset: int) -> tuple:
    # Alice outcome j leaves Bob in |j - m>
    if not _distinct(i.m for i in labels):
        raise PreconditionError("computational-basis protocol needs pairwise distinct m")
    steps = [computational_measurement(d, "A"), computational_measurement(d, "B")]
    decision = {
        ((offset, j), (offset + 1, (j - idx.m) % d)): h
        for j in range(d)
        for h, idx in enumerate(labels)
    }
    return steps, decision


def lemma2_protocol(d: int, states: Sequence) -> Protocol:
    """Alice then Bob measure in the computational basis; works whenever all m differ."""
    labels = [s if isinstance(s, GbsIndex) else GbsIndex(d, *s) for s in states]
    if not 2 <= len(labels) <= d:
        raise PreconditionError(f"need between 2 and {d} states, got {len(labels)}")
    steps, decision = _lemma2_stage(d, labels, 0)
    return Protocol(d, tuple(steps), decision)


def pair_vectors(d: int) -> list:
    """Alice's basis (|2p> +- |2p+1>)/sqrt 2, outcome 2p for + and 2p+1 for -."""
    vecs = []
    for p in range(d // 2):
        for sign in (1.0, -1.0):
            v = np.zeros(d, dtype=complex)
            v[2 * p] = 1.0
            v[2 * p + 1] = sign
            vecs.append(v / np.sqrt(2))
    return vecs


def bob_residuals(d: int, labels: Sequence[GbsIndex], alice_vec: np.ndarray) -> list:
    """Bob's normalized post-measurement states after Alice projects onto ``alice_vec``."""
    out = []
    for idx in labels:
        psi = gbs_state(d, idx.m, idx.n).reshape(d, d)
        r = alice_vec.conj() @ psi
        out.append(r / np.linalg.norm(r))
    return out


def _complete_basis(d: int, vecs: list) -> list:
    """Gram-Schmidt ``vecs`` then complete to a basis, staying on their joint support."""
    basis = []
    for v in vecs:
        w = v - sum(np.vdot(b, v) * b for b in basis)
        norm = np.linalg.norm(w)
        if norm > 1e-9:
            basis.append(w / norm)
    support = sorted({j for v in basis for j in np.flatnonzero(np.abs(v) > 1e-14)})
    if basis:
        restricted = np.array([v[support] for v in basis])
        for col in null_space(restricted.conj()).T:
            w = np.zeros(d, dtype=complex)
            w[support] = col
            basis.append(w)
    for j in range(d):
        if j not in support:
            e = np.zeros(d, dtype=complex)
            e[j] = 1.0
            basis.append(e)
    return basis


def _pair_stage(d: int, labels: Sequence[GbsIndex], offset: int, force: bool = False) -> tuple:
    if d % 2:
        raise DomainError("the pairwise measurement needs even d")
    alice = pair_vectors(d)
    steps = [measurement_from_vectors("A", alice)]
    decision = {}
    for o, v in enumerate(alice):
        res = bob_residuals(d, labels, v)
        if not force:
            for a in range(len(res)):
                for b in range(a + 1, len(res)):
                    if abs(np.vdot(res[a], res[b])) > ORTHO_TOL:
                        raise PreconditionError(
                            f"Bob residuals {a} and {b} overlap after Alice outcome {o}"
                        )
        basis = _complete_basis(d, res)
        bob_step = offset + 1 + o
        steps.append(measurement_from_vectors("B", basis, condition=((offset, o),)))
        for h in range(len(labels)):
            decision[((offset, o), (bob_step, h))] = h
    return steps, decision


def exceptional1_protocol(n: int) -> Protocol:
    """Protocol for {I, X^n, Z^n} in d = 2n (hypotheses in that order)."""
    if n < 2:
        raise DomainError(f"needs n >= 2, got {n}")
    d = 2 * n
    labels = [GbsIndex(d, 0, 0), GbsIndex(d, n, 0), GbsIndex(d, 0, n)]
    steps, decision = _pair_stage(d, labels, 0)
    return Protocol(d, tuple(steps), decision)


def exceptional2_protocol(k: int, force: bool = False) -> Protocol:
    """Protocol for {I, X^3k, Z^2k} in d = 4k (hypotheses in that order).

    k = 1 is refused unless ``force`` is set, in which case the same construction is
    emitted with Bob's basis orthogonalized; it does not discriminate perfectly.
    """
    if k < 1:
        raise DomainError(f"needs k >= 1, got {k}")
    if k == 1 and not force:
        raise ExternalReferenceError(EXTERNAL_REFERENCE)
    d = 4 * k
    labels = [GbsIndex(d, 0, 0), GbsIndex(d, 3 * k, 0), GbsIndex(d, 0, 2 * k)]
    steps, decision = _pair_stage(d, labels, 0, force=force)
    return Protocol(d, tuple(steps), decision)

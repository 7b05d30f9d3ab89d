"""LOCC protocol data model and an exhaustive branch simulator.

A protocol is a flat list of steps. Each step acts on one party and may carry a
``condition``: a set of ``(step, outcome)`` pairs that must already appear in the
outcome record for the step to run. This is how adaptive, announce-then-measure
rounds are written down. Outcome records are tuples of ``(step, outcome)`` pairs,
and the decision is an explicit table from records to hypothesis indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .states import h_matrix, weyl_matrix
from .weyl import DomainError, WeylOp

PARTIES = ("A", "B")
FAMILIES = ("X", "Z", "H")

DEFAULT_TOL = 1e-9
ORTHO_TOL = 1e-10
TOTAL_TOL = 1e-9

Record = tuple  # tuple[tuple[int, int], ...]


class ProtocolError(ValueError):
    """A protocol is malformed (incomplete measurement, bad party, ...)."""


def _check_party(party):
    if party not in PARTIES:
        raise ProtocolError(f"party must be 'A' or 'B', got {party!r}")


@dataclass(frozen=True)
class LocalUnitary:
    """A unitary on one party, either from a named family or given explicitly.

    Named families: ``X`` (param = power), ``Z`` (param = power) and ``H``
    (param = alpha, normalized). ``adjoint`` and ``transpose`` apply on top,
    adjoint first; both together give the complex conjugate.
    """

    party: str
    family: Optional[str] = None
    param: int = 0
    adjoint: bool = False
    transpose: bool = False
    entries: Optional[tuple] = None
    condition: Record = ()

    def __post_init__(self):
        _check_party(self.party)
        if (self.family is None) == (self.entries is None):
            raise ProtocolError("give exactly one of a named family or explicit entries")
        if self.family is not None and self.family not in FAMILIES:
            raise ProtocolError(f"unknown unitary family {self.family!r}")

    def matrix(self, d: int) -> np.ndarray:
        if self.family == "X":
            u = weyl_matrix(WeylOp(d, self.param, 0))
        elif self.family == "Z":
            u = weyl_matrix(WeylOp(d, 0, self.param))
        elif self.family == "H":
            u = h_matrix(self.param, d)
        else:
            u = np.array(self.entries, dtype=complex)
            if u.shape != (d, d):
                raise DomainError(f"explicit unitary has shape {u.shape}, expected {(d, d)}")
        if self.adjoint:
            u = u.conj().T
        if self.transpose:
            u = u.T
        return u


@dataclass(frozen=True)
class Measurement:
    """Projective measurement on one party with an announced outcome.

    ``projectors[k]`` is the list of orthonormal vectors spanning outcome k.
    """

    party: str
    projectors: tuple
    condition: Record = ()

    def __post_init__(self):
        _check_party(self.party)
        if not self.projectors or any(len(p) == 0 for p in self.projectors):
            raise ProtocolError("measurement needs at least one non-empty projector")

    @property
    def n_outcomes(self) -> int:
        return len(self.projectors)

    @cached_property
    def frame(self) -> tuple[np.ndarray, np.ndarray]:
        """All projector vectors as columns, plus the outcome boundaries."""
        cols = [np.asarray(v, dtype=complex) for p in self.projectors for v in p]
        w = np.stack(cols, axis=1)
        bounds = np.cumsum([0] + [len(p) for p in self.projectors])
        return w, bounds

    def projector_matrices(self) -> list[np.ndarray]:
        w, bounds = self.frame
        return [
            w[:, lo:hi] @ w[:, lo:hi].conj().T for lo, hi in zip(bounds[:-1], bounds[1:])
        ]

    def validate(self, d: int, tol: float = ORTHO_TOL) -> None:
        if self.__dict__.get("_validated") == (d, tol):
            return
        w, _ = self.frame
        if w.shape[0] != d:
            raise DomainError(f"measurement vectors have length {w.shape[0]}, expected {d}")
        if np.max(np.abs(w.conj().T @ w - np.eye(w.shape[1]))) > tol:
            raise ProtocolError("projector vectors are not orthonormal")
        if np.max(np.abs(w @ w.conj().T - np.eye(d))) > tol:
            raise ProtocolError("projectors do not sum to the identity")
        self.__dict__["_validated"] = (d, tol)


@dataclass(frozen=True)
class Protocol:
    dim: int
    steps: tuple
    decision: dict = field(default_factory=dict)

    def validate(self) -> None:
        n = len(self.steps)
        for i, step in enumerate(self.steps):
            for s, _ in step.condition:
                if not 0 <= s < i:
                    raise ProtocolError(f"step {i} is conditioned on non-earlier step {s}")
            if isinstance(step, Measurement):
                step.validate(self.dim)
            elif isinstance(step, LocalUnitary):
                u = step.matrix(self.dim)
                if np.max(np.abs(u @ u.conj().T - np.eye(self.dim))) > ORTHO_TOL:
                    raise ProtocolError(f"step {i} is not unitary")
            else:
                raise ProtocolError(f"step {i} has unknown type {type(step).__name__}")
        for record in self.decision:
            for s, _ in record:
                if not 0 <= s < n:
                    raise ProtocolError(f"decision record refers to missing step {s}")


@dataclass
class VerificationReport:
    perfect: bool
    branches: dict
    totals: np.ndarray
    failures: list

    def summary(self) -> str:
        lines = [
            f"perfect: {self.perfect}",
            f"reachable records: {len(self.branches)}",
            "per-hypothesis totals: " + ", ".join(f"{t:.12f}" for t in self.totals),
        ]
        for record, reason in self.failures:
            lines.append(f"  FAIL {list(map(list, record))}: {reason}")
        return "\n".join(lines)


def _as_matrices(states: Sequence[np.ndarray], d: int) -> np.ndarray:
    psi = np.array([np.asarray(s, dtype=complex) for s in states])
    if psi.ndim != 2 or psi.shape[1] != d * d:
        raise DomainError(f"states must be vectors of length {d * d}")
    return psi.reshape(len(states), d, d)


def simulate_branches(
    states: Sequence[np.ndarray], protocol: Protocol, tol: float = DEFAULT_TOL
) -> dict:
    """Enumerate every outcome record of ``protocol`` for each hypothesis state.

    Returns ``{record: probs}`` where ``probs[i]`` is the probability of the record
    when the shared state is ``states[i]``. Branches with probability <= tol under
    every hypothesis are pruned.
    """
    d = protocol.dim
    protocol.validate()
    psi = _as_matrices(states, d)
    probs = np.ones(len(states))
    table: dict = {}
    _descend(protocol.steps, 0, (), psi, probs, tol, table, d)
    return table


def _descend(steps, i, record, psi, probs, tol, table, d):
    while i < len(steps):
        step = steps[i]
        if step.condition and not set(step.condition).issubset(record):
            i += 1
            continue
        if isinstance(step, LocalUnitary):
            u = step.matrix(d)
            psi = u @ psi if step.party == "A" else psi @ u.T
            i += 1
            continue
        w, bounds = step.frame
        if step.party == "A":
            amps = w.conj().T @ psi
            weights = np.sum(amps.real**2 + amps.imag**2, axis=2)
        else:
            amps = psi @ w.conj()
            weights = np.sum(amps.real**2 + amps.imag**2, axis=1)
        per_outcome = np.add.reduceat(weights, bounds[:-1], axis=1)
        branch = probs[:, None] * per_outcome
        alive = np.flatnonzero(np.any(branch > tol, axis=0))
        if i == len(steps) - 1:
            for k in alive.tolist():
                table[record + ((i, k),)] = branch[:, k]
            return
        scale = np.divide(
            1.0, np.sqrt(per_outcome), out=np.zeros_like(per_outcome), where=per_outcome > 0
        )
        for k in alive.tolist():
            lo, hi = bounds[k], bounds[k + 1]
            if step.party == "A":
                post = w[:, lo:hi] @ amps[:, lo:hi, :]
            else:
                post = amps[:, :, lo:hi] @ w[:, lo:hi].T
            post = post * scale[:, k, None, None]
            _descend(steps, i + 1, record + ((i, k),), post, branch[:, k], tol, table, d)
        return
    table[record] = probs


def verify_perfect_discrimination(
    states: Sequence[np.ndarray],
    protocol: Protocol,
    tol: float = DEFAULT_TOL,
    total_tol: float = TOTAL_TOL,
) -> VerificationReport:
    """Check that every reachable record singles out one hypothesis and is decided correctly."""
    table = simulate_branches(states, protocol, tol)
    n = len(states)
    failures = []
    records = list(table)
    probs = np.array([table[r] for r in records]).reshape(len(records), n)
    totals = probs.sum(axis=0)
    support = probs > tol
    counts = support.sum(axis=1)
    winners = support.argmax(axis=1)
    for record, count, winner, row in zip(records, counts.tolist(), winners.tolist(), support):
        if count != 1:
            failures.append((record, f"supported by hypotheses {np.flatnonzero(row).tolist()}"))
            continue
        decided = protocol.decision.get(record)
        if decided is None:
            failures.append((record, "record missing from decision map"))
        elif decided != winner:
            failures.append((record, f"decides {decided}, state was {winner}"))
    for h, total in enumerate(totals):
        if abs(total - 1.0) > total_tol:
            failures.append(((), f"hypothesis {h} total probability {total!r}"))
    return VerificationReport(not failures, table, totals, failures)


@lru_cache(maxsize=None)
def computational_measurement(d: int, party: str, condition: Record = ()) -> Measurement:
    eye = tuple(
        (tuple(1.0 + 0j if i == j else 0j for i in range(d)),) for j in range(d)
    )
    return Measurement(party, eye, condition)


def measurement_from_vectors(party: str, vectors, condition: Record = (), grouping=None) -> Measurement:
    """Measurement whose outcomes are the given orthonormal vectors (or groups of them)."""
    vecs = [tuple(complex(x) for x in np.asarray(v)) for v in vectors]
    if grouping is None:
        projectors = tuple((v,) for v in vecs)
    else:
        projectors = tuple(tuple(vecs[j] for j in group) for group in grouping)
    return Measurement(party, projectors, tuple(condition))

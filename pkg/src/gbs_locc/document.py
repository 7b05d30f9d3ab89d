"""JSON interchange format for protocols and certificates.

Conventions carried by every document:

* state label ``[m, n]`` means (X^m Z^n (x) I)|psi_0>, |psi_0> = sum_i |ii>/sqrt(d);
* party ``"A"`` (Alice) is the first tensor factor, amplitude index = alice*d + bob;
* complex numbers are ``[re, im]`` pairs, written with round-trip float precision;
* named unitaries are symbolic: ``{"family": "H", "params": {"alpha": 2}}``, with
  ``adjoint`` applied before ``transpose``;
* an outcome record is a list of ``[step, outcome]`` pairs; a step with a non-empty
  ``condition`` runs only on branches whose record contains all of those pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .locc_sim import LocalUnitary, Measurement, Protocol
from .synthesizer import Certificate, ReductionStep
from .weyl import GbsIndex

SCHEMA_VERSION = 1

CONVENTION = (
    "label [m, n] = (X^m Z^n (x) I)|psi_0>; Alice is the first tensor factor; "
    "complex numbers are [re, im]"
)

_PARAM_NAME = {"X": "power", "Z": "power", "H": "alpha"}


class DocumentError(ValueError):
    """A document does not parse or is internally inconsistent."""


@dataclass(frozen=True)
class ProtocolDocument:
    dim: int
    hypotheses: tuple
    protocol: Optional[Protocol] = None
    certificate: Optional[Certificate] = None
    schema: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "convention": CONVENTION,
            "dim": self.dim,
            "hypotheses": [list(i.pair()) for i in self.hypotheses],
            "steps": [_step_to_json(s) for s in self.protocol.steps] if self.protocol else [],
            "decision": _decision_to_json(self.protocol.decision) if self.protocol else [],
            "certificate": _certificate_to_json(self.certificate) if self.certificate else None,
        }

    def dumps(self, indent=None) -> str:
        return json.dumps(self.to_json(), indent=indent)

    @classmethod
    def from_json(cls, obj: dict) -> "ProtocolDocument":
        try:
            return _document_from_json(obj)
        except DocumentError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise DocumentError(f"malformed protocol document: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "ProtocolDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from exc
        return cls.from_json(obj)


def _cx(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _parse_cx(pair) -> complex:
    if len(pair) != 2:
        raise DocumentError(f"complex number must be [re, im], got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def _condition_to_json(cond) -> list:
    return [[int(s), int(o)] for s, o in cond]


def _parse_record(rec) -> tuple:
    out = []
    for pair in rec:
        if len(pair) != 2:
            raise DocumentError(f"record entries must be [step, outcome], got {pair!r}")
        out.append((int(pair[0]), int(pair[1])))
    return tuple(out)


def _step_to_json(step) -> dict:
    if isinstance(step, Measurement):
        return {
            "type": "measurement",
            "party": step.party,
            "projectors": [[[_cx(z) for z in v] for v in proj] for proj in step.projectors],
            "condition": _condition_to_json(step.condition),
        }
    out = {"type": "unitary", "party": step.party}
    if step.family is not None:
        out["family"] = step.family
        out["params"] = {_PARAM_NAME[step.family]: step.param}
    else:
        out["entries"] = [[_cx(z) for z in row] for row in step.entries]
    out["adjoint"] = step.adjoint
    out["transpose"] = step.transpose
    out["condition"] = _condition_to_json(step.condition)
    return out


def _step_from_json(obj: dict, d: int):
    kind = obj["type"]
    cond = _parse_record(obj.get("condition", []))
    if kind == "measurement":
        projectors = tuple(
            tuple(tuple(_parse_cx(z) for z in v) for v in proj) for proj in obj["projectors"]
        )
        for proj in projectors:
            for v in proj:
                if len(v) != d:
                    raise DocumentError(f"projector vector has length {len(v)}, expected {d}")
        return Measurement(obj["party"], projectors, cond)
    if kind != "unitary":
        raise DocumentError(f"unknown step type {kind!r}")
    flags = dict(adjoint=bool(obj.get("adjoint", False)), transpose=bool(obj.get("transpose", False)))
    if "family" in obj:
        family = obj["family"]
        if family not in _PARAM_NAME:
            raise DocumentError(f"unknown unitary family {family!r}")
        param = int(obj["params"][_PARAM_NAME[family]])
        return LocalUnitary(obj["party"], family, param, condition=cond, **flags)
    entries = tuple(tuple(_parse_cx(z) for z in row) for row in obj["entries"])
    if len(entries) != d or any(len(row) != d for row in entries):
        raise DocumentError(f"explicit unitary is not {d}x{d}")
    return LocalUnitary(obj["party"], entries=entries, condition=cond, **flags)


def _decision_to_json(decision: dict) -> list:
    return [
        {"record": _condition_to_json(rec), "hypothesis": int(h)}
        for rec, h in sorted(decision.items())
    ]


def _certificate_to_json(cert: Certificate) -> dict:
    return {
        "route": cert.route,
        "start": [list(i.pair()) for i in cert.start],
        "trace": [{"kind": s.kind, "param": s.param} for s in cert.trace],
        "canonical": [list(i.pair()) for i in cert.canonical],
        "pair": list(cert.pair) if cert.pair is not None else None,
        "note": cert.note,
    }


def _labels(d: int, pairs) -> tuple:
    out = []
    for pair in pairs:
        m, n = (int(x) for x in pair)
        if not (0 <= m < d and 0 <= n < d):
            raise DocumentError(f"label {pair!r} out of range for d={d}")
        out.append(GbsIndex(d, m, n))
    return tuple(out)


def _certificate_from_json(obj: dict, d: int) -> Certificate:
    pair = obj.get("pair")
    return Certificate(
        route=obj["route"],
        start=_labels(d, obj["start"]),
        trace=tuple(ReductionStep(s["kind"], int(s["param"])) for s in obj["trace"]),
        canonical=_labels(d, obj["canonical"]),
        pair=tuple(int(x) for x in pair) if pair is not None else None,
        note=obj.get("note", ""),
    )


def _document_from_json(obj: dict) -> ProtocolDocument:
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    schema = int(obj["schema"])
    if schema != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {schema}")
    d = int(obj["dim"])
    if d < 2:
        raise DocumentError(f"dimension must be >= 2, got {d}")
    hypotheses = _labels(d, obj["hypotheses"])
    steps = tuple(_step_from_json(s, d) for s in obj.get("steps", []))
    decision = {}
    for entry in obj.get("decision", []):
        rec = _parse_record(entry["record"])
        h = int(entry["hypothesis"])
        if not 0 <= h < len(hypotheses):
            raise DocumentError(f"decision names hypothesis {h}, only {len(hypotheses)} exist")
        for s, _ in rec:
            if not 0 <= s < len(steps):
                raise DocumentError(f"decision record refers to missing step {s}")
        decision[rec] = h
    protocol = Protocol(d, steps, decision) if steps else None
    cert_obj = obj.get("certificate")
    certificate = _certificate_from_json(cert_obj, d) if cert_obj else None
    return ProtocolDocument(d, hypotheses, protocol, certificate, schema)

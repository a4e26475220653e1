"""Machine-checkable certificates.

A :class:`Certificate` records a claim, its inputs, the witnesses produced
by a construction, and a transcript of the exact equalities that were
checked.  The verdict is never stored on trust: it is recomputed from the
inputs and witnesses by the verifier registered for the claim kind, so
``recheck`` on a deserialized certificate re-derives it independently.
"""

from __future__ import annotations

import importlib
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import SchemaError

VERIFIED = "Verified"
REFUTED = "Refuted"

CLAIM_KINDS = (
    "SymplecticMembership",
    "Symplectization",
    "Congruence",
    "FormReduction",
    "ExpressionInEphi",
    "PatchingIdentity",
    "DilationLocalization",
    "RelativeWord",
)


@dataclass
class Check:
    """One checked statement; ``lhs``/``rhs`` hold both sides when it is an equality."""

    name: str
    holds: bool
    lhs: Any = None
    rhs: Any = None
    note: str = ""


@dataclass
class Certificate:
    claim: str
    inputs: dict[str, Any]
    witnesses: dict[str, Any]
    transcript: list[Check] = field(default_factory=list)
    verdict: str = REFUTED

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def failed_checks(self) -> list[Check]:
        return [c for c in self.transcript if not c.holds]

    def summary(self) -> str:
        lines = [f"{self.claim}: {self.verdict}"]
        for c in self.transcript:
            mark = "ok " if c.holds else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f" ({c.note})" if c.note else ""))
        return "\n".join(lines)


Verifier = Callable[[dict, dict], list[Check]]
VERIFIERS: dict[str, Verifier] = {}

# modules that register verifiers on import
_VERIFIER_MODULES = ("ephi.raoswan", "ephi.reduction", "ephi.localglobal", "ephi.membership")


def register(claim: str):
    if claim not in CLAIM_KINDS:
        raise ValueError(f"unknown claim kind {claim!r}")

    def deco(fn: Verifier) -> Verifier:
        VERIFIERS[claim] = fn
        return fn

    return deco


def _verifier(claim: str) -> Verifier:
    if claim not in VERIFIERS:
        for mod in _VERIFIER_MODULES:
            importlib.import_module(mod)
    try:
        return VERIFIERS[claim]
    except KeyError:
        raise SchemaError(f"no verifier for claim kind {claim!r}") from None


def certify(claim: str, inputs: dict, witnesses: dict) -> Certificate:
    """Run the registered verifier and package the outcome."""
    transcript = _verifier(claim)(inputs, witnesses)
    verdict = VERIFIED if transcript and all(c.holds for c in transcript) else REFUTED
    return Certificate(claim, dict(inputs), dict(witnesses), transcript, verdict)


def recheck(cert: Certificate) -> Certificate:
    """Re-derive the verdict from the certificate's inputs and witnesses."""
    return certify(cert.claim, cert.inputs, cert.witnesses)


def equality(name: str, lhs, rhs, note: str = "") -> Check:
    return Check(name, bool(lhs == rhs), lhs, rhs, note)

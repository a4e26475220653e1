"""Certificates for symplectic membership and relative-word claims."""

from __future__ import annotations

from .certificates import Certificate, Check, certify, equality, register
from .forms import AlternatingForm
from .matrix import Matrix, is_alternating
from .words import GeneratorWord, IdealSpec, relative_word_check


def _form_matrix(phi) -> Matrix:
    return phi.phi if isinstance(phi, AlternatingForm) else phi


@register("SymplecticMembership")
def _verify_membership(inputs: dict, witnesses: dict) -> list[Check]:
    phi = _form_matrix(inputs["form"])
    m = inputs["matrix"]
    if isinstance(m, GeneratorWord):
        m = m.matrix
    checks = [Check("form is alternating", is_alternating(phi))]
    if m.shape != phi.shape:
        checks.append(Check("matrix and form have the same size", False, note=f"{m.shape} vs {phi.shape}"))
        return checks
    checks.append(equality("m^t phi m = phi", m.T @ phi @ m, phi))
    return checks


def certify_membership(phi, m) -> Certificate:
    """Certificate for ``m ∈ Sp_phi``; Refuted when the equality fails."""
    return certify("SymplecticMembership", {"form": _form_matrix(phi), "matrix": m}, {})


@register("RelativeWord")
def _verify_relative(inputs: dict, witnesses: dict) -> list[Check]:
    w: GeneratorWord = inputs["word"]
    ideal: IdealSpec = inputs["ideal"]
    checks = [Check("core parameters lie in the ideal", relative_word_check(w, ideal))]
    diff = w.matrix - Matrix.identity(w.ring, w.size)
    checks.append(Check("evaluation is I modulo the ideal", all(ideal.contains(x) for row in diff.elements() for x in row)))
    return checks


def certify_relative(w: GeneratorWord, ideal: IdealSpec) -> Certificate:
    return certify("RelativeWord", {"word": w, "ideal": ideal}, {})

"""Command-line front end.

Every command reads one JSON document (``--input``, default stdin) and
writes one JSON document (``--output``, default stdout).  Exit status is
0 for success/Verified, 1 for Refuted and 2 for any error.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from typing import Any, Callable

from . import serialize as ser
from .certificates import Certificate, recheck
from .errors import EphiError, SchemaError
from .forms import form_decompose
from .localglobal import dilation_verify, quillen_patch_verify
from .matrix import Matrix, pfaffian
from .membership import certify_membership
from .raoswan import rao_swan_congruate, rao_swan_symplectize
from .reduction import alternating_reduce, express_in_ephi
from .rings import ZZ, PolynomialRing
from .vaserstein import translate_elem

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class Outcome:
    """A JSON document plus an exit status."""

    def __init__(self, doc: Any, status: int = EXIT_OK, text: str | None = None):
        self.doc = doc
        self.status = status
        self.text = text


def _cert(cert: Certificate) -> Outcome:
    status = EXIT_OK if cert.verified else EXIT_REFUTED
    return Outcome(ser.certificate_to_json(cert), status, cert.summary())


def _matrix(doc: dict, key: str) -> Matrix:
    sub = doc.get(key, doc if "entries" in doc else None)
    if not isinstance(sub, dict):
        raise SchemaError(f"missing matrix field {key!r}")
    ring = ser.ring_of(doc["ring"]) if "ring" not in sub and "ring" in doc else None
    return ser.matrix_from_json(sub, ring)


def _word(doc: dict, key: str):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    sub = doc[key]
    ring = ser.ring_of(doc["ring"]) if isinstance(sub, dict) and "ring" not in sub and "ring" in doc else None
    return ser.word_from_json(sub, ring)


# -- commands ------------------------------------------------------------------


def cmd_pfaffian(doc, opts) -> Outcome:
    m = _matrix(doc, "matrix")
    pf = pfaffian(m)
    return Outcome({"ring": m.ring.to_json(), "pfaffian": str(pf)}, text=str(pf))


def cmd_verify_sp(doc, opts) -> Outcome:
    form = _matrix(doc, "form")
    m = _word(doc, "word") if "word" in doc else _matrix(doc, "matrix")
    return _cert(certify_membership(form, m))


def cmd_decompose_form(doc, opts) -> Outcome:
    f = form_decompose(_matrix(doc, "form"), strict=opts.strict_pfaffian)
    out = {
        "ring": f.ring.to_json(),
        "n": f.n,
        "pfaffian": str(f.pf),
        "c": f.c.to_strings()[0],
        "nu": f.nu.to_strings(),
        "d": f.d.to_strings()[0],
        "mu": f.mu.to_strings(),
    }
    return Outcome(out)


def _default_ring_for(text: str):
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)))
    return PolynomialRing(ZZ, names) if names else ZZ


def cmd_translate(doc, opts) -> Outcome:
    try:
        n, i, j = (int(doc[k]) for k in ("n", "i", "j"))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from None
    except (TypeError, ValueError):
        raise SchemaError("n, i, j must be integers") from None
    a = str(doc.get("a", "a"))
    ring = ser.ring_of(doc["ring"]) if "ring" in doc else _default_ring_for(a)
    w = translate_elem(n, i, j, ring(a))
    return Outcome(ser.word_to_json(w), text=repr(list(w.atoms)))


def cmd_symplectize(doc, opts) -> Outcome:
    return _cert(rao_swan_symplectize(_word(doc, "word")))


def cmd_congruate(doc, opts) -> Outcome:
    return _cert(rao_swan_congruate(_word(doc, "word")))


def cmd_reduce_form(doc, opts) -> Outcome:
    return _cert(alternating_reduce(_matrix(doc, "form"), strict=opts.strict_pfaffian))


def cmd_express(doc, opts) -> Outcome:
    return _cert(express_in_ephi(_word(doc, "target"), _matrix(doc, "form")))


def cmd_patch_verify(doc, opts) -> Outcome:
    theta = _word(doc, "theta")
    if "cover" not in doc:
        raise SchemaError("missing field 'cover'")
    base = theta.ring.base if isinstance(theta.ring, PolynomialRing) else theta.ring
    cover = ser.cover_from_json(doc["cover"], base)
    return _cert(quillen_patch_verify(theta, cover, doc.get("variable")))


def cmd_dilation_verify(doc, opts) -> Outcome:
    theta_star = _word(doc, "theta_star")
    theta = _word(doc, "theta")
    base = theta_star.ring.base if isinstance(theta_star.ring, PolynomialRing) else theta_star.ring
    for k in ("a", "b"):
        if k not in doc:
            raise SchemaError(f"missing field {k!r}")
    d = doc.get("d", 1)
    if not isinstance(d, int) or d < 1:
        raise SchemaError("d must be a positive integer")
    return _cert(dilation_verify(theta_star, theta, base(doc["a"]), base(doc["b"]), d, doc.get("variable")))


def cmd_eval_word(doc, opts) -> Outcome:
    w = _word(doc, "word") if "word" in doc else ser.word_from_json(doc)
    m = w.matrix
    return Outcome(ser.matrix_to_json(m), text=str(m))


def cmd_verify_cert(doc, opts) -> Outcome:
    cert = ser.certificate_from_json(doc)
    return _cert(recheck(cert))


def cmd_selftest(doc, opts) -> Outcome:
    report = run_selftest(opts.seed)
    status = EXIT_OK if report["passed"] else EXIT_REFUTED
    lines = [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']} ({c['samples']} samples)" for c in report["checks"]]
    return Outcome(report, status, "\n".join(lines))


COMMANDS: dict[str, tuple[Callable, str]] = {
    "pfaffian": (cmd_pfaffian, "Pfaffian of an alternating matrix"),
    "verify-sp": (cmd_verify_sp, "check m^t phi m = phi"),
    "decompose-form": (cmd_decompose_form, "block data c, nu, d, mu of a form"),
    "translate": (cmd_translate, "E_ij(a) as an alpha/beta word over psi_n (also key=value args)"),
    "symplectize": (cmd_symplectize, "Rao-Swan symplectization of a block word"),
    "congruate": (cmd_congruate, "eps0 with eps^t psi eps = (1+eps0)^t psi (1+eps0)"),
    "reduce-form": (cmd_reduce_form, "elementary reduction of a form to psi_n"),
    "express": (cmd_express, "a transvection word in alpha_phi/beta_phi generators"),
    "patch-verify": (cmd_patch_verify, "Quillen patching identity for a word and a cover"),
    "dilation-verify": (cmd_dilation_verify, "check a dilation certificate"),
    "eval-word": (cmd_eval_word, "evaluate a generator word"),
    "verify-cert": (cmd_verify_cert, "re-verify a certificate document"),
    "selftest": (cmd_selftest, "run the randomized invariant suite"),
}


# -- selftest ------------------------------------------------------------------------


def run_selftest(seed: int = 0, scale: int = 1) -> dict:
    """Small randomized version of the invariant suite; deterministic in ``seed``."""
    from .localglobal import CoverSpec
    from .matrix import determinant
    from .rings import IntegersMod
    from .sampling import random_alternating, random_block_word, random_elem_word, random_form, random_theta, random_vector
    from .vaserstein import alpha, beta, c_mat, r_mat
    from .forms import is_in_sp

    rng = random.Random(seed)
    F7 = IntegersMod(7)
    checks: list[dict] = []

    def record(name: str, fn: Callable[[], bool], samples: int):
        ok = all(fn() for _ in range(samples * scale))
        checks.append({"name": name, "passed": ok, "samples": samples * scale})

    def splitting():
        n = rng.choice((2, 3))
        phi = form_decompose(random_form(rng, F7, n)[0])
        v, w = random_vector(rng, F7, 2 * n - 1), random_vector(rng, F7, 2 * n - 1)
        return alpha(phi, v + w) == alpha(phi, v) @ alpha(phi, w) and beta(phi, v + w) == beta(phi, v) @ beta(phi, w)

    def membership():
        n = rng.choice((2, 3))
        phi = form_decompose(random_form(rng, F7, n)[0])
        v = random_vector(rng, F7, 2 * n - 1)
        return is_in_sp(phi, c_mat(phi, v)) and is_in_sp(phi, r_mat(phi, v))

    def pf_squared():
        m = random_alternating(rng, ZZ, rng.choice((2, 4, 6)))
        return pfaffian(m) ** 2 == determinant(m)

    def symplectize():
        w = random_block_word(rng, rng.choice((2, 3)), rng.choice((ZZ, F7)), rng.randint(0, 8))
        return rao_swan_symplectize(w).verified

    def congruate():
        n = rng.choice((2, 3))
        return rao_swan_congruate(random_elem_word(rng, 2 * n, F7, rng.randint(0, 6))).verified

    def reduce():
        return alternating_reduce(random_form(rng, F7, rng.choice((2, 3)))[0], strict=True).verified

    def express():
        phi = random_form(rng, F7, 2)[0]
        return express_in_ephi(random_elem_word(rng, 3, F7, 2), phi).verified

    PX = PolynomialRing(ZZ, ["X"])
    cover = CoverSpec.build(ZZ, [2, 3], [2, -1])

    def patching():
        return quillen_patch_verify(random_theta(rng, PX, 3, rng.randint(1, 4)), cover).verified

    record("splitting alpha(v+w) = alpha(v) alpha(w)", splitting, 10)
    record("C_phi(v), R_phi(v) symplectic", membership, 10)
    record("Pf^2 = det", pf_squared, 10)
    record("Rao-Swan symplectization", symplectize, 5)
    record("Rao-Swan congruence", congruate, 5)
    record("form reduction", reduce, 5)
    record("expression in E_phi", express, 3)
    record("Quillen patching identity", patching, 5)
    return {"seed": seed, "passed": all(c["passed"] for c in checks), "checks": checks}


# -- driver ----------------------------------------------------------------------------


def _parse_kv(items: list[str]) -> dict:
    doc: dict[str, Any] = {}
    for item in items:
        if "=" not in item:
            raise SchemaError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        doc[k.strip()] = v.strip().strip('"').strip("'")
    return doc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ephi", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS), help="operation to run")
    p.add_argument("params", nargs="*", help="key=value parameters (merged over the input document)")
    p.add_argument("--input", "-i", default=None, help="input JSON path, or - for stdin")
    p.add_argument("--output", "-o", default="-", help="output path, or - for stdout")
    p.add_argument("--strict-pfaffian", action="store_true", help="require Pfaffian 1")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized self-tests")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON plus a readable transcript on stderr")
    p.set_defaults(pretty=False)
    return p


def _read_input(path: str | None, params: list[str], command: str) -> dict:
    text = None
    if path == "-" or (path is None and not params and command not in ("selftest",) and not sys.stdin.isatty()):
        text = sys.stdin.read()
    elif path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = ser.loads(text) if text and text.strip() else {}
    if not isinstance(doc, dict):
        raise SchemaError("the input document must be a JSON object")
    doc.update(_parse_kv(params))
    return doc


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        doc = _read_input(opts.input, opts.params, opts.command)
        outcome = COMMANDS[opts.command][0](doc, opts)
        text = ser.dumps(outcome.doc, pretty=opts.pretty)
    except EphiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_ERROR
    except (OSError, ValueError, TypeError, IndexError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_ERROR
    if opts.output == "-":
        print(text, file=stdout)
    else:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if opts.pretty and outcome.text:
        print(outcome.text, file=stderr)
    return outcome.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

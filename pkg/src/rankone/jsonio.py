"""JSON encodings of fields, polynomials and lattice cosets.

Documents are canonical: keys sorted, two-space indent, trailing newline.
"""

from __future__ import annotations

import json

from .ffpoly import DensePoly, FieldSpec, LaurentPoly, MultiPoly
from .zsolve import LatticeCoset

JOB_SCHEMA = "rankone.job/1"
CERT_SCHEMA = "rankone.cert/1"
CORPUS_SCHEMA = "rankone.corpus/1"


class FormatError(ValueError):
    """Malformed input document or flag value."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def parse_field(text: str) -> FieldSpec:
    """'p', 'p^d' or 'p^d:m0,m1,...,md' (defining polynomial, lowest degree first)."""
    try:
        head, _, mod = text.strip().partition(":")
        p, _, d = head.partition("^")
        modulus = tuple(int(c) for c in mod.split(",")) if mod else None
        return FieldSpec(int(p), int(d) if d else 1, modulus)
    except ValueError as exc:
        raise FormatError(f"bad field {text!r}: {exc}") from None


def field_to_json(fld: FieldSpec):
    out = {"p": fld.p, "d": fld.d}
    if fld.modulus is not None:
        out["modulus"] = list(fld.modulus)
    return out


def field_from_json(obj) -> FieldSpec:
    if isinstance(obj, str):
        return parse_field(obj)
    if isinstance(obj, int):
        obj = {"p": obj}
    if not isinstance(obj, dict) or "p" not in obj:
        raise FormatError(f"bad field description {obj!r}")
    try:
        mod = obj.get("modulus")
        return FieldSpec(int(obj["p"]), int(obj.get("d", 1)), tuple(mod) if mod is not None else None)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad field description {obj!r}: {exc}") from None


def poly_to_json(f: MultiPoly):
    return [{"coeff": c, "t": k[0], "x": list(k[1:])} for k, c in f.terms.items()]


def poly_from_json(fld: FieldSpec, terms, M: int | None = None) -> MultiPoly:
    if not isinstance(terms, list):
        raise FormatError("a polynomial is a list of terms")
    items = []
    for t in terms:
        if not isinstance(t, dict) or "coeff" not in t:
            raise FormatError(f"bad term {t!r}")
        x = t.get("x", [])
        if not isinstance(x, list) or not all(isinstance(v, int) for v in x):
            raise FormatError(f"bad x-degrees in term {t!r}")
        if M is None:
            M = len(x)
        items.append(((int(t.get("t", 0)), *x), int(t["coeff"])))
    if M is None:
        raise FormatError("cannot infer the number of variables from an empty polynomial")
    try:
        return MultiPoly(fld, M, items)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def system_from_json(fld: FieldSpec, polys, M: int | None = None):
    if not isinstance(polys, list) or not polys:
        raise FormatError("a system is a nonempty list of polynomials")
    out = []
    for terms in polys:
        f = poly_from_json(fld, terms, M)
        M = f.M
        out.append(f)
    return out


def dense_to_json(P: DensePoly):
    return list(P.coeffs)


def dense_from_json(fld: FieldSpec, coeffs) -> DensePoly:
    if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
        raise FormatError(f"bad coefficient list {coeffs!r}")
    try:
        return DensePoly(fld, coeffs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def laurent_to_json(P: LaurentPoly):
    return [{"coeff": c, "t": e} for e, c in P.terms()]


def laurent_from_json(fld: FieldSpec, terms) -> LaurentPoly:
    if not isinstance(terms, list):
        raise FormatError("a Laurent polynomial is a list of {coeff, t} terms")
    try:
        return LaurentPoly.from_terms(fld, [(int(t["t"]), int(t["coeff"])) for t in terms])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad Laurent polynomial {terms!r}: {exc}") from None


def coset_to_json(c: LatticeCoset):
    return {"particular": list(c.particular), "basis": [list(v) for v in c.basis]}


def coset_from_json(obj) -> LatticeCoset:
    try:
        return LatticeCoset.make(obj["particular"], obj["basis"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad coset {obj!r}: {exc}") from None

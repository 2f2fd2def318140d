"""Catalog of verified linear operator fields with vanishing torsion.

Each :class:`CatalogEntry` bundles one classified algebra: the operator, the
coefficients of its characteristic polynomial, the structure relations of
the multiplication it encodes, and -- when two presentations of the same
algebra are recorded -- the exact linear change mapping one to the other.
The catalog ships as a JSON data file under ``data/``; :func:`load_catalog`
re-parses and re-verifies it rather than trusting it, and
:func:`build_catalog` reconstructs the same entries from source literals.

Beyond the fixed tables, three constructors extend the indecomposable
three-variable entries to any dimension: :func:`generalized_L1`,
:func:`generalized_L2` and :func:`generalized_blocks`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .errors import DimensionMismatchError, FormatError
from .exactfield import Scalar
from .polyring import Poly
from .polymatrix import PolyMatrix, charpoly_sigmas, companion_matrix, jacobian
from .nijenhuis import (
    StructureConstants,
    change_coordinates,
    is_differentially_nondegenerate,
    operator_to_lsa,
    torsion,
)
from .textio import (
    default_names,
    format_poly,
    format_scalar_matrix,
    parse_poly,
    parse_scalar_matrix,
)

FORMAT_TAG = "nijenhuis-catalog/1"

#: Scalar change that turns the fully diagonal operator diag(x1,x2,x3) into
#: the paired form [[x,y,0],[y,x,0],[0,0,z]] (catalog id "c5+⊕d"): the first
#: two coordinates are replaced by their sum and difference.
DIAG_PAIRING_CHANGE = (
    (Scalar(1), Scalar(1), Scalar(0)),
    (Scalar(1), Scalar(-1), Scalar(0)),
    (Scalar(0), Scalar(0), Scalar(1)),
)


class CatalogEntry(object):
    """One classified algebra: operator, sigmas, relations, optional change.

    ``change``, when present, is the scalar matrix T with
    change_coordinates(operator, T) == operator of the entry named
    ``target``.  ``sign_variant`` tags entries that exist in a ± pair
    sharing the same operator.
    """

    __slots__ = ("id", "dim", "radicand", "operator", "sigmas", "relations",
                 "change", "target", "sign_variant")

    def __init__(self, entry_id, dim, operator, sigmas, relations,
                 change=None, target=None, sign_variant=None):
        if operator.rows != dim or operator.cols != dim:
            raise DimensionMismatchError("operator must be %dx%d" % (dim, dim))
        if len(sigmas) != dim:
            raise DimensionMismatchError("expected %d sigmas" % dim)
        object.__setattr__(self, "id", entry_id)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "radicand", _data_radicand(operator, sigmas, relations, change))
        object.__setattr__(self, "operator", operator)
        object.__setattr__(self, "sigmas", tuple(sigmas))
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "change", change)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "sign_variant", sign_variant)

    def __setattr__(self, name, value):
        raise AttributeError("CatalogEntry is immutable")

    def __eq__(self, other):
        if not isinstance(other, CatalogEntry):
            return NotImplemented
        return (self.id == other.id and self.dim == other.dim
                and self.radicand == other.radicand
                and self.operator == other.operator
                and self.sigmas == other.sigmas
                and self.relations == other.relations
                and self.change == other.change
                and self.target == other.target
                and self.sign_variant == other.sign_variant)

    def __hash__(self):
        return hash((self.id, self.dim, self.operator, self.sigmas))

    def __repr__(self):
        return "CatalogEntry(%r, dim=%d)" % (self.id, self.dim)

    def to_json_dict(self):
        names = default_names(self.dim)
        record = {
            "id": self.id,
            "dim": self.dim,
            "radicand": self.radicand,
            "operator": [[format_poly(entry, names) for entry in row]
                         for row in self.operator.entries],
            "sigmas": [format_poly(s, names) for s in self.sigmas],
            "relations": [{"i": i, "j": j, "k": k, "coeff": _format_scalar(c)}
                          for (i, j, k, c) in self.relations.relations()],
        }
        if self.change is not None:
            record["change"] = format_scalar_matrix([list(row) for row in self.change])
        return record

    @staticmethod
    def from_json_dict(record):
        try:
            entry_id = record["id"]
            dim = record["dim"]
            names = default_names(dim)
            operator = PolyMatrix(tuple(
                tuple(parse_poly(cell, names) for cell in row)
                for row in record["operator"]))
            sigmas = tuple(parse_poly(s, names) for s in record["sigmas"])
            relations = StructureConstants.from_relations(dim, [
                (r["i"], r["j"], r["k"], _parse_scalar(r["coeff"]))
                for r in record["relations"]])
            change = None
            if "change" in record:
                change = tuple(tuple(row) for row in parse_scalar_matrix(record["change"]))
        except (KeyError, TypeError) as exc:
            raise FormatError("malformed catalog entry: %s" % exc)
        entry = CatalogEntry(entry_id, dim, operator, sigmas, relations,
                             change=change,
                             target=_CHANGE_TARGETS.get(entry_id),
                             sign_variant=_SIGN_VARIANTS.get(entry_id))
        if entry.radicand != record["radicand"]:
            raise FormatError("entry %r radicand does not match its data" % entry_id)
        return entry


def _format_scalar(value):
    from .textio import format_scalar
    return format_scalar(value)


def _parse_scalar(text):
    from .textio import parse_scalar
    return parse_scalar(text)


def _data_radicand(operator, sigmas, relations, change):
    rad = 0
    for row in operator.entries:
        for entry in row:
            rad = _merge_rad(rad, entry.radicand())
    for s in sigmas:
        rad = _merge_rad(rad, s.radicand())
    for (_, _, _, coeff) in relations.relations():
        rad = _merge_rad(rad, coeff.rad)
    if change is not None:
        for row in change:
            for value in row:
                rad = _merge_rad(rad, value.rad)
    return rad


def _merge_rad(current, found):
    if found == 0:
        return current
    if current not in (0, found):
        raise FormatError("mixed radicands %d and %d in one entry" % (current, found))
    return found


# -- fixed entries -------------------------------------------------------------

#: id -> id of the simplified presentation its change maps to.
_CHANGE_TARGETS = {
    "L2": "ind3.3",
    "L3": "ind3.1",
    "L4": "c5-⊕d",
    "L5+": "b4+⊕d",
    "L5-": "b4+⊕d",
    "L6+": "b4-⊕d",
    "L6-": "b4-⊕d",
    "L7": "ind3.2",
    "L8": "c5+⊕d",
}

#: id -> which branch of a ± pair the entry records.
_SIGN_VARIANTS = {"L5+": "+", "L5-": "-", "L6+": "+", "L6-": "-"}

# operator, sigmas, relations, change for every fixed entry, as canonical
# strings over x1..xn.  Relations are (i, j, k, coeff) with e_i * e_j
# containing coeff * e_k.
_FIXED = [
    ("d", 1,
     [["x1"]],
     ["-x1"],
     [(1, 1, 1, "1")],
     None),
    ("b4+", 2,
     [["2*x1", "-x2"], ["x2", "0"]],
     ["-2*x1", "x2^2"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (2, 2, 1, "-1")],
     None),
    ("b4-", 2,
     [["2*x1", "x2"], ["x2", "0"]],
     ["-2*x1", "-x2^2"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (2, 2, 1, "1")],
     None),
    ("c5+", 2,
     [["x1", "x2"], ["x2", "x1"]],
     ["-2*x1", "x1^2-x2^2"],
     [(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 1, 2, "1"), (2, 2, 1, "1")],
     None),
    ("c5-", 2,
     [["x1", "-x2"], ["x2", "x1"]],
     ["-2*x1", "x1^2+x2^2"],
     [(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 1, 2, "1"), (2, 2, 1, "-1")],
     None),
    ("b4+⊕d", 3,
     [["2*x1", "-x2", "0"], ["x2", "0", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "x2^2+2*x1*x3", "-x2^2*x3"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (2, 2, 1, "-1"), (3, 3, 3, "1")],
     None),
    ("b4-⊕d", 3,
     [["2*x1", "x2", "0"], ["x2", "0", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "-x2^2+2*x1*x3", "x2^2*x3"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (2, 2, 1, "1"), (3, 3, 3, "1")],
     None),
    ("c5+⊕d", 3,
     [["x1", "x2", "0"], ["x2", "x1", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "x1^2-x2^2+2*x1*x3", "-x1^2*x3+x2^2*x3"],
     [(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 1, 2, "1"), (2, 2, 1, "1"),
      (3, 3, 3, "1")],
     None),
    ("c5-⊕d", 3,
     [["x1", "-x2", "0"], ["x2", "x1", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "x1^2+x2^2+2*x1*x3", "-x1^2*x3-x2^2*x3"],
     [(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 1, 2, "1"), (2, 2, 1, "-1"),
      (3, 3, 3, "1")],
     None),
    ("ind3.1", 3,
     [["2*x1-x3", "-x2", "x3-x1"], ["x2", "x3", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "x2^2+4*x1*x3-x3^2", "-x2^2*x3-2*x1*x3^2+x3^3"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (1, 3, 1, "-1"), (2, 2, 1, "-1"),
      (2, 3, 2, "1"), (3, 1, 1, "-1"), (3, 3, 1, "1"), (3, 3, 3, "1")],
     None),
    ("ind3.2", 3,
     [["2*x1-x3", "x2", "x3-x1"], ["x2", "x3", "0"], ["0", "0", "x3"]],
     ["-2*x1-x3", "-x2^2+4*x1*x3-x3^2", "x2^2*x3-2*x1*x3^2+x3^3"],
     [(1, 1, 1, "2"), (1, 2, 2, "1"), (1, 3, 1, "-1"), (2, 2, 1, "1"),
      (2, 3, 2, "1"), (3, 1, 1, "-1"), (3, 3, 1, "1"), (3, 3, 3, "1")],
     None),
    ("ind3.3", 3,
     [["x1", "-x3", "-x2"], ["x2", "0", "-x2"], ["0", "0", "x3"]],
     ["-x1-x3", "x1*x3+x2*x3", "-x2*x3^2"],
     [(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 3, 1, "-1"), (3, 2, 1, "-1"),
      (3, 2, 2, "-1"), (3, 3, 3, "1")],
     None),
    ("ind3.4", 3,
     [["-x1", "x3", "x2"], ["-2/3*x2", "0", "x3"], ["-1/3*x3", "0", "0"]],
     ["x1", "x2*x3", "1/3*x3^3"],
     [(1, 1, 1, "-1"), (1, 2, 2, "-2/3"), (1, 3, 3, "-1/3"), (2, 3, 1, "1"),
      (3, 2, 1, "1"), (3, 3, 2, "1")],
     None),
    ("L1", 3,
     [["-x1", "x3", "x2"], ["-2/3*x2", "0", "x3"], ["-1/3*x3", "0", "0"]],
     ["x1", "x2*x3", "1/3*x3^3"],
     None,
     None),
    ("L2", 3,
     [["-x1", "x3", "x2"], ["0", "x2", "0"],
      ["-x2-x3", "-2*x1-3*x2-3*x3", "-x2"]],
     ["x1", "x2*x3", "-x1*x2^2-x2^3-x2^2*x3"],
     None,
     [["-1", "0", "-1"], ["0", "0", "1"], ["1", "1", "0"]]),
    ("L3", 3,
     [["-1/3*x1", "x3", "x2"],
      ["-1/3*x2", "-1/3*x1+1/8*x2+3/8*x3", "9/8*x2+3/8*x3"],
      ["-1/3*x3", "-1/72*x2-3/8*x3", "-1/3*x1-1/8*x2-3/8*x3"]],
     ["x1", "1/3*x1^2+x2*x3",
      "1/27*x1^3-1/216*x2^3+1/3*x1*x2*x3-1/8*x2^2*x3+3/8*x2*x3^2+1/8*x3^3"],
     None,
     [["-2", "0", "-1"], ["-2", "sqrt(3)", "2"],
      ["2/3", "1/3*sqrt(3)", "-2/3"]]),
    ("L4", 3,
     [["-1/3*x1", "x3", "x2"], ["-1/3*x2", "-1/3*x1", "3*x3"],
      ["-1/3*x3", "-1/9*x2", "-1/3*x1"]],
     ["x1", "1/3*x1^2+x2*x3", "1/27*x1^3-1/27*x2^3+x3^3+1/3*x1*x2*x3"],
     None,
     [["-2", "0", "-1"], ["-1", "sqrt(3)", "1"],
      ["1/3", "1/3*sqrt(3)", "-1/3"]]),
    ("L5+", 3,
     [["-1/2*x1", "x3", "x2"],
      ["-3/8*x2+1/32*x3", "-1/4*x1+1/4*x2+1/16*x3", "1/16*x1+3/16*x2+3/64*x3"],
      ["1/2*x2-3/8*x3", "x1-3*x2-3/4*x3", "-1/4*x1-1/4*x2-1/16*x3"]],
     ["x1", "1/4*x1^2+x2*x3",
      "1/2*x1*x2^2-x2^3+1/4*x1*x2*x3-1/4*x2^2*x3+1/32*x1*x3^2"
      "+1/16*x2*x3^2+1/64*x3^3"],
     None,
     [["-2", "0", "-1"], ["-1/2", "1/2", "1/4"], ["2", "2", "-1"]]),
    ("L5-", 3,
     [["-1/2*x1", "x3", "x2"],
      ["-3/8*x2+1/32*x3", "-1/4*x1+1/4*x2+1/16*x3", "1/16*x1+3/16*x2+3/64*x3"],
      ["1/2*x2-3/8*x3", "x1-3*x2-3/4*x3", "-1/4*x1-1/4*x2-1/16*x3"]],
     ["x1", "1/4*x1^2+x2*x3",
      "1/2*x1*x2^2-x2^3+1/4*x1*x2*x3-1/4*x2^2*x3+1/32*x1*x3^2"
      "+1/16*x2*x3^2+1/64*x3^3"],
     None,
     [["-2", "0", "-1"], ["-1/2", "-1/2", "1/4"], ["2", "-2", "-1"]]),
    ("L6+", 3,
     [["-1/2*x1", "-2*x2", "-2*x3"], ["-1/4*x2", "0", "-1/2*x2"],
      ["-1/2*x3", "-x2", "-1/2*x1"]],
     ["x1", "1/4*x1^2-x2^2-x3^2", "-1/2*x1*x2^2+x2^2*x3"],
     None,
     [["-2", "0", "-1"], ["0", "1", "0"], ["-1", "0", "1/2"]]),
    ("L6-", 3,
     [["-1/2*x1", "-2*x2", "-2*x3"], ["-1/4*x2", "0", "-1/2*x2"],
      ["-1/2*x3", "-x2", "-1/2*x1"]],
     ["x1", "1/4*x1^2-x2^2-x3^2", "-1/2*x1*x2^2+x2^2*x3"],
     None,
     [["-2", "0", "-1"], ["0", "-1", "0"], ["-1", "0", "1/2"]]),
    ("L7", 3,
     [["-1/3*x1", "-2*x2", "-2*x3"],
      ["-1/3*x2", "-1/3*x1-1/3*sqrt(3)*x3", "1/6*sqrt(3)*x2"],
      ["-1/3*x3", "2/3*sqrt(3)*x2", "-1/3*x1+1/3*sqrt(3)*x3"]],
     ["x1", "1/3*x1^2-x2^2-x3^2",
      "1/27*x1^3-1/3*x1*x2^2-1/3*x1*x3^2-1/3*sqrt(3)*x2^2*x3"
      "-2/9*sqrt(3)*x3^3"],
     None,
     [["-2", "0", "-1"], ["0", "1", "0"],
      ["2/3*sqrt(3)", "0", "-2/3*sqrt(3)"]]),
    ("L8", 3,
     [["-1/3*x1", "-2*x2", "-2*x3"],
      ["-1/3*x2", "-1/3*x1-1/3*sqrt(3)*x3", "-1/3*sqrt(3)*x2"],
      ["-1/3*x3", "-1/3*sqrt(3)*x2", "-1/3*x1+1/3*sqrt(3)*x3"]],
     ["x1", "1/3*x1^2-x2^2-x3^2",
      "1/27*x1^3-1/3*x1*x2^2-1/3*x1*x3^2+2/3*sqrt(3)*x2^2*x3"
      "-2/9*sqrt(3)*x3^3"],
     None,
     [["-2", "0", "-1"], ["0", "1", "0"],
      ["-1/3*sqrt(3)", "0", "1/3*sqrt(3)"]]),
]


def build_catalog():
    """Construct the full entry list from source literals."""
    entries = []
    for (entry_id, dim, op_rows, sigma_rows, relation_rows, change_rows) in _FIXED:
        names = default_names(dim)
        operator = PolyMatrix(tuple(
            tuple(parse_poly(cell, names) for cell in row) for row in op_rows))
        sigmas = tuple(parse_poly(s, names) for s in sigma_rows)
        if relation_rows is None:
            relations = operator_to_lsa(operator)
        else:
            relations = StructureConstants.from_relations(dim, [
                (i, j, k, _parse_scalar(c)) for (i, j, k, c) in relation_rows])
        change = None
        if change_rows is not None:
            change = tuple(tuple(row) for row in parse_scalar_matrix(change_rows))
        entries.append(CatalogEntry(
            entry_id, dim, operator, sigmas, relations,
            change=change,
            target=_CHANGE_TARGETS.get(entry_id),
            sign_variant=_SIGN_VARIANTS.get(entry_id)))
    return entries


# -- persistence ---------------------------------------------------------------


def catalog_path():
    """Path of the packaged catalog data file."""
    return resources.files("linnij").joinpath("data/catalog.json")


def save_catalog(entries, path):
    document = {
        "format": FORMAT_TAG,
        "entries": [entry.to_json_dict() for entry in entries],
    }
    with open(str(path), "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, ensure_ascii=False)
        handle.write("\n")


def load_catalog(path=None):
    """Read, parse and structurally validate the catalog data file.

    The file is never trusted: every polynomial and scalar is re-parsed and
    each entry re-validated by the CatalogEntry constructor; semantic
    verification is a separate step (verify_entry).
    """
    if path is None:
        text = catalog_path().read_text(encoding="utf-8")
    else:
        with open(str(path), "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        document = json.loads(text)
    except ValueError as exc:
        raise FormatError("catalog file is not valid JSON: %s" % exc)
    if not isinstance(document, dict) or document.get("format") != FORMAT_TAG:
        raise FormatError("unrecognized catalog format tag")
    entries = document.get("entries")
    if not isinstance(entries, list):
        raise FormatError("catalog file has no entry list")
    return [CatalogEntry.from_json_dict(record) for record in entries]


# -- verification --------------------------------------------------------------


class EntryReport(object):
    """Outcome of verifying one entry: (name, ok, detail) per check."""

    __slots__ = ("entry_id", "checks")

    def __init__(self, entry_id, checks):
        object.__setattr__(self, "entry_id", entry_id)
        object.__setattr__(self, "checks", tuple(checks))

    def __setattr__(self, name, value):
        raise AttributeError("EntryReport is immutable")

    @property
    def ok(self):
        return all(ok for (_, ok, _) in self.checks)

    def failures(self):
        return [(name, detail) for (name, ok, detail) in self.checks if not ok]

    def to_json_dict(self):
        return {
            "id": self.entry_id,
            "ok": self.ok,
            "checks": [{"name": name, "ok": ok, "detail": detail}
                       for (name, ok, detail) in self.checks],
        }


_TARGET_INDEX = None


def _default_targets():
    global _TARGET_INDEX
    if _TARGET_INDEX is None:
        _TARGET_INDEX = {entry.id: entry for entry in build_catalog()}
    return _TARGET_INDEX


def verify_entry(entry, targets=None, rng=None):
    """Run every invariant of one entry and report pass/fail per check.

    Failures are data (the report), not exceptions.  ``targets`` maps entry
    ids to entries and is consulted for the change check; ``rng`` adds a
    seeded point-evaluation spot check on top of the exact identities.
    """
    checks = []

    tensor = torsion(entry.operator)
    witness = tensor.first_nonzero()
    checks.append(("torsion", witness is None,
                   None if witness is None else
                   "nonzero component (%d,%d,%d): %s"
                   % (witness[0], witness[1], witness[2],
                      format_poly(witness[3], default_names(entry.dim)))))

    computed = charpoly_sigmas(entry.operator)
    bad = [k + 1 for k in range(entry.dim) if computed[k] != entry.sigmas[k]]
    checks.append(("charpoly", not bad,
                   None if not bad else "sigma mismatch at %s" % bad))

    derived = operator_to_lsa(entry.operator)
    checks.append(("relations", derived == entry.relations,
                   None if derived == entry.relations else
                   "structure constants differ"))

    nondeg = is_differentially_nondegenerate(entry.sigmas)
    checks.append(("nondegenerate", nondeg,
                   None if nondeg else "sigma Jacobian determinant vanishes"))

    jac = jacobian(list(entry.sigmas))
    lhs = jac @ entry.operator
    rhs = companion_matrix(list(entry.sigmas)) @ jac
    cov_ok = lhs == rhs
    detail = None
    if not cov_ok:
        spots = [(r + 1, c + 1) for r in range(entry.dim) for c in range(entry.dim)
                 if lhs[r, c] != rhs[r, c]]
        detail = "J*L != S*J at %s" % spots
    checks.append(("covariance", cov_ok, detail))

    if entry.change is not None:
        if targets is None:
            targets = _default_targets()
        target = targets.get(entry.target)
        if target is None:
            checks.append(("change", False, "missing target entry %r" % entry.target))
        else:
            mapped = change_coordinates(entry.operator, [list(row) for row in entry.change])
            ok = mapped == target.operator
            detail = None
            if not ok:
                spots = [(r + 1, c + 1)
                         for r in range(entry.dim) for c in range(entry.dim)
                         if mapped[r, c] != target.operator[r, c]]
                detail = "mapped operator differs from %r at %s" % (entry.target, spots)
            checks.append(("change", ok, detail))

    if rng is not None:
        point = [Scalar(rng.randint(-3, 3)) for _ in range(entry.dim)]
        residue = [(r + 1, c + 1)
                   for r in range(entry.dim) for c in range(entry.dim)
                   if not (lhs[r, c] - rhs[r, c]).evaluate(point).is_zero()]
        checks.append(("sample", not residue,
                       None if not residue else
                       "pointwise residual at entries %s" % residue))

    return EntryReport(entry.id, checks)


# -- n-dimensional families ----------------------------------------------------


def generalized_L1(n):
    """Extension of entry L1 to n variables (n >= 2).

    First column ((i-1-n)/n)*x_i, superdiagonal x_n, last column carrying
    i*x_{i+1}; sigmas x_i*x_n^(i-1) and (1/n)*x_n^n.
    """
    if n < 2:
        raise DimensionMismatchError("family L1 needs n >= 2, got %d" % n)
    zero = Poly.zero(n)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][0] = Poly.monomial(n, _unit(n, i), Scalar(Fraction(i - n, n)))
    for i in range(n - 1):
        rows[i][i + 1] = rows[i][i + 1] + Poly.variable(n, n - 1)
    for i in range(n - 2):
        rows[i][n - 1] = rows[i][n - 1] + Poly.monomial(n, _unit(n, i + 1), Scalar(i + 1))
    operator = PolyMatrix(tuple(tuple(row) for row in rows))
    sigmas = []
    for i in range(1, n):
        exps = [0] * n
        exps[i - 1] = 1
        exps[n - 1] += i - 1
        sigmas.append(Poly.monomial(n, tuple(exps), Scalar(1)))
    exps = [0] * n
    exps[n - 1] = n
    sigmas.append(Poly.monomial(n, tuple(exps), Scalar(Fraction(1, n))))
    return CatalogEntry("L1(n=%d)" % n, n, operator, tuple(sigmas),
                        operator_to_lsa(operator))


def generalized_L2(n):
    """Extension of entry L2 to n variables (n >= 3).

    First column x_1..x_{n-1}, superdiagonal -x_n, last column
    -(i-1)*x_i - i*x_{i+1}; sigmas (-1)^i*(x_{i-1}+x_i)*x_n^(i-1).
    """
    if n < 3:
        raise DimensionMismatchError("family L2 needs n >= 3, got %d" % n)
    zero = Poly.zero(n)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][0] = Poly.variable(n, i)
    for i in range(n - 2):
        rows[i][i + 1] = rows[i][i + 1] - Poly.variable(n, n - 1)
    for i in range(n - 2):
        rows[i][n - 1] = (rows[i][n - 1]
                          - Poly.variable(n, i).scale(Scalar(i))
                          - Poly.variable(n, i + 1).scale(Scalar(i + 1)))
    rows[n - 2][n - 1] = rows[n - 2][n - 1] - Poly.variable(n, n - 2).scale(Scalar(n - 2))
    rows[n - 1][n - 1] = Poly.variable(n, n - 1)
    operator = PolyMatrix(tuple(tuple(row) for row in rows))
    x_n = Poly.variable(n, n - 1)
    sigmas = [-Poly.variable(n, 0) - x_n]
    for i in range(2, n):
        base = Poly.variable(n, i - 2) + Poly.variable(n, i - 1)
        sigmas.append(base.scale(Scalar((-1) ** i)) * x_n ** (i - 1))
    sigmas.append(Poly.variable(n, n - 2).scale(Scalar((-1) ** n)) * x_n ** (n - 1))
    return CatalogEntry("L2(n=%d)" % n, n, operator, tuple(sigmas),
                        operator_to_lsa(operator))


def generalized_blocks(n, signs=None):
    """Block extension of entries ind3.1/ind3.2 to n variables (n >= 3).

    (n-1)//2 two-by-two blocks [[2*x_{2j+1}-x_n, s_j*x_{2j+2}], [x_{2j+2},
    x_n]] plus a final 1x1 block x_n; even n inserts an extra 1x1 block
    2*x_{n-1}-x_n.  Block-leading rows carry x_n - x_{2j+1} in the last
    column.  ``signs`` picks each block's s_j (default all +1).
    """
    if n < 3:
        raise DimensionMismatchError("family blocks needs n >= 3, got %d" % n)
    nblocks = (n - 1) // 2
    if signs is None:
        signs = [1] * nblocks
    signs = list(signs)
    if len(signs) != nblocks:
        raise DimensionMismatchError(
            "need %d block signs for n=%d, got %d" % (nblocks, n, len(signs)))
    if any(s not in (1, -1) for s in signs):
        raise FormatError("block signs must be +1 or -1")
    zero = Poly.zero(n)
    rows = [[zero] * n for _ in range(n)]
    x_n = Poly.variable(n, n - 1)
    for j in range(nblocks):
        r = 2 * j
        rows[r][r] = Poly.variable(n, r).scale(Scalar(2)) - x_n
        rows[r][r + 1] = Poly.variable(n, r + 1).scale(Scalar(signs[j]))
        rows[r + 1][r] = Poly.variable(n, r + 1)
        rows[r + 1][r + 1] = x_n
        rows[r][n - 1] = x_n - Poly.variable(n, r)
    if n % 2 == 0:
        rows[n - 2][n - 2] = Poly.variable(n, n - 2).scale(Scalar(2)) - x_n
        rows[n - 2][n - 1] = x_n - Poly.variable(n, n - 2)
    rows[n - 1][n - 1] = x_n
    operator = PolyMatrix(tuple(tuple(row) for row in rows))
    sigmas = tuple(charpoly_sigmas(operator))
    tag = "".join("+" if s > 0 else "-" for s in signs)
    return CatalogEntry("blocks(n=%d,%s)" % (n, tag), n, operator, sigmas,
                        operator_to_lsa(operator), sign_variant=tag)


def _unit(n, index):
    exps = [0] * n
    exps[index] = 1
    return tuple(exps)

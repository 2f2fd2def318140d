"""Reconstruction of operators from sigma sets and the linearity systems.

The pipeline implemented here: given sigmas (sigma_1, ..., sigma_n), form the
Jacobian J and the companion matrix S, and recover the candidate operator
from the identity J L = S J as L = adj(J) S J / det(J).  Everything stays in
the polynomial ring: the candidate is carried as a matrix of numerators plus
the shared denominator Q = det(J), and an operator exists iff Q divides every
numerator exactly.

For the classification runs the sigmas carry symbolic coefficients.  Those
parameters (and the linear-form unknowns alpha_ij) are ordinary variables of
the same sparse-polynomial ring, appended after the geometric ones; asking
"which choices of coefficients make entry (r, c) linear" then becomes exact
coefficient extraction over the geometric monomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DependentSigmasError,
    DimensionMismatchError,
    FormatError,
    LinnijError,
)
from .polymatrix import (
    PolyMatrix,
    companion_matrix,
    jacobian,
    scalar_mat_det,
    scalar_mat_inverse,
    scalar_mat_mul,
)
from .polyring import DivisibilityFailure, Poly, exact_divide, grlex_key
from .exactfield import ONE, ZERO, Scalar, scalar_sqrt
from .textio import format_poly, parse_poly, parse_scalar


def _involves(p: Poly, indices: Sequence[int]) -> bool:
    return any(exps[i] for exps in p.terms for i in indices)


def _project(p: Poly, nvars: int) -> Poly:
    """Drop trailing variables that no longer occur."""
    terms = {}
    for exps, coeff in p.terms.items():
        if any(exps[nvars:]):
            raise DimensionMismatchError("polynomial still uses a dropped variable")
        terms[exps[:nvars]] = coeff
    return Poly(nvars, terms)


# -- sigma -> operator --------------------------------------------------------


def dependent_sigma_indices(sigmas: Sequence[Poly], geo: int) -> list[int]:
    """1-based positions whose differentials depend on the previous rows.

    Fraction-free row elimination on the Jacobian: a row that reduces to zero
    against the rows above it names a functionally dependent sigma.
    """
    j = jacobian(sigmas, wrt=range(geo))
    rows = [list(r) for r in j.entries]
    pivots: list[tuple[int, int]] = []  # (row, column)
    dependent = []
    for i, row in enumerate(rows):
        for p, c in pivots:
            if not row[c].is_zero():
                factor = row[c]
                lead = rows[p][c]
                row = [lead * row[m] - factor * rows[p][m] for m in range(geo)]
        if all(v.is_zero() for v in row):
            dependent.append(i + 1)
        else:
            rows[i] = row
            col = next(m for m in range(geo) if not row[m].is_zero())
            pivots.append((i, col))
    return dependent


class ReconstructionResult:
    """Candidate operator as numerators over a shared denominator.

    ``linear_part`` is the exact quotient matrix when the denominator divides
    every numerator; otherwise it is None and ``failures`` lists the 1-based
    positions (row, col, remainder) where division leaves a remainder.
    """

    __slots__ = ("numerators", "denominator", "linear_part", "failures")

    def __init__(self, numerators, denominator, linear_part, failures):
        object.__setattr__(self, "numerators", numerators)
        object.__setattr__(self, "denominator", denominator)
        object.__setattr__(self, "linear_part", linear_part)
        object.__setattr__(self, "failures", failures)

    def __setattr__(self, name, value):
        raise AttributeError("ReconstructionResult is immutable")


def reconstruction_pieces(
    sigmas: Sequence[Poly], geo: int
) -> tuple[PolyMatrix, Poly]:
    """Numerator matrix adj(J) S J and denominator det(J)."""
    j = jacobian(sigmas, wrt=range(geo))
    q = j.determinant()
    if q.is_zero():
        raise DependentSigmasError(dependent_sigma_indices(sigmas, geo))
    s = companion_matrix(list(sigmas))
    return j.adjugate() @ s @ j, q


def reconstruct_operator(
    sigmas: Sequence[Poly], geo: int | None = None
) -> ReconstructionResult:
    """Recover the operator with the given characteristic coefficients.

    ``geo`` is the count of leading geometric variables (defaults to
    len(sigmas); pass it explicitly when the ring carries parameters).
    Raises when the sigmas are functionally dependent, naming the dependent
    entries.
    """
    n = len(sigmas)
    if n == 0:
        raise DimensionMismatchError("empty sigma set")
    if geo is None:
        geo = n
    if geo != n:
        raise DimensionMismatchError(
            "%d sigmas cannot determine an operator on %d variables" % (n, geo)
        )
    numerators, q = reconstruction_pieces(sigmas, geo)
    quotients = []
    failures = []
    for r in range(n):
        row = []
        for c in range(n):
            quo = exact_divide(numerators.entries[r][c], q)
            if isinstance(quo, DivisibilityFailure):
                failures.append((r + 1, c + 1, quo.remainder))
                row.append(None)
            else:
                row.append(quo)
        quotients.append(row)
    linear_part = None if failures else PolyMatrix(quotients)
    return ReconstructionResult(numerators, q, linear_part, failures)


# -- parametric sigma sets ----------------------------------------------------

PARAM_NAMES = (
    "a",
    "b_11",
    "b_12",
    "b_13",
    "b_31",
    "b_21",
    "b_22",
    "b_23",
    "b_32",
    "b_33",
    "c",
)

CASE_TAGS = ("1.1", "1.2", "1.3", "2", "2.1", "2.2", "3", "4.1", "4.2")

_SIGMA2_SHAPES = {
    # case tag -> ((i, j, coefficient) quadratic terms; "a" marks the parameter)
    "1.1": (((0, 0), "a"), ((1, 2), 1)),
    "1.2": (((0, 0), "a"), ((1, 1), -1), ((2, 2), -1)),
    "1.3": (((0, 0), "a"), ((1, 1), 1), ((2, 2), 1)),
    "2.1": (((0, 0), "a"), ((1, 1), 1)),
    "2.2": (((0, 0), "a"), ((1, 1), -1)),
    "3": (((0, 1), 1),),
    "4.1": (((0, 1), 1), ((2, 2), 1)),
    "4.2": (((0, 1), 1), ((2, 2), -1)),
}


class ParamSigmaSet:
    """Sigmas over a ring of geometric variables followed by parameters.

    ``names`` covers every ring variable in index order; the first ``ngeo``
    are geometric, the rest are parameters and alpha unknowns.
    """

    __slots__ = ("sigmas", "ngeo", "names", "case")

    def __init__(self, sigmas, ngeo, names, case):
        object.__setattr__(self, "sigmas", list(sigmas))
        object.__setattr__(self, "ngeo", ngeo)
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "case", case)

    def __setattr__(self, name, value):
        raise AttributeError("ParamSigmaSet is immutable")

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise FormatError("unknown variable %r" % name) from None


def normalize_case_tag(tag: str) -> str:
    if tag == "2":
        return "2.1"
    if tag in _SIGMA2_SHAPES:
        return tag
    raise FormatError(
        "unknown case tag %r (expected one of %s)" % (tag, ", ".join(CASE_TAGS))
    )


def _alpha_names(n: int) -> list[str]:
    return [
        "alpha%d%d" % (i, j)
        for i in range(1, n * (n - 1) + 1)
        for j in range(1, n + 1)
    ]


def param_sigmas(case: str) -> ParamSigmaSet:
    """The three-dimensional step-1 sigma family for one sigma_2 case.

    sigma_1 = x1, sigma_2 the tagged normal form, sigma_3 the general cubic
    with coefficients b_ij and c.
    """
    tag = normalize_case_tag(case)
    names = ["x1", "x2", "x3"] + list(PARAM_NAMES) + _alpha_names(3)
    nv = len(names)
    idx = {name: i for i, name in enumerate(names)}

    def var(name):
        return Poly.variable(nv, idx[name])

    def geo_mono(e1, e2, e3, coeff=1):
        exps = [0] * nv
        exps[0], exps[1], exps[2] = e1, e2, e3
        return Poly.monomial(nv, exps, coeff)

    sigma1 = var("x1")
    sigma2 = Poly.zero(nv)
    for (i, j), coeff in _SIGMA2_SHAPES[tag]:
        exps = [0] * nv
        exps[i] += 1
        exps[j] += 1
        term = Poly.monomial(nv, exps, ONE)
        if coeff == "a":
            term = term * var("a")
        else:
            term = term * coeff
        sigma2 = sigma2 + term
    sigma3 = (
        var("b_11") * geo_mono(3, 0, 0)
        + var("b_12") * geo_mono(2, 1, 0, 3)
        + var("b_13") * geo_mono(2, 0, 1, 3)
        + var("b_21") * geo_mono(1, 2, 0, 3)
        + var("b_22") * geo_mono(0, 3, 0)
        + var("b_23") * geo_mono(0, 2, 1, 3)
        + var("b_31") * geo_mono(1, 0, 2, 3)
        + var("b_32") * geo_mono(0, 1, 2, 3)
        + var("b_33") * geo_mono(0, 0, 3)
        + var("c") * geo_mono(1, 1, 1, 6)
    )
    return ParamSigmaSet([sigma1, sigma2, sigma3], 3, names, tag)


def param_sigmas_2d(sign: int) -> ParamSigmaSet:
    """The two-dimensional family: sigma_1 = x1, sigma_2 = a x1^2 +/- x2^2."""
    if sign not in (1, -1):
        raise FormatError("sign must be +1 or -1")
    names = ["x1", "x2", "a"] + _alpha_names(2)
    nv = len(names)
    x1 = Poly.variable(nv, 0)
    x2 = Poly.variable(nv, 1)
    a = Poly.variable(nv, 2)
    sigma2 = a * x1 * x1 + sign * x2 * x2
    return ParamSigmaSet([x1, sigma2], 2, names, "2d+" if sign > 0 else "2d-")


# -- the linearity system -----------------------------------------------------


class Equation:
    """One coefficient equation with its provenance.

    ``entry`` names the numerator ("P1".."P6"), (row, col) the operator
    position it came from, ``monomial`` the geometric exponent tuple whose
    coefficient was extracted, and ``poly`` that coefficient (a polynomial in
    the parameters and alpha unknowns).
    """

    __slots__ = ("entry", "row", "col", "monomial", "poly")

    def __init__(self, entry, row, col, monomial, poly):
        object.__setattr__(self, "entry", entry)
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)
        object.__setattr__(self, "monomial", tuple(monomial))
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("Equation is immutable")

    def __eq__(self, other):
        if not isinstance(other, Equation):
            return NotImplemented
        return (
            self.entry == other.entry
            and self.row == other.row
            and self.col == other.col
            and self.monomial == other.monomial
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.entry, self.row, self.col, self.monomial, self.poly))


class LinearitySystem:
    """All coefficient equations demanding that the candidate be linear.

    ``numerators``/``denominator``/``sigmas`` are present when the system was
    generated in-process and None when it was parsed back from a listing.
    """

    __slots__ = (
        "case",
        "names",
        "ngeo",
        "equations",
        "numerators",
        "denominator",
        "sigmas",
    )

    def __init__(
        self, case, names, ngeo, equations, numerators=None, denominator=None,
        sigmas=None,
    ):
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "ngeo", ngeo)
        object.__setattr__(self, "equations", list(equations))
        object.__setattr__(self, "numerators", numerators)
        object.__setattr__(self, "denominator", denominator)
        object.__setattr__(self, "sigmas", sigmas)

    def __setattr__(self, name, value):
        raise AttributeError("LinearitySystem is immutable")

    def __len__(self):
        return len(self.equations)

    def alpha_indices(self) -> list[int]:
        return [i for i, name in enumerate(self.names) if name.startswith("alpha")]

    def alpha_free_equations(self) -> list[Equation]:
        """Equations not involving any alpha unknown."""
        alphas = self.alpha_indices()
        return [eq for eq in self.equations if not _involves(eq.poly, alphas)]

    def used_variable_indices(self) -> list[int]:
        used = set()
        for eq in self.equations:
            for exps in eq.poly.terms:
                for i, e in enumerate(exps):
                    if e:
                        used.add(i)
        return sorted(used)

    def geo_names(self) -> list[str]:
        return list(self.names[: self.ngeo])

    def to_text(self) -> str:
        """Deterministic listing, the golden-file and interchange format."""
        geo = self.geo_names()
        nparams = len(self.names) - self.ngeo
        lines = [
            "# linearity system",
            "# case: %s" % self.case,
            "# geometric: %s" % " ".join(geo),
            "# symbols: %s" % " ".join(self.names[self.ngeo :]),
            "# equations: %d" % len(self.equations),
        ]
        if self.sigmas is not None:
            for k, s in enumerate(self.sigmas, start=1):
                lines.append(
                    "# sigma_%d = %s" % (k, format_poly(s, list(self.names)))
                )
        for eq in self.equations:
            mono = Poly.monomial(self.ngeo, eq.monomial, ONE)
            lines.append(
                "%s (%d,%d) %s :: %s = 0"
                % (
                    eq.entry,
                    eq.row,
                    eq.col,
                    format_poly(mono, geo),
                    format_poly(eq.poly, list(self.names)),
                )
            )
        return "\n".join(lines) + "\n"


def generate_linearity_system(ps: ParamSigmaSet) -> LinearitySystem:
    """Coefficient equations of P_i - Q (alpha_i1 x_1 + ... ) over all
    non-first-row entries, ordered by entry then descending monomial.
    """
    n = len(ps.sigmas)
    if n != ps.ngeo or n not in (2, 3):
        raise DimensionMismatchError("expected 2 or 3 sigmas matching ngeo")
    _validate_step1_shape(ps)
    nv = len(ps.names)
    numerators, q = reconstruction_pieces(ps.sigmas, ps.ngeo)
    equations = []
    for r in range(1, n):
        for c in range(n):
            p_index = (r - 1) * n + c + 1
            entry = "P%d" % p_index
            linear_form = Poly.zero(nv)
            for j in range(n):
                alpha = Poly.variable(
                    nv, ps.index_of("alpha%d%d" % (p_index, j + 1))
                )
                linear_form = linear_form + alpha * Poly.variable(nv, j)
            residual = numerators.entries[r][c] - q * linear_form
            grouped = residual.group_by(range(ps.ngeo))
            for exps in sorted(grouped, key=grlex_key, reverse=True):
                equations.append(
                    Equation(entry, r + 1, c + 1, exps[: ps.ngeo], grouped[exps])
                )
    return LinearitySystem(
        ps.case, ps.names, ps.ngeo, equations, numerators, q, list(ps.sigmas)
    )


def _validate_step1_shape(ps: ParamSigmaSet):
    geo = list(range(ps.ngeo))
    x1 = Poly.variable(len(ps.names), 0)
    if ps.sigmas[0] != x1:
        raise DimensionMismatchError("sigma_1 must be x1")
    for k, s in enumerate(ps.sigmas[1:], start=2):
        if not s.is_homogeneous_in(k, geo):
            raise DimensionMismatchError(
                "sigma_%d must be homogeneous of degree %d in the geometric "
                "variables" % (k, k)
            )


def parse_system(text: str) -> LinearitySystem:
    """Parse a listing produced by :meth:`LinearitySystem.to_text`."""
    case = None
    geo_names: list[str] = []
    symbol_names: list[str] = []
    equations = []
    names: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("case:"):
                case = body[len("case:") :].strip()
            elif body.startswith("geometric:"):
                geo_names = body[len("geometric:") :].split()
            elif body.startswith("symbols:"):
                symbol_names = body[len("symbols:") :].split()
            continue
        if not names:
            if not geo_names or not symbol_names:
                raise FormatError("equation listed before its variable header")
            names = geo_names + symbol_names
        head, _, rhs = line.partition("::")
        if not rhs:
            raise FormatError("missing '::' in equation line %r" % line)
        fields = head.split()
        if len(fields) != 3:
            raise FormatError("malformed equation header %r" % head)
        entry, pos, mono_text = fields
        if not (pos.startswith("(") and pos.endswith(")")):
            raise FormatError("malformed position %r" % pos)
        row_s, _, col_s = pos[1:-1].partition(",")
        mono = parse_poly(mono_text, geo_names)
        ((exps, coeff),) = mono.terms.items()
        if coeff != ONE:
            raise FormatError("monomial with a coefficient: %r" % mono_text)
        poly_text = rhs.strip()
        if poly_text.endswith("= 0"):
            poly_text = poly_text[: -len("= 0")].strip()
        poly = parse_poly(poly_text, names)
        equations.append(Equation(entry, int(row_s), int(col_s), exps, poly))
    if case is None or not names:
        raise FormatError("system listing is missing its header")
    return LinearitySystem(case, names, len(geo_names), equations)


# -- solution checking --------------------------------------------------------


class Residual:
    """A nonzero value left in one equation by a candidate solution."""

    __slots__ = ("entry", "row", "col", "monomial", "value")

    def __init__(self, entry, row, col, monomial, value):
        object.__setattr__(self, "entry", entry)
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)
        object.__setattr__(self, "monomial", tuple(monomial))
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Residual is immutable")


class CheckResult:
    __slots__ = ("ok", "residuals")

    def __init__(self, ok, residuals):
        object.__setattr__(self, "ok", ok)
        object.__setattr__(self, "residuals", list(residuals))

    def __setattr__(self, name, value):
        raise AttributeError("CheckResult is immutable")

    def __bool__(self):
        return self.ok


def _coerce_value(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    raise FormatError("assignment values must be exact scalars, got %r" % (value,))


def check_solution(
    system: LinearitySystem, assignment: Mapping[str, object]
) -> CheckResult:
    """Substitute one candidate solution and report the nonzero residuals.

    The assignment must cover every parameter and alpha unknown that occurs
    in the system; unknown or missing names are errors, not failures.
    """
    index_of = {name: i for i, name in enumerate(system.names)}
    values = {}
    for name, value in assignment.items():
        if name not in index_of:
            raise FormatError("assignment for unknown variable %r" % name)
        if index_of[name] < system.ngeo:
            raise FormatError("cannot assign a geometric variable %r" % name)
        values[index_of[name]] = _coerce_value(value)
    used = [i for i in system.used_variable_indices() if i >= system.ngeo]
    missing = [system.names[i] for i in used if i not in values]
    if missing:
        raise FormatError(
            "assignment is missing values for: %s" % ", ".join(missing)
        )
    residuals = []
    for eq in system.equations:
        result = eq.poly.substitute(values)
        value = result.constant_value()
        if not value.is_zero():
            residuals.append(
                Residual(eq.entry, eq.row, eq.col, eq.monomial, value)
            )
    return CheckResult(not residuals, residuals)


def parse_assignment(text: str) -> dict[str, Scalar]:
    """Parse "name = value" lines; blank lines and # comments are skipped."""
    out: dict[str, Scalar] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise FormatError("line %d: expected 'name = value'" % lineno)
        name = name.strip()
        if not name or name in out:
            raise FormatError("line %d: bad or repeated name %r" % (lineno, name))
        out[name] = parse_scalar(value.strip())
    return out


def derive_alphas(
    ps: ParamSigmaSet, params: Mapping[str, object]
) -> dict[str, Scalar]:
    """Alpha values forced by a full parameter assignment.

    Substitutes the parameters into the reconstruction numerators, divides
    each non-first-row entry by the denominator, and reads the alpha_ij off
    the resulting linear forms.  Raises when some entry fails to divide or
    the quotient is not geometric-linear (the assignment is then not a
    solution of the linearity system at all).
    """
    n = len(ps.sigmas)
    numerators, q = reconstruction_pieces(ps.sigmas, ps.ngeo)
    values = {}
    for name, value in params.items():
        idx = ps.index_of(name)
        if idx < ps.ngeo:
            raise FormatError("cannot assign a geometric variable %r" % name)
        values[idx] = _coerce_value(value)
    q_sub = q.substitute(values)
    if q_sub.is_zero():
        raise DependentSigmasError(
            dependent_sigma_indices(
                [s.substitute(values) for s in ps.sigmas], ps.ngeo
            )
        )
    out: dict[str, Scalar] = {}
    for r in range(1, n):
        for c in range(n):
            p_index = (r - 1) * n + c + 1
            entry_sub = numerators.entries[r][c].substitute(values)
            quo = exact_divide(entry_sub, q_sub)
            if isinstance(quo, DivisibilityFailure):
                raise LinnijError(
                    "entry (%d,%d) is not linear under this assignment; "
                    "remainder %s"
                    % (r + 1, c + 1, format_poly(quo.remainder, list(ps.names)))
                )
            for j in range(n):
                exps = [0] * len(ps.names)
                exps[j] = 1
                coeff = quo.coefficient(exps)
                out["alpha%d%d" % (p_index, j + 1)] = coeff
                quo = quo - Poly.monomial(len(ps.names), exps, coeff)
            if not quo.is_zero():
                raise LinnijError(
                    "entry (%d,%d) divides but is not geometric-linear"
                    % (r + 1, c + 1)
                )
    return out


# -- the two-dimensional derivation -------------------------------------------


def solve_quadratic(c2: Scalar, c1: Scalar, c0: Scalar) -> list[Scalar]:
    """Exact roots of c2 t^2 + c1 t + c0, ascending; linear when c2 = 0."""
    if c2.is_zero():
        if c1.is_zero():
            raise LinnijError("degenerate equation has no finite root set")
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    root = scalar_sqrt(disc)
    lo = (-c1 - root) / (2 * c2)
    hi = (-c1 + root) / (2 * c2)
    if lo == hi:
        return [lo]
    return sorted((lo, hi))


def solve_two_dim(system: LinearitySystem) -> tuple[Poly, list[Scalar]]:
    """Solve the 2D system: returns its alpha-free equation and the exact
    root set for the parameter a.

    Every alpha-free equation must be proportional to a single quadratic in
    a, which is solved exactly.
    """
    free = [eq.poly for eq in system.alpha_free_equations() if not eq.poly.is_zero()]
    if not free:
        raise LinnijError("system has no alpha-free equation")
    a_idx = system.names.index("a")
    lead = free[0]
    for other in free[1:]:
        # cross-multiplied proportionality check
        if lead * other.leading()[1] != other * lead.leading()[1]:
            raise LinnijError("alpha-free equations are not proportional")
    coeffs = []
    for degree in (2, 1, 0):
        exps = [0] * len(system.names)
        exps[a_idx] = degree
        coeffs.append(lead.coefficient(exps))
    return lead, solve_quadratic(*coeffs)


def two_dim_operator(a_value, sign: int) -> PolyMatrix:
    """The reconstructed linear operator for sigma = (x1, a x1^2 +/- x2^2)."""
    if sign not in (1, -1):
        raise FormatError("sign must be +1 or -1")
    a = _coerce_value(a_value)
    x1 = Poly.variable(2, 0)
    x2 = Poly.variable(2, 1)
    sigmas = [x1, a * x1 * x1 + sign * x2 * x2]
    result = reconstruct_operator(sigmas)
    if result.linear_part is None:
        raise LinnijError(
            "a = %r does not give a linear operator; failing entries: %s"
            % (a_value, [(r, c) for r, c, _ in result.failures])
        )
    return result.linear_part


# -- normal forms for sigma_1 and sigma_2 -------------------------------------


def normalize_sigma1(s1: Poly) -> tuple[Poly, list[list[Scalar]]]:
    """Linear change turning a nonzero linear form into the first coordinate.

    Returns (y1, T) with substitute_linear(s1, T) = y1.
    """
    n = s1.nvars
    if s1.is_zero() or not s1.is_homogeneous(1):
        raise DimensionMismatchError("expected a nonzero homogeneous linear form")
    coeffs = []
    for i in range(n):
        exps = [0] * n
        exps[i] = 1
        coeffs.append(s1.coefficient(exps))
    pivot = next(i for i, v in enumerate(coeffs) if not v.is_zero())
    rows = [coeffs]
    for i in range(n):
        if i != pivot:
            rows.append([ONE if j == i else ZERO for j in range(n)])
    change = scalar_mat_inverse(rows)
    assert s1.substitute_linear(change) == Poly.variable(n, 0)
    return Poly.variable(n, 0), change


FULL = "Full"
RANK2 = "Rank2"
PRODUCT = "Product"
PRODUCT_PLUS = "ProductPlus"
DEGENERATE = "Degenerate"


class Sigma2NormalForm:
    """Outcome of the quadratic reduction.

    ``tag`` is one of Full, Rank2, Product, ProductPlus, Degenerate;
    ``canonical`` the polynomial normal form; ``change`` the matrix T (first
    row (1, 0, ...)) with substitute_linear(input, T) = canonical; ``alpha``
    the leading y1^2 coefficient where the form has one, else None; ``signs``
    the +/-1 signs of the square terms, descending.
    """

    __slots__ = ("tag", "canonical", "change", "alpha", "signs")

    def __init__(self, tag, canonical, change, alpha, signs):
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "change", change)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "signs", tuple(signs))

    def __setattr__(self, name, value):
        raise AttributeError("Sigma2NormalForm is immutable")


def _quadratic_matrix(s2: Poly) -> list[list[Scalar]]:
    n = s2.nvars
    a = [[ZERO] * n for _ in range(n)]
    half = Scalar(Fraction(1, 2))
    for exps, coeff in s2.terms.items():
        support = [i for i, e in enumerate(exps) if e]
        if sum(exps) != 2:
            raise DimensionMismatchError("expected a homogeneous quadratic")
        if len(support) == 1:
            i = support[0]
            a[i][i] = coeff
        else:
            i, j = support
            a[i][j] = a[j][i] = coeff * half
    return a


def _canonical_poly(n: int, tag: str, alpha, signs) -> Poly:
    y = [Poly.variable(n, i) for i in range(n)]
    if tag == DEGENERATE:
        return y[0] * y[0] * alpha
    if tag == RANK2:
        return y[0] * y[0] * alpha + signs[0] * y[1] * y[1]
    if tag == FULL:
        return (
            y[0] * y[0] * alpha
            + signs[0] * y[1] * y[1]
            + signs[1] * y[2] * y[2]
        )
    if tag == PRODUCT:
        return y[0] * y[1]
    if tag == PRODUCT_PLUS:
        return y[0] * y[1] + signs[0] * y[2] * y[2]
    raise LinnijError("unknown tag %r" % tag)


def _finish(s2: Poly, tag: str, alpha, signs, rows) -> Sigma2NormalForm:
    n = s2.nvars
    if scalar_mat_det(rows).is_zero():
        raise LinnijError("internal: singular reduction rows")
    change = scalar_mat_inverse(rows)
    canonical = _canonical_poly(n, tag, alpha, signs)
    assert s2.substitute_linear(change) == canonical
    assert change[0] == [ONE if j == 0 else ZERO for j in range(n)]
    return Sigma2NormalForm(tag, canonical, change, alpha, signs)


def _sqrt_row(a, pivot: int, n: int) -> tuple[list[Scalar], int]:
    """Elimination row sqrt(|a_pp|) (x_p + sum_{m != p} a_pm x_m / a_pp)."""
    app = a[pivot][pivot]
    scale = scalar_sqrt(abs(app))
    row = []
    for m in range(n):
        if m == pivot:
            row.append(scale)
        else:
            row.append(scale * a[pivot][m] / app)
    return row, app.sign()


def _eliminate(a, pivot: int, n: int) -> list[list[Scalar]]:
    """Symmetric remainder after splitting off the pivot square."""
    app = a[pivot][pivot]
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == pivot or j == pivot:
                continue
            out[i][j] = a[i][j] - a[i][pivot] * a[pivot][j] / app
    return out


def normalize_sigma2(s2: Poly) -> Sigma2NormalForm:
    """Reduce a homogeneous quadratic to its normal form by a change that
    fixes the first coordinate.

    Follows the constructive elimination order: last diagonal entry first,
    then the middle one, then the cross-term split x2 = u + v, x3 = u - v,
    then the pure-product and degenerate leftovers.  The square roots this
    introduces must be representable in a single quadratic extension;
    otherwise NotRepresentableError (or a radicand mix error) propagates.
    """
    n = s2.nvars
    if n not in (2, 3):
        raise DimensionMismatchError("normal forms implemented for 2 or 3 variables")
    if not (s2.is_zero() or s2.is_homogeneous(2)):
        raise DimensionMismatchError("expected a homogeneous quadratic")
    a = _quadratic_matrix(s2)
    e1 = [ONE if j == 0 else ZERO for j in range(n)]

    def unit(j):
        return [ONE if m == j else ZERO for m in range(n)]

    if n == 2:
        if not a[1][1].is_zero():
            row, sign = _sqrt_row(a, 1, n)
            rem = _eliminate(a, 1, n)
            return _finish(s2, RANK2, rem[0][0], (sign,), [e1, row])
        if not a[0][1].is_zero():
            row = [a[0][0], 2 * a[0][1]]
            return _finish(s2, PRODUCT, None, (), [e1, row])
        return _finish(s2, DEGENERATE, a[0][0], (), [e1, unit(1)])

    # n == 3
    for pivot, other in ((2, 1), (1, 2)):
        if a[pivot][pivot].is_zero():
            continue
        row_p, sign_p = _sqrt_row(a, pivot, n)
        rem = _eliminate(a, pivot, n)
        if not rem[other][other].is_zero():
            row_o, sign_o = _sqrt_row(rem, other, n)
            rem2 = _eliminate(rem, other, n)
            alpha = rem2[0][0]
            if sign_o >= sign_p:
                return _finish(s2, FULL, alpha, (sign_o, sign_p), [e1, row_o, row_p])
            return _finish(s2, FULL, alpha, (sign_p, sign_o), [e1, row_p, row_o])
        if not rem[0][other].is_zero():
            linear = [ZERO] * n
            linear[0] = rem[0][0]
            linear[other] = 2 * rem[0][other]
            return _finish(s2, PRODUCT_PLUS, None, (sign_p,), [e1, linear, row_p])
        complement = unit(1 if pivot == 2 else 2)
        return _finish(s2, RANK2, rem[0][0], (sign_p,), [e1, row_p, complement])

    if not a[1][2].is_zero():
        # x2 = u + v, x3 = u - v turns the cross term into a difference of
        # squares; recurse and compose the changes.
        split = [
            [ONE, ZERO, ZERO],
            [ZERO, ONE, ONE],
            [ZERO, ONE, Scalar(-1)],
        ]
        inner = normalize_sigma2(s2.substitute_linear(split))
        change = scalar_mat_mul(split, inner.change)
        assert s2.substitute_linear(change) == inner.canonical
        return Sigma2NormalForm(
            inner.tag, inner.canonical, change, inner.alpha, inner.signs
        )

    if a[0][1].is_zero() and a[0][2].is_zero():
        return _finish(s2, DEGENERATE, a[0][0], (), [e1, unit(1), unit(2)])
    linear = [a[0][0], 2 * a[0][1], 2 * a[0][2]]
    complement = unit(2) if not a[0][1].is_zero() else unit(1)
    return _finish(s2, PRODUCT, None, (), [e1, linear, complement])

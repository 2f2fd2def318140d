import random
from fractions import Fraction

import pytest

from linnij.errors import (
    DependentSigmasError,
    DimensionMismatchError,
    FormatError,
    LinnijError,
    NotRepresentableError,
    RadicandMismatchError,
)
from linnij.exactfield import Scalar
from linnij.polyring import Poly
from linnij.polymatrix import charpoly_sigmas
from linnij.reconstruct import (
    CASE_TAGS,
    PARAM_NAMES,
    check_solution,
    dependent_sigma_indices,
    derive_alphas,
    generate_linearity_system,
    normalize_case_tag,
    normalize_sigma1,
    normalize_sigma2,
    param_sigmas,
    param_sigmas_2d,
    parse_assignment,
    parse_system,
    reconstruct_operator,
    solve_quadratic,
    solve_two_dim,
    two_dim_operator,
)
from linnij.textio import default_names, format_poly, parse_poly

from known_solutions import (
    ALPHA_NAMES,
    CASE11_SOLUTIONS,
    CASE12_SOLUTIONS,
    full_assignment,
)


def geo_polys(texts, n):
    names = default_names(n)
    return [parse_poly(t, names) for t in texts]


# -- sigma -> operator ---------------------------------------------------------


def test_product_sigma_reconstruction_pieces():
    names = default_names(2)
    result = reconstruct_operator(geo_polys(["x1", "x1*x2"], 2))
    assert format_poly(result.denominator, names) == "x1"
    rendered = [
        [format_poly(p, names) for p in row] for row in result.numerators.entries
    ]
    assert rendered == [["-x1^2 + x1*x2", "x1^2"], ["-x2^2", "-x1*x2"]]
    assert result.linear_part is None
    assert len(result.failures) == 1
    r, c, remainder = result.failures[0]
    assert (r, c) == (2, 1)
    assert format_poly(remainder, names) == "-x2^2"


def test_quarter_square_sigma_reconstructs():
    sigmas = geo_polys(["x1", "1/4*x1^2 + x2^2"], 2)
    result = reconstruct_operator(sigmas)
    assert result.failures == []
    names = default_names(2)
    rendered = [
        [format_poly(p, names) for p in row] for row in result.linear_part.entries
    ]
    assert rendered == [["-1/2*x1", "2*x2"], ["-1/2*x2", "-1/2*x1"]]
    # and the operator's characteristic coefficients are the inputs again
    assert charpoly_sigmas(result.linear_part) == sigmas


def test_reconstruction_round_trips_charpoly():
    rng = random.Random(77)
    from linnij.nijenhuis import lsa_to_operator, random_structure_constants

    seen = 0
    for _ in range(40):
        op = lsa_to_operator(random_structure_constants(rng, 2))
        sigmas = charpoly_sigmas(op)
        try:
            result = reconstruct_operator(sigmas)
        except DependentSigmasError:
            continue
        seen += 1
        if result.linear_part is not None:
            assert charpoly_sigmas(result.linear_part) == sigmas
    assert seen >= 10


def test_dependent_sigmas_raise():
    sigmas = geo_polys(["x1", "x1^2"], 2)
    with pytest.raises(DependentSigmasError) as err:
        reconstruct_operator(sigmas)
    assert err.value.indices == [2]
    assert dependent_sigma_indices(sigmas, 2) == [2]


def test_reconstruct_requires_square_data():
    with pytest.raises(DimensionMismatchError):
        reconstruct_operator(geo_polys(["x1", "x2"], 3), geo=3)
    with pytest.raises(DimensionMismatchError):
        reconstruct_operator([])


# -- parametric systems --------------------------------------------------------


def test_case_tags_normalize():
    assert normalize_case_tag("2") == "2.1"
    assert normalize_case_tag("4.1") == "4.1"
    with pytest.raises(FormatError):
        normalize_case_tag("5")


def test_param_sigmas_shapes():
    renders = {}
    for tag in ("1.1", "1.2", "1.3", "2.1", "2.2", "3", "4.1", "4.2"):
        ps = param_sigmas(tag)
        assert ps.case == tag
        assert ps.names[:3] == ("x1", "x2", "x3")
        assert ps.sigmas[0] == Poly.variable(len(ps.names), 0)
        renders[tag] = format_poly(ps.sigmas[1], list(ps.names))
    assert renders["1.1"] == "x1^2*a + x2*x3"
    assert renders["1.2"] == "x1^2*a - x2^2 - x3^2"
    assert renders["1.3"] == "x1^2*a + x2^2 + x3^2"
    assert renders["2.1"] == "x1^2*a + x2^2"
    assert renders["2.2"] == "x1^2*a - x2^2"
    assert renders["3"] == "x1*x2"
    assert renders["4.1"] == "x1*x2 + x3^2"
    assert renders["4.2"] == "x1*x2 - x3^2"


def test_param_sigma3_is_the_general_cubic():
    ps = param_sigmas("3")
    s3 = ps.sigmas[2]
    # coefficient of x1^2 x2 is 3 b_12; of x1 x2 x3 is 6 c
    nv = len(ps.names)

    grouped = s3.group_by(range(3))

    def coeff_of(e1, e2, e3):
        return grouped.get((e1, e2, e3), Poly.zero(nv))

    b12 = Poly.variable(nv, ps.index_of("b_12"))
    c = Poly.variable(nv, ps.index_of("c"))
    assert coeff_of(2, 1, 0) == 3 * b12
    assert coeff_of(1, 1, 1) == 6 * c
    assert s3.is_homogeneous_in(3, range(3))


def test_linearity_system_sizes():
    for tag in ("1.1", "1.2", "1.3", "2.1", "2.2", "3", "4.1", "4.2"):
        system = generate_linearity_system(param_sigmas(tag))
        assert len(system) == 90, tag
        free = system.alpha_free_equations()
        expected = 30 if tag in ("2.1", "2.2", "3") else 6
        assert len(free) == expected, tag


def test_two_dim_system_and_solution():
    for sign in (1, -1):
        system = generate_linearity_system(param_sigmas_2d(sign))
        assert len(system) == 5
        lead, roots = solve_two_dim(system)
        assert format_poly(lead, list(system.names)) == "-4*a^2 + a"
        assert roots == [Scalar(0), Scalar(Fraction(1, 4))]


def test_two_dim_operator_matches_its_sigmas():
    for sign in (1, -1):
        for a in (Scalar(0), Scalar(Fraction(1, 4))):
            op = two_dim_operator(a, sign)
            x1 = Poly.variable(2, 0)
            x2 = Poly.variable(2, 1)
            assert charpoly_sigmas(op) == [
                x1,
                a * x1 * x1 + sign * x2 * x2,
            ]


def test_two_dim_operator_rejects_nonsolution():
    with pytest.raises(LinnijError):
        two_dim_operator(Fraction(1, 3), 1)


def test_solve_quadratic():
    assert solve_quadratic(Scalar(1), Scalar(-3), Scalar(2)) == [
        Scalar(1),
        Scalar(2),
    ]
    assert solve_quadratic(Scalar(0), Scalar(2), Scalar(-1)) == [
        Scalar(Fraction(1, 2))
    ]
    assert solve_quadratic(Scalar(1), Scalar(-2), Scalar(1)) == [Scalar(1)]
    assert solve_quadratic(Scalar(1), Scalar(0), Scalar(-3)) == [
        Scalar(0, -1, 3),
        Scalar(0, 1, 3),
    ]
    with pytest.raises(LinnijError):
        solve_quadratic(Scalar(0), Scalar(0), Scalar(1))


# -- listing round trip ---------------------------------------------------------


def test_system_listing_round_trip():
    system = generate_linearity_system(param_sigmas("4.1"))
    text = system.to_text()
    assert text.startswith("# linearity system\n# case: 4.1\n")
    assert text.endswith("\n")
    back = parse_system(text)
    assert back.case == system.case
    assert back.names == system.names
    assert back.ngeo == system.ngeo
    assert back.equations == system.equations
    # parsed systems do not carry the generation context
    assert back.numerators is None and back.denominator is None


def test_parse_system_rejects_garbage():
    with pytest.raises(FormatError):
        parse_system("")
    with pytest.raises(FormatError):
        parse_system("P1 (2,1) x1 :: a = 0\n")  # header missing
    good = generate_linearity_system(param_sigmas_2d(1)).to_text()
    with pytest.raises(FormatError):
        parse_system(good.replace("::", "||"))


# -- solution checking -----------------------------------------------------------


def test_known_solutions_satisfy_their_system():
    # one representative per case here; the full sweep is an acceptance check
    system = generate_linearity_system(param_sigmas("1.1"))
    name, params, alphas, _, _ = CASE11_SOLUTIONS[1]
    assert name == "s2"
    result = check_solution(system, full_assignment(params, alphas))
    assert result.ok and result.residuals == []


def test_perturbed_solution_fails():
    system = generate_linearity_system(param_sigmas("1.1"))
    name, params, alphas, perturb, _ = CASE11_SOLUTIONS[1]
    bad = dict(params)
    bad[perturb] = bad.get(perturb, Fraction(0)) + 1
    result = check_solution(system, full_assignment(bad, alphas))
    assert not result.ok
    assert result.residuals
    witness = result.residuals[0]
    assert witness.entry.startswith("P")
    assert not witness.value.is_zero()


def test_check_solution_rejects_bad_names():
    system = generate_linearity_system(param_sigmas_2d(1))
    with pytest.raises(FormatError):
        check_solution(system, {"nope": 1})
    with pytest.raises(FormatError):
        check_solution(system, {"x1": 1})
    with pytest.raises(FormatError):
        check_solution(system, {"a": 1})  # alphas missing


def test_parse_assignment():
    text = "# comment\n a = 1/4 \n b_21 = -1/6 # inline\n\n c = 1*sqrt(3)\n"
    values = parse_assignment(text)
    assert values == {
        "a": Scalar(Fraction(1, 4)),
        "b_21": Scalar(Fraction(-1, 6)),
        "c": Scalar(0, 1, 3),
    }
    with pytest.raises(FormatError):
        parse_assignment("a 1/4\n")
    with pytest.raises(FormatError):
        parse_assignment("a = 1\na = 2\n")


def test_derive_alphas_reproduces_listed_solution():
    ps = param_sigmas("1.1")
    name, params, alphas, _, _ = CASE11_SOLUTIONS[3]
    assert name == "s4"
    filled = {p: params.get(p, Fraction(0)) for p in PARAM_NAMES}
    derived = derive_alphas(ps, filled)
    expected = {a: Scalar(alphas.get(a, Fraction(0))) for a in ALPHA_NAMES}
    assert derived == expected


def test_derive_alphas_rejects_nonsolution():
    ps = param_sigmas("1.1")
    filled = {p: Fraction(0) for p in PARAM_NAMES}
    filled["b_12"] = Fraction(1)
    with pytest.raises(LinnijError):
        derive_alphas(ps, filled)


def test_derive_alphas_detects_collapsed_sigmas():
    ps = param_sigmas("1.1")
    filled = {p: Fraction(0) for p in PARAM_NAMES}
    # a = 0 and no cubic terms leaves sigma_3 = 0: dependent
    with pytest.raises(DependentSigmasError) as err:
        derive_alphas(ps, filled)
    assert err.value.indices == [3]


# -- normal forms ----------------------------------------------------------------


def test_normalize_sigma1_seeded():
    rng = random.Random(55)
    for n in (2, 3):
        for _ in range(60):
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
            if not any(coeffs):
                continue
            p = Poly.zero(n)
            for i, cv in enumerate(coeffs):
                p = p + Poly.variable(n, i) * Scalar(cv)
            normal, change = normalize_sigma1(p)
            assert normal == Poly.variable(n, 0)
            assert p.substitute_linear(change) == normal


def test_normalize_sigma1_rejects_bad_input():
    with pytest.raises(DimensionMismatchError):
        normalize_sigma1(Poly.zero(2))
    with pytest.raises(DimensionMismatchError):
        normalize_sigma1(Poly.variable(2, 0) ** 2)


def hand_quadratic(text, n):
    return parse_poly(text, default_names(n))


def test_normalize_sigma2_examples():
    full = normalize_sigma2(hand_quadratic("x1^2 + x2^2 + x3^2", 3))
    assert full.tag == "Full"
    assert full.alpha == Scalar(1)
    assert full.signs == (1, 1)

    rank2 = normalize_sigma2(hand_quadratic("5*x1^2 - x3^2", 3))
    assert rank2.tag == "Rank2"
    assert rank2.alpha == Scalar(5)
    assert rank2.signs == (-1,)

    product = normalize_sigma2(hand_quadratic("x1*x2", 3))
    assert product.tag == "Product"
    assert product.alpha is None

    plus = normalize_sigma2(hand_quadratic("x1*x2 + x3^2", 3))
    assert plus.tag == "ProductPlus"
    assert plus.signs == (1,)

    degenerate = normalize_sigma2(hand_quadratic("7*x1^2", 3))
    assert degenerate.tag == "Degenerate"
    assert degenerate.alpha == Scalar(7)

    cross_only = normalize_sigma2(hand_quadratic("x2*x3", 3))
    assert cross_only.tag in ("Rank2", "Full")
    assert -1 in cross_only.signs


def test_normalize_sigma2_change_contract():
    rng = random.Random(91)
    count = 0
    for _ in range(120):
        n = rng.choice([2, 3])
        p = Poly.zero(n)
        for i in range(n):
            for j in range(i, n):
                cv = rng.randint(-3, 3)
                if cv:
                    p = p + Poly.variable(n, i) * Poly.variable(n, j) * Scalar(cv)
        if p.is_zero():
            continue
        try:
            nf = normalize_sigma2(p)
        except (NotRepresentableError, RadicandMismatchError):
            continue
        count += 1
        assert nf.change[0][0] == Scalar(1)
        assert all(v.is_zero() for v in nf.change[0][1:])
        assert p.substitute_linear(nf.change) == nf.canonical
    assert count >= 40


def test_normalize_sigma2_radical_failures():
    with pytest.raises(NotRepresentableError):
        normalize_sigma2(hand_quadratic("1*sqrt(3)*x2^2 + x1^2", 2))
    with pytest.raises(RadicandMismatchError):
        normalize_sigma2(
            hand_quadratic("2*x2^2 + 1*sqrt(3)*x1*x2", 2)
        )
    with pytest.raises(DimensionMismatchError):
        normalize_sigma2(hand_quadratic("x1^3", 2))
    with pytest.raises(DimensionMismatchError):
        normalize_sigma2(Poly.variable(4, 0) * Poly.variable(4, 1))

import json
import os
import random
from itertools import product

import pytest

from algebra.group_algebra import Endomorphism, GroupElement, ONE, U, V
from processors.semiconjugacy import class_id, conjugator, same_class, semicentralizer, twisted_conjugate
from processors.hochschild import (
    HochschildError,
    Nontrivial,
    TensorChain2,
    boundary_certificate,
    d2,
    is_cycle,
    is_trivial,
    tensor,
)
from processors.trace_engine import analyze, one_parameter_trace, validate_cellular
from oracle.oracle import SearchBudget, brute_certificate, brute_same_class, generate_valid_data
from utils.json_utils import canonical_dumps, cellular_to_json, report_to_json
from conftest import GOLDEN_DIR, IDENTITY, PHI_PANEL, SHEAR

WINDOW_6 = SearchBudget(6, 4000)
WINDOW_20 = SearchBudget(20, 4000)
GOLDEN_SEED = 3
CASE_ONE = [
    SHEAR,
    Endomorphism.from_rows([[1, 2], [0, 3]]),
    Endomorphism.from_rows([[1, -1], [0, 2]]),
    Endomorphism.from_rows([[2, 0], [1, 1]]),
    Endomorphism.from_rows([[2, 1], [-1, 0]]),
]
NONSINGULAR = [phi for phi in PHI_PANEL if phi.b1 * phi.b4 - phi.b1 - phi.b4 + 1 - phi.b2 * phi.b3 != 0]


def g(m, n):
    return GroupElement(m, n)


def test_brute_same_class_examples():
    assert brute_same_class(SHEAR, g(1, 0), g(0, 0), WINDOW_6) is not None
    assert brute_same_class(SHEAR, g(0, 1), g(0, 0), WINDOW_6) is None
    assert brute_same_class(IDENTITY, g(2, 2), g(2, 2), WINDOW_6) == (0, 0)
    # shortest witness comes first
    assert brute_same_class(SHEAR, g(0, 0), g(0, 0), WINDOW_6) == (0, 0)


def test_brute_same_class_agrees_with_normal_form(phi):
    box = [g(m, n) for m, n in product(range(-4, 5), repeat=2)]
    for g1, g2 in product(box, repeat=2):
        witness = brute_same_class(phi, g1, g2, WINDOW_20)
        assert (witness is not None) == (same_class(phi, g1, g2) is not None)
        if witness is not None:
            assert twisted_conjugate(phi, conjugator(witness), g2) == g1


def test_brute_certificate_examples():
    certificate = brute_certificate(SHEAR, tensor(ONE, V), WINDOW_6)
    assert d2(SHEAR, certificate) == tensor(ONE, V)
    assert brute_certificate(SHEAR, tensor(ONE, V) - tensor(ONE, V), WINDOW_6) == TensorChain2()
    with pytest.raises(HochschildError):
        brute_certificate(SHEAR, tensor(V, ONE), WINDOW_6)


def test_shear_circles_are_nontrivial_and_unprovable():
    for m, n in product(range(-3, 4), repeat=2):
        cycle = tensor(U, g(m, n))
        assert is_trivial(SHEAR, cycle, 64) == Nontrivial((1, 0))
        assert brute_certificate(SHEAR, cycle, WINDOW_6) is None


def test_brute_and_exact_certificates_agree(phi):
    rng = random.Random(41)
    for _ in range(12):
        triple = tuple(g(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(3))
        x = d2(phi, TensorChain2({triple: 1}))
        if not x:
            continue
        brute = brute_certificate(phi, x, WINDOW_6)
        exact = boundary_certificate(phi, x)
        assert brute is not None and exact is not None
        assert d2(phi, brute) == x == d2(phi, exact)


def test_search_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(-1, 10)
    with pytest.raises(ValueError):
        SearchBudget(3, 0)
    assert SearchBudget().exponent_bound == 6


def test_search_budget_reads_environment(monkeypatch):
    monkeypatch.setenv("ORACLE_WINDOW", "9")
    monkeypatch.setenv("ORACLE_MAX_TERMS", "120")
    budget = SearchBudget()
    assert (budget.exponent_bound, budget.max_terms) == (9, 120)


def test_generated_data_is_valid_and_deterministic(phi):
    for seed in range(5):
        data = generate_valid_data(phi, WINDOW_6, seed)
        assert validate_cellular(phi, data) == []
        assert data == generate_valid_data(phi, WINDOW_6, seed)


def test_generated_shear_data_matches_golden(monkeypatch):
    for name in ("ORACLE_WINDOW", "ORACLE_MAX_TERMS", "TRACE_SIGN"):
        monkeypatch.delenv(name, raising=False)
    data = generate_valid_data(SHEAR, SearchBudget(), GOLDEN_SEED)
    report = analyze(SHEAR, one_parameter_trace(SHEAR, data))
    generated = json.loads(canonical_dumps({"data": cellular_to_json(SHEAR, data), "report": report_to_json(report)}))
    with open(os.path.join(GOLDEN_DIR, "shear_generated.json")) as handle:
        assert generated == json.load(handle)
    assert (report.N, report.L, report.theorem_holds) == (2, (-2, 0), True)


def test_generated_traces_are_cycles(phi):
    for seed in range(8):
        data = generate_valid_data(phi, WINDOW_6, seed)
        R = one_parameter_trace(phi, data)
        assert is_cycle(phi, R)
        for (a, b) in R.keys():
            assert class_id(phi, a * b) not in data.excluded_classes


@pytest.mark.parametrize("phi", CASE_ONE, ids=lambda phi: str(phi.rows()))
def test_case_one_generated_data_never_contradicts(phi):
    alpha = semicentralizer(phi).generator()
    circles = 0
    for seed in range(20):
        data = generate_valid_data(phi, WINDOW_6, seed)
        report = analyze(phi, one_parameter_trace(phi, data))
        assert report.theorem_holds is not False
        assert report.alpha == alpha
        circles += report.N
        for verdict in report.components.values():
            if isinstance(verdict, Nontrivial):
                assert verdict.invariant in (alpha, (-alpha[0], -alpha[1]))
    assert circles > 0


@pytest.mark.parametrize("phi", CASE_ONE, ids=lambda phi: str(phi.rows()))
def test_circles_without_arcs_need_no_exclusions(phi):
    alpha = semicentralizer(phi).generator()
    for seed in range(10):
        data = generate_valid_data(phi, WINDOW_6, seed, boundary_arcs=False)
        assert data.excluded_classes == frozenset()
        R = one_parameter_trace(phi, data)
        assert is_cycle(phi, R)
        report = analyze(phi, R)
        assert report.N >= 1
        assert report.L in ((report.N * alpha[0], report.N * alpha[1]), (-report.N * alpha[0], -report.N * alpha[1]))
        assert report.theorem_holds is True


@pytest.mark.parametrize("phi", NONSINGULAR, ids=lambda phi: str(phi.rows()))
def test_nonsingular_generated_data_has_no_fixed_point_classes(phi):
    for seed in range(10):
        data = generate_valid_data(phi, WINDOW_6, seed)
        report = analyze(phi, one_parameter_trace(phi, data), support_bound=10 ** 6)
        assert report.N == 0
        assert report.L == (0, 0)

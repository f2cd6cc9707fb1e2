import random

import pytest

from Hilbert_schemes.Cli.Artifacts import canonical_json
from Hilbert_schemes.Enumeration.IdealSearch import HilbertSpec, assert_antichain, enumerate_on
from Hilbert_schemes.Equations.BracketPoints import fixed_point
from Hilbert_schemes.Equations.Emitters import quadratic_equations
from Hilbert_schemes.GradingCore.Gradings import Grading, fiber
from Hilbert_schemes.Monomials.MonomialIdeals import hilbert_value, minimalize, standard_monomials
from Hilbert_schemes.Supportive.DegreeSets import check_conditions, compute_supportive, compute_very_supportive

GRADINGS = [
    ([[1], [1]], [(2,), (3,)]),
    ([[1], [1], [1]], [(1,), (2,)]),
    ([[1], [1], [2]], [(2,), (3,)]),
    ([[1], [2], [3]], [(3,), (4,)]),
]


def random_case(seed):
    rng = random.Random(seed)
    columns, D = GRADINGS[seed % len(GRADINGS)]
    grading = Grading.from_columns(columns, 1)
    pool = [u for a in D for u in fiber(grading, a).monomials]
    I = minimalize(rng.sample(pool, rng.randint(1, 3)), grading.n)
    h = HilbertSpec.from_mapping({a: hilbert_value(I, grading, a) for a in D})
    return grading, D, I, h


@pytest.mark.parametrize("seed", range(12))
def test_enumerated_ideals(seed):
    grading, D, I, h = random_case(seed)
    ideals = enumerate_on(grading, h, D)
    assert I.generators in [J.generators for J in ideals]
    assert_antichain(ideals)
    for J in ideals:
        assert all(hilbert_value(J, grading, a) == h.value(grading, a) for a in D)
    assert [J.generators for J in enumerate_on(grading, h, D)] == [J.generators for J in ideals]


@pytest.mark.parametrize("seed", range(12))
def test_quadratic_equations_vanish_at_fixed_points(seed):
    grading, D, _, h = random_case(seed)
    equations = quadratic_equations(grading, h, D)
    assert canonical_json(quadratic_equations(grading, h, D).to_dict()) == canonical_json(equations.to_dict())
    for J in enumerate_on(grading, h, D):
        values = fixed_point({a: standard_monomials(J, grading, a) for a in D})
        assert all(q.evaluate(values) == 0 for q in equations.equations)


@pytest.mark.parametrize("seed", range(5))
def test_very_supportive_extends_supportive(seed):
    rng = random.Random(seed)
    grading = Grading.standard(2)
    extras = rng.sample([u for d in (2, 3) for u in fiber(grading, (d,)).monomials], 2)
    I = minimalize([(3, 0), (0, 3)] + extras, 2)
    h = HilbertSpec.from_mapping({(d,): hilbert_value(I, grading, (d,)) for d in range(6)})
    supportive = compute_supportive(grading, h)
    very = compute_very_supportive(grading, h)
    assert set(supportive.D) <= set(very.D)
    assert I.generators in [J.generators for J in very.ideals]
    assert check_conditions(grading, h, supportive.D).is_supportive()
    assert check_conditions(grading, h, very.D).is_very_supportive()

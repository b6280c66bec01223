import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import polynomial_ideals, semigroup_ideals
from reesmult.errors import (
    ElementNotInIdeal,
    GeneratorNotInN,
    GuardExceeded,
    NotContained,
    NotMPrimary,
    BoxTooLarge,
)
from reesmult.hilbert import multiplicity
from reesmult.lattice import (
    colength,
    contains,
    ideal_from_gens,
    is_subideal,
    maximal_ideal,
    numerical_semigroup,
    polynomial_local,
    power,
    product,
    product_of_powers,
)
from reesmult.rees import (
    FULL,
    NOT_REDUCTION,
    LaurentElement,
    NPowers,
    ReesInstance,
    check_reduction_equation_bounded,
    e_N_direct,
    e_N_formula,
    graded_piece_N_power,
    hilbert_samuel_N,
    joint_reduction_check,
    l1_ball,
    minimal_multiplicity_verdict,
    mu_N,
    mu_N_direct,
    parameter_ideal,
    reduction_generators_m_mr,
    reduction_generators_m_param,
    reduction_number_dim1,
    reduction_number_monomial,
    rees_dim,
)

S457 = numerical_semigroup(4, 5, 7)
MS = maximal_ideal(S457)
I1 = ideal_from_gens(S457, [4, 8, 9, 10, 11])
I2 = power(MS, 2)
EX2 = ReesInstance(S457, (I1, I2))
EX2_G1 = ReesInstance(S457, (I1,))
R1, R2, R3 = polynomial_local(1), polynomial_local(2), polynomial_local(3)
M1, M2, M3 = maximal_ideal(R1), maximal_ideal(R2), maximal_ideal(R3)


def test_instance_validation():
    assert I1.gens == (4, 10)
    assert EX2.L == I1
    with pytest.raises(NotMPrimary):
        ReesInstance(R2, (ideal_from_gens(R2, [(1, 1)]),))


def test_rees_dim_examples():
    assert rees_dim(EX2) == 3
    assert rees_dim(ReesInstance(R3, (M3, M3))) == 5
    assert rees_dim(ReesInstance(R1, (M1,))) == 2


def test_mu_N_examples():
    assert mu_N(EX2) == 10
    assert mu_N(ReesInstance(R2, (M2, M2))) == 6
    assert mu_N(ReesInstance(R1, (M1,))) == 2


def test_e_N_formula_examples():
    assert e_N_formula(EX2) == 8 == 2 * multiplicity(EX2.L)
    assert e_N_formula(ReesInstance(R2, (M2, M2))) == 3
    assert e_N_formula(ReesInstance(R3, (M3, power(M3, 2)))) == 8


def test_graded_piece_examples():
    inst = ReesInstance(R2, (M2, ideal_from_gens(R2, [(1, 0), (0, 2)])))
    assert graded_piece_N_power(inst, 1, (0, 0)) == M2
    assert graded_piece_N_power(inst, 2, (0, 0)) == inst.L
    assert graded_piece_N_power(inst, 2, (0, 1)) == product(M2, inst.ideals[1])
    assert graded_piece_N_power(inst, 2, (-2, 0)) == FULL
    assert graded_piece_N_power(inst, 0, (1, 1)) == FULL


def test_e_N_direct_examples():
    assert e_N_direct(ReesInstance(R1, (M1,))) == 1
    assert e_N_direct(EX2) == 8
    assert e_N_direct(ReesInstance(S457, (MS,))) == 4
    with pytest.raises(GuardExceeded):
        e_N_direct(ReesInstance(R3, (M3, M3)))


def test_mu_N_direct_examples():
    assert mu_N_direct(EX2) == 10
    assert mu_N_direct(ReesInstance(R2, (M2, M2))) == 6
    assert mu_N_direct(ReesInstance(R1, (M1,))) == 2


def test_verdict_examples():
    rep = minimal_multiplicity_verdict(EX2, with_oracle=True)
    assert (rep.e_N, rep.bound, rep.mu_N, rep.dim, rep.equation_holds) == (8, 8, 10, 3, True)
    assert rep.e_N_oracle == 8 and rep.mu_N_oracle == 10 and rep.oracle_agrees
    assert (rep.mu_m, rep.e_m) == (3, 4)
    rep = minimal_multiplicity_verdict(EX2_G1, with_oracle=True)
    assert (rep.e_N, rep.bound, rep.mu_N, rep.dim, rep.equation_holds) == (4, 4, 5, 2, True)
    rep = minimal_multiplicity_verdict(ReesInstance(R3, (M3, power(M3, 2))))
    assert (rep.e_N, rep.bound, rep.mu_N, rep.equation_holds) == (8, 7, 11, False)
    assert rep.e_N_oracle is None


# -- independent oracle for ell(B / N^n)


def n_generators(instance):
    """Monomial generators of N as (ring monomial or None for 1, multidegree)."""
    g = instance.g
    out = [(None, tuple(-int(i == j) for j in range(g))) for i in range(g)]
    out += [(m, (0,) * g) for m in instance.m.gens]
    for i, ideal in enumerate(instance.ideals):
        out += [(m, tuple(int(i == j) for j in range(g))) for m in ideal.gens]
    return out


def brute_H(instance, n):
    ring, g = instance.ring, instance.g
    gens = n_generators(instance)
    prods = {}
    for combo in itertools.combinations_with_replacement(gens, n):
        mono, deg = ring.one(), (0,) * g
        for m, e in combo:
            if m is not None:
                mono = ring.mul(mono, m)
            deg = tuple(x + y for x, y in zip(deg, e))
        prods.setdefault(deg, set()).add(mono)

    def in_B(mono, b):
        amb = product_of_powers(zip(instance.ideals, b))
        return amb is None or contains(amb, mono)

    total = 0
    for b in l1_ball(g, n - 1):
        amb = product_of_powers(zip(instance.ideals, b))
        bound = 4 * n + 12 if ring.is_semigroup else n + 4 * (sum(abs(x) for x in b) + 1)
        if ring.is_semigroup:
            monos = [s for s in range(bound) if ring.in_semigroup(s)]
        else:
            monos = list(itertools.product(range(bound), repeat=ring.d))
        for mono in monos:
            if amb is not None and not contains(amb, mono):
                continue
            covered = False
            for c, ps in prods.items():
                shift = tuple(x - y for x, y in zip(b, c))
                for p in ps:
                    if ring.divides(p, mono) and in_B(_quotient(ring, mono, p), shift):
                        covered = True
                        break
                if covered:
                    break
            total += not covered
    return total


def _quotient(ring, a, b):
    return a - b if ring.is_semigroup else tuple(x - y for x, y in zip(a, b))


@pytest.mark.parametrize("instance", [
    ReesInstance(R1, (M1,)),
    ReesInstance(R1, (power(M1, 2), M1)),
    ReesInstance(R2, (M2,)),
    ReesInstance(R2, (ideal_from_gens(R2, [(1, 0), (0, 2)]),)),
    EX2_G1,
    ReesInstance(numerical_semigroup(2, 3), (ideal_from_gens(numerical_semigroup(2, 3), [3, 4]),)),
])
def test_hilbert_function_matches_brute_force(instance):
    powers = NPowers(instance)
    for n in range(1, 5):
        assert hilbert_samuel_N(instance, n, powers) == brute_H(instance, n)


# -- formula against oracle


ORACLE_CASES = [
    ReesInstance(R1, (M1,)),
    ReesInstance(R1, (power(M1, 3),)),
    ReesInstance(R1, (M1, power(M1, 2))),
    ReesInstance(R2, (M2,)),
    ReesInstance(R2, (ideal_from_gens(R2, [(2, 0), (1, 1), (0, 3)]),)),
    ReesInstance(R2, (M2, M2)),
    ReesInstance(R2, (M2, ideal_from_gens(R2, [(1, 0), (0, 2)]))),
    ReesInstance(S457, (MS,)),
    EX2,
    ReesInstance(numerical_semigroup(2, 3), (maximal_ideal(numerical_semigroup(2, 3)),)),
    ReesInstance(numerical_semigroup(2, 3), (ideal_from_gens(numerical_semigroup(2, 3), [3, 4]),
                                             ideal_from_gens(numerical_semigroup(2, 3), [2]))),
]


@pytest.mark.parametrize("instance", ORACLE_CASES, ids=lambda i: str(i.describe()))
def test_formula_agrees_with_oracle(instance):
    assert e_N_formula(instance) == e_N_direct(instance)
    assert mu_N(instance) == mu_N_direct(instance)


@given(st.one_of(semigroup_ideals(), polynomial_ideals(d=1)), st.data())
def test_dimension_one_closed_form(first, data):
    ring = first.ring
    extra = data.draw(st.lists(st.integers(1, 3), max_size=2))
    ideals = (first,) + tuple(power(maximal_ideal(ring), k) for k in extra)
    inst = ReesInstance(ring, ideals)
    assert e_N_formula(inst) == 2 ** (inst.g - 1) * multiplicity(inst.L)


@given(st.one_of(semigroup_ideals(), polynomial_ideals(d=2, bound=3, max_extra=1)))
def test_random_oracle_agreement_g1(ideal):
    inst = ReesInstance(ideal.ring, (ideal,))
    assert e_N_formula(inst) == e_N_direct(inst)
    assert mu_N(inst) == mu_N_direct(inst)


@given(st.data())
def test_pieces_are_monotone(data):
    ideal = data.draw(st.one_of(semigroup_ideals(), polynomial_ideals(d=2, bound=3, max_extra=1)))
    inst = ReesInstance(ideal.ring, (ideal, power(maximal_ideal(ideal.ring), 2)))
    powers = NPowers(inst)
    for n in range(0, 4):
        for b in l1_ball(2, 3):
            upper, lower = powers.piece(n, b), powers.piece(n + 1, b)
            if lower is not None and upper is not None:
                assert is_subideal(lower, upper)
            else:
                assert upper is None or lower is not None
            if all(x <= -n for x in b):
                assert graded_piece_N_power(inst, n, b) == FULL


# -- reductions


def test_reduction_number_examples():
    assert reduction_number_monomial(MS, ideal_from_gens(S457, [4])) == 2
    assert reduction_number_monomial(I1, ideal_from_gens(S457, [4])) == 1
    assert reduction_number_monomial(M2, ideal_from_gens(R2, [(1, 0)])) is NOT_REDUCTION
    with pytest.raises(NotContained):
        reduction_number_monomial(I1, ideal_from_gens(S457, [5]))


def test_reduction_number_dim1_examples():
    assert reduction_number_dim1(I1) == 1
    assert reduction_number_dim1(I2) == 1
    assert reduction_number_dim1(ideal_from_gens(S457, [4])) == 0
    assert reduction_number_dim1(power(M1, 3)) == 0


@given(semigroup_ideals())
def test_lowest_element_is_a_reduction(ideal):
    r = reduction_number_dim1(ideal)
    J = ideal_from_gens(ideal.ring, [min(ideal.gens)])
    assert product(J, power(ideal, r + 1)) == power(ideal, r + 2)
    assert colength(J) == multiplicity(ideal)


def test_joint_reduction_examples():
    assert joint_reduction_check([(1, 0), (0, 1)], ReesInstance(R2, (M2, M2)))
    assert joint_reduction_check([4, 8], EX2)
    assert not joint_reduction_check([(0, 1), (0, 1)], ReesInstance(R2, (M2, M2)))
    with pytest.raises(ElementNotInIdeal):
        joint_reduction_check([5, 8], EX2)


# -- bounded reduction equation


def test_reduction_equation_dimension_one():
    inst = ReesInstance(R1, (M1,))
    gens = [LaurentElement.of(R1, [(1, 0, (-1,))]), LaurentElement.of(R1, [(1, 1, (1,))])]
    assert str(check_reduction_equation_bounded(inst, gens)) == "HoldsOnBox"
    verdict = check_reduction_equation_bounded(inst, gens[:1])
    assert not verdict.holds and verdict.fails_at is not None


def test_reduction_equation_explicit_generators():
    inst = ReesInstance(R2, (M2, M2))
    gens = reduction_generators_m_mr(R2, 1)
    assert len(gens) == 4
    assert check_reduction_equation_bounded(inst, gens).holds
    for k in range(len(gens)):
        verdict = check_reduction_equation_bounded(inst, gens[:k] + gens[k + 1:])
        assert str(verdict).startswith("FailsAt(")


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_parameter_family_reduction_holds(d, r):
    ring = polynomial_local(d)
    inst = ReesInstance(ring, (maximal_ideal(ring), parameter_ideal(ring, r)))
    assert check_reduction_equation_bounded(inst, reduction_generators_m_param(ring, r)).holds
    assert minimal_multiplicity_verdict(inst).equation_holds


def test_reduction_equation_fails_when_equation_fails():
    inst = ReesInstance(R3, (M3, power(M3, 2)))
    assert not check_reduction_equation_bounded(inst, reduction_generators_m_mr(R3, 2)).holds


def test_reduction_equation_input_checks():
    inst = ReesInstance(R1, (M1,))
    with pytest.raises(GeneratorNotInN):
        check_reduction_equation_bounded(inst, [LaurentElement.of(R1, [(1, 0, (0,))])])
    with pytest.raises(BoxTooLarge):
        check_reduction_equation_bounded(inst, [], box=10, max_degrees=5)

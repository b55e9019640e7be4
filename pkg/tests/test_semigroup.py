from math import gcd

import pytest

from cfk.semigroup import (
    AlexanderPolynomial,
    InvalidTorusKnotError,
    StepVector,
    alexander_torus,
    conductor,
    semigroup_elements,
    step_vector,
)
from oracles import alexander_by_division


class TestSemigroupElements:
    def test_small(self):
        assert semigroup_elements(2, 3, 7) == [0, 2, 3, 4, 5, 6, 7]

    def test_five_seven(self):
        assert semigroup_elements(5, 7, 15) == [0, 5, 7, 10, 12, 14, 15]

    def test_bound_zero(self):
        assert semigroup_elements(3, 5, 0) == [0]

    def test_not_coprime(self):
        with pytest.raises(InvalidTorusKnotError):
            semigroup_elements(4, 6, 10)

    def test_bad_order(self):
        with pytest.raises(InvalidTorusKnotError):
            semigroup_elements(5, 3, 10)

    def test_negative_bound(self):
        with pytest.raises(ValueError):
            semigroup_elements(2, 3, -1)

    def test_everything_beyond_conductor_is_in(self):
        for p, q in ((2, 7), (3, 5), (4, 9)):
            c = conductor(p, q)
            elems = set(semigroup_elements(p, q, c + 25))
            assert all(n in elems for n in range(c, c + 26))
            assert c - 1 not in elems  # the Frobenius number sits just below


class TestAlexander:
    def test_t34(self):
        assert alexander_torus(3, 4).exponents == (0, 1, 3, 5, 6)

    def test_t57(self):
        assert alexander_torus(5, 7).exponents == (
            0, 1, 5, 6, 7, 8, 10, 11, 12, 13, 14, 16, 17, 18, 19, 23, 24
        )

    def test_t23(self):
        assert alexander_torus(2, 3).exponents == (0, 1, 2)

    def test_degree_is_conductor(self):
        for p, q in ((2, 5), (3, 7), (5, 6)):
            assert alexander_torus(p, q).degree == (p - 1) * (q - 1)

    def test_invalid(self):
        with pytest.raises(InvalidTorusKnotError):
            alexander_torus(4, 6)

    def test_agrees_with_polynomial_division(self):
        # second, independent route: (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))
        pairs = [
            (p, q)
            for p in range(2, 21)
            for q in range(p + 1, 202)
            if gcd(p, q) == 1 and (p - 1) * (q - 1) <= 400
        ]
        assert len(pairs) > 100
        for p, q in pairs:
            poly = alexander_torus(p, q)
            signed = alexander_by_division(p, q)
            assert [e for e, _ in signed] == list(poly.exponents)
            assert [c for _, c in signed] == [
                1 if i % 2 == 0 else -1 for i in range(len(poly.exponents))
            ]


class TestAlexanderType:
    def test_rejects_nonzero_start(self):
        with pytest.raises(ValueError):
            AlexanderPolynomial((1, 2, 3))

    def test_rejects_odd_top_index(self):
        with pytest.raises(ValueError):
            AlexanderPolynomial((0, 1, 2, 3))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            AlexanderPolynomial((0, 1, 5))


class TestStepVector:
    def test_t34(self):
        assert step_vector(alexander_torus(3, 4)).steps == (1, 2, 2, 1)

    def test_t57(self):
        assert step_vector(alexander_torus(5, 7)).steps == (
            1, 4, 1, 1, 1, 2, 1, 1, 1, 1, 2, 1, 1, 1, 4, 1
        )

    def test_t2p_is_all_ones(self):
        for p in (3, 5, 7, 9, 11, 13):
            assert step_vector(alexander_torus(2, p)).steps == (1,) * (p - 1)

    def test_tp_pplus1_pattern(self):
        for p in range(3, 14):
            expected = []
            for j in range(1, p):
                expected += [j, p - j]
            assert step_vector(alexander_torus(p, p + 1)).steps == tuple(expected)

    def test_invariants_on_generated_vectors(self):
        for p in range(2, 10):
            for q in range(p + 1, 12):
                if gcd(p, q) != 1:
                    continue
                sv = step_vector(alexander_torus(p, q))
                assert sv.steps == sv.steps[::-1]
                assert sum(sv.horizontal) == sum(sv.vertical)

    def test_type_rejects_non_palindrome(self):
        with pytest.raises(ValueError):
            StepVector((1, 2, 1, 2))

    def test_type_rejects_odd_length(self):
        with pytest.raises(ValueError):
            StepVector((1, 2, 1))

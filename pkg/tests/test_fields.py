"""Exact field arithmetic, factorization, and the finite K_1 norm."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcycles.fields import (
    EXTENSION_MODULI,
    ExtensionNotSupported,
    FieldElement,
    NonPrimeCharacteristic,
    NotFiniteExtension,
    ReducibleExtensionPolynomial,
    UniPoly,
    ZeroElement,
    ZeroPolynomial,
    factor_univariate,
    is_irreducible,
    make_field,
    norm_k1_finite,
    poly_gcd,
    standard_extension,
)

F5 = make_field(5)
F9 = make_field(3, [1, 0, 1])
Q = make_field(0)


def elements_of(spec):
    if spec.char:
        return st.sampled_from(list(spec.elements()))
    return st.fractions(min_value=-50, max_value=50, max_denominator=12).map(spec.element)


class TestConstruction:
    def test_f5_generator(self):
        # exhaustive order check: 2 is the first element of full order
        spec = make_field(5)
        assert spec.generator == spec.element(2)
        powers = {(spec.generator ** k).value for k in range(4)}
        assert powers == {1, 2, 3, 4}

    def test_f9_modulus_has_no_roots(self):
        for a in range(3):
            assert (a * a + 1) % 3 != 0
        spec = make_field(3, [1, 0, 1])
        assert spec.order == 9

    def test_rationals(self):
        q = make_field(0)
        assert q.element(Fraction(2, 4)).value == Fraction(1, 2)

    def test_nonprime_rejected(self):
        with pytest.raises(NonPrimeCharacteristic):
            make_field(6)

    def test_reducible_rejected(self):
        # u^2 - 1 = (u-1)(u+1) over F5
        with pytest.raises(ReducibleExtensionPolynomial):
            make_field(5, [-1, 0, 1])
        with pytest.raises(ReducibleExtensionPolynomial):
            make_field(0, [Fraction(-1), 0, 1])

    def test_high_degree_over_q_not_certified(self):
        with pytest.raises(ExtensionNotSupported):
            make_field(0, [1, 0, 0, 0, 1])

    def test_extension_table_all_validate(self):
        for (p, d), _ in EXTENSION_MODULI.items():
            spec = standard_extension(p, d)
            assert spec.order == p**d
            # generator really generates
            g = spec.generator
            seen = set()
            acc = spec.one
            for _ in range(spec.order - 1):
                seen.add(acc.value)
                acc = acc * g
            assert len(seen) == spec.order - 1


class TestFieldAxioms:
    @settings(max_examples=60)
    @given(st.data())
    def test_axioms_f5(self, data):
        self._axioms(data, F5)

    @settings(max_examples=60)
    @given(st.data())
    def test_axioms_f9(self, data):
        self._axioms(data, F9)

    @settings(max_examples=60)
    @given(st.data())
    def test_axioms_q(self, data):
        self._axioms(data, Q)

    @staticmethod
    def _axioms(data, spec):
        a = data.draw(elements_of(spec))
        b = data.draw(elements_of(spec))
        c = data.draw(elements_of(spec))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == spec.zero
        if a:
            assert a * a.inverse() == spec.one


class TestFactorization:
    def test_spec_example_f5(self):
        f = UniPoly(F5, [1, 0, 1])
        fac = factor_univariate(f)
        texts = sorted(p.poly.to_text("u") for p in fac.parts)
        assert texts == ["u + 2", "u + 3"]
        assert fac.expand() == f

    def test_linear_over_q(self):
        f = UniPoly(Q, [-7, 1])
        fac = factor_univariate(f)
        assert len(fac.parts) == 1 and fac.parts[0].irreducible

    def test_rootless_quadratic_over_q(self):
        f = UniPoly(Q, [-2, 0, 1])
        fac = factor_univariate(f)
        assert len(fac.parts) == 1
        assert fac.parts[0].poly == f
        # degree <= 3 rootless cofactors are certified irreducible
        assert fac.parts[0].irreducible

    def test_quartic_cofactor_marked_unfactored(self):
        # x^4 + 1 has no rational roots and exceeds the certification bound
        f = UniPoly(Q, [1, 0, 0, 0, 1])
        fac = factor_univariate(f)
        assert len(fac.parts) == 1 and not fac.parts[0].irreducible

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            factor_univariate(UniPoly.zero(F5))

    def test_roundtrip_500_random(self):
        rng = random.Random(12345)
        primes = [2, 3, 5, 7, 13]
        for k in range(500):
            p = primes[k % 5]
            spec = make_field(p)
            deg = rng.randrange(1, 9)
            coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
            f = UniPoly(spec, coeffs)
            fac = factor_univariate(f)
            assert fac.expand() == f
            assert fac.fully_factored
            for part in fac.parts:
                assert is_irreducible(part.poly)

    def test_rational_roots_with_multiplicity(self):
        # (x - 1/2)^2 (x + 3) over Q
        half = UniPoly(Q, [Fraction(-1, 2), 1])
        f = half * half * UniPoly(Q, [3, 1]) * UniPoly.const(Q, 4)
        fac = factor_univariate(f)
        assert fac.expand() == f
        mults = {p.poly.to_text(): p.multiplicity for p in fac.parts}
        assert mults == {"t - 1/2": 2, "t + 3": 1}

    def test_gcd(self):
        f = UniPoly(F5, [1, 1]) * UniPoly(F5, [2, 1])
        g = UniPoly(F5, [1, 1]) * UniPoly(F5, [3, 1])
        assert poly_gcd(f, g) == UniPoly(F5, [1, 1])


class TestNorm:
    def test_spec_example(self):
        # independent oracle: alpha * Frobenius(alpha), Frobenius by cubing
        alpha = F9.element([1, 1])
        conj = alpha * alpha * alpha
        assert (alpha * conj).to_base() == make_field(3).element(2)
        assert norm_k1_finite(alpha) == make_field(3).element(2)

    def test_norm_of_one(self):
        assert norm_k1_finite(F9.one) == make_field(3).one

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            norm_k1_finite(F9.zero)

    def test_not_extension_rejected(self):
        with pytest.raises(NotFiniteExtension):
            norm_k1_finite(F5.one)
        with pytest.raises(NotFiniteExtension):
            norm_k1_finite(Q.one)

    def test_surjective_homomorphism_exhaustive(self):
        # every stored extension with at most 81 elements
        for (p, d), _ in EXTENSION_MODULI.items():
            if p**d > 81:
                continue
            spec = standard_extension(p, d)
            base = make_field(p)
            values = set()
            units = [e for e in spec.elements() if e]
            for a in units:
                na = norm_k1_finite(a)
                values.add(na.value)
                for b in units[:7]:
                    assert norm_k1_finite(a * b) == na * norm_k1_finite(b)
            assert values == {e.value for e in base.elements() if e}


class TestElementText:
    def test_canonical_forms(self):
        assert Q.element(Fraction(-3, 6)).to_text() == "-1/2"
        assert F5.element(9).to_text() == "4"
        assert F9.element([1, 2]).to_text() == "2*u + 1"
        assert F9.element([0, 1]).to_text() == "u"

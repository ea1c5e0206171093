"""The residue invariant and the certificate-producing witness generators."""

import json
import random
from fractions import Fraction

import pytest

from modcycles.fields import make_field
from modcycles.polyring import VarSet, parse_poly
from modcycles.cycles import (
    ClosedPoint,
    CoordModel,
    HypersurfaceCycle,
    ModulusDatum,
    boundary,
)
from modcycles.witnesses import (
    DegreeTooHigh,
    MalformedCertificate,
    NotNormalized,
    NotPresentable,
    PointOnModulus,
    UnsupportedModulus,
    WitnessCertificate,
    WrongLevel,
    bounding_surface,
    generator_cycle,
    rho,
    rho_of_boundary,
    verify_certificate,
    verify_rho_reciprocity,
    zero_cycle_vanishing_witness,
)

F5 = make_field(5)
F7 = make_field(7)
F11 = make_field(11)
Q = make_field(0)


def cyc(text, spec=F7, r=2, n=1):
    return HypersurfaceCycle.from_poly(parse_poly(text, spec, VarSet(r, n)), CoordModel.PSI)


D11_F7 = ModulusDatum.monomial(F7, [1, 1])


class TestRho:
    def test_generator_value(self):
        assert rho(cyc("1 - t1*t2*3*y1"), D11_F7) == F7.element(3)

    def test_affine_part_reads_linear_coefficient(self):
        assert rho(cyc("1 - t1*t2*(4*y1 + 5)"), D11_F7) == F7.element(4)

    def test_higher_order_terms_do_not_contribute(self):
        rng = random.Random(2)
        for _ in range(50):
            a = F7.element(rng.randrange(7))
            base = f"1 - t1*t2*({a.value}*y1 + {rng.randrange(7)})"
            noisy = base + f" + t1^2*t2^2*({rng.randrange(7)}*y1^3 + {rng.randrange(7)})"
            assert rho(cyc(noisy), D11_F7) == a

    def test_z_linear(self):
        Z = cyc("1 - t1*t2*3*y1") + cyc("1 - t1*t2*2*y1").scale(4)
        assert rho(Z, D11_F7) == F7.element(3 + 4 * 2)

    def test_wrong_level(self):
        with pytest.raises(WrongLevel):
            rho(cyc("1 - t1*t2*y1*y2", n=2), D11_F7)

    def test_requires_all_ones_modulus(self):
        with pytest.raises(UnsupportedModulus):
            rho(cyc("1 - t1*t2*y1"), ModulusDatum.monomial(F7, [2, 1]))

    def test_not_presented_raises(self):
        with pytest.raises(NotNormalized):
            rho(cyc("1 - t1*y1"), D11_F7)

    def test_degree_guard(self):
        with pytest.raises(DegreeTooHigh):
            rho(cyc("1 - t1*t2*y1^2"), D11_F7)

    def test_vanishes_on_degenerate_faces_and_boundaries(self):
        rng = random.Random(8)
        from modcycles.suites import _rand_admissible_cycle

        for k in range(50):
            spec = [F5, F7, Q][k % 3]
            W = _rand_admissible_cycle(rng, spec, 2, 2)
            D = ModulusDatum.monomial(spec, [1, 1])
            assert not rho(boundary(W), D)


class TestRhoReciprocity:
    def test_multilinear_faces_recorded(self):
        W = cyc("1 - t1*t2*(2*y1*y2 + 3*y1 + 4*y2 + 5)", n=2)
        cert = verify_rho_reciprocity(W, D11_F7)
        assert cert.valid
        assert verify_certificate(cert)
        assert len(cert.claim["boundary_faces"]) == 4

    def test_with_higher_order_terms(self):
        W = cyc("1 - t1*t2*(2*y1*y2 + 3*y1 + 4*y2 + 5) + t1^3*t2*(y1*y2 + 2)", n=2)
        cert = verify_rho_reciprocity(W, D11_F7)
        assert cert.valid and verify_certificate(cert)

    def test_inadmissible_rejected(self):
        from modcycles.witnesses import WitnessError

        W = cyc("1 - t1*t2*y1^2*y2", n=2)
        with pytest.raises(WitnessError):
            verify_rho_reciprocity(W, D11_F7)


class TestBoundingSurface:
    def test_spec_instance(self):
        Z = cyc("1 - t1*t2*(t1 + 3)", n=0)
        cert = bounding_surface(Z, D11_F7)
        assert cert.valid and verify_certificate(cert)

    def test_empty_cycle(self):
        Z = HypersurfaceCycle.empty(F7, VarSet(2, 0), CoordModel.PSI)
        cert = bounding_surface(Z, D11_F7)
        assert cert.valid and verify_certificate(cert)

    def test_not_presentable(self):
        Z = cyc("1 - t1*(t1 + 3)", n=0)
        with pytest.raises(NotPresentable):
            bounding_surface(Z, D11_F7)

    def test_higher_monomial_modulus(self):
        D = ModulusDatum.monomial(F7, [2, 1])
        Z = cyc("1 - t1^2*t2*(t2 + 1)", n=0)
        cert = bounding_surface(Z, D)
        assert cert.valid and verify_certificate(cert)


class TestGeneratorCycle:
    def test_all_of_f5(self):
        D = ModulusDatum.monomial(F5, [1, 1])
        image = set()
        for a in F5.elements():
            Z, cert = generator_cycle(a, 2)
            assert cert.valid and verify_certificate(cert)
            image.add(rho(Z, D).value)
        assert image == set(range(5))

    def test_rational_value(self):
        a = Q.element(Fraction(1, 2))
        Z, cert = generator_cycle(a, 3)
        assert cert.valid
        assert rho(Z, ModulusDatum.monomial(Q, [1, 1, 1])) == a

    def test_zero_gives_empty_cycle(self):
        Z, cert = generator_cycle(F7.zero, 2)
        assert not Z and cert.valid
        assert rho(Z, D11_F7) == F7.zero


class TestZeroCycleWitness:
    def test_f7_plain(self):
        z = ClosedPoint(F7, [F7.element(2), F7.element(3)], [])
        cert = zero_cycle_vanishing_witness(z, D11_F7)
        assert cert.valid and verify_certificate(cert)

    def test_q_with_higher_exponents(self):
        z = ClosedPoint(Q, [Q.one, Q.one, Q.element(4)], [])
        cert = zero_cycle_vanishing_witness(z, ModulusDatum.monomial(Q, [2, 1, 5]))
        assert cert.valid and verify_certificate(cert)

    def test_product_base_variant(self):
        z = ClosedPoint(Q, [Q.element(7), Q.element(2), Q.element(3)], [])
        cert = zero_cycle_vanishing_witness(
            z, ModulusDatum.monomial(Q, [1, 1, 1]), variant="product_base")
        assert cert.valid and verify_certificate(cert)

    def test_point_on_modulus_rejected(self):
        z = ClosedPoint(F7, [F7.zero, F7.element(3)], [])
        with pytest.raises(PointOnModulus):
            zero_cycle_vanishing_witness(z, D11_F7)

    def test_n1_reports_obstruction_without_vanishing_claim(self):
        z = ClosedPoint(F5, [F5.element(2), F5.element(3)], [F5.element(4)])
        cert = zero_cycle_vanishing_witness(z, ModulusDatum.monomial(F5, [1, 1]), n=1)
        assert cert.valid
        assert cert.claim["obstruction"] == ["4"]
        assert cert.claim["vanishing_claimed"] is False

    def test_n2_finite_attaches_oracle(self):
        z = ClosedPoint(F5, [F5.element(2), F5.element(3)],
                        [F5.element(4), F5.element(2)])
        cert = zero_cycle_vanishing_witness(z, ModulusDatum.monomial(F5, [1, 1]), n=2)
        assert cert.valid and verify_certificate(cert)
        assert cert.claim["vanishing_claimed"] is True
        kinds = [e["check"] for e in cert.transcript]
        assert "finite_field_symbol_vanishing" in kinds and "k2_trivial" in kinds

    def test_extension_point_records_base_change(self):
        F9 = make_field(3, [1, 0, 1])
        z = ClosedPoint(F9, [F9.element([1, 1]), F9.element(2)], [])
        cert = zero_cycle_vanishing_witness(z, ModulusDatum.monomial(F9, [1, 1]))
        assert cert.valid and verify_certificate(cert)
        assert any("base change" in str(e["data"].get("note", "")) for e in cert.transcript)


class TestVerifyCertificate:
    def test_roundtrip_through_json(self):
        Z = cyc("1 - t1*t2*(t1 + 3)", n=0)
        cert = bounding_surface(Z, D11_F7)
        blob = json.dumps(cert.to_json())
        assert verify_certificate(WitnessCertificate.from_json(json.loads(blob)))

    def test_tampered_witness_fails(self):
        W = cyc("1 - t1*t2*(2*y1*y2 + 3*y1 + 4*y2 + 5)", n=2)
        cert = verify_rho_reciprocity(W, D11_F7)
        data = json.loads(json.dumps(cert.to_json()))
        # swap the admissibility entry's cycle for a degree-2 one: the stored
        # "Certified" verdict no longer recomputes
        data["transcript"][1]["data"]["cycle"]["terms"][0]["poly"] = \
            "1 - t1*t2*y1^2*y2"
        assert not verify_certificate(data)

    def test_tampered_residue_input_fails(self):
        Z, cert = generator_cycle(F7.element(3), 2)
        data = json.loads(json.dumps(cert.to_json()))
        # the rho entry now sees a different generator: value 4, expected 3
        for entry in data["transcript"]:
            if entry["check"] == "rho_equals":
                entry["data"]["cycle"]["terms"][0]["poly"] = "1 - 4*t1*t2*y1"
        assert not verify_certificate(data)

    def test_tampered_expected_fails(self):
        Z, cert = generator_cycle(F7.element(3), 2)
        data = json.loads(json.dumps(cert.to_json()))
        data["transcript"][-1]["expected"] = "4"
        assert not verify_certificate(data)

    def test_inadmissible_witness_fails(self):
        Z = cyc("1 - t1*t2*(t1 + 3)", n=0)
        cert = bounding_surface(Z, D11_F7)
        data = json.loads(json.dumps(cert.to_json()))
        # replace the stored surface with a degree-2 one: modulus check fails
        data["transcript"][1]["data"]["cycle"]["terms"][0]["poly"] = \
            "1 - t1*t2*(t1 + 3)*y1^2"
        assert not verify_certificate(data)

    def test_malformed_rejected(self):
        with pytest.raises(MalformedCertificate):
            WitnessCertificate.from_json({"claim": {}})
        bad = WitnessCertificate({}, [], [{"check": "no-such-check", "data": {},
                                           "expected": True, "status": "pass"}], {})
        with pytest.raises(MalformedCertificate):
            verify_certificate(bad)

    def test_deterministic(self):
        z = ClosedPoint(F7, [F7.element(2), F7.element(3)], [])
        a = zero_cycle_vanishing_witness(z, D11_F7)
        b = zero_cycle_vanishing_witness(z, D11_F7)
        assert json.dumps(a.to_json()) == json.dumps(b.to_json())


class TestBothConventions:
    def test_rho_of_boundary_zero_under_flip(self):
        rng = random.Random(14)
        from modcycles.suites import _rand_admissible_cycle

        for k in range(30):
            spec = [F5, F7, Q][k % 3]
            W = _rand_admissible_cycle(rng, spec, 2, 2)
            D = ModulusDatum.monomial(spec, [1, 1])
            assert not rho_of_boundary(W, D, flip_inner=False)
            assert not rho_of_boundary(W, D, flip_inner=True)

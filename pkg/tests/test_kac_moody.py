"""Double extension: bracket, Lorentz form, generators, involutions."""

import random
from fractions import Fraction

import pytest

from kmx import _matrix as mx
from kmx.base_lie import DiagramAutomorphism, FiniteLieElement, finite_element
from kmx.cartan import named_matrix
from kmx.errors import IllegalSpec, NotInvolutive, UnsupportedType
from kmx.kac_moody import (
    KacMoodyElement,
    affine_generators,
    apply_involution,
    c_element,
    d_element,
    eigenspace_split,
    involution_spec,
    km_bracket,
    km_element,
    lorentz_form,
    serre_check,
)
from kmx.loop_algebra import laurent_loop, monomial, zero_loop
from kmx.sampling import rand_compact_km, rand_km, rand_loop
from kmx.scalars import EC


def sl2():
    e = finite_element([[0, 1], [0, 0]])
    f = finite_element([[0, 0], [1, 0]])
    h = finite_element([[1, 0], [0, -1]])
    return e, f, h


class TestBracket:
    def test_d_acts_as_rotation_derivative(self):
        e, _, _ = sl2()
        x = d_element()
        y = km_element(monomial(e, 2))
        assert km_bracket(x, y) == km_element(monomial(e.scale(2), 2))
        assert km_bracket(y, x) == km_element(monomial(e.scale(-2), 2))

    def test_central_term(self):
        e, f, h = sl2()
        out = km_bracket(km_element(monomial(e, 1)), km_element(monomial(f, -1)))
        assert out.loop == monomial(h, 0)
        assert out.r_c == EC(1)
        assert out.r_d == EC(0)

    def test_c_is_central(self):
        rng = random.Random(30)
        c = c_element()
        for _ in range(10):
            x = rand_km(rng, 2, 2)
            assert km_bracket(c, x).is_zero()
            assert km_bracket(x, c).is_zero()

    def test_bracket_kills_d_coordinate(self):
        rng = random.Random(31)
        for _ in range(20):
            x, y = rand_km(rng, 2, 2), rand_km(rng, 2, 2)
            assert km_bracket(x, y).r_d == EC(0)

    def test_jacobi(self):
        rng = random.Random(32)
        for _ in range(30):
            x, y, z = (rand_km(rng, 2, 2) for _ in range(3))
            s = (
                km_bracket(x, km_bracket(y, z))
                + km_bracket(y, km_bracket(z, x))
                + km_bracket(z, km_bracket(x, y))
            )
            assert s.is_zero()


class TestLorentzForm:
    def test_metric_block(self):
        c, d = c_element(), d_element()
        assert lorentz_form(c, d) == EC(-1)
        assert lorentz_form(c, c) == EC(0)
        assert lorentz_form(d, d) == EC(0)
        assert lorentz_form(c + d, c + d) == EC(-2)
        diff = c - d
        assert lorentz_form(diff, diff) == EC(2)

    def test_positive_on_compact_loops(self):
        rng = random.Random(33)
        for _ in range(25):
            x = km_element(rand_loop(rng, 2, 2))
            # not definite on generic complex loops, but on compact ones:
            from kmx.sampling import rand_compact_loop

            y = km_element(rand_compact_loop(rng, 2, 2))
            v = lorentz_form(y, y)
            if not y.loop.is_zero():
                assert v.im == 0 and v.re > 0

    def test_spacelike_torus_direction(self):
        _, _, h = sl2()
        ih = km_element(monomial(h.scale(EC(0, 1)), 0))
        assert lorentz_form(ih, ih) == EC(2)

    def test_symmetry(self):
        rng = random.Random(34)
        for _ in range(20):
            x, y = rand_km(rng, 2, 2), rand_km(rng, 2, 2)
            assert lorentz_form(x, y) == lorentz_form(y, x)

    def test_algebra_invariance(self):
        rng = random.Random(35)
        for _ in range(30):
            x, y, z = (rand_km(rng, 2, 2) for _ in range(3))
            s = lorentz_form(km_bracket(z, x), y) + lorentz_form(
                x, km_bracket(z, y)
            )
            assert s.is_zero()


class TestAffineGenerators:
    def test_a1_h0(self):
        gens = affine_generators("A~1")
        e0, f0, h0 = gens[0]
        assert h0.r_c == EC(1)
        assert h0.r_d == EC(0)
        assert h0.loop == monomial(sl2()[2].scale(-1), 0)
        assert km_bracket(e0, f0) == h0

    def test_a1_cartan_action(self):
        gens = affine_generators("A~1")
        _, _, h0 = gens[0]
        e1, f1, h1 = gens[1]
        assert km_bracket(h0, e1) == e1.scale(-2)
        assert km_bracket(h0, gens[0].e) == gens[0].e.scale(2)
        assert km_bracket(h1, gens[0].e) == gens[0].e.scale(-2)

    def test_r1_to_r4(self):
        for name in ("A~1", "A~2"):
            A = named_matrix(name)
            gens = affine_generators(name)
            k = len(gens)
            for i in range(k):
                for j in range(k):
                    hi, (ej, fj, hj) = gens[i].h, gens[j]
                    assert km_bracket(hi, gens[j].h).is_zero()  # R1
                    eifj = km_bracket(gens[i].e, fj)
                    if i == j:
                        assert eifj == hj  # R2 diagonal
                    else:
                        assert eifj.is_zero()  # R2 off-diagonal
                    assert km_bracket(hi, ej) == ej.scale(A[j, i])  # R3
                    assert km_bracket(hi, fj) == fj.scale(-A[j, i])  # R4

    def test_serre_relations(self):
        for name in ("A~1", "A~2"):
            gens = affine_generators(name)
            report = serre_check(gens, named_matrix(name))
            assert report and all(entry["is_zero"] for entry in report)

    def test_serre_sharpness(self):
        # one bracket fewer must not vanish
        gens = affine_generators("A~1")
        e0, e1 = gens[0].e, gens[1].e
        x = km_bracket(e0, km_bracket(e0, e1))
        assert not x.is_zero()

    def test_a2_has_three_triples(self):
        assert len(affine_generators("A~2")) == 3

    def test_unsupported(self):
        for bad in ("A2", "B~3", "A~1'", "G~2"):
            with pytest.raises(UnsupportedType):
                affine_generators(bad)

    def test_matrix_input(self):
        gens = affine_generators(named_matrix("A~1"))
        assert len(gens) == 2


class TestInvolutions:
    def test_spec_validation(self):
        with pytest.raises(IllegalSpec):
            involution_spec("first", 2, invert=True)
        with pytest.raises(IllegalSpec):
            involution_spec("second", 2, invert=False)
        with pytest.raises(IllegalSpec):
            involution_spec("middle", 2)
        spec = involution_spec("second", 2)
        assert spec.eps_c == spec.eps_d == -1
        assert involution_spec("first", 2).eps_c == 1

    def test_second_kind_flips_center(self):
        spec = involution_spec("second", 2)
        assert apply_involution(spec, c_element()) == c_element().scale(-1)
        assert apply_involution(spec, d_element()) == d_element().scale(-1)

    def test_conjugate_invert_example(self):
        e, _, _ = sl2()
        spec = involution_spec("second", 2, conjugate=True)
        out = apply_involution(spec, km_element(monomial(e, 1)))
        assert out == km_element(monomial(e, -1))

    def test_automorphy(self):
        rng = random.Random(36)
        specs = [
            involution_spec("second", 2),
            involution_spec("second", 2, conjugate=True),
            involution_spec("first", 2, phi0_order=2),
        ]
        for spec in specs:
            for _ in range(15):
                x, y = rand_km(rng, 2, 2), rand_km(rng, 2, 2)
                lhs = apply_involution(spec, km_bracket(x, y))
                rhs = km_bracket(
                    apply_involution(spec, x), apply_involution(spec, y)
                )
                assert (lhs - rhs).is_zero(), spec

    def test_eigenspace_split_example(self):
        _, _, h = sl2()
        spec = involution_spec("second", 2)
        sym = km_element(monomial(h, 1) + monomial(h, -1))
        anti = km_element(monomial(h, 1) - monomial(h, -1))
        fixed, flipped = eigenspace_split(spec, [sym, anti, c_element()])
        assert sym in fixed and len(fixed) == 1
        assert anti in flipped and c_element().scale(-1) not in flipped
        assert len(flipped) == 2

    def test_split_reassembles(self):
        rng = random.Random(37)
        spec = involution_spec("second", 2, conjugate=True)
        for _ in range(15):
            x = rand_km(rng, 2, 2)
            fixed, flipped = eigenspace_split(spec, [x])
            total = zero_like = km_element(zero_loop(2))
            for part in fixed + flipped:
                total = total + part
            assert (total - x).is_zero()
            for part in fixed:
                assert (apply_involution(spec, part) - part).is_zero()
            for part in flipped:
                assert (apply_involution(spec, part) + part).is_zero()

    def test_not_involutive(self):
        # rigged phi0 whose J fails J^2 = 1
        bad = DiagramAutomorphism(2, mx.from_rows([[1, 0], [1, 1]]))
        from kmx.kac_moody import InvolutionSpec

        spec = InvolutionSpec(kind="first", phi0=bad, conjugate=False, invert=False)
        _, _, h = sl2()
        with pytest.raises(NotInvolutive):
            eigenspace_split(spec, [km_element(monomial(h, 0))])

"""Cross-section spectrum construction, file I/O, and genericity tests."""

import io
import json
import math
from fractions import Fraction

import pytest

from hypercone import (
    GenericityVerdict,
    InvalidDimension,
    InvalidRadius,
    Mode,
    ParseError,
    SpectrumSpec,
    ValidationError,
    circle_spectrum,
    is_generic,
    load_spectrum,
    s_param,
    save_spectrum,
    spectrum_to_dict,
    sphere_spectrum,
)

from oracles import sphere_multiplicity


class TestSphereSpectrum:
    def test_two_sphere(self):
        spec = sphere_spectrum(2, 2)
        assert spec.dimension_n == 2
        assert [m.mu_sq for m in spec.modes] == [0.0, 2.0, 6.0]
        assert [m.multiplicity for m in spec.modes] == [1, 3, 5]
        assert [m.mu_sq_exact for m in spec.modes] == [0, 2, 6]
        assert [m.label for m in spec.modes] == [0, 1, 2]
        assert abs(spec.volume - 4.0 * math.pi) <= 1e-12
        assert spec.source == "sphere"

    def test_three_sphere(self):
        spec = sphere_spectrum(3, 4)
        for j, m in enumerate(spec.modes):
            assert m.mu_sq == j * (j + 2)
            assert m.multiplicity == (j + 1) ** 2
        assert abs(spec.volume - 2.0 * math.pi ** 2) <= 1e-12

    def test_multiplicity_against_factorial_formula(self):
        for n in (2, 3, 4, 5):
            spec = sphere_spectrum(n, 10)
            for j, m in enumerate(spec.modes):
                assert m.multiplicity == sphere_multiplicity(n, j)

    def test_multiplicity_partial_sums(self):
        # sum_{j<=J} m_j = C(n+J, n) + C(n+J-1, n)
        for n in (2, 3, 4):
            spec = sphere_spectrum(n, 10)
            total = 0
            for J, m in enumerate(spec.modes):
                total += m.multiplicity
                assert total == math.comb(n + J, n) + math.comb(n + J - 1, n)

    def test_sphere_s_values_exact(self):
        for n in range(2, 7):
            spec = sphere_spectrum(n, 20)
            for j, m in enumerate(spec.modes):
                sv = s_param(n, m)
                assert sv.exact == Fraction(2 * j + n - 1, 2)

    def test_n_one_delegates_to_circle(self):
        a = sphere_spectrum(1, 3)
        b = circle_spectrum(1, 3)
        assert a.modes == b.modes and a.volume == b.volume

    def test_validation(self):
        with pytest.raises(InvalidDimension):
            sphere_spectrum(0, 2)
        with pytest.raises(ValidationError):
            sphere_spectrum(2, -1)


class TestCircleSpectrum:
    def test_unit_circle(self):
        spec = circle_spectrum(1, 2)
        assert [m.mu_sq for m in spec.modes] == [0.0, 1.0, 4.0]
        assert [m.multiplicity for m in spec.modes] == [1, 2, 2]
        assert abs(spec.volume - 2.0 * math.pi) <= 1e-12

    def test_rational_radius(self):
        spec = circle_spectrum("1/3", 1)
        assert [m.mu_sq_exact for m in spec.modes] == [0, 9]
        assert abs(spec.volume - 2.0 * math.pi / 3.0) <= 1e-12
        sv = s_param(1, spec.modes[1])
        assert sv.exact == 3

    def test_float_radius_is_inexact(self):
        spec = circle_spectrum(0.5, 2)
        assert all(m.mu_sq_exact is None for m in spec.modes)
        assert spec.modes[1].mu_sq == 4.0

    def test_circle_s_values(self):
        spec = circle_spectrum(Fraction(2), 8)
        for j, m in enumerate(spec.modes):
            assert s_param(1, m).exact == Fraction(j, 2)

    def test_weyl_sanity(self):
        # multiplicity-weighted count of mu_j <= M tracks 2*rho*M
        for rho in (1, 2, Fraction(1, 3)):
            spec = circle_spectrum(rho, 400)
            for bound in (5.0, 20.0, 50.0):
                count = sum(m.multiplicity for m in spec.modes
                            if math.sqrt(m.mu_sq) <= bound)
                assert 2 * float(rho) * bound - 2 <= count <= 2 * float(rho) * bound + 2

    def test_invalid_radius(self):
        for bad in (0, -1, "0", "-2/3", "garbage", float("inf"), [2]):
            with pytest.raises(InvalidRadius):
                circle_spectrum(bad, 2)


class TestModeValidation:
    def test_negative_mu_sq(self):
        with pytest.raises(ValidationError):
            Mode(mu_sq=-1.0, multiplicity=1)

    def test_non_finite(self):
        with pytest.raises(ValidationError):
            Mode(mu_sq=float("nan"), multiplicity=1)

    def test_bad_multiplicity(self):
        with pytest.raises(ValidationError):
            Mode(mu_sq=1.0, multiplicity=0)

    def test_exact_mismatch(self):
        with pytest.raises(ValidationError):
            Mode(mu_sq=1.0, multiplicity=1, mu_sq_exact=Fraction(3, 2))

    def test_unsorted_modes_rejected(self):
        with pytest.raises(ValidationError):
            SpectrumSpec(2, [Mode(2.0, 1), Mode(1.0, 1)], None, "file")


class TestFileIO:
    def test_round_trip(self, tmp_path):
        spec = sphere_spectrum(3, 3)
        path = tmp_path / "spec.json"
        save_spectrum(spec, path)
        back = load_spectrum(path)
        assert back.dimension_n == spec.dimension_n
        assert back.volume == pytest.approx(spec.volume, rel=0, abs=0)
        assert [(m.mu_sq, m.multiplicity, m.mu_sq_exact, m.label)
                for m in back.modes] == [
            (m.mu_sq, m.multiplicity, m.mu_sq_exact, m.label)
            for m in spec.modes]
        assert back.source == "file"

    def test_stream_round_trip(self):
        spec = circle_spectrum(Fraction(1, 3), 2)
        buf = io.StringIO()
        save_spectrum(spec, buf)
        back = load_spectrum(io.StringIO(buf.getvalue()))
        assert [m.mu_sq_exact for m in back.modes] == [0, 9, 36]

    def test_duplicates_merge(self):
        text = json.dumps({"n": 2, "modes": [
            {"mu_sq": 2.0, "m": 3}, {"mu_sq": 0.0, "m": 1},
            {"mu_sq": 2.0, "m": 4}]})
        spec = load_spectrum(io.StringIO(text))
        assert [(m.mu_sq, m.multiplicity) for m in spec.modes] == [
            (0.0, 1), (2.0, 7)]
        assert [m.label for m in spec.modes] == [0, 1]

    def test_inconsistent_duplicate_exact_forms(self):
        text = json.dumps({"n": 2, "modes": [
            {"mu_sq": 2.0, "m": 1, "mu_sq_exact": "2/1"},
            {"mu_sq": 2.0, "m": 1}]})
        with pytest.raises(ValidationError):
            load_spectrum(io.StringIO(text))

    def test_unknown_fields_rejected(self):
        with pytest.raises(ValidationError):
            load_spectrum(io.StringIO(
                '{"n": 2, "modes": [{"mu_sq": 0, "m": 1}], "extra": 1}'))
        with pytest.raises(ValidationError):
            load_spectrum(io.StringIO(
                '{"n": 2, "modes": [{"mu_sq": 0, "m": 1, "weight": 2}]}'))

    def test_missing_and_malformed(self):
        with pytest.raises(ParseError):
            load_spectrum(io.StringIO("{not json"))
        for text in ('{"modes": [{"mu_sq": 0, "m": 1}]}',
                     '{"n": 2}',
                     '{"n": 2, "modes": []}',
                     '{"n": 0, "modes": [{"mu_sq": 0, "m": 1}]}',
                     '{"n": 2, "volume": -1, "modes": [{"mu_sq": 0, "m": 1}]}',
                     '{"n": 2, "modes": [{"mu_sq": -1, "m": 1}]}',
                     '{"n": 2, "modes": [{"mu_sq": 0, "m": true}]}',
                     '{"n": 2, "modes": [{"mu_sq": 0, "m": 1, '
                     '"mu_sq_exact": "x"}]}'):
            with pytest.raises(ValidationError):
                load_spectrum(io.StringIO(text))
        with pytest.raises(ParseError):
            load_spectrum("/nonexistent/path.json")

    def test_to_dict_shape(self):
        d = spectrum_to_dict(circle_spectrum(2, 1))
        assert d == {"n": 1,
                     "volume": pytest.approx(4 * math.pi),
                     "modes": [{"mu_sq": 0.0, "m": 1, "mu_sq_exact": "0/1"},
                               {"mu_sq": 0.25, "m": 2, "mu_sq_exact": "1/4"}]}


class TestGenericity:
    def test_exact_non_generic(self):
        # s = 1/2: circle radius 2, j = 1 (mu^2 = 1/4)
        mode = circle_spectrum(2, 1).modes[1]
        assert is_generic(mode, 1) is GenericityVerdict.NON_GENERIC
        # every 2-sphere mode has s = j + 1/2
        for m in sphere_spectrum(2, 5).modes:
            assert is_generic(m, 2) is GenericityVerdict.NON_GENERIC

    def test_exact_generic(self):
        for m in sphere_spectrum(3, 5).modes:
            assert is_generic(m, 3) is GenericityVerdict.GENERIC
        assert is_generic(Mode(13.0 / 4.0, 1, Fraction(13, 4)),
                          1) is GenericityVerdict.GENERIC

    def test_float_generic(self):
        assert is_generic(Mode(math.pi, 1), 1) is GenericityVerdict.GENERIC

    def test_float_near_lattice_is_unknown(self):
        # mu^2 = (3/2)^2 + 1e-12: s within 1e-9 of 3/2 but not exact
        assert is_generic(Mode(2.25 + 1e-12, 1),
                          1) is GenericityVerdict.UNKNOWN_FLOAT

    def test_dimension_validation(self):
        with pytest.raises(InvalidDimension):
            is_generic(Mode(1.0, 1), 0)

"""Operator models, JSON ingestion, and spectral-measure plumbing."""

import json
from fractions import Fraction

import numpy as np
import pytest

from freeprob import measures as me
from freeprob import models
from freeprob import noncrossing as nc


class TestSpectralMeasure:
    def test_atom_measure(self):
        meas = me.SpectralMeasure.from_atoms([(0.0, 0.5), (2.0, 0.5)])
        assert meas.total_mass() == 1.0
        assert meas.moment(1) == 1.0
        assert meas.moment(2) == 2.0
        assert meas.support_min() == 0.0
        assert meas.support_max() == 2.0

    def test_rejects_negative_density(self):
        with pytest.raises(ValueError):
            me.SpectralMeasure.from_density([0.0, 1.0], [-0.1, 0.1], [1.0, 1.0], "t")

    def test_rejects_non_increasing_grid(self):
        with pytest.raises(ValueError):
            me.SpectralMeasure.from_density([1.0, 1.0], [0.1, 0.1], [1.0, 1.0], "t")

    def test_probability_requirement(self):
        meas = me.SpectralMeasure.from_atoms([(1.0, 0.7)])
        with pytest.raises(ValueError, match="mass"):
            meas.require_probability()
        with pytest.raises(ValueError, match="mass"):
            models.model_from_spec(
                {"name": "m", "alpha": ["1"],
                 "aa_star_measure": {"atoms": [{"x": 1.0, "w": 0.7}]}}
            )

    def test_free_poisson_moments_are_catalan(self):
        meas = me.free_poisson(4096)
        assert meas.total_mass() == pytest.approx(1.0, abs=1e-12)
        for n in range(1, 7):
            assert meas.moment(n) == pytest.approx(nc.catalan(n), rel=1e-10)

    def test_chebyshev_grid_weights(self):
        grid, weights = me.chebyshev_grid(0.0, 2.0, 256)
        assert np.all(np.diff(grid) > 0)
        assert 0.0 < grid[0] and grid[-1] < 2.0
        # sin-weights integrate the semicircle shape exactly-ish
        assert np.sum(weights * np.sqrt(grid * (2 - grid))) == pytest.approx(
            np.pi / 2, rel=1e-6
        )


class TestBuiltinModels:
    def test_circular(self, circular_model):
        assert circular_model.alpha[0] == 1
        assert all(a == 0 for a in circular_model.alpha[1:])
        assert circular_model.r_mu_closed_form
        assert circular_model.v == 1

    def test_haar_alphas_are_signed_catalans(self, haar_model):
        got = list(haar_model.alpha[:6])
        want = [(-1) ** n * nc.catalan(n) for n in range(6)]
        assert got == want

    def test_two_atom_model(self, two_atom_model):
        assert two_atom_model.alpha[:5] == (1, 0, -1, 2, -1)
        assert two_atom_model.mu_even_cumulants[:4] == (1, 0, -1, 2)
        assert two_atom_model.aa_star_measure.moment(1) == 1.0

    def test_unknown_builtin(self):
        with pytest.raises(ValueError):
            models.builtin_model("bogus")


class TestModelSpecJson:
    def test_builtin_passthrough(self):
        model = models.model_from_spec({"builtin": "haar"})
        assert model.name == "haar"

    def test_custom_model(self, tmp_path):
        spec = {
            "name": "two-atom-custom",
            "alpha": ["1", "0", "-1", "2", "-1"],
            "mu_even_cumulants": ["1", "0", "-1", "2", "-1"],
            "aa_star_measure": {"atoms": [{"x": 0.0, "w": 0.5}, {"x": 2.0, "w": 0.5}]},
        }
        path = tmp_path / "model.json"
        path.write_text(json.dumps(spec))
        model = models.load_model(str(path))
        assert model.name == "two-atom-custom"
        assert model.alpha == (1, 0, -1, 2, -1)
        assert model.v == 1

    def test_fraction_strings(self):
        model = models.model_from_spec({"name": "q", "alpha": ["1", "-3/4"]})
        assert model.alpha[1] == Fraction(-3, 4)

    def test_inconsistent_measure_rejected(self):
        spec = {
            "name": "broken",
            "alpha": ["1", "0"],
            "aa_star_measure": {"atoms": [{"x": 3.0, "w": 1.0}]},
        }
        with pytest.raises(ValueError, match="mismatch"):
            models.model_from_spec(spec)

    def test_bad_rational_rejected(self):
        with pytest.raises(ValueError):
            models.model_from_spec({"name": "q", "alpha": [1.5]})

    def test_load_model_builtin_name(self):
        assert models.load_model("circular").name == "circular"

    def test_density_grid_measure(self):
        # user-supplied quadrature grid for a a*: a crude free Poisson stand-in
        grid, weights = me.chebyshev_grid(0.0, 4.0, 512)
        rho = np.sqrt((4.0 - grid) / grid) / (2.0 * np.pi)
        spec = {
            "name": "gridded",
            "alpha": ["1", "0"],
            "aa_star_measure": {
                "density_grid": {
                    "t": list(grid),
                    "rho": list(rho),
                    "weights": list(weights),
                }
            },
        }
        model = models.model_from_spec(spec)
        assert model.aa_star_measure.total_mass() == pytest.approx(1.0, abs=1e-9)
        assert model.aa_star_measure.moment(2) == pytest.approx(2.0, rel=1e-8)

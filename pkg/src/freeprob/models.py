"""Built-in operator models and JSON ingestion.

Three stock models exercise the distinct regimes:

* ``circular``  -- alpha = (1, 0, 0, ...), modulus is semicircular so its
  R-transform is exactly z; a a* is free Poisson.  v = 1.
* ``haar``      -- a a* = delta_1, v = 0: the degenerate case the norm
  asymptotics exclude.
* ``two-atom``  -- a a* = (delta_0 + delta_2)/2: same v = 1 as circular but
  different higher cumulants, separating the two in asymptotic tests.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import cumulants as cu
from . import measures as me

DEFAULT_MODEL_ORDER = 8

BUILTIN_NAMES = ("circular", "haar", "two-atom")


def _mu_cumulants_from_aa_star_moments(aa_moments: list[Fraction], count: int) -> list[Fraction]:
    """Even cumulants of the symmetrized modulus from phi((a a*)^n).

    The symmetrization has vanishing odd moments and m_{2n} = phi((a a*)^n),
    so the even cumulants drop out of the ordinary triangular solve.
    """
    interleaved: list[Fraction] = []
    for n in range(1, count + 1):
        interleaved.extend([Fraction(0), Fraction(aa_moments[n - 1])])
    kappas = cu.cumulants_from_moments(interleaved)
    return [kappas[2 * n - 1] for n in range(1, count + 1)]


def circular_model(order: int = DEFAULT_MODEL_ORDER, measure_points: int = 4096) -> cu.OperatorModel:
    alpha = [Fraction(1)] + [Fraction(0)] * (order - 1)
    mu = [Fraction(1)] + [Fraction(0)] * (order - 1)  # semicircle: kappa_2 only
    return cu.OperatorModel(
        name="circular",
        alpha=tuple(alpha),
        mu_even_cumulants=tuple(mu),
        aa_star_measure=me.free_poisson(measure_points),
        r_mu_closed_form=True,
    )


def haar_model(order: int = DEFAULT_MODEL_ORDER) -> cu.OperatorModel:
    aa_moments = [Fraction(1)] * order
    alpha = cu.alpha_from_aa_star_moments(aa_moments)
    mu = _mu_cumulants_from_aa_star_moments(aa_moments, order)
    return cu.OperatorModel(
        name="haar",
        alpha=tuple(alpha),
        mu_even_cumulants=tuple(mu),
        aa_star_measure=me.SpectralMeasure.from_atoms([(1.0, 1.0)]),
    )


def two_atom_model(order: int = DEFAULT_MODEL_ORDER) -> cu.OperatorModel:
    aa_moments = [Fraction(2) ** (n - 1) for n in range(1, order + 1)]
    alpha = cu.alpha_from_aa_star_moments(aa_moments)
    mu = _mu_cumulants_from_aa_star_moments(aa_moments, order)
    return cu.OperatorModel(
        name="two-atom",
        alpha=tuple(alpha),
        mu_even_cumulants=tuple(mu),
        aa_star_measure=me.SpectralMeasure.from_atoms([(0.0, 0.5), (2.0, 0.5)]),
    )


_BUILDERS = {"circular": circular_model, "haar": haar_model, "two-atom": two_atom_model}


def builtin_model(name: str, order: int = DEFAULT_MODEL_ORDER) -> cu.OperatorModel:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown builtin model {name!r}; choose from {BUILTIN_NAMES}")
    return builder(order)


def _parse_fraction(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise ValueError(f"exact rationals must be 'p/q' strings or integers, got {s!r}")


def model_from_spec(spec: dict) -> cu.OperatorModel:
    """Build an OperatorModel from the JSON model schema.

    Schema: {"name": str, "builtin": optional str, "alpha": ["p/q", ...],
             "mu_even_cumulants": optional list, "aa_star_measure": optional
             {"atoms": [{"x": float, "w": float}, ...],
              "density_grid": optional {"t": [...], "rho": [...],
                                        "weights": [...]}}}.
    """
    if "builtin" in spec:
        return builtin_model(spec["builtin"])
    name = spec.get("name", "custom")
    alpha = tuple(_parse_fraction(a) for a in spec["alpha"])
    mu = spec.get("mu_even_cumulants")
    if mu is not None:
        mu = tuple(_parse_fraction(k) for k in mu)
    measure = None
    meas_spec = spec.get("aa_star_measure")
    if meas_spec is not None:
        atoms = tuple((float(a["x"]), float(a["w"])) for a in meas_spec.get("atoms", []))
        grid_spec = meas_spec.get("density_grid")
        if grid_spec is not None:
            measure = me.SpectralMeasure(
                atoms=atoms,
                grid=grid_spec["t"],
                density=grid_spec["rho"],
                weights=grid_spec["weights"],
                quadrature="user-grid",
            ).require_probability()
        else:
            measure = me.SpectralMeasure.from_atoms(atoms).require_probability()
    model = cu.OperatorModel(
        name=name, alpha=alpha, mu_even_cumulants=mu, aa_star_measure=measure
    )
    model.check_measure_consistency()
    return model


def load_model(path_or_name: str) -> cu.OperatorModel:
    """Builtin name, or path to a model-spec JSON file."""
    if path_or_name in _BUILDERS:
        return builtin_model(path_or_name)
    with open(path_or_name) as fh:
        return model_from_spec(json.load(fh))

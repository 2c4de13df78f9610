"""Reaction-diffusion toolkit for mosquito invasion and dengue dispersion.

Covers parameter nondimensionalization and the basic offspring/reproduction
numbers, equilibrium and linear stability analysis, minimum traveling-wave
speeds from the front dispersion relation, direct PDE simulation with
empirical front-speed measurement, and numerical verification of the model
family's point symmetries.
"""

__version__ = "0.1.0"

from .dynamics import (FIELD_NAMES, WAVE_FIELD_NAMES, HomogState, ModelVariant,
                       WaveState, homog_rhs, pde_rhs, travelwave_rhs)
from .errors import (AdmissibilityError, BracketingError, ConfigError,
                     DegenerateDiffusionError, DegenerateProfileError,
                     DivergenceError, DomainError, NoFrontError,
                     NoSolutionError, StiffnessError, TruncationError,
                     UnsupportedVariantError)
from .params import (DAYS_PER_YEAR, Config, DimensionalParams, Indicators,
                     NondimParams, PRESET_NAMES, basic_offspring_number,
                     basic_offspring_number_family, basic_reproduction_number,
                     config_text, load_config, mu2_for_unit_offspring,
                     nondimensionalize, parse_config, preset, speed_scale,
                     with_unit_offspring)
from .pdesim import (FrontTrace, SimConfig, SimResult, Trajectory,
                     integrate_homog, integrate_profile, saturated_coexistence,
                     simulate_front)
from .stability import (EquilibriaResult, EquilibriumDescriptor,
                        EquilibriumFamily, MosquitoSpectrumReport, Spectrum,
                        StabilityReport, char_factors_homog, classify,
                        dense_spectrum, equilibria, homog_spectrum,
                        jacobian_homog, match_spectra, mosquito_endemic_point,
                        mosquito_free_point, mosquito_jacobian,
                        mosquito_jacobian_spectrum, mosquito_ray_point,
                        routh_hurwitz_quadratic, wave_endemic_point,
                        wave_free_point)
from .symmetry import (CATALOG, EquivarianceReport, FieldSet, Grid,
                       ResidualSample, SymmetryGenerator, apply_group,
                       check_equivariance, generator, infinitesimals,
                       pointwise_ratios, residual)
from .wavespeed import (DENGUE_DISPERSION, MOSQUITO_INVASION, CubicPoly,
                        SweepTable, WaveSpeedResult, cubic_phat,
                        dispersion_curve, dispersion_speed, min_wave_speed,
                        sweep_vstar, wave_jacobian, wave_spectrum)

__all__ = [name for name in dir() if not name.startswith("_")]

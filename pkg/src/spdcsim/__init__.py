"""Simulator for spatially structured SPDC.

A 405 nm pump shaped by a triple slit is imaged into a BBO crystal; the
package computes the joint signal-idler coincidence map of the resulting
photon pairs, its Pearson correlation with bootstrap uncertainty, and
parameter sweeps over the slit and crystal geometry.
"""

from .biphoton import (
    CoincidenceMap,
    DetectorScan,
    coincidence_map,
    point_weight,
    singles_profile,
)
from .config import RunConfig, config_from_dict, load_config
from .dispersion import (
    BBO,
    SellmeierSet,
    n_e_angle,
    n_extraordinary_principal,
    n_ordinary,
)
from .imaging import LensSpec, field_through_crystal, transfer_field, transfer_kernel
from .phasematch import (
    CrystalSpec,
    PhaseMismatch,
    collinear_mismatch,
    delta_k,
    find_collinear_angle,
    sinc_weight,
)
from .pipeline import build_pump, simulate
from .pump import (
    PumpSpec,
    SampledField,
    SlitSpec,
    analytic_profile,
    load_measured_profile,
)
from .stats import CorrelationResult, bootstrap_sigma, pearson
from .sweeps import SweepResult, SweepSpec, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BBO",
    "CoincidenceMap",
    "CorrelationResult",
    "CrystalSpec",
    "DetectorScan",
    "LensSpec",
    "PhaseMismatch",
    "PumpSpec",
    "RunConfig",
    "SampledField",
    "SellmeierSet",
    "SlitSpec",
    "SweepResult",
    "SweepSpec",
    "analytic_profile",
    "bootstrap_sigma",
    "build_pump",
    "coincidence_map",
    "collinear_mismatch",
    "config_from_dict",
    "delta_k",
    "field_through_crystal",
    "find_collinear_angle",
    "load_config",
    "load_measured_profile",
    "n_e_angle",
    "n_extraordinary_principal",
    "n_ordinary",
    "pearson",
    "point_weight",
    "run_sweep",
    "simulate",
    "sinc_weight",
    "singles_profile",
    "transfer_field",
    "transfer_kernel",
]

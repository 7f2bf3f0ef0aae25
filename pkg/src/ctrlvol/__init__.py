"""Volume and shape factors of the controllability ellipsoid of
single-input linear discrete-time systems with distinct eigenvalues."""
from .analytic import (
    VolumeReport,
    analytic_volume,
    cauchy_determinant,
    hypersphere_coefficient,
    volume_complex,
    volume_diagonal,
    volume_general,
)
from .eigensolve import decompose, to_diagonal_form
from .factors import (
    EvennessReport,
    axis_half_length,
    build_evenness_report,
    conjugate_pair_factor,
    evenness_factor,
    pairwise_factor,
)
from .geometry import BoxReport, PlotData, circumscribed_box, principal_radii, sample_boundary
from .grammian import closed_form_finite, finite_series, infinite_grammian, transform_grammian
from .model import (
    CtrlVolError,
    DiagonalForm,
    GrammianResult,
    LdtSystem,
    Spectrum,
    load_system,
    validate_system,
)
from .polesearch import evenness_landscape, maximize_evenness

__version__ = "0.1.0"

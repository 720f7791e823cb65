"""Holomorphic Poisson spectral sequences of nilmanifolds, at the invariant level."""

from .scalars import GaussianRational, gr
from .algebra import (ComplexifiedAlgebra, ComplexPresentation, RealLieAlgebraSpec,
                      ValidationReport, bracket, complexify, realify, validate)
from .exterior import SparseElement, contract, enumerate_basis, wedge
from .calculus import (PoissonCandidate, ad_lambda, check_holomorphic_poisson, dbar,
                       partial, phi, schouten)
from .spectral import (DoubleComplex, SpectralPage, build, d2_by_chasing, degeneracy_page,
                       frolicher, page_map, pages, total_cohomology)
from .catalog import (CatalogEntry, h_times_h, h_times_r, iwasawa, kodaira, p_family,
                      sample_poisson, torus, w_family)
from .errors import *  # noqa: F401,F403

# the operator named in the literature as "del"
del_ = partial

__version__ = "0.1.0"

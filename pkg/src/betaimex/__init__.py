"""Shifted BDF/IMEX multistep schemes with stability and multiplier tooling."""

__version__ = "0.1.0"

from .coeffs import (SchemeCoefficients, closed_form, eta,
                     exact_scheme_coefficients, scheme_coefficients, solve_a,
                     solve_b, solve_c, split_d)
from .certificates import (CertificateReport, certificate_polynomials,
                           classical_condition, stability_condition,
                           verify_certificate, verify_k5_range)
from .integrate import (BlowUpError, IntegratorState, ProblemSpec,
                        TrajectorySummary, initialize, run, step)
from .polynomials import (RealPolynomial, min_on_interval, roots,
                          sylvester_resultant)
from .stability import StabilityGrid, characteristic_coeffs, is_stable, scan_region
from .telescoping import (TelescopingCertificate, telescoping_coefficients,
                          telescoping_identity_check)

__all__ = [
    "__version__",
    "BlowUpError", "CertificateReport", "IntegratorState", "ProblemSpec",
    "RealPolynomial", "SchemeCoefficients", "StabilityGrid",
    "TelescopingCertificate", "TrajectorySummary",
    "certificate_polynomials", "characteristic_coeffs", "classical_condition",
    "closed_form", "eta", "exact_scheme_coefficients", "initialize",
    "is_stable", "min_on_interval", "roots", "run", "scan_region",
    "scheme_coefficients", "solve_a", "solve_b", "solve_c", "split_d",
    "stability_condition", "step", "sylvester_resultant",
    "telescoping_coefficients", "telescoping_identity_check",
    "verify_certificate", "verify_k5_range",
]

"""Multivariable Askey-Wilson polynomials with quadrature-certified orthogonality."""

from .errors import (BudgetExceeded, DivisionByZero, DomainError, InvalidParams, NonConvergence,
                     NumericalError, QAskeyError)
from .qcore import (ParameterChain, as_multi_index, index_sum, qpochhammer, qpochhammer_inf,
                    qpochhammer_multi)
from .basic_hyper import TerminatingSeriesSpec, eval_terminating_phi, phi
from .askey_wilson import (AWParams, Specialization, asc_poly, aw_norm, aw_poly, aw_theta_weight,
                           aw_weight, dual_qhahn_poly, q_hahn_poly, specialize)
from .multivar import (Family, FamilySpec, mv_norm, mv_poly, mv_theta_weight, mv_weight,
                       permute_29, tilde_from_permutation)
from .quadrature import (GramReport, QuadratureGrid, gram, integrate_theta, multi_indices,
                         pairwise_sum, verify_partial_integral)

__version__ = "0.1.0"

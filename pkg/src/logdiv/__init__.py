"""Exact workbench for logarithmic derivations of free divisors.

The library computes Saito bases and their Lie structure, works inside the
enveloping algebra of the corresponding Lie-Rinehart algebra and inside the
Weyl algebra, builds logarithmic Spencer complexes with their twists, and
produces the finitary certificates (determinant, Koszul, degree -1
obstruction) attached to these objects.
"""

from .derivations import (Divisor, FreenessCertificate, FreenessUndetermined,
                          LogDerivation, LogFrame, bracket,
                          derivation_generators, express_in_basis,
                          is_logarithmic, koszul_test, lie_derivative_topform,
                          saito_test, search_frame)
from .enveloping import (LieRinehartData, UElement, nu_closed_form, nu_eval,
                         to_weyl, u_commutator, u_mul, u_mul_alt)
from .errors import (AmbientMismatch, DenominatorEscape, IntegrabilityViolation,
                     InvalidArgument, InvalidDivisor, LogdivError, NotInSpan,
                     ParseError, ShapeError)
from .groebner import (GroebnerBasis, SyzygyResult, buchberger, colon_ideal,
                       dimension, is_regular_sequence, normal_form, syzygies)
from .ring import (DEGREVLEX, LEX, MonomialOrder, Poly, PolyRing, PolyVec, det,
                   poly_gcd, squarefree_check)
from .spencer import (CertificateReport, ComplexPresentation, Connection,
                      h1_certificate, induce_to_weyl, presentation_generators,
                      spencer_complex, spencer_complex_twisted)
from .weyl import (WeylOp, apply_to_fraction, parse_operator, principal_symbol,
                   symbol_ring, weyl_mul, weyl_order)

__version__ = "0.1.0"

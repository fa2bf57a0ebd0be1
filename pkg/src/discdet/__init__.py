"""Discriminants of homogeneous forms and the quadratic character they predict.

Modules: ``algebra`` (exact rings and fields), ``forms`` (sparse homogeneous
polynomials), ``resultant`` (Macaulay resultants), ``discriminant``,
``char2`` (Artin-Schreier classes via mod-8 lifts), ``enumeration`` and
``zeta`` (point counts and det(Frobenius)), ``corpus`` and ``cli``.
"""
from .algebra import QQ, ZZ, FieldSpec, LiftRing, build_extension, crt_reconstruct, field_trace, is_square
from .char2 import artin_schreier_class, mod4_square_class, sylvester_char2_bit
from .discriminant import (discriminant_report, epsilon, find_singular_point, salmon_disc,
                           topology_sign)
from .forms import HomogeneousForm, SylvesterCoefficients, format_form, parse_form, sylvester_form
from .resultant import macaulay_resultant
from .zeta import (count_points, frobenius_sign_binary, predicted_character,
                   verify_determinant_theorem, zeta_report)

__version__ = "0.1.0"

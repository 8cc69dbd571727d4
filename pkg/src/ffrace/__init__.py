"""Exact prime races in F_q[T].

Counts monic irreducibles per congruence class three independent ways
(exhaustive sieve, L-function explicit formula, GL2 bijection transport),
discovers and certifies ties, and reproduces the reference tables exactly.
"""

__version__ = "0.1.0"

from .field import FieldSpec, field_make, parse_field
from .polyring import (Poly, Factorization, enumerate_monic, factorize,
                       format_poly, is_irreducible, parse_poly, poly_gcd)
from .cyclo import CycloNum, cyclotomic_poly
from .characters import Character, UnitGroup, all_characters, char_value, \
    unit_group
from .sieve import (CountTable, cumulative_count, sieve_count,
                    sieve_count_nonmonic, weighted_count)
from .lfunc import (LPolynomial, find_conjugate_relations, l_polynomial,
                    power_sums, verify_power_sums_vs_sieve)
from .explicit import (ExplicitCounter, bias_report, explicit_count,
                       mobius_helpers, pi_g_decomposition, s_value,
                       zmatrix_inverse)
from .gl2 import (Mat2, TieCertificate, certify_ties, slash_action,
                  stabilizer_search, verify_certificate_empirically)
from .report import check_cumulative_ties, detect_tie_patterns, emit_table

"""Exact elementary and symplectic group computations with certificates.

Rings (``ZZ``, ``QQ``, ``Z/m``, polynomial rings, localizations), dense exact
matrices with determinants and Pfaffians, generator words, Vaserstein's
``alpha``/``beta`` generators, Rao–Swan symplectization, reduction of
alternating forms, and verifiers for the local–global patching identities.
"""

from .certificates import Certificate, Check, certify, recheck
from .errors import EphiError
from .forms import AlternatingForm, form_decompose, is_in_sp, standard_form
from .localglobal import (
    CoverSpec,
    dilation_verify,
    quillen_patch_verify,
    specialize_t,
    swan_weibel_homogenize,
)
from .matrix import Matrix, block_diag, congruence, determinant, is_alternating, one_perp, pfaffian, psi
from .membership import certify_membership, certify_relative
from .raoswan import rao_swan_congruate, rao_swan_symplectize
from .reduction import alternating_reduce, express_in_ephi, gauss_factor, whitehead_factors
from .rings import (
    QQ,
    ZZ,
    IntegersMod,
    LocalizedRing,
    PolynomialRing,
    RingElement,
    is_unit,
    localize_map,
    localized_eq,
    poly_substitute,
    polynomial_ring,
)
from .vaserstein import (
    alpha,
    beta,
    c_mat,
    elem_word_to_alphabeta,
    r_mat,
    transport_generator,
    translate_elem,
)
from .words import (
    Alpha,
    Beta,
    ColBlock,
    Conjugated,
    Elem,
    GeneratorWord,
    IdealSpec,
    Inverse,
    RowBlock,
    SymplElem,
    conjugation_normal_form,
    decompose_elem_to_rowcol,
    elem_word,
    evaluate_word,
    relative_word_check,
    se_generator,
    word_inverse,
)

__version__ = "0.1.0"

"""Exact kernel for the free Rota-Baxter system on a set.

The package normalizes operator words onto the Rota-Baxter-system word
basis, computes the induced diamond product, mechanically verifies that
the defining relations form a Gröbner-Shirshov basis at bounded degree,
and implements the left counital Hopf structure (coproduct, counit,
grading, right antipode) carried by the word basis.
"""

from .algebra import (
    Poly,
    Scalar,
    TensorPoly,
    add,
    apply_operator_linear,
    concat_mul,
    scale,
    tensor_add,
    tensor_map,
    tensor_of,
    tensor_scale,
)
from .gsb import (
    CompositionRecord,
    GsbReport,
    MonicElement,
    check_trivial,
    find_inclusion_compositions,
    find_intersection_compositions,
    instantiate_relations,
    irreducibles,
    mutated_system,
    relation,
    verify_gsb,
)
from .hopf import (
    ConnectednessError,
    HopfReport,
    LinearEndomap,
    antipode,
    antipode_poly,
    convolve,
    coproduct,
    coproduct_poly,
    counit,
    graded_parts,
    graded_slice,
    tensor_diamond,
    tensor_graded_slice,
    unit_map,
    verify_hopf,
)
from .ordering import (
    Ordering,
    compare_primes,
    compare_words,
    is_monic,
    leading_word,
    word_sort_key,
)
from .rewriting import (
    NotBasisWordError,
    ReductionSystem,
    ReductionTrace,
    RuleMatch,
    basis_words,
    diamond,
    diamond_poly,
    find_redex,
    is_rbs_word,
    normal_form,
    normal_form_traced,
    rewrite_redex,
    standard_system,
)
from .syntax import (
    ParseError,
    format_poly,
    format_tensor,
    format_word,
    parse,
    parse_poly,
    parse_star_word,
    parse_word,
)
from .terms import (
    STAR,
    UNIT,
    Generator,
    OpApp,
    Signature,
    SignatureError,
    StarWord,
    Word,
    breadth,
    degree,
    depth,
    enumerate_star_words,
    enumerate_words,
    find_subword_contexts,
    substitute,
)

__version__ = "0.1.0"

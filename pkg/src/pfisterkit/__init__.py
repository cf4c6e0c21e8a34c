"""Pfister forms, local and global isotropy, nice forms, test forms and valuation recipes."""

__version__ = "0.1.0"

from .errors import PfisterError  # noqa: E402,F401
from .fields import QQ, parse_element, parse_field  # noqa: E402,F401
from .finite_field import FiniteField  # noqa: E402,F401
from .hilbert import hilbert_symbol, product_formula_check  # noqa: E402,F401
from .lgp import divisor_witness_search, isotropy_global, relevant_places  # noqa: E402,F401
from .local_fields import LaurentField, Qp, Reals  # noqa: E402,F401
from .nice import ExtensionDescriptor, nice_check, nice_construct  # noqa: E402,F401
from .quadforms import (Char2Form, DiagForm, IsotropyVerdict, PfisterPresentation, expand,  # noqa: E402,F401
                        isotropy_local, pfister_expand, pfister_expand_char2, springer_decompose)
from .recipe import recipe_ideal, recipe_stabilizer, recipe_verify, rt_member, rt_witness  # noqa: E402,F401
from .testforms import build_test_form, keyprop_check, recheck  # noqa: E402,F401
from .valuations import (CompositeValuation, PolyValuation, compose_vals, hensel_witness,  # noqa: E402,F401
                         val_eval)

"""Interval monoids, presented monoids and multifraction reduction."""

from .errors import *  # noqa: F401,F403
from .interval import IntervalMonoid
from .multifraction import (Answer, Multifraction, Verdict, apply_reduction, applicable_reductions,
                            is_irreducible, is_proper_piece, max_reduction_at, mf_equivalent, mf_format,
                            mf_inverse, mf_parse, mf_product, reduce_search, three_ore_witness, unital)
from .poset import Poset, build_poset, check_suffnc1, cone_point, is_local_lattice, make_standard
from .presented import Presentation, PresentedMonoid, make_presentation, parse_presentation
from .zigzag import F, Zigzag, enumerate_simple_closed, make_zigzag, semiconv_certificate, zigzag_reducible

__version__ = "0.1.0"

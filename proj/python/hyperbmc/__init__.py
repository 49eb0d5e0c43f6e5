"""Bounded model checking of forall-exists / exists-forall G-predicate hyperproperties."""

import json as _json

from ._hyperbmc import (
    BackendError,
    BoundError,
    DecodeError,
    EmptyProductError,
    FragmentError,
    HyperbmcError,
    ModelError,
    ParseError,
    SoundnessError,
    UnknownOperatorError,
    bench,
    parse_kripke,
    parse_property,
    print_kripke,
)
from . import _hyperbmc

EXIT_CODES = {"holds": 0, "violated": 1, "unknown": 2}


def check(left, right, prop="", *, prop_text="", **options):
    """Run a check and return the report as a dict.

    Options mirror the command line: mode ("ae"/"ea"), prophecy
    ("next:<prop>:<d>"), prophecy_file, max_bound, max_depth, backend,
    slots ("enumerated"/"symbolic"), slot_order, restrict_reachable.
    """
    return _json.loads(_hyperbmc.check_json(str(left), str(right), str(prop), prop_text, **options))


def export_encoding(left, right, bound, prop="", *, prop_text="", **options):
    """Return (dimacs_text, variable_map_dict) for one bound."""
    dimacs, var_map = _hyperbmc.export_encoding(str(left), str(right), bound, str(prop), prop_text, **options)
    return dimacs, _json.loads(var_map)


__all__ = [
    "BackendError",
    "BoundError",
    "DecodeError",
    "EmptyProductError",
    "EXIT_CODES",
    "FragmentError",
    "HyperbmcError",
    "ModelError",
    "ParseError",
    "SoundnessError",
    "UnknownOperatorError",
    "bench",
    "check",
    "export_encoding",
    "parse_kripke",
    "parse_property",
    "print_kripke",
]

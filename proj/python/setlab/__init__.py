"""Symbolic laboratory for finite constructible levels.

The heavy lifting lives in the compiled ``_core`` module; this package
re-exports it under stable names.  Formulas are passed as text in the
surface grammar and sets as literals such as ``{∅, {∅}}`` or ``#2``.
"""

from ._core import (
    SetlabError,
    build_level,
    classify,
    comp_sentence,
    compile_d0,
    engine_version,
    exists_sentence,
    height,
    kleene,
    least_witness_level,
    model_check,
    normalize,
    parse,
    relativize,
    run_srm,
    sigma0_truth,
    spectrum,
    successor,
)

__all__ = [
    "SetlabError",
    "build_level",
    "classify",
    "comp_sentence",
    "compile_d0",
    "engine_version",
    "exists_sentence",
    "height",
    "kleene",
    "least_witness_level",
    "model_check",
    "normalize",
    "parse",
    "relativize",
    "run_srm",
    "sigma0_truth",
    "spectrum",
    "successor",
]

__version__ = engine_version()

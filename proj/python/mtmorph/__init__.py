"""Multi-tape two-level morphology: rule interpreter, lexicon and morphotactics."""

from ._mtmorph import (  # noqa: F401
    Grammar,
    LimitExceeded,
    Lexicon,
    ParseError,
    UnknownSymbolError,
    analyze,
    builtin_grammar,
    builtin_lexicon,
    builtin_single_tape_grammar,
    enumerate_surfaces,
    generate,
    mode_features,
    parse_grammar,
    parse_lexicon,
    synthesize,
    unify,
)

__all__ = [
    "Grammar",
    "LimitExceeded",
    "Lexicon",
    "ParseError",
    "UnknownSymbolError",
    "analyze",
    "builtin_grammar",
    "builtin_lexicon",
    "builtin_single_tape_grammar",
    "enumerate_surfaces",
    "generate",
    "mode_features",
    "parse_grammar",
    "parse_lexicon",
    "synthesize",
    "unify",
]

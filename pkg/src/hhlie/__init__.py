"""First Hochschild cohomology of quiver algebras as a Lie algebra.

Typical use::

    from hhlie import parse, analyze
    rep = analyze(parse(open("kx3.alg").read()))
    rep["hh1"]["dim"], rep["lie"]["solvable"]
"""

from .algebra import Path, PathSum, Presentation, Quiver, make_presentation, validate
from .app import analyze
from .cohomology import CochainComplex, HH1Space, hh1, hh1_rad, sigma
from .corpus import FAMILIES, FamilySpec, default_corpus, gen
from .criteria import Analysis, all_criteria, check_soundness
from .errors import CriterionContradiction, HHLieError, InputError, ParseError
from .fileformat import dump, parse, parse_file
from .lie import LieAlgebra, LieReport, hh1_lie, report
from .linalg import Field
from .oracle import hh1_direct
from .rewriting import QuiverAlgebra, truncate

__version__ = "0.1.0"

__all__ = [
    "Path", "PathSum", "Presentation", "Quiver", "make_presentation", "validate",
    "analyze", "CochainComplex", "HH1Space", "hh1", "hh1_rad", "sigma", "FAMILIES",
    "FamilySpec", "default_corpus", "gen", "Analysis", "all_criteria", "check_soundness",
    "CriterionContradiction", "HHLieError", "InputError", "ParseError", "dump", "parse",
    "parse_file", "LieAlgebra", "LieReport", "hh1_lie", "report", "Field", "hh1_direct",
    "QuiverAlgebra", "truncate", "__version__",
]

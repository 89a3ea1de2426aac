"""Python front end to the nearhol C++ core."""

import json

from . import _core
from ._core import (
    DomainError,
    ParameterError,
    UnsupportedError,
    run_cli,
    selberg_integral,
    structure_constants,
)

__all__ = [
    "DomainError",
    "ParameterError",
    "UnsupportedError",
    "conjecture",
    "run_cli",
    "selberg_integral",
    "spectrum",
    "structure_constants",
    "verify",
]


def spectrum(space, bundle="line:0", cutoff=4):
    """K-type table of polynomial sections, as the nearhol.table/1 JSON document."""
    return json.loads(_core.spectrum_json(space, bundle, cutoff))


def verify(space, suite="all", seed=1):
    """Runs a verification suite and returns the nearhol.verify/1 report."""
    return json.loads(_core.verify_json(space, suite, seed))


def conjecture(space, bundle="line:0", cutoff=4):
    """Degree-criterion scan, as the nearhol.conjecture/1 report."""
    return json.loads(_core.conjecture_json(space, bundle, cutoff))

"""Branch points and monodromy of rational maps of the sphere."""

from .examples import Example, ExampleReport, load_examples, verify_bundled, verify_example
from .parse import ParseError, parse_fraction
from .qpoly import QPoly, discriminant, interpolate, poly_gcd, resultant, squarefree_decomposition
from .rational import (
    BranchPoint,
    DegenerateFunctionError,
    InfinityFiber,
    MonodromyError,
    NumericalError,
    RationalFunction,
    critical_values,
    discriminant_in_t,
    fiber_at_infinity,
)
from .tracking import (
    BranchCycleDescription,
    MonodromyConfig,
    TrackingError,
    choose_base_point,
    monodromy,
)

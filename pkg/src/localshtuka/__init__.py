"""Semilinear algebra over truncated Laurent series with finite-field
coefficients: local shtukas, Newton and Hodge polygons, affine
Deligne-Lusztig point sets and a norm-one torus."""

from .errors import (BudgetExceededError, NeronModelError, NotEtaleError,
                     NotInvertibleError, NotQuasiIsogenyError, PrecisionError,
                     ShtukaError)
from .fields import FieldSpec, default_modulus
from .rings import DualNumbers, FiniteFieldRing, NilpotentRing, finite_field
from .series import ZERO_TO_PRECISION, Series, TruncatedLaurentSeries
from .semilinear import (BoundSpec, Coweight, LoopElement, bounded_by, exterior_power,
                         relative_position, smith_form)
from .shtuka import (LocalShtuka, QuasiIsogeny, TateModule, is_etale, is_quasi_isogeny,
                     lang_trivialize, lift_qisog_dual_numbers, rational_tate_of_qisog,
                     tate_module, transport)
from .newton import (SlopeVector, check_decency, in_Jb, kottwitz_gl, newton_slopes,
                     twisted_power)
from .adlv import (AdlvResult, Lattice, adlv_points, ball, canonical_lattice,
                   enumerate_lattices, metric_dtilde)
from .torus import (TorusElement, component, embedding_ratio, norm_mu_element,
                    torus_mul)

__version__ = "0.1.0"

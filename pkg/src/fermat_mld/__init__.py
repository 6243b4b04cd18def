"""Maximum likelihood degrees of Fermat hypersurfaces over prime fields."""

__version__ = "0.1.0"

from .polyring import Polynomial, Ring, MonomialOrder, PrimeField  # noqa: E402
from .groebner import Ideal, buchberger, degree_projective, saturate  # noqa: E402
from .partitions import Partition, enumerate_partitions  # noqa: E402
from .mldeg import EngineConfig, MLDegreeResult, cross_check, mldeg  # noqa: E402

__all__ = [
    "Polynomial", "Ring", "MonomialOrder", "PrimeField",
    "Ideal", "buchberger", "degree_projective", "saturate",
    "Partition", "enumerate_partitions",
    "EngineConfig", "MLDegreeResult", "cross_check", "mldeg",
]

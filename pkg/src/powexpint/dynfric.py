"""Velocity-space integrals from dynamical friction with a power-law mass spectrum.

    H(y) = a c**a (4/sqrt(pi)) int_c^inf r**-nu dr int_0^y t**2 exp(-r t**2) dt,
    c = 1 - 1/a.

Swapping the order of integration turns the inner r-integral into an
exponential integral, and after x = sqrt(c) t

    H(y) = a c**(a - nu - 1/2) (4/sqrt(pi)) I(2, 2, nu; sqrt(c) y).

H1 and H2 use nu = a - 3/2 and nu = a - 5/2.  I(2, 2, nu) exists iff
nu > -1/2, hence a > 1 for H1 and a > 2 for H2.
"""
import enum
import math
from dataclasses import dataclass

from .errors import DomainError, ExistenceError
from .integral_family import ParamTriple, check_domain, closed_form, reduced_form
from .special_core import gamma_lower

_LOG_FOUR_OVER_SQRT_PI = math.log(4.0) - 0.5 * math.log(math.pi)


class Family(enum.Enum):
    H1 = "H1"
    H2 = "H2"
    CUSTOM = "CUSTOM"


_OFFSETS = {Family.H1: 1.5, Family.H2: 2.5}
_MIN_A = {Family.H1: 1.0, Family.H2: 2.0}


@dataclass(frozen=True)
class HSpec:
    a: float
    family: Family = Family.H1
    y: float = 1.0
    custom_nu: float | None = None

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family.upper()))
        if self.family is Family.CUSTOM and self.custom_nu is None:
            raise DomainError("family CUSTOM needs custom_nu")
        if self.y < 0:
            raise DomainError(f"y must be >= 0, got {self.y!r}")

    @property
    def nu(self):
        if self.family is Family.CUSTOM:
            return self.custom_nu
        return self.a - _OFFSETS[self.family]

    @property
    def c(self):
        return 1.0 - 1.0 / self.a

    def triple(self):
        return ParamTriple(2.0, 2.0, self.nu)


def check_existence(spec):
    """Raise ExistenceError unless H exists for ``spec``."""
    if not spec.a > 1:
        raise ExistenceError(f"H requires a > 1 (c = 1 - 1/a in (0, 1)), got a={spec.a!r}")
    if not check_domain(spec.triple()).admissible:
        if spec.family is Family.CUSTOM:
            need = "nu > -1/2"
        else:
            need = f"a > {_MIN_A[spec.family]:g}"
        raise ExistenceError(
            f"{spec.family.value} requires {need} "
            f"(I(2, 2, nu) needs nu > -1/2; got a={spec.a!r}, nu={spec.nu!r})"
        )


def log_prefactor(spec):
    """log of a c**(a - nu - 1/2) 4/sqrt(pi)."""
    return math.log(spec.a) + (spec.a - spec.nu - 0.5) * math.log(spec.c) + _LOG_FOUR_OVER_SQRT_PI


def h_eval(spec, method="closed_form"):
    """H(y) for the given spec.

    ``method`` selects the closed form ("closed_form") or the reduced form
    ("reduced_form") of I(2, 2, nu); both are valid since 2 > mu - 1 = 1.
    """
    check_existence(spec)
    if spec.y == 0:
        return 0.0
    x = math.sqrt(spec.c) * spec.y
    if method == "closed_form":
        i = closed_form(spec.triple(), x).value
    elif method == "reduced_form":
        i = reduced_form(spec.triple(), x)
    else:
        raise ValueError(f"unknown method {method!r}")
    return i * math.exp(log_prefactor(spec))


def erf_from_gamma(z):
    """gamma(1/2, z) / sqrt(pi), which equals erf(sqrt(z))."""
    if z < 0:
        raise DomainError(f"erf_from_gamma needs z >= 0, got {z!r}")
    if z == 0:
        return 0.0
    return gamma_lower(0.5, z) / math.sqrt(math.pi)

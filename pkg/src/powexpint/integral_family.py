"""Closed form and algebraic identities for

    I(lam, mu, nu; z) = int_0^z x**lam E_nu(x**mu) dx,    mu > 0, z >= 0.

The integral exists iff lam > max(-1, -1 - mu (nu - 1)); then

    I = [gamma((1+lam)/mu, z**mu) + z**(1+lam) E_nu(z**mu)] / (1 + lam + mu (nu - 1)).
"""
import enum
import math
from dataclasses import dataclass

from .errors import DomainError, InadmissibleParametersError, SideConditionError
from .special_core import expint, gamma_complete, gamma_lower

# Above this z**mu the boundary term is below the smallest subnormal.
UNDERFLOW_ARGUMENT = 700.0


class Branch(enum.Enum):
    NU_GE_1 = "nu>=1"
    NU_LE_1 = "nu<1"


@dataclass(frozen=True)
class ParamTriple:
    lam: float
    mu: float
    nu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu!r}")

    @property
    def denominator(self):
        return 1.0 + self.lam + self.mu * (self.nu - 1.0)

    @property
    def gamma_order(self):
        return (1.0 + self.lam) / self.mu


@dataclass(frozen=True)
class DomainVerdict:
    admissible: bool
    binding_bound: float
    branch: Branch


@dataclass(frozen=True)
class ClosedFormResult:
    value: float
    gamma_term: float
    boundary_term: float
    denominator: float
    boundary_underflow: bool = False


def _triple(p):
    if isinstance(p, ParamTriple):
        return p
    return ParamTriple(*p)


def check_domain(p):
    """Existence verdict for the triple; the inequality on lam is strict."""
    p = _triple(p)
    shifted = -1.0 - p.mu * (p.nu - 1.0)
    bound = max(-1.0, shifted)
    branch = Branch.NU_GE_1 if p.nu >= 1 else Branch.NU_LE_1
    return DomainVerdict(p.lam > bound, bound, branch)


def require_admissible(p):
    p = _triple(p)
    verdict = check_domain(p)
    if not verdict.admissible:
        raise InadmissibleParametersError(
            f"integral diverges at x=0 for (lambda, mu, nu) = ({p.lam!r}, {p.mu!r}, {p.nu!r}): "
            f"need lambda > {verdict.binding_bound!r}",
            bound=verdict.binding_bound,
        )
    # Both follow from the bound; kept as checks against rounding at the edge.
    if not (p.denominator > 0 and p.gamma_order > 0):
        raise InadmissibleParametersError(
            f"denominator {p.denominator!r} or gamma order {p.gamma_order!r} not positive",
            bound=verdict.binding_bound,
        )
    return p


def _check_z(z):
    if z < 0:
        raise DomainError(f"z must be >= 0, got {z!r}")


def _boundary(p, z, zmu):
    return z ** (1.0 + p.lam) * expint(p.nu, zmu)


def closed_form(p, z):
    """Evaluate I(p; z) from the closed form, with its constituent terms."""
    p = require_admissible(p)
    _check_z(z)
    d = p.denominator
    if z == 0:
        return ClosedFormResult(0.0, 0.0, 0.0, d)
    if math.isinf(z):
        g = gamma_complete(p.gamma_order)
        return ClosedFormResult(g / d, g, 0.0, d, True)
    zmu = z ** p.mu
    g = gamma_lower(p.gamma_order, zmu)
    underflow = zmu >= UNDERFLOW_ARGUMENT
    b = 0.0 if underflow else _boundary(p, z, zmu)
    return ClosedFormResult((g + b) / d, g, b, d, underflow)


def integral(p, z):
    """Shorthand for ``closed_form(p, z).value``."""
    return closed_form(p, z).value


def transform_scaling(p, r):
    """Parameters p' with I(p; z) = I(p'; z**r) / r (substitution y = x**r)."""
    p = _triple(p)
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    q = ParamTriple((p.lam - r + 1.0) / r, p.mu / r, p.nu)
    if check_domain(p).admissible != check_domain(q).admissible:
        raise ArithmeticError(
            f"admissibility not preserved by r={r!r} for {p} -> {q} (rounding at the boundary)"
        )
    return q


def shifted_triple(p):
    """The triple (lam + mu, mu, nu - 1) appearing after integration by parts."""
    p = _triple(p)
    return ParamTriple(p.lam + p.mu, p.mu, p.nu - 1.0)


def _require_positive_z(z):
    if not z > 0:
        raise DomainError(f"z must be > 0, got {z!r}")


def reduce_by_parts(p, z):
    """I(p; z) through one integration by parts against x**lam:

    I = [z**(lam+1) E_nu(z**mu) + mu I(lam+mu, mu, nu-1; z)] / (lam + 1)
    """
    p = require_admissible(p)
    _require_positive_z(z)
    q = require_admissible(shifted_triple(p))
    zmu = z ** p.mu
    b = _boundary(p, z, zmu) if zmu < UNDERFLOW_ARGUMENT else 0.0
    return (b + p.mu * closed_form(q, z).value) / (p.lam + 1.0)


def ladder_identity_residual(p, z):
    """mu I(lam+mu, mu, nu-1) - gamma((1+lam)/mu, z**mu) + mu (nu-1) I(lam, mu, nu).

    Holds for every admissible triple, nu == 1 included.
    """
    p = require_admissible(p)
    _require_positive_z(z)
    q = require_admissible(shifted_triple(p))
    g = gamma_lower(p.gamma_order, z ** p.mu)
    return p.mu * closed_form(q, z).value - g + p.mu * (p.nu - 1.0) * closed_form(p, z).value


def reduced_form(p, z):
    """I(p; z) after one downward step on the incomplete gamma function.

    Valid only for lam > mu - 1, i.e. (1+lam)/mu > 1.
    """
    p = require_admissible(p)
    _require_positive_z(z)
    if not p.lam > p.mu - 1.0:
        raise SideConditionError(
            f"reduced form needs lambda > mu - 1 = {p.mu - 1.0!r}, got {p.lam!r}"
        )
    s1 = (1.0 + p.lam - p.mu) / p.mu
    zmu = z ** p.mu
    head = s1 * gamma_lower(s1, zmu)
    tail = 0.0
    if zmu < UNDERFLOW_ARGUMENT:
        tail = p.nu * z ** (1.0 + p.lam - p.mu) * expint(p.nu + 1.0, zmu)
    return (head - tail) / p.denominator


def small_z_leading(p, z):
    """Leading behaviour of I(p; z) as z -> 0+."""
    p = require_admissible(p)
    _require_positive_z(z)
    lam1 = p.lam + 1.0
    if p.nu > 1:
        return z ** lam1 / (lam1 * (p.nu - 1.0))
    if p.nu == 1:
        return -(p.mu / lam1) * z ** lam1 * math.log(z)
    d = p.denominator
    return gamma_complete(1.0 - p.nu) * z ** d / d


def region_boundary(nu, mu_grid):
    """[(mu, lambda_min)] along the edge of the existence region for fixed nu."""
    out = []
    for mu in mu_grid:
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu!r}")
        out.append((mu, max(-1.0, -1.0 - mu * (nu - 1.0))))
    return out

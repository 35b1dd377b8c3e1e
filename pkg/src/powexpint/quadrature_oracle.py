"""Independent numerical integration used to check the closed forms.

Nothing here may import :mod:`powexpint.integral_family` or
:mod:`powexpint.dynfric`; the layering test enforces this.

Two engines:

* ``tanh_sinh`` -- double-exponential rule for [a, b] with a possibly
  singular left endpoint (x**alpha, alpha > -1, or logarithmic).  Nodes are
  placed by their *distance* from ``a`` so that points within 1e-300 of the
  endpoint are represented exactly.
* ``gauss_kronrod`` -- globally adaptive 7/15-point Gauss-Kronrod with the
  |K15 - G7| difference as the (conservative) error estimate.
"""
import heapq
import math
from dataclasses import dataclass

from .errors import DivergenceError, DomainError, QuadratureError
from .special_core import expint, gamma_upper

# 15-point Kronrod nodes (x >= 0) and weights; Gauss 7-point weights at the
# odd-indexed Kronrod nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_TS_T_LO = -6.5
_TS_T_HI = 4.0
_TS_MIN_LEVEL = 3
_TS_MAX_LEVEL = 12
_MIN_DISTANCE = 1e-300
_MAX_PANELS = 5000


@dataclass(frozen=True)
class QuadratureSpec:
    """Oracle configuration.

    ``split_point`` is the end of the singular head segment in the variable
    actually integrated; ``None`` means min(0.1, upper/2).
    """

    rel_tol: float = 1e-10
    split_point: float | None = None
    max_depth: int = 40

    def __post_init__(self):
        if not 0 < self.rel_tol < 1e-3:
            raise ValueError(f"rel_tol must lie in (0, 1e-3), got {self.rel_tol!r}")
        if self.max_depth < 10:
            raise ValueError(f"max_depth must be >= 10, got {self.max_depth!r}")
        if self.split_point is not None and not self.split_point > 0:
            raise ValueError(f"split_point must be positive, got {self.split_point!r}")

    def split_for(self, upper):
        if self.split_point is None:
            return min(0.1, upper / 2.0)
        if not self.split_point < upper:
            raise ValueError(
                f"split_point {self.split_point!r} must be below the upper limit {upper!r}"
            )
        return self.split_point


@dataclass(frozen=True)
class OracleResult:
    value: float
    err_estimate: float
    panels_used: int
    singular_segment_value: float


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        resk += _WGK[j] * (f1 + f2)
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    return resk * half, abs((resk - resg) * half)


def gauss_kronrod(f, a, b, rel_tol=1e-10, max_depth=40, abs_tol=0.0):
    """Adaptive G7/K15 quadrature of f over [a, b].

    Returns (value, err_estimate, panels).  Raises QuadratureError with the
    best result attached when the tolerance cannot be met.
    """
    if a == b:
        return 0.0, 0.0, 0
    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value, err, 0)]
    stuck = []
    panels = 1
    while True:
        total = math.fsum(item[3] for item in heap) + math.fsum(s[3] for s in stuck)
        total_err = sum(item[4] for item in heap) + sum(s[4] for s in stuck)
        if total_err <= max(rel_tol * abs(total), abs_tol):
            return total, total_err, panels
        if not heap or panels >= _MAX_PANELS:
            raise QuadratureError(
                f"Gauss-Kronrod: error {total_err:.3g} above tolerance on [{a}, {b}]",
                (total, total_err, panels),
            )
        item = heapq.heappop(heap)
        _, lo, hi, _, _, depth = item
        if depth >= max_depth:
            stuck.append(item)
            continue
        mid = 0.5 * (lo + hi)
        for p, q in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, p, q)
            heapq.heappush(heap, (-e, p, q, v, e, depth + 1))
        panels += 1


def _ts_level_sum(f, a, width, h, odd_only):
    k_lo = math.ceil(_TS_T_LO / h)
    k_hi = math.floor(_TS_T_HI / h)
    terms = []
    for k in range(k_lo, k_hi + 1):
        if odd_only and k % 2 == 0:
            continue
        t = k * h
        u = math.pi * math.sinh(t)
        if u < 0:
            eu = math.exp(u)
            left = eu / (1.0 + eu)
            right = 1.0 / (1.0 + eu)
        else:
            emu = math.exp(-u)
            left = 1.0 / (1.0 + emu)
            right = emu / (1.0 + emu)
        dist = width * left
        if dist < _MIN_DISTANCE:
            continue
        w = width * math.pi * math.cosh(t) * left * right
        if w == 0.0:
            continue
        terms.append(w * f(a + dist))
    return math.fsum(terms)


def tanh_sinh(f, a, b, rel_tol=1e-10, max_level=_TS_MAX_LEVEL):
    """Double-exponential quadrature of f over [a, b], singular at a allowed.

    Returns (value, err_estimate, levels).  The error estimate is the change
    between the last two step halvings.
    """
    if a == b:
        return 0.0, 0.0, 0
    width = b - a
    h = 1.0
    raw = _ts_level_sum(f, a, width, h, odd_only=False)
    estimate = h * raw
    err = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        raw += _ts_level_sum(f, a, width, h, odd_only=True)
        new = h * raw
        err = abs(new - estimate)
        estimate = new
        if level >= _TS_MIN_LEVEL and err <= rel_tol * abs(estimate):
            return estimate, err, level
    raise QuadratureError(
        f"tanh-sinh: error {err:.3g} above tolerance on [{a}, {b}]",
        (estimate, err, max_level),
    )


def _split_integral(f, upper, spec):
    spec = spec or QuadratureSpec()
    delta = spec.split_for(upper)
    try:
        head, head_err, _ = tanh_sinh(f, 0.0, delta, spec.rel_tol)
        tail, tail_err, panels = gauss_kronrod(f, delta, upper, spec.rel_tol, spec.max_depth)
    except QuadratureError as exc:
        raise QuadratureError(str(exc), exc.result) from exc
    return OracleResult(
        value=head + tail,
        err_estimate=head_err + tail_err,
        panels_used=panels + 1,
        singular_segment_value=head,
    )


def _check_admissible(lam, mu, nu):
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    bound = max(-1.0, -1.0 - mu * (nu - 1.0))
    if not lam > bound:
        raise DomainError(
            f"integral diverges at x=0: need lambda > {bound!r}, got {lam!r}"
        )


def oracle_I(lam, mu, nu, z, spec=None, substitute=True):
    """Numerically integrate x**lam * E_nu(x**mu) over [0, z].

    With ``substitute`` the variable u = x**mu is used, which makes the
    argument of E_nu linear; the integrand becomes u**(s-1) E_nu(u) / mu
    with s = (1+lam)/mu.
    """
    _check_admissible(lam, mu, nu)
    if not z > 0:
        raise DomainError(f"oracle_I needs z > 0, got {z!r}")

    if substitute:
        s = (1.0 + lam) / mu
        upper = z ** mu

        def f(u):
            e = expint(nu, u)
            if math.isinf(e):
                return math.exp((s + nu - 2.0) * math.log(u)) * gamma_upper(1.0 - nu, u) / mu
            return u ** (s - 1.0) * e / mu
    else:
        upper = z

        def f(x):
            y = x ** mu
            if y == 0.0:
                return 0.0
            e = expint(nu, y)
            if math.isinf(e):
                lx = math.log(x)
                return math.exp((lam + mu * (nu - 1.0)) * lx) * gamma_upper(1.0 - nu, y)
            return x ** lam * e

    return _split_integral(f, upper, spec)


_W_CUTOFF = 40.0


def oracle_H(a, nu, y, spec=None):
    """Iterated quadrature of the dynamical-friction double integral.

    H(y) = a c**a (4/sqrt(pi)) int_c^inf r**-nu dr int_0^y t**2 exp(-r t**2) dt

    with c = 1 - 1/a.  The inner integral is rescaled (t = w/sqrt(r)) and
    cut at w = 40, where exp(-w**2) is below the double range; the outer one
    is mapped to s = c/r in (0, 1].
    """
    if not a > 1:
        raise DomainError(f"oracle_H needs a > 1, got a={a!r}")
    if not nu > -0.5:
        raise DivergenceError(
            f"outer integral diverges for nu={nu!r} <= -1/2 (r**(-nu-3/2) tail)"
        )
    if y < 0:
        raise DomainError(f"oracle_H needs y >= 0, got y={y!r}")
    spec = spec or QuadratureSpec()
    if y == 0:
        return OracleResult(0.0, 0.0, 0, 0.0)
    c = 1.0 - 1.0 / a
    inner_tol = min(1e-13, spec.rel_tol * 1e-2)

    def inner(r):
        upper = min(y * math.sqrt(r), _W_CUTOFF)
        v, _, _ = gauss_kronrod(lambda w: w * w * math.exp(-w * w), 0.0, upper, inner_tol)
        return v

    scale = c ** (-nu - 0.5)

    def outer(s):
        return scale * s ** (nu - 0.5) * inner(c / s)

    res = _split_integral(outer, 1.0, QuadratureSpec(spec.rel_tol, spec.split_point, spec.max_depth))
    pref = a * c ** a * 4.0 / math.sqrt(math.pi)
    return OracleResult(
        value=pref * res.value,
        err_estimate=pref * res.err_estimate,
        panels_used=res.panels_used,
        singular_segment_value=pref * res.singular_segment_value,
    )

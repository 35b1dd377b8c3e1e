"""Real incomplete gamma functions and the real-order exponential integral.

Conventions::

    gamma_lower(a, x) = int_0^x t**(a-1) exp(-t) dt          (a > 0)
    gamma_upper(a, x) = int_x^inf t**(a-1) exp(-t) dt        (any real a, x > 0)
    expint(nu, z)     = int_1^inf t**(-nu) exp(-t z) dt
                      = z**(nu-1) * gamma_upper(1-nu, z)     (z > 0)

Internally most of the work is done on the *scaled* upper function

    G(a, x) = gamma_upper(a, x) * x**(-a) * exp(x)

so that ``expint(nu, z) == exp(-z) * G(1-nu, z)`` needs no power of z at all.
G comes from one of three kernels:

* the Legendre continued fraction (modified Lentz) when x >= max(1, a+1);
* for |a| <= 1/2 and small x, a cancellation-free series built on the
  Taylor expansion of 1/Gamma(1+a) -- at a == 0 this is exactly the
  classical E1 ascending series with Euler's constant;
* for a < -1/2, the recurrence G(a-1) = (x G(a) - 1)/(a-1), run downward
  in a from a base in (-1/2, 1/2].  For x < 1 each step shrinks errors.

All functions are pure and thread-safe.
"""
import math

from .errors import DomainError, PoleError, UnsupportedParameterError

EULER_GAMMA = 0.57721566490153286061

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 5000
_MAX_RECURSION = 64
_MAX_EXACT_INTEGER = 30

# Taylor coefficients c_k of 1/Gamma(x) = sum_k c_k x**k, k = 2..30.
# With g = 1/Gamma(1+b) = 1 + b*S(b), S(b) = sum_{k>=2} c_k b**(k-2).
_RGAMMA_TAYLOR = (
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
)


def _is_nonpositive_integer(a):
    return a <= 0 and a == math.floor(a)


def _exp_scaled(log_factor, value):
    """value * exp(log_factor), saturating to inf/0 instead of raising."""
    if value == 0.0:
        return 0.0
    if log_factor > 709.0:
        log_total = log_factor + math.log(abs(value))
        if log_total > 709.78:
            return math.copysign(math.inf, value)
        return math.copysign(math.exp(log_total), value)
    return value * math.exp(log_factor)


def _power_exp(x, a):
    """x**a * exp(-x) for x > 0 without spurious overflow."""
    try:
        p = x ** a
    except OverflowError:
        p = math.inf
    e = math.exp(-x)
    if p != 0.0 and math.isfinite(p) and e != 0.0:
        r = p * e
        if r != 0.0 and math.isfinite(r):
            return r
    return _exp_scaled(a * math.log(x) - x, 1.0)


def gamma_complete(a):
    """Complete gamma function Gamma(a) for real a.

    Raises PoleError at nonpositive integers.
    """
    if _is_nonpositive_integer(a):
        raise PoleError(f"Gamma has a pole at a={a!r}")
    try:
        return math.gamma(a)
    except OverflowError:
        return math.inf


def _lower_series(a, x):
    # gamma(a, x) = x**a exp(-x) * sum_n x**n / (a (a+1) ... (a+n))
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total
    raise ArithmeticError(f"lower gamma series did not converge (a={a}, x={x})")


def _upper_cf(a, x):
    """Scaled upper gamma G(a, x) from the Legendre continued fraction."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"continued fraction did not converge (a={a}, x={x})")


def _gamma1p_minus_one_over(b):
    """(Gamma(1+b) - 1) / b, accurate through b == 0, for |b| <= 1/2."""
    s = 0.0
    for c in reversed(_RGAMMA_TAYLOR):
        s = s * b + c
    g = 1.0 + b * s
    return -s / g


def _upper_small(b, x):
    """Gamma(b, x) for |b| <= 1/2, 0 < x < 1.5, free of cancellation in b."""
    lx = math.log(x)
    if b == 0.0:
        head = -EULER_GAMMA - lx
        xb = 1.0
    else:
        head = _gamma1p_minus_one_over(b) - math.expm1(b * lx) / b
        xb = math.exp(b * lx)
    # sum_{n>=1} (-1)**(n+1) x**n / (n! (b+n))
    t = 1.0
    total = 0.0
    for n in range(1, _MAX_ITER):
        t *= -x / n
        term = -t / (b + n)
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return head + xb * total


def _use_cf(a, x):
    return x >= max(1.0, a + 1.0)


def _exact_integer_upper(n, x):
    # Gamma(n, x) = (n-1)! exp(-x) sum_{k<n} x**k / k!
    term = 1.0
    total = 1.0
    for k in range(1, n):
        term *= x / k
        total += term
    return math.factorial(n - 1) * math.exp(-x) * total


def _upper_direct(a, x):
    """Gamma(a, x) outside the continued-fraction region, a > -1/2."""
    if a > 0.5:
        if a == math.floor(a) and a <= _MAX_EXACT_INTEGER:
            return _exact_integer_upper(int(a), x)
        return gamma_complete(a) - _power_exp(x, a) * _lower_series(a, x)
    return _upper_small(a, x)


def _recursion_steps(a):
    n = math.floor(0.5 - a)
    if n > _MAX_RECURSION:
        raise UnsupportedParameterError(
            f"first argument a={a!r} needs {n} recursion steps (cap {_MAX_RECURSION})"
        )
    return n


def _upper_scaled_recursive(a, x):
    """G(a, x) for a <= -1/2 and 0 < x < 1 by downward recursion in a."""
    n = _recursion_steps(a)
    b = a + n
    g = _upper_direct(b, x) * math.exp(x - b * math.log(x))
    for _ in range(n):
        b -= 1.0
        g = (x * g - 1.0) / b
    return g


def gamma_lower(a, x):
    """Lower incomplete gamma function gamma(a, x) for a > 0, x >= 0."""
    if not a > 0:
        raise DomainError(f"gamma_lower needs a > 0, got a={a!r}")
    if x < 0:
        raise DomainError(f"gamma_lower needs x >= 0, got x={x!r}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return gamma_complete(a)
    if x < a + 1.0:
        return _power_exp(x, a) * _lower_series(a, x)
    return gamma_complete(a) - _power_exp(x, a) * _upper_cf(a, x)


def gamma_upper(a, x):
    """Upper incomplete gamma function Gamma(a, x) for real a.

    x == 0 is allowed only for a > 0, where Gamma(a, 0) = Gamma(a).
    Negative first arguments are reached through the downward recurrence
    Gamma(a, x) = (Gamma(a+1, x) - x**a exp(-x)) / a.
    """
    if x < 0:
        raise DomainError(f"gamma_upper needs x >= 0, got x={x!r}")
    if x == 0:
        if a > 0:
            return gamma_complete(a)
        raise DomainError(f"Gamma(a, 0) diverges for a={a!r} <= 0")
    if math.isinf(x):
        return 0.0
    if _use_cf(a, x):
        return _power_exp(x, a) * _upper_cf(a, x)
    if a > -0.5:
        return _upper_direct(a, x)
    return _exp_scaled(a * math.log(x) - x, _upper_scaled_recursive(a, x))


def gamma_sum_check(a, x):
    """gamma(a, x) + Gamma(a, x) - Gamma(a); zero up to rounding."""
    return gamma_lower(a, x) + gamma_upper(a, x) - gamma_complete(a)


def gamma_recurrence_residuals(a, x):
    """Residuals of both first-argument recurrences, each scaled by its terms.

    Returns (r_lower, r_upper) with::

        r_lower = gamma(a+1,x) - (a gamma(a,x) - x**a e**-x)
        r_upper = Gamma(a+1,x) - (a Gamma(a,x) + x**a e**-x)

    divided by the sum of the absolute values of the terms involved.
    """
    pe = _power_exp(x, a)
    lo1, lo0 = gamma_lower(a + 1.0, x), gamma_lower(a, x)
    up1, up0 = gamma_upper(a + 1.0, x), gamma_upper(a, x)
    r_lower = (lo1 - (a * lo0 - pe)) / (abs(lo1) + abs(a * lo0) + pe)
    r_upper = (up1 - (a * up0 + pe)) / (abs(up1) + abs(a * up0) + pe)
    return r_lower, r_upper


def expint(nu, z):
    """Exponential integral E_nu(z) of real order nu, for z > 0.

    Returns inf when the true value exceeds the double range (tiny z, nu < 0)
    and 0.0 once exp(-z) underflows.
    """
    if not z > 0:
        raise DomainError(f"expint needs z > 0, got z={z!r}")
    if math.isinf(z):
        return 0.0
    a = 1.0 - nu
    if _use_cf(a, z):
        return math.exp(-z) * _upper_cf(a, z)
    if a <= -0.5:
        return math.exp(-z) * _upper_scaled_recursive(a, z)
    if a == 1.0:
        return math.exp(-z) / z
    gu = _upper_direct(a, z)
    try:
        return gu * z ** (-a)
    except OverflowError:
        return math.inf


def expint_derivative(nu, z):
    """d E_nu(z) / dz = -E_{nu-1}(z)."""
    if not z > 0:
        raise DomainError(f"expint_derivative needs z > 0, got z={z!r}")
    return -expint(nu - 1.0, z)


def expint_recurrence_residual(nu, z):
    """Residuals of the two integration-by-parts identities for E_nu.

    r1 = E_nu - (e**-z - z E_{nu-1}) / (nu - 1)   (None when nu == 1)
    r2 = E_nu - (e**-z - nu E_{nu+1}) / z
    """
    if not z > 0:
        raise DomainError(f"expint_recurrence_residual needs z > 0, got z={z!r}")
    e = expint(nu, z)
    ez = math.exp(-z)
    r1 = None
    if nu != 1:
        r1 = e - (ez - z * expint(nu - 1.0, z)) / (nu - 1.0)
    r2 = e - (ez - nu * expint(nu + 1.0, z)) / z
    return r1, r2


def expint_leading_order(nu, z):
    """Leading term of E_nu(z) as z -> 0+."""
    if not z > 0:
        raise DomainError(f"expint_leading_order needs z > 0, got z={z!r}")
    if nu > 1:
        return 1.0 / (nu - 1.0)
    if nu == 1:
        return -math.log(z)
    return gamma_complete(1.0 - nu) * z ** (nu - 1.0)

"""mpmath mirrors of the closed-form quantities, kept at 50 digits."""

import mpmath

mpmath.mp.dps = 50

REL = 1e-12


def close12(got: float, want) -> bool:
    """Agreement to 12 significant digits."""
    return abs(got / float(want) - 1.0) < REL


def mp_threshold_odd(m, n, d):
    mn = mpmath.mpf(m) * n
    return mpmath.log(mn) ** (mpmath.mpf(1) / d) / mn ** (mpmath.mpf(d - 1) / (2 * d))


def mp_threshold_even(m, n, d):
    return mpmath.log(n) ** (mpmath.mpf(1) / d) / (
        mpmath.sqrt(m) * mpmath.mpf(n) ** (mpmath.mpf(d - 2) / (2 * d))
    )


def mp_criterion(m, n, p, d):
    p = mpmath.mpf(p)
    if d % 2 == 1:
        return p**d * (mpmath.mpf(m) * n) ** (mpmath.mpf(d - 1) / 2) - mpmath.log(
            mpmath.mpf(m) * n
        )
    return p**d * mpmath.mpf(m) ** (mpmath.mpf(d) / 2) * mpmath.mpf(n) ** (
        mpmath.mpf(d) / 2 - 1
    ) - 2 * mpmath.log(n)


def mp_rainbow_success(d, path_len):
    if path_len == d + 1:
        return mpmath.factorial(d + 1) / mpmath.mpf(d + 1) ** (d + 1)
    return mpmath.factorial(d) / mpmath.mpf(d) ** d


def mp_failure_log_bound(k, d, c0, n):
    supply = mpmath.mpf(2) ** (10 * d) * c0 * mpmath.log(n)
    q = min(mp_rainbow_success(d, d + 1), mp_rainbow_success(d, d))
    if k == 1:
        choose = mpmath.mpf(0)
    else:
        choose = (
            mpmath.loggamma(supply + 1)
            - mpmath.loggamma(k)
            - mpmath.loggamma(supply - (k - 1) + 1)
        )
    return choose + (supply - (k - 1)) * mpmath.log1p(-q)


def mp_chernoff(mean, frac):
    return mpmath.exp(-mpmath.mpf(frac) ** 2 * mpmath.mpf(mean) / 2)

"""Level-1 modular forms as exact q-expansions.

Provides Bernoulli numbers, the normalized Eisenstein series E4/E6/...,
the discriminant cusp form, the dimension of the weight-k cusp space,
and the echelonized integral basis f_1, ..., f_d of that space with
f_j = q^j + O(q^(d+1)).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .series import IntSeries, series_mul, series_pow

_bern_cache: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()

# k mod 12 -> exponents (a, b) with E4^a * E6^b of weight k mod 12
# (weight 14 when k = 2 mod 12, since weight 2 has no Eisenstein series).
_EIS_MONOMIAL = {0: (0, 0), 2: (2, 1), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1)}


def bernoulli(n):
    """Bernoulli number B_n (convention B_1 = -1/2) as an exact Fraction.

    Uses the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, filled
    incrementally and cached.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n < len(_bern_cache):
        return _bern_cache[n]
    with _bern_lock:
        for m in range(len(_bern_cache), n + 1):
            acc = Fraction(0)
            for j in range(m):
                acc += math.comb(m + 1, j) * _bern_cache[j]
            _bern_cache.append(-acc / (m + 1))
    return _bern_cache[n]


def _divisor_power_sums(power, prec):
    """[sigma_power(n) for n = 0..prec], with the n = 0 slot unused (0)."""
    sums = [0] * (prec + 1)
    for d in range(1, prec + 1):
        dp = d**power
        for m in range(d, prec + 1, d):
            sums[m] += dp
    return sums


def eisenstein(k, prec):
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.

    Only weights where -2k/B_k is an integer are representable as an
    IntSeries (k in {4, 6, 8, 10, 14} among small weights); other weights
    are rejected rather than silently returning rationals.
    """
    if k % 2 != 0 or k < 4:
        raise ValueError(f"Eisenstein weight must be even and >= 4, got {k}")
    if prec < 0:
        raise ValueError("precision must be nonnegative")
    factor = Fraction(-2 * k) / bernoulli(k)
    if factor.denominator != 1:
        raise ValueError(f"-2k/B_k is not an integer for k={k}; no integral E_{k}")
    factor = int(factor)
    sums = _divisor_power_sums(k - 1, prec)
    coeffs = [1] + [factor * sums[n] for n in range(1, prec + 1)]
    return IntSeries(coeffs)


def delta(prec):
    """The discriminant cusp form q - 24q^2 + 252q^3 - ..., weight 12."""
    if prec < 0:
        raise ValueError("precision must be nonnegative")
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    num = series_pow(e4, 3) - series_mul(e6, e6)
    out = []
    for n, c in enumerate(num.coeffs):
        q, r = divmod(c, 1728)
        if r:
            raise ArithmeticError(
                f"E4^3 - E6^2 not divisible by 1728 at q^{n}: series kernel is broken"
            )
        out.append(q)
    return IntSeries(out)


def dim_cusp(k):
    """Dimension of the weight-k cusp space on the full modular group."""
    if k % 2 != 0 or k < 12 or k == 14:
        return 0
    if k % 12 == 2:
        return k // 12 - 1
    return k // 12


@dataclass(frozen=True)
class MillerBasis:
    """Echelon basis of the weight-k cusp space: a_i(f_j) = [i == j] for
    1 <= i, j <= dim, every coefficient an integer."""

    weight: int
    dim: int
    forms: tuple[IntSeries, ...]

    def form(self, j):
        """The basis form f_j, 1-based."""
        if not 1 <= j <= self.dim:
            raise IndexError(f"basis has forms f_1..f_{self.dim}, asked for f_{j}")
        return self.forms[j - 1]

    def validate(self):
        """Check the echelon shape; raises on violation."""
        for j, f in enumerate(self.forms, start=1):
            if f[0] != 0:
                raise AssertionError(f"f_{j} is not cuspidal: a_0 = {f[0]}")
            for i in range(1, self.dim + 1):
                want = 1 if i == j else 0
                if f[i] != want:
                    raise AssertionError(f"a_{i}(f_{j}) = {f[i]}, expected {want}")


def miller_basis(k, prec=None):
    """The unique echelon basis of the weight-k cusp space, each form
    computed through q^prec (default: twice the dimension).

    The forms are built as Delta^j * E6^(2(d-j)) * (E4^a E6^b) -- already
    lower triangular with unit diagonal -- then reduced above the diagonal
    by integer back-substitution, so integrality never has to be cleared.
    """
    if k % 2 != 0:
        raise ValueError(f"weight must be even, got {k}")
    d = dim_cusp(k)
    if prec is None:
        prec = 2 * d
    if d == 0:
        return MillerBasis(k, 0, ())
    if prec < 2 * d:
        raise ValueError(f"precision {prec} below 2*dim = {2 * d}")

    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    a, b = _EIS_MONOMIAL[k % 12]
    head = series_mul(series_pow(e4, a), series_pow(e6, b))
    square = series_mul(e6, e6)
    dlt = delta(prec)

    square_pows = [IntSeries.one(prec)]
    for _ in range(d - 1):
        square_pows.append(series_mul(square_pows[-1], square))

    raw = []
    cur = series_mul(dlt, head)  # Delta^j * head as j walks 1..d
    for j in range(1, d + 1):
        sp = square_pows[d - j]
        raw.append(list(cur.coeffs) if d - j == 0 else list(series_mul(cur, sp).coeffs))
        if j < d:
            cur = series_mul(cur, dlt)

    for j in range(d):
        if raw[j][j + 1] != 1:
            raise ArithmeticError(f"leading coefficient of span form {j + 1} is {raw[j][j + 1]}")

    # Back-substitute: rows below are already final when row j is reduced.
    for j in range(d - 2, -1, -1):
        row = raw[j]
        for i in range(j + 1, d):
            c = row[i + 1]
            if c:
                fi = raw[i]
                for n in range(i + 1, prec + 1):
                    row[n] -= c * fi[n]

    forms = tuple(IntSeries(row) for row in raw)
    basis = MillerBasis(k, d, forms)
    basis.validate()
    return basis

"""Distinguishing-index bounds and step-function inequality checks.

The continuum inequalities about theta are decided at their finitely many
critical points (prime jump positions and left limits), never by dense
sampling.  On a half-open step [lo, hi) the supremum of x is not attained,
so "theta > x on the whole step" is checked as the non-strict
"theta >= hi".  Comparisons that land near equality are re-run at doubled
precision from the exact primes before a verdict is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .primes import DEFAULT_THETA_BITS, smallest_nondivisor_prime

# Quoted constants, kept as exact decimal literals.
DUSART_COEFF = Fraction(3965, 1000)
UNSHIFTED_X_MAX = Fraction(8356, 1000)

ASYMPTOTIC_NOTE = "shape only: implied constants taken as 1"


def murty_bound(n):
    """p**2 for the smallest prime p not dividing n."""
    return smallest_nondivisor_prime(n) ** 2


def main_bound(n, prec_bits=DEFAULT_THETA_BITS):
    """4*(log n + 1)**2 as an extended-precision real; integer callers
    take the floor."""
    if n < 1:
        raise ValueError("level must be a positive integer")
    with mpmath.workprec(prec_bits):
        return 4 * (mpmath.log(n) + 1) ** 2


def asymptotic_bounds(n, prec_bits=DEFAULT_THETA_BITS):
    """The three asymptotic bound shapes evaluated with implied constant 1:
    (L + L^0.525)^2, (L + sqrt(L)*log L)^2, (L + (log L)^2)^2 for L = log n.
    Only the shapes are meaningful (see ASYMPTOTIC_NOTE); needs n >= 3 so
    log log n is defined and positive."""
    if n < 3:
        raise ValueError("asymptotic expressions need n >= 3 (log log n > 0)")
    with mpmath.workprec(prec_bits):
        big_l = mpmath.log(n)
        log_l = mpmath.log(big_l)
        e1 = (big_l + big_l ** mpmath.mpf("0.525")) ** 2
        e2 = (big_l + mpmath.sqrt(big_l) * log_l) ** 2
        e3 = (big_l + log_l**2) ** 2
        return (e1, e2, e3)


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one level."""

    level: int
    p: int
    murty_bound: int
    main_bound: object
    asymptotic: tuple | None
    prec_bits: int


def bound_report(n, prec_bits=DEFAULT_THETA_BITS):
    p = smallest_nondivisor_prime(n)
    asym = asymptotic_bounds(n, prec_bits) if n >= 3 else None
    return BoundReport(n, p, p * p, main_bound(n, prec_bits), asym, prec_bits)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a pointwise inequality sweep."""

    name: str
    ok: bool
    points_checked: int
    min_slack: object
    min_slack_x: object
    violations: tuple
    prec_bits: int


@dataclass(frozen=True)
class FailureInterval:
    """Maximal interval [lo, hi) on which theta(2x) <= x.

    Endpoints carry exact tags alongside their numeric values: lo is
    log(lo_log_arg) when that field is set, otherwise the exact rational
    lo_exact; hi is always the exact rational hi_exact."""

    lo: object
    hi: object
    lo_log_arg: int | None
    lo_exact: Fraction | None
    hi_exact: Fraction


def _mpf_to_fraction(x):
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    v = Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    return -v if sign else v


def _theta_head(table, idx, prec_bits):
    """Fresh recomputation of theta at the idx-th prime."""
    with mpmath.workprec(prec_bits):
        total = mpmath.mpf(0)
        for p in table.primes[: idx + 1]:
            total += mpmath.log(p)
        return total


def _cmp_theta(table, idx, bound):
    """Sign of theta(p_idx) - bound for an exact rational bound: -1 or +1.

    The stored prefix value decides unless it sits within the worst-case
    accumulated rounding of the running sum, in which case theta is
    recomputed at doubled precision (exact ties cannot occur: theta here
    is the log of an integer >= 2, never rational)."""
    bits = table.prec_bits
    th = table.theta_prefix[idx]
    for _ in range(5):
        fr = _mpf_to_fraction(th)
        err = Fraction((idx + 2) * (abs(int(fr)) + 2) * 4, 2**bits)
        diff = fr - bound
        if diff > err:
            return 1
        if -diff > err:
            return -1
        bits *= 2
        th = _theta_head(table, idx, bits)
    raise ArithmeticError(f"theta(p_{idx + 1}) vs {bound} undecided at {bits} bits")


def verify_lemma_theta(table):
    """Check theta(2x + 2) > x for every x >= 0 with 2x + 2 <= table.limit.

    theta(2x + 2) is constant, equal to theta(p), for x in
    [(p - 2)/2, (p' - 2)/2) between consecutive primes p < p', so the
    whole sweep reduces to theta(p) >= (p' - 2)/2 per segment plus the
    initial segment theta(2) >= 1/2 and the tail up to the table limit."""
    if table.limit < 5:
        raise ValueError("table limit below 5 leaves nothing to check")
    ps = table.primes
    prefix = table.theta_prefix
    n = len(ps)
    violations = []
    min_slack = None
    min_x = None
    checked = 0
    with mpmath.workprec(table.prec_bits):
        tie_guard = mpmath.mpf(2) ** (-(table.prec_bits // 2))
        sups = [(0, Fraction(1, 2))]
        sups.extend((i, Fraction(ps[i + 1] - 2, 2)) for i in range(n - 1))
        sups.append((n - 1, Fraction(table.limit - 2, 2)))
        for idx, sup in sups:
            sup_mpf = mpmath.mpf(sup.numerator) / sup.denominator
            slack = prefix[idx] - sup_mpf
            checked += 1
            if min_slack is None or slack < min_slack:
                min_slack = slack
                min_x = sup_mpf
            bad = slack < 0
            if abs(slack) < tie_guard:
                bad = _cmp_theta(table, idx, sup) < 0
            if bad:
                violations.append((ps[idx], sup, slack))
    return CheckReport(
        "theta(2x+2) > x", not violations, checked, min_slack, min_x, tuple(violations), table.prec_bits
    )


def verify_dusart(table):
    """Check |theta(x) - x| < 3.965 x / log(x)^2 at every jump point p and
    every left limit (x = p with the pre-jump theta), all of which have
    x > 1.  Reports the minimal slack and where it occurs."""
    if table.limit < 10:
        raise ValueError("table limit below 10 leaves nothing worth checking")
    violations = []
    min_slack = None
    min_x = None
    checked = 0
    with mpmath.workprec(table.prec_bits):
        coeff = mpmath.mpf(DUSART_COEFF.numerator) / DUSART_COEFF.denominator
        tie_guard = mpmath.mpf(2) ** (-(table.prec_bits // 3))
        prev = mpmath.mpf(0)
        for i, p in enumerate(table.primes):
            th = table.theta_prefix[i]
            # log p recovered from adjacent prefix sums; the cancellation
            # is exact and the inherited rounding is far below tie_guard
            logp = th - prev
            bound = coeff * p / (logp * logp)
            for value in (prev, th):
                slack = bound - abs(value - p)
                checked += 1
                if min_slack is None or slack < min_slack:
                    min_slack = slack
                    min_x = p
                if slack < tie_guard:
                    slack = _dusart_slack_exact(table, i, value is th)
                if slack <= 0:
                    violations.append((p, "jump" if value is th else "left-limit", slack))
            prev = th
    return CheckReport(
        "|theta(x) - x| < 3.965 x / log(x)^2",
        not violations,
        checked,
        min_slack,
        min_x,
        tuple(violations),
        table.prec_bits,
    )


def _dusart_slack_exact(table, i, at_jump):
    bits = 2 * table.prec_bits
    with mpmath.workprec(bits):
        p = table.primes[i]
        th = _theta_head(table, i, bits) if at_jump else (
            _theta_head(table, i - 1, bits) if i else mpmath.mpf(0)
        )
        coeff = mpmath.mpf(DUSART_COEFF.numerator) / DUSART_COEFF.denominator
        return coeff * p / mpmath.log(p) ** 2 - abs(th - p)


def failure_intervals(table, x_max=None):
    """Maximal intervals in [0, x_max] (default 8.356) where the unshifted
    inequality theta(2x) > x fails, read off the step structure: on
    x in [p/2, p'/2) theta(2x) equals theta(p), so the failure part of the
    segment is [max(p/2, theta(p)), p'/2), merged across segments."""
    cap = UNSHIFTED_X_MAX if x_max is None else Fraction(x_max)
    if cap <= 0:
        raise ValueError("x_max must be positive")
    if table.limit < 2 * cap:
        raise ValueError(f"table limit {table.limit} below 2*x_max = {float(2 * cap)}")
    ps = table.primes
    intervals = []
    with mpmath.workprec(table.prec_bits):
        # x in [0, 1): theta(2x) = 0 <= x always, so the failure set opens
        # at 0 (= log 1, which keeps the endpoint exact for exp later).
        cur = [mpmath.mpf(0), 1, Fraction(0), min(Fraction(1), cap)]
        primorial = 1
        for i, p in enumerate(ps):
            seg_lo = Fraction(p, 2)
            if seg_lo >= cap:
                break
            if i + 1 >= len(ps):
                raise ValueError("table too small: need the next prime past the cap")
            primorial *= p
            seg_hi = min(Fraction(ps[i + 1], 2), cap)
            if _cmp_theta(table, i, seg_lo) < 0:
                # theta(p) below the whole segment: it fails end to end
                if cur is not None and cur[3] == seg_lo:
                    cur[3] = seg_hi
                else:  # pragma: no cover - unreachable for contiguous segments
                    cur = [
                        mpmath.mpf(seg_lo.numerator) / seg_lo.denominator,
                        None,
                        seg_lo,
                        seg_hi,
                    ]
            elif _cmp_theta(table, i, seg_hi) < 0:
                # failure starts inside the segment, at theta(p) = log(primorial)
                if cur is not None:
                    intervals.append(cur)
                cur = [table.theta_prefix[i], primorial, None, seg_hi]
            else:
                # theta(p) clears the segment: nothing fails here
                if cur is not None:
                    intervals.append(cur)
                    cur = None
        if cur is not None:
            intervals.append(cur)
        out = []
        for lo_mpf, log_arg, lo_exact, hi in intervals:
            hi_mpf = mpmath.mpf(hi.numerator) / hi.denominator
            out.append(FailureInterval(lo_mpf, hi_mpf, log_arg, lo_exact, hi))
    return tuple(out)


def exceptional_levels(table):
    """All integers N >= 1 with theta(2 log N) <= log N, i.e. the levels
    whose log falls in a failure interval of the unshifted inequality."""
    out = []
    for iv in failure_intervals(table):
        if iv.lo_log_arg is not None:
            n0 = iv.lo_log_arg  # exp(log m) = m exactly
        else:
            n0 = _exp_floor_strict(iv.lo_exact, table.prec_bits) + 1
        n1 = _exp_floor_strict(iv.hi_exact, table.prec_bits)
        out.extend(range(n0, n1 + 1))
    return tuple(out)


def _exp_floor_strict(r, prec_bits):
    """Largest integer N with N < exp(r) for exact rational r > 0.

    exp of a nonzero rational is irrational, so the floor is certain once
    exp(r) is known to more than its distance from the nearest integer."""
    if r <= 0:
        raise ValueError("positive rational expected")
    bits = prec_bits
    for _ in range(5):
        with mpmath.workprec(bits):
            v = mpmath.exp(mpmath.mpf(r.numerator) / r.denominator)
            fl = int(mpmath.floor(v))
            near = min(v - fl, fl + 1 - v)
            if near > v * mpmath.mpf(2) ** (8 - bits):
                return fl
        bits *= 2
    raise ArithmeticError(f"exp({r}) too close to an integer to decide at {bits} bits")

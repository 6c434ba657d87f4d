"""The T2 Hecke action on the weight-k cusp space.

Everything is exact integer arithmetic on the echelon basis: the
coefficient formula a_{2j}(f) + 2^(k-1) a_{j/2}(f), the trace, the full
matrix, its characteristic polynomial, a mod-q irreducibility certifier,
eigenform coefficients for the one-dimensional spaces, and the search for
the first Fourier coefficient separating two coefficient sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modforms import dim_cusp, miller_basis
from .series import IntSeries


def t2_coefficient(f, j, k):
    """Coefficient of q^j in T2 f for f of weight k:
    a_{2j}(f) + 2^(k-1) a_{j/2}(f), the second term only for even j.

    The series must carry at least 2j coefficients; running short is an
    error, never a silent zero.
    """
    if not isinstance(f, IntSeries):
        raise TypeError("IntSeries expected")
    if j < 1:
        raise ValueError("coefficient index must be positive")
    if f.prec < 2 * j:
        raise ValueError(f"need precision >= {2 * j} for the q^{j} coefficient of T2 f, have {f.prec}")
    value = f[2 * j]
    if j % 2 == 0:
        value += (1 << (k - 1)) * f[j // 2]
    return value


def trace_t2(k, basis=None):
    """(dim, trace) of T2 on the weight-k cusp space; (0, 0) for an empty
    space.  Computes the echelon basis at precision 2*dim unless one is
    supplied."""
    d = dim_cusp(k)
    if d == 0:
        return (0, 0)
    if basis is None:
        basis = miller_basis(k, 2 * d)
    t = 0
    for j in range(1, d + 1):
        t += t2_coefficient(basis.form(j), j, k)
    return (d, t)


@dataclass(frozen=True)
class T2Matrix:
    """Matrix of T2 in the echelon basis: column i holds the coordinates
    of T2 f_(i+1), which on an echelon basis are plain coefficient reads."""

    weight: int
    dim: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def trace(self):
        return sum(self.entries[i][i] for i in range(self.dim))


def t2_matrix(k, basis=None):
    d = dim_cusp(k)
    if d == 0:
        return T2Matrix(k, 0, ())
    if basis is None:
        basis = miller_basis(k, 2 * d)
    rows = tuple(
        tuple(t2_coefficient(basis.form(i + 1), j + 1, k) for i in range(d))
        for j in range(d)
    )
    return T2Matrix(k, d, rows)


@dataclass(frozen=True)
class CharPoly:
    """Monic integer characteristic polynomial, coefficients stored from
    the leading term down: coeffs[0] = 1, degree = len(coeffs) - 1."""

    weight: int
    coeffs: tuple[int, ...]

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        if self.degree == 0:
            return "1"
        parts = []
        for i, c in enumerate(self.coeffs):
            e = self.degree - i
            if c == 0:
                continue
            if e == self.degree:
                term = f"x^{e}" if e > 1 else "x"
            else:
                mag = abs(c)
                if e == 0:
                    term = str(mag)
                elif e == 1:
                    term = f"{mag}*x" if mag != 1 else "x"
                else:
                    term = f"{mag}*x^{e}" if mag != 1 else f"x^{e}"
                term = ("- " if c < 0 else "+ ") + term
            parts.append(term)
        return " ".join(parts)


def charpoly_t2(k, matrix=None):
    """Characteristic polynomial of T2 on the weight-k cusp space, by the
    Faddeev-LeVerrier recurrence (all intermediate matrices stay integral;
    each division is checked exact)."""
    if matrix is None:
        matrix = t2_matrix(k)
    d = matrix.dim
    if d == 0:
        return CharPoly(k, (1,))
    m = matrix.entries
    work = [list(row) for row in m]
    coeffs = [1, -sum(work[i][i] for i in range(d))]
    for step in range(2, d + 1):
        c = coeffs[-1]
        for i in range(d):
            work[i][i] += c
        work = _matmul(m, work)
        t = sum(work[i][i] for i in range(d))
        q, r = divmod(-t, step)
        if r:
            raise ArithmeticError(f"characteristic polynomial trace not divisible by {step}")
        coeffs.append(q)
    # Cayley-Hamilton termination: A_d + c_d I must vanish.
    for i in range(d):
        work[i][i] += coeffs[-1]
    if any(v != 0 for row in work for v in row):
        raise ArithmeticError("Faddeev-LeVerrier termination check failed")
    return CharPoly(k, tuple(coeffs))


def _matmul(a, b):
    n = len(a)
    bt = list(zip(*b))
    out = []
    for i in range(n):
        ai = a[i]
        out.append([sum(x * y for x, y in zip(ai, col) if x) for col in bt])
    return out


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Outcome of check_irreducible.

    kind is "irreducible" (with the witness prime whose reduction is
    irreducible, or None for degree 1), "reducible" (with the degrees of a
    certified factorization over Q, factors not necessarily irreducible),
    or "inconclusive" (prime budget exhausted; no claim either way).
    """

    kind: str
    witness_prime: int | None = None
    factor_degrees: tuple[int, ...] | None = None
    primes_tried: int = 0

    @property
    def is_irreducible(self):
        return self.kind == "irreducible"


def check_irreducible(poly, prime_budget=None):
    """Certify irreducibility of a monic integer polynomial over Q.

    A prime q whose reduction mod q has no factor of degree <= deg/2 is a
    witness of irreducibility.  Reducibility is certified only through an
    exhibited rational root.  If no verdict is reached within the prime
    budget (default 25 * degree), the result is inconclusive -- never a
    false claim in either direction.
    """
    coeffs = _monic_int_coeffs(poly)
    d = len(coeffs) - 1
    if d == 0:
        raise ValueError("constant polynomial has no irreducibility verdict")
    if d == 1:
        return IrreducibilityVerdict("irreducible")
    roots = _integer_roots(coeffs)
    if roots:
        degrees, n_linear = roots
        return IrreducibilityVerdict("reducible", factor_degrees=degrees)
    if prime_budget is None:
        prime_budget = 25 * d
    if prime_budget < 1:
        raise ValueError("prime budget must be positive")
    tried = 0
    asc = coeffs[::-1]
    for q in _prime_stream():
        if tried >= prime_budget:
            break
        tried += 1
        fq = [c % q for c in asc]
        if _irreducible_mod_q(fq, q):
            return IrreducibilityVerdict("irreducible", witness_prime=q, primes_tried=tried)
    return IrreducibilityVerdict("inconclusive", primes_tried=tried)


def _monic_int_coeffs(poly):
    if isinstance(poly, CharPoly):
        cs = list(poly.coeffs)
    else:
        cs = [int(c) for c in poly]
    if not cs or cs[0] != 1:
        raise ValueError("monic integer polynomial expected (leading coefficient 1)")
    return cs


def _integer_roots(coeffs):
    """Search small integer roots; on success return (factor degrees, #linear)."""
    candidates = set(range(-100, 101))
    a0 = coeffs[-1]
    if a0 == 0:
        candidates.add(0)
    elif abs(a0) <= 10**9:
        # full divisor set of the constant term is affordable here
        m = abs(a0)
        f = 1
        while f * f <= m:
            if m % f == 0:
                candidates.update((f, -f, m // f, -(m // f)))
            f += 1
    work = list(coeffs)
    n_linear = 0
    for r in sorted(candidates, key=abs):
        while len(work) > 1 and _eval_int(work, r) == 0:
            work = _deflate(work, r)
            n_linear += 1
    if n_linear == 0:
        return None
    degrees = [1] * n_linear
    if len(work) > 1:
        degrees.append(len(work) - 1)
    return tuple(sorted(degrees)), n_linear


def _eval_int(coeffs, x):
    v = 0
    for c in coeffs:
        v = v * x + c
    return v


def _deflate(coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(out[-1] * r + c)
    return out


def _prime_stream():
    yield 2
    found = [2]
    n = 3
    while True:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n
        n += 2


def _irreducible_mod_q(f, q):
    """True iff the monic polynomial f (ascending coefficients) is
    irreducible over the q-element field: no irreducible factor of degree
    <= deg(f)/2 survives gcd(x^(q^i) - x, f) for i = 1..deg(f)//2."""
    d = len(f) - 1
    x = [0, 1]
    b = x
    for _ in range(d // 2):
        b = _pm_pow(b, q, f, q)
        g = _pm_gcd([(u - v) % q for u, v in _zip_pad(b, x)], f, q)
        if len(g) > 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return zip(a, b)


def _pm_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_rem(a, f, q):
    """a mod f with f monic, coefficients mod q."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            off = i - df
            for j in range(df):
                a[off + j] = (a[off + j] - c * f[j]) % q
    del a[df:]
    return _pm_trim(a)


def _pm_mulmod(a, b, f, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % q
    return _pm_rem(out, f, q)


def _pm_pow(base, e, f, q):
    result = [1]
    b = _pm_rem(base, f, q)
    while e:
        if e & 1:
            result = _pm_mulmod(result, b, f, q)
        e >>= 1
        if e:
            b = _pm_mulmod(b, b, f, q)
    return result


def _pm_gcd(a, b, q):
    a = _pm_trim(list(a))
    b = _pm_trim(list(b))
    while b:
        # make b monic, then reduce a by it
        inv = pow(b[-1], -1, q)
        b = [(c * inv) % q for c in b]
        a = _pm_rem(a, b, q) if len(a) >= len(b) else a
        a, b = b, a
    return a


def eigenform_coeffs(k, n_max):
    """a_1..a_n_max of the unique normalized eigenform of weight k; only
    the one-dimensional spaces (k in {12, 16, 18, 20, 22, 26}) qualify."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if dim_cusp(k) != 1:
        raise ValueError(f"weight {k} cusp space has dimension {dim_cusp(k)}, not 1")
    basis = miller_basis(k, max(2, n_max))
    f = basis.form(1)
    return tuple(f[n] for n in range(1, n_max + 1))


def distinguish(seq_a, seq_b, n_max):
    """Smallest 1-based index n <= n_max where the two coefficient
    sequences differ, or None when no difference shows up in that range
    (which bounds the scan, it does not prove equality)."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if len(seq_a) < n_max or len(seq_b) < n_max:
        raise ValueError(f"both sequences must carry at least {n_max} coefficients")
    for n in range(n_max):
        if seq_a[n] != seq_b[n]:
            return n + 1
    return None

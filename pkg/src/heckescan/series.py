"""Exact truncated power series over big integers and rationals.

A series of precision P stores the coefficients of q^0 .. q^P inclusive
and nothing beyond.  Every operation is exact; binary operations truncate
to the smaller operand precision, so callers that need N coefficients must
build their inputs at precision >= N to begin with.

Multiplication is the plain Cauchy product.  For large operands the same
product is computed by Kronecker substitution (coefficients packed into a
single big integer, one big multiply, then unpacked); the two paths are
bit-for-bit identical and the test suite checks them against each other.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = None

# Below this many coefficient terms the schoolbook loop beats the packing
# overhead of Kronecker substitution.
_KRONECKER_MIN_TERMS = 32


class IntSeries:
    """Truncated q-expansion with exact integer coefficients.

    coeffs[n] is the coefficient of q^n; len(coeffs) == prec + 1.
    Instances are immutable and safe to share between threads.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec=None):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {type(c).__name__}")
        if prec is not None:
            if prec < 0:
                raise ValueError("precision must be nonnegative")
            if len(cs) < prec + 1:
                cs.extend([0] * (prec + 1 - len(cs)))
            else:
                del cs[prec + 1 :]
        elif not cs:
            raise ValueError("a series needs at least its q^0 coefficient")
        self.coeffs = tuple(cs)
        self.prec = len(cs) - 1

    @classmethod
    def zero(cls, prec):
        return cls([0], prec=prec)

    @classmethod
    def one(cls, prec):
        return cls([1], prec=prec)

    def __getitem__(self, n):
        if not 0 <= n <= self.prec:
            raise IndexError(f"coefficient of q^{n} not stored (precision {self.prec})")
        return self.coeffs[n]

    def __eq__(self, other):
        if isinstance(other, IntSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.prec >= 8 else ""
        return f"IntSeries([{shown}{tail}], prec={self.prec})"

    def __add__(self, other):
        if not isinstance(other, IntSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        return IntSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __sub__(self, other):
        if not isinstance(other, IntSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        return IntSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __mul__(self, other):
        if not isinstance(other, IntSeries):
            return NotImplemented
        return series_mul(self, other)

    def __pow__(self, e):
        return series_pow(self, e)

    def scaled(self, c):
        """c*f with an integer scalar, same precision."""
        if not isinstance(c, int):
            raise TypeError("integer scalar expected")
        return IntSeries([c * a for a in self.coeffs])

    def truncated(self, prec):
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return IntSeries(self.coeffs[: prec + 1])

    def to_rational(self):
        return RatSeries([Fraction(c) for c in self.coeffs])


class RatSeries:
    """Truncated q-expansion with exact rational coefficients.

    Fractions keep themselves in lowest terms with positive denominator.
    Immutable, like IntSeries.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec=None):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                cs.append(c)
            elif isinstance(c, int):
                cs.append(Fraction(c))
            else:
                raise TypeError(f"exact rational expected, got {type(c).__name__}")
        if prec is not None:
            if prec < 0:
                raise ValueError("precision must be nonnegative")
            if len(cs) < prec + 1:
                cs.extend([Fraction(0)] * (prec + 1 - len(cs)))
            else:
                del cs[prec + 1 :]
        elif not cs:
            raise ValueError("a series needs at least its q^0 coefficient")
        self.coeffs = tuple(cs)
        self.prec = len(cs) - 1

    @classmethod
    def zero(cls, prec):
        return cls([Fraction(0)], prec=prec)

    @classmethod
    def one(cls, prec):
        return cls([Fraction(1)], prec=prec)

    def __getitem__(self, n):
        if not 0 <= n <= self.prec:
            raise IndexError(f"coefficient of q^{n} not stored (precision {self.prec})")
        return self.coeffs[n]

    def __eq__(self, other):
        if isinstance(other, RatSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.prec >= 8 else ""
        return f"RatSeries([{shown}{tail}], prec={self.prec})"

    def __mul__(self, other):
        if not isinstance(other, RatSeries):
            return NotImplemented
        return series_mul(self, other)

    def __pow__(self, e):
        return series_pow(self, e)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int_series(self):
        """Exact conversion; fails unless every denominator is 1."""
        if not self.is_integral():
            bad = next(n for n, c in enumerate(self.coeffs) if c.denominator != 1)
            raise ValueError(f"coefficient of q^{bad} is not an integer: {self.coeffs[bad]}")
        return IntSeries([int(c) for c in self.coeffs])


def series_linear(a, f, b, g):
    """a*f + b*g truncated to the smaller operand precision.

    Returns an IntSeries when both series and both scalars are integral,
    otherwise a RatSeries.
    """
    for s in (f, g):
        if not isinstance(s, (IntSeries, RatSeries)):
            raise TypeError("series operands expected")
    for c in (a, b):
        if not isinstance(c, (int, Fraction)):
            raise TypeError(f"exact scalar expected, got {type(c).__name__}")
    int_result = (
        isinstance(f, IntSeries)
        and isinstance(g, IntSeries)
        and isinstance(a, int)
        and isinstance(b, int)
    )
    n = min(f.prec, g.prec)
    if int_result:
        return IntSeries([a * x + b * y for x, y in zip(f.coeffs[: n + 1], g.coeffs[: n + 1])])
    a = Fraction(a)
    b = Fraction(b)
    return RatSeries([a * Fraction(x) + b * Fraction(y) for x, y in zip(f.coeffs[: n + 1], g.coeffs[: n + 1])])


def series_mul(f, g):
    """Cauchy product truncated to min(prec(f), prec(g)); both operands
    must be the same kind of series."""
    if isinstance(f, IntSeries) and isinstance(g, IntSeries):
        n_out = min(f.prec, g.prec) + 1
        return IntSeries(_int_convolve(f.coeffs, g.coeffs, n_out))
    if isinstance(f, RatSeries) and isinstance(g, RatSeries):
        n_out = min(f.prec, g.prec) + 1
        out = [Fraction(0)] * n_out
        for i, ci in enumerate(f.coeffs[:n_out]):
            if ci:
                for j, cj in enumerate(g.coeffs[: n_out - i]):
                    if cj:
                        out[i + j] += ci * cj
        return RatSeries(out)
    raise TypeError("series_mul needs two series of the same kind")


def series_pow(f, e):
    """f**e at the precision of f, by repeated squaring; f**0 == 1."""
    if not isinstance(e, int) or e < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if not isinstance(f, (IntSeries, RatSeries)):
        raise TypeError("series operand expected")
    result = type(f).one(f.prec)
    base = f
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def _int_convolve(a, b, n_out):
    """First n_out coefficients of the integer convolution a*b."""
    a = a[:n_out]
    b = b[:n_out]
    if min(len(a), len(b)) < _KRONECKER_MIN_TERMS:
        return _convolve_schoolbook(a, b, n_out)
    return _convolve_kronecker(a, b, n_out)


def _convolve_schoolbook(a, b, n_out):
    out = [0] * n_out
    for i, ai in enumerate(a):
        if ai:
            for j in range(min(len(b), n_out - i)):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return out


def _convolve_kronecker(a, b, n_out):
    # Evaluate both polynomials at 2^w with w wide enough that every
    # coefficient of the product fits in a signed w-bit window, multiply
    # once, then slice the windows back out.
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * n_out
    w = (amax * bmax * min(len(a), len(b))).bit_length() + 2
    w = (w + 7) & ~7
    nbytes = w // 8
    x = _pack_signed(a, nbytes)
    y = _pack_signed(b, nbytes)
    if _mpz is not None:
        prod = int(_mpz(x) * _mpz(y))
    else:
        prod = x * y
    # Shift every window by 2^(w-1) so the signed digits become plain
    # byte-aligned fields, then extract.  Masking keeps only the windows
    # we need; higher ones cannot disturb lower ones because the offset
    # leaves no carries.
    half = 1 << (w - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n_out, "little")
    mask = (1 << (w * n_out)) - 1
    data = ((prod + offset) & mask).to_bytes(n_out * nbytes, "little")
    return [
        int.from_bytes(data[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(n_out)
    ]


def _pack_signed(cs, nbytes):
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in cs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in cs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

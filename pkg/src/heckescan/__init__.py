"""Exact q-expansion arithmetic, T2 Hecke traces for level-1 cusp forms,
weight-range duplicate scanning, and prime-counting bound verification."""

from .series import IntSeries, RatSeries, series_linear, series_mul, series_pow
from .modforms import (
    MillerBasis,
    bernoulli,
    delta,
    dim_cusp,
    eisenstein,
    miller_basis,
)
from .hecke import (
    CharPoly,
    IrreducibilityVerdict,
    T2Matrix,
    charpoly_t2,
    check_irreducible,
    distinguish,
    eigenform_coeffs,
    t2_coefficient,
    t2_matrix,
    trace_t2,
)
from .primes import (
    DEFAULT_THETA_BITS,
    PrimeTable,
    PrimorialRow,
    primorial_row,
    sieve,
    smallest_nondivisor_prime,
    theta,
)
from .bounds import (
    ASYMPTOTIC_NOTE,
    DUSART_COEFF,
    UNSHIFTED_X_MAX,
    BoundReport,
    CheckReport,
    FailureInterval,
    asymptotic_bounds,
    bound_report,
    exceptional_levels,
    failure_intervals,
    main_bound,
    murty_bound,
    verify_dusart,
    verify_lemma_theta,
)
from .scan import (
    MAEDA_CAVEAT,
    RecordFileError,
    ScanReport,
    WeightRecord,
    compute_record,
    detect_duplicates,
    load_records,
    run_scan,
    save_records,
)

__version__ = "0.1.0"

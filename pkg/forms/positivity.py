"""Positivity tests for real (p,p)-forms.

Bidegrees (0,0), (1,1), (n-1,n-1) and (n,n) reduce to a Hermitian matrix
and are decided exactly (congruence inertia) for exact forms, or by
eigenvalues with a tolerance for floating forms. Other bidegrees are
probed against random decomposable strongly positive forms of the
complementary bidegree and only ever report a sampled verdict.
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import nnls

from algebra.errors import FormError
from algebra.inertia import hermitian_inertia

from .const_form import ConstForm, _complement, hat, permutation_sign, top_coefficient, volume_factor
from .gaussian import GaussianRational

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-10
WITNESS_TOLERANCE = 1e-9
DEFAULT_SAMPLES = 10000
SAMPLE_CHUNK = 2000

POSITIVE_STRICT = 'positive-strict'
POSITIVE = 'positive'
NOT_STRICT = 'not-strict'
VIOLATED = 'violated'
NO_VIOLATION_FOUND = 'no-violation-found'


class HermCoeffMatrix:
    """Hermitian coefficient matrix [u_jk] of a (1,1) or hat-basis (n-1,n-1) form."""

    def __init__(self, entries: Sequence[Sequence[Any]]):
        size = len(entries)
        rows = []
        for row in entries:
            if len(row) != size:
                raise FormError("Coefficient matrix is not square")
            rows.append([GaussianRational.of(x) if isinstance(x, (int, Fraction)) else x for x in row])
        self.entries = rows
        self.exact = all(isinstance(x, GaussianRational) for row in rows for x in row)
        if not self.is_hermitian():
            raise FormError("Coefficient matrix is not Hermitian")

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_hermitian(self) -> bool:
        for j in range(self.size):
            for k in range(j, self.size):
                a, b = self.entries[j][k], self.entries[k][j]
                if self.exact:
                    if a != b.conjugate():
                        return False
                elif abs(complex(a) - complex(b).conjugate()) > FLOAT_TOLERANCE * max(1.0, abs(complex(a))):
                    return False
        return True

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.entries], dtype=complex)

    def inertia(self) -> Tuple[int, int, int]:
        """Exact (n_plus, n_zero, n_minus); exact matrices only."""
        if not self.exact:
            raise FormError("Exact inertia needs rational entries")
        real = [[x.re for x in row] for row in self.entries]
        imag = [[x.im for x in row] for row in self.entries]
        return hermitian_inertia(real, imag)

    def eigh(self) -> Tuple[np.ndarray, np.ndarray]:
        matrix = self.to_numpy()
        return np.linalg.eigh((matrix + matrix.conj().T) / 2)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HermCoeffMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"HermCoeffMatrix({self.entries})"


@dataclass
class FormVerdict:
    """Outcome of a positivity test.

    ``exact`` is True only when the verdict is a proof; sampled verdicts
    carry their sample count and seed.
    """
    kind: str
    method: str
    exact: bool
    eigenvalues: Optional[List[float]] = None
    inertia: Optional[Tuple[int, int, int]] = None
    witness: Optional[List[List[Tuple[float, float]]]] = None
    witness_value: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    min_pairing: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.kind in (POSITIVE_STRICT, POSITIVE, NO_VIOLATION_FOUND)

    def to_json(self) -> Dict[str, Any]:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        if 'inertia' in data:
            data['inertia'] = list(data['inertia'])
        return data


def form_from_matrix_11(matrix: Any) -> ConstForm:
    """sum_jk u_jk i dz_j ^ dzbar_k."""
    matrix = matrix if isinstance(matrix, HermCoeffMatrix) else HermCoeffMatrix(matrix)
    n = matrix.size
    i_unit = GaussianRational.i()
    return ConstForm(n, 1, 1, {
        ((j,), (k,)): i_unit * matrix.entries[j][k]
        for j in range(n) for k in range(n)
    })


def matrix_from_form_11(form: ConstForm) -> HermCoeffMatrix:
    if form.bidegree != (1, 1):
        raise FormError(f"Expected a (1,1)-form, got {form.bidegree}")
    n = form.n
    minus_i = GaussianRational(Fraction(0), Fraction(-1))
    return HermCoeffMatrix([
        [_divide_i(form.coefficient((j,), (k,)), minus_i) for k in range(n)]
        for j in range(n)
    ])


def form_from_matrix_hat(matrix: Any) -> ConstForm:
    """sum_jk u_jk hat(j, k)."""
    matrix = matrix if isinstance(matrix, HermCoeffMatrix) else HermCoeffMatrix(matrix)
    n = matrix.size
    total = ConstForm.zero(n, n - 1, n - 1)
    for j in range(n):
        for k in range(n):
            total = total + hat(n, j, k) * matrix.entries[j][k]
    return total


def matrix_from_form_hat(form: ConstForm) -> HermCoeffMatrix:
    """Coefficients of an (n-1, n-1)-form in the hat basis."""
    n = form.n
    if form.bidegree != (n - 1, n - 1):
        raise FormError(f"Expected an ({n - 1},{n - 1})-form, got {form.bidegree}")
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            scale = hat(n, j, k).coefficient(_complement(n, (j,)), _complement(n, (k,)))
            value = form.coefficient(_complement(n, (j,)), _complement(n, (k,)))
            if form.exact:
                value = GaussianRational.of(value)
            row.append(value / scale if isinstance(value, GaussianRational) else complex(value) / complex(scale))
        rows.append(row)
    return HermCoeffMatrix(rows)


def _divide_i(value: Any, minus_i: GaussianRational) -> Any:
    if isinstance(value, GaussianRational):
        return value * minus_i
    if value == 0:
        return GaussianRational()
    return complex(value) * -1j


def associated_matrix(form: ConstForm) -> HermCoeffMatrix:
    """The Hermitian matrix deciding positivity in bidegrees 0, 1, n-1, n."""
    n, p = form.n, form.p
    if p == 0:
        return HermCoeffMatrix([[form.coefficient((), ())]])
    if p == n:
        value = top_coefficient(form)
        return HermCoeffMatrix([[value if isinstance(value, (GaussianRational, int)) else complex(value)]])
    if p == 1:
        return matrix_from_form_11(form)
    if p == n - 1:
        return matrix_from_form_hat(form)
    raise FormError(f"Bidegree ({p},{p}) has no associated matrix on C^{n}")


def is_exactly_testable(form: ConstForm) -> bool:
    return form.p in (0, 1, form.n - 1, form.n)


def _require_real(form: ConstForm):
    if form.p != form.q:
        raise FormError(f"Positivity needs bidegree (p,p), got {form.bidegree}")
    if not form.is_real():
        raise FormError("Positivity is only defined for real forms")


def is_positive(
    form: ConstForm,
    mode: str = 'semi',
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tolerance: Optional[float] = None
) -> FormVerdict:
    """Decide (or sample) positivity of a real (p,p)-form.

    Args:
        form: Real (p,p)-form
        mode: ``semi`` or ``strict``
        samples: Decomposable test forms for bidegrees without a matrix criterion
        seed: RNG seed for sampling
        tolerance: Eigenvalue tolerance for floating forms (FLOAT_TOLERANCE) or
            pairing tolerance when sampling (WITNESS_TOLERANCE)

    Raises:
        FormError: for non-real input, an unknown mode or samples < 1
    """
    if mode not in ('semi', 'strict'):
        raise FormError(f"Unknown positivity mode {mode!r}")
    _require_real(form)
    if is_exactly_testable(form):
        return _matrix_verdict(form, mode, FLOAT_TOLERANCE if tolerance is None else tolerance)
    logger.debug(f"Sampling positivity of a ({form.p},{form.p})-form on C^{form.n} with {samples} samples")
    return sampled_positivity(
        form, samples=samples, seed=seed, tolerance=WITNESS_TOLERANCE if tolerance is None else tolerance,
    )


def _matrix_verdict(form: ConstForm, mode: str, tolerance: float) -> FormVerdict:
    matrix = associated_matrix(form)
    values, vectors = matrix.eigh()
    eigenvalues = [float(v) for v in values]
    if matrix.exact:
        plus, zero, minus = matrix.inertia()
        inertia = (plus, zero, minus)
        semi, strict = minus == 0, minus == 0 and zero == 0
        method = 'exact-inertia'
    else:
        inertia = None
        semi = values[0] >= -tolerance
        strict = values[0] > tolerance
        method = 'eigenvalue'
    witness = None
    witness_value = None
    if not semi:
        vector = vectors[:, 0]
        if form.p == form.n - 1 and form.p != 1:
            vector = vector.conj()
        witness = [[(float(x.real), float(x.imag)) for x in vector]]
        witness_value = eigenvalues[0]
        kind = VIOLATED
    elif mode == 'strict':
        kind = POSITIVE_STRICT if strict else NOT_STRICT
    else:
        kind = POSITIVE
    return FormVerdict(
        kind=kind, method=method, exact=matrix.exact, eigenvalues=eigenvalues, inertia=inertia,
        witness=witness, witness_value=witness_value,
    )


# -- sampling ---------------------------------------------------------------

def random_unit_vectors(rng: np.random.Generator, count: int, m: int, n: int) -> np.ndarray:
    """``count`` tuples of m vectors drawn uniformly from the unit sphere of C^n."""
    raw = rng.standard_normal((count, m, n)) + 1j * rng.standard_normal((count, m, n))
    return raw / np.linalg.norm(raw, axis=2, keepdims=True)


def _minors(alphas: np.ndarray, subsets: List[Tuple[int, ...]]) -> np.ndarray:
    """det of the m x m column minors of each m x n matrix in ``alphas``."""
    return np.stack([np.linalg.det(alphas[:, :, list(subset)]) for subset in subsets], axis=1)


def pairing_matrix(form: ConstForm) -> Tuple[List[Tuple[int, ...]], np.ndarray]:
    """G with (u ^ v_A) / dvol = sum_KL minor_K(A) G_KL conj(minor_L(A)).

    v_A = prod_l (i a_l ^ abar_l) has coefficient
    i^m (-1)^{m(m-1)/2} det(A_K) conj(det(A_L)) on dz_K ^ dzbar_L.
    """
    n, p = form.n, form.p
    m = n - p
    subsets = list(combinations(range(n), m))
    position = {subset: i for i, subset in enumerate(subsets)}
    decomposable_factor = complex(volume_factor(m))
    volume = complex(volume_factor(n))
    cross = -1 if (p * m) % 2 else 1
    weights = np.zeros((len(subsets), len(subsets)), dtype=complex)
    for (left, right), value in form.items():
        k = _complement(n, left)
        l = _complement(n, right)
        sign = cross * permutation_sign(left + k) * permutation_sign(right + l)
        weights[position[k], position[l]] += sign * complex(value) * decomposable_factor / volume
    return subsets, weights


def pair_with_decomposables(form: ConstForm, alphas: np.ndarray) -> np.ndarray:
    """Real pairings of a (p,p)-form with the decomposable forms built from each tuple in ``alphas``."""
    subsets, weights = pairing_matrix(form)
    if form.p == form.n:
        return np.full(alphas.shape[0], complex(top_coefficient(form)).real)
    minors = _minors(alphas, subsets)
    return np.einsum('sk,kl,sl->s', minors, weights, minors.conj()).real


def sampled_positivity(
    form: ConstForm,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tolerance: float = WITNESS_TOLERANCE
) -> FormVerdict:
    """Probe u against ``samples`` random decomposable strongly positive forms.

    Chunks draw from independent child seeds of ``seed``, so the outcome
    does not depend on the chunk evaluation order.
    """
    if samples < 1:
        raise FormError(f"Sampling needs at least one test form, got samples={samples}")
    m = form.n - form.p
    chunks = max(1, -(-samples // SAMPLE_CHUNK))
    children = np.random.SeedSequence(seed).spawn(chunks)
    remaining = samples
    best_value = np.inf
    best_alpha = None
    for child in children:
        count = min(SAMPLE_CHUNK, remaining)
        remaining -= count
        alphas = random_unit_vectors(np.random.default_rng(child), count, m, form.n)
        values = pair_with_decomposables(form, alphas)
        index = int(np.argmin(values))
        if values[index] < best_value:
            best_value = float(values[index])
            best_alpha = alphas[index]
    if best_value < -tolerance:
        witness = [[(float(x.real), float(x.imag)) for x in row] for row in best_alpha]
        return FormVerdict(
            kind=VIOLATED, method='sampled', exact=False, witness=witness, witness_value=best_value,
            samples=samples, seed=seed, min_pairing=best_value,
        )
    return FormVerdict(
        kind=NO_VIOLATION_FOUND, method='sampled', exact=False,
        samples=samples, seed=seed, min_pairing=best_value,
    )


def _form_vector(form: ConstForm, subsets_left: List[Tuple[int, ...]], subsets_right: List[Tuple[int, ...]]) -> np.ndarray:
    return np.array([complex(form.coefficient(a, b)) for a in subsets_left for b in subsets_right], dtype=complex)


def decomposable_coefficients(alphas: np.ndarray, p: int) -> np.ndarray:
    """Coefficient vectors (over dz_K ^ dzbar_L, K and L of size p) of decomposable forms."""
    n = alphas.shape[2]
    subsets = list(combinations(range(n), p))
    minors = _minors(alphas, subsets)
    factor = complex(volume_factor(p))
    return factor * np.einsum('sk,sl->skl', minors, minors.conj()).reshape(alphas.shape[0], -1)


def is_strongly_positive_witness(
    form: ConstForm,
    generators: Sequence[Sequence[Sequence[complex]]],
    tolerance: float = WITNESS_TOLERANCE
) -> Optional[List[float]]:
    """Nonnegative coefficients expressing u through the supplied decomposables, if found.

    Solves min ||G x - u|| over x >= 0 with scipy's NNLS on the stacked real
    and imaginary parts. A missing witness proves nothing.
    """
    _require_real(form)
    if not generators:
        return None
    n, p = form.n, form.p
    alphas = np.array([[[complex(x) for x in vector] for vector in generator] for generator in generators], dtype=complex)
    if alphas.shape[1:] != (p, n):
        raise FormError(f"Generators must be {p}-tuples of vectors in C^{n}")
    subsets = list(combinations(range(n), p))
    columns = decomposable_coefficients(alphas, p).T
    target = _form_vector(form, subsets, subsets)
    system = np.vstack([columns.real, columns.imag])
    rhs = np.concatenate([target.real, target.imag])
    coefficients, residual = nnls(system, rhs)
    scale = max(1.0, float(np.linalg.norm(rhs)))
    if residual > tolerance * scale:
        logger.debug(f"No strong positivity witness: residual {residual:.3e}")
        return None
    return [float(c) for c in coefficients]


def random_strongly_positive(n: int, p: int, terms: int, rng: np.random.Generator) -> ConstForm:
    """Random nonnegative combination of decomposable (p,p)-forms."""
    alphas = random_unit_vectors(rng, terms, p, n)
    weights = rng.uniform(0.0, 1.0, terms)
    vectors = (weights[:, None] * decomposable_coefficients(alphas, p)).sum(axis=0)
    subsets = list(combinations(range(n), p))
    coefficients = {}
    for i, left in enumerate(subsets):
        for j, right in enumerate(subsets):
            coefficients[(left, right)] = complex(vectors[i * len(subsets) + j])
    return ConstForm(n, p, p, coefficients)


@dataclass
class DualitySample:
    """Aggregate of a cone-duality sampling run."""
    n: int
    p: int
    pairs: int
    seed: int
    min_pairing: float
    violations: int = 0
    strong_implies_positive: bool = True
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


def cone_duality_sample(
    n: int,
    p: int,
    pairs: int = DEFAULT_SAMPLES,
    seed: int = 0,
    forms: int = 10,
    tolerance: float = WITNESS_TOLERANCE
) -> DualitySample:
    """Pair random strongly positive (p,p)-forms with random decomposable (n-p,n-p)-forms.

    Every pairing must be >= -tolerance, and every sampled strongly positive
    form must pass is_positive(semi).
    """
    rng = np.random.default_rng(seed)
    per_form = max(1, pairs // forms)
    result = DualitySample(n=n, p=p, pairs=per_form * forms, seed=seed, min_pairing=float('inf'))
    for index in range(forms):
        form = random_strongly_positive(n, p, terms=1 + index % 4, rng=rng)
        alphas = random_unit_vectors(rng, per_form, n - p, n) if p < n else np.zeros((per_form, 0, n))
        values = pair_with_decomposables(form, alphas)
        result.min_pairing = min(result.min_pairing, float(values.min()))
        result.violations += int((values < -tolerance).sum())
        verdict = is_positive(form, 'semi', samples=min(per_form, 500), seed=seed + index, tolerance=tolerance)
        if not verdict.passed:
            result.strong_implies_positive = False
            result.failures.append(f"form {index}: {verdict.kind}")
    return result

"""Pointwise Chern-Weil lab.

A CurvatureTensor holds c_{jk lambda mu} for
Theta = sum c_{jk lambda mu} dz_j ^ dzbar_k (x) e_lambda^* (x) e_mu at one
point. Chern forms are read off det(Id + t (i / 2 pi) Theta); Schur forms
substitute them into the Jacobi-Trudi polynomials. Everything here is
floating point and seeded.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from algebra.errors import FormError
from algebra.partitions import partition_enumerate
from algebra.schur import determinant, schur_poly

from .const_form import ConstForm
from .positivity import FLOAT_TOLERANCE, is_positive

logger = logging.getLogger(__name__)

GRIFFITHS_RESTARTS = 16
GRIFFITHS_CONVERGENCE = 1e-12
GRIFFITHS_MAX_ITERATIONS = 500
NAKANO_EPSILON = 0.1
CHERN_WEIL_FACTOR = 1j / (2 * math.pi)


class CurvatureTensor:
    """Curvature coefficients with c_{jk lambda mu} = conj(c_{kj mu lambda})."""

    def __init__(self, coefficients: np.ndarray, tolerance: float = FLOAT_TOLERANCE):
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.ndim != 4 or coefficients.shape[0] != coefficients.shape[1] \
                or coefficients.shape[2] != coefficients.shape[3]:
            raise FormError(f"Curvature tensor must have shape (n, n, r, r), got {coefficients.shape}")
        self.c = coefficients
        partner = coefficients.transpose(1, 0, 3, 2).conj()
        scale = max(1.0, float(np.abs(coefficients).max(initial=0.0)))
        if np.abs(coefficients - partner).max(initial=0.0) > tolerance * scale:
            raise FormError("Curvature tensor violates the Hermitian symmetry")

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def r(self) -> int:
        return self.c.shape[2]

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, n: int, r: int) -> 'CurvatureTensor':
        """Reindex a Hermitian nr x nr matrix, row (j, lambda) -> j*r + lambda."""
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (n * r, n * r):
            raise FormError(f"Expected a {n * r}x{n * r} matrix, got {matrix.shape}")
        return cls(matrix.reshape(n, r, n, r).transpose(0, 2, 1, 3))

    @classmethod
    def scalar(cls, theta0: np.ndarray, r: int) -> 'CurvatureTensor':
        """theta0 (x) Id: c_{jk lambda mu} = theta0_jk delta_{lambda mu}."""
        theta0 = np.asarray(theta0, dtype=complex)
        return cls(np.einsum('jk,lm->jklm', theta0, np.eye(r)))

    @classmethod
    def zero(cls, n: int, r: int) -> 'CurvatureTensor':
        return cls(np.zeros((n, n, r, r), dtype=complex))

    def to_matrix(self) -> np.ndarray:
        n, r = self.n, self.r
        return self.c.transpose(0, 2, 1, 3).reshape(n * r, n * r)

    def nakano_lower_bound(self) -> float:
        """Smallest eigenvalue of theta on all of C^n (x) C^r."""
        matrix = self.to_matrix()
        return float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])

    def conjugate_fiber(self, unitary: np.ndarray) -> 'CurvatureTensor':
        """Change of unitary frame on the fiber: C_jk -> U^* C_jk U."""
        return CurvatureTensor(np.einsum('al,jkab,bm->jklm', unitary.conj(), self.c, unitary))

    def form_matrix(self) -> List[List[ConstForm]]:
        """The r x r matrix of (1,1)-forms (i / 2 pi) Theta_{lambda mu}."""
        n, r = self.n, self.r
        return [
            [
                ConstForm(n, 1, 1, {
                    ((j,), (k,)): CHERN_WEIL_FACTOR * self.c[j, k, lam, mu]
                    for j in range(n) for k in range(n)
                })
                for mu in range(r)
            ]
            for lam in range(r)
        ]

    def to_json(self) -> Dict[str, Any]:
        """Only entries with (j, lambda) <= (k, mu) in the flattened order are stored."""
        n, r = self.n, self.r
        entries = []
        for j in range(n):
            for k in range(n):
                for lam in range(r):
                    for mu in range(r):
                        if j * r + lam > k * r + mu:
                            continue
                        value = self.c[j, k, lam, mu]
                        if value != 0:
                            entries.append([j + 1, k + 1, lam + 1, mu + 1, float(value.real), float(value.imag)])
        return {'n': n, 'r': r, 'c': entries}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'CurvatureTensor':
        n, r = int(data['n']), int(data['r'])
        c = np.zeros((n, n, r, r), dtype=complex)
        for j, k, lam, mu, re, im in data.get('c', []):
            j, k, lam, mu = j - 1, k - 1, lam - 1, mu - 1
            value = complex(re, im)
            c[j, k, lam, mu] = value
            c[k, j, mu, lam] = value.conjugate()
        return cls(c)


def theta_eval(tensor: CurvatureTensor, u: np.ndarray) -> float:
    """theta(u, u) = sum c_{jk lambda mu} u_{j lambda} conj(u_{k mu})."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (tensor.n, tensor.r):
        raise FormError(f"Expected an {tensor.n}x{tensor.r} matrix, got {u.shape}")
    return float(np.einsum('jklm,jl,km->', tensor.c, u, u.conj()).real)


@dataclass
class GriffithsResult:
    """Best decomposable value found; an upper bound on the true minimum."""
    value: float
    xi: List[complex]
    s: List[complex]
    positive: bool
    restarts: int
    seed: int

    def to_json(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'xi': [[z.real, z.imag] for z in self.xi],
            's': [[z.real, z.imag] for z in self.s],
            'positive': self.positive,
            'restarts': self.restarts,
            'seed': self.seed,
        }


def _bottom(matrix: np.ndarray) -> Tuple[float, np.ndarray]:
    values, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return float(values[0]), vectors[:, 0]


def griffiths_min(
    tensor: CurvatureTensor,
    tolerance: float = FLOAT_TOLERANCE,
    seed: int = 0,
    restarts: int = GRIFFITHS_RESTARTS,
    convergence: float = GRIFFITHS_CONVERGENCE
) -> GriffithsResult:
    """Minimize theta(xi (x) s) over unit xi, s by alternating bottom eigenvectors.

    With s fixed, theta = conj(xi)^* B conj(xi) for the Hermitian
    B_jk = sum c_{jk lambda mu} s_lambda conj(s_mu), so the best xi is the
    conjugate of B's bottom eigenvector; the s step is symmetric.
    """
    rng = np.random.default_rng(seed)
    best: Optional[Tuple[float, np.ndarray, np.ndarray]] = None
    for _ in range(restarts):
        s = rng.standard_normal(tensor.r) + 1j * rng.standard_normal(tensor.r)
        s /= np.linalg.norm(s)
        value = np.inf
        xi = np.zeros(tensor.n, dtype=complex)
        for _ in range(GRIFFITHS_MAX_ITERATIONS):
            b = np.einsum('jklm,l,m->jk', tensor.c, s, s.conj())
            _, vector = _bottom(b)
            xi = vector.conj()
            d = np.einsum('jklm,j,k->lm', tensor.c, xi, xi.conj())
            new_value, vector = _bottom(d)
            s = vector.conj()
            if abs(value - new_value) < convergence:
                value = new_value
                break
            value = new_value
        if best is None or value < best[0]:
            best = (value, xi, s)
    value, xi, s = best
    return GriffithsResult(
        value=float(value),
        xi=[complex(z) for z in xi],
        s=[complex(z) for z in s],
        positive=value > tolerance,
        restarts=restarts,
        seed=seed,
    )


def random_nakano_positive(n: int, r: int, seed: Any, epsilon: float = NAKANO_EPSILON) -> CurvatureTensor:
    """Tensor of A = B B^* + epsilon I for a random complex nr x nr matrix B."""
    if n < 1 or r < 1:
        raise FormError(f"Need n, r >= 1, got n={n}, r={r}")
    rng = np.random.default_rng(seed)
    size = n * r
    b = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    a = b @ b.conj().T + epsilon * np.eye(size)
    a = (a + a.conj().T) / 2
    return CurvatureTensor.from_matrix(a, n, r)


def random_unitary(size: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with the phase of R's diagonal removed."""
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def _unit_form(n: int) -> ConstForm:
    return ConstForm.unit(n, exact=False)


def chern_form(tensor: CurvatureTensor, k: int, method: str = 'determinant') -> ConstForm:
    """c_k(E, h): the t^k coefficient of det(Id + t (i / 2 pi) Theta).

    ``determinant`` sums the k x k principal minors of the form matrix;
    ``trace`` uses the power traces p_m = tr(Omega^m) and Newton's identities.
    """
    n, r = tensor.n, tensor.r
    if k == 0:
        return _unit_form(n)
    if k < 0 or k > min(r, n):
        size = min(max(k, 0), n)
        return ConstForm.zero(n, size, size)
    omega = tensor.form_matrix()
    if method == 'determinant':
        total = ConstForm.zero(n, k, k)
        for subset in combinations(range(r), k):
            minor = [[omega[a][b] for b in subset] for a in subset]
            total = total + determinant(minor, _unit_form(n))
        return total
    if method == 'trace':
        return _newton_chern_forms(omega, n, r, k)[k]
    raise FormError(f"Unknown Chern form method {method!r}")


def _matrix_product(a: List[List[ConstForm]], b: List[List[ConstForm]], n: int) -> List[List[ConstForm]]:
    size = len(a)
    result = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = ConstForm.zero(n)
            for m in range(size):
                entry = entry + a[i][m] * b[m][j]
            row.append(entry)
        result.append(row)
    return result


def _newton_chern_forms(omega: List[List[ConstForm]], n: int, r: int, k: int) -> List[ConstForm]:
    power_traces = [None]
    power = omega
    for m in range(1, k + 1):
        if m > 1:
            power = _matrix_product(power, omega, n)
        trace = ConstForm.zero(n)
        for i in range(r):
            trace = trace + power[i][i]
        power_traces.append(trace)
    chern = [_unit_form(n)]
    for m in range(1, k + 1):
        total = ConstForm.zero(n)
        for i in range(1, m + 1):
            term = chern[m - i] * power_traces[i]
            total = total + (term if i % 2 == 1 else -term)
        chern.append(total.scale(1.0 / m))
    return chern


def schur_form(tensor: CurvatureTensor, partition: Sequence[int], method: str = 'determinant') -> ConstForm:
    """s_lambda(c_1(E, h), ..., c_r(E, h)) with wedge products."""
    poly = schur_poly(partition, tensor.r)
    forms = [chern_form(tensor, i, method) for i in range(1, tensor.r + 1)]
    return poly.evaluate(forms, _unit_form(tensor.n))


def form_distance(a: ConstForm, b: ConstForm) -> float:
    return (a - b).max_abs()


@dataclass
class SchurFormStats:
    partition: List[int]
    exact_test: bool
    passed: int = 0
    failed: int = 0


@dataclass
class LabReport:
    """Statistics of a seeded Chern-Weil lab run; never a verdict on Schur-form positivity."""
    n: int
    r: int
    seed: int
    samples: int
    griffiths_positive: int = 0
    griffiths_below_nakano: int = 0
    max_method_gap: float = 0.0
    max_gauge_gap: float = 0.0
    schur_forms: List[SchurFormStats] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


def chern_weil_lab(
    n: int,
    r: int,
    seed: int,
    samples: int,
    positivity_samples: int = 1000,
    tolerance: float = FLOAT_TOLERANCE
) -> LabReport:
    """Run griffiths_min, method agreement, gauge invariance and Schur-form tests on Nakano samples."""
    children = np.random.SeedSequence(seed).spawn(samples)
    report = LabReport(n=n, r=r, seed=seed, samples=samples)
    partitions = [p for k in range(1, n + 1) for p in partition_enumerate(k, r)]
    stats = {p: SchurFormStats(p.to_list(), exact_test=p.weight in (0, 1, n - 1, n)) for p in partitions}
    for index, child in enumerate(children):
        sample_seed = int(child.generate_state(1)[0])
        rng = np.random.default_rng(sample_seed)
        tensor = random_nakano_positive(n, r, rng)
        griffiths = griffiths_min(tensor, tolerance=tolerance, seed=sample_seed)
        report.griffiths_positive += int(griffiths.positive)
        if griffiths.value < tensor.nakano_lower_bound() - tolerance:
            report.griffiths_below_nakano += 1
        gauged = tensor.conjugate_fiber(random_unitary(r, rng))
        for k in range(1, min(n, r) + 1):
            by_det = chern_form(tensor, k, 'determinant')
            report.max_method_gap = max(report.max_method_gap, form_distance(by_det, chern_form(tensor, k, 'trace')))
            report.max_gauge_gap = max(report.max_gauge_gap, form_distance(by_det, chern_form(gauged, k)))
        for partition in partitions:
            form = schur_form(tensor, partition)
            if form.is_zero():
                stats[partition].passed += 1
                continue
            verdict = is_positive(form, 'semi', samples=positivity_samples, seed=sample_seed)
            if verdict.passed:
                stats[partition].passed += 1
            else:
                stats[partition].failed += 1
                logger.debug(f"Sample {index}: Schur form {partition} reported {verdict.kind}")
    report.schur_forms = [stats[p] for p in partitions]
    logger.info(f"Chern-Weil lab n={n} r={r}: {report.griffiths_positive}/{samples} Griffiths-positive")
    return report

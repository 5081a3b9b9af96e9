"""Hermitian adjacency matrices and inertia via two independent routes.

The floating route reduces the Hermitian matrix to a real symmetric
tridiagonal form (Householder reflections, then absorption of the
off-diagonal phases into a diagonal unitary) and counts eigenvalues on
each side of ``+/-zero_tol`` with Sturm sequences; the counts are exact
for the computed tridiagonal matrix.

The exact route applies only when every gain is one of 1, -1, i, -i:
the adjacency matrix then has Gaussian-integer entries and an integer
characteristic polynomial, computed exactly by the Faddeev-LeVerrier
recurrence.  Because the matrix is Hermitian all roots are real, so
Descartes' rule on the coefficient signs counts the positive eigenvalues
without any root finding.

``inertia`` dispatches: exact when possible, floating otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import GainGraph

#: Dense Hermitian matrix as used throughout this module.
HermitianMatrix = np.ndarray

#: Largest admissible deviation from conjugate symmetry.
HERMITIAN_RESIDUAL_TOLERANCE = 1e-10


class NonHermitianError(ValueError):
    """Raised when a matrix fails the conjugate-symmetry check."""


class InexactGainError(ValueError):
    """Raised when the exact route meets a gain outside {1, -1, i, -i}."""


@dataclass(frozen=True)
class Inertia:
    """Counts of positive, negative, and zero eigenvalues."""

    positive: int
    negative: int
    zero: int

    def __post_init__(self) -> None:
        if min(self.positive, self.negative, self.zero) < 0:
            raise ValueError("inertia counts must be non-negative")

    @property
    def order(self) -> int:
        return self.positive + self.negative + self.zero

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def adjacency_matrix(graph: GainGraph) -> HermitianMatrix:
    """Dense Hermitian adjacency matrix; entry (u, v) is the gain of u -> v."""
    n = graph.vertex_count
    a = np.zeros((n, n), dtype=np.complex128)
    for u, v, g in graph.edges:
        a[u, v] = g.value
        a[v, u] = g.conjugate().value
    return a


def default_zero_tolerance(graph: GainGraph) -> float:
    """Scale-aware threshold separating numerically zero eigenvalues.

    Eigenvalues of a unit-gain adjacency matrix are bounded by the
    maximum degree, so the threshold scales with it.
    """
    max_degree = max((graph.degree(v) for v in range(graph.vertex_count)), default=0)
    return graph.vertex_count * 2.0**-52 * max(1, max_degree)


def _tridiagonalize(a: HermitianMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a Hermitian matrix to real tridiagonal (d, e) form.

    Householder similarity transformations zero everything below the
    first subdiagonal; the leftover complex subdiagonal phases are then
    absorbed by a diagonal unitary, leaving non-negative off-diagonals.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1 :, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        pivot = x[0]
        phase = pivot / abs(pivot) if pivot != 0 else 1.0 + 0.0j
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        block = a[k + 1 :, k + 1 :]
        w = block @ v
        mu = float(np.real(np.vdot(v, w)))
        u = w - mu * v
        block -= 2.0 * np.outer(v, u.conj())
        block -= 2.0 * np.outer(u, v.conj())
        sub = -phase * xnorm
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = sub
        a[k, k + 1] = sub.conjugate()
    diag = np.real(np.diagonal(a)).copy()
    off = np.abs(np.diagonal(a, -1)).copy()
    return diag, off


def _count_eigenvalues_below(diag: np.ndarray, off: np.ndarray, shift: float) -> int:
    """Sturm count: eigenvalues of the tridiagonal matrix below ``shift``.

    Classic LDL^T sign count with zero-pivot safeguarding; exact for the
    tridiagonal representative up to pivot perturbation.
    """
    pivot_min = float(np.finfo(np.float64).tiny)
    count = 0
    q = 1.0
    off_sq = off * off
    for i in range(diag.shape[0]):
        if i == 0:
            q = diag[0] - shift
        else:
            if abs(q) < pivot_min:
                q = -pivot_min
            q = (diag[i] - shift) - off_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def inertia_float(a: HermitianMatrix, zero_tol: float) -> Inertia:
    """Inertia of a Hermitian matrix with a zero band of ``+/-zero_tol``.

    Counts eigenvalues above ``zero_tol`` as positive and below
    ``-zero_tol`` as negative; the remainder are zeros.
    """
    if zero_tol <= 0:
        raise ValueError("zero tolerance must be positive")
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonHermitianError("matrix must be square")
    n = a.shape[0]
    if n == 0:
        return Inertia(0, 0, 0)
    residual = float(np.max(np.abs(a - a.conj().T)))
    if residual > HERMITIAN_RESIDUAL_TOLERANCE:
        raise NonHermitianError(f"symmetry residual {residual:g} exceeds tolerance")
    diag, off = _tridiagonalize(a)
    below_neg = _count_eigenvalues_below(diag, off, -zero_tol)
    below_pos = _count_eigenvalues_below(diag, off, zero_tol)
    return Inertia(n - below_pos, below_neg, below_pos - below_neg)


@dataclass(frozen=True)
class IntegerPolynomial:
    """Monic integer polynomial, coefficients from the leading term down."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def trailing_zero_count(self) -> int:
        count = 0
        for c in reversed(self.coefficients):
            if c != 0:
                break
            count += 1
        return count

    def sign_changes(self) -> int:
        """Sign alternations over the nonzero coefficients."""
        changes = 0
        last = 0
        for c in self.coefficients:
            if c == 0:
                continue
            sign = 1 if c > 0 else -1
            if last != 0 and sign != last:
                changes += 1
            last = sign
        return changes


def _exact_entry_matrices(graph: GainGraph) -> tuple[list[list[int]], list[list[int]]]:
    """Real and imaginary integer parts of the adjacency matrix."""
    n = graph.vertex_count
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for u, v, g in graph.edges:
        if not g.is_exact:
            raise InexactGainError(
                f"edge ({u}, {v}) carries a non-exact gain; exact route needs "
                "gains in {1, -1, i, -i}"
            )
        a, b = g.exact_pair
        re[u][v], im[u][v] = a, b
        re[v][u], im[v][u] = a, -b
    return re, im


def _coefficient_bound(n: int) -> int:
    """Hadamard-style bound on |coefficient| of the characteristic polynomial.

    The k-th coefficient is a signed sum of C(n, k) principal k x k
    minors, each at most k^(k/2) in absolute value for unit entries.
    """
    bound = 1
    for k in range(1, n + 1):
        minor = math.isqrt(k**k) + 1
        bound = max(bound, math.comb(n, k) * minor)
    return bound


@lru_cache(maxsize=1)
def _modular_primes() -> tuple[int, ...]:
    """Primes just under 2**25; products of squares stay inside int64."""
    primes: list[int] = []
    candidate = 2**25 - 1
    while len(primes) < 16:
        for d in range(3, math.isqrt(candidate) + 1, 2):
            if candidate % d == 0:
                break
        else:
            primes.append(candidate)
        candidate -= 2
    return tuple(primes)


def _char_poly_mod(re: np.ndarray, im: np.ndarray, p: int) -> list[tuple[int, int]]:
    """Faddeev-LeVerrier characteristic coefficients modulo a prime.

    Returns residues of [1, c1, ..., cn] as Gaussian residues packed as
    c_re + i*c_im; the imaginary parts must vanish after reconstruction.
    """
    n = re.shape[0]
    a_re = np.mod(re, p)
    a_im = np.mod(im, p)
    m_re = np.eye(n, dtype=np.int64)
    m_im = np.zeros((n, n), dtype=np.int64)
    coeffs: list[tuple[int, int]] = [(1, 0)]
    for k in range(1, n + 1):
        # M <- A @ M (complex product via four integer products).
        t_re = (a_re @ m_re - a_im @ m_im) % p
        t_im = (a_re @ m_im + a_im @ m_re) % p
        m_re, m_im = t_re, t_im
        inv_k = pow(k, -1, p)
        c_re = (-int(np.trace(m_re)) * inv_k) % p
        c_im = (-int(np.trace(m_im)) * inv_k) % p
        coeffs.append((c_re, c_im))
        idx = np.arange(n)
        m_re[idx, idx] = (m_re[idx, idx] + c_re) % p
        m_im[idx, idx] = (m_im[idx, idx] + c_im) % p
    return coeffs


def char_poly_exact(graph: GainGraph) -> IntegerPolynomial:
    """Exact integer characteristic polynomial of the adjacency matrix.

    Requires every gain to be an exact fourth root of unity.  The
    Faddeev-LeVerrier recurrence runs modulo enough word-size primes to
    cover the Hadamard coefficient bound and is reconstructed by the
    Chinese remainder theorem, so the result is provably exact.
    """
    n = graph.vertex_count
    re_list, im_list = _exact_entry_matrices(graph)
    if n == 0:
        return IntegerPolynomial((1,))
    re = np.array(re_list, dtype=np.int64)
    im = np.array(im_list, dtype=np.int64)

    bound = _coefficient_bound(n)
    primes: list[int] = []
    product = 1
    for p in _modular_primes():
        primes.append(p)
        product *= p
        if product > 2 * bound + 1:
            break
    if product <= 2 * bound + 1:
        # Beyond the prime table; fall back to plain exact arithmetic.
        return _char_poly_plain(graph)

    residues = [_char_poly_mod(re, im, p) for p in primes]
    coefficients: list[int] = []
    for k in range(n + 1):
        c_re = _crt([r[k][0] for r in residues], primes, product)
        c_im = _crt([r[k][1] for r in residues], primes, product)
        if c_im != 0:
            raise AssertionError("characteristic polynomial must be real")
        coefficients.append(c_re)
    return IntegerPolynomial(tuple(coefficients))


def _crt(residues: list[int], primes: list[int], product: int) -> int:
    """Symmetric Chinese-remainder lift into (-product/2, product/2]."""
    total = 0
    for r, p in zip(residues, primes):
        partial = product // p
        total += r * partial * pow(partial, -1, p)
    total %= product
    if total > product // 2:
        total -= product
    return total


def _char_poly_plain(graph: GainGraph) -> IntegerPolynomial:
    """Faddeev-LeVerrier over plain Gaussian integers (arbitrary size)."""
    n = graph.vertex_count
    re, im = _exact_entry_matrices(graph)
    if n == 0:
        return IntegerPolynomial((1,))
    m_re = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    m_im = [[0] * n for _ in range(n)]
    coefficients = [1]
    for k in range(1, n + 1):
        t_re = [[0] * n for _ in range(n)]
        t_im = [[0] * n for _ in range(n)]
        for i in range(n):
            re_i, im_i = re[i], im[i]
            t_re_i, t_im_i = t_re[i], t_im[i]
            for l in range(n):
                ar, ai = re_i[l], im_i[l]
                if ar == 0 and ai == 0:
                    continue
                m_re_l, m_im_l = m_re[l], m_im[l]
                for j in range(n):
                    br, bi = m_re_l[j], m_im_l[j]
                    t_re_i[j] += ar * br - ai * bi
                    t_im_i[j] += ar * bi + ai * br
        m_re, m_im = t_re, t_im
        trace_re = sum(m_re[i][i] for i in range(n))
        trace_im = sum(m_im[i][i] for i in range(n))
        if trace_re % k or trace_im % k:
            raise AssertionError("Faddeev-LeVerrier trace must divide exactly")
        c_re, c_im = -trace_re // k, -trace_im // k
        if c_im != 0:
            raise AssertionError("characteristic polynomial must be real")
        coefficients.append(c_re)
        for i in range(n):
            m_re[i][i] += c_re
    return IntegerPolynomial(tuple(coefficients))


def inertia_exact(graph: GainGraph) -> Inertia:
    """Exact inertia for graphs whose gains are all fourth roots of unity.

    The zero count is the multiplicity of the root 0 (trailing zero
    coefficients); the positive count is the number of sign changes of
    the remaining coefficients, which Descartes' rule makes exact when
    all roots are real.
    """
    poly = char_poly_exact(graph)
    zero = poly.trailing_zero_count()
    positive = poly.sign_changes()
    return Inertia(positive, poly.degree - zero - positive, zero)


def inertia(graph: GainGraph) -> Inertia:
    """Inertia of the graph's Hermitian adjacency matrix.

    Dispatches to the exact integer route when every gain is exact, and
    to the tridiagonal Sturm route with the default tolerance otherwise.
    """
    if all(g.is_exact for _, _, g in graph.edges):
        return inertia_exact(graph)
    return inertia_float(adjacency_matrix(graph), default_zero_tolerance(graph))

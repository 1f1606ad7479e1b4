"""Independent numerical ground truth for tensor and matrix positive semidefiniteness.

``sphere_min`` estimates the minimum of the Hankel polynomial on the unit
sphere by deterministic multistart projected gradient descent.  By
homogeneity, the tensor is positive semidefinite exactly when that minimum is
nonnegative, so a negative evaluation is a hard refutation while a
nonnegative estimate is merely evidence (the search is non-convex and never
proves positivity; proofs come from certificates).

``matrix_psd`` decides matrix positive semidefiniteness with a hand-rolled
cyclic Jacobi eigenvalue iteration, deliberately independent of any library
eigensolver so that library and oracle cannot share a bug.

Randomness is a splitmix-style 64-bit mixing generator, written out below so
results reproduce across implementations::

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output <- z XOR (z >> 31)

Unit-vector starts draw each coordinate uniformly from [-1, 1) (output /
2^63 - 1), redraw vectors with norm below 1e-3, then normalize.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .tensor import GeneratingVector, candidate_witnesses
from .polyeval import eval_fast, value_and_gradient

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

#: Initial line-search step and maximum halvings per descent step.
ETA0 = 0.1
MAX_HALVINGS = 40
MAX_ITERATIONS = 10_000
PLATEAU_TOL = 1e-14
#: Secondary stop: if a whole window of iterations decreases f by less than
#: COARSE_TOL per step on average, the descent is inside a flat polynomial
#: tail (there the per-step decrease shrinks like a power of the iteration
#: count, so waiting for PLATEAU_TOL would burn the whole iteration cap
#: without changing any verdict-relevant digit).
COARSE_TOL = 1e-9
COARSE_WINDOW = 30
#: Upper bound on the adaptive step size (the line search halves from here).
ETA_MAX = 1e12


class SplitMix64:
    """The 64-bit mixing generator from the module docstring."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform_signed(self) -> float:
        """Uniform in [-1, 1)."""
        return self.next_u64() / (1 << 63) - 1.0

    def unit_vector(self, n: int) -> tuple:
        while True:
            x = [self.uniform_signed() for _ in range(n)]
            norm = math.sqrt(sum(t * t for t in x))
            if norm >= 1e-3:
                return tuple(t / norm for t in x)


@dataclass(frozen=True)
class SphereMinResult:
    min_value: float
    argmin: tuple
    starts: int
    converged_starts: int
    rng_seed: int

    def to_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "argmin": list(self.argmin),
            "starts": self.starts,
            "converged_starts": self.converged_starts,
            "rng_seed": self.rng_seed,
        }


def _normalize(x) -> tuple | None:
    norm = math.sqrt(sum(t * t for t in x))
    if norm == 0.0 or not math.isfinite(norm):
        return None
    return tuple(t / norm for t in x)


def _descend(gen: GeneratingVector, x0: tuple):
    """Projected gradient descent from x0; returns (f, x, converged)."""
    x = x0
    f, grad = value_and_gradient(gen, x)
    eta = ETA0
    checkpoint = f
    for iteration in range(1, MAX_ITERATIONS + 1):
        # Carry the last successful step size forward and let it grow; on
        # degenerate minima the useful step size diverges, and resetting to
        # ETA0 every iteration would trap the descent in a power-law tail.
        trial = min(eta * 2.0, ETA_MAX)
        step = None
        for _ in range(MAX_HALVINGS + 1):
            y = _normalize([xi - trial * gi for xi, gi in zip(x, grad)])
            if y is not None:
                fy = eval_fast(gen, y)
                if fy < f:
                    step = (fy, y, trial)
                    break
            trial *= 0.5
        if step is None:
            return f, x, True  # no decreasing step exists at line-search resolution
        fy, y, eta = step
        decrease = f - fy
        x = y
        if decrease < PLATEAU_TOL * (1.0 + abs(fy)):
            return fy, x, True
        if iteration % COARSE_WINDOW == 0:
            if checkpoint - fy < COARSE_WINDOW * COARSE_TOL * (1.0 + abs(fy)):
                return fy, x, True
            checkpoint = fy
        f, grad = value_and_gradient(gen, x)
    return f, x, False


def sphere_min(gen: GeneratingVector, starts: int = 64, rng_seed: int = 0) -> SphereMinResult:
    """Best point found over seeded candidates plus ``starts`` descents.

    Candidates come first, in a fixed order: every witness-family member that
    fits the dimension, then (for n <= 6) every nonzero sign pattern in
    {-1, 0, 1}^n.  Then the descents run from RNG unit vectors.  The result
    is deterministic for fixed (gen, starts, rng_seed); ties keep the
    earliest point in this fixed ordering.
    """
    if gen.m % 2 != 0:
        raise ValueError(f"sphere search needs even order, got m={gen.m}")
    if starts < 1:
        raise ValueError(f"starts must be >= 1, got {starts}")
    n = gen.n

    best_f = math.inf
    best_x = None
    for witness in candidate_witnesses(n):
        x = _normalize(witness.x)
        if x is None:
            continue
        f = eval_fast(gen, x)
        if f < best_f:
            best_f, best_x = f, x
    if n <= 6:
        for pattern in itertools.product((0.0, 1.0, -1.0), repeat=n):
            x = _normalize(pattern)
            if x is None:
                continue
            f = eval_fast(gen, x)
            if f < best_f:
                best_f, best_x = f, x

    rng = SplitMix64(rng_seed)
    converged = 0
    for _ in range(starts):
        x0 = rng.unit_vector(n)
        f, x, ok = _descend(gen, x0)
        converged += ok
        if f < best_f:
            best_f, best_x = f, x

    return SphereMinResult(
        min_value=best_f,
        argmin=best_x,
        starts=starts,
        converged_starts=converged,
        rng_seed=rng_seed,
    )


@dataclass(frozen=True)
class MatrixPsdResult:
    passed: bool
    min_eigenvalue: float
    eigenvalues: tuple
    sweeps: int

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "min_eigenvalue": self.min_eigenvalue,
            "eigenvalues": list(self.eigenvalues),
            "sweeps": self.sweeps,
        }


def jacobi_eigenvalues(matrix, off_tol: float = 1e-12, max_sweeps: int = 100):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate every off-diagonal pair in row order until the off-diagonal
    Frobenius norm drops below ``off_tol`` times the (rotation-invariant)
    Frobenius norm of the input.  Returns (sorted eigenvalues, sweeps used).
    """
    a = np.array(matrix, dtype=float)
    size = a.shape[0]
    frob = math.sqrt(float((a * a).sum()))
    threshold = off_tol * frob
    sweeps = 0
    while True:
        off = math.sqrt(2.0 * float((np.triu(a, 1) ** 2).sum()))
        if off <= threshold:
            break
        if sweeps >= max_sweeps:
            raise RuntimeError(
                f"Jacobi iteration failed to reach off-norm {threshold} "
                f"in {max_sweeps} sweeps (off-norm {off})"
            )
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweeps += 1
    return np.sort(np.diag(a)), sweeps


def matrix_psd(matrix, psd_tol: float = 1e-9) -> MatrixPsdResult:
    """Pass iff the minimum Jacobi eigenvalue is >= -psd_tol * max |entry|."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    max_abs = float(np.abs(m).max()) if m.size else 0.0
    if float(np.abs(m - m.T).max()) > 1e-12 * max(1.0, max_abs):
        raise ValueError("matrix is not symmetric within 1e-12")
    eigs, sweeps = jacobi_eigenvalues(m)
    min_eig = float(eigs[0])
    return MatrixPsdResult(
        passed=min_eig >= -psd_tol * max_abs,
        min_eigenvalue=min_eig,
        eigenvalues=tuple(float(t) for t in eigs),
        sweeps=sweeps,
    )

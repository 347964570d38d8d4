"""Codebook string commitment: sessions, the reveal-set operator, and bounds.

The committer sends the single codebook state indexed by the whole bit
string (big-endian).  A dishonest committer who wants to keep ``r`` strings
open faces the operator ``Q`` summing the projectors onto those code states;
the top eigenvalue of ``Q`` caps the total reveal probability at
``1 + (r - 1) * epsilon`` whenever pairwise overlaps stay below ``epsilon``
and ``(r - 1) * epsilon < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .codebook import Codebook, capacity
from .errors import InputError, NumericalError
from .linalg import (
    DensityMatrix,
    HermitianOp,
    Ket,
    von_neumann_entropy,
)
from .protocol1 import projection_probability

_BOUND_TOL = 1e-9
EXACT_HIDING_MAX = 2**12


@dataclass(frozen=True)
class Commitment2:
    """One codebook state (or an adversarial density matrix) in dim n."""

    state: object
    codebook: Codebook

    def __post_init__(self):
        if not isinstance(self.state, (Ket, DensityMatrix)):
            raise InputError("state must be a Ket or DensityMatrix")
        if self.state.dim != self.codebook.dim:
            raise InputError(
                f"state dimension {self.state.dim} differs from codebook "
                f"dimension {self.codebook.dim}"
            )


@dataclass(frozen=True)
class CheatSet:
    """Distinct codebook indices a dishonest committer keeps open."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) == 0:
            raise InputError("cheat set cannot be empty")
        if len(set(idx)) != len(idx):
            raise InputError(f"cheat set has duplicated indices: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def r(self) -> int:
        return len(self.indices)


def cheat_set_for(cb: Codebook, indices) -> CheatSet:
    """Validated cheat set for a codebook, including the overlap assumption
    (r - 1) * epsilon < 1."""
    s = CheatSet(tuple(indices))
    for i in s.indices:
        if not 0 <= i < cb.size:
            raise InputError(f"index {i} outside codebook of size {cb.size}")
    if (s.r - 1) * cb.epsilon_certified >= 1.0:
        raise InputError(
            f"(r-1)*epsilon = {(s.r - 1) * cb.epsilon_certified!r} >= 1 for "
            f"r={s.r}, epsilon={cb.epsilon_certified!r}"
        )
    return s


def string_index(bits: str, n_bits: int) -> int:
    """Big-endian bit string to codebook index."""
    if len(bits) != n_bits or any(c not in "01" for c in bits):
        raise InputError(f"expected a {n_bits}-bit string over {{0,1}}, got {bits!r}")
    return int(bits, 2)


def index_string(index: int, n_bits: int) -> str:
    return format(index, f"0{n_bits}b")


def commit2(bits: str, cb: Codebook) -> Commitment2:
    """Honest commitment: the codebook state whose index is the string."""
    n_bits = capacity(cb)
    return Commitment2(state=cb.state(string_index(bits, n_bits)), codebook=cb)


def verify_unveil2(
    commitment: Commitment2,
    claimed: str,
    mode: str = "exact",
    seed: int | None = None,
    rng: np.random.Generator | None = None,
):
    """Measure the projector onto the claimed code state.

    ``exact`` mode returns the outcome-1 probability; ``sampled`` mode draws
    the binary outcome and returns the verdict.
    """
    cb = commitment.codebook
    template = cb.state(string_index(claimed, capacity(cb)))
    p = projection_probability(template, commitment.state)
    if mode == "exact":
        return p
    if mode == "sampled":
        if rng is None:
            if seed is None:
                raise InputError("sampled mode needs a seed or an rng")
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
        return bool(rng.random() < p)
    raise InputError(f"unknown mode {mode!r}")


def q_operator(cb: Codebook, s: CheatSet) -> HermitianOp:
    """Sum of the projectors onto the cheat set's code states."""
    for i in s.indices:
        if not 0 <= i < cb.size:
            raise InputError(f"index {i} outside codebook of size {cb.size}")
    rows = np.stack([cb.state(i).amps for i in s.indices])
    return HermitianOp(rows.T @ rows.conj())


def binding_bound2(r: int, epsilon: float) -> float:
    """Total reveal-probability cap 1 + (r - 1) * epsilon."""
    if r < 1:
        raise InputError("r must be positive")
    if epsilon < 0.0:
        raise InputError("epsilon must be nonnegative")
    if (r - 1) * epsilon >= 1.0:
        raise InputError(
            f"(r-1)*epsilon = {(r - 1) * epsilon!r} >= 1; the cap is only "
            "claimed below 1"
        )
    return 1.0 + (r - 1) * epsilon


class RayleighTerms(NamedTuple):
    cross: float
    chain: float
    rayleigh: float


def rayleigh_quotient_terms(weights, gram) -> RayleighTerms:
    """Overlap sums behind the reveal-set cap.

    For coefficients ``w`` (unit square-sum) over states with Gram matrix
    ``G``, returns the first-order cross sum ``sum_{i != j} conj(w_i) w_j
    G_ij``, the second-order chain sum over paths ``i -> j -> k`` with
    ``i != j, j != k``, and the Rayleigh quotient
    ``(1 + 2*cross + chain) / (1 + cross)`` of the reveal-set operator on
    the span.  The quotient is re-derived directly from the Gram matrix and
    both overlap sums are checked against their worst-case caps
    ``eps*(r-1)`` and ``eps^2*(r-1)^2``.
    """
    w = np.asarray(weights, dtype=complex)
    g = np.asarray(gram, dtype=complex)
    if w.ndim != 1 or g.ndim != 2 or g.shape != (w.size, w.size):
        raise InputError(
            f"need weights (r,) and gram (r, r); got {w.shape} and {g.shape}"
        )
    if np.max(np.abs(g - g.conj().T)) > 1e-10:
        raise InputError("gram matrix is not Hermitian")
    if np.max(np.abs(np.diag(g) - 1.0)) > 1e-10:
        raise InputError("gram matrix diagonal must be 1 (unit vectors)")
    norm_sq = float(np.vdot(w, w).real)
    if abs(norm_sq - 1.0) > 1e-8:
        raise InputError(f"weights must have unit square-sum, got {norm_sq!r}")

    off = g - np.eye(w.size)
    cross_c = complex(np.vdot(w, off @ w))
    chain_c = complex(np.vdot(w, off @ (off @ w)))
    if abs(cross_c.imag) > _BOUND_TOL or abs(chain_c.imag) > _BOUND_TOL:
        raise NumericalError("overlap sums acquired an imaginary part")
    cross = cross_c.real
    chain = chain_c.real

    r = w.size
    eps = float(np.max(np.abs(off))) if r > 1 else 0.0
    if cross > eps * (r - 1) + _BOUND_TOL:
        raise NumericalError(
            f"cross sum {cross!r} exceeds its cap {eps * (r - 1)!r}"
        )
    if chain > eps**2 * (r - 1) ** 2 + _BOUND_TOL:
        raise NumericalError(
            f"chain sum {chain!r} exceeds its cap {eps**2 * (r - 1) ** 2!r}"
        )

    rayleigh = (1.0 + 2.0 * cross + chain) / (1.0 + cross)
    numerator = float(np.vdot(w, (g @ (g @ w))).real)
    denominator = float(np.vdot(w, g @ w).real)
    direct = numerator / denominator
    if abs(rayleigh - direct) > _BOUND_TOL:
        raise NumericalError(
            f"Rayleigh quotient mismatch: {rayleigh!r} vs direct {direct!r}"
        )
    return RayleighTerms(cross=cross, chain=chain, rayleigh=rayleigh)


def equality_configuration(r: int, epsilon: float) -> tuple[Ket, ...]:
    """r unit vectors in dim r with every pairwise overlap exactly epsilon.

    Rows of the Cholesky factor of the Gram matrix (1-eps)I + eps J.  Their
    reveal-set operator attains the cap 1 + (r - 1) * epsilon exactly.
    """
    if r < 1:
        raise InputError("r must be positive")
    if epsilon < 0.0 or (r - 1) * epsilon >= 1.0:
        raise InputError(
            f"epsilon {epsilon!r} infeasible for r={r}: need 0 <= eps and "
            "(r-1)*eps < 1"
        )
    gram = (1.0 - epsilon) * np.eye(r) + epsilon * np.ones((r, r))
    factor = np.linalg.cholesky(gram)
    kets = tuple(Ket(factor[i]) for i in range(r))
    q = factor @ factor.T
    lam = float(np.linalg.eigvalsh(q)[-1])
    expected = 1.0 + (r - 1) * epsilon
    if abs(lam - expected) > _BOUND_TOL:
        raise NumericalError(
            f"equality configuration misses the cap: {lam!r} vs {expected!r}"
        )
    return kets


def code_ensemble_entropy(cb: Codebook) -> float:
    """Spectral entropy in bits of the uniform mixture over all code states."""
    if cb.size > EXACT_HIDING_MAX or cb.dim > EXACT_HIDING_MAX:
        raise InputError(
            f"exact entropy is only computed up to size/dim {EXACT_HIDING_MAX}"
        )
    rows = cb.states_matrix()
    rho = (rows.T @ rows) / cb.size
    return von_neumann_entropy(DensityMatrix(rho))


def hiding_bound2(cb: Codebook) -> float:
    """Receiver information cap in bits: log2 of the carrier dimension.

    For codebooks small enough to handle exactly, the spectral entropy of
    the uniform code ensemble is computed and checked against the cap.
    """
    bound = math.log2(cb.dim)
    if cb.size <= EXACT_HIDING_MAX and cb.dim <= EXACT_HIDING_MAX:
        exact = code_ensemble_entropy(cb)
        if exact > bound + _BOUND_TOL:
            raise NumericalError(
                f"ensemble entropy {exact!r} exceeds log2(dim) = {bound!r}"
            )
    return bound

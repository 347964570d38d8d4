"""Constructive cheating strategies and exact discrimination oracles.

These make the bound checks adversarially tight: the top eigenvector of a
reveal operator achieves its cap, and the exact two-state discrimination
value gives the true all-bits guessing probability that the entropy-based
report columns are compared against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .codebook import Codebook
from .errors import InputError, NumericalError
from .linalg import DensityMatrix, HermitianOp, Ket, eig_hermitian, projector
from .protocol1 import Commitment1, SecurityParams, encode_bit, verify_unveil
from .protocol2 import Commitment2, capacity, verify_unveil2
from .transcript import (
    Transcript,
    amplitude_pairs,
    matrix_pairs,
    verification_rng,
)

_BOUND_TOL = 1e-9
BRUTE_FORCE_GUESS_MAX_N = 4


@dataclass(frozen=True)
class CheatStrategy:
    """A fixed state the dishonest committer sends, as a value object.

    For the qubit protocol the state is sent on every qubit; for the
    codebook protocol it is the single transmitted state.  ``achieved``
    records the reveal value the strategy attains on its target operator.
    """

    kind: str
    state: object
    achieved: float | None = None

    def __post_init__(self):
        if self.kind not in ("top-eigenvector", "custom-state"):
            raise InputError(f"unknown strategy kind {self.kind!r}")
        if not isinstance(self.state, (Ket, DensityMatrix)):
            raise InputError("strategy state must be a Ket or DensityMatrix")


def optimal_cheat_state(op: HermitianOp) -> tuple[Ket, float]:
    """Top eigenvector and eigenvalue of a reveal operator."""
    eigenvalues, eigenvectors = eig_hermitian(op)
    return eigenvectors[-1], float(eigenvalues[-1])


def top_eigenvector_strategy(
    op: HermitianOp, bound: float | None = None
) -> CheatStrategy:
    state, achieved = optimal_cheat_state(op)
    if bound is not None and achieved > bound + _BOUND_TOL:
        raise NumericalError(
            f"achieved value {achieved!r} exceeds the analytic cap {bound!r}"
        )
    return CheatStrategy(kind="top-eigenvector", state=state, achieved=achieved)


def custom_state_strategy(state, achieved: float | None = None) -> CheatStrategy:
    return CheatStrategy(kind="custom-state", state=state, achieved=achieved)


def helstrom_two_state(psi0: Ket, psi1: Ket, prior: float = 0.5) -> float:
    """Optimal success probability for discriminating two pure states.

    Computed spectrally as (1 + trace-norm of the weighted difference)/2;
    for equal priors this equals (1 + sqrt(1 - |overlap|^2)) / 2.
    """
    if psi0.dim != psi1.dim:
        raise InputError(f"dimension mismatch: {psi0.dim} vs {psi1.dim}")
    if not 0.0 <= prior <= 1.0:
        raise InputError(f"prior {prior!r} outside [0, 1]")
    gamma = prior * projector(psi0).mat - (1.0 - prior) * projector(psi1).mat
    trace_norm = float(np.abs(np.linalg.eigvalsh(gamma)).sum())
    return 0.5 * (1.0 + trace_norm)


def _helstrom_qubit_conditionals(theta: float) -> tuple[float, float]:
    """Per-bit success probabilities of the optimal measurement, by value."""
    psi0 = encode_bit(0, theta)
    psi1 = encode_bit(1, theta)
    gamma = HermitianOp(0.5 * (projector(psi0).mat - projector(psi1).mat))
    eigenvalues, eigenvectors = eig_hermitian(gamma)
    guess0 = np.zeros((2, 2), dtype=complex)
    for lam, vec in zip(eigenvalues, eigenvectors):
        if lam > 0.0:
            guess0 += projector(vec).mat
    guess1 = np.eye(2) - guess0
    c0 = float(np.vdot(psi0.amps, guess0 @ psi0.amps).real)
    c1 = float(np.vdot(psi1.amps, guess1 @ psi1.amps).real)
    return c0, c1


def brute_force_guess_all(n: int, theta: float) -> float:
    """All-bits success probability by exhaustive enumeration of strings.

    Builds the per-qubit optimal measurement explicitly and sums the joint
    success probability over all 2^n equiprobable strings.
    """
    if not 1 <= n <= BRUTE_FORCE_GUESS_MAX_N:
        raise InputError(f"n = {n} outside [1, {BRUTE_FORCE_GUESS_MAX_N}]")
    c0, c1 = _helstrom_qubit_conditionals(theta)
    total = 0.0
    for string in itertools.product((0, 1), repeat=n):
        joint = 1.0
        for bit in string:
            joint *= c0 if bit == 0 else c1
        total += joint
    return total / 2**n


def guess_all_oracle(n: int, theta: float) -> float:
    """Exact probability of identifying every committed bit.

    Equals ((1 + cos t) / 2)^n for the optimal per-qubit measurement; for
    n <= 4 the closed form is cross-checked against exhaustive enumeration.
    """
    if n < 1:
        raise InputError("n must be positive")
    value = ((1.0 + math.cos(theta)) / 2.0) ** n
    if n <= BRUTE_FORCE_GUESS_MAX_N:
        brute = brute_force_guess_all(n, theta)
        if abs(brute - value) > 1e-12:
            raise NumericalError(
                f"guess-all cross-check failed at n={n}, theta={theta!r}: "
                f"{brute!r} vs {value!r}"
            )
    return value


def _strategy_record(strategy: CheatStrategy) -> dict:
    return {
        "kind": strategy.kind,
        "achieved": strategy.achieved,
        "state_dim": strategy.state.dim,
    }


def _message_for_state(state) -> dict:
    if isinstance(state, DensityMatrix):
        return {"kind": "state_density_matrix", "entries": matrix_pairs(state)}
    return {"kind": "state_amplitudes", "amplitudes": amplitude_pairs(state)}


def run_cheat_session(
    protocol: int,
    strategy: CheatStrategy,
    reveal: str,
    seed: int,
    params: SecurityParams | None = None,
    codebook: Codebook | None = None,
) -> Transcript:
    """Commit with the strategy state, unveil the chosen string, verify.

    Records both the exact acceptance probability and a sampled verdict
    drawn from the session's verification stream.
    """
    if protocol == 1:
        if params is None:
            raise InputError("protocol 1 cheat sessions need SecurityParams")
        if strategy.state.dim != 2:
            raise InputError("protocol 1 strategies send one qubit per bit")
        commitment = Commitment1(
            qubits=(strategy.state,) * params.n, params=params
        )
        if isinstance(strategy.state, DensityMatrix):
            message = {
                "kind": "qubit_density_matrices",
                "qubits": [matrix_pairs(strategy.state)] * params.n,
            }
        else:
            message = {
                "kind": "qubit_amplitudes",
                "qubits": [amplitude_pairs(strategy.state)] * params.n,
            }
        transcript = Transcript(
            protocol=1,
            phase="committed",
            params={"theta": params.theta, "n": params.n, "r": params.r},
            seeds={"session": int(seed)},
            commit={"message": message, "string_sha256": None, "salt": None},
            strategy=_strategy_record(strategy),
        )
        exact = verify_unveil(commitment, reveal, mode="exact")
        verdict = verify_unveil(
            commitment, reveal, mode="sampled", rng=verification_rng(seed)
        )
    elif protocol == 2:
        if codebook is None:
            raise InputError("protocol 2 cheat sessions need a codebook")
        commitment = Commitment2(state=strategy.state, codebook=codebook)
        transcript = Transcript(
            protocol=2,
            phase="committed",
            params={
                "epsilon": codebook.epsilon_certified,
                "dim": codebook.dim,
                "capacity": capacity(codebook),
                "codebook_id": codebook.content_id(),
            },
            seeds={"session": int(seed)},
            commit={
                "message": _message_for_state(strategy.state),
                "string_sha256": None,
                "salt": None,
            },
            strategy=_strategy_record(strategy),
        )
        exact = verify_unveil2(commitment, reveal, mode="exact")
        verdict = verify_unveil2(
            commitment, reveal, mode="sampled", rng=verification_rng(seed)
        )
    else:
        raise InputError(f"unknown protocol {protocol!r}")

    transcript = transcript.with_unveil(reveal)
    return transcript.with_verification(
        {
            "mode": "sampled",
            "verdict": bool(verdict),
            "accept_probability": float(exact),
        }
    )

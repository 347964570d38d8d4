"""Near-orthogonal state families built from seeded random binary codes.

Each message ``x`` maps through a full-rank generator matrix to a codeword
``c`` of length ``m``, and then to the sign-pattern state with amplitudes
``(-1)^{c_i} / sqrt(m)``.  Two such states overlap at ``1 - 2 d / m`` where
``d`` is the Hamming distance between the codewords, so the maximum pairwise
overlap of the whole family equals ``max |1 - 2 w / m|`` over the nonzero
codeword weights ``w``.  Certification is exhaustive over that weight
enumeration and cross-checked against directly computed inner products.

Randomness is drawn from Philox (a counter-based generator) keyed through
``numpy.random.SeedSequence``; attempt ``i`` of a certification run uses the
root seed itself for ``i = 0`` and ``SeedSequence(root, spawn_key=(i,))``
folded to a 64-bit integer for ``i > 0``.  Every codebook records the scheme
identifier, the root seed and the attempt count, so certificates are
reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, GenerationError, InputError, NumericalError
from .linalg import Ket

PRNG_ID = "philox4x64:numpy-seedsequence"
MAX_EXHAUSTIVE_SIZE = 2**16
MAX_GENERATE_K = 20
MAX_GENERATE_M = 4096
DEFAULT_ATTEMPT_CAP = 500
OVERLAP_IDENTITY_TOL = 1e-12
_CROSSCHECK_PAIRS = 100
# spawn tags reserved on top of attempt indices
_TAG_CROSSCHECK = 0x636B  # "ck"


def make_rng(seed: int) -> np.random.Generator:
    """Philox generator keyed by a SeedSequence over the given seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def derive_seed(root: int, attempt: int) -> int:
    """Seed for one attempt of a certification run (attempt 0 is the root)."""
    if attempt == 0:
        return int(root)
    ss = np.random.SeedSequence(root, spawn_key=(attempt,))
    return int(ss.generate_state(1, np.uint64)[0])


def rank_gf2(mat: np.ndarray) -> int:
    """Rank of a 0/1 matrix over GF(2) by Gaussian elimination."""
    m = np.array(mat, dtype=np.uint8) % 2
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(m[rank:, c])[0]
        if pivots.size == 0:
            continue
        piv = rank + int(pivots[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != rank]
        m[hit] ^= m[rank]
        rank += 1
    return rank


def _row_to_hex(row: np.ndarray) -> str:
    value = 0
    for bit in row:
        value = (value << 1) | int(bit)
    digits = max(1, (row.size + 3) // 4)
    return format(value, f"0{digits}x")


def _hex_to_row(text: str, m: int) -> np.ndarray:
    value = int(text, 16)
    bits = [(value >> (m - 1 - i)) & 1 for i in range(m)]
    return np.array(bits, dtype=np.uint8)


@dataclass(frozen=True)
class BinaryCode:
    """Binary linear code given by a full-rank generator matrix.

    ``k = 0`` (an empty generator with a declared length) is allowed and
    yields the single-codeword code; it backs the one-state codebook
    convention.
    """

    generator: np.ndarray
    seed: int
    length: int | None = None

    def __post_init__(self):
        gen = np.asarray(self.generator, dtype=np.uint8)
        if gen.ndim != 2:
            raise InputError("generator must be a 2-D bit matrix")
        if gen.size and gen.max() > 1:
            raise InputError("generator entries must be 0 or 1")
        k, m = gen.shape
        if self.length is not None and self.length != m and k > 0:
            raise InputError("declared length disagrees with generator width")
        if k == 0:
            if self.length is None or self.length < 1:
                raise InputError("k = 0 codes need an explicit positive length")
            m = self.length
            gen = gen.reshape(0, m)
        elif rank_gf2(gen) != k:
            raise InputError("generator does not have full row rank over GF(2)")
        gen = np.ascontiguousarray(gen)
        gen.setflags(write=False)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "length", m)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def m(self) -> int:
        return self.length

    def message_bits(self, message: int) -> np.ndarray:
        """Big-endian bit expansion of a message index."""
        if not 0 <= message < 2**self.k:
            raise InputError(f"message {message} out of range for k={self.k}")
        return np.array(
            [(message >> (self.k - 1 - i)) & 1 for i in range(self.k)],
            dtype=np.uint8,
        )

    def codeword(self, message: int) -> np.ndarray:
        if self.k == 0:
            if message != 0:
                raise InputError("k = 0 code has a single message")
            return np.zeros(self.m, dtype=np.uint8)
        return (self.message_bits(message) @ self.generator) % 2

    def nonzero_codeword_weights(self) -> np.ndarray:
        """Hamming weights of all 2^k - 1 nonzero codewords, blockwise."""
        if self.k == 0:
            return np.zeros(0, dtype=np.int64)
        weights = np.empty(2**self.k - 1, dtype=np.int64)
        shifts = np.arange(self.k - 1, -1, -1, dtype=np.uint32)
        block = 4096
        for start in range(1, 2**self.k, block):
            msgs = np.arange(start, min(start + block, 2**self.k), dtype=np.uint32)
            bits = ((msgs[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
            codewords = (bits @ self.generator) % 2
            weights[start - 1 : start - 1 + msgs.size] = codewords.sum(
                axis=1, dtype=np.int64
            )
        return weights


def generate_code(k: int, m: int, seed: int) -> BinaryCode:
    """Draw a seeded random full-rank generator; identical seeds reproduce it.

    Redraws from the same stream on rank deficiency, up to 1000 times.
    """
    if not 1 <= k <= MAX_GENERATE_K:
        raise InputError(f"k = {k} outside [1, {MAX_GENERATE_K}]")
    if not k <= m <= MAX_GENERATE_M:
        raise InputError(f"m = {m} outside [k, {MAX_GENERATE_M}]")
    rng = make_rng(seed)
    for _ in range(1000):
        gen = rng.integers(0, 2, size=(k, m), dtype=np.uint8)
        if rank_gf2(gen) == k:
            return BinaryCode(generator=gen, seed=int(seed))
    raise GenerationError(
        f"no full-rank {k}x{m} generator after 1000 draws (seed {seed})"
    )


@dataclass(frozen=True)
class Codebook:
    """Certified family of sign-pattern states with recorded provenance.

    ``seed`` is the root seed of the certification run and ``attempts`` the
    number of attempts it consumed; the accepted code was drawn with
    ``derive_seed(seed, attempts - 1)``.
    """

    code: BinaryCode
    epsilon_certified: float
    seed: int
    attempts: int
    prng_id: str = PRNG_ID

    def __post_init__(self):
        if self.size > MAX_EXHAUSTIVE_SIZE:
            raise InputError(
                f"codebooks beyond {MAX_EXHAUSTIVE_SIZE} states are unsupported"
            )
        if self.attempts < 1:
            raise InputError("attempts must be at least 1")

    @property
    def dim(self) -> int:
        return self.code.m

    @property
    def size(self) -> int:
        return 2**self.code.k

    def state(self, index: int) -> Ket:
        """State for one message index (amplitudes +-1/sqrt(m))."""
        c = self.code.codeword(index)
        return Ket((1.0 - 2.0 * c.astype(float)) / math.sqrt(self.code.m))

    def states_matrix(self) -> np.ndarray:
        """All states as rows of a (size x dim) float matrix."""
        if self.size * self.dim > 2**24:
            raise InputError("state matrix too large to materialize")
        rows = np.empty((self.size, self.dim), dtype=float)
        for i in range(self.size):
            rows[i] = self.state(i).amps.real
        return rows

    def to_json(self) -> str:
        payload = {
            "version": 1,
            "dim": self.dim,
            "k": self.code.k,
            "m": self.code.m,
            "seed": self.seed,
            "prng_id": self.prng_id,
            "generator": [_row_to_hex(row) for row in self.code.generator],
            "epsilon_certified": self.epsilon_certified,
            "attempts": self.attempts,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Codebook":
        """Parse and revalidate a stored codebook.

        States are re-derived from the generator; the maximum overlap is
        recomputed from the codeword weights and must match the stored
        certificate exactly.
        """
        try:
            payload = json.loads(text)
            if payload["version"] != 1:
                raise InputError(f"unknown codebook version {payload['version']}")
            gen = np.array(
                [_hex_to_row(row, payload["m"]) for row in payload["generator"]],
                dtype=np.uint8,
            ).reshape(payload["k"], payload["m"])
            code = BinaryCode(
                generator=gen,
                seed=derive_seed(payload["seed"], payload["attempts"] - 1),
                length=payload["m"],
            )
            cb = cls(
                code=code,
                epsilon_certified=float(payload["epsilon_certified"]),
                seed=int(payload["seed"]),
                attempts=int(payload["attempts"]),
                prng_id=str(payload["prng_id"]),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed codebook document: {exc}") from exc
        recomputed = _epsilon_from_weights(cb.code)
        if recomputed != cb.epsilon_certified:
            raise CertificationError(
                f"stored certificate {cb.epsilon_certified!r} does not match "
                f"recomputed overlap {recomputed!r}",
                best_epsilon=recomputed,
            )
        return cb

    def content_id(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def _epsilon_from_weights(code: BinaryCode) -> float:
    weights = code.nonzero_codeword_weights()
    if weights.size == 0:
        return 0.0
    return float(np.abs(1.0 - 2.0 * weights / code.m).max())


def fingerprint_states(code: BinaryCode) -> Codebook:
    """Codebook of sign-pattern states for a code, certified at construction."""
    if 2**code.k > MAX_EXHAUSTIVE_SIZE:
        raise InputError(
            f"code has 2^{code.k} messages, beyond the exhaustive regime"
        )
    cb = Codebook(
        code=code,
        epsilon_certified=_epsilon_from_weights(code),
        seed=code.seed,
        attempts=1,
    )
    verify_epsilon(cb)
    return cb


def verify_epsilon(cb: Codebook) -> float:
    """Exhaustively certified maximum pairwise overlap.

    Uses the weight enumeration (the pairwise overlap of a linear-code
    family is determined by nonzero codeword weights) and cross-checks at
    least 100 randomly chosen pairs against directly computed inner
    products.
    """
    if cb.size > MAX_EXHAUSTIVE_SIZE:
        raise InputError("codebook too large for exhaustive certification")
    epsilon = _epsilon_from_weights(cb.code)
    if cb.size >= 2:
        rng = np.random.Generator(
            np.random.Philox(
                np.random.SeedSequence(cb.code.seed, spawn_key=(_TAG_CROSSCHECK,))
            )
        )
        for _ in range(_CROSSCHECK_PAIRS):
            i = int(rng.integers(0, cb.size))
            j = int(rng.integers(0, cb.size - 1))
            if j >= i:
                j += 1
            direct = float(np.vdot(cb.state(i).amps, cb.state(j).amps).real)
            d = int(np.sum(cb.code.codeword(i) != cb.code.codeword(j)))
            predicted = 1.0 - 2.0 * d / cb.code.m
            if abs(direct - predicted) > OVERLAP_IDENTITY_TOL:
                raise NumericalError(
                    f"overlap identity violated for pair ({i}, {j}): "
                    f"direct {direct!r} vs predicted {predicted!r}"
                )
            if abs(direct) > epsilon + OVERLAP_IDENTITY_TOL:
                raise NumericalError(
                    f"pair ({i}, {j}) overlap {direct!r} exceeds certified "
                    f"{epsilon!r}"
                )
    return epsilon


def generate_certified_codebook(
    n: int,
    epsilon_target: float,
    k: int,
    seed: int,
    attempt_cap: int = DEFAULT_ATTEMPT_CAP,
) -> Codebook:
    """Rejection-sample seeded codes until certification meets the target.

    Raises :class:`CertificationError` carrying the best overlap found when
    the attempt cap is exhausted, which signals that ``k`` is too large for
    the requested ``(n, epsilon_target)``.
    """
    if not 0.0 <= epsilon_target <= 1.0:
        raise InputError(f"epsilon_target {epsilon_target!r} outside [0, 1]")
    best = math.inf
    for attempt in range(attempt_cap):
        code = generate_code(k, n, derive_seed(seed, attempt))
        epsilon = _epsilon_from_weights(code)
        if epsilon <= epsilon_target:
            cb = Codebook(
                code=code,
                epsilon_certified=epsilon,
                seed=int(seed),
                attempts=attempt + 1,
            )
            verify_epsilon(cb)
            return cb
        best = min(best, epsilon)
    raise CertificationError(
        f"no code with overlap <= {epsilon_target} in {attempt_cap} attempts "
        f"(n={n}, k={k}, seed={seed}); best overlap found: {best}",
        best_epsilon=best,
        attempts=attempt_cap,
    )


def capacity(cb: Codebook) -> int:
    """Number of bits one codebook state commits (log2 of the family size)."""
    return cb.code.k

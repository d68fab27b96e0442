"""Quasi-static Rayleigh fading draws with deterministic parallel substreams.

One transmission block sees one realization of the three squared channel
gains; blocks are independent.  Reproducibility contract: the draws for trial
index i depend only on (seed, i), never on the total trial count or on how
trials are partitioned across workers.  Trials are grouped into fixed-size
blocks and each block gets its own counter-based generator derived from
(seed, block index), so any worker producing a block produces identical
numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BLOCK_SIZE",
    "ChannelRealization",
    "block_generator",
    "exponential",
    "sample",
    "sample_block",
]

# trials per substream block; fixed so that trial -> draw mapping never moves
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class ChannelRealization:
    """Squared channel gains for one block: x = |h_BF|^2, y = |h_BN|^2,
    z = |h_NF|^2.  Channel reciprocity makes the single z serve both link
    directions between the two users."""

    x: float
    y: float
    z: float


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Counter-based generator for one block, pure in (seed, block)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, block))))


def exponential(rng, mean, size=None):
    """Exponential draws via the inverse CDF, -mean*ln(1-U) with U in [0, 1).

    Inversion (rather than the library's ziggurat) keeps the sequence a pure
    function of the uniform stream, which is what makes golden tests and
    cross-worker determinism bit-stable.  1-U lies in (0, 1], so the log never
    sees zero.
    """
    u = rng.random(size)
    return -mean * np.log1p(-u)


def sample(rng, params) -> ChannelRealization:
    """Draw one realization: three independent exponentials (x, y, z order)."""
    u = rng.random(3)
    return ChannelRealization(
        x=-params.lambda_BF * np.log1p(-u[0]),
        y=-params.lambda_BN * np.log1p(-u[1]),
        z=-params.lambda_NF * np.log1p(-u[2]),
    )


def sample_block(seed, block, count, params):
    """Gain arrays (x, y, z) for the first ``count`` trials of one block.

    The generator always produces the full block and the result is sliced,
    so trial i's draws are independent of ``count`` (and hence of the total
    trial count of the run).
    """
    if not 0 < count <= BLOCK_SIZE:
        raise ValueError(f"count must be in [1, {BLOCK_SIZE}], got {count}")
    rng = block_generator(seed, block)
    u = rng.random((3, BLOCK_SIZE))
    x = -params.lambda_BF * np.log1p(-u[0, :count])
    y = -params.lambda_BN * np.log1p(-u[1, :count])
    z = -params.lambda_NF * np.log1p(-u[2, :count])
    return x, y, z

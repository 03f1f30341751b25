"""BPSK over AWGN, LLR computation, and replayable randomness.

LLR convention: positive LLR means bit 0 is more likely; the sign carries
the hard decision and the magnitude the reliability. A zero LLR resolves to
bit 0, and reliability ties keep ascending original index, so runs are
reproducible across platforms.

Randomness comes from numpy's counter-based Philox generator keyed by
(seed, stream): disjoint streams never overlap, so Monte Carlo batches can
be assigned to any number of workers without changing the noise each block
sees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SoftVector = np.ndarray  # N channel LLRs


def noise_sigma(ebn0_db, rate):
    """Per-dimension noise std dev for BPSK at the given Eb/N0 and code rate."""
    if not 0 < rate <= 1:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return float(1.0 / np.sqrt(2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def make_rng(seed, stream=0):
    """Philox generator for (seed, stream); distinct streams are independent."""
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: float
    seed: int = 0
    stream_id: int = 0

    @property
    def sigma(self):
        return noise_sigma(self.ebn0_db, self.rate)

    def rng(self):
        return make_rng(self.seed, self.stream_id)


def transmit(codeword, sigma, rng):
    """Map bits to +-1, add Gaussian noise, return LLRs 2y/sigma^2.

    Accepts a single codeword or a batch (last axis = block).
    """
    bits = np.asarray(codeword, dtype=np.uint8)
    symbols = 1.0 - 2.0 * bits
    y = symbols + sigma * rng.standard_normal(bits.shape)
    return 2.0 * y / (sigma * sigma)


def hard_decision(llrs):
    """bit = 1 iff llr < 0; zero LLRs resolve to bit 0."""
    return (np.asarray(llrs) < 0).astype(np.uint8)


def reliability_permutation(llrs):
    """Original indices ordered by ascending |llr|, ties by ascending index."""
    return np.argsort(np.abs(np.asarray(llrs)), kind="stable")

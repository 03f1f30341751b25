"""Universal GRAND/ORBGRAND decoding with interchangeable pattern schedules.

Modules:
  patterns  sparse error patterns, LW/iLW weights, universal partial order
  lwo       sequential logistic-weight-order generation
  ilwo      exact and approximate improved-logistic-weight-order generation
  codes     BCH(127,113,2), polar (128,114)+CRC6, generic H-matrix codes
  channel   BPSK/AWGN, LLRs, reliability sorting, replayable RNG streams
  decoder   the GRAND query loop
  sim       Monte Carlo BLER harness, schedule dump/verify, empirical ranks
  cli       command-line front end
"""

from .channel import ChannelConfig, hard_decision, noise_sigma, reliability_permutation, transmit
from .codes import BchCode, GenericLinearCode, PolarCode, build_code, polar_transform
from .decoder import (
    ABANDONED,
    DECODED,
    DecodeConfig,
    DecodeOutcome,
    apply_pattern,
    decode,
    make_generator,
    make_schedule,
)
from .ilwo import (
    ApproxIlwoGenerator,
    ApproxIlwoState,
    IlwoExactGenerator,
    approx_next_weight,
    approx_sequence,
    create_remaining_h3,
    ilwo_sequence,
)
from .lwo import LwoGenerator, is_last, lwo_sequence, max_integer_partition, next_pattern
from .patterns import (
    GREATER,
    INCOMPARABLE,
    LEQ,
    ScheduleExhausted,
    hamming_weight,
    improved_logistic_weight,
    logistic_weight,
    upo_compare,
    upo_leq,
)
from .sim import (
    ScheduleSpec,
    SimConfig,
    SimResult,
    dump_patterns,
    estimate_empirical_schedule,
    run_bler,
    verify_schedule,
)

__version__ = "0.1.0"

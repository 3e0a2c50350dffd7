"""Globally optimal discrete phase-shift beamforming by breakpoint sweep."""
from .channel import (
    ChannelModelConfig,
    GoldenVector,
    generate,
    golden_table1,
    read_instance,
    realization_seed,
    write_instance,
)
from .errors import (
    ConfigError,
    InvalidArgumentError,
    ParseError,
    PhaseSweepError,
    SizeLimitError,
    UndefinedBoostError,
)
from .oracle import enumerate_boosts, solve_brute_force
from .phasecore import (
    PhaseAlphabet,
    f1_gap,
    phase,
    quantize_cosine,
    quantize_gap,
    quantize_lemma1,
    quantize_lemma2,
    wrap_2pi,
)
from .sweep import (
    BeamformingSolution,
    BreakpointSchedule,
    ChannelInstance,
    build_schedule,
    evaluate,
    initial_assignment,
    solve_lemma1_baseline,
    solve_sweep,
)

__version__ = "0.1.0"

from .checks import CHECKS, record, run_check
from .gen import DEFAULT_GRID, GenConfig, gen_spaces, gen_weights
from .oracles import exhaustive_j_below, grid_lub_oracle, ideal_gate, oracle_ideal_enumeration
from .replay import ReplayOutcome, replay_record
from .suites import SUITES, run_suite, suite_config, without_timing

__all__ = [
    "CHECKS", "DEFAULT_GRID", "GenConfig", "ReplayOutcome", "SUITES", "exhaustive_j_below",
    "gen_spaces", "gen_weights", "grid_lub_oracle", "ideal_gate", "oracle_ideal_enumeration",
    "record", "replay_record", "run_check", "run_suite", "suite_config", "without_timing",
]

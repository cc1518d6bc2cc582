"""County-level epidemic simulation and scenario decision support."""
from .config import ScenarioConfig, config_from_mapping, config_to_mapping
from .county import (CountyState, allocate_beds, effective_bed_capacity,
                     make_rounder, seed_county, step_county)
from .curve import PrevalenceCurve, build_prevalence_curve
from .engine import (METRICS, Scenario, SimulationResult, StateSummary,
                     branch_scenario, create_scenario, frame, run, series,
                     summarize)
from .errors import (EpisimError, HistoryViolationError, HorizonError,
                     InputError, NotFoundError, ValidationError)
from .interventions import (DecisionAction, combined_multiplier,
                            measure_multiplier)
from .network import (County, ImportationLedger, Seed, SpreadNetwork,
                      accumulate_pressure, build_network, seed_initial,
                      trigger_outbreaks)
from .params import AgeGroupProfile, AgeGroupProfiles, DiseaseParams
from .store import ScenarioStore

__version__ = "0.1.0"

__all__ = [
    "AgeGroupProfile", "AgeGroupProfiles", "County", "CountyState",
    "DecisionAction", "DiseaseParams", "EpisimError",
    "HistoryViolationError", "HorizonError", "ImportationLedger",
    "InputError", "METRICS", "NotFoundError", "PrevalenceCurve", "Scenario",
    "ScenarioConfig", "ScenarioStore", "Seed", "SimulationResult",
    "SpreadNetwork", "StateSummary", "ValidationError", "accumulate_pressure",
    "allocate_beds", "branch_scenario", "build_network",
    "build_prevalence_curve", "combined_multiplier", "config_from_mapping",
    "config_to_mapping", "create_scenario", "effective_bed_capacity", "frame",
    "make_rounder", "measure_multiplier", "run", "seed_county", "seed_initial",
    "series", "step_county", "summarize", "trigger_outbreaks",
]

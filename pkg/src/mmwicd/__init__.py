"""mmwicd: delay, power, and energy of initial cell discovery in mmWave networks.

Models four receiver beamforming architectures (analog, digital, hybrid, and
phase-shifter-network) sweeping directional beams to detect synchronization
signals, with and without prior context information, and evaluates a slot
layout that widens only the sync sub-carriers to cut discovery delay.
"""

from .architectures import (
    ARCHITECTURE_NAMES,
    SCENARIO_KINDS,
    Architecture,
    Scenario,
    SweepGeometry,
    build_architecture,
    build_scenario,
    default_architectures,
    default_scenarios,
    directional_scans,
    total_delay,
    uses_ci_budget,
)
from .energy import (
    EnergyReport,
    StructureComparison,
    convergence_value,
    ec_crossover,
    energy,
    proposed_structure_energy,
)
from .power import (
    ADC_CLASSES,
    AdcModel,
    CalibrationError,
    PowerModel,
    PowerSample,
    PowerTableError,
    calibrate,
    default_power_model,
    default_power_table,
    load_power_table,
    lookup_power,
    parametric_power,
    resolution_factor,
)
from .signaling import (
    SYNC_TIME_BANDWIDTH,
    FrameConfig,
    PssSlotStructure,
    build_pss_structure,
    derive_frame,
    pss_schedule,
    slot_symbol_offsets,
)
from .sweepsim import (
    SEQUENTIAL_BS_OUTER,
    SEQUENTIAL_MS_OUTER,
    SWEEP_ORDERS,
    NoDiscoveryError,
    SimResult,
    SweepEvent,
    VerificationReport,
    discovery_slot_grid,
    dump_trace,
    kernel_backend,
    simulate,
    simulate_pss_structure,
    verify_against_analytic,
    worst_case_structure_delay,
)

__version__ = "0.1.0"

__all__ = [
    "ADC_CLASSES",
    "ARCHITECTURE_NAMES",
    "SCENARIO_KINDS",
    "SEQUENTIAL_BS_OUTER",
    "SEQUENTIAL_MS_OUTER",
    "SWEEP_ORDERS",
    "SYNC_TIME_BANDWIDTH",
    "AdcModel",
    "Architecture",
    "CalibrationError",
    "EnergyReport",
    "FrameConfig",
    "NoDiscoveryError",
    "PowerModel",
    "PowerSample",
    "PowerTableError",
    "PssSlotStructure",
    "Scenario",
    "SimResult",
    "StructureComparison",
    "SweepEvent",
    "SweepGeometry",
    "VerificationReport",
    "build_architecture",
    "build_pss_structure",
    "build_scenario",
    "calibrate",
    "convergence_value",
    "default_architectures",
    "default_power_model",
    "default_power_table",
    "default_scenarios",
    "derive_frame",
    "directional_scans",
    "discovery_slot_grid",
    "dump_trace",
    "ec_crossover",
    "energy",
    "kernel_backend",
    "load_power_table",
    "lookup_power",
    "parametric_power",
    "proposed_structure_energy",
    "pss_schedule",
    "resolution_factor",
    "simulate",
    "simulate_pss_structure",
    "slot_symbol_offsets",
    "total_delay",
    "uses_ci_budget",
    "verify_against_analytic",
    "worst_case_structure_delay",
    "__version__",
]

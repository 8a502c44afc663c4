"""Energy consumption of the discovery search: power times delay, per configuration.

The receive chain is off while positioning is acquired, so a CID search costs
p_rx over the scan time plus the separate acquisition budget p_ci * t_ci.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from typing import Iterable, TextIO

from .architectures import (
    Architecture,
    Scenario,
    SweepGeometry,
    directional_scans,
    uses_ci_budget,
)
from .power import (
    AdcModel,
    PowerModel,
    PowerSample,
    default_power_model,
    lookup_power,
    parametric_power,
    resolution_factor,
)
from .signaling import SYNC_TIME_BANDWIDTH, derive_frame

POWER_MODES = ("lookup", "parametric")

# Fixed export schema for energy grids.
CSV_COLUMNS = (
    "arch",
    "scenario",
    "adc_class",
    "bits",
    "b_sc_hz",
    "n_d",
    "t_del_s",
    "p_rx_w",
    "e_ci_j",
    "e_total_j",
)


@dataclass(frozen=True)
class EnergyReport:
    """Delay, power, and energy for one (architecture, scenario, ADC, b_sc) point."""

    arch: str
    scenario: str
    adc_class: str
    bits: int
    b_sc: float  # Hz
    n_d: int  # directional scans
    t_del: float  # s, total delay incl. any context acquisition
    p_rx: float  # W, receive power during the scan
    e_ci: float  # J, context-acquisition energy
    e_total: float  # J

    def to_dict(self) -> dict:
        row = asdict(self)
        return {col: row[key] for col, key in zip(CSV_COLUMNS, row)}

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[col] for col in CSV_COLUMNS]


def reports_to_csv(reports: Iterable[EnergyReport], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.csv_row())


def reports_to_json(reports: Iterable[EnergyReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def _receive_power(
    arch: Architecture,
    adc: AdcModel,
    b_sc: float,
    power_mode: str,
    model: PowerModel | None,
    table: Iterable[PowerSample] | None,
) -> float:
    if power_mode == "lookup":
        return lookup_power(arch, adc, b_sc, table=table)
    if power_mode == "parametric":
        if model is None:
            model = default_power_model(adc.cls)
        return parametric_power(model, arch, adc, b_sc)
    raise ValueError(f"unknown power mode {power_mode!r}; expected one of {POWER_MODES}")


def energy(
    arch: Architecture,
    scenario: Scenario,
    adc: AdcModel,
    b_sc: float,
    power_mode: str = "lookup",
    *,
    geom: SweepGeometry | None = None,
    model: PowerModel | None = None,
    table: Iterable[PowerSample] | None = None,
) -> EnergyReport:
    """Full energy report for one configuration point."""
    if geom is None:
        geom = SweepGeometry()
    frame = derive_frame(b_sc)
    n_d = directional_scans(arch, scenario, geom)
    scan_time = n_d * frame.t_pss
    if uses_ci_budget(arch, scenario, geom):
        t_ci, e_ci = scenario.t_ci, scenario.p_ci * scenario.t_ci
    else:
        t_ci, e_ci = 0.0, 0.0
    p_rx = _receive_power(arch, adc, b_sc, power_mode, model, table)
    return EnergyReport(
        arch=arch.name,
        scenario=scenario.kind,
        adc_class=adc.cls,
        bits=adc.bits,
        b_sc=float(b_sc),
        n_d=n_d,
        t_del=scan_time + t_ci,
        p_rx=p_rx,
        e_ci=e_ci,
        e_total=p_rx * scan_time + e_ci,
    )


def convergence_value(
    arch: Architecture,
    adc: AdcModel,
    geom: SweepGeometry | None = None,
    scenario: Scenario | None = None,
    model: PowerModel | None = None,
) -> float:
    """Large-bandwidth limit of the scan energy (J).

    Only the converter term survives: scans * n_adc * c * r(bits) * (b_tot * t_pss),
    using the analytically constant time-bandwidth product, so the value is
    independent of b_sc by construction.
    """
    if geom is None:
        geom = SweepGeometry()
    if scenario is None:
        scenario = Scenario(kind="nCI")
    if model is None:
        model = default_power_model(adc.cls)
    if model.adc_class != adc.cls:
        raise ValueError(f"model calibrated for {model.adc_class}, got {adc.cls}")
    c = model.c if adc.c is None else adc.c
    n_d = directional_scans(arch, scenario, geom)
    return n_d * arch.n_adc * c * resolution_factor(adc.bits, model.resolution_law) * SYNC_TIME_BANDWIDTH


def ec_crossover(
    arch_a: Architecture,
    arch_b: Architecture,
    adc: AdcModel,
    *,
    scenario: Scenario | None = None,
    geom: SweepGeometry | None = None,
    model: PowerModel | None = None,
) -> float | None:
    """b_sc (Hz) where the two architectures' scan energies are equal.

    Under the parametric model the difference has the form A / b_sc + C with
    A from the base powers and C from the converter terms; the root -A / C is
    returned, or None when the curves do not cross at a positive bandwidth.
    """
    if geom is None:
        geom = SweepGeometry()
    if scenario is None:
        scenario = Scenario(kind="nCI")
    if model is None:
        model = default_power_model(adc.cls)
    c = model.c if adc.c is None else adc.c
    r = resolution_factor(adc.bits, model.resolution_law)
    n_a = directional_scans(arch_a, scenario, geom)
    n_b = directional_scans(arch_b, scenario, geom)
    scale = derive_frame(1.0).t_pss  # t_pss * b_sc, the inverse-proportionality constant
    a_term = scale * (n_a * model.base_power[arch_a.name] - n_b * model.base_power[arch_b.name])
    c_term = SYNC_TIME_BANDWIDTH * c * r * (n_a * arch_a.n_adc - n_b * arch_b.n_adc)
    if c_term == 0:
        return None
    root = -a_term / c_term
    return root if root > 0 else None


@dataclass(frozen=True)
class StructureComparison:
    """Wide-band sync slot layout vs. running everything at the widened bandwidth.

    The proposed layout widens only the sync sub-carrier by k, packing k sync
    symbols per dwell, so the sweep finishes in 1/k of the time while data
    traffic keeps the narrow sub-carrier.  The baseline widens b_sc for all
    signaling instead.  Scan energies coincide; the difference is the
    bandwidth the receiver must sustain outside discovery.
    """

    k: int
    proposed: EnergyReport
    baseline: EnergyReport
    data_plane_b_sc: float  # Hz, sub-carrier the proposed layout keeps for data
    baseline_b_sc: float  # Hz, sub-carrier the baseline imposes everywhere
    delay_ratio: float  # proposed t_del / baseline t_del
    energy_ratio: float  # proposed e_total / baseline e_total


def proposed_structure_energy(
    arch: Architecture,
    scenario: Scenario,
    adc: AdcModel,
    base_b_sc: float,
    k: int,
    power_mode: str = "parametric",
    *,
    geom: SweepGeometry | None = None,
    model: PowerModel | None = None,
    table: Iterable[PowerSample] | None = None,
) -> StructureComparison:
    """Energy of discovery under the k-fold wide-band sync layout.

    The receiver samples the widened sync signal, so power is evaluated at
    k * base_b_sc; the dwell per direction shrinks to t_pss / k.  Context
    acquisition, when paid, is not accelerated by k.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if geom is None:
        geom = SweepGeometry()
    frame = derive_frame(base_b_sc)
    wide_b_sc = k * base_b_sc
    n_d = directional_scans(arch, scenario, geom)
    scan_time = n_d * frame.t_pss / k
    if uses_ci_budget(arch, scenario, geom):
        t_ci, e_ci = scenario.t_ci, scenario.p_ci * scenario.t_ci
    else:
        t_ci, e_ci = 0.0, 0.0
    p_rx = _receive_power(arch, adc, wide_b_sc, power_mode, model, table)
    proposed = EnergyReport(
        arch=arch.name,
        scenario=scenario.kind,
        adc_class=adc.cls,
        bits=adc.bits,
        b_sc=float(base_b_sc),
        n_d=n_d,
        t_del=scan_time + t_ci,
        p_rx=p_rx,
        e_ci=e_ci,
        e_total=p_rx * scan_time + e_ci,
    )
    baseline = energy(
        arch, scenario, adc, wide_b_sc, power_mode, geom=geom, model=model, table=table
    )
    return StructureComparison(
        k=k,
        proposed=proposed,
        baseline=baseline,
        data_plane_b_sc=float(base_b_sc),
        baseline_b_sc=float(wide_b_sc),
        delay_ratio=proposed.t_del / baseline.t_del,
        energy_ratio=proposed.e_total / baseline.e_total,
    )

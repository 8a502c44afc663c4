"""Synchronization-signaling timing and bandwidth quantities.

The sync signals occupy a fixed grid of 6 resource blocks (72 sub-carriers)
regardless of the sub-carrier bandwidth, so scaling the sub-carrier bandwidth
up shrinks the transmission period and widens the total system bandwidth in
direct proportion.  All quantities are SI (Hz, s).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

# Reference anchor: 15 kHz sub-carriers transmit the sync signals every 5 ms.
B_SC_REF = 15e3  # Hz
T_PSS_REF = 5e-3  # s
PSS_TIME_SCALE = T_PSS_REF * B_SC_REF  # s*Hz; t_pss * b_sc is held constant

SUBCARRIERS_PER_RB = 12
RBS_FOR_SYNC = 6
# 6 RBs at 15 kHz spacing occupy 1.08 MHz of a 1.4 MHz channel.  Kept as the
# exact ratio (not the rounded 0.7714) so that b_tot * t_pss is exactly
# 12 * 6 * 75 / utilization = 7000 s*Hz, the constant behind the energy
# convergence behaviour.
SYNC_BW_UTILIZATION = 1.08e6 / 1.4e6

# t_pss * b_tot under the defaults; independent of b_sc.
SYNC_TIME_BANDWIDTH = SUBCARRIERS_PER_RB * RBS_FOR_SYNC * PSS_TIME_SCALE / SYNC_BW_UTILIZATION

# Sync symbol duration (incl. cyclic prefix) at the reference spacing.
# Informational only: delay accounting uses the transmission period t_pss.
PSS_SYMBOL_DURATION_REF = 71.4e-6  # s

DEFAULT_CP_FRACTION = 0.07  # cyclic prefix as a fraction of the symbol period


@dataclass(frozen=True)
class FrameConfig:
    """Timing/bandwidth quantities derived from one sub-carrier bandwidth."""

    b_sc: float  # Hz, sub-carrier bandwidth
    t_pss: float  # s, sync transmission period (per-direction dwell)
    b_tot: float  # Hz, total system bandwidth (ADC sampling rate driver)
    utilization: float  # fraction of b_tot carrying the sync grid
    subcarriers_per_rb: int = SUBCARRIERS_PER_RB
    rbs_for_sync: int = RBS_FOR_SYNC

    @property
    def t_sc(self) -> float:
        """Base OFDM symbol period (s), excluding cyclic prefix."""
        return 1.0 / self.b_sc

    @property
    def time_bandwidth(self) -> float:
        """b_tot * t_pss (s*Hz); constant across frames with shared defaults."""
        return self.b_tot * self.t_pss

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def derive_frame(
    b_sc: float,
    *,
    utilization: float = SYNC_BW_UTILIZATION,
    subcarriers_per_rb: int = SUBCARRIERS_PER_RB,
    rbs_for_sync: int = RBS_FOR_SYNC,
) -> FrameConfig:
    """Build the frame quantities for a sub-carrier bandwidth.

    t_pss scales inversely with b_sc (anchored at 15 kHz <-> 5 ms) and b_tot
    grows linearly: b_tot = subcarriers_per_rb * rbs_for_sync * b_sc / utilization.
    """
    if b_sc <= 0:
        raise ValueError(f"sub-carrier bandwidth must be positive, got {b_sc!r}")
    if not 0 < utilization <= 1:
        raise ValueError(f"utilization must be in (0, 1], got {utilization!r}")
    if subcarriers_per_rb < 1 or rbs_for_sync < 1:
        raise ValueError("sub-carrier and RB counts must be >= 1")
    t_pss = PSS_TIME_SCALE / b_sc
    b_tot = subcarriers_per_rb * rbs_for_sync * b_sc / utilization
    return FrameConfig(
        b_sc=float(b_sc),
        t_pss=t_pss,
        b_tot=b_tot,
        utilization=utilization,
        subcarriers_per_rb=subcarriers_per_rb,
        rbs_for_sync=rbs_for_sync,
    )


@dataclass(frozen=True)
class PssSlotStructure:
    """Slot layout that packs k short wide-band sync symbols per base symbol.

    The sync sub-carrier is widened k-fold relative to the frame's b_sc, so k
    sync symbols (each 1/k of the base symbol period) fit where one fit
    before.  k = 1 degenerates to the base frame.
    """

    frame: FrameConfig
    k: int  # bandwidth multiplication factor
    b_sc_pss: float  # Hz, widened sync sub-carrier bandwidth
    t_sc: float  # s, base symbol period
    t_sc_pss: float  # s, widened sync symbol period (= t_sc / k)
    cp: float  # s, cyclic prefix per sync symbol
    pss_per_slot: int  # sync transmissions per base slot (= k)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def build_pss_structure(
    frame: FrameConfig, k: int, cp_fraction: float = DEFAULT_CP_FRACTION
) -> PssSlotStructure:
    """Lay out k wide-band sync symbols per base slot of the given frame."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= cp_fraction < 1:
        raise ValueError(f"cp_fraction must be in [0, 1), got {cp_fraction!r}")
    t_sc = frame.t_sc
    t_sc_pss = t_sc / k
    return PssSlotStructure(
        frame=frame,
        k=k,
        b_sc_pss=k * frame.b_sc,
        t_sc=t_sc,
        t_sc_pss=t_sc_pss,
        cp=cp_fraction * t_sc_pss,
        pss_per_slot=k,
    )


def slot_symbol_offsets(structure: PssSlotStructure) -> list[float]:
    """Start offsets (s) of each sync symbol within one base slot.

    Each of the k symbols is preceded by its cyclic prefix; the whole burst
    occupies (1 + cp_fraction) base symbol periods at the head of the slot,
    which is always far shorter than the slot period t_pss.
    """
    return [structure.cp + j * (structure.cp + structure.t_sc_pss) for j in range(structure.k)]


def pss_schedule(
    structure: PssSlotStructure, n_directions: int
) -> list[tuple[int, float, float]]:
    """Transmission plan covering n_directions angular directions.

    Returns one (direction index, start time, duration) entry per sync
    transmission.  Consecutive symbols within a slot target consecutive
    directions, so ceil(n_directions / k) base slots cover the sweep.
    """
    if n_directions < 1:
        raise ValueError(f"n_directions must be >= 1, got {n_directions}")
    t_pss = structure.frame.t_pss
    offsets = slot_symbol_offsets(structure)
    n_slots = -(-n_directions // structure.k)  # ceil
    entries = []
    for slot in range(n_slots):
        for j in range(structure.k):
            direction = slot * structure.k + j
            if direction >= n_directions:
                break
            entries.append((direction, slot * t_pss + offsets[j], structure.t_sc_pss))
    return entries

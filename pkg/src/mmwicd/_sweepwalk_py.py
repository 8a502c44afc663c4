"""Pure-Python slot-walk kernel, the fallback when the compiled one is absent.

Both kernels expose the same function with the same semantics; the compiled
variant in _sweepwalk.pyx exists only for speed on large geometries.
"""

from __future__ import annotations


def enumerate_discovery_slots(
    n_bs: int,
    n_ms: int,
    beams: int,
    k: int,
    order: int,
    pinned_set: int,
    out,
) -> int:
    """Walk the sweep slot by slot, recording every target's discovery slot.

    Each slot the BS covers one group of k consecutive directions while the MS
    listens on one set of `beams` consecutive beam indices.  order 0 advances
    the BS group every slot and the beam set once per BS cycle; order 1 is the
    transpose.  pinned_set >= 0 locks the beam set (context information) so the
    sweep is over BS groups only; targets outside that set are never seen.

    out must hold n_bs * n_ms zeroed integer entries; entry tb * n_ms + tm is
    set to the 1-based slot of first alignment, or left 0 if never aligned.
    Returns the sweep length in slots.
    """
    n_groups = (n_bs + k - 1) // k
    n_sets = (n_ms + beams - 1) // beams
    eff_sets = 1 if pinned_set >= 0 else n_sets
    total = n_groups * eff_sets
    for slot in range(total):
        if order == 0:
            group = slot % n_groups
            set_i = slot // n_groups
        else:
            set_i = slot % eff_sets
            group = slot // eff_sets
        if pinned_set >= 0:
            set_i = pinned_set
        bs_lo = group * k
        bs_hi = min(bs_lo + k, n_bs)
        ms_lo = set_i * beams
        ms_hi = min(ms_lo + beams, n_ms)
        mark = slot + 1
        for tb in range(bs_lo, bs_hi):
            row = tb * n_ms
            for tm in range(ms_lo, ms_hi):
                idx = row + tm
                if out[idx] == 0:
                    out[idx] = mark
    return total

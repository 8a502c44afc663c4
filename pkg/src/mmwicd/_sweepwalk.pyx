# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled slot-walk kernel; _sweepwalk_py holds the reference semantics."""


def enumerate_discovery_slots(int n_bs, int n_ms, int beams, int k,
                              int order, int pinned_set, long long[::1] out):
    """Same contract as _sweepwalk_py.enumerate_discovery_slots."""
    cdef Py_ssize_t n_groups = (n_bs + k - 1) // k
    cdef Py_ssize_t n_sets = (n_ms + beams - 1) // beams
    cdef Py_ssize_t eff_sets = 1 if pinned_set >= 0 else n_sets
    cdef Py_ssize_t total = n_groups * eff_sets
    cdef Py_ssize_t slot, group, set_i, bs_lo, bs_hi, ms_lo, ms_hi, tb, tm, idx
    cdef long long mark
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
        bs_hi = bs_lo + k
        if bs_hi > n_bs:
            bs_hi = n_bs
        ms_lo = set_i * beams
        ms_hi = ms_lo + beams
        if ms_hi > n_ms:
            ms_hi = n_ms
        mark = slot + 1
        for tb in range(bs_lo, bs_hi):
            for tm in range(ms_lo, ms_hi):
                idx = tb * n_ms + tm
                if out[idx] == 0:
                    out[idx] = mark
    return total

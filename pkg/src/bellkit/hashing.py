"""One-way hashing and breeding protocol simulators.

Desk-scale verification of the one-bit-per-measurement mechanism: the
true Bell string of n pairs is sampled, and an exact Bayesian posterior
over all 4^n candidates is tracked through rounds of random subset-parity
measurements.  In hashing each round consumes one of the n working pairs
and maps the survivors through the residual-string function f_s (defined
operationally by the parity-network gates, back-action included); in
breeding the parity lands on a sacrificial pre-purified pair, so the
working string is restored exactly after every round and candidates are
only filtered, never remapped.

Candidate strings are encoded as 2n-bit integers, pair-major with the
phase bit above the amplitude bit and pair 0 highest, matching
bell.string_to_bits read as a binary numeral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bell
from .density import validate_bell_diagonal, von_neumann_entropy

MAX_EXACT_PAIRS = 8


def hashing_yield(p) -> float:
    """Asymptotic hashing/breeding yield: max(0, 1 - S(W))."""
    return max(0.0, 1.0 - von_neumann_entropy(validate_bell_diagonal(p)))


def string_to_code(x: tuple) -> int:
    code = 0
    for b in x:
        code = (code << 2) | b
    return code


def code_to_string(code: int, n: int) -> tuple:
    return tuple((code >> (2 * (n - 1 - i))) & 3 for i in range(n))


def subset_to_code(s: tuple) -> int:
    return string_to_code(s)


def _parity_of(v):
    v = v.copy()
    out = np.zeros_like(v)
    while v.any():
        out ^= v & 1
        v >>= 1
    return out & 1


def apply_network_to_codes(codes: np.ndarray, s_code: int, n: int) -> tuple:
    """Vectorized parity network on encoded Bell strings.

    Mirrors bell.measure_and_backaction for every code at once; returns
    (parity_bits, residual_codes) with the destination pair removed.
    Agreement with the gate-level path is checked exhaustively in tests.
    """
    c = codes.astype(np.int64, copy=True)
    pair_masks = [(s_code >> (2 * (n - 1 - i))) & 3 for i in range(n)]
    if not any(pair_masks):
        raise ValueError("subset index must be nonzero")
    dest = next(i for i, m in enumerate(pair_masks) if m)
    for i, m in enumerate(pair_masks):
        a = 2 * (n - 1 - i)
        h = a + 1
        if m == 2:      # BY: swap phase and amplitude bits
            t = ((c >> h) ^ (c >> a)) & 1
            c ^= (t << h) | (t << a)
        elif m == 3:    # SXBX: amplitude ^= phase
            c ^= ((c >> h) & 1) << a
    ad = 2 * (n - 1 - dest)
    hd = ad + 1
    for i, m in enumerate(pair_masks):
        if i == dest or m == 0:
            continue
        a = 2 * (n - 1 - i)
        h = a + 1
        # BXOR(src=i, tgt=dest): dest amplitude ^= src amplitude,
        # src phase ^= dest phase (back-action)
        c ^= ((c >> a) & 1) << ad
        c ^= ((c >> hd) & 1) << h
    parity = ((c >> ad) & 1).astype(np.uint8)
    low = c & ((1 << ad) - 1)
    high = c >> (ad + 2)
    return parity, (high << ad) | low


def product_posterior(p, n: int) -> np.ndarray:
    """Prior over all 4^n codes for n i.i.d. pairs with per-pair probs p."""
    p = validate_bell_diagonal(p)
    w = np.ones(1)
    for _ in range(n):
        w = np.kron(w, p)
    return w


def posterior_entropy(w: np.ndarray) -> float:
    nz = w[w > 0]
    nz = nz / nz.sum()
    return float(-(nz * np.log2(nz)).sum())


@dataclass
class HashingRound:
    s: tuple
    parity_observed: int
    round_index: int
    candidates_filtered: int = 0   # survivors of the parity test
    candidates_after: int = 0      # distinct candidates after any remap
    entropy_after: float = 0.0


@dataclass
class HashingReport:
    rounds: int
    identified: bool
    failure_mode: str
    entropy_trace: list = field(default_factory=list)
    history: list = field(default_factory=list)
    net_yield: float | None = None


def _sample_truth(p, n, rng) -> int:
    idx = rng.choice(4, size=n, p=validate_bell_diagonal(p))
    return string_to_code(tuple(int(i) for i in idx))


def hashing_simulate(p, n: int, rounds: int, rng) -> HashingReport:
    """Exact-posterior hashing run: sample a truth, do `rounds` parity rounds.

    Each round draws a uniformly random nonzero subset index s over the
    remaining pairs, observes the true parity s.x, discards candidates
    whose parity disagrees, and maps the survivors through f_s.  Stops
    early once a single candidate remains.
    """
    if n < 1 or n > MAX_EXACT_PAIRS:
        raise ValueError(f"exact posterior supports 1 <= n <= {MAX_EXACT_PAIRS}")
    if rounds > n:
        raise ValueError("cannot measure more pairs than exist")
    truth = _sample_truth(p, n, rng)
    w = product_posterior(p, n)
    report = HashingReport(0, False, "none")
    nk = n
    for k in range(rounds):
        if np.count_nonzero(w) == 1:
            break
        s_code = int(rng.integers(1, 4 ** nk))
        codes = np.arange(4 ** nk, dtype=np.int64)
        tp, tr = apply_network_to_codes(np.array([truth]), s_code, nk)
        parity, truth = int(tp[0]), int(tr[0])
        pars, res = apply_network_to_codes(codes, s_code, nk)
        mask = pars == parity
        survivors = int(np.count_nonzero(w[mask]))
        new_w = np.zeros(4 ** (nk - 1))
        np.add.at(new_w, res[mask], w[mask])
        total = new_w.sum()
        if total <= 0:
            report.failure_mode = "truth_outside_candidates"
            return report
        w = new_w / total
        nk -= 1
        report.rounds += 1
        report.entropy_trace.append(posterior_entropy(w))
        report.history.append(HashingRound(
            bell.code_to_string(s_code, nk + 1) if False else code_to_string(s_code, nk + 1),
            parity, k, survivors, int(np.count_nonzero(w)),
            report.entropy_trace[-1]))
    if w[truth] <= 0:
        report.failure_mode = "truth_outside_candidates"
        return report
    report.identified = bool(np.count_nonzero(w) == 1)
    report.failure_mode = "none" if report.identified else "ambiguous"
    return report


def breeding_round(s: tuple, x: tuple) -> tuple:
    """One breeding parity collection at gate level; returns (parity, x).

    The working string is extended by a perfect 00 pool pair which serves
    as the common BXOR target; with the target phase fixed at 0 the
    back-action vanishes, and undoing the one-pair preprocessing restores
    x exactly.
    """
    n = len(x)
    if len(s) != n:
        raise ValueError("subset index and Bell string lengths differ")
    if all(si == 0 for si in s):
        raise ValueError("subset index must be nonzero")
    prep = []
    for i, si in enumerate(s):
        if si == 2:
            prep.append(("BY", i))
        elif si == 3:
            prep.append(("SXBX", i))
    y = x + (bell.PHI_PLUS,)
    y = bell.apply_gates(prep, y)
    for i, si in enumerate(s):
        if si:
            y = bell.apply_gate(("BXOR", i, n), y)
    parity = bell.amplitude_bit(y[n])
    y = bell.apply_gates(prep, y[:n])   # BY and SXBX are involutions
    return parity, y


def breeding_simulate(p, n: int, pool: int, rng, delta: float = 0.0) -> HashingReport:
    """Breeding run: parity rounds against pre-purified pairs, no back-action.

    Consumes ceil(n * (S(W) + 2*delta)) pool pairs (stopping early if the
    posterior is already a point mass) and reports the net yield
    (n - consumed) / n.  Candidates are filtered, never remapped, since
    the working string is restored after every round.
    """
    if n < 1 or n > MAX_EXACT_PAIRS:
        raise ValueError(f"exact posterior supports 1 <= n <= {MAX_EXACT_PAIRS}")
    p = validate_bell_diagonal(p)
    needed = math.ceil(n * (von_neumann_entropy(p) + 2.0 * delta) - 1e-12)
    if needed > pool:
        raise ValueError(f"pool exhausted: need {needed} pre-purified pairs, have {pool}")
    truth = _sample_truth(p, n, rng)
    w = product_posterior(p, n)
    codes = np.arange(4 ** n, dtype=np.int64)
    report = HashingReport(0, False, "none")
    for k in range(needed):
        if np.count_nonzero(w) == 1:
            break
        s_code = int(rng.integers(1, 4 ** n))
        s = code_to_string(s_code, n)
        parity, restored = breeding_round(s, code_to_string(truth, n))
        assert string_to_code(restored) == truth
        pars = _parity_of(codes & s_code)
        w = np.where(pars == parity, w, 0.0)
        total = w.sum()
        if total <= 0:
            report.failure_mode = "truth_outside_candidates"
            return report
        w = w / total
        report.rounds += 1
        report.entropy_trace.append(posterior_entropy(w))
        report.history.append(HashingRound(
            s, parity, k, int(np.count_nonzero(w)),
            int(np.count_nonzero(w)), report.entropy_trace[-1]))
    report.identified = bool(np.count_nonzero(w) == 1)
    report.failure_mode = "none" if report.identified else "ambiguous"
    report.net_yield = (n - report.rounds) / n
    return report

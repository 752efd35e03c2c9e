"""Two-way purification protocols on Bell-diagonal probability vectors.

The recurrence step BXORs pairs of pairs drawn from the same ensemble,
bilaterally measures each target, and keeps the source exactly when the
two sides' measurements agree (target amplitude bit 0 after the BXOR).
Iteration interleaves the step with either the standard-state-preserving
twirl (stay on the Werner line) or the deterministic permutation that
swaps the 10 and 11 components (faster fidelity growth).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .density import validate_bell_diagonal, werner

WERNER_TWIRL = "twirl"
MACCHIAVELLO = "macchiavello"
VARIANTS = (WERNER_TWIRL, MACCHIAVELLO)


def recurrence_step(p) -> tuple:
    """One recurrence iteration; returns (p_new, p_pass).

    p00' = (p00^2 + p10^2)/N, p01' = (p01^2 + p11^2)/N,
    p10' = 2 p00 p10 / N,     p11' = 2 p01 p11 / N,
    with N = p_pass = (p00 + p10)^2 + (p01 + p11)^2.
    """
    p00, p01, p10, p11 = validate_bell_diagonal(p)
    p_pass = p00**2 + p01**2 + p10**2 + p11**2 + 2*p00*p10 + 2*p01*p11
    if p_pass <= 0.0:
        raise ValueError("pass probability vanished")
    p_new = np.array([p00**2 + p10**2, p01**2 + p11**2,
                      2*p00*p10, 2*p01*p11]) / p_pass
    return p_new, float(p_pass)


def twirl_equalize(p) -> np.ndarray:
    """Probability-vector shortcut for the modified twirl: (p00, q, q, q)."""
    p = validate_bell_diagonal(p)
    return werner(float(p[0]))


def macchiavello_permute(p) -> np.ndarray:
    """Deterministic Bell-index permutation fixing 00, 01 and swapping 10, 11."""
    p = validate_bell_diagonal(p)
    return p[[0, 1, 3, 2]]


@dataclass
class RecurrenceStep:
    p: np.ndarray
    p_pass: float
    fraction_remaining: float


@dataclass
class RecurrenceTrace:
    steps: list = field(default_factory=list)

    @property
    def final_fidelity(self) -> float:
        return float(self.steps[-1].p[0]) if self.steps else float("nan")


def recurrence_iterate(F0: float, variant: str = WERNER_TWIRL,
                       target: float = 1.0 - 1e-6, max_steps: int = 64,
                       stop=None) -> RecurrenceTrace:
    """Iterate the recurrence from a Werner state of fidelity F0 > 1/2.

    After each step the twirl variant re-equalizes the non-standard
    components while the macchiavello variant applies the 10<->11
    permutation.  Stops when `stop(step_index, p)` returns True; the
    default predicate stops at the target fidelity or after max_steps.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not 0.5 < F0 <= 1.0:
        raise ValueError("initial fidelity must lie in (1/2, 1]")
    if stop is None:
        def stop(k, p):
            return p[0] >= target or k >= max_steps
    trace = RecurrenceTrace()
    p = werner(F0)
    frac = 1.0
    k = 0
    while not stop(k, p):
        p, p_pass = recurrence_step(p)
        p = twirl_equalize(p) if variant == WERNER_TWIRL else macchiavello_permute(p)
        frac *= p_pass / 2.0
        k += 1
        trace.steps.append(RecurrenceStep(p, p_pass, frac))
    return trace


@dataclass
class DirectPurifyResult:
    trials: int
    successes: int
    estimated_success_prob: float
    estimated_yield: float
    survivor_fidelity: float


def _cnot_pair_permutation():
    # basis order |a_s b_s a_t b_t>; BXOR = CNOT(a_s->a_t) and CNOT(b_s->b_t)
    perm = np.zeros(16, dtype=int)
    for idx in range(16):
        a_s, b_s, a_t, b_t = (idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        perm[idx] = (a_s << 3) | (b_s << 2) | ((a_t ^ a_s) << 1) | (b_t ^ b_s)
    return perm


def direct_purify_sim(p: float, n_pairs: int, rng) -> DirectPurifyResult:
    """Single-shot purification of (1-p)|uu><uu| + p|Psi+><Psi+| pairs.

    Pairs are consumed two at a time: BXOR from source pair into target
    pair, then both target qubits are measured in the up/down basis and
    the source is kept only on the outcome down-down.  Amplitudes are
    tracked exactly per ensemble branch; only the measurement outcomes
    are sampled.  Kept sources are exactly Psi+.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if n_pairs % 2:
        raise ValueError("n_pairs must be even")
    trials = n_pairs // 2
    uu = np.zeros(4, dtype=complex)
    uu[0] = 1.0
    psip = np.zeros(4, dtype=complex)
    psip[1] = psip[2] = 1.0 / np.sqrt(2.0)
    states = (uu, psip)
    branch_probs = np.array([(1-p)*(1-p), (1-p)*p, p*(1-p), p*p])
    perm = _cnot_pair_permutation()

    # per branch: exact outcome distribution for the target measurement
    # and the collapsed source state on outcome down-down
    cell_probs = np.zeros((4, 4))
    dd_fidelity = np.zeros(4)
    for bi, (s_state, t_state) in enumerate(
            ((uu, uu), (uu, psip), (psip, uu), (psip, psip))):
        joint = np.kron(s_state, t_state)[perm.argsort()]
        # joint[perm_inv]: amplitude of post-BXOR basis state idx is the
        # pre-BXOR amplitude of the state mapping to idx
        amps = joint.reshape(4, 4)          # rows: source, cols: target
        cell_probs[bi] = (np.abs(amps) ** 2).sum(axis=0)
        dd = amps[:, 3]
        if np.linalg.norm(dd) > 0:
            dd = dd / np.linalg.norm(dd)
            dd_fidelity[bi] = abs(np.vdot(psip, dd)) ** 2
    joint_probs = (branch_probs[:, None] * cell_probs).ravel()
    counts = rng.multinomial(trials, joint_probs).reshape(4, 4)
    successes = int(counts[:, 3].sum())
    if successes:
        fid = float((counts[:, 3] * dd_fidelity).sum() / successes)
    else:
        fid = float("nan")
    sp = successes / trials if trials else 0.0
    return DirectPurifyResult(trials, successes, sp, sp / 2.0, fid)

"""Two-bit Bell-pair algebra: labels, gate actions, subset parities.

Each Bell state of a qubit pair carries a two-bit label: the high
("phase") bit distinguishes +/- and the low ("amplitude") bit
distinguishes Phi/Psi:

    Phi+ = 00    Psi+ = 01    Phi- = 10    Psi- = 11

A block of n pairs is a tuple of such labels; written out as bits it is
pair-major with the phase bit first, so (Psi-, Phi+, Phi-) <-> "110010".
Gate actions here are index-level (phase-free) maps; all phase-sensitive
work lives in the density / twirl / qecc modules.

Gates are plain tuples: ("BXOR", src, tgt) or (kind, pair) for the
one-pair kinds BY, BX, BZ, SX, SY, SZ, SXBX.  Pair indices are 0-based.
"""

from __future__ import annotations

PHI_PLUS, PSI_PLUS, PHI_MINUS, PSI_MINUS = 0, 1, 2, 3
BELL_NAMES = ("Phi+", "Psi+", "Phi-", "Psi-")

ONE_PAIR_KINDS = ("BY", "BX", "BZ", "SX", "SY", "SZ", "SXBX")
GATE_KINDS = ("BXOR",) + ONE_PAIR_KINDS


def phase_bit(b: int) -> int:
    return (b >> 1) & 1


def amplitude_bit(b: int) -> int:
    return b & 1


def string_from_bits(bits: str) -> tuple:
    """Parse a 2n-character bit string, e.g. "110010" -> (3, 0, 2)."""
    if len(bits) % 2:
        raise ValueError("bit string must have even length")
    return tuple(int(bits[i:i + 2], 2) for i in range(0, len(bits), 2))


def string_to_bits(x: tuple) -> str:
    return "".join(format(b, "02b") for b in x)


def _check_pair(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise ValueError(f"pair index {i} out of range for {n} pairs")


def apply_gate(gate: tuple, x: tuple) -> tuple:
    """Apply one gate to a Bell string, returning the new string.

    BXOR leaves the source amplitude fixed, XORs the source amplitude
    into the target amplitude, leaves the target phase fixed, and XORs
    the target phase into the source phase (the "back-action").
    """
    n = len(x)
    kind = gate[0]
    if kind == "BXOR":
        src, tgt = gate[1], gate[2]
        _check_pair(src, n)
        _check_pair(tgt, n)
        if src == tgt:
            raise ValueError("BXOR source and target must differ")
        out = list(x)
        s, t = x[src], x[tgt]
        out[tgt] = t ^ (amplitude_bit(s))
        out[src] = s ^ (phase_bit(t) << 1)
        return tuple(out)
    i = gate[1]
    _check_pair(i, n)
    b = x[i]
    p, a = phase_bit(b), amplitude_bit(b)
    if kind == "BY":
        p, a = a, p
    elif kind == "BX":
        a ^= 1 ^ p
    elif kind == "BZ":
        p ^= 1 ^ a
    elif kind == "SX":
        a ^= 1
    elif kind == "SY":
        p ^= 1
        a ^= 1
    elif kind == "SZ":
        p ^= 1
    elif kind == "SXBX":
        a ^= p
    else:
        raise ValueError(f"unknown gate kind {kind!r}")
    out = list(x)
    out[i] = (p << 1) | a
    return tuple(out)


def apply_gates(gates, x: tuple) -> tuple:
    for g in gates:
        x = apply_gate(g, x)
    return x


def subset_parity(s: tuple, x: tuple) -> int:
    """Boolean inner product s.x: parity of the bitwise AND of the two strings."""
    if len(s) != len(x):
        raise ValueError("subset index and Bell string lengths differ")
    par = 0
    for si, xi in zip(s, x):
        v = si & xi
        par ^= (v >> 1) ^ (v & 1)
    return par


def build_parity_network(s: tuple) -> tuple:
    """Gate network collecting the subset parity s.x into one amplitude bit.

    The destination is the pair holding the first nonzero bit of s.  Each
    selected pair is first preprocessed so that its own contribution to
    the parity sits in its amplitude bit (01: nothing, 10: BY swaps the
    bits, 11: SXBX folds phase into amplitude); every selected
    non-destination pair is then BXORed into the destination, whose
    amplitude bit accumulates s.x.  Returns (gates, destination).
    """
    if all(si == 0 for si in s):
        raise ValueError("subset index must be nonzero")
    dest = next(i for i, si in enumerate(s) if si)
    gates = []
    for i, si in enumerate(s):
        if si == 2:
            gates.append(("BY", i))
        elif si == 3:
            gates.append(("SXBX", i))
    for i, si in enumerate(s):
        if si and i != dest:
            gates.append(("BXOR", i, dest))
    return gates, dest


def measure_and_backaction(s: tuple, x: tuple) -> tuple:
    """Run the parity network on x and measure out the destination pair.

    Returns (parity, residual) where parity = s.x and residual is the
    Bell string of the n-1 unmeasured pairs after the network gates,
    including the BXOR back-action on the source phase bits.  The
    measured pair is consumed, so its (randomized) phase never appears.
    """
    if len(s) != len(x):
        raise ValueError("subset index and Bell string lengths differ")
    gates, dest = build_parity_network(s)
    y = apply_gates(gates, x)
    parity = amplitude_bit(y[dest])
    residual = y[:dest] + y[dest + 1:]
    return parity, residual


def measure_amplitude(b: int, rng) -> tuple:
    """Bilateral z measurement of one pair: learn Phi-vs-Psi, randomize phase.

    Returns (amplitude_bit, (alice_outcome, bob_outcome)); the two local
    outcomes agree exactly when the pair is a Phi state.
    """
    a = amplitude_bit(b)
    alice = int(rng.integers(0, 2))
    return a, (alice, alice ^ a)


def format_gate(gate: tuple) -> str:
    if gate[0] == "BXOR":
        return f"BXOR {gate[1]} {gate[2]}"
    return f"{gate[0]} {gate[1]}"


def parse_gate(line: str) -> tuple:
    parts = line.split()
    if not parts:
        raise ValueError("empty gate line")
    kind = parts[0]
    if kind == "BXOR":
        if len(parts) != 3:
            raise ValueError(f"malformed BXOR line: {line!r}")
        return ("BXOR", int(parts[1]), int(parts[2]))
    if kind not in ONE_PAIR_KINDS or len(parts) != 2:
        raise ValueError(f"malformed gate line: {line!r}")
    return (kind, int(parts[1]))


def format_gates(gates) -> str:
    """Gate-list text format: one gate per line, LF endings."""
    return "".join(format_gate(g) + "\n" for g in gates)


def parse_gates(text: str) -> list:
    return [parse_gate(ln) for ln in text.splitlines() if ln.strip()]

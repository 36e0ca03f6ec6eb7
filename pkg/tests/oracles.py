"""Independent reference implementations used only by the test suite.

Everything here is written the slow, obvious way (per-element loops, matrix
definitions from first principles) so that the fast library code is checked
against genuinely separate logic.
"""

from __future__ import annotations

import numpy as np


def naive_walsh(bits) -> list[int]:
    """W(a) = sum_x (-1)^(f(x) XOR parity(a AND x)), by direct double loop."""
    bits = list(int(b) for b in bits)
    size = len(bits)
    out = []
    for a in range(size):
        acc = 0
        for x in range(size):
            parity = bin(a & x).count("1") & 1
            acc += -1 if (bits[x] ^ parity) else 1
        out.append(acc)
    return out


def hadamard_matrix(n: int) -> np.ndarray:
    """H[a, x] = (-1)^parity(a & x), built element-wise (no butterfly)."""
    idx = np.arange(1 << n, dtype=np.uint32)
    overlap = idx[:, None] & idx[None, :]
    parity = np.zeros_like(overlap)
    for shift in range(n):
        parity ^= (overlap >> shift) & 1
    return (1 - 2 * parity.astype(np.int64))


def batch_walsh_by_matrix(bit_rows: np.ndarray) -> np.ndarray:
    """Walsh spectra of many tables at once via the explicit Hadamard matrix."""
    bit_rows = np.asarray(bit_rows, dtype=np.int64)
    n = int(bit_rows.shape[1]).bit_length() - 1
    signs = 1 - 2 * bit_rows
    return signs @ hadamard_matrix(n)


def affine_tables(n: int) -> np.ndarray:
    """All 2**(n+1) affine truth tables as rows."""
    size = 1 << n
    idx = np.arange(size, dtype=np.uint32)
    rows = []
    for a in range(size):
        parity = np.zeros(size, dtype=np.uint8)
        overlap = idx & a
        for shift in range(n):
            parity ^= ((overlap >> shift) & 1).astype(np.uint8)
        rows.append(parity)
        rows.append(parity ^ 1)
    return np.array(rows, dtype=np.uint8)


def nonlinearity_by_distance(bits, affine=None) -> int:
    """Minimum Hamming distance to every affine function, by enumeration."""
    bits = np.asarray(bits, dtype=np.uint8)
    n = int(bits.shape[0]).bit_length() - 1
    if affine is None:
        affine = affine_tables(n)
    distances = np.count_nonzero(affine != bits[None, :], axis=1)
    return int(distances.min())


def eval_tree_pointwise(node, assignment: dict[int, bool]) -> bool:
    """Evaluate one tree on one assignment using plain Python booleans."""
    tag = node[0]
    if tag == "x":
        return assignment[node[1]]
    vals = [eval_tree_pointwise(child, assignment) for child in node[1:]]
    if tag == "NOT":
        return not vals[0]
    if tag == "OR":
        return vals[0] or vals[1]
    if tag == "AND":
        return vals[0] and vals[1]
    if tag == "AND2":
        return vals[0] and not vals[1]
    if tag == "XOR":
        return vals[0] != vals[1]
    if tag == "XNOR":
        return vals[0] == vals[1]
    if tag == "IF":
        return vals[1] if vals[0] else vals[2]
    raise AssertionError(f"unknown tag {tag}")


def tree_table_pointwise(node, n: int) -> list[int]:
    """Truth table of a tree, one assignment at a time, big-endian indexing."""
    out = []
    for i in range(1 << n):
        assignment = {v: bool((i >> (n - v)) & 1) for v in range(1, n + 1)}
        out.append(int(eval_tree_pointwise(node, assignment)))
    return out


def rotations(i: int, n: int) -> set[int]:
    """All indices reachable from i by repeatedly rotating its n bits right."""
    seen = set()
    v = i
    while v not in seen:
        seen.add(v)
        v = ((v & 1) << (n - 1)) | (v >> 1)
    return seen

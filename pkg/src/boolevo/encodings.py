"""Genotype encodings: bitstrings, float vectors and Boolean expression trees.

Trees are nested tuples.  A leaf is ``("x", v)`` for variable ``v`` in
``1..n``; an inner node is ``(op, child, ...)`` with the operator name first.
Tuples make genotypes hashable and cheap to copy by reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .orbits import OrbitTable, compute_orbits, expand
from .truthtable import TruthTable, _check_dimension

VAR = "x"

#: Operator name -> arity.  AND2 is the masking conjunction a AND NOT b,
#: IF(a, b, c) returns b where a is true and c elsewhere.
OPERATOR_ARITY = {
    "OR": 2,
    "XOR": 2,
    "AND": 2,
    "AND2": 2,
    "XNOR": 2,
    "NOT": 1,
    "IF": 3,
}

OPERATOR_NAMES = tuple(OPERATOR_ARITY)

Tree = tuple


# ---------------------------------------------------------------------------
# genotype containers

GENERAL = "general"
ROTATION = "rs"


@dataclass(frozen=True, eq=False)
class BitstringGenotype:
    """Raw bit vector; covers the full table or one bit per rotation orbit."""

    bits: np.ndarray
    mode: str = GENERAL

    def __post_init__(self) -> None:
        if self.mode not in (GENERAL, ROTATION):
            raise ValueError(f"unknown bitstring mode {self.mode!r}")
        bits = np.array(self.bits, dtype=np.uint8, copy=True)
        if bits.ndim != 1:
            raise ValueError("bitstring genotype must be one-dimensional")
        if bits.size and int(bits.max()) > 1:
            raise ValueError("bitstring entries must be 0 or 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return int(self.bits.shape[0])


@dataclass(frozen=True, eq=False)
class FloatGenotype:
    """Vector in [0, 1]^dimension; each entry decodes to ``decode`` bits."""

    values: np.ndarray
    decode: int = 3
    mode: str = GENERAL

    def __post_init__(self) -> None:
        if self.mode not in (GENERAL, ROTATION):
            raise ValueError(f"unknown float mode {self.mode!r}")
        if not isinstance(self.decode, (int, np.integer)) or self.decode < 1:
            raise ValueError(f"decode must be a positive int, got {self.decode!r}")
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1:
            raise ValueError("float genotype must be one-dimensional")
        if values.size and (values.min() < 0.0 or values.max() > 1.0):
            raise ValueError("float genotype entries must lie in [0, 1]")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class GpTree:
    """Expression-tree genotype over x1..xn."""

    root: Tree
    n: int

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        _validate_tree(self.root, self.n)


# ---------------------------------------------------------------------------
# tree structure helpers


def _validate_tree(node: Tree, n: int) -> None:
    if not isinstance(node, tuple) or not node:
        raise ValueError(f"malformed tree node {node!r}")
    tag = node[0]
    if tag == VAR:
        if len(node) != 2 or not 1 <= node[1] <= n:
            raise ValueError(f"leaf {node!r} out of range for n={n}")
        return
    arity = OPERATOR_ARITY.get(tag)
    if arity is None:
        raise ValueError(f"unknown operator {tag!r}")
    if len(node) != arity + 1:
        raise ValueError(f"{tag} expects {arity} children, got {len(node) - 1}")
    for child in node[1:]:
        _validate_tree(child, n)


def tree_size(node: Tree) -> int:
    """Total node count."""
    if node[0] == VAR:
        return 1
    return 1 + sum(tree_size(child) for child in node[1:])


def tree_depth(node: Tree) -> int:
    """Edges on the longest root-to-leaf path; a lone leaf has depth 0."""
    if node[0] == VAR:
        return 0
    return 1 + max(tree_depth(child) for child in node[1:])


def subtree_at(node: Tree, index: int) -> Tree:
    """Subtree rooted at preorder position ``index`` (root is 0)."""
    found = _find_preorder(node, index)
    if found is None:
        raise IndexError(f"preorder index {index} out of range")
    return found


def _find_preorder(node: Tree, index: int):
    if index == 0:
        return node
    index -= 1
    if node[0] != VAR:
        for child in node[1:]:
            size = tree_size(child)
            if index < size:
                return _find_preorder(child, index)
            index -= size
    return None


def replace_at(node: Tree, index: int, replacement: Tree) -> Tree:
    """Copy of the tree with the subtree at preorder ``index`` swapped out."""
    result = _replace_preorder(node, index, replacement)
    if result is None:
        raise IndexError(f"preorder index {index} out of range")
    return result


def _replace_preorder(node: Tree, index: int, replacement: Tree):
    if index == 0:
        return replacement
    index -= 1
    if node[0] == VAR:
        return None
    children = list(node[1:])
    for pos, child in enumerate(children):
        size = tree_size(child)
        if index < size:
            swapped = _replace_preorder(child, index, replacement)
            if swapped is None:
                return None
            children[pos] = swapped
            return (node[0],) + tuple(children)
        index -= size
    return None


def node_depths(node: Tree) -> list[int]:
    """Depth of every node in preorder, matching :func:`subtree_at` indexing."""
    out: list[int] = []

    def walk(t: Tree, d: int) -> None:
        out.append(d)
        if t[0] != VAR:
            for child in t[1:]:
                walk(child, d + 1)

    walk(node, 0)
    return out


# ---------------------------------------------------------------------------
# tree text form


def tree_to_text(node: Tree) -> str:
    """Serialize to prefix text, e.g. ``IF(x1, AND2(x2, x3), NOT(x4))``."""
    if node[0] == VAR:
        return f"x{node[1]}"
    return f"{node[0]}({', '.join(tree_to_text(child) for child in node[1:])})"


def tree_from_text(text: str) -> Tree:
    """Parse the output of :func:`tree_to_text`."""
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse() -> Tree:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            pos += 1
        token = text[start:pos]
        if not token:
            raise ValueError(f"parse error at position {start} in {text!r}")
        skip_ws()
        if pos < len(text) and text[pos] == "(":
            if token not in OPERATOR_ARITY:
                raise ValueError(f"unknown operator {token!r}")
            pos += 1
            children = [parse()]
            skip_ws()
            while pos < len(text) and text[pos] == ",":
                pos += 1
                children.append(parse())
                skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"missing ')' in {text!r}")
            pos += 1
            if len(children) != OPERATOR_ARITY[token]:
                raise ValueError(
                    f"{token} expects {OPERATOR_ARITY[token]} children, "
                    f"got {len(children)}"
                )
            return (token,) + tuple(children)
        if token[0] != "x" or not token[1:].isdigit():
            raise ValueError(f"bad leaf token {token!r}")
        return (VAR, int(token[1:]))

    tree = parse()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input after tree: {text[pos:]!r}")
    return tree


# ---------------------------------------------------------------------------
# packed evaluation: every input assignment is one bit of a Python int


@lru_cache(maxsize=None)
def _variable_masks(n: int) -> tuple[int, ...]:
    # mask for x_v has bit i set when row i assigns x_v = 1; x_1 is the most
    # significant index bit
    index = np.arange(1 << n, dtype=np.uint32)
    masks = []
    for v in range(1, n + 1):
        column = ((index >> (n - v)) & 1).astype(np.uint8)
        masks.append(_pack_bits(column))
    return tuple(masks)


def _pack_bits(bits: np.ndarray) -> int:
    packed = np.packbits(bits, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _unpack_bits(value: int, length: int) -> np.ndarray:
    nbytes = max(1, (length + 7) // 8)
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, count=length, bitorder="little")


def _eval_packed(node: Tree, masks: tuple[int, ...], full: int) -> int:
    tag = node[0]
    if tag == VAR:
        return masks[node[1] - 1]
    if tag == "NOT":
        return full ^ _eval_packed(node[1], masks, full)
    a = _eval_packed(node[1], masks, full)
    b = _eval_packed(node[2], masks, full)
    if tag == "OR":
        return a | b
    if tag == "XOR":
        return a ^ b
    if tag == "AND":
        return a & b
    if tag == "AND2":
        return a & (full ^ b)
    if tag == "XNOR":
        return full ^ a ^ b
    if tag == "IF":
        c = _eval_packed(node[3], masks, full)
        return (a & b) | ((full ^ a) & c)
    raise ValueError(f"unknown operator {tag!r}")


def tree_truth_bits(node: Tree, n: int) -> np.ndarray:
    """Output column of the tree over all ``2**n`` assignments."""
    _check_dimension(n)
    _validate_tree(node, n)
    size = 1 << n
    full = (1 << size) - 1
    value = _eval_packed(node, _variable_masks(n), full)
    return _unpack_bits(value, size)


def evaluate_tree(tree: GpTree | Tree, n: int | None = None) -> TruthTable:
    """Truth table computed by a tree genotype."""
    if isinstance(tree, GpTree):
        node, dim = tree.root, tree.n
    else:
        if n is None:
            raise ValueError("n is required when passing a bare tree node")
        node, dim = tree, n
    return TruthTable(dim, tree_truth_bits(node, dim))


# ---------------------------------------------------------------------------
# decoding


def decode_bitstring(
    genotype: BitstringGenotype, n: int, table: OrbitTable | None = None
) -> TruthTable:
    """Bit vector -> truth table, expanding orbit bits in rotation mode."""
    _check_dimension(n)
    if genotype.mode == ROTATION:
        table = table if table is not None else compute_orbits(n)
        return expand(table, genotype.bits)
    if len(genotype) != 1 << n:
        raise ValueError(f"need {1 << n} bits for n={n}, got {len(genotype)}")
    return TruthTable(n, genotype.bits)


def float_bits(values: np.ndarray, decode: int) -> np.ndarray:
    """Quantise floats in [0, 1] to ``decode`` bits each, most significant first.

    Each entry maps to cell ``floor(value * 2**decode)`` with the top cell
    closed, so 1.0 yields all-ones rather than overflowing.
    """
    levels = 1 << decode
    cells = np.floor(values * levels).astype(np.int64)
    np.minimum(cells, levels - 1, out=cells)
    shifts = np.arange(decode - 1, -1, -1, dtype=np.int64)
    bits = (cells[:, None] >> shifts[None, :]) & 1
    return bits.reshape(-1).astype(np.uint8)


def decode_float(genotype: FloatGenotype) -> np.ndarray:
    """Float genotype -> concatenated bit vector (see :func:`float_bits`)."""
    return float_bits(genotype.values, genotype.decode)


def decode_float_genotype(
    genotype: FloatGenotype, n: int, table: OrbitTable | None = None
) -> TruthTable:
    """Float vector -> truth table; the bit count must match the target exactly."""
    _check_dimension(n)
    if genotype.mode == ROTATION:
        table = table if table is not None else compute_orbits(n)
        target = table.num_orbits
    else:
        target = 1 << n
    total = genotype.dimension * genotype.decode
    if total != target:
        raise ValueError(
            f"dimension {genotype.dimension} x decode {genotype.decode} = {total} "
            f"bits, but {genotype.mode} mode at n={n} needs exactly {target}"
        )
    bits = decode_float(genotype)
    if genotype.mode == ROTATION:
        return expand(table, bits)
    return TruthTable(n, bits)


def float_dimension(n: int, decode: int, mode: str = GENERAL) -> int:
    """Vector length for a float genotype, or raise if it does not divide."""
    _check_dimension(n)
    target = compute_orbits(n).num_orbits if mode == ROTATION else 1 << n
    if decode < 1 or target % decode != 0:
        raise ValueError(
            f"decode={decode} does not divide the {mode} target length {target} at n={n}"
        )
    return target // decode


# ---------------------------------------------------------------------------
# random genotypes


def random_tree(
    n: int,
    rng: np.random.Generator,
    max_depth: int = 7,
    method: str = "grow",
    max_nodes: int = 500,
) -> Tree:
    """Random tree by the grow or full method, within depth and size caps."""
    if method not in ("grow", "full"):
        raise ValueError(f"unknown tree init method {method!r}")
    depth = max_depth
    for _ in range(64):
        candidate = _random_node(n, rng, depth, method)
        if tree_size(candidate) <= max_nodes:
            return candidate
        depth = max(1, depth - 1)
    return (VAR, int(rng.integers(1, n + 1)))


def _random_node(n: int, rng: np.random.Generator, budget: int, method: str) -> Tree:
    leaf_choices = n
    total = leaf_choices + len(OPERATOR_NAMES)
    if budget <= 0:
        pick = int(rng.integers(leaf_choices))
    elif method == "full":
        pick = leaf_choices + int(rng.integers(len(OPERATOR_NAMES)))
    else:
        pick = int(rng.integers(total))
    if pick < leaf_choices:
        return (VAR, pick + 1)
    op = OPERATOR_NAMES[pick - leaf_choices]
    children = tuple(
        _random_node(n, rng, budget - 1, method) for _ in range(OPERATOR_ARITY[op])
    )
    return (op,) + children


def random_genotype(
    kind: str,
    n: int,
    rng: np.random.Generator,
    mode: str = GENERAL,
    decode: int = 3,
    max_depth: int = 7,
    max_nodes: int = 500,
):
    """Uniform random genotype of the requested encoding."""
    _check_dimension(n)
    if kind == "bitstring":
        length = compute_orbits(n).num_orbits if mode == ROTATION else 1 << n
        return BitstringGenotype(rng.integers(0, 2, length, dtype=np.uint8), mode)
    if kind == "float":
        dim = float_dimension(n, decode, mode)
        return FloatGenotype(rng.random(dim), decode, mode)
    if kind == "tree":
        # ramped half and half: depth ramps over 2..max_depth, half grow half full
        depth = int(rng.integers(2, max(3, max_depth + 1)))
        method = "grow" if rng.integers(2) else "full"
        return GpTree(random_tree(n, rng, depth, method, max_nodes), n)
    raise ValueError(f"unknown encoding kind {kind!r}")

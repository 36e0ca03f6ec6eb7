"""Variation operators for the three genotype encodings.

All operators take and return raw genotypes (uint8 arrays, float64 arrays,
tuple trees) and draw every random decision from the generator they are
handed, so runs replay exactly from a seed.
"""

from __future__ import annotations

import numpy as np

from .encodings import (
    OPERATOR_ARITY,
    VAR,
    Tree,
    _random_node,
    node_depths,
    replace_at,
    subtree_at,
    tree_depth,
    tree_size,
)

# ---------------------------------------------------------------------------
# bitstring


def bit_mutation(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Flip one uniformly chosen bit."""
    child = bits.copy()
    child[int(rng.integers(child.shape[0]))] ^= 1
    return child


def shuffle_mutation(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Shuffle the bits inside a random window [start, end]."""
    child = bits.copy()
    a = int(rng.integers(child.shape[0]))
    b = int(rng.integers(child.shape[0]))
    start, end = min(a, b), max(a, b)
    child[start : end + 1] = rng.permutation(child[start : end + 1])
    return child


def mutate_bitstring(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Apply bit-flip or window-shuffle mutation, chosen uniformly."""
    if rng.integers(2):
        return shuffle_mutation(bits, rng)
    return bit_mutation(bits, rng)


def one_point_crossover(
    a: np.ndarray, b: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """First part of ``a`` up to a random breakpoint, rest of ``b``."""
    if a.shape[0] < 2:
        return a.copy()
    cut = int(rng.integers(1, a.shape[0]))
    return np.concatenate([a[:cut], b[cut:]])


def uniform_crossover(
    a: np.ndarray, b: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Each position independently from either parent."""
    take_a = rng.integers(0, 2, a.shape[0]).astype(bool)
    return np.where(take_a, a, b)


def crossover_bitstring(
    a: np.ndarray, b: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """One-point or uniform crossover, chosen uniformly."""
    if rng.integers(2):
        return uniform_crossover(a, b, rng)
    return one_point_crossover(a, b, rng)


# ---------------------------------------------------------------------------
# float


def mutate_float(values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Resample one uniformly chosen coordinate in [0, 1]."""
    child = values.copy()
    child[int(rng.integers(child.shape[0]))] = rng.random()
    return child


def crossover_float(
    a: np.ndarray, b: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Arithmetic mean or per-coordinate uniform mix, chosen uniformly."""
    if rng.integers(2):
        take_a = rng.integers(0, 2, a.shape[0]).astype(bool)
        return np.where(take_a, a, b)
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# trees

_TREE_RETRIES = 5


def _paths(node: Tree, prefix: tuple = ()) -> list[tuple]:
    out = [prefix]
    if node[0] != VAR:
        for i, child in enumerate(node[1:]):
            out.extend(_paths(child, prefix + (i,)))
    return out


def _subtree_by_path(node: Tree, path: tuple) -> Tree:
    for i in path:
        node = node[i + 1]
    return node


def _replace_by_path(node: Tree, path: tuple, replacement: Tree) -> Tree:
    if not path:
        return replacement
    children = list(node[1:])
    children[path[0]] = _replace_by_path(children[path[0]], path[1:], replacement)
    return (node[0],) + tuple(children)


def _within_limits(node: Tree, max_depth: int, max_nodes: int) -> bool:
    return tree_depth(node) <= max_depth and tree_size(node) <= max_nodes


def subtree_mutation(
    tree: Tree, n: int, rng: np.random.Generator, max_depth: int, max_nodes: int
) -> Tree:
    """Replace a random node with a fresh grow-tree fitted to the depth cap."""
    for _ in range(_TREE_RETRIES):
        depths = node_depths(tree)
        index = int(rng.integers(len(depths)))
        budget = max_depth - depths[index]
        child = replace_at(tree, index, _random_node(n, rng, budget, "grow"))
        if _within_limits(child, max_depth, max_nodes):
            return child
    return tree


def subtree_crossover(a: Tree, b: Tree, rng: np.random.Generator) -> Tree:
    """Swap a random subtree of ``a`` for a random subtree of ``b``."""
    index_a = int(rng.integers(tree_size(a)))
    index_b = int(rng.integers(tree_size(b)))
    return replace_at(a, index_a, subtree_at(b, index_b))


def uniform_tree_crossover(a: Tree, b: Tree, rng: np.random.Generator) -> Tree:
    """Mix the parents node by node over their common shape.

    Where both parents carry operators of the same arity the child takes one
    of the two operators and recurses into the paired children; anywhere the
    shapes diverge it takes the whole subtree from one parent.
    """
    a_inner = a[0] != VAR
    b_inner = b[0] != VAR
    if a_inner and b_inner and len(a) == len(b):
        tag = a[0] if rng.integers(2) else b[0]
        children = tuple(
            uniform_tree_crossover(ca, cb, rng) for ca, cb in zip(a[1:], b[1:])
        )
        return (tag,) + children
    return a if rng.integers(2) else b


def size_fair_crossover(a: Tree, b: Tree, rng: np.random.Generator) -> Tree:
    """Subtree swap where the donor is at most twice-plus-one the removed size."""
    index_a = int(rng.integers(tree_size(a)))
    removed = tree_size(subtree_at(a, index_a))
    donors = [
        path for path in _paths(b) if tree_size(_subtree_by_path(b, path)) <= 2 * removed + 1
    ]
    donor = donors[int(rng.integers(len(donors)))]
    return replace_at(a, index_a, _subtree_by_path(b, donor))


def _common_region(a: Tree, b: Tree, prefix: tuple = ()) -> list[tuple]:
    # both nodes exist here; descend only while arities agree
    out = [prefix]
    if a[0] != VAR and b[0] != VAR and len(a) == len(b):
        for i, (ca, cb) in enumerate(zip(a[1:], b[1:])):
            out.extend(_common_region(ca, cb, prefix + (i,)))
    return out


def one_point_tree_crossover(a: Tree, b: Tree, rng: np.random.Generator) -> Tree:
    """Swap at one point of the common region of the two parents."""
    region = _common_region(a, b)
    point = region[int(rng.integers(len(region)))]
    return _replace_by_path(a, point, _subtree_by_path(b, point))


def context_preserving_crossover(a: Tree, b: Tree, rng: np.random.Generator) -> Tree:
    """Swap subtrees that sit at identical coordinates in both parents."""
    shared = sorted(set(_paths(a)) & set(_paths(b)))
    point = shared[int(rng.integers(len(shared)))]
    return _replace_by_path(a, point, _subtree_by_path(b, point))


_TREE_CROSSOVERS = (
    subtree_crossover,
    uniform_tree_crossover,
    size_fair_crossover,
    one_point_tree_crossover,
    context_preserving_crossover,
)


def mutate_tree(
    tree: Tree, n: int, rng: np.random.Generator, max_depth: int = 7, max_nodes: int = 500
) -> Tree:
    return subtree_mutation(tree, n, rng, max_depth, max_nodes)


def crossover_tree(
    a: Tree,
    b: Tree,
    rng: np.random.Generator,
    max_depth: int = 7,
    max_nodes: int = 500,
) -> Tree:
    """One of five tree crossovers, chosen uniformly per call.

    If the offspring breaks the depth or size cap the draw is retried a few
    times; after that the first parent is returned unchanged (trees are
    immutable tuples, so the parent itself is a safe copy).
    """
    for _ in range(_TREE_RETRIES):
        op = _TREE_CROSSOVERS[int(rng.integers(len(_TREE_CROSSOVERS)))]
        child = op(a, b, rng)
        if _within_limits(child, max_depth, max_nodes):
            return child
    return a


# ---------------------------------------------------------------------------
# dispatch


def make_operators(encoding: str, n: int, max_depth: int = 7, max_nodes: int = 500):
    """Bind ``(mutate, crossover)`` callables for one encoding."""
    if encoding == "bitstring":
        return mutate_bitstring, crossover_bitstring
    if encoding == "float":
        return mutate_float, crossover_float
    if encoding == "tree":

        def mutate(tree, rng):
            return mutate_tree(tree, n, rng, max_depth, max_nodes)

        def crossover(a, b, rng):
            return crossover_tree(a, b, rng, max_depth, max_nodes)

        return mutate, crossover
    raise ValueError(f"unknown encoding {encoding!r}")

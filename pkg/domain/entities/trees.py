# domain/entities/trees.py
"""Parenthesized tensor words.

``Leaf`` and ``Node`` build words in one category; ``Apply`` marks a functor
applied to a word of source objects, producing a single object of the target.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple, Union


@dataclass(frozen=True)
class Leaf:
    obj: str


@dataclass(frozen=True)
class Node:
    left: "ParenTree"
    right: "ParenTree"


@dataclass(frozen=True)
class Apply:
    tree: "ParenTree"


ParenTree = Union[Leaf, Node, Apply]


def leaves(tree: ParenTree) -> Tuple[str, ...]:
    """Left-to-right leaf objects (source objects under an ``Apply``)."""
    if isinstance(tree, Leaf):
        return (tree.obj,)
    if isinstance(tree, Apply):
        return leaves(tree.tree)
    return leaves(tree.left) + leaves(tree.right)


def left_comb(items: Sequence[Union[str, ParenTree]]) -> ParenTree:
    """((x1 x2) x3) ... xn"""
    trees = [Leaf(x) if isinstance(x, str) else x for x in items]
    if not trees:
        raise ValueError("Cannot build a comb over no objects")
    result = trees[0]
    for tree in trees[1:]:
        result = Node(result, tree)
    return result


def right_comb(items: Sequence[Union[str, ParenTree]]) -> ParenTree:
    """x1 (x2 (... xn))"""
    trees = [Leaf(x) if isinstance(x, str) else x for x in items]
    if not trees:
        raise ValueError("Cannot build a comb over no objects")
    result = trees[-1]
    for tree in reversed(trees[:-1]):
        result = Node(tree, result)
    return result


def render(tree: ParenTree) -> str:
    if isinstance(tree, Leaf):
        return tree.obj
    if isinstance(tree, Apply):
        return f"F({render(tree.tree)})"
    return f"({render(tree.left)} {render(tree.right)})"

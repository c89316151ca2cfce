"""Brute-force feature oracles, independent of readerkit.features internals.

Text-block statistics are recomputed per text node via upward parent-chain
walks (the library uses a downward DFS with a container stack), so the two
routes share no traversal logic.
"""

from __future__ import annotations

from readerkit.dom import DocumentTree, NodeHandle
from readerkit.features import TEXT_CONTAINERS


def _collect_text_nodes(tree: DocumentTree, node: NodeHandle, out: list[NodeHandle]):
    if tree.kind(node) == "text":
        out.append(node)
    for child in tree.children(node):
        _collect_text_nodes(tree, child, out)


def _ancestor_tags(tree: DocumentTree, node: NodeHandle) -> list[tuple[NodeHandle, str | None]]:
    chain = []
    current = tree.parent(node)
    while current is not None:
        chain.append((current, tree.tag(current)))
        current = tree.parent(current)
    return chain


def text_block_stats(tree: DocumentTree) -> tuple[int, int]:
    """(text_blocks, words) recomputed the slow way."""
    text_nodes: list[NodeHandle] = []
    _collect_text_nodes(tree, tree.root, text_nodes)

    per_owner: dict[int, list[int]] = {}
    owner_depth: dict[int, int] = {}
    for tnode in text_nodes:
        chain = _ancestor_tags(tree, tnode)
        tags = [t for _, t in chain]
        if "script" in tags or "style" in tags or "body" not in tags:
            continue
        body_pos = tags.index("body")
        owner_pos = None
        for i in range(body_pos):
            if tags[i] in TEXT_CONTAINERS:
                owner_pos = i
                break
        if owner_pos is None:
            continue
        owner = tree.position(chain[owner_pos][0])
        # elements from the owner (inclusive) up to body (exclusive)
        owner_depth[owner] = body_pos - owner_pos
        tokens = tree.text(tnode).split()
        slot = per_owner.setdefault(owner, [0, 0])
        slot[0] += sum(len(t) for t in tokens)
        slot[1] += len(tokens)

    blocks = 0
    words = 0
    for owner, (chars, tokens) in per_owner.items():
        if chars > 400 and 1 <= owner_depth[owner] <= 11:
            blocks += 1
            words += tokens
    return blocks, words

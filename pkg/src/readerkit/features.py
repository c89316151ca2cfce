"""Document feature extraction for readability classification.

Computes 21 numeric features from a parsed tree and its URL: fourteen
element-tag counts, text-block statistics, URL path depth, and four
metadata flags. The feature order is part of the trained-model contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from urllib.parse import urlsplit

from readerkit.dom import COMMENT, DOCUMENT, ELEMENT, TEXT, DocumentTree

FEATURE_NAMES: tuple[str, ...] = (
    "p", "ul", "ol", "dl", "div", "pre", "table", "select", "article",
    "section", "blockquote", "a", "images", "scripts", "text_blocks",
    "words", "url_depth", "amphtml", "fb_pages", "og_article", "schema_org",
)

_TAG_TO_FEATURE = {
    "p": "p", "ul": "ul", "ol": "ol", "dl": "dl", "div": "div", "pre": "pre",
    "table": "table", "select": "select", "article": "article",
    "section": "section", "blockquote": "blockquote", "a": "a",
    "img": "images", "script": "scripts",
}

# Block-level containers whose own text (text not inside a nested container)
# can form a qualifying text block.
TEXT_CONTAINERS = frozenset({
    "p", "div", "article", "section", "blockquote", "pre", "li", "td",
})

# A block qualifies when its non-whitespace length exceeds this many chars
# and its container sits 1..11 element levels below body.
TEXT_BLOCK_MIN_CHARS = 400
TEXT_BLOCK_MAX_DEPTH = 11

_LD_ARTICLE_RE = re.compile(
    r"""["']@type["']\s*:\s*\[?\s*["'](?:Article|NewsArticle)["']"""
)


@dataclass(frozen=True, slots=True)
class FeatureVector:
    """The 21 per-page features, in canonical order (flags stored 0/1)."""

    p: int = 0
    ul: int = 0
    ol: int = 0
    dl: int = 0
    div: int = 0
    pre: int = 0
    table: int = 0
    select: int = 0
    article: int = 0
    section: int = 0
    blockquote: int = 0
    a: int = 0
    images: int = 0
    scripts: int = 0
    text_blocks: int = 0
    words: int = 0
    url_depth: int = 0
    amphtml: int = 0
    fb_pages: int = 0
    og_article: int = 0
    schema_org: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v < 0:
                raise ValueError(f"feature {f.name} must be non-negative, got {v}")
        for name in ("amphtml", "fb_pages", "og_article", "schema_org"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"flag {name} must be 0 or 1")


def to_ordered_values(fv: FeatureVector) -> list[int]:
    """The 21 values in canonical FEATURE_NAMES order."""
    return [getattr(fv, name) for name in FEATURE_NAMES]


def from_ordered_values(values) -> FeatureVector:
    values = list(values)
    if len(values) != len(FEATURE_NAMES):
        raise ValueError(f"expected {len(FEATURE_NAMES)} values, got {len(values)}")
    return FeatureVector(**{name: int(v) for name, v in zip(FEATURE_NAMES, values)})


def url_path_depth(url: str) -> int:
    """Number of non-empty path segments; query and fragment ignored."""
    path = urlsplit(url).path
    return sum(1 for seg in path.split("/") if seg)


def extract_features(tree: DocumentTree, url: str) -> FeatureVector:
    """Compute the feature vector for a parsed document and its URL.

    Total over any valid tree; a single linear pass plus one body walk.
    """
    kinds = tree._kinds
    tags = tree._tags
    attrs = tree._attrs
    texts = tree._texts
    children = tree._children

    counts = dict.fromkeys(FEATURE_NAMES[:14], 0)
    amphtml = fb_pages = og_article = schema_org = False
    body_index = -1

    for i in range(1, len(kinds)):
        if kinds[i] != ELEMENT:
            continue
        tag = tags[i]
        feature = _TAG_TO_FEATURE.get(tag)
        if feature is not None:
            counts[feature] += 1
        a = attrs[i]
        if tag == "body" and body_index < 0:
            body_index = i
        elif tag == "link" and a:
            rel = a.get("rel")
            if rel and "amphtml" in rel.lower().split():
                amphtml = True
        elif tag == "html" and a:
            if "amp" in a or "⚡" in a:
                amphtml = True
        elif tag == "meta" and a:
            prop = (a.get("property") or "").strip().lower()
            if prop == "fb:pages":
                fb_pages = True
            elif prop == "og:type":
                if (a.get("content") or "").strip().lower() == "article":
                    og_article = True
        elif tag == "script" and a:
            stype = (a.get("type") or "").lower()
            if "ld+json" in stype:
                body = "".join(
                    texts[c] or "" for c in children[i] if kinds[c] == TEXT
                )
                if _LD_ARTICLE_RE.search(body):
                    schema_org = True
        if not schema_org and a:
            itemtype = a.get("itemtype")
            if itemtype:
                t = itemtype.strip().rstrip("/").lower()
                if t.endswith("/article") or t.endswith("/newsarticle"):
                    schema_org = True

    text_blocks = 0
    words = 0
    if body_index >= 0:
        # (chars, tokens) accumulated per container node index.
        acc: dict[int, list[int]] = {}
        depth_of: dict[int, int] = {}
        # DFS entries: (node, element depth below body, nearest container).
        stack = [(c, 1, -1) for c in reversed(children[body_index])]
        while stack:
            i, depth, container = stack.pop()
            kind = kinds[i]
            if kind == TEXT:
                if container >= 0:
                    toks = (texts[i] or "").split()
                    if toks:
                        slot = acc.setdefault(container, [0, 0])
                        slot[0] += sum(map(len, toks))
                        slot[1] += len(toks)
                continue
            if kind != ELEMENT:
                continue
            tag = tags[i]
            if tag in ("script", "style"):
                continue
            if tag in TEXT_CONTAINERS:
                container = i
                depth_of[i] = depth
            for c in reversed(children[i]):
                stack.append((c, depth + 1, container))
        for container, (chars, tokens) in acc.items():
            if chars > TEXT_BLOCK_MIN_CHARS and 1 <= depth_of[container] <= TEXT_BLOCK_MAX_DEPTH:
                text_blocks += 1
                words += tokens

    return FeatureVector(
        **counts,
        text_blocks=text_blocks,
        words=words,
        url_depth=url_path_depth(url),
        amphtml=int(amphtml),
        fb_pages=int(fb_pages),
        og_article=int(og_article),
        schema_org=int(schema_org),
    )

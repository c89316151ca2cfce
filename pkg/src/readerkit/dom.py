"""Immutable document trees parsed from raw HTML bytes.

Parsing never raises on document content: markup errors are recovered in the
spirit of HTML5 tree construction (scaffold insertion, implied end tags,
stray end tags ignored), and undecodable bytes degrade to replacement
characters. The worst possible input still yields an html/head/body scaffold.

Trees are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import codecs
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from urllib.parse import urlsplit

DOCUMENT = "document"
ELEMENT = "element"
TEXT = "text"
COMMENT = "comment"

VOID_ELEMENTS = frozenset({
    "area", "base", "basefont", "bgsound", "br", "col", "embed", "frame",
    "hr", "img", "input", "keygen", "link", "meta", "param", "source",
    "track", "wbr",
})

# Start tags that implicitly close an open <p> (HTML5 "in body" rules).
_P_CLOSERS = frozenset({
    "address", "article", "aside", "blockquote", "center", "dd", "details",
    "dialog", "dir", "div", "dl", "dt", "fieldset", "figcaption", "figure",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hgroup",
    "hr", "li", "main", "menu", "nav", "ol", "p", "pre", "section", "summary",
    "table", "ul",
})

# tag -> (tags it closes, scope boundary tags the search stops at)
_SIBLING_CLOSERS = {
    "li": (frozenset({"li"}), frozenset({"ul", "ol", "menu", "body"})),
    "dt": (frozenset({"dt", "dd"}), frozenset({"dl", "body"})),
    "dd": (frozenset({"dt", "dd"}), frozenset({"dl", "body"})),
    "td": (frozenset({"td", "th"}), frozenset({"tr", "table", "body"})),
    "th": (frozenset({"td", "th"}), frozenset({"tr", "table", "body"})),
    "tr": (frozenset({"tr"}), frozenset({"table", "thead", "tbody", "tfoot", "body"})),
    "option": (frozenset({"option"}), frozenset({"select", "optgroup", "body"})),
    "optgroup": (frozenset({"optgroup", "option"}), frozenset({"select", "body"})),
}

_HEADINGS = frozenset({"h1", "h2", "h3", "h4", "h5", "h6"})

# Elements whose start tag belongs in <head> until body content begins.
_HEAD_CONTENT = frozenset({
    "title", "meta", "link", "base", "style", "script", "noscript", "template",
})

_META_CHARSET_RE = re.compile(
    rb"""<meta[^>]{0,512}?charset\s*=\s*["']?\s*([a-zA-Z0-9_\-:.]+)""",
    re.IGNORECASE,
)


@dataclass(frozen=True, slots=True)
class NodeHandle:
    """Opaque reference to one node of a specific DocumentTree."""

    kind: str
    tree_id: int
    index: int


class DocumentTree:
    """Parsed HTML document exposed through read-only node queries.

    Node storage is an index-addressed arena; handles stay valid for the
    tree's lifetime and there is no mutation API.
    """

    _next_tree_id = 0

    def __init__(self, base_url: str):
        DocumentTree._next_tree_id += 1
        self._id = DocumentTree._next_tree_id
        self.base_url = base_url
        self.source_byte_count = 0
        self.parse_degraded = False
        # Parallel arrays indexed by node id; node 0 is the document node.
        self._kinds: list[str] = [DOCUMENT]
        self._tags: list[str | None] = [None]
        self._attrs: list[dict[str, str] | None] = [None]
        self._texts: list[str | None] = [None]
        self._parents: list[int] = [-1]
        self._children: list[list[int]] = [[]]
        self._tag_index: dict[str, list[int]] | None = None

    # -- construction (package internal, used only by the builder) --

    def _add_node(self, kind: str, parent: int, tag: str | None = None,
                  attrs: dict[str, str] | None = None, text: str | None = None) -> int:
        index = len(self._kinds)
        self._kinds.append(kind)
        self._tags.append(tag)
        self._attrs.append(attrs)
        self._texts.append(text)
        self._parents.append(parent)
        self._children.append([])
        self._children[parent].append(index)
        return index

    # -- handle plumbing --

    def _check(self, node: NodeHandle) -> int:
        if node.tree_id != self._id:
            raise ValueError("node handle belongs to a different DocumentTree")
        return node.index

    def _handle(self, index: int) -> NodeHandle:
        return NodeHandle(self._kinds[index], self._id, index)

    # -- queries --

    @property
    def root(self) -> NodeHandle:
        return self._handle(0)

    def kind(self, node: NodeHandle) -> str:
        return self._kinds[self._check(node)]

    def tag(self, node: NodeHandle) -> str | None:
        return self._tags[self._check(node)]

    def attrs(self, node: NodeHandle) -> dict[str, str]:
        a = self._attrs[self._check(node)]
        return dict(a) if a else {}

    def attr(self, node: NodeHandle, name: str, default: str | None = None) -> str | None:
        a = self._attrs[self._check(node)]
        if not a:
            return default
        return a.get(name, default)

    def text(self, node: NodeHandle) -> str:
        """Own text of a text or comment node ("" for other kinds)."""
        return self._texts[self._check(node)] or ""

    def parent(self, node: NodeHandle) -> NodeHandle | None:
        p = self._parents[self._check(node)]
        return self._handle(p) if p >= 0 else None

    def children(self, node: NodeHandle) -> list[NodeHandle]:
        return [self._handle(c) for c in self._children[self._check(node)]]

    def position(self, node: NodeHandle) -> int:
        """Document-order rank of the node (arena index)."""
        return self._check(node)

    def query_all(self, tag: str) -> list[NodeHandle]:
        """All elements with the given lowercase tag name, document order."""
        if self._tag_index is None:
            index: dict[str, list[int]] = {}
            for i, k in enumerate(self._kinds):
                if k == ELEMENT:
                    index.setdefault(self._tags[i], []).append(i)  # type: ignore[arg-type]
            self._tag_index = index
        return [self._handle(i) for i in self._tag_index.get(tag, [])]

    def text_content(self, node: NodeHandle) -> str:
        """Concatenated descendant text, skipping script and style subtrees."""
        start = self._check(node)
        parts: list[str] = []
        stack = [start]
        while stack:
            i = stack.pop()
            kind = self._kinds[i]
            if kind == TEXT:
                parts.append(self._texts[i] or "")
            elif kind in (ELEMENT, DOCUMENT):
                if kind == ELEMENT and self._tags[i] in ("script", "style"):
                    continue
                stack.extend(reversed(self._children[i]))
        return "".join(parts)

    def iter_subtree(self, node: NodeHandle):
        """Yield the node and all descendants in document order."""
        start = self._check(node)
        stack = [start]
        while stack:
            i = stack.pop()
            yield self._handle(i)
            stack.extend(reversed(self._children[i]))


class _TreeBuilder(HTMLParser):
    """Builds the arena from the tokenizer stream with HTML5-style recovery."""

    def __init__(self, tree: DocumentTree):
        super().__init__(convert_charrefs=True)
        self.tree = tree
        self.html = tree._add_node(ELEMENT, 0, "html", {})
        self.head = tree._add_node(ELEMENT, self.html, "head", {})
        self.body = tree._add_node(ELEMENT, self.html, "body", {})
        self.open: list[int] = [self.html]
        self.body_started = False

    # -- helpers --

    def _merge_attrs(self, index: int, attrs) -> None:
        existing = self.tree._attrs[index]
        assert existing is not None
        for name, value in attrs:
            existing.setdefault(name, value if value is not None else "")

    def _start_body(self) -> None:
        self.body_started = True
        self.open = [self.html, self.body]

    def _append_text(self, parent: int, data: str) -> None:
        kids = self.tree._children[parent]
        if kids and self.tree._kinds[kids[-1]] == TEXT:
            self.tree._texts[kids[-1]] = (self.tree._texts[kids[-1]] or "") + data
        else:
            self.tree._add_node(TEXT, parent, text=data)

    def _close_through(self, tags: frozenset[str], boundary: frozenset[str]) -> None:
        for i in range(len(self.open) - 1, 0, -1):
            t = self.tree._tags[self.open[i]]
            if t in tags:
                del self.open[i:]
                return
            if t in boundary:
                return

    # -- tokenizer events --

    def handle_starttag(self, tag, attrs):
        tree = self.tree
        if tag == "html":
            self._merge_attrs(self.html, attrs)
            return
        if tag == "head":
            self._merge_attrs(self.head, attrs)
            return
        if tag == "body":
            self._merge_attrs(self.body, attrs)
            if not self.body_started:
                self._start_body()
            return
        if not self.body_started:
            if tag in _HEAD_CONTENT:
                node = tree._add_node(ELEMENT, self.head, tag,
                                      _attr_dict(attrs))
                if tag not in VOID_ELEMENTS:
                    self.open.append(node)
                return
            self._start_body()
        if tag in _SIBLING_CLOSERS:
            closes, boundary = _SIBLING_CLOSERS[tag]
            self._close_through(closes, boundary)
        if tag in _P_CLOSERS:
            self._close_through(frozenset({"p"}), frozenset({"body"}))
        if tag in _HEADINGS and self.tree._tags[self.open[-1]] in _HEADINGS:
            self.open.pop()
        parent = self.open[-1] if len(self.open) > 1 else self.body
        node = tree._add_node(ELEMENT, parent, tag, _attr_dict(attrs))
        if tag not in VOID_ELEMENTS:
            self.open.append(node)

    def handle_startendtag(self, tag, attrs):
        # <tag/>: void elements insert normally; others insert and close,
        # matching the tokenizer's decision not to enter CDATA mode.
        self.handle_starttag(tag, attrs)
        if tag not in VOID_ELEMENTS:
            self.handle_endtag(tag)

    def handle_endtag(self, tag):
        if tag in ("html", "body"):
            return
        if tag == "head":
            if not self.body_started:
                self.open = [self.html]
            return
        for i in range(len(self.open) - 1, 0, -1):
            node_tag = self.tree._tags[self.open[i]]
            if node_tag == tag:
                del self.open[i:]
                return
            if node_tag == "body":
                return
        # Stray end tag: ignored.

    def handle_data(self, data):
        if not data:
            return
        if not self.body_started:
            current = self.open[-1]
            if current != self.html:
                self._append_text(current, data)
                return
            if not data.strip():
                return
            self._start_body()
        self._append_text(self.open[-1], data)

    def handle_comment(self, data):
        parent = self.open[-1]
        if not self.body_started and parent == self.html:
            parent = self.head
        self.tree._add_node(COMMENT, parent, text=data)


def _attr_dict(attrs) -> dict[str, str]:
    out: dict[str, str] = {}
    for name, value in attrs:
        out.setdefault(name, value if value is not None else "")
    return out


def decode_html_bytes(data: bytes) -> str:
    """Resolve character encoding: BOM, then meta charset in the first 1024
    bytes, then UTF-8 with replacement. Never raises."""
    if data.startswith(codecs.BOM_UTF8):
        return data[3:].decode("utf-8", "replace")
    if data.startswith(codecs.BOM_UTF16_LE):
        return data[2:].decode("utf-16-le", "replace")
    if data.startswith(codecs.BOM_UTF16_BE):
        return data[2:].decode("utf-16-be", "replace")
    m = _META_CHARSET_RE.search(data[:1024])
    if m:
        name = m.group(1).decode("ascii", "ignore").strip()
        try:
            codec = codecs.lookup(name).name
        except (LookupError, ValueError):
            codec = None
        # A UTF-16 declaration inside an ASCII-compatible prefix is wrong by
        # construction; the HTML standard's fix is to read it as UTF-8.
        if codec and not codec.startswith("utf-16"):
            return data.decode(codec, "replace")
    return data.decode("utf-8", "replace")


def parse_html(data: bytes | str, base_url: str) -> DocumentTree:
    """Parse raw HTML into an immutable DocumentTree.

    base_url must be an absolute http(s) URL (usage error otherwise); the
    document bytes themselves can be anything, including empty or binary
    garbage, and still produce a scaffolded tree.
    """
    parts = urlsplit(base_url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise ValueError(f"base_url must be an absolute http(s) URL, got {base_url!r}")
    if isinstance(data, bytes):
        text = decode_html_bytes(data)
        byte_count = len(data)
    else:
        text = data
        byte_count = len(data.encode("utf-8"))
    tree = DocumentTree(base_url)
    tree.source_byte_count = byte_count
    builder = _TreeBuilder(tree)
    try:
        builder.feed(text)
        builder.close()
    except Exception:
        # Tokenizer blow-up on hostile input: keep whatever was built.
        tree.parse_degraded = True
    return tree

"""Tiny DOM over html.parser, enough for JSON-LD scripts, microdata and
simple field selectors. Tolerant of the usual tag-soup found on news pages.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

# Elements that never take a closing tag.
_VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

_SELECTOR_RE = re.compile(
    r"^(?P<tag>[a-zA-Z][a-zA-Z0-9-]*)"
    r"(?:\.(?P<cls>[\w-]+)|#(?P<id>[\w-]+)|\[(?P<attr>[\w:-]+)=(?P<val>[^\]]*)\])?$"
)


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str], parent: "Element | None"):
        self.tag = tag
        self.attrs = attrs
        self.children: list[Element | str] = []
        self.parent = parent

    def attr(self, name: str) -> str | None:
        return self.attrs.get(name)

    def text(self) -> str:
        parts: list[str] = []
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                parts.append(child.text())
        return "".join(parts)

    def iter(self):
        """All descendant elements in document order, self excluded."""
        for child in self.children:
            if isinstance(child, Element):
                yield child
                yield from child.iter()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<Element {self.tag} {self.attrs}>"


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element("#root", {}, None)
        self._stack = [self.root]

    def handle_starttag(self, tag, attrs):
        element = Element(tag, {k: (v or "") for k, v in attrs}, self._stack[-1])
        self._stack[-1].children.append(element)
        if tag not in _VOID_TAGS:
            self._stack.append(element)

    def handle_startendtag(self, tag, attrs):
        element = Element(tag, {k: (v or "") for k, v in attrs}, self._stack[-1])
        self._stack[-1].children.append(element)

    def handle_endtag(self, tag):
        # Pop to the nearest matching open tag; ignore strays.
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return

    def handle_data(self, data):
        if data:
            self._stack[-1].children.append(data)


def parse_html(markup: str) -> Element:
    builder = _TreeBuilder()
    builder.feed(markup)
    builder.close()
    return builder.root


def select(root: Element, selector: str) -> list[Element]:
    """Match elements by ``tag``, ``tag.class``, ``tag#id`` or ``tag[attr=value]``."""
    match = _SELECTOR_RE.match(selector.strip())
    if not match:
        raise ValueError(f"unsupported selector: {selector!r}")
    tag = match.group("tag").lower()
    cls, elem_id = match.group("cls"), match.group("id")
    attr, val = match.group("attr"), match.group("val")

    found = []
    for element in root.iter():
        if element.tag != tag:
            continue
        if cls is not None and cls not in (element.attr("class") or "").split():
            continue
        if elem_id is not None and element.attr("id") != elem_id:
            continue
        if attr is not None and element.attr(attr) != val:
            continue
        found.append(element)
    return found


def page_title(root: Element) -> str:
    titles = select(root, "title")
    return titles[0].text().strip() if titles else ""

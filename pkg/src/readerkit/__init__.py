"""readerkit: pre-render reader mode for HTML documents.

Pipeline: parse the initial HTML, decide from 21 document features whether a
readable subset exists (random forest), extract that subset into a minimal
reader document, and account for the network/privacy savings with a filter
list matcher.
"""

from readerkit.dom import DocumentTree, NodeHandle, parse_html

__version__ = "0.1.0"

__all__ = ["DocumentTree", "NodeHandle", "parse_html", "__version__"]

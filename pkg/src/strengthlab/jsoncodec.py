"""Canonical JSON bytes for documents.

Every export, API response, and session file goes through one serializer so
that equal documents always produce identical bytes: keys sorted, compact
separators, ASCII escapes, floats printed with 17 significant digits, exact
rationals as ``"n/d"`` strings (integers when the denominator is 1), and the
infinities as the strings ``"inf"`` and ``"-inf"`` (``float()`` parses them
back). NaN has no place in a document and is rejected.
"""

from __future__ import annotations

import json
import math
import numbers
from fractions import Fraction

from .errors import DomainError


def _format_float(x: float) -> str:
    if math.isnan(x):
        raise DomainError("NaN cannot appear in a document")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _write(doc, out: list[str]) -> None:
    if doc is None:
        out.append("null")
    elif isinstance(doc, bool):
        out.append("true" if doc else "false")
    elif isinstance(doc, int):
        out.append(str(doc))
    elif isinstance(doc, Fraction):
        if doc.denominator == 1:
            out.append(str(doc.numerator))
        else:
            out.append(f'"{doc.numerator}/{doc.denominator}"')
    elif isinstance(doc, float):
        out.append(_format_float(doc))
    elif isinstance(doc, str):
        out.append(json.dumps(doc, ensure_ascii=True))
    elif isinstance(doc, dict):
        out.append("{")
        first = True
        for key in sorted(doc):
            if not isinstance(key, str):
                raise DomainError(f"document keys must be strings, got {key!r}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _write(doc[key], out)
        out.append("}")
    elif isinstance(doc, (list, tuple)):
        out.append("[")
        for i, item in enumerate(doc):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    elif isinstance(doc, numbers.Integral):
        out.append(str(int(doc)))
    elif isinstance(doc, numbers.Real):
        out.append(_format_float(float(doc)))
    else:
        raise DomainError(f"cannot serialize {type(doc).__name__} in a document")


def canonical_dumps(doc) -> str:
    """The one true text form of a document."""
    out: list[str] = []
    _write(doc, out)
    return "".join(out)


def canonical_bytes(doc) -> bytes:
    return canonical_dumps(doc).encode("ascii")


def canonical_loads(text: str | bytes):
    """Parse document text; exact-rational and infinity strings stay strings.

    The ``from_doc`` constructors are the ones that know which strings are
    rationals or infinities, so parsing is plain JSON.
    """
    return json.loads(text)

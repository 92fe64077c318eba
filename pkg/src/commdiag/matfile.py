"""Plain-text matrix files.

Format::

    # comment lines start with '#'
    rows cols
    <rows lines of cols whitespace-separated complex literals>

A literal is ``a``, ``bi`` or ``a+bi`` / ``a-bi`` with optional signs and
decimal or exponent notation (``1``, ``-2.5e-3``, ``3i``, ``1+1i``,
``-i``).  Blank and comment lines are skipped anywhere.  ``\\r\\n`` is
accepted on input; output always uses ``\\n``.
"""

import hashlib
import re
from importlib import resources
from pathlib import Path

import numpy as np

from .exceptions import InputError, ParseError
from .validation import as_matrix

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?:(?P<isign>[+-])(?P<im>{_NUM})?i)?"
    rf"|(?P<pure>[+-]?)(?P<pim>{_NUM})?i)$"
)


def parse_complex(token):
    m = _COMPLEX.match(token)
    if m is None:
        raise ValueError(f"not a complex literal: {token!r}")
    if m.group("re") is not None:
        re_part = float(m.group("re"))
        if m.group("isign") is None:
            return complex(re_part, 0.0)
        im = float(m.group("im")) if m.group("im") else 1.0
        return complex(re_part, -im if m.group("isign") == "-" else im)
    im = float(m.group("pim")) if m.group("pim") else 1.0
    return complex(0.0, -im if m.group("pure") == "-" else im)


def format_complex(z, digits=None):
    """Render one entry; ``digits=None`` gives the shortest exact round trip."""
    fmt = repr if digits is None else (lambda x: f"{x:.{digits}g}")
    re_part, im = float(z.real), float(z.imag)
    if im == 0.0 and not np.signbit(im):
        return fmt(re_part)
    sign = "-" if np.signbit(im) else "+"
    return f"{fmt(re_part)}{sign}{fmt(abs(im))}i"


def parse_matrix(text):
    """Parse matrix text into a complex128 array."""
    rows = cols = None
    data = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if rows is None:
            if len(tokens) != 2:
                raise ParseError("header must be 'rows cols'", line=lineno)
            try:
                rows, cols = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(f"header must hold two integers, got {line!r}", line=lineno) from None
            if rows < 1 or cols < 1:
                raise ParseError(f"dimensions must be positive, got {rows}x{cols}", line=lineno)
            continue
        row = len(data) + 1
        if row > rows:
            raise ParseError(f"more than {rows} rows", line=lineno, row=row)
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", line=lineno, row=row)
        values = []
        for col, tok in enumerate(tokens, start=1):
            try:
                z = parse_complex(tok)
            except ValueError:
                raise ParseError(f"malformed entry {tok!r}", line=lineno, row=row, column=col) from None
            if not np.isfinite(z):
                raise ParseError(f"non-finite entry {tok!r}", line=lineno, row=row, column=col)
            values.append(z)
        data.append(values)
    if rows is None:
        raise ParseError("empty matrix text")
    if len(data) != rows:
        raise ParseError(f"expected {rows} rows, found {len(data)}")
    return np.array(data, dtype=np.complex128)


def render_matrix(m, comments=(), digits=None):
    m = as_matrix(m)
    lines = [f"# {c}" for c in comments]
    lines.append(f"{m.shape[0]} {m.shape[1]}")
    lines.extend(" ".join(format_complex(z, digits) for z in row) for row in m)
    return "\n".join(lines) + "\n"


def fixture_names():
    root = resources.files("commdiag") / "fixtures"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def fixture_text(name):
    """Text of a bundled fixture such as ``ex2_a``."""
    name = name[:-4] if name.endswith(".txt") else name
    path = resources.files("commdiag") / "fixtures" / f"{name}.txt"
    if not path.is_file():
        raise InputError(f"no bundled fixture named {name!r}")
    return path.read_text(encoding="utf-8")


def load_fixture(name):
    return parse_matrix(fixture_text(name))


def read_source(spec):
    """Bytes of a matrix file, falling back to bundled fixtures.

    ``spec`` is a path; when no such file exists, ``fixtures/<name>`` or
    ``<name>`` selects the bundled fixture of that name.
    """
    path = Path(spec)
    if path.is_file():
        return path.read_bytes()
    name = path.name
    try:
        return fixture_text(name).encode("utf-8")
    except InputError:
        raise InputError(f"{spec}: no such file or bundled fixture") from None


def read_matrix(spec):
    """Return ``(matrix, sha256 hex digest of the file bytes)``."""
    raw = read_source(spec)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{spec}: not UTF-8 ({exc})") from None
    try:
        return parse_matrix(text), hashlib.sha256(raw).hexdigest()
    except ParseError as exc:
        exc.args = (f"{spec}: {exc}",)
        raise


def write_matrix(path, m, comments=()):
    Path(path).write_text(render_matrix(m, comments), encoding="utf-8", newline="\n")

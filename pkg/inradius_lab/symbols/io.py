"""Text format for symbols.

::

    dim=2 order=2
    alpha = 2 0 ; 1 0
    alpha = 0 2 ; 1 0
"""

import os
from typing import Dict, List, Tuple, Union

from inradius_lab.errors import ParseError
from inradius_lab.symbols.base import Symbol


def parse_header(line: str, keys: Tuple[str, ...], lineno: int = 1) -> Dict[str, List[str]]:
    """Parse ``key=value [more values] key=value`` headers.

    Returns each key's whitespace-separated values.
    """
    values: Dict[str, List[str]] = {}
    current = None
    for token in line.split():
        if "=" in token:
            key, _, rest = token.partition("=")
            if key not in keys:
                raise ParseError(f"unexpected header key '{key}'", lineno)
            current = key
            values[key] = [rest] if rest else []
        elif current is not None:
            values[current].append(token)
        else:
            raise ParseError(f"malformed header '{line.strip()}'", lineno)
    missing = [k for k in keys if k not in values]
    if missing:
        raise ParseError(f"header is missing {', '.join(missing)}", lineno)
    return values


def content_lines(text: str) -> List[Tuple[int, str]]:
    """Numbered non-blank lines with ``#`` comments stripped."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def parse_symbol(text: str) -> Symbol:
    """Parse the symbol text format."""
    lines = content_lines(text)
    if not lines:
        raise ParseError("empty symbol file")
    lineno, header = lines[0]
    fields = parse_header(header, ("dim", "order"), lineno)
    try:
        dim = int(fields["dim"][0])
        order = int(fields["order"][0])
    except (IndexError, ValueError):
        raise ParseError(f"bad header '{header}'", lineno)

    coeffs: Dict[Tuple[int, ...], complex] = {}
    for lineno, line in lines[1:]:
        key, eq, rest = line.partition("=")
        if key.strip() != "alpha" or not eq:
            raise ParseError(f"expected 'alpha = ...', got '{line}'", lineno)
        index_part, sep, value_part = rest.partition(";")
        if not sep:
            raise ParseError("missing ';' between multi-index and coefficient", lineno)
        try:
            alpha = tuple(int(tok) for tok in index_part.split())
            re_im = [float(tok) for tok in value_part.split()]
        except ValueError:
            raise ParseError(f"non-numeric entry in '{line}'", lineno)
        if len(alpha) != dim:
            raise ParseError(f"multi-index has {len(alpha)} entries, expected {dim}", lineno)
        if len(re_im) != 2:
            raise ParseError("coefficient must be given as 're im'", lineno)
        coeffs[alpha] = coeffs.get(alpha, 0j) + complex(re_im[0], re_im[1])
    return Symbol(dim=dim, order=order, coeffs=coeffs)


def format_symbol(sym: Symbol) -> str:
    """Serialize a symbol, coefficients in graded lexicographic order."""
    lines = [f"dim={sym.dim} order={sym.order}"]
    for alpha, c in sym.terms():
        entries = " ".join(str(e) for e in alpha.entries)
        lines.append(f"alpha = {entries} ; {c.real!r} {c.imag!r}")
    return "\n".join(lines) + "\n"


def read_symbol(path: Union[str, os.PathLike]) -> Symbol:
    with open(path, "r") as f:
        return parse_symbol(f.read())


def write_symbol(sym: Symbol, path: Union[str, os.PathLike]) -> None:
    with open(path, "w") as f:
        f.write(format_symbol(sym))

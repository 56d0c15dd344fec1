"""Text format for eigenfunctions.

::

    dim=2 lambda=19.739 0
    term: 0.25 0 ; xi = -3.14159 0 -3.14159 0

The frequencies are the stored ones (already in the D = i d/dx convention), so a file
round-trips without re-solving. The symbol is supplied separately.
"""

import os
from typing import Union

from inradius_lab.errors import ParseError
from inradius_lab.fields.eigenfield import Eigenfunction, PlaneWaveTerm
from inradius_lab.symbols.base import Symbol
from inradius_lab.symbols.io import content_lines, parse_header


def parse_field(text: str, symbol: Symbol) -> Eigenfunction:
    lines = content_lines(text)
    if not lines:
        raise ParseError("empty field file")
    lineno, header = lines[0]
    fields = parse_header(header, ("dim", "lambda"), lineno)
    try:
        dim = int(fields["dim"][0])
        re_lam, im_lam = (float(v) for v in fields["lambda"])
    except ValueError:
        raise ParseError(f"bad header '{header}'", lineno)
    if dim != symbol.dim:
        raise ParseError(f"field has dim={dim} but the symbol has dim={symbol.dim}", lineno)

    terms = []
    for lineno, line in lines[1:]:
        if not line.startswith("term:"):
            raise ParseError(f"expected 'term: ...', got '{line}'", lineno)
        amp_part, sep, freq_part = line[len("term:"):].partition(";")
        key, eq, values = freq_part.partition("=")
        if not sep or key.strip() != "xi" or not eq:
            raise ParseError("expected 'term: a_re a_im ; xi = ...'", lineno)
        try:
            amp = [float(v) for v in amp_part.split()]
            xi = [float(v) for v in values.split()]
        except ValueError:
            raise ParseError(f"non-numeric entry in '{line}'", lineno)
        if len(amp) != 2 or len(xi) != 2 * dim:
            raise ParseError(f"need 2 amplitude and {2 * dim} frequency numbers", lineno)
        frequency = tuple(complex(xi[2 * j], xi[2 * j + 1]) for j in range(dim))
        terms.append(PlaneWaveTerm(amplitude=complex(amp[0], amp[1]), frequency=frequency))
    return Eigenfunction(symbol=symbol, lam=complex(re_lam, im_lam), terms=terms)


def format_field(ef: Eigenfunction) -> str:
    lam = complex(ef.lam)
    lines = [f"dim={ef.dim} lambda={lam.real!r} {lam.imag!r}"]
    for term in ef.terms:
        a = complex(term.amplitude)
        xi = " ".join(f"{complex(v).real!r} {complex(v).imag!r}" for v in term.frequency)
        lines.append(f"term: {a.real!r} {a.imag!r} ; xi = {xi}")
    return "\n".join(lines) + "\n"


def read_field(path: Union[str, os.PathLike], symbol: Symbol) -> Eigenfunction:
    with open(path, "r") as f:
        return parse_field(f.read(), symbol)


def write_field(ef: Eigenfunction, path: Union[str, os.PathLike]) -> None:
    with open(path, "w") as f:
        f.write(format_field(ef))

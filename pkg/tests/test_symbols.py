"""Tests for symbols: evaluation, homogeneity, ellipticity and the text format."""

import os
import sys
import pytest

import numpy as np

# Add the parent directory to the path to import inradius_lab
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from inradius_lab.errors import (
    ArgumentError, ContractError, DimensionMismatchError, NonEllipticError, ParseError,
)
from inradius_lab.symbols import (
    MultiIndex, Symbol, eval_symbol, homogeneity_residual, estimate_ellipticity,
    sphere_samples, get_symbol, named_symbol, random_elliptic_symbol,
    parse_symbol, format_symbol, read_symbol, write_symbol,
)


def test_laplacian_evaluation():
    """|xi|^2 at a real and a complex point."""
    sym = get_symbol("laplacian", dim=2)
    assert eval_symbol(sym, [3, 4]) == pytest.approx(25)
    assert eval_symbol(sym, [1j, 1]) == pytest.approx(0)


def test_complex_anisotropic_evaluation():
    """xi_1^2 + i xi_2^2 at (1, 1) is 1 + i."""
    sym = get_symbol("complex_anisotropic")
    assert eval_symbol(sym, [1, 1]) == pytest.approx(1 + 1j)


def test_batch_evaluation_matches_single():
    """Vectorised evaluation agrees with one-point evaluation."""
    sym = get_symbol("bilaplacian", dim=2)
    points = np.array([[1.0, 2.0], [0.5, -1.0], [1j, 2.0]])
    batch = sym.evaluate(points)
    for point, value in zip(points, batch):
        assert value == pytest.approx(eval_symbol(sym, point))
    assert batch[0] == pytest.approx(25)


def test_dimension_mismatch():
    """A point of the wrong length is rejected."""
    sym = get_symbol("laplacian", dim=2)
    with pytest.raises(DimensionMismatchError):
        eval_symbol(sym, [1, 2, 3])


def test_multi_index_enumeration():
    """Graded lexicographic order, starting from the zero index."""
    indices = MultiIndex.enumerate(2, 2)
    entries = [m.entries for m in indices]
    assert entries[0] == (0, 0)
    assert len(entries) == 6
    assert [sum(e) for e in entries] == sorted(sum(e) for e in entries)
    assert MultiIndex.unit(3, 1).entries == (0, 1, 0)


def test_symbol_validation():
    """Malformed coefficient tables are rejected."""
    with pytest.raises(ValueError):
        Symbol(dim=2, order=2, coeffs={(1, 0): 1.0})
    with pytest.raises(ValueError):
        Symbol(dim=2, order=2, coeffs={(3, 0): 1.0})
    with pytest.raises(ValueError):
        Symbol(dim=2, order=2, coeffs={(2,): 1.0})


def test_principal_and_lower_parts():
    """perturbed_laplacian splits into |xi|^2 and its lower-order terms."""
    sym = get_symbol("perturbed_laplacian", dim=2)
    assert not sym.homogeneous
    assert sym.principal_part().homogeneous
    assert set(sym.lower_order_part()) == {(1, 0), (0, 0)}


@pytest.mark.parametrize("t", [2.0, -1.5, 1j, 0.3 - 0.7j])
def test_homogeneity(t):
    """P(t v) = t^m P(v) for homogeneous symbols."""
    sym = get_symbol("complex_anisotropic")
    assert homogeneity_residual(sym, [1 + 2j, -0.5], t) < 1e-12


def test_homogeneity_needs_homogeneous_symbol():
    """Lower-order terms make the homogeneity check a contract error."""
    with pytest.raises(ContractError):
        homogeneity_residual(get_symbol("perturbed_laplacian"), [1, 0], 2.0)


def test_ellipticity_of_laplacian():
    """The Laplacian has |P| = 1 on the unit sphere."""
    sym = get_symbol("laplacian", dim=3)
    assert estimate_ellipticity(sym) == pytest.approx(1.0)
    assert sym.ell_const == pytest.approx(1.0)


def test_ellipticity_complex_anisotropic():
    """min |cos^2 + i sin^2| = 1/sqrt(2) at 45 degrees, which the samples hit."""
    sym = get_symbol("complex_anisotropic")
    assert estimate_ellipticity(sym) == pytest.approx(1 / np.sqrt(2), rel=1e-9)


def test_non_elliptic_symbol():
    """xi_1^2 - xi_2^2 vanishes on the diagonal."""
    sym = Symbol(dim=2, order=2, coeffs={(2, 0): 1.0, (0, 2): -1.0})
    with pytest.raises(NonEllipticError) as info:
        estimate_ellipticity(sym)
    witness = np.asarray(info.value.witness)
    assert abs(abs(witness[0]) - abs(witness[1])) < 1e-12


def test_ellipticity_monotone_in_refinement():
    """Refining the sphere samples never raises the estimate."""
    sym = random_elliptic_symbol(np.random.default_rng(3), 2, 3)
    values = [estimate_ellipticity(sym, refinement=k) for k in (1, 2, 3, 4)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_sphere_samples():
    """Samples are unit vectors and nested across levels in d = 2."""
    for dim in (1, 2, 3):
        omegas = sphere_samples(dim, 2)
        assert np.allclose(np.linalg.norm(omegas, axis=1), 1.0)
    coarse = sphere_samples(2, 1)
    fine = sphere_samples(2, 2)
    assert np.allclose(fine[::2], coarse)
    with pytest.raises(ArgumentError):
        sphere_samples(4, 1)


@pytest.mark.parametrize("dim,order", [(1, 1), (1, 3), (2, 1), (2, 2), (2, 4), (3, 2), (3, 4)])
def test_random_symbols_are_elliptic(dim, order):
    """Generated symbols are homogeneous and pass the ellipticity check."""
    sym = random_elliptic_symbol(np.random.default_rng(dim * 10 + order), dim, order)
    assert sym.homogeneous
    assert sym.order == order
    assert estimate_ellipticity(sym) > 1e-6


def test_named_symbol_dimension():
    """Fixed-dimension factories reject a different dimension."""
    assert named_symbol("laplacian", 3).dim == 3
    assert named_symbol("cauchy_riemann", 2).order == 1
    with pytest.raises(DimensionMismatchError):
        named_symbol("cauchy_riemann", 3)
    with pytest.raises(ArgumentError):
        get_symbol("no_such_symbol")


def test_symbol_text_format(tmp_path):
    """Written symbols read back with identical coefficients."""
    sym = random_elliptic_symbol(np.random.default_rng(7), 2, 3)
    path = tmp_path / "sym.txt"
    write_symbol(sym, path)
    again = read_symbol(path)
    assert again.dim == 2 and again.order == 3
    assert again.coeffs == sym.coeffs
    assert format_symbol(again) == format_symbol(sym)


def test_symbol_parse_errors():
    """Bad headers and lines report a ParseError with a line number."""
    with pytest.raises(ParseError):
        parse_symbol("")
    with pytest.raises(ParseError) as info:
        parse_symbol("dim=2 order=2\nalpha = 2 0 1 0\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_symbol("dim=2 order=2\nalpha = 2 ; 1 0\n")

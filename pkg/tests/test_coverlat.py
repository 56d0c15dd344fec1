"""Tests for covers, good balls and lattice counts."""

import os
import sys
import pytest

import numpy as np

# Add the parent directory to the path to import inradius_lab
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from inradius_lab.coverlat import (
    CoverResult, ball_offsets, brute_force_count, count_lattice, good_ball,
    lattice_uniform_bound, overlap_bound, read_points, vitali_cover, window_sums,
)
from inradius_lab.errors import (
    ArgumentError, BudgetExceededError, ContractError, ParseError,
)
from inradius_lab.fields import RecipeTerm, synth
from inradius_lab.geometry import Box, Grid, r_interior
from inradius_lab.symbols import get_symbol, random_elliptic_symbol

UNIT_SQUARE = Box(lo=(0.0, 0.0), hi=(1.0, 1.0))


def test_cover_single_point():
    """One point is its own cover."""
    cover = vitali_cover([[0.3, 0.4]], 0.1)
    assert cover.center_indices == [0]
    assert cover.max_overlap == 1
    assert cover.overlap_bound == 25


def test_cover_two_points_in_one_dimension():
    """Points a full r apart are both accepted."""
    cover = vitali_cover([0.0, 1.0], 1.0)
    assert cover.center_indices == [0, 1]
    cover.check(np.array([[0.0], [1.0]]))


def test_cover_input_order():
    """The scan keeps the first point and drops its close neighbours."""
    points = np.array([[0.0, 0.0], [0.05, 0.0], [0.3, 0.0], [0.32, 0.01]])
    cover = vitali_cover(points, 0.2)
    assert cover.center_indices == [0, 2]


def test_cover_random_cube():
    """1000 points in the unit cube at r = 0.2 overlap at most 5^3 times."""
    rng = np.random.default_rng(0)
    points = rng.uniform(0, 1, size=(1000, 3))
    cover = vitali_cover(points, 0.2)
    assert cover.max_overlap <= 125
    cover.check(points)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_cover_random_clouds(dim):
    """Covering, packing and overlap on random clouds."""
    rng = np.random.default_rng(dim)
    for _ in range(30):
        n = int(rng.integers(1, 800))
        points = rng.uniform(-1, 1, size=(n, dim))
        r = float(rng.uniform(0.05, 1.0))
        cover = vitali_cover(points, r)
        cover.check(points)
        assert cover.max_overlap <= overlap_bound(dim)


def test_cover_check_detects_violations():
    """A hand-made family with close centres fails the packing check."""
    points = np.array([[0.0, 0.0], [0.01, 0.0]])
    bad = CoverResult(centers=points, center_indices=[0, 1], r=1.0, max_overlap=2,
                      overlap_bound=25)
    with pytest.raises(ContractError):
        bad.check(points)
    far = CoverResult(centers=points[:1], center_indices=[0], r=0.1, max_overlap=1,
                      overlap_bound=25)
    with pytest.raises(ContractError):
        far.check(np.array([[5.0, 5.0]]))


def test_cover_errors():
    """Empty input and non-positive radii are rejected."""
    with pytest.raises(ArgumentError):
        vitali_cover(np.zeros((0, 2)), 1.0)
    with pytest.raises(ArgumentError):
        vitali_cover([[0.0, 0.0]], 0.0)


def test_read_points(tmp_path):
    """Comments and blank lines are skipped; bad rows are reported by line."""
    path = tmp_path / "points.txt"
    path.write_text("# cloud\n0 0\n\n1 0.5  # second\n")
    assert read_points(str(path)).tolist() == [[0.0, 0.0], [1.0, 0.5]]
    path.write_text("0 0\n1 x\n")
    with pytest.raises(ParseError, match="line 2"):
        read_points(str(path))
    path.write_text("0 0\n1\n")
    with pytest.raises(ArgumentError):
        read_points(str(path))


def test_ball_offsets():
    """Strict inequality |o| < radius."""
    assert len(ball_offsets(2, 1.0)) == 1
    assert len(ball_offsets(2, 1.5)) == 9
    assert len(ball_offsets(1, 2.5)) == 5


def test_window_sums_off_lattice():
    """Offsets falling off the lattice contribute nothing."""
    values = np.ones((3, 3))
    sums = window_sums(values, np.array([[0, 0], [1, 1]]), ball_offsets(2, 1.5))
    assert sums.tolist() == [4.0, 9.0]


def test_good_ball_constant_density():
    """f = 1: every interior ball has ratio about 2^-d, far above the guarantee."""
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 50)
    E = r_interior(UNIT_SQUARE, 0.2)
    ball = good_ball(np.ones(grid.shape), grid, E, 0.2)
    assert ball is not None
    assert ball.ratio == pytest.approx(0.25, abs=0.05)
    assert ball.guarantee == pytest.approx(0.36 / 50)
    assert ball.ratio >= ball.guarantee
    assert ball.max_overlap <= 25


def test_good_ball_concentrated_density():
    """Mass in a single cell of E gives ratio 1."""
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 50)
    f = np.zeros(grid.shape)
    f[25, 25] = 1.0
    ball = good_ball(f, grid, r_interior(UNIT_SQUARE, 0.2), 0.2)
    assert ball.ratio == 1.0
    assert ball.guarantee == pytest.approx(1 / 50)


def test_good_ball_vacuous():
    """No mass in E: the vacuous marker."""
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 50)
    f = np.zeros(grid.shape)
    f[:5, :] = 1.0
    assert good_ball(f, grid, r_interior(UNIT_SQUARE, 0.2), 0.2) is None
    assert good_ball(np.ones(grid.shape), grid, None, 0.2) is None


def test_good_ball_per_cell_samples():
    """Per-cell vectors are accepted; bad shapes and negative values are not."""
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 20)
    E = r_interior(UNIT_SQUARE, 0.25)
    ball = good_ball(np.ones(grid.n_cells), grid, E, 0.25)
    assert ball is not None
    with pytest.raises(ArgumentError):
        good_ball(np.ones(7), grid, E, 0.25)
    with pytest.raises(ArgumentError):
        good_ball(-np.ones(grid.shape), grid, E, 0.25)


def test_good_ball_random_densities():
    """|psi|^2 of random fields always meets the guarantee."""
    rng = np.random.default_rng(9)
    sym = get_symbol("laplacian", dim=2)
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 64)
    for _ in range(20):
        lam = rng.uniform(10, 2000) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        recipe = [RecipeTerm(direction=(np.cos(t), np.sin(t)), root_index=int(rng.integers(2)),
                             amplitude=complex(rng.standard_normal(), rng.standard_normal()))
                  for t in rng.uniform(0, 2 * np.pi, size=4)]
        ef = synth(sym, lam, recipe)
        r = ef.scale.r_lambda
        f = grid.scatter(np.abs(ef.evaluate(grid.cells)) ** 2)
        ball = good_ball(f, grid, r_interior(UNIT_SQUARE, r), r)
        assert ball.ratio >= ball.guarantee


def test_lattice_laplacian_unit_lambda():
    """The four |xi|^2 = 1 and four |xi|^2 = 2 points."""
    sym = get_symbol("laplacian", dim=2)
    result = count_lattice(sym, 1.0)
    assert result.count == 8
    assert (0, 0) not in result.witnesses
    assert result.enumeration_radius == pytest.approx(4.8, abs=0.05)
    assert brute_force_count(sym, 1.0, 10.0) == 8


def test_lattice_zero_lambda_counts_origin():
    """|P(0) - 0| = 0 <= 0."""
    for name in ("laplacian", "bilaplacian"):
        result = count_lattice(get_symbol(name, dim=2), 0.0)
        assert (0, 0) in result.witnesses


def test_lattice_threads_do_not_change_witnesses():
    """Slabs merge in order regardless of the worker count."""
    sym = get_symbol("complex_anisotropic")
    serial = count_lattice(sym, 40.0 + 10.0j)
    threaded = count_lattice(sym, 40.0 + 10.0j, threads=4)
    assert serial.witnesses == threaded.witnesses


def test_lattice_matches_brute_force():
    """Fast path and the point-by-point oracle agree on random instances."""
    rng = np.random.default_rng(12)
    checked = 0
    limits = {1: 50.0, 2: 20.0, 3: 8.0}
    for _ in range(60):
        dim = int(rng.integers(1, 4))
        order = int(rng.choice([2, 4])) if dim == 3 else int(rng.integers(1, 5))
        sym = random_elliptic_symbol(rng, dim, order)
        lam = complex(rng.uniform(0, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        try:
            result = count_lattice(sym, lam, budget=10**6)
        except BudgetExceededError:
            continue
        if result.enumeration_radius > limits[dim]:
            continue
        assert brute_force_count(sym, lam, result.enumeration_radius) == result.count
        checked += 1
    assert checked >= 5


def test_lattice_lower_order_terms():
    """Non-homogeneous symbols get a perturbation radius and still match the oracle."""
    sym = get_symbol("perturbed_laplacian", dim=2)
    result = count_lattice(sym, 20.0)
    assert result.r0 >= 1.0
    assert brute_force_count(sym, 20.0, result.enumeration_radius) == result.count


def test_lattice_errors():
    """Budget, delta and margin checks."""
    sym = get_symbol("laplacian", dim=2)
    with pytest.raises(BudgetExceededError) as info:
        count_lattice(sym, 1e6, budget=1000)
    assert info.value.radius > 0
    with pytest.raises(ArgumentError):
        count_lattice(sym, 1.0, delta=1.0)
    with pytest.raises(ArgumentError):
        count_lattice(sym, 1.0, margin=0.5)


def test_lattice_uniform_bound():
    """Counts over 1 <= |mu| <= 2 are finite and stable under a wider enumeration."""
    sym = get_symbol("laplacian", dim=2)
    bound = lattice_uniform_bound(sym, samples=16)
    assert len(bound.counts) == 16
    assert bound.stable
    assert 0 < bound.max_count < 100


@pytest.mark.slow
def test_cover_random_clouds_full():
    """200 clouds of up to 2000 points in d = 1, 2, 3."""
    rng = np.random.default_rng(40)
    for _ in range(200):
        dim = int(rng.integers(1, 4))
        n = int(rng.integers(1, 2001))
        points = rng.uniform(-1, 1, size=(n, dim))
        cover = vitali_cover(points, float(rng.uniform(0.02, 1.0)))
        cover.check(points)
        assert cover.max_overlap <= overlap_bound(dim)


def _random_density(rng, grid):
    """Nonnegative cell values: |psi|^2 of a random field, or sparse random weights."""
    if rng.random() < 0.5:
        sym = get_symbol("laplacian", dim=2)
        lam = rng.uniform(10, 2000) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        recipe = [RecipeTerm(direction=(np.cos(t), np.sin(t)), root_index=int(rng.integers(2)),
                             amplitude=complex(rng.standard_normal(), rng.standard_normal()))
                  for t in rng.uniform(0, 2 * np.pi, size=4)]
        return grid.scatter(np.abs(synth(sym, lam, recipe).evaluate(grid.cells)) ** 2)
    f = rng.exponential(size=grid.shape)
    f[rng.random(grid.shape) < rng.uniform(0, 0.95)] = 0.0
    return f


@pytest.mark.slow
def test_good_ball_random_densities_full():
    """100 random densities with mass in E all meet the guarantee."""
    rng = np.random.default_rng(41)
    grid = Grid.for_domain(UNIT_SQUARE, 1 / 64)
    checked = 0
    while checked < 100:
        f = _random_density(rng, grid)
        r = float(rng.uniform(0.05, 0.3))
        ball = good_ball(f, grid, r_interior(UNIT_SQUARE, r), r)
        if ball is None:
            continue
        assert ball.ratio >= ball.guarantee
        assert ball.max_overlap <= 25
        checked += 1


@pytest.mark.slow
def test_lattice_matches_brute_force_full():
    """100 random instances agree with the oracle, with an empty margin shell each time."""
    rng = np.random.default_rng(42)
    limits = {1: 50.0, 2: 50.0, 3: 20.0}
    checked = 0
    for _ in range(2000):
        dim = int(rng.integers(1, 4))
        order = int(rng.choice([2, 4])) if dim == 3 else int(rng.integers(1, 5))
        sym = random_elliptic_symbol(rng, dim, order)
        lam = complex(rng.uniform(0, 30) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        try:
            result = count_lattice(sym, lam, budget=10**7)
        except BudgetExceededError:
            continue
        if result.enumeration_radius > limits[dim]:
            continue
        assert brute_force_count(sym, lam, result.enumeration_radius) == result.count
        checked += 1
        if checked == 100:
            break
    assert checked == 100


@pytest.mark.slow
def test_lattice_uniform_bound_full():
    """64 samples of mu on each circle, stable under a doubled enumeration."""
    bound = lattice_uniform_bound(get_symbol("laplacian", dim=2), samples=64)
    assert len(bound.counts) == 64
    assert bound.stable

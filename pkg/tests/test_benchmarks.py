import numpy as np
import pytest

pytest.importorskip("pytest_benchmark")

from na_bounds.core import bounds as B
from na_bounds.core.montecarlo import estimate_tails
from na_bounds.core.registry import evaluate_bound
from na_bounds.core.sampler import SamplingWithoutReplacement


@pytest.mark.benchmark(group="gaussian_family")
def test_chain_grid_benchmark(benchmark):
    """H_n, Bennett and B_1 over a grid of arguments."""
    grid = [(float(x), float(v)) for x in np.linspace(0.1, 50.0, 40) for v in (0.5, 1.0, 5.0)]

    def run():
        return [
            (B.fuk_nagaev_h(x, v, 50, 0.5), B.bennett_b(x, v, 0.5), B.bernstein_b1(x, v, 0.5))
            for x, v in grid
        ]

    values = benchmark(run)
    assert all(h <= b * (1.0 + 1e-12) and b <= b1 * (1.0 + 1e-12) for h, b, b1 in values)


@pytest.mark.benchmark(group="ell_star")
def test_ell_star_benchmark(benchmark):
    xs = np.linspace(0.0, 0.99, 100)
    values = benchmark(lambda: [B.rio_ell_star(float(x)) for x in xs])
    assert all(v >= B.rio_ell_star_floor(float(x)) * (1.0 - 1e-9) for x, v in zip(xs, values))


@pytest.mark.benchmark(group="registry")
def test_auto_alpha_benchmark(benchmark, rademacher_summary):
    result = benchmark(evaluate_bound, "weak_moment", 10.0, rademacher_summary, {"alpha": "auto", "y": "auto"})
    assert result.raw_value > 0.0


@pytest.mark.slow
@pytest.mark.benchmark(group="montecarlo")
def test_tail_estimation_benchmark(benchmark):
    model = SamplingWithoutReplacement((-1.0,) * 100 + (1.0,) * 100, 50)
    estimates = benchmark.pedantic(
        estimate_tails, args=(model, [5.0, 10.0, 15.0], 20000, 1), rounds=3, iterations=1
    )
    assert [e.x for e in estimates] == [5.0, 10.0, 15.0]

import numpy as np


def cauchy_derivative(f, z0, h=1e-3, n=32):
    """First derivative of an analytic ``f`` at ``z0`` from samples on a small circle."""
    w = np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.asarray(f(z0 + h * w), dtype=complex)
    return np.mean(vals / w) / h


def random_points(n, seed, cap=0.9):
    rng = np.random.default_rng(seed)
    return cap * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

"""Shared fixtures: contexts, systems and seeded randomness."""

import random

import pytest
import sympy

from subnoether.catalog.base import load_case_document
from subnoether.jet import JetContext
from subnoether.pipeline import CheckConfig
from subnoether.system import DifferentialSystem


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def wave_ctx() -> JetContext:
    return JetContext(["t", "x"], ["u"])


@pytest.fixture
def heat_system(wave_ctx) -> DifferentialSystem:
    """``u_t - u_xx`` solved for ``u_xx``."""
    ctx = wave_ctx
    equation = ctx.jet("u", ("t",)) - ctx.jet("u", ("x", "x"))
    return DifferentialSystem(ctx, [("D1", equation)], [("D1", ctx.jet("u", ("x", "x")))])


@pytest.fixture
def nls():
    return load_case_document("nls.pde")


@pytest.fixture
def vort2d():
    return load_case_document("vort2d.pde")


@pytest.fixture
def wave():
    return load_case_document("wave.pde")


@pytest.fixture
def config() -> CheckConfig:
    """Fast oracle settings for unit tests."""
    return CheckConfig(seed=7, oracle_points=4)


def sym(name: str) -> sympy.Symbol:
    return sympy.Symbol(name)

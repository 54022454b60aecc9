"""Shared fixtures: weight families and lattice conjugate tables.

The tables are the expensive reusable artifacts (one concave maximization
per lattice point), so they are built once per session at the bounds the
seminorm and embedding helpers expect (``default_lattice_bound(1) == 30``
plus one guard shell).
"""
from __future__ import annotations

import numpy as np
import pytest

from fenchellab.logconj import lattice_conjugate_table
from fenchellab.weights import WeightFamily, family_from_json


def make_family(profile: str, dim: int = 1) -> WeightFamily:
    return family_from_json({"profile": profile, "base": 2.0, "dim": dim})


@pytest.fixture(scope="session")
def t2_family() -> WeightFamily:
    return make_family("t^2")


@pytest.fixture(scope="session")
def exp_family() -> WeightFamily:
    return make_family("exp(t)-1")


@pytest.fixture(scope="session")
def t2_table1(t2_family):
    # bound 50 so the shell-series fixtures (50 terms) can reuse it
    return lattice_conjugate_table(t2_family.member(1), 50)


@pytest.fixture(scope="session")
def t2_table2(t2_family):
    return lattice_conjugate_table(t2_family.member(2), 31)


@pytest.fixture(scope="session")
def t2_table3(t2_family):
    return lattice_conjugate_table(t2_family.member(3), 31)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260825)

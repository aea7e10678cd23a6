"""Shared fixtures for the uniwilf test suite."""

import pytest

from uniwilf.classes import FiniteClass, enumerate_av, full_class
from uniwilf.perms import parse_permutation, parse_permutation_list


def small_class(*levels: str) -> FiniteClass:
    """Build a class from level strings such as "1", "12,21", "123,321"."""
    return FiniteClass.from_levels(
        {k: parse_permutation_list(text) for k, text in enumerate(levels, start=1)},
        len(levels),
    )


@pytest.fixture
def make_class():
    return small_class


@pytest.fixture
def s2() -> FiniteClass:
    return full_class(2)


@pytest.fixture
def s3() -> FiniteClass:
    return full_class(3)


@pytest.fixture
def monotone_start() -> FiniteClass:
    """S_{<=2} with level 3 = {123, 321}"""
    return small_class("1", "12,21", "123,321")


@pytest.fixture
def pair_start() -> FiniteClass:
    """S_{<=2} with level 3 = {123, 132, 321}"""
    return small_class("1", "12,21", "123,132,321")


@pytest.fixture
def wedge_start() -> FiniteClass:
    """Av(213, 312) up to size 3"""
    return enumerate_av([parse_permutation("213"), parse_permutation("312")], 3)

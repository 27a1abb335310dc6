import pytest

from cofrob import (sphere_cohomology, manifold_from_cup, torus_cup_data,
                    s2xs2_cup_data, rabinowitz_loop_sphere, loop_sphere,
                    based_rabinowitz_loop_sphere, based_loop_sphere,
                    circle_models, loop_tqft_sphere, equator_pair,
                    diagonal_pair, factor_pair)


@pytest.fixture(scope="session")
def sphere2():
    return sphere_cohomology(2)


@pytest.fixture(scope="session")
def sphere3():
    return sphere_cohomology(3)


@pytest.fixture(scope="session")
def torus():
    return manifold_from_cup(torus_cup_data())


@pytest.fixture(scope="session")
def s2xs2():
    return manifold_from_cup(s2xs2_cup_data())


@pytest.fixture(scope="session")
def rab3():
    return rabinowitz_loop_sphere(3, 6)


@pytest.fixture(scope="session")
def based3():
    return based_rabinowitz_loop_sphere(3, 6)


@pytest.fixture(scope="session")
def loop3():
    return loop_sphere(3, 6)


@pytest.fixture(scope="session")
def based_loop3():
    return based_loop_sphere(3, 6)


@pytest.fixture(scope="session")
def circle_rab():
    return circle_models(6, flavor="rabinowitz")


@pytest.fixture(scope="session")
def tqft3():
    return loop_tqft_sphere(3, 6)


@pytest.fixture(scope="session")
def tqft1():
    return loop_tqft_sphere(1, 6)


@pytest.fixture(scope="session")
def equator():
    return equator_pair()


@pytest.fixture(scope="session")
def diagonal():
    return diagonal_pair()


@pytest.fixture(scope="session")
def factor():
    return factor_pair()


def all_pass(reports):
    return all(r.verdict == "pass" for r in reports)


def no_failures(reports):
    return all(r.verdict != "fail" for r in reports)


def failing(reports):
    return [r for r in reports if r.verdict == "fail"]

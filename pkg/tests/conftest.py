import pytest

from trivspec.algebra import extension_algebra, quaternion_algebra, standard_profile
from trivspec.fields import PrimeField, RationalField, RationalFunctionField


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def F7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def QQ():
    return RationalField()


@pytest.fixture(scope="session")
def F9(F3):
    # F9 = F3[t]/(t^2 + 1), so t^2 = -1
    return extension_algebra(F3, [1, 0, 1], name="F9")


@pytest.fixture(scope="session")
def F25(F5):
    # F25 = F5[t]/(t^2 - 2)
    return extension_algebra(F5, [-2, 0, 1], name="F25")


@pytest.fixture(scope="session")
def F4(F2):
    return extension_algebra(F2, [1, 1, 1], name="F4")


@pytest.fixture(scope="session")
def HQ(QQ):
    # Hamilton quaternions over the rationals
    return quaternion_algebra(QQ, -1, -1, name="H/Q")


@pytest.fixture(scope="session")
def QI(QQ):
    # Q(i) = Q[t]/(t^2 + 1)
    return extension_algebra(QQ, [1, 0, 1], name="Q(i)")


@pytest.fixture(scope="session")
def HYPER2():
    # F2(s)[t]/(t^2 - s): hyper-radicial of degree 2 in characteristic 2
    F = RationalFunctionField(2, "s")
    return extension_algebra(F, [F.variable_element(), F.zero, F.one], name="F2(s)(sqrt s)")


@pytest.fixture(scope="session")
def prof25(F25):
    return standard_profile(F25)


@pytest.fixture(scope="session")
def prof9(F9):
    return standard_profile(F9)


@pytest.fixture(scope="session")
def profH(HQ):
    return standard_profile(HQ)


@pytest.fixture(scope="session")
def profQI(QI):
    return standard_profile(QI)


@pytest.fixture(scope="session")
def profHyper(HYPER2):
    return standard_profile(HYPER2)

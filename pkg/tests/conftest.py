import pytest

from quarantine_release.cohort import bundled_cohort
from quarantine_release.prior import PriorSpec, fit_prior
from quarantine_release.sensitivity import default_curve

SCHOOL_P_ANY = 3 / 21
SCHOOL_MEAN = 4.8


@pytest.fixture(scope="session")
def pcr_curve():
    return default_curve()


@pytest.fixture(scope="session")
def school_priors():
    """Fitted school-class priors, cached once per session."""
    return {
        m: fit_prior(PriorSpec(m, SCHOOL_P_ANY, SCHOOL_MEAN))
        for m in (15, 25, 35)
    }


@pytest.fixture(scope="session")
def school_cohort_csv():
    return bundled_cohort("school_class_aug2020")

import pytest

from evcopula import dependence_corpus, lambda_upper, rho_numeric, tau_numeric

CORPUS_SEED = 20240801
CORPUS_SIZE = 500


@pytest.fixture(scope="session")
def corpus500():
    return dependence_corpus(CORPUS_SIZE, seed=CORPUS_SEED)


@pytest.fixture(scope="session")
def corpus_coefficients(corpus500):
    """(df, lambda, rho, tau) computed once and shared across criteria."""
    out = []
    for df in corpus500:
        out.append((df, lambda_upper(df), rho_numeric(df), tau_numeric(df)))
    return out

import pytest

import molsldpc as m


@pytest.fixture(scope="session")
def code():
    cache = {}

    def get(q, alphas, qc=False):
        key = (q, tuple(alphas), qc)
        if key not in cache:
            cache[key] = m.code(q, list(alphas), qc=qc)
        return cache[key]

    return get


ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Store and print one pass/fail line; the hook below repeats them after the run."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE[criterion] = line
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

import pytest

import recorder

# Every twisted_dims evaluation made anywhere in the suite goes through the recorder.
recorder.install()


@pytest.fixture
def evaluations():
    return recorder.EVALUATIONS


def pytest_terminal_summary(terminalreporter):
    if recorder.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in recorder.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"twisted_dims evaluations checked: {recorder.EVALUATIONS['count']}, "
        f"invariant violations: {len(recorder.EVALUATIONS['violations'])}, "
        f"inverse/Galois disagreements: {len(recorder.symmetry_violations())}"
    )


def pytest_sessionfinish(session, exitstatus):
    if (recorder.EVALUATIONS["violations"] or recorder.symmetry_violations()) and exitstatus == 0:
        session.exitstatus = 1

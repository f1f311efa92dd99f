from sympy import primerange

PRIMES_1_MOD_8 = [p for p in primerange(3, 10_000) if p % 8 == 1]
SMALL_PRIMES_1_MOD_8 = [p for p in PRIMES_1_MOD_8 if p <= 2000]

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    from descent2.obstructions import SOUNDNESS_LOG

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    if SOUNDNESS_LOG:
        both = [e for e in SOUNDNESS_LOG if e[3] and e[4]]
        terminalreporter.write_line(
            f"soundness over the whole session: {len(SOUNDNESS_LOG)} verdicts, "
            f"{'no conflicts' if not both else f'CONFLICTS {both}'}")


def pytest_sessionfinish(session, exitstatus):
    from descent2.obstructions import SOUNDNESS_LOG

    if any(e[3] and e[4] for e in SOUNDNESS_LOG):
        session.exitstatus = 1

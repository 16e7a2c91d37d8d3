"""Print one PASS/FAIL line per acceptance criterion at the end of the run."""

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, secs in sorted(_ACCEPTANCE):
        tag = "PASS" if outcome == "passed" else "FAIL"
        num = int(name.split("_")[2])
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"{tag} criterion {num:2d}: {label} ({secs:.1f}s)")

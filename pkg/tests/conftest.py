import hypothesis

hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.MEASURED:
        return
    terminalreporter.section("acceptance measurements")
    for key, value in acceptance.MEASURED.items():
        terminalreporter.write_line(f"{key}: {value}")

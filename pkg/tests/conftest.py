def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = dict(getattr(rep, "user_properties", ())).get("criterion")
            if name is None or (outcome == "passed" and rep.when != "call"):
                continue
            if verdicts.get(name) != "FAIL":
                verdicts[name] = "PASS" if outcome == "passed" else "FAIL"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(verdicts, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{verdicts[name]}  criterion {name}")

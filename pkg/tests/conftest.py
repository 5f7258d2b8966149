import hypothesis

hypothesis.settings.register_profile(
    "suite", deadline=None, derandomize=True, max_examples=50)
hypothesis.settings.load_profile("suite")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running classification sweeps")

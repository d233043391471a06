"""Run the acceptance gate last so its runtime check covers the whole suite."""


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")

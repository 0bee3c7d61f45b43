import random

import pytest

from diabml.data import AttributeSpec, Dataset, Schema


def nominal_schema(sizes, class_categories=("Yes", "No")):
    """Schema of nominal attributes A0..An-1 with the class last."""
    attrs = [AttributeSpec.nominal(f"A{i}", *(f"v{j}" for j in range(k))) for i, k in enumerate(sizes)]
    attrs.append(AttributeSpec.nominal("Diabetic", *class_categories))
    return Schema(tuple(attrs), len(attrs) - 1)


def random_dataset(rng: random.Random, n: int, sizes, n_classes=2):
    schema = nominal_schema(sizes, tuple(f"c{i}" for i in range(n_classes)) if n_classes != 2 else ("Yes", "No"))
    records = [tuple(rng.randrange(k) for k in sizes) + (rng.randrange(n_classes),) for _ in range(n)]
    return Dataset(schema, records)


@pytest.fixture
def rng():
    return random.Random(20240501)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)

import csv
import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def table2_rows():
    with open(os.path.join(FIXTURES, "table2.csv"), newline="") as file:
        return [tuple(int(value) for value in row) for row in list(csv.reader(file))[1:]]


@pytest.fixture(scope="session")
def table2_text():
    with open(os.path.join(FIXTURES, "table2.csv"), newline="") as file:
        return file.read()


@pytest.fixture(scope="session")
def table1_conductors():
    with open(os.path.join(FIXTURES, "table1_conductors.txt")) as file:
        return {int(line) for line in file if line.strip()}

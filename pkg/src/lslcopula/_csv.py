"""CSV output shared by samples, clouds and boundaries: 17 significant digits, ``\\n`` endings."""

import csv

import numpy as np

from .errors import DomainError


def write_csv(path_or_file, header, rows):
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(float(x), ".17g") for x in row])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
            emit(fh)


def read_csv(path, header):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        got = next(reader)
        if got != list(header):
            raise DomainError(f"{path}: expected header {header}, got {got}")
        return np.array([[float(x) for x in row] for row in reader], dtype=float).reshape(-1, len(header))

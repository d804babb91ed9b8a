"""Serialization of algebra elements, matrices, and reports.

JSON carries complex numbers as {"re": ..., "im": ...} objects so files stay
language-neutral; matrices are arrays of rows of those pairs.  Grassmann
elements serialize as an algebra header plus a list of canonical-order
monomial terms; the parser rejects non-canonical input instead of silently
reordering it, so a file is valid exactly when it equals its own round trip.

CSV cells use the shortest round-trip float representation and the explicit
token "nan" for missing values; rows always end in a bare newline, making
repeated runs byte-identical across platforms.
"""

import csv
import re
from typing import IO, Any, Iterable, Sequence

import numpy as np

from .grassmann import AlgebraSpec, Generator, GrassmannElement
from .pseudoherm import Diagnosis

_TOKEN_PATTERN = re.compile(r"^(xi|pi|chi|varpi)([1-9][0-9]*)$")
_FAMILY_KIND = {"xi": (0, False), "pi": (0, True), "chi": (1, False), "varpi": (1, True)}


def complex_to_json(value: complex) -> dict[str, float]:
    """Encode a complex number as a {"re", "im"} pair."""
    value = complex(value)
    return {"re": float(value.real), "im": float(value.imag)}


def complex_from_json(data: Any) -> complex:
    """Decode a {"re", "im"} pair.

    Raises:
        ValueError: If the object is missing either key or carries extras.
    """
    if not isinstance(data, dict) or set(data) != {"re", "im"}:
        raise ValueError(f"expected a {{re, im}} object, got {data!r}")
    return complex(float(data["re"]), float(data["im"]))


def matrix_to_json(matrix: np.ndarray) -> list[list[dict[str, float]]]:
    """Encode a complex matrix as an array of rows of {"re", "im"} pairs."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    return [[complex_to_json(value) for value in row] for row in matrix]


def matrix_from_json(data: Any) -> np.ndarray:
    """Decode an array-of-rows matrix.

    Raises:
        ValueError: If rows are ragged or entries malformed.
    """
    if not isinstance(data, list) or not data:
        raise ValueError("expected a non-empty array of rows")
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != len(data[0]) or not row:
            raise ValueError("matrix rows must be non-empty and equally long")
        rows.append([complex_from_json(value) for value in row])
    return np.array(rows, dtype=complex)


def vector_to_json(vector: np.ndarray) -> list[dict[str, float]]:
    """Encode a complex vector as a list of {"re", "im"} pairs."""
    vector = np.asarray(vector, dtype=complex)
    if vector.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    return [complex_to_json(value) for value in vector]


def vector_from_json(data: Any) -> np.ndarray:
    """Decode a list of {"re", "im"} pairs into a vector."""
    if not isinstance(data, list) or not data:
        raise ValueError("expected a non-empty list of entries")
    return np.array([complex_from_json(value) for value in data], dtype=complex)


def algebra_to_json(algebra: AlgebraSpec) -> dict[str, Any]:
    """Encode an algebra header; the momenta key appears only when carried."""
    if len(algebra.family_sizes) > 2:
        raise ValueError("serialization supports at most two generator families")
    header: dict[str, Any] = {"families": list(algebra.family_sizes)}
    if algebra.momenta_attached:
        header["momenta"] = True
    return header


def algebra_from_json(data: Any) -> AlgebraSpec:
    """Decode an algebra header.

    Raises:
        ValueError: If the families list is malformed or a key is unknown.
    """
    if not isinstance(data, dict) or "families" not in data:
        raise ValueError("algebra header must carry a families list")
    extra = set(data) - {"families", "momenta"}
    if extra:
        raise ValueError(f"unknown algebra keys: {sorted(extra)}")
    families = data["families"]
    if (
        not isinstance(families, list)
        or not families
        or len(families) > 2
        or not all(isinstance(n, int) and n > 0 for n in families)
    ):
        raise ValueError("families must be a list of one or two positive sizes")
    momenta = data.get("momenta", False)
    if momenta is not True and momenta is not False:
        raise ValueError("momenta must be a boolean when present")
    return AlgebraSpec(tuple(families), momenta_attached=momenta)


def _parse_token(token: Any, algebra: AlgebraSpec) -> Generator:
    if not isinstance(token, str):
        raise ValueError(f"generator token must be a string, got {token!r}")
    match = _TOKEN_PATTERN.match(token)
    if match is None:
        raise ValueError(f"unknown generator token {token!r}")
    family, momentum = _FAMILY_KIND[match.group(1)]
    index = int(match.group(2)) - 1
    if family >= len(algebra.family_sizes):
        raise ValueError(f"token {token!r} names a family the algebra lacks")
    if index >= algebra.family_sizes[family]:
        raise ValueError(f"token {token!r} exceeds the family size")
    if momentum and not algebra.momenta_attached:
        raise ValueError(f"token {token!r} requires a momentum-carrying algebra")
    return Generator(family, momentum, index)


def element_to_json(element: GrassmannElement) -> dict[str, Any]:
    """Encode a Grassmann element with terms in canonical order."""
    terms = []
    for monomial in sorted(element.terms):
        coefficient = complex(element.terms[monomial])
        terms.append(
            {
                "mono": [generator.name for generator in monomial],
                "re": float(coefficient.real),
                "im": float(coefficient.imag),
            }
        )
    return {"algebra": algebra_to_json(element.algebra), "terms": terms}


def element_from_json(data: Any) -> GrassmannElement:
    """Decode a Grassmann element.

    The monomial tokens must already be in canonical order without repeats;
    out-of-order input is an error, not a request to sort.

    Raises:
        ValueError: On schema violations, unknown tokens, out-of-range
            indices, repeated generators, or non-canonical order.
    """
    if not isinstance(data, dict) or set(data) != {"algebra", "terms"}:
        raise ValueError("element must carry exactly the keys algebra and terms")
    algebra = algebra_from_json(data["algebra"])
    if not isinstance(data["terms"], list):
        raise ValueError("terms must be a list")
    terms = []
    for entry in data["terms"]:
        if not isinstance(entry, dict) or set(entry) != {"mono", "re", "im"}:
            raise ValueError(f"term must carry mono, re, im keys, got {entry!r}")
        if not isinstance(entry["mono"], list):
            raise ValueError("mono must be a list of generator tokens")
        generators = [_parse_token(token, algebra) for token in entry["mono"]]
        for left, right in zip(generators, generators[1:]):
            if left >= right:
                raise ValueError(
                    f"monomial {entry['mono']} is not in canonical order"
                )
        coefficient = complex(float(entry["re"]), float(entry["im"]))
        terms.append((tuple(generators), coefficient))
    return GrassmannElement.from_terms(algebra, terms)


def diagnosis_to_json(diagnosis: Diagnosis) -> dict[str, Any]:
    """Encode a pseudo-hermiticity diagnosis; absent metric encodes as null."""
    return {
        "spectrum": [complex_to_json(value) for value in diagnosis.spectrum],
        "real": diagnosis.spectrum_real,
        "diagonalizable": diagnosis.diagonalizable,
        "metric": (
            None if diagnosis.metric is None else matrix_to_json(diagnosis.metric.matrix)
        ),
    }


def csv_cell(value: Any) -> str:
    """Render one CSV cell: shortest round-trip floats, "nan" for NaN."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, str):
        return value
    raise ValueError(f"unsupported CSV cell type: {type(value)!r}")


def write_csv(
    stream: IO[str], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
    """Write a header and rows with deterministic, platform-stable bytes.

    The caller opens the stream with ``newline=""`` so the explicit ``\\n``
    terminator survives untranslated.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([csv_cell(value) for value in row])

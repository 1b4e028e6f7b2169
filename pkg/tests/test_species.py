import json

import pytest

from cprabi.core.exceptions import SpeciesDataError
from cprabi.schema.species import load_species, load_species_file

from .utils import rb87_document


def d2_line(document):
    return document["lines"][1]


def test_shipped_species():
    species = load_species(rb87_document())
    assert species.name == "87Rb"
    assert species.nuclear_spin_x2 == 3
    assert species.lower_manifold == (5, 0, 1)
    assert [line.upper_J_x2 for line in species.lines] == [1, 3]

    d1 = species.line(1)
    assert d1.reduced_dipole == 2.537e-29
    assert sorted(d1.hyperfine_intervals) == [2, 4]
    assert d1.frequency(2) == d1.base_frequency

    d2 = species.line(3)
    assert sorted(d2.hyperfine_intervals) == [0, 2, 4, 6]
    assert d2.frequency(0) < d2.frequency(2) < d2.frequency(4) < d2.frequency(6)
    assert all(line.nuclear_spin_x2 == 3 for line in species.lines)


def test_text_and_mapping_equivalent():
    document = rb87_document()
    assert load_species(json.dumps(document)) == load_species(document)
    assert load_species(json.dumps(document).encode()) == load_species(document)


def test_default_lower_manifold():
    document = rb87_document()
    del document["lower"]
    for line in document["lines"]:
        del line["n"]
    species = load_species(document)
    assert species.lower_manifold == (1, 0, 1)
    assert all(line.n == 1 for line in species.lines)


def test_interval_too_large():
    document = rb87_document()
    d2_line(document)["hyperfine_intervals"]["6"] = 1e13
    with pytest.raises(SpeciesDataError) as e:
        load_species(document)
    assert "not small" in str(e.value)
    assert "lines" in e.value.messages


def test_missing_interval():
    document = rb87_document()
    del d2_line(document)["hyperfine_intervals"]["0"]
    with pytest.raises(SpeciesDataError, match="missing F=0 interval"):
        load_species(document)


def test_reference_interval_nonzero():
    document = rb87_document()
    d2_line(document)["hyperfine_intervals"]["2"] = 1e6
    with pytest.raises(SpeciesDataError, match="F=1 interval must be 0"):
        load_species(document)


def test_disallowed_hyperfine_level():
    document = rb87_document()
    d2_line(document)["hyperfine_intervals"]["8"] = 4e9
    with pytest.raises(SpeciesDataError, match="F=4 is not allowed"):
        load_species(document)


def test_duplicate_manifold():
    document = rb87_document()
    document["lines"].append(dict(d2_line(document)))
    with pytest.raises(SpeciesDataError, match="listed twice"):
        load_species(document)


def test_line_not_dipole_coupled():
    document = rb87_document()
    d2_line(document)["L"] = 3
    with pytest.raises(SpeciesDataError, match="not dipole-coupled"):
        load_species(document)


def test_half_integer_mismatch():
    document = rb87_document()
    d2_line(document)["upper_J_x2"] = 2
    with pytest.raises(SpeciesDataError, match="half-integer"):
        load_species(document)


@pytest.mark.parametrize(
    "field,value",
    [
        ("base_frequency_rad_s", -2.4e15),
        ("base_frequency_rad_s", 0.0),
        ("reduced_dipole_Cm", -1e-29),
        ("upper_J_x2", 0),
    ],
)
def test_invalid_line_field(field, value):
    document = rb87_document()
    d2_line(document)[field] = value
    with pytest.raises(SpeciesDataError):
        load_species(document)


@pytest.mark.parametrize(
    "document", ["{", "[]", "", b"\xff\xfe", '{"nuclear_spin_x2": 3}']
)
def test_malformed_document(document):
    with pytest.raises(SpeciesDataError):
        load_species(document)


def test_rydberg_like_species():
    document = {
        "name": "Rydberg-like",
        "nuclear_spin_x2": 3,
        "lower": {"n": 30, "L": 0, "J_x2": 1},
        "lines": [
            {
                "n": 30,
                "L": 1,
                "upper_J_x2": 1,
                "reduced_dipole_Cm": 1.2e-26,
                "base_frequency_rad_s": 4.1e11,
                "hyperfine_intervals": {"2": 0.0, "4": 2.2e5},
            },
            {
                "n": 29,
                "L": 1,
                "upper_J_x2": 3,
                "reduced_dipole_Cm": 1.4e-26,
                "base_frequency_rad_s": 5.3e11,
                "hyperfine_intervals": {"0": -1.9e4, "2": 0.0, "4": 4.1e4, "6": 1.1e5},
                "below": True,
            },
        ],
    }
    species = load_species(document)
    below = species.line(3)
    assert below.below
    assert below.frequency(2) == -5.3e11
    assert species.line(1).frequency(4) == 4.1e11 + 2.2e5


def test_missing_species_file(tmp_path):
    with pytest.raises(SpeciesDataError, match="Can't read"):
        load_species_file(str(tmp_path / "missing.json"))


def test_species_file(tmp_path):
    path = tmp_path / "species.json"
    path.write_text(json.dumps(rb87_document()))
    assert load_species_file(str(path)) == load_species(rb87_document())

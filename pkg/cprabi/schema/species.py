import json
from typing import Mapping, Union

from marshmallow import (
    Schema,
    ValidationError,
    fields,
    post_load,
    validate,
    validates,
    validates_schema,
)

from cprabi.core.exceptions import SpeciesDataError
from cprabi.core.log import getLogger
from cprabi.model.atom import SpeciesData, TransitionLine, coupled_range, half_str

logger = getLogger()

# Hyperfine intervals are small corrections to the optical frequencies
MAX_INTERVAL_RATIO = 1e-3
# Doubled F of the level hyperfine intervals are measured from
REFERENCE_F_X2 = 2
# Ground S_1/2 manifold assumed when the document has no "lower" section
DEFAULT_LOWER_MANIFOLD = {"n": 1, "L": 0, "J_x2": 1}


def _positive(value):
    if not value > 0:
        raise ValidationError("Value must be strictly positive")


class LowerManifoldSchema(Schema):
    n = fields.Int(missing=1, validate=validate.Range(min=1))
    L = fields.Int(missing=0, validate=validate.Range(min=0))
    J_x2 = fields.Int(missing=1, validate=validate.Range(min=1))


class TransitionLineSchema(Schema):
    n = fields.Int(missing=None, validate=validate.Range(min=1))
    L = fields.Int(missing=1, validate=validate.Range(min=0))
    upper_J_x2 = fields.Int(required=True, validate=validate.Range(min=1))
    reduced_dipole_Cm = fields.Float(required=True, validate=_positive)
    base_frequency_rad_s = fields.Float(required=True, validate=_positive)
    hyperfine_intervals = fields.Dict(
        keys=fields.Str(), values=fields.Float(), required=True
    )
    below = fields.Boolean(missing=False)

    @validates("hyperfine_intervals")
    def validate_interval_keys(self, value):
        for key in value:
            try:
                F_x2 = int(key)
            except ValueError:
                raise ValidationError(f"Key '{key}' is not a doubled F value")
            if F_x2 < 0:
                raise ValidationError(f"Key '{key}' is negative")

    @validates_schema
    def validate_intervals(self, data, **kwargs):
        intervals = {int(k): v for k, v in data["hyperfine_intervals"].items()}
        base = data["base_frequency_rad_s"]
        errors = []
        for F_x2, interval in sorted(intervals.items()):
            if abs(interval) >= MAX_INTERVAL_RATIO * base:
                errors.append(
                    f"F={half_str(F_x2)} interval {interval:g} rad/s is not small "
                    f"compared to base frequency {base:g} rad/s"
                )
        if intervals.get(REFERENCE_F_X2, 0.0) != 0.0:
            errors.append("F=1 interval must be 0 (reference level)")
        if errors:
            raise ValidationError(errors, "hyperfine_intervals")


class SpeciesSchema(Schema):
    name = fields.Str(missing=None)
    nuclear_spin_x2 = fields.Int(required=True, validate=validate.Range(min=0))
    lower = fields.Nested(
        LowerManifoldSchema, missing=lambda: dict(DEFAULT_LOWER_MANIFOLD)
    )
    lines = fields.Nested(
        TransitionLineSchema, many=True, required=True, validate=validate.Length(min=1)
    )

    @validates_schema
    def validate_lines(self, data, **kwargs):
        nuclear_spin_x2 = data["nuclear_spin_x2"]
        lower = data["lower"]
        seen = set()
        errors = {}
        for index, line in enumerate(data["lines"]):
            line_errors = []
            n = lower["n"] if line["n"] is None else line["n"]
            manifold = (n, line["L"], line["upper_J_x2"])
            if manifold in seen:
                line_errors.append(
                    f"Manifold n={n}, L={line['L']}, "
                    f"J={half_str(line['upper_J_x2'])} is listed twice"
                )
            seen.add(manifold)
            if (line["upper_J_x2"] - lower["J_x2"]) % 2:
                line_errors.append("Upper and lower J differ by a half-integer")
            elif (
                abs(line["upper_J_x2"] - lower["J_x2"]) > 2
                or abs(line["L"] - lower["L"]) != 1
            ):
                line_errors.append("Line is not dipole-coupled to the lower manifold")

            allowed = set(coupled_range(line["upper_J_x2"], nuclear_spin_x2))
            present = {int(k) for k in line["hyperfine_intervals"]}
            for F_x2 in sorted(allowed - present):
                line_errors.append(f"missing F={half_str(F_x2)} interval")
            for F_x2 in sorted(present - allowed):
                line_errors.append(
                    f"F={half_str(F_x2)} is not allowed for "
                    f"J={half_str(line['upper_J_x2'])}, I={half_str(nuclear_spin_x2)}"
                )
            if line_errors:
                errors[index] = line_errors
        if errors:
            raise ValidationError({"lines": errors})

    @post_load
    def make_species(self, data, **kwargs):
        lower = data["lower"]
        lines = tuple(
            TransitionLine(
                n=lower["n"] if line["n"] is None else line["n"],
                L=line["L"],
                upper_J_x2=line["upper_J_x2"],
                reduced_dipole=line["reduced_dipole_Cm"],
                base_frequency=line["base_frequency_rad_s"],
                nuclear_spin_x2=data["nuclear_spin_x2"],
                hyperfine_intervals={
                    int(k): v for k, v in line["hyperfine_intervals"].items()
                },
                below=line["below"],
                lower_manifold=(lower["n"], lower["L"], lower["J_x2"]),
            )
            for line in data["lines"]
        )
        return SpeciesData(
            nuclear_spin_x2=data["nuclear_spin_x2"],
            lines=lines,
            lower_n=lower["n"],
            lower_L=lower["L"],
            lower_J_x2=lower["J_x2"],
            name=data["name"],
        )


def _flatten(messages, prefix=""):
    if isinstance(messages, dict):
        for key, value in messages.items():
            yield from _flatten(value, f"{prefix}{key}.")
    elif isinstance(messages, list):
        for value in messages:
            yield from _flatten(value, prefix)
    else:
        yield f"{prefix.rstrip('.')}: {messages}"


def load_species(document: Union[str, bytes, Mapping]) -> SpeciesData:
    """
    Loads and validates species document (JSON text or decoded mapping)

    :raises SpeciesDataError: malformed document or data invariant violation
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except ValueError as e:
            raise SpeciesDataError(f"Malformed species document: {e}")
    if not isinstance(document, Mapping):
        raise SpeciesDataError("Species document must be a JSON object")
    try:
        species = SpeciesSchema().load(document)
    except ValidationError as e:
        raise SpeciesDataError(
            "Invalid species document: " + "; ".join(_flatten(e.messages)),
            e.messages,
        )
    logger.info(
        "Species loaded", extra={"species": species.name, "lines": len(species.lines)}
    )
    return species


def load_species_file(path: str) -> SpeciesData:
    try:
        with open(path, "rb") as f:
            document = f.read()
    except OSError as e:
        raise SpeciesDataError(f"Can't read species document {path}: {e}")
    return load_species(document)

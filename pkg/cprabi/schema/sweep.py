from marshmallow import (
    Schema,
    ValidationError,
    fields,
    post_load,
    validate,
    validates_schema,
)

from cprabi.model.sweep import ReportConfig, SweepConfig


def _positive(value):
    if not value > 0:
        raise ValidationError("Value must be strictly positive")


class SweepConfigSchema(Schema):
    z_min = fields.Float(required=True, validate=_positive)
    z_max = fields.Float(required=True, validate=_positive)
    points = fields.Int(required=True, validate=validate.Range(min=2))
    spacing = fields.Str(missing="linear", validate=validate.OneOf(["linear", "log"]))
    species_path = fields.Str(required=True)
    xi = fields.Float(missing=None, validate=_positive)
    output_path = fields.Str(missing=None)
    tolerance = fields.Float(required=True, validate=_positive)
    workers = fields.Int(missing=1, validate=validate.Range(min=1))

    @validates_schema
    def validate_range(self, data, **kwargs):
        if data["z_min"] >= data["z_max"]:
            raise ValidationError("z_min must be lower than z_max", "z_min")

    @post_load
    def make_config(self, data, **kwargs):
        return SweepConfig(**data)


class ReportConfigSchema(Schema):
    z = fields.Float(required=True, validate=_positive)
    species_path = fields.Str(required=True)
    xi = fields.Float(missing=None, validate=_positive)
    tolerance = fields.Float(required=True, validate=_positive)
    # Sampling times (s), by default spread over one Rabi cycle
    times = fields.List(
        fields.Float(validate=validate.Range(min=0)), missing=None, allow_none=True
    )

    @post_load
    def make_config(self, data, **kwargs):
        if data["times"] is not None:
            data["times"] = tuple(data["times"])
        return ReportConfig(**data)

"""Serialized problem instances.

An instance is a JSON document listing the cells of a simple vector
function:

.. code-block:: json

    {
        "version": 1,
        "coordinates": [
            {"scalar": {"mu": 1, "a": 1, "b": 2, "x": 1}},
            {"profile": {"mu": 2, "k": [[0.5, 3], [2, 1]]}},
            {"levels": [[3, 1], [1, 2]], "mu": 1}
        ]
    }

``k`` lists ``[right_endpoint, value]`` pairs of the derivative of the
K-profile, the tail being 0.
"""

import json
from pathlib import Path
from typing import Annotated
from typing import List
from typing import Literal
from typing import Tuple
from typing import Union

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import field_validator

from .alloc import SimpleVectorFunction
from .errors import InstanceFormatError
from .errors import InstanceValidationError
from .errors import add_note
from .kfunc import KProfile
from .kfunc import WeightedScalarCouple
from .kfunc import l1_linf_profile
from .kfunc import scalar_couple_profile
from .stepfn import StepFunction
from .stepfn import ValueMassList

INSTANCE_VERSION = 1

Finite = Annotated[float, Field(allow_inf_nan=False)]
PositiveFinite = Annotated[float, Field(gt=0, allow_inf_nan=False)]
NonNegativeFinite = Annotated[float, Field(ge=0, allow_inf_nan=False)]


class ScalarSpec(BaseModel):
    """A weighted scalar couple :math:`(a|\\cdot|, b|\\cdot|)` and its element
    ``x`` on a cell of mass ``mu``."""

    model_config = ConfigDict(extra="forbid")

    mu: PositiveFinite = 1.0
    a: PositiveFinite
    b: PositiveFinite
    x: Finite


class ScalarCoordinate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scalar: ScalarSpec


class ProfileSpec(BaseModel):
    """An explicit K-profile given by its derivative."""

    model_config = ConfigDict(extra="forbid")

    mu: PositiveFinite = 1.0
    k: List[Tuple[PositiveFinite, NonNegativeFinite]]

    @field_validator("k")
    @classmethod
    def check_monotone(cls, pairs):
        for (left, high), (right, low) in zip(pairs, pairs[1:]):
            if right <= left:
                raise ValueError("k breakpoints must be strictly increasing")
            if low > high:
                raise ValueError("k values must be nonincreasing")
        return pairs


class ProfileCoordinate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    profile: ProfileSpec


class LevelsCoordinate(BaseModel):
    """A scalar simple function for the couple :math:`(L_1, L_\\infty)`,
    given by ``[value, mass]`` levels."""

    model_config = ConfigDict(extra="forbid")

    levels: List[Tuple[NonNegativeFinite, PositiveFinite]]
    mu: PositiveFinite = 1.0


Coordinate = Union[ScalarCoordinate, ProfileCoordinate, LevelsCoordinate]


class Instance(BaseModel):
    """A versioned list of coordinates."""

    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = INSTANCE_VERSION
    coordinates: List[Coordinate] = []

    def to_vector_function(self) -> SimpleVectorFunction:
        cells = []
        for coordinate in self.coordinates:
            if isinstance(coordinate, ScalarCoordinate):
                spec = coordinate.scalar
                couple = WeightedScalarCouple(spec.a, spec.b, spec.x)
                cells.append((spec.mu, scalar_couple_profile(couple)))
            elif isinstance(coordinate, ProfileCoordinate):
                spec = coordinate.profile
                cells.append((spec.mu, KProfile(StepFunction.from_pairs(spec.k))))
            else:
                levels = ValueMassList(tuple(coordinate.levels))
                cells.append((coordinate.mu, l1_linf_profile(levels)))
        return SimpleVectorFunction(tuple(cells))


def _describe(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}"
        for error in exc.errors()
    )


def parse_instance(text: str, source=None) -> Instance:
    """Parse and validate an instance document.

    :raises InstanceFormatError: If ``text`` is not JSON, the message giving
        the line and column of the problem.
    :raises InstanceValidationError: If the payload does not follow the
        schema, the message listing the failing locations.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        error = InstanceFormatError(
            f"Invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            source=source,
        )
        raise add_note(error, str(exc)) from exc

    try:
        return Instance.model_validate(payload)
    except ValidationError as exc:
        error = InstanceValidationError(
            f"Invalid instance: {_describe(exc)}", source=source or payload
        )
        raise add_note(error, str(exc)) from exc


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(encoding="utf-8"), source=str(path))


def dump_instance(instance: Instance) -> str:
    return instance.model_dump_json(indent=2) + "\n"

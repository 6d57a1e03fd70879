"""Variety names accepted on the command line: ``P<n>`` factors joined by ``x``."""

import logging
import re
from functools import lru_cache

from algebra.errors import ParseError

from .variety import VarietyModel, product, projective_space

logger = logging.getLogger(__name__)

FACTOR_RE = re.compile(r"P(\d+)")


@lru_cache(maxsize=None)
def get_variety(name: str) -> VarietyModel:
    """Model for ``P3``, ``P2xP1``, ``P1xP1xP1``, ...

    P^n alone uses the generator H; on products the i-th factor's
    hyperplane class is ``f{i}``.

    Raises:
        ParseError: for names outside the catalogue
    """
    text = name.strip()
    position = 0
    dimensions = []
    for index, piece in enumerate(text.split('x')):
        match = FACTOR_RE.fullmatch(piece)
        if match is None or int(match.group(1)) < 1:
            raise ParseError(f"Unknown variety {name!r}; expected P<n> factors joined by 'x'", position, piece)
        dimensions.append(int(match.group(1)))
        position += len(piece) + 1
    if len(dimensions) == 1:
        return projective_space(dimensions[0])
    model = projective_space(dimensions[0], "f1")
    for i, n in enumerate(dimensions[1:], start=2):
        model = product(model, projective_space(n, f"f{i}"))
    logger.debug(f"Built catalogue variety {model.name} (dimension {model.dimension}, h11={model.h11})")
    return model

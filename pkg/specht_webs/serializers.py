from __future__ import annotations

import json
from typing import Any

from .diagrams import ForkDiagram
from .lincomb import LinComb
from .webs import CROSSING, CrossingDiagram, Web


def dumps(data: Any) -> str:
    """Stable JSON text: the same data always gives the same bytes."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def diagram_sum_json(combination: LinComb[ForkDiagram]) -> list[dict[str, Any]]:
    return combination.to_json(lambda diagram: diagram.to_json())


def load_item(text: str) -> ForkDiagram | Web:
    """
    Read a fork diagram (an object with ``arcs``) or a web (an object with half-edge arrays).

    Raises:
        ValueError: If the text is not JSON or describes neither
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"Input is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ValueError("Input must be a JSON object describing a fork diagram or a web")
    if "arcs" in data:
        return ForkDiagram.from_json(data)
    if "twin" in data:
        if CROSSING in data.get("tags", []):
            return CrossingDiagram.from_json(data)
        return Web.from_json(data)
    raise ValueError("Input has neither 'arcs' (fork diagram) nor 'twin' (web)")

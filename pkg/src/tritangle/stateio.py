"""JSON serialization of states and report payloads.

State files are JSON objects {"amplitudes": [[re, im] x 8]} in the
documented abc binary order, with an optional "label" string.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InvalidStateError
from .states import PureState


def state_to_dict(state: PureState, label: str | None = None) -> dict:
    payload = {"amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes]}
    if label is not None:
        payload["label"] = label
    return payload


def state_from_dict(payload: dict) -> tuple[PureState, str | None]:
    if not isinstance(payload, dict) or "amplitudes" not in payload:
        raise InvalidStateError('state file must be an object with an "amplitudes" key')
    raw = payload["amplitudes"]
    if not isinstance(raw, list) or len(raw) != 8:
        raise InvalidStateError("amplitudes must be a list of 8 [re, im] pairs")
    amps = np.empty(8, dtype=complex)
    for k, entry in enumerate(raw):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise InvalidStateError(f"amplitude {k} must be a [re, im] pair")
        try:
            amps[k] = complex(float(entry[0]), float(entry[1]))
        except (TypeError, ValueError) as exc:
            raise InvalidStateError(f"amplitude {k} is not numeric") from exc
    label = payload.get("label")
    if label is not None and not isinstance(label, str):
        raise InvalidStateError("label must be a string when present")
    return PureState(amps), label


def load_state(path: str) -> tuple[PureState, str | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"{path}: invalid JSON ({exc})") from exc
    return state_from_dict(payload)


def save_state(path: str, state: PureState, label: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(state_to_dict(state, label), fh)
        fh.write("\n")


def _jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return [[v.real, v.imag] for v in value.ravel()]
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(mat, dtype=complex)]


def to_json_payload(obj) -> dict:
    """Dataclass or dict -> JSON-ready dict with complex split into [re, im]."""
    if hasattr(obj, "__dataclass_fields__"):
        data = {name: getattr(obj, name) for name in obj.__dataclass_fields__}
    elif isinstance(obj, dict):
        data = obj
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")
    return {k: _jsonable(v) for k, v in data.items()}

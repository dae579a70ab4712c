"""JSON serialization of states.

Format: an object with keys

* ``dims``: list of local dimensions, subsystem 1 first,
* ``kind``: ``"vector"`` or ``"density"``,
* ``data``: nested row-major lists whose innermost elements are
  two-element ``[re, im]`` pairs.
"""

import json

import numpy as np

from .tensor import as_density, as_vector


def _encode(arr):
    stacked = np.stack([np.real(arr), np.imag(arr)], axis=-1)
    return stacked.tolist()


def _decode(data):
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("innermost entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_dict(state, dims):
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        kind = "vector"
        state = as_vector(state, dims)
    elif state.ndim == 2:
        kind = "density"
        state = as_density(state, dims)
    else:
        raise ValueError("state must be a vector or a square matrix")
    return {"dims": [int(d) for d in dims], "kind": kind, "data": _encode(state)}


def dict_to_state(obj):
    """Returns (state, dims, kind)."""
    dims = tuple(int(d) for d in obj["dims"])
    kind = obj["kind"]
    data = _decode(obj["data"])
    if kind == "vector":
        return as_vector(data, dims), dims, kind
    if kind == "density":
        return as_density(data, dims), dims, kind
    raise ValueError("kind must be 'vector' or 'density', got %r" % (kind,))


def save_state(path, state, dims):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state, dims), fh)
        fh.write("\n")


def load_state(path):
    with open(path) as fh:
        obj = json.load(fh)
    return dict_to_state(obj)

"""Binary policy checkpoints.

Layout: the 9 magic bytes SHIREPOL1, then little-endian uint32 values obsDim, nActions,
the number of hidden layers and each hidden width, then every parameter array as row-major
little-endian float64, actor trunk before critic trunk, weights before biases per layer.
"""
import logging
import os
import struct
import numpy as np
from intuitionrl import errors
from intuitionrl.nn import params as paramsmodule

MAGIC = b"SHIREPOL1"
_UINT32 = struct.Struct("<I")
_FLOAT64 = np.dtype("<f8")


def _shapes(obsDim, nActions, hiddenSizes):
    shapes = []
    for outputs in (nActions, 1):
        sizes = [obsDim] + list(hiddenSizes) + [outputs]
        for layer in range(len(sizes) - 1):
            shapes.append((sizes[layer], sizes[layer + 1]))
            shapes.append((sizes[layer + 1],))
    return shapes


def serialize(params):
    hiddenSizes = params.hiddenSizes()
    header = [params.obsDim(), params.nActions(), len(hiddenSizes)] + list(hiddenSizes)
    chunks = [MAGIC] + [_UINT32.pack(value) for value in header]
    for name in paramsmodule.parameterNames(params.nLayers()):
        chunks.append(np.ascontiguousarray(params.array(name), dtype=_FLOAT64).tobytes())
    return b"".join(chunks)


def _readUint32(data, offset, path):
    if offset + _UINT32.size > len(data):
        raise errors.CheckpointError("Checkpoint %(path)s is truncated inside its header" % dict(path=path))
    return _UINT32.unpack_from(data, offset)[0], offset + _UINT32.size


def deserialize(data, path="<memory>"):
    if not data.startswith(MAGIC):
        raise errors.CheckpointError("%(path)s is not a policy checkpoint (bad magic)" % dict(path=path))
    offset = len(MAGIC)
    obsDim, offset = _readUint32(data, offset, path)
    nActions, offset = _readUint32(data, offset, path)
    nHidden, offset = _readUint32(data, offset, path)
    hiddenSizes = []
    for unused in range(nHidden):
        size, offset = _readUint32(data, offset, path)
        hiddenSizes.append(size)
    if obsDim < 1 or nActions < 2 or nHidden < 1 or min(hiddenSizes) < 1:
        raise errors.CheckpointError("Checkpoint %(path)s declares an invalid network shape" %
                                     dict(path=path))
    shapes = _shapes(obsDim, nActions, hiddenSizes)
    expected = offset + sum(int(np.prod(shape)) for shape in shapes) * _FLOAT64.itemsize
    if len(data) != expected:
        raise errors.CheckpointError(
            "Checkpoint %(path)s has %(actual)d bytes, its header implies %(expected)d" %
            dict(path=path, actual=len(data), expected=expected))
    arrays = []
    for name, shape in zip(paramsmodule.parameterNames(len(hiddenSizes) + 1), shapes):
        count = int(np.prod(shape))
        values = np.frombuffer(data, dtype=_FLOAT64, count=count, offset=offset)
        arrays.append((name, values.astype(np.float64).reshape(shape)))
        offset += count * _FLOAT64.itemsize
    return paramsmodule.ActorCriticParams(arrays)


def saveCheckpoint(params, path):
    temporary = path + ".tmp"
    with open(temporary, "wb") as f:
        f.write(serialize(params))
    os.rename(temporary, path)
    logging.info("Saved policy checkpoint %(path)s", dict(path=path))


def loadCheckpoint(path, spec=None):
    """Reads a checkpoint; with an environment spec, also checks that the policy fits it."""
    with open(path, "rb") as f:
        data = f.read()
    params = deserialize(data, path)
    if spec is not None and (params.obsDim() != spec.featureDim or params.nActions() != spec.nActions):
        raise errors.CheckpointError(
            "Checkpoint %(path)s holds a policy for input %(obsDim)d with %(nActions)d actions; environment "
            "%(env)s needs input %(featureDim)d with %(envActions)d actions" % dict(
                path=path, obsDim=params.obsDim(), nActions=params.nActions(), env=spec.name,
                featureDim=spec.featureDim, envActions=spec.nActions))
    logging.info("Loaded policy checkpoint %(path)s", dict(path=path))
    return params

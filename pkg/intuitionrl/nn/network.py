import numpy as np
from intuitionrl import errors
from intuitionrl.nn import params as paramsmodule


class Activations:
    """Per-trunk layer inputs and tanh outputs kept from a forward pass for the backward pass."""

    def __init__(self, inputs, hidden):
        self.inputs = inputs
        self.hidden = hidden


def _checkObservations(params, obsBatch):
    obsBatch = np.asarray(obsBatch, dtype=np.float64)
    if obsBatch.ndim != 2 or obsBatch.shape[0] < 1:
        raise errors.ConfigurationError("Observation batch must be a non-empty matrix, got shape %s" %
                                        (obsBatch.shape,))
    if obsBatch.shape[1] != params.obsDim():
        raise errors.ConfigurationError(
            "Observation width %(width)d does not match network input width %(obsDim)d" %
            dict(width=obsBatch.shape[1], obsDim=params.obsDim()))
    return obsBatch


def _trunkForward(params, trunk, obsBatch):
    nLayers = params.nLayers()
    activation = obsBatch
    hidden = []
    for layer in range(nLayers - 1):
        activation = np.tanh(activation @ params.array("%s.w%d" % (trunk, layer)) +
                             params.array("%s.b%d" % (trunk, layer)))
        hidden.append(activation)
    last = nLayers - 1
    output = activation @ params.array("%s.w%d" % (trunk, last)) + params.array("%s.b%d" % (trunk, last))
    return output, hidden


def forwardWithActivations(params, obsBatch):
    obsBatch = _checkObservations(params, obsBatch)
    logits, actorHidden = _trunkForward(params, "actor", obsBatch)
    values, criticHidden = _trunkForward(params, "critic", obsBatch)
    activations = Activations(obsBatch, dict(actor=actorHidden, critic=criticHidden))
    return logits, values[:, 0], activations


def forward(params, obsBatch):
    logits, values, _ = forwardWithActivations(params, obsBatch)
    return logits, values


def _trunkBackward(params, trunk, activations, outputGradient, gradients):
    hidden = activations.hidden[trunk]
    nLayers = params.nLayers()
    delta = outputGradient
    for layer in reversed(range(nLayers)):
        layerInput = activations.inputs if layer == 0 else hidden[layer - 1]
        gradients["%s.w%d" % (trunk, layer)] = layerInput.T @ delta
        gradients["%s.b%d" % (trunk, layer)] = np.sum(delta, axis=0)
        if layer > 0:
            delta = (delta @ params.array("%s.w%d" % (trunk, layer)).T) * (1.0 - layerInput * layerInput)


def backward(params, activations, logitsGradient, valuesGradient):
    """Exact reverse-mode gradients given dLoss/dLogits (n x nActions) and dLoss/dValues (n,)."""
    if not (np.all(np.isfinite(logitsGradient)) and np.all(np.isfinite(valuesGradient))):
        raise errors.NumericalFailureError("Non-finite loss gradient reached the network")
    gradients = dict()
    _trunkBackward(params, "actor", activations, logitsGradient, gradients)
    _trunkBackward(params, "critic", activations, np.asarray(valuesGradient)[:, None], gradients)
    result = paramsmodule.Gradients([(name, gradients[name]) for name in params.names()])
    if not result.isFinite():
        raise errors.NumericalFailureError("Non-finite parameter gradient")
    return result

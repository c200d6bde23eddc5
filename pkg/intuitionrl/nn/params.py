import collections
import numpy as np


TRUNKS = ("actor", "critic")


def parameterNames(nLayers):
    names = []
    for trunk in TRUNKS:
        for layer in range(nLayers):
            names.append("%(trunk)s.w%(layer)d" % dict(trunk=trunk, layer=layer))
            names.append("%(trunk)s.b%(layer)d" % dict(trunk=trunk, layer=layer))
    return names


class ParameterSet:
    """Ordered name -> float64 array mapping shared by parameters, gradients and Adam moments."""

    def __init__(self, arrays):
        self._arrays = collections.OrderedDict(arrays)

    def names(self):
        return list(self._arrays.keys())

    def array(self, name):
        return self._arrays[name]

    def items(self):
        return list(self._arrays.items())

    def arrays(self):
        return list(self._arrays.values())

    def copy(self):
        return self.__class__([(name, np.array(value, dtype=np.float64)) for name, value in self.items()])

    def map(self, function):
        return self.__class__([(name, function(value)) for name, value in self.items()])

    def zerosLike(self):
        return self.map(np.zeros_like)

    def isFinite(self):
        return all(np.all(np.isfinite(value)) for value in self.arrays())

    def globalNorm(self):
        return float(np.sqrt(sum(float(np.sum(value * value)) for value in self.arrays())))

    def isCongruentWith(self, other):
        if self.names() != other.names():
            return False
        return all(self.array(name).shape == other.array(name).shape for name in self.names())

    def __eq__(self, other):
        if not isinstance(other, ParameterSet) or not self.isCongruentWith(other):
            return False
        return all(np.array_equal(self.array(name), other.array(name)) for name in self.names())

    def __ne__(self, other):
        return not self.__eq__(other)


class ActorCriticParams(ParameterSet):
    def layerSizes(self, trunk="actor"):
        sizes = []
        layer = 0
        while "%s.w%d" % (trunk, layer) in self._arrays:
            weights = self._arrays["%s.w%d" % (trunk, layer)]
            if not sizes:
                sizes.append(weights.shape[0])
            sizes.append(weights.shape[1])
            layer += 1
        return sizes

    def nLayers(self):
        return len(self.layerSizes()) - 1

    def obsDim(self):
        return self.layerSizes()[0]

    def nActions(self):
        return self.layerSizes()[-1]

    def hiddenSizes(self):
        return tuple(self.layerSizes()[1:-1])

    def validate(self):
        for trunk in TRUNKS:
            sizes = self.layerSizes(trunk)
            for layer in range(len(sizes) - 1):
                weights = self.array("%s.w%d" % (trunk, layer))
                bias = self.array("%s.b%d" % (trunk, layer))
                assert weights.shape == (sizes[layer], sizes[layer + 1]), weights.shape
                assert bias.shape == (sizes[layer + 1],), bias.shape
        assert self.layerSizes("critic")[:-1] == self.layerSizes("actor")[:-1]
        assert self.layerSizes("critic")[-1] == 1


class Gradients(ParameterSet):
    def clipByGlobalNorm(self, maxNorm):
        norm = self.globalNorm()
        if norm <= maxNorm:
            return self, norm
        scale = maxNorm / (norm + 1e-6)
        return self.map(lambda value: value * scale), norm


def _orthogonal(rng, fanIn, fanOut, gain):
    flat = rng.standard_normal((max(fanIn, fanOut), min(fanIn, fanOut)))
    q, r = np.linalg.qr(flat)
    q = q * np.sign(np.diag(r))
    if fanIn < fanOut:
        q = q.T
    return gain * q[:fanIn, :fanOut]


def initialize(obsDim, nActions, rng, hiddenSizes=(64, 64)):
    """Orthogonal initialization.

    Gain sqrt(2) on hidden layers, 0.01 on the actor head, 1 on the critic head."""
    assert obsDim >= 1 and nActions >= 2
    arrays = []
    for trunk, outputs, headGain in (("actor", nActions, 0.01), ("critic", 1, 1.0)):
        sizes = [obsDim] + list(hiddenSizes) + [outputs]
        for layer in range(len(sizes) - 1):
            isHead = layer == len(sizes) - 2
            gain = headGain if isHead else np.sqrt(2.0)
            arrays.append(("%s.w%d" % (trunk, layer), _orthogonal(rng, sizes[layer], sizes[layer + 1], gain)))
            arrays.append(("%s.b%d" % (trunk, layer), np.zeros(sizes[layer + 1])))
    return ActorCriticParams(arrays)

import numpy as np
from intuitionrl import errors
from intuitionrl.nn import params as paramsmodule


class AdamState:
    def __init__(self, firstMoment, secondMoment, step=0):
        self._firstMoment = firstMoment
        self._secondMoment = secondMoment
        self._step = step

    @classmethod
    def zerosLike(cls, parameters):
        zeros = paramsmodule.ParameterSet(parameters.zerosLike().items())
        return cls(zeros, zeros.copy(), 0)

    def firstMoment(self):
        return self._firstMoment

    def secondMoment(self):
        return self._secondMoment

    def step(self):
        return self._step


def adamStep(parameters, gradients, state, lr, beta1=0.9, beta2=0.999, eps=1e-8):
    assert parameters.isCongruentWith(gradients)
    assert parameters.isCongruentWith(state.firstMoment())
    step = state.step() + 1
    firstMoment = []
    secondMoment = []
    updated = []
    for name in parameters.names():
        gradient = gradients.array(name)
        m = beta1 * state.firstMoment().array(name) + (1.0 - beta1) * gradient
        v = beta2 * state.secondMoment().array(name) + (1.0 - beta2) * gradient * gradient
        mHat = m / (1.0 - beta1 ** step)
        vHat = v / (1.0 - beta2 ** step)
        updated.append((name, parameters.array(name) - lr * mHat / (np.sqrt(vHat) + eps)))
        firstMoment.append((name, m))
        secondMoment.append((name, v))
    result = parameters.__class__(updated)
    if not result.isFinite():
        raise errors.NumericalFailureError("Adam step %(step)d produced non-finite parameters" %
                                           dict(step=step))
    newState = AdamState(paramsmodule.ParameterSet(firstMoment),
                         paramsmodule.ParameterSet(secondMoment), step)
    return result, newState

import numpy as np
from intuitionrl import errors


def logSoftmax(logits):
    logits = np.asarray(logits, dtype=np.float64)
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=-1, keepdims=True))


def softmax(logits):
    return np.exp(logSoftmax(logits))


def sampleAction(logits, rng):
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise errors.NumericalFailureError("Cannot sample from non-finite logits %s" % (logits,))
    logProbabilities = logSoftmax(logits)
    cumulative = np.cumsum(np.exp(logProbabilities))
    action = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    action = min(action, len(logits) - 1)
    return action, float(logProbabilities[action])


def greedyAction(logits):
    return int(np.argmax(logits))


def logprobEntropy(logits, actions):
    logProbabilities = logSoftmax(logits)
    actions = np.asarray(actions, dtype=np.int64)
    assert logProbabilities.shape[0] == actions.shape[0]
    logprobs = logProbabilities[np.arange(len(actions)), actions]
    probabilities = np.exp(logProbabilities)
    entropies = -np.sum(probabilities * logProbabilities, axis=-1)
    return logprobs, entropies


def logprobGradient(logits, actions):
    """d log softmax(z)[a] / dz, one row per sample."""
    probabilities = softmax(logits)
    gradient = -probabilities
    gradient[np.arange(len(actions)), actions] += 1.0
    return gradient


def entropyGradient(logits):
    """dH/dz = -p (log p + H), one row per sample."""
    logProbabilities = logSoftmax(logits)
    probabilities = np.exp(logProbabilities)
    entropies = -np.sum(probabilities * logProbabilities, axis=-1, keepdims=True)
    return -probabilities * (logProbabilities + entropies)

import numpy as np


def computeGAE(buffer, gamma, lam, lastValue=None):
    """Generalized advantage estimates and value targets for a full buffer.

    Nothing is bootstrapped past a terminated step. A truncated step bootstraps from the
    value stored for its final observation, and the estimate restarts at every episode end."""
    assert buffer.isFull()
    if lastValue is None:
        lastValue = buffer.lastValue
    size = buffer.size()
    advantages = np.zeros(size)
    gae = 0.0
    for t in reversed(range(size)):
        if buffer.terminated[t]:
            nextValue = 0.0
            continues = 0.0
        elif buffer.truncated[t]:
            nextValue = buffer.bootstrapValues[t]
            continues = 0.0
        else:
            nextValue = buffer.values[t + 1] if t + 1 < size else lastValue
            continues = 1.0
        delta = buffer.rewards[t] + gamma * nextValue - buffer.values[t]
        gae = delta + gamma * lam * continues * gae
        advantages[t] = gae
    return advantages, advantages + buffer.values

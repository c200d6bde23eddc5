import collections
import logging
import numpy as np
from intuitionrl import errors
from intuitionrl.nn import distributions
from intuitionrl.nn import network

_logger = logging.getLogger('rollout')

Transition = collections.namedtuple('Transition', 'obs action reward terminated truncated logprob value')


class RolloutBuffer:
    def __init__(self, capacity, obsDim, featurize=None):
        assert capacity >= 1
        self._featurize = featurize
        self._features = None
        self._capacity = capacity
        self._size = 0
        self.obs = np.zeros((capacity, obsDim))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity)
        self.terminated = np.zeros(capacity, dtype=bool)
        self.truncated = np.zeros(capacity, dtype=bool)
        self.logprobs = np.zeros(capacity)
        self.values = np.zeros(capacity)
        self.bootstrapValues = np.zeros(capacity)
        self.advantages = None
        self.returns = None
        self.lastValue = 0.0
        self.episodeReturns = []

    def capacity(self):
        return self._capacity

    def size(self):
        return self._size

    def isFull(self):
        return self._size == self._capacity

    def add(self, transition, bootstrapValue=0.0):
        assert not self.isFull()
        assert transition.logprob <= 0.0, transition.logprob
        index = self._size
        self.obs[index] = transition.obs
        self.actions[index] = transition.action
        self.rewards[index] = transition.reward
        self.terminated[index] = transition.terminated
        self.truncated[index] = transition.truncated
        self.logprobs[index] = transition.logprob
        self.values[index] = transition.value
        self.bootstrapValues[index] = bootstrapValue
        self._size += 1

    def transition(self, index):
        assert 0 <= index < self._size
        return Transition(self.obs[index], int(self.actions[index]), float(self.rewards[index]),
                          bool(self.terminated[index]), bool(self.truncated[index]),
                          float(self.logprobs[index]), float(self.values[index]))

    def features(self):
        """Network inputs for the stored observations."""
        if self._features is None:
            self._features = self.obs if self._featurize is None else self._featurize(self.obs)
        return self._features

    def episodeEnds(self):
        return np.logical_or(self.terminated, self.truncated)

    def setAdvantages(self, advantages, returns):
        if not np.all(np.isfinite(advantages)):
            raise errors.NumericalFailureError("Non-finite advantages")
        self.advantages = np.asarray(advantages, dtype=np.float64)
        self.returns = np.asarray(returns, dtype=np.float64)


def _valueOf(params, spec, obs):
    unused, values = network.forward(params, spec.featurize(obs[None, :]))
    return float(values[0])


def collectRollout(env, params, nSteps, rng):
    """Steps env for exactly nSteps transitions, resetting finished episodes.

    An env left mid-episode by a previous call continues from where it stopped."""
    spec = env.spec()
    if env.isDone():
        env.reset()
    buffer = RolloutBuffer(nSteps, spec.obsDim, spec.featurize)
    obs = env.observation()
    episodeReturn = 0.0
    startedHere = env.elapsedSteps() == 0
    for unused in range(nSteps):
        logits, values = network.forward(params, spec.featurize(obs[None, :]))
        action, logprob = distributions.sampleAction(logits[0], rng)
        result = env.step(action)
        bootstrapValue = 0.0
        if result.truncated:
            bootstrapValue = _valueOf(params, spec, result.obs)
        buffer.add(Transition(obs, action, result.reward, result.terminated, result.truncated, logprob,
                              float(values[0])), bootstrapValue)
        episodeReturn += result.reward
        if result.terminated or result.truncated:
            _logger.debug("Episode finished with return %(return)s after %(steps)d steps", {
                "return": episodeReturn, "steps": env.elapsedSteps()})
            if startedHere:
                buffer.episodeReturns.append(episodeReturn)
            episodeReturn = 0.0
            startedHere = True
            obs = env.reset()
        else:
            obs = result.obs
    buffer.lastValue = _valueOf(params, spec, obs)
    return buffer

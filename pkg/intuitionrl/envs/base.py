import collections
import numpy as np
from intuitionrl import errors


StepResult = collections.namedtuple('StepResult', 'obs reward terminated truncated info')


class EnvSpec:
    def __init__(self, name, obsDim, nActions, maxEpisodeSteps, actionNames, ssr=None, bbrTarget=None,
                 featureDim=None):
        assert nActions >= 2
        assert maxEpisodeSteps >= 1
        assert len(actionNames) == nActions
        self.name = name
        self.obsDim = obsDim
        self.nActions = nActions
        self.maxEpisodeSteps = maxEpisodeSteps
        self.actionNames = list(actionNames)
        self.ssr = ssr
        self.bbrTarget = bbrTarget
        self.featureDim = obsDim if featureDim is None else featureDim

    def actionIndex(self, actionName):
        if actionName not in self.actionNames:
            raise errors.ConfigurationError(
                "Unknown action '%(action)s' for environment %(env)s; valid: %(valid)s" %
                dict(action=actionName, env=self.name, valid=self.actionNames))
        return self.actionNames.index(actionName)

    def isSolvable(self):
        return self.ssr is not None

    def featurize(self, obsBatch):
        """Network input for a batch of raw observations."""
        return np.asarray(obsBatch, dtype=np.float64).reshape(-1, self.obsDim)


class Environment:
    """Single-owner seeded environment. Subclasses implement _initialState and _transition."""
    SPEC = None

    def __init__(self, seed=None):
        self._rng = np.random.default_rng(seed)
        self._state = None
        self._steps = 0
        self._done = True

    def spec(self):
        return self.SPEC

    def reset(self, seed=None):
        if seed is not None:
            self._rng = np.random.default_rng(seed)
        self._state = self._initialState()
        self._steps = 0
        self._done = False
        return self._observation()

    def step(self, action):
        if self._done:
            raise errors.UsageError("step() called on a finished %(env)s episode; call reset() first" %
                                    dict(env=self.SPEC.name))
        action = int(action)
        if not 0 <= action < self.SPEC.nActions:
            raise errors.UsageError("Invalid action %(action)s for %(env)s" % dict(action=action,
                                                                                    env=self.SPEC.name))
        reward, terminated, info = self._transition(action)
        self._steps += 1
        truncated = not terminated and self._steps >= self.SPEC.maxEpisodeSteps
        self._done = terminated or truncated
        return StepResult(self._observation(), reward, terminated, truncated, info)

    def state(self):
        return self._state

    def observation(self):
        return self._observation()

    def setState(self, state):
        """Places the environment mid-episode at an explicit state."""
        self._state = self._coerceState(state)
        self._steps = 0
        self._done = False

    def elapsedSteps(self):
        return self._steps

    def isDone(self):
        return self._done

    def _coerceState(self, state):
        return np.array(state, dtype=np.float64)

    def _observation(self):
        return np.array(self._state, dtype=np.float64)

    def _initialState(self):
        raise NotImplementedError()

    def _transition(self, action):
        raise NotImplementedError()

import math
import numpy as np
from intuitionrl.envs import base


class MountainCar(base.Environment):
    MIN_POSITION = -1.2
    MAX_POSITION = 0.6
    MAX_SPEED = 0.07
    GOAL_POSITION = 0.5
    FORCE = 0.001
    GRAVITY = 0.0025
    SPEC = base.EnvSpec(name="mountaincar", obsDim=2, nActions=3, maxEpisodeSteps=200,
                        actionNames=["push_left", "no_push", "push_right"], ssr=-110.0)

    def _initialState(self):
        return np.array([self._rng.uniform(low=-0.6, high=-0.4), 0.0])

    def _transition(self, action):
        position, velocity = self._state
        velocity = velocity + (action - 1) * self.FORCE - self.GRAVITY * math.cos(3 * position)
        velocity = min(max(velocity, -self.MAX_SPEED), self.MAX_SPEED)
        position = min(max(position + velocity, self.MIN_POSITION), self.MAX_POSITION)
        if position == self.MIN_POSITION and velocity < 0:
            velocity = 0.0
        self._state = np.array([position, velocity])
        return -1.0, bool(position >= self.GOAL_POSITION), dict()

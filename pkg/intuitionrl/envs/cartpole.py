import math
import numpy as np
from intuitionrl.envs import base


class CartPole(base.Environment):
    GRAVITY = 9.8
    CART_MASS = 1.0
    POLE_MASS = 0.1
    TOTAL_MASS = CART_MASS + POLE_MASS
    HALF_LENGTH = 0.5
    POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
    FORCE = 10.0
    TAU = 0.02
    X_THRESHOLD = 2.4
    THETA_THRESHOLD = 0.2095
    SPEC = base.EnvSpec(name="cartpole", obsDim=4, nActions=2, maxEpisodeSteps=500,
                        actionNames=["push_left", "push_right"], ssr=500.0)

    def _initialState(self):
        return self._rng.uniform(low=-0.05, high=0.05, size=(4,))

    def _transition(self, action):
        x, xDot, theta, thetaDot = self._state
        force = self.FORCE if action == 1 else -self.FORCE
        cosTheta = math.cos(theta)
        sinTheta = math.sin(theta)
        temp = (force + self.POLE_MASS_LENGTH * thetaDot * thetaDot * sinTheta) / self.TOTAL_MASS
        thetaAcc = (self.GRAVITY * sinTheta - cosTheta * temp) / (
            self.HALF_LENGTH * (4.0 / 3.0 - self.POLE_MASS * cosTheta * cosTheta / self.TOTAL_MASS))
        xAcc = temp - self.POLE_MASS_LENGTH * thetaAcc * cosTheta / self.TOTAL_MASS
        x = x + self.TAU * xDot
        xDot = xDot + self.TAU * xAcc
        theta = theta + self.TAU * thetaDot
        thetaDot = thetaDot + self.TAU * thetaAcc
        self._state = np.array([x, xDot, theta, thetaDot])
        terminated = bool(abs(x) > self.X_THRESHOLD or abs(theta) > self.THETA_THRESHOLD)
        return 1.0, terminated, dict()

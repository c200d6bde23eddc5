"""Simplified planar lunar lander.

State is (x, y, vx, vy, theta, omega); the pad is x in [-0.5, 0.5] at y = 0 and theta is
measured counter-clockwise from upright. The main engine accelerates along the body-up
axis (-sin theta, cos theta); fire_left spins the craft counter-clockwise, fire_right
clockwise. Integration is semi-implicit Euler. Reward is the difference of the shaping
potential between consecutive steps, minus fuel costs, plus +100 for a soft landing on
the pad or -100 for a crash or leaving the arena.
"""
import math
import numpy as np
from intuitionrl.envs import base

NOOP, FIRE_LEFT, FIRE_MAIN, FIRE_RIGHT = range(4)


class Lander(base.Environment):
    GRAVITY = 1.625
    MAIN_ACCELERATION = 3.0
    SIDE_ANGULAR_ACCELERATION = 0.15
    DT = 0.02
    START_HEIGHT = 10.0
    LEG_SPREAD = 0.5
    PAD_HALF_WIDTH = 0.5
    SOFT_SPEED = 0.5
    SOFT_ANGLE = 0.2
    X_LIMIT = 10.0
    Y_LIMIT = 15.0
    MAIN_FUEL_COST = 0.3
    SIDE_FUEL_COST = 0.03
    LANDING_BONUS = 100.0
    SPEC = base.EnvSpec(name="lander", obsDim=8, nActions=4, maxEpisodeSteps=1000,
                        actionNames=["noop", "fire_left", "fire_main", "fire_right"])

    def __init__(self, seed=None):
        base.Environment.__init__(self, seed)
        self._potential = None

    @staticmethod
    def potential(state):
        x, y, vx, vy, theta = state[:5]
        return -100.0 * math.sqrt(x * x + y * y) - 100.0 * math.sqrt(vx * vx + vy * vy) - 100.0 * abs(theta)

    def reset(self, seed=None):
        observation = base.Environment.reset(self, seed)
        self._potential = self.potential(self._state)
        return observation

    def setState(self, state):
        base.Environment.setState(self, state)
        self._potential = self.potential(self._state)

    def _initialState(self):
        return np.array([0.0, self.START_HEIGHT, self._rng.uniform(-1.0, 1.0), 0.0, 0.0, 0.0])

    def _legContacts(self, state):
        x, y, vx, vy, theta, omega = state
        lift = self.LEG_SPREAD * math.sin(theta)
        return float(y - lift <= 0.0), float(y + lift <= 0.0)

    def _observation(self):
        leftContact, rightContact = self._legContacts(self._state)
        return np.concatenate([self._state, [leftContact, rightContact]])

    def _transition(self, action):
        x, y, vx, vy, theta, omega = self._state
        ax = 0.0
        ay = -self.GRAVITY
        if action == FIRE_MAIN:
            ax = -math.sin(theta) * self.MAIN_ACCELERATION
            ay = math.cos(theta) * self.MAIN_ACCELERATION - self.GRAVITY
        alpha = 0.0
        if action == FIRE_LEFT:
            alpha = self.SIDE_ANGULAR_ACCELERATION
        elif action == FIRE_RIGHT:
            alpha = -self.SIDE_ANGULAR_ACCELERATION
        vx = vx + ax * self.DT
        vy = vy + ay * self.DT
        omega = omega + alpha * self.DT
        x = x + vx * self.DT
        y = y + vy * self.DT
        theta = theta + omega * self.DT
        self._state = np.array([x, y, vx, vy, theta, omega])
        newPotential = self.potential(self._state)
        shaping = newPotential - self._potential
        self._potential = newPotential
        reward = shaping
        if action == FIRE_MAIN:
            reward -= self.MAIN_FUEL_COST
        elif action in (FIRE_LEFT, FIRE_RIGHT):
            reward -= self.SIDE_FUEL_COST
        terminated = False
        landed = False
        leftContact, rightContact = self._legContacts(self._state)
        if abs(x) > self.X_LIMIT or y > self.Y_LIMIT:
            terminated = True
        elif leftContact or rightContact or y <= 0.0:
            terminated = True
            landed = (abs(x) <= self.PAD_HALF_WIDTH and abs(vx) <= self.SOFT_SPEED and
                      abs(vy) <= self.SOFT_SPEED and abs(theta) <= self.SOFT_ANGLE)
        if terminated:
            reward += self.LANDING_BONUS if landed else -self.LANDING_BONUS
        return reward, terminated, dict(shaping=shaping, landed=landed)

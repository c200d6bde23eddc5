"""Canonical 5x5 taxi grid.

Passenger locations 0-3 are the depots R, G, Y, B and 4 means "in taxi"; destinations
are depots 0-3. The observation is the single integer
((row * 5 + col) * 5 + passenger) * 4 + destination.
"""
import numpy as np
from intuitionrl import errors
from intuitionrl.envs import base

MAP = [
    "+---------+",
    "|R: | : :G|",
    "| : | : : |",
    "| : : : : |",
    "| | : | : |",
    "|Y| : |B: |",
    "+---------+",
]
DEPOTS = [(0, 0), (0, 4), (4, 0), (4, 3)]
N_ROWS = 5
N_COLS = 5
IN_TAXI = 4
N_STATES = N_ROWS * N_COLS * 5 * 4
SOUTH, NORTH, EAST, WEST, PICKUP, DROPOFF = range(6)


def encode(row, col, passenger, destination):
    if not (0 <= row < N_ROWS and 0 <= col < N_COLS and 0 <= passenger <= IN_TAXI and
            0 <= destination < len(DEPOTS)):
        raise errors.UsageError("Taxi state out of range: %s" % ((row, col, passenger, destination),))
    return ((row * N_COLS + col) * 5 + passenger) * 4 + destination


def decode(code):
    if int(code) != code or not 0 <= code < N_STATES:
        raise errors.UsageError("Invalid taxi state code %s" % (code,))
    code = int(code)
    destination = code % 4
    code //= 4
    passenger = code % 5
    code //= 5
    return code // N_COLS, code % N_COLS, passenger, destination


def _wallEast(row, col):
    return MAP[1 + row][2 * col + 2] == "|"


def _wallWest(row, col):
    return MAP[1 + row][2 * col] == "|"


class TaxiSpec(base.EnvSpec):
    def featurize(self, obsBatch):
        codes = np.asarray(obsBatch, dtype=np.float64).reshape(-1).astype(np.int64)
        features = np.zeros((len(codes), N_STATES))
        features[np.arange(len(codes)), codes] = 1.0
        return features


class Taxi(base.Environment):
    STEP_REWARD = -1.0
    ILLEGAL_REWARD = -10.0
    DELIVERY_REWARD = 20.0
    SPEC = TaxiSpec(name="taxi", obsDim=1, nActions=6, maxEpisodeSteps=200,
                    actionNames=["south", "north", "east", "west", "pickup", "dropoff"],
                    bbrTarget=8.1, featureDim=N_STATES)

    def _initialState(self):
        row = int(self._rng.integers(N_ROWS))
        col = int(self._rng.integers(N_COLS))
        passenger = int(self._rng.integers(len(DEPOTS)))
        destination = int(self._rng.integers(len(DEPOTS) - 1))
        if destination >= passenger:
            destination += 1
        return (row, col, passenger, destination)

    def _coerceState(self, state):
        if np.ndim(state) == 0:
            return decode(state)
        state = tuple(int(component) for component in state)
        encode(*state)
        return state

    def _observation(self):
        return np.array([float(encode(*self._state))])

    def _transition(self, action):
        row, col, passenger, destination = self._state
        reward = self.STEP_REWARD
        terminated = False
        if action == SOUTH:
            row = min(row + 1, N_ROWS - 1)
        elif action == NORTH:
            row = max(row - 1, 0)
        elif action == EAST and not _wallEast(row, col):
            col = min(col + 1, N_COLS - 1)
        elif action == WEST and not _wallWest(row, col):
            col = max(col - 1, 0)
        elif action == PICKUP:
            if passenger != IN_TAXI and DEPOTS[passenger] == (row, col):
                passenger = IN_TAXI
            else:
                reward = self.ILLEGAL_REWARD
        elif action == DROPOFF:
            if passenger == IN_TAXI and DEPOTS[destination] == (row, col):
                passenger = destination
                reward = self.DELIVERY_REWARD
                terminated = True
            else:
                reward = self.ILLEGAL_REWARD
        self._state = (row, col, passenger, destination)
        return reward, terminated, dict()

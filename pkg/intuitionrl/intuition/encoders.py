"""Maps raw environment observations to abstract parent-node states.

Each encoder declares the parent nodes it produces (name -> ordered state labels) and
encodes a whole observation batch at once into state-index arrays.
"""
import collections
import math
import numpy as np
from intuitionrl import errors
from intuitionrl.envs import taxi

REST_TOLERANCE = 1e-12
QUADRANTS = ["q1", "q2", "q3", "q4"]
BASIC = "basic"
ANTIPARALLEL = "antiparallel"


def wrapAngle(angle):
    """Wraps into (-pi, pi]."""
    return math.pi - np.mod(math.pi - np.asarray(angle, dtype=np.float64), 2 * math.pi)


def quadrantIndex(angle):
    wrapped = wrapAngle(angle)
    return np.select([(wrapped >= 0) & (wrapped < math.pi / 2),
                      wrapped >= math.pi / 2,
                      wrapped < -math.pi / 2],
                     [0, 1, 2], default=3)


class Encoder:
    ENV_NAME = None
    PARENT_STATES = None

    def parentStates(self):
        return collections.OrderedDict(self.PARENT_STATES)

    def encodeBatch(self, obsBatch):
        raise NotImplementedError()

    def encode(self, obs):
        indices = self.encodeBatch(np.asarray(obs, dtype=np.float64)[None, ...])
        return collections.OrderedDict((name, states[int(indices[name][0])])
                                       for name, states in self.parentStates().items())

    def checkCompatible(self, net):
        netStates = collections.OrderedDict((name, net.node(name).states()) for name in net.parentNodes())
        ours = self.parentStates()
        if dict(netStates) != dict(ours):
            raise errors.ConfigurationError(
                "Net %(net)s expects parent nodes %(expected)s "
                "but the %(env)s encoder produces %(produced)s" %
                dict(net=net.name(), expected=dict(netStates), env=self.ENV_NAME, produced=dict(ours)))


class CartPoleEncoder(Encoder):
    ENV_NAME = "cartpole"
    PARENT_STATES = [("lean", ["left", "right"])]

    def encodeBatch(self, obsBatch):
        theta = np.asarray(obsBatch, dtype=np.float64).reshape(-1, 4)[:, 2]
        return dict(lean=(theta > 0).astype(np.int64))


class MountainCarEncoder(Encoder):
    ENV_NAME = "mountaincar"
    PARENT_STATES = [("vel_dir", ["negative", "rest", "positive"])]

    def encodeBatch(self, obsBatch):
        velocity = np.asarray(obsBatch, dtype=np.float64).reshape(-1, 2)[:, 1]
        direction = np.where(velocity > 0, 2, 0)
        direction[np.abs(velocity) <= REST_TOLERANCE] = 1
        return dict(vel_dir=direction.astype(np.int64))


class LanderEncoder(Encoder):
    ENV_NAME = "lander"
    PARENT_STATES = [("a", ["positive", "negative", "stationary"]), ("theta", QUADRANTS)]

    def __init__(self, variant=BASIC):
        assert variant in (BASIC, ANTIPARALLEL), variant
        self._variant = variant

    def variant(self):
        return self._variant

    def parentStates(self):
        states = Encoder.parentStates(self)
        if self._variant == ANTIPARALLEL:
            states["vtheta"] = list(QUADRANTS)
        return states

    def encodeBatch(self, obsBatch):
        obsBatch = np.asarray(obsBatch, dtype=np.float64).reshape(-1, 8)
        x, y, vx, vy, orientation = (obsBatch[:, column] for column in range(5))
        towardPad = np.arctan2(-y, -x)
        heading = np.arctan2(vy, vx)
        error = wrapAngle(towardPad - heading)
        acceleration = np.where(error > 0, 0, 1)
        acceleration[np.hypot(vx, vy) <= REST_TOLERANCE] = 2
        result = dict(a=acceleration.astype(np.int64), theta=quadrantIndex(orientation).astype(np.int64))
        if self._variant == ANTIPARALLEL:
            result["vtheta"] = quadrantIndex(heading).astype(np.int64)
        return result


class TaxiEncoder(Encoder):
    ENV_NAME = "taxi"
    PARENT_STATES = [("row_rel", ["above", "same", "below"]), ("col_rel", ["left", "same", "right"]),
                     ("phase", ["fetch", "deliver"])]
    DEPOT_ROWS = np.array([row for row, col in taxi.DEPOTS])
    DEPOT_COLS = np.array([col for row, col in taxi.DEPOTS])

    def encodeBatch(self, obsBatch):
        codes = np.asarray(obsBatch, dtype=np.float64).reshape(-1)
        invalid = (codes != np.floor(codes)) | (codes < 0) | (codes >= taxi.N_STATES)
        if np.any(invalid):
            raise errors.UsageError("Invalid taxi state code %s" % (codes[np.argmax(invalid)],))
        codes = codes.astype(np.int64)
        destination = codes % 4
        passenger = (codes // 4) % 5
        cell = codes // 20
        row, col = cell // taxi.N_COLS, cell % taxi.N_COLS
        aboard = passenger == taxi.IN_TAXI
        depot = np.where(aboard, destination, np.minimum(passenger, len(taxi.DEPOTS) - 1))
        targetRow, targetCol = self.DEPOT_ROWS[depot], self.DEPOT_COLS[depot]
        return dict(row_rel=(np.sign(row - targetRow) + 1).astype(np.int64),
                    col_rel=(np.sign(col - targetCol) + 1).astype(np.int64),
                    phase=aboard.astype(np.int64))


def encodeCartpole(obs):
    return CartPoleEncoder().encode(obs)


def encodeMountaincar(obs):
    return MountainCarEncoder().encode(obs)


def encodeLander(obs, variant=BASIC):
    return LanderEncoder(variant).encode(obs)


def encodeTaxi(obs):
    return TaxiEncoder().encode(obs)


def encoderFor(net):
    envName = net.envName()
    if envName == "cartpole":
        encoder = CartPoleEncoder()
    elif envName == "mountaincar":
        encoder = MountainCarEncoder()
    elif envName == "lander":
        encoder = LanderEncoder(ANTIPARALLEL if "vtheta" in net.parentNodes() else BASIC)
    elif envName == "taxi":
        encoder = TaxiEncoder()
    else:
        raise errors.ConfigurationError("No encoder for environment '%(env)s'" % dict(env=envName))
    encoder.checkCompatible(net)
    return encoder

from intuitionrl import errors
from intuitionrl.envs import cartpole
from intuitionrl.envs import mountaincar
from intuitionrl.envs import lander
from intuitionrl.envs import taxi

_ENVIRONMENTS = dict(
    cartpole=cartpole.CartPole,
    mountaincar=mountaincar.MountainCar,
    lander=lander.Lander,
    taxi=taxi.Taxi)


def names():
    return sorted(_ENVIRONMENTS.keys())


def environmentClass(name):
    if name not in _ENVIRONMENTS:
        raise errors.ConfigurationError("Unknown environment '%(name)s'; valid names: %(valid)s" %
                                        dict(name=name, valid=", ".join(names())))
    return _ENVIRONMENTS[name]


def make(name, seed=None):
    return environmentClass(name)(seed)


def spec(name):
    return environmentClass(name).SPEC

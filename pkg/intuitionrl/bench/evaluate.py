import numpy as np
from intuitionrl import errors
from intuitionrl.envs import registry
from intuitionrl.nn import network


def checkParamsMatch(params, spec):
    if params.obsDim() != spec.featureDim or params.nActions() != spec.nActions:
        raise errors.ConfigurationError(
            "Policy with input %(obsDim)d and %(nActions)d actions does not fit environment %(env)s "
            "(input %(featureDim)d, %(envActions)d actions)" % dict(
                obsDim=params.obsDim(), nActions=params.nActions(), env=spec.name,
                featureDim=spec.featureDim, envActions=spec.nActions))


def episodeSeed(seed, episode):
    return np.random.SeedSequence([seed, episode])


def runGreedyEpisode(params, env, seed):
    spec = env.spec()
    obs = env.reset(seed=seed)
    total = 0.0
    while True:
        logits, unused = network.forward(params, spec.featurize(obs[None, :]))
        result = env.step(int(np.argmax(logits[0])))
        total += result.reward
        if result.terminated or result.truncated:
            return total
        obs = result.obs


def episodeReturns(params, envName, episodes, seed):
    spec = registry.spec(envName)
    checkParamsMatch(params, spec)
    assert episodes >= 1
    env = registry.make(envName)
    return np.array([runGreedyEpisode(params, env, episodeSeed(seed, episode))
                     for episode in range(episodes)])


def evaluate(params, envName, episodes, seed):
    """Mean and standard deviation of greedy-policy returns over fresh seeded episodes."""
    returns = episodeReturns(params, envName, episodes, seed)
    return float(np.mean(returns)), float(np.std(returns))

import collections
import logging
import numpy as np
from intuitionrl import errors
from intuitionrl.intuition import targets as targetsmodule
from intuitionrl.nn import adam
from intuitionrl.nn import network
from intuitionrl.ppo import losses

ADVANTAGE_EPSILON = 1e-8

UpdateResult = collections.namedtuple('UpdateResult', 'params adamState metrics')


def normalizeAdvantages(advantages):
    advantages = np.asarray(advantages, dtype=np.float64)
    if len(advantages) < 2:
        return advantages.copy()
    return (advantages - np.mean(advantages)) / (np.std(advantages) + ADVANTAGE_EPSILON)


def ppoUpdate(params, buffer, config, rng, adamState=None, intuitionTargets=None):
    """Runs nEpochs of shuffled minibatch Adam steps over a buffer with computed advantages.

    intuitionTargets, when given, holds one target per buffer row and adds the weighted
    intuition hinge to every minibatch loss."""
    if buffer.advantages is None:
        raise errors.UsageError("ppoUpdate requires advantages; run computeGAE first")
    if adamState is None:
        adamState = adam.AdamState.zerosLike(params)
    if not config.intuitionEnabled:
        intuitionTargets = None
    n = buffer.size()
    features = buffer.features()
    advantages = normalizeAdvantages(buffer.advantages)
    sums = collections.defaultdict(float)
    count = 0
    for epoch in range(config.nEpochs):
        permutation = rng.permutation(n)
        for start in range(0, n, config.minibatchSize):
            indices = permutation[start:start + config.minibatchSize]
            logits, values, activations = network.forwardWithActivations(params, features[indices])
            minibatchTargets = None if intuitionTargets is None else intuitionTargets.subset(indices)
            evaluation = losses.evaluateLosses(
                logits, values, buffer.actions[indices], buffer.logprobs[indices], advantages[indices],
                buffer.returns[indices], config, minibatchTargets)
            gradients = network.backward(params, activations, evaluation.logitsGradient,
                                         evaluation.valuesGradient)
            gradients, gradientNorm = gradients.clipByGlobalNorm(config.maxGradNorm)
            params, adamState = adam.adamStep(params, gradients, adamState, config.lr, config.adamBeta1,
                                              config.adamBeta2, config.adamEps)
            for name in ("total", "ppo", "policy", "value", "entropy", "intuition", "clipFraction"):
                sums[name] += getattr(evaluation, name)
            sums["gradientNorm"] += gradientNorm
            count += 1
    metrics = dict((name, total / count) for name, total in sums.items())
    metrics["agreementRate"] = (targetsmodule.agreementRate(buffer.actions, intuitionTargets)
                                if intuitionTargets is not None else None)
    logging.debug("PPO update: policy %(policy).4f value %(value).4f entropy %(entropy).4f "
                  "intuition %(intuition).4f clip fraction %(clipFraction).3f", metrics)
    return UpdateResult(params, adamState, metrics)

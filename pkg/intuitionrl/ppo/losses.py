import collections
import numpy as np
from intuitionrl import errors
from intuitionrl.intuition import targets as targetsmodule
from intuitionrl.nn import distributions

LossEvaluation = collections.namedtuple(
    'LossEvaluation', 'total ppo policy value entropy intuition clipFraction logitsGradient valuesGradient')


def clippedSurrogate(ratios, advantages, clipEps):
    unclipped = ratios * advantages
    clipped = np.clip(ratios, 1.0 - clipEps, 1.0 + clipEps) * advantages
    return np.minimum(unclipped, clipped), unclipped <= clipped


def evaluateLosses(logits, values, actions, oldLogprobs, advantages, returns, config,
                   intuitionTargets=None):
    """Composite loss of one minibatch and its gradients with respect to logits and values.

    total = policy + valueCoef * value + entropyCoef * entropy + intuitionCoef * intuition, where
    entropy is minus the mean policy entropy. The intuition term is only evaluated when
    targets are given and the coefficient is non-zero."""
    n = len(actions)
    logprobs, entropies = distributions.logprobEntropy(logits, actions)
    ratios = np.exp(logprobs - oldLogprobs)
    surrogate, unclippedBranch = clippedSurrogate(ratios, advantages, config.clipEps)
    policyLoss = -float(np.mean(surrogate))
    valueLoss = float(np.mean((values - returns) ** 2))
    entropyLoss = -float(np.mean(entropies))
    ppoLoss = policyLoss + config.valueCoef * valueLoss + config.entropyCoef * entropyLoss

    logprobScale = np.where(unclippedBranch, -ratios * advantages / n, 0.0)
    logitsGradient = logprobScale[:, None] * distributions.logprobGradient(logits, actions)
    if config.entropyCoef != 0:
        logitsGradient -= (config.entropyCoef / n) * distributions.entropyGradient(logits)
    valuesGradient = config.valueCoef * 2.0 * (values - returns) / n

    intuitionLoss = 0.0
    total = ppoLoss
    if intuitionTargets is not None and config.intuitionCoef != 0:
        intuitionLoss = targetsmodule.intuitionLoss(logits, intuitionTargets)
        total = ppoLoss + config.intuitionCoef * intuitionLoss
        logitsGradient = logitsGradient + config.intuitionCoef * targetsmodule.intuitionLossGradient(
            logits, intuitionTargets)
    if not np.isfinite(total):
        raise errors.NumericalFailureError(
            "Non-finite loss (policy %(policy)s, value %(value)s, intuition %(intuition)s)" %
            dict(policy=policyLoss, value=valueLoss, intuition=intuitionLoss))
    clipFraction = float(np.mean(np.abs(ratios - 1.0) > config.clipEps))
    return LossEvaluation(total, ppoLoss, policyLoss, valueLoss, entropyLoss, intuitionLoss, clipFraction,
                          logitsGradient, valuesGradient)

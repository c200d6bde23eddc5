import collections
import logging
import time
import numpy as np
from intuitionrl import config
from intuitionrl.envs import registry
from intuitionrl.intuition import encoders
from intuitionrl.intuition import targets as targetsmodule
from intuitionrl.nn import network
from intuitionrl.nn import params as paramsmodule

MIN_TIMED_SAMPLES = 10000
BATCH_SIZE = 2048

OverheadRow = collections.namedtuple('OverheadRow', 'envName netName size microsecondsPerSample')


def randomPolicyObservations(envName, count, seed=0):
    """Observations visited by a uniformly random policy, resetting finished episodes."""
    env = registry.make(envName, seed)
    rng = np.random.default_rng(seed)
    spec = env.spec()
    observations = np.zeros((count, spec.obsDim))
    obs = env.reset()
    for index in range(count):
        observations[index] = obs
        result = env.step(int(rng.integers(spec.nActions)))
        obs = env.reset() if result.terminated or result.truncated else result.obs
    return observations


def _pipeline(net, encoder, observations, logits):
    intuitionTargets = targetsmodule.computeTargets(net, encoder, observations)
    targetsmodule.intuitionLoss(logits, intuitionTargets)
    targetsmodule.intuitionLossGradient(logits, intuitionTargets)


def measureOverhead(envName, net, nSamples=None, seed=0, warmupSamples=None):
    """Mean microseconds per sample of encoding, inference, target selection and loss evaluation.

    Observations and policy logits are prepared before timing; warmup batches are excluded."""
    if nSamples is None:
        nSamples = config.OVERHEAD_SAMPLES
    if warmupSamples is None:
        warmupSamples = config.OVERHEAD_WARMUP_SAMPLES
    if nSamples < MIN_TIMED_SAMPLES:
        logging.warning("Timing only %(count)d samples; results below %(minimum)d samples are noisy", dict(
            count=nSamples, minimum=MIN_TIMED_SAMPLES))
    assert nSamples >= 1
    encoder = encoders.encoderFor(net)
    spec = registry.spec(envName)
    observations = randomPolicyObservations(envName, warmupSamples + nSamples, seed)
    params = paramsmodule.initialize(spec.featureDim, spec.nActions, np.random.default_rng(seed),
                                     config.HIDDEN_SIZES)
    logits = np.concatenate([
        network.forward(params, spec.featurize(observations[start:start + BATCH_SIZE]))[0]
        for start in range(0, len(observations), BATCH_SIZE)])
    for start in range(0, warmupSamples, BATCH_SIZE):
        stop = min(start + BATCH_SIZE, warmupSamples)
        _pipeline(net, encoder, observations[start:stop], logits[start:stop])
    elapsed = 0.0
    for start in range(warmupSamples, len(observations), BATCH_SIZE):
        stop = min(start + BATCH_SIZE, len(observations))
        before = time.perf_counter()
        _pipeline(net, encoder, observations[start:stop], logits[start:stop])
        elapsed += time.perf_counter() - before
    result = elapsed / nSamples * 1e6
    logging.info("Overhead of net %(net)s on %(env)s: %(us).3f us/sample over %(count)d samples", dict(
        net=net.name(), env=envName, us=result, count=nSamples))
    return result


def measureNets(nets, nSamples=None, seed=0):
    rows = []
    for net in nets:
        rows.append(OverheadRow(net.envName(), net.name(), net.nodeCount(),
                                measureOverhead(net.envName(), net, nSamples, seed)))
    return rows

import logging
import time
import numpy as np
from intuitionrl import errors
from intuitionrl.bench import evaluate as evaluatemodule
from intuitionrl.bench import runreport
from intuitionrl.envs import registry
from intuitionrl.intuition import encoders
from intuitionrl.intuition import targets as targetsmodule
from intuitionrl.nn import params as paramsmodule
from intuitionrl.ppo import gae
from intuitionrl.ppo import rollout
from intuitionrl.ppo import schedule as schedulemodule
from intuitionrl.ppo import update

_INIT_STREAM, _POLICY_STREAM, _ENV_STREAM, _INTUITION_STREAM = range(4)


class _Stopwatch:
    def __init__(self):
        self._seconds = 0.0

    def seconds(self):
        return self._seconds

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *args):
        self._seconds += time.perf_counter() - self._start


def _randomStreams(seed):
    sequences = np.random.SeedSequence(seed).spawn(4)
    return [np.random.default_rng(sequence) for sequence in sequences], sequences


def initialParams(envName, config):
    spec = registry.spec(envName)
    rngs, unused = _randomStreams(config.seed)
    return paramsmodule.initialize(spec.featureDim, spec.nActions, rngs[_INIT_STREAM], config.hiddenSizes)


def _intuitionPipeline(envName, net, config):
    if not config.intuitionEnabled:
        return None
    if net is None:
        raise errors.ConfigurationError("Intuition is enabled but no intuition net was given")
    if net.envName() != envName:
        raise errors.ConfigurationError("Net %(net)s is written for %(netEnv)s, not %(env)s" % dict(
            net=net.name(), netEnv=net.envName(), env=envName))
    return encoders.encoderFor(net)


def train(envName, config, net=None, criterion=None, netDigest=None, stopWhenSolved=True):
    """Alternates rollouts, advantage estimation and PPO updates until the step budget runs out
    or the criterion is met, evaluating the greedy policy after every rollout.

    Returns the final parameters and a RunReport. Training time excludes evaluation."""
    spec = registry.spec(envName)
    encoder = _intuitionPipeline(envName, net, config)
    rngs, sequences = _randomStreams(config.seed)
    params = paramsmodule.initialize(spec.featureDim, spec.nActions, rngs[_INIT_STREAM], config.hiddenSizes)
    env = registry.make(envName, sequences[_ENV_STREAM])
    arm = runreport.SHIRE if encoder is not None else runreport.BASELINE
    logging.info("Training %(env)s seed %(seed)s (%(arm)s) for %(steps)d steps", dict(
        env=envName, seed=config.seed, arm=arm, steps=config.totalSteps))
    adamState = None
    schedule = schedulemodule.IntuitionSchedule(config) if encoder is not None else None
    curve = []
    trainingClock = _Stopwatch()
    intuitionClock = _Stopwatch()
    intuitionSamples = 0
    stepsDone = 0
    stepsToSolve = None
    secondsToSolve = None
    while stepsDone < config.totalSteps:
        with trainingClock:
            buffer = rollout.collectRollout(env, params, config.nSteps, rngs[_POLICY_STREAM])
            advantages, returns = gae.computeGAE(buffer, config.gamma, config.gaeLambda, buffer.lastValue)
            buffer.setAdvantages(advantages, returns)
            intuitionTargets = None
            updateConfig = config
            if encoder is not None:
                updateConfig = config.replace(intuitionCoef=schedule.coefficient(stepsDone))
                with intuitionClock:
                    intuitionTargets = targetsmodule.computeTargets(
                        net, encoder, buffer.obs, config.targetMode, rngs[_INTUITION_STREAM])
                intuitionSamples += buffer.size()
            result = update.ppoUpdate(params, buffer, updateConfig, rngs[_POLICY_STREAM], adamState,
                                      intuitionTargets)
            params, adamState = result.params, result.adamState
        if schedule is not None:
            schedule.observeAgreement(result.metrics["agreementRate"])
        stepsDone += buffer.size()
        meanReward, stdReward = evaluatemodule.evaluate(params, envName, config.evalEpisodes, config.seed)
        metrics = result.metrics
        row = runreport.curveRow(stepsDone, meanReward, stdReward, metrics["policy"], metrics["value"],
                                 metrics["entropy"], metrics["intuition"], metrics["agreementRate"],
                                 trainingClock.seconds())
        curve.append(row)
        logging.info("%(env)s seed %(seed)s step %(step)d: eval %(mean).2f +- %(std).2f, "
                     "policy %(policy).4f, value %(value).4f, intuition %(intuition).4f, "
                     "agreement %(agreement)s, intuition coefficient %(coefficient)s", dict(
                         env=envName, seed=config.seed, step=stepsDone, mean=meanReward, std=stdReward,
                         policy=metrics["policy"], value=metrics["value"], intuition=metrics["intuition"],
                         agreement=metrics["agreementRate"], coefficient=updateConfig.intuitionCoef))
        if criterion is not None and stepsToSolve is None and criterion.isMet(meanReward):
            stepsToSolve = stepsDone
            secondsToSolve = trainingClock.seconds()
            logging.info("%(env)s seed %(seed)s (%(arm)s) solved at step %(step)d (%(criterion)s)", dict(
                env=envName, seed=config.seed, arm=arm, step=stepsDone, criterion=criterion))
            if stopWhenSolved:
                break
    overhead = None
    if intuitionSamples:
        overhead = intuitionClock.seconds() / intuitionSamples * 1e6
    report = runreport.RunReport(
        envName=envName, seed=config.seed, arm=arm, config=config.asDict(), curve=curve, criterion=criterion,
        stepsToSolve=stepsToSolve, secondsToSolve=secondsToSolve, wallClockSeconds=trainingClock.seconds(),
        overheadMicrosecondsPerSample=overhead,
        finalEvalMean=curve[-1].meanEvalReward if curve else None,
        finalEvalStd=curve[-1].stdEvalReward if curve else None,
        totalSteps=stepsDone, netName=None if encoder is None else net.name(), netDigest=netDigest)
    return params, report

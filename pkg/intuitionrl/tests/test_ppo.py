import math
import unittest
import numpy as np
from intuitionrl import errors
from intuitionrl.bench import runreport
from intuitionrl.bench import solve
from intuitionrl.envs import registry
from intuitionrl.intuition import encoders
from intuitionrl.intuition import targets
from intuitionrl.nn import distributions
from intuitionrl.nn import network
from intuitionrl.ppo import gae
from intuitionrl.ppo import losses
from intuitionrl.ppo import ppoconfig
from intuitionrl.ppo import rollout
from intuitionrl.ppo import trainer
from intuitionrl.ppo import update
from intuitionrl.tests import common


def singleSampleLosses(value, oldLogprob, advantage, config, batch=None):
    return losses.evaluateLosses(np.array([[0.0, 0.0]]), np.array([value]), np.array([0]),
                                 np.array([oldLogprob]), np.array([advantage]), np.array([1.5]),
                                 config, batch)


class Test(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(21)

    def _bufferWithAdvantages(self, envName="cartpole", config=None):
        config = config or common.smallConfig(envName)
        params = trainer.initialParams(envName, config)
        buffer = rollout.collectRollout(registry.make(envName, 0), params, config.nSteps, self.rng)
        buffer.setAdvantages(*gae.computeGAE(buffer, config.gamma, config.gaeLambda))
        return params, buffer, config

    def test_RolloutFillsTheBuffer(self):
        config = common.smallConfig()
        params = trainer.initialParams("cartpole", config)
        buffer = rollout.collectRollout(registry.make("cartpole", 0), params, 64, self.rng)
        self.assertTrue(buffer.isFull())
        self.assertTrue(np.all(buffer.logprobs <= 0))
        self.assertTrue(np.all(buffer.rewards == 1.0))
        self.assertLessEqual(sum(buffer.episodeReturns), 64)
        self.assertEqual(len(buffer.episodeReturns), int(np.sum(buffer.terminated | buffer.truncated)))

    def test_RolloutContinuesAnUnfinishedEpisode(self):
        config = common.smallConfig()
        params = trainer.initialParams("cartpole", config)
        env = registry.make("cartpole", 0)
        rollout.collectRollout(env, params, 16, self.rng)
        self.assertFalse(env.isDone())
        observation = env.observation()
        buffer = rollout.collectRollout(env, params, 16, self.rng)
        self.assertTrue(np.array_equal(buffer.obs[0], observation))

    def test_TaxiRolloutUsesOneHotFeatures(self):
        params, buffer, unused = self._bufferWithAdvantages("taxi", common.smallConfig("taxi"))
        self.assertEqual(buffer.features().shape, (64, 500))
        self.assertTrue(np.array_equal(buffer.features().sum(axis=1), np.ones(64)))

    def test_RatiosStartAtOne(self):
        params, buffer, config = self._bufferWithAdvantages()
        logits, unused = network.forward(params, buffer.features())
        logprobs, unused = distributions.logprobEntropy(logits, buffer.actions)
        self.assertTrue(np.allclose(logprobs, buffer.logprobs, rtol=0, atol=1e-10))
        single = config.replace(nEpochs=1, minibatchSize=config.nSteps)
        result = update.ppoUpdate(params, buffer, single, self.rng)
        self.assertEqual(result.metrics["clipFraction"], 0.0)

    def test_NormalizeAdvantages(self):
        normalized = update.normalizeAdvantages(self.rng.normal(3.0, 5.0, size=256))
        self.assertAlmostEqual(float(np.mean(normalized)), 0.0, places=12)
        self.assertAlmostEqual(float(np.std(normalized)), 1.0, places=6)
        self.assertEqual(list(update.normalizeAdvantages([2.5])), [2.5])

    def test_HandComputedSingleSampleLoss(self):
        config = ppoconfig.defaultConfig("cartpole")
        evaluation = singleSampleLosses(0.5, math.log(0.5), 2.0, config)
        self.assertAlmostEqual(evaluation.policy, -2.0, places=12)
        self.assertAlmostEqual(evaluation.value, 1.0, places=12)
        self.assertAlmostEqual(evaluation.entropy, -math.log(2), places=12)
        self.assertAlmostEqual(evaluation.total, -1.5, places=12)
        self.assertEqual(evaluation.clipFraction, 0.0)
        self.assertEqual(evaluation.intuition, 0.0)

    def test_IntuitionTermIsAddedWithItsCoefficient(self):
        config = ppoconfig.defaultConfig("cartpole", intuitionCoef=0.5)
        batch = targets.IntuitionTargets([1], [1.0])
        evaluation = singleSampleLosses(0.5, math.log(0.5), 2.0, config, batch)
        self.assertAlmostEqual(evaluation.intuition, 1.0, places=12)
        self.assertAlmostEqual(evaluation.ppo, -1.5, places=12)
        self.assertAlmostEqual(evaluation.total, -1.0, places=12)

    def test_ClippedRatioStopsThePolicyGradient(self):
        config = ppoconfig.defaultConfig("cartpole")
        oldLogprob = math.log(0.5) - math.log(1.5)
        evaluation = singleSampleLosses(1.5, oldLogprob, 2.0, config)
        self.assertAlmostEqual(evaluation.policy, -2.4, places=12)
        self.assertEqual(evaluation.clipFraction, 1.0)
        self.assertTrue(np.all(evaluation.logitsGradient == 0))
        pessimistic = singleSampleLosses(1.5, oldLogprob, -2.0, config)
        self.assertAlmostEqual(pessimistic.policy, 3.0, places=12)
        self.assertTrue(np.any(pessimistic.logitsGradient != 0))

    def _logitsAwayFromHingeKinks(self, rng, intuitionActions):
        rows = np.arange(len(intuitionActions))
        while True:
            logits = rng.normal(size=(len(intuitionActions), 4))
            others = np.where(np.eye(4, dtype=bool)[intuitionActions], -np.inf, logits)
            ordered = np.sort(others, axis=1)
            margins = logits[rows, intuitionActions] - ordered[:, -1]
            rivalGaps = ordered[:, -1] - ordered[:, -2]
            if np.all(np.abs(margins - targets.MARGIN) > 1e-3) and np.all(rivalGaps > 1e-3):
                return logits

    def _checkEachLossTerm(self, rng):
        n = 10
        actions = rng.integers(4, size=n)
        intuitionActions = rng.integers(4, size=n)
        logits = self._logitsAwayFromHingeKinks(rng, intuitionActions)
        values = rng.normal(size=n)
        current, unused = distributions.logprobEntropy(logits, actions)
        oldLogprobs = current + rng.uniform(-0.05, 0.05, size=n)
        advantages = rng.normal(size=n)
        returns = rng.normal(size=n)
        batch = targets.IntuitionTargets(intuitionActions, rng.uniform(0.5, 2.0, size=n),
                                         rng.uniform(0.1, 1.0, size=n))
        isolated = ppoconfig.defaultConfig("lander", valueCoef=0.0, entropyCoef=0.0, intuitionCoef=0.0)

        def evaluate(config):
            return losses.evaluateLosses(logits, values, actions, oldLogprobs, advantages, returns, config,
                                         batch)

        policyGradient = evaluate(isolated).logitsGradient
        common.assertGradientMatches(self, lambda: evaluate(isolated).policy, logits, policyGradient, rng,
                                     samples=logits.size)
        for term in ["entropy", "intuition"]:
            termConfig = isolated.replace(**{term + "Coef": 1.0})
            analytic = evaluate(termConfig).logitsGradient - policyGradient
            self.assertTrue(np.any(analytic != 0), term)
            common.assertGradientMatches(self, lambda: getattr(evaluate(termConfig), term), logits, analytic,
                                         rng, samples=logits.size)
        valueConfig = isolated.replace(valueCoef=1.0)
        common.assertGradientMatches(self, lambda: evaluate(valueConfig).value, values,
                                     evaluate(valueConfig).valuesGradient, rng, samples=n)

    def test_EachLossTermMatchesFiniteDifferences(self):
        for seed in [3, 11, 29]:
            with self.subTest(seed=seed):
                self._checkEachLossTerm(np.random.default_rng(seed))

    def test_TotalLossGradientMatchesFiniteDifferences(self):
        config = ppoconfig.defaultConfig("lander", entropyCoef=0.01, intuitionCoef=0.5)
        n = 10
        intuitionActions = self.rng.integers(4, size=n)
        logits = self._logitsAwayFromHingeKinks(self.rng, intuitionActions)
        values = self.rng.normal(size=n)
        actions = self.rng.integers(4, size=n)
        current, unused = distributions.logprobEntropy(logits, actions)
        oldLogprobs = current + self.rng.uniform(-0.05, 0.05, size=n)
        advantages = self.rng.normal(size=n)
        returns = self.rng.normal(size=n)
        batch = targets.IntuitionTargets(intuitionActions, self.rng.uniform(0.5, 2.0, size=n))

        def evaluate():
            return losses.evaluateLosses(logits, values, actions, oldLogprobs, advantages, returns, config,
                                         batch)

        def total():
            return evaluate().total

        evaluation = evaluate()
        common.assertGradientMatches(self, total, logits, evaluation.logitsGradient, self.rng, samples=40)
        common.assertGradientMatches(self, total, values, evaluation.valuesGradient, self.rng, samples=10)

    def test_DisabledIntuitionIgnoresTargets(self):
        params, buffer, config = self._bufferWithAdvantages()
        net = common.shippedNet("cartpole.net")
        batch = targets.computeTargets(net, encoders.encoderFor(net), buffer.obs)
        plain = update.ppoUpdate(params, buffer, config, np.random.default_rng(1))
        ignored = update.ppoUpdate(params, buffer, config, np.random.default_rng(1), intuitionTargets=batch)
        self.assertEqual(plain.params, ignored.params)
        self.assertIsNone(ignored.metrics["agreementRate"])
        weightlessConfig = config.replace(intuitionEnabled=True, intuitionCoef=0.0)
        weightless = update.ppoUpdate(params, buffer, weightlessConfig, np.random.default_rng(1),
                                      intuitionTargets=batch)
        self.assertEqual(plain.params, weightless.params)
        self.assertTrue(0.0 <= weightless.metrics["agreementRate"] <= 1.0)

    def test_IntuitionChangesTheUpdate(self):
        params, buffer, config = self._bufferWithAdvantages()
        net = common.shippedNet("cartpole.net")
        batch = targets.computeTargets(net, encoders.encoderFor(net), buffer.obs)
        plain = update.ppoUpdate(params, buffer, config, np.random.default_rng(1))
        guided = update.ppoUpdate(params, buffer, config.replace(intuitionEnabled=True),
                                  np.random.default_rng(1), intuitionTargets=batch)
        self.assertNotEqual(plain.params, guided.params)
        self.assertGreater(guided.metrics["intuition"], 0.0)

    def test_UpdateRequiresAdvantages(self):
        config = common.smallConfig()
        params = trainer.initialParams("cartpole", config)
        buffer = rollout.collectRollout(registry.make("cartpole", 0), params, 64, self.rng)
        with self.assertRaises(errors.UsageError):
            update.ppoUpdate(params, buffer, config, self.rng)

    def test_UpdateReportsClippedGradientNorms(self):
        params, buffer, config = self._bufferWithAdvantages()
        result = update.ppoUpdate(params, buffer, config, self.rng)
        self.assertGreater(result.metrics["gradientNorm"], 0.0)
        self.assertTrue(result.params.isFinite())
        self.assertEqual(result.adamState.step(), config.nEpochs * config.nSteps // config.minibatchSize)

    def test_MinibatchMustDivideRolloutLength(self):
        with self.assertRaises(errors.ConfigurationError):
            ppoconfig.defaultConfig("cartpole", nSteps=100, minibatchSize=64)

    def test_ZeroBudgetReturnsTheInitialParameters(self):
        config = common.smallConfig(totalSteps=0)
        params, report = trainer.train("cartpole", config)
        self.assertEqual(params, trainer.initialParams("cartpole", config))
        self.assertEqual(report.curve, [])
        self.assertEqual(report.totalSteps, 0)
        self.assertIsNone(report.finalEvalMean)

    def test_TrainingIsDeterministic(self):
        config = common.smallConfig(seed=4)
        firstParams, firstReport = trainer.train("cartpole", config)
        secondParams, secondReport = trainer.train("cartpole", config)
        self.assertEqual(firstParams, secondParams)
        self.assertEqual([row.meanEvalReward for row in firstReport.curve],
                         [row.meanEvalReward for row in secondReport.curve])
        self.assertEqual([row.step for row in firstReport.curve], [64, 128])
        self.assertEqual(firstReport.arm, runreport.BASELINE)

    def test_ZeroCoefficientMatchesTheBaseline(self):
        config = common.smallConfig(seed=2)
        net = common.shippedNet("cartpole.net")
        baselineParams, baseline = trainer.train("cartpole", config)
        zeroCoefficient = config.replace(intuitionEnabled=True, intuitionCoef=0.0)
        shireParams, shire = trainer.train("cartpole", zeroCoefficient, net=net)
        self.assertEqual(baselineParams, shireParams)
        self.assertEqual([row.meanEvalReward for row in baseline.curve],
                         [row.meanEvalReward for row in shire.curve])
        self.assertEqual(shire.arm, runreport.SHIRE)

    def test_IntuitionRunReportsNetAndOverhead(self):
        net = common.shippedNet("cartpole.net")
        params, report = trainer.train("cartpole", common.smallConfig(intuitionEnabled=True), net=net,
                                       netDigest="abc")
        self.assertEqual(report.netName, "cartpole")
        self.assertEqual(report.netDigest, "abc")
        self.assertIsNotNone(report.overheadMicrosecondsPerSample)
        for row in report.curve:
            self.assertTrue(0.0 <= row.agreementRate <= 1.0)
            self.assertGreaterEqual(row.lossIntuition, 0.0)

    def test_IntuitionCoefficientFadesOut(self):
        net = common.shippedNet("cartpole.net")
        config = common.smallConfig(intuitionEnabled=True, intuitionDecaySteps=64)
        params, report = trainer.train("cartpole", config, net=net)
        self.assertGreater(report.curve[0].lossIntuition, 0.0)
        self.assertEqual(report.curve[1].lossIntuition, 0.0)
        self.assertEqual(report.config["intuitionDecaySteps"], 64)

    def test_TrainingStopsWhenSolved(self):
        criterion = solve.SolveCriterion(solve.SSR, -1e9, evalEpisodes=2)
        params, report = trainer.train("cartpole", common.smallConfig(totalSteps=640), criterion=criterion)
        self.assertEqual(report.stepsToSolve, 64)
        self.assertEqual(len(report.curve), 1)
        self.assertTrue(report.solved())

    def test_IntuitionWithoutANetIsAConfigurationError(self):
        with self.assertRaises(errors.ConfigurationError):
            trainer.train("cartpole", common.smallConfig(intuitionEnabled=True))
        with self.assertRaises(errors.ConfigurationError):
            trainer.train("mountaincar", common.smallConfig("mountaincar", intuitionEnabled=True),
                          net=common.shippedNet("cartpole.net"))


if __name__ == '__main__':
    unittest.main()

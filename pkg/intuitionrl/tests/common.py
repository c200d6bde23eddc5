import os
import numpy as np
from intuitionrl import config
from intuitionrl.bench import runreport
from intuitionrl.intuition import parser
from intuitionrl.ppo import ppoconfig

FIXTURES_DIRECTORY = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'fixtures')


def shippedNet(filename):
    with open(os.path.join(config.NETS_DIRECTORY, filename)) as f:
        return parser.parseNet(f.read())


def fixtureText(filename):
    with open(os.path.join(FIXTURES_DIRECTORY, filename)) as f:
        return f.read()


def smallConfig(envName="cartpole", **overrides):
    fields = dict(nSteps=64, minibatchSize=16, nEpochs=2, totalSteps=128, evalEpisodes=2, hiddenSizes=(8, 8))
    fields.update(overrides)
    return ppoconfig.defaultConfig(envName, **fields)


def curve(pairs):
    return [runreport.curveRow(step, reward, wallClockSeconds=step / 1000.0) for step, reward in pairs]


def centralDifference(function, array, index, epsilon=1e-5):
    original = array[index]
    array[index] = original + epsilon
    plus = function()
    array[index] = original - epsilon
    minus = function()
    array[index] = original
    return (plus - minus) / (2 * epsilon)


def assertGradientMatches(testCase, function, array, analytic, rng, samples=12, rtol=1e-4, atol=1e-7):
    """Checks randomly chosen entries of an analytic gradient against central differences."""
    flatIndices = rng.choice(array.size, size=min(samples, array.size), replace=False)
    for flat in flatIndices:
        index = np.unravel_index(flat, array.shape)
        numeric = centralDifference(function, array, index)
        testCase.assertTrue(abs(numeric - analytic[index]) <= atol + rtol * abs(numeric),
                            "entry %s: analytic %r numeric %r" % (index, analytic[index], numeric))

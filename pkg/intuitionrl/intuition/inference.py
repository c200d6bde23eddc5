import collections
import numpy as np
from intuitionrl import errors
from intuitionrl.intuition import net as netmodule

MAP = "map"
SAMPLE = "sample"
TARGET_MODES = (MAP, SAMPLE)


class Posterior:
    """Joint distribution over the net's action-node configurations."""

    def __init__(self, net, probabilities):
        self._net = net
        self._probabilities = np.asarray(probabilities, dtype=np.float64)
        assert self._probabilities.shape == (len(net.configurations()),)

    def net(self):
        return self._net

    def probabilities(self):
        return self._probabilities

    def configurations(self):
        return self._net.configurations()

    def probabilityOf(self, labels):
        configuration = tuple(self._net.node(name).stateIndex(labels[name])
                              for name in self._net.actionNodes())
        return float(self._probabilities[self._net.configurations().index(configuration)])

    def marginal(self, nodeName):
        position = self._net.actionNodes().index(nodeName)
        result = np.zeros(self._net.node(nodeName).cardinality())
        for configuration, probability in zip(self._net.configurations(), self._probabilities):
            result[configuration[position]] += probability
        return result

    def marginals(self):
        return collections.OrderedDict((name, self.marginal(name)) for name in self._net.actionNodes())


def assignmentIndices(net, assignment):
    """State index of every parent node under a label assignment."""
    indices = dict()
    for name in net.parentNodes():
        if name not in assignment:
            raise errors.UsageError("Assignment does not cover parent node '%(node)s'" % dict(node=name))
        indices[name] = net.node(name).stateIndex(assignment[name])
    return indices


def posteriorBatch(net, parentIndices):
    """Rows of the joint action posterior for a batch of fully observed parents.

    parentIndices maps each parent node name to an integer array of state indices.
    Returns an array of shape (batch, number of configurations)."""
    sizes = set(len(np.atleast_1d(values)) for values in parentIndices.values())
    assert len(sizes) == 1, "parent index arrays of unequal length"
    batchSize = sizes.pop()
    factors = []
    for name in net.actionNodes():
        cpt = net.cpt(name)
        gather = tuple(np.atleast_1d(parentIndices[parent]) for parent in cpt.parentNames())
        factors.append(cpt.table()[gather])
    result = np.ones((batchSize, len(net.configurations())))
    for column, configuration in enumerate(net.configurations()):
        for factor, stateIndex in zip(factors, configuration):
            result[:, column] *= factor[:, stateIndex]
    return result


def inferActionPosterior(net, assignment):
    indices = assignmentIndices(net, assignment)
    batch = dict((name, np.array([index])) for name, index in indices.items())
    return Posterior(net, posteriorBatch(net, batch)[0])


def _marginalsBatch(net, probabilities):
    result = dict()
    configurations = np.array(net.configurations())
    for position, name in enumerate(net.actionNodes()):
        onehot = np.zeros((len(configurations), net.node(name).cardinality()))
        onehot[np.arange(len(configurations)), configurations[:, position]] = 1.0
        result[name] = probabilities @ onehot
    return result


def _resolve(net, target, marginals, row):
    spec = net.envSpec()
    if not isinstance(target, netmodule.MarginalChoice):
        return spec.actionIndex(target)
    best = None
    bestProbability = -1.0
    for nodeName, label, actionName in target.alternatives():
        probability = marginals[nodeName][row, net.node(nodeName).stateIndex(label)]
        if probability > bestProbability:
            best = actionName
            bestProbability = probability
    return spec.actionIndex(best)


def chooseConfigurations(probabilities, mode, rng=None):
    if mode == MAP:
        return np.argmax(probabilities, axis=1)
    if mode == SAMPLE:
        assert rng is not None, "sample mode requires an rng"
        cumulative = np.cumsum(probabilities, axis=1)
        draws = rng.random(len(probabilities)) * cumulative[:, -1]
        chosen = (cumulative <= draws[:, None]).sum(axis=1)
        return np.minimum(chosen, probabilities.shape[1] - 1)
    raise errors.ConfigurationError("Unknown target mode '%(mode)s'; valid: %(valid)s" %
                                    dict(mode=mode, valid=", ".join(TARGET_MODES)))


def _fixedActions(net):
    spec = net.envSpec()
    fixed = []
    for configuration in net.configurations():
        target = net.mapTarget(configuration)
        fixed.append(-1 if isinstance(target, netmodule.MarginalChoice) else spec.actionIndex(target))
    return np.array(fixed, dtype=np.int64)


def intuitiveActionsBatch(net, probabilities, mode, rng=None):
    """Environment action for every posterior row, along with the chosen configuration index."""
    chosen = chooseConfigurations(probabilities, mode, rng)
    actions = _fixedActions(net)[chosen]
    pending = np.flatnonzero(actions < 0)
    if len(pending):
        marginals = _marginalsBatch(net, probabilities)
        configurations = net.configurations()
        for row in pending:
            actions[row] = _resolve(net, net.mapTarget(configurations[chosen[row]]), marginals, row)
    return actions, chosen


def actionMassBatch(net, probabilities):
    """Posterior mass of every environment action, shape (batch, number of actions).

    Each configuration's mass goes to the action its map target resolves to in that row."""
    probabilities = np.asarray(probabilities, dtype=np.float64)
    rows = np.arange(len(probabilities))
    spec = net.envSpec()
    masses = np.zeros((len(probabilities), spec.nActions))
    fixed = _fixedActions(net)
    marginals = None
    for column, configuration in enumerate(net.configurations()):
        if fixed[column] >= 0:
            masses[:, fixed[column]] += probabilities[:, column]
            continue
        if marginals is None:
            marginals = _marginalsBatch(net, probabilities)
        alternatives = net.mapTarget(configuration).alternatives()
        scores = np.column_stack([marginals[nodeName][:, net.node(nodeName).stateIndex(label)]
                                  for nodeName, label, unused in alternatives])
        choices = np.array([spec.actionIndex(actionName) for unused, unused, actionName in alternatives])
        masses[rows, choices[np.argmax(scores, axis=1)]] += probabilities[:, column]
    return masses


def intuitiveAction(net, posterior, mode=MAP, rng=None):
    actions, unused = intuitiveActionsBatch(net, posterior.probabilities()[None, :], mode, rng)
    return int(actions[0])

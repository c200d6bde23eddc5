import collections
import itertools
import numpy as np
from intuitionrl import errors

ROW_SUM_TOLERANCE = 1e-9


class IntuitionNode:
    def __init__(self, name, states, parents, isAction):
        self._name = name
        self._states = list(states)
        self._parents = list(parents)
        self._isAction = isAction

    def name(self):
        return self._name

    def states(self):
        return list(self._states)

    def cardinality(self):
        return len(self._states)

    def parents(self):
        return list(self._parents)

    def isAction(self):
        return self._isAction

    def stateIndex(self, label):
        if label not in self._states:
            raise errors.UsageError("Node %(node)s has no state '%(label)s'; states: %(states)s" %
                                    dict(node=self._name, label=label, states=self._states))
        return self._states.index(label)


class CPT:
    """Conditional probability table of one node; axes are the parents in declaration order, then the node."""

    def __init__(self, node, parentNodes, table):
        self._node = node
        self._parentNodes = list(parentNodes)
        self._table = np.asarray(table, dtype=np.float64)
        expected = tuple(parent.cardinality() for parent in parentNodes) + (node.cardinality(),)
        assert self._table.shape == expected, (self._table.shape, expected)

    def node(self):
        return self._node

    def parentNames(self):
        return [parent.name() for parent in self._parentNodes]

    def table(self):
        return self._table

    def row(self, parentStateIndices):
        return self._table[tuple(parentStateIndices)]

    def probability(self, stateIndex, parentStateIndices):
        return float(self.row(parentStateIndices)[stateIndex])

    def rows(self):
        for parentStateIndices in itertools.product(*[range(parent.cardinality())
                                                      for parent in self._parentNodes]):
            yield parentStateIndices, self.row(parentStateIndices)


class MarginalChoice:
    """Map target resolved at inference time: the alternative whose child state has the
    highest marginal posterior wins; ties go to the first alternative."""

    def __init__(self, alternatives):
        self._alternatives = list(alternatives)

    def alternatives(self):
        return list(self._alternatives)

    def __repr__(self):
        return "{%s}" % ", ".join("%s=%s: %s" % alternative for alternative in self._alternatives)


class IntuitionNet:
    def __init__(self, name, envName, nodes, cpts, actionMap, stateWeights, envSpec):
        self._name = name
        self._envName = envName
        self._nodes = collections.OrderedDict((node.name(), node) for node in nodes)
        self._cpts = dict(cpts)
        self._envSpec = envSpec
        self._actionNodes = [node.name() for node in nodes if node.isAction()]
        self._parentNodes = [node.name() for node in nodes if not node.isAction()]
        self._configurations = list(itertools.product(*[range(self._nodes[name].cardinality())
                                                        for name in self._actionNodes]))
        self._actionMap = dict(actionMap)
        self._stateWeights = dict(stateWeights)
        self._validate()
        self._configurationWeights = np.array([self._weightOf(configuration)
                                               for configuration in self._configurations])

    def name(self):
        return self._name

    def envName(self):
        return self._envName

    def envSpec(self):
        return self._envSpec

    def nodes(self):
        return list(self._nodes.values())

    def node(self, name):
        return self._nodes[name]

    def nodeCount(self):
        return len(self._nodes)

    def cpt(self, name):
        return self._cpts[name]

    def actionNodes(self):
        return list(self._actionNodes)

    def parentNodes(self):
        return list(self._parentNodes)

    def configurations(self):
        return list(self._configurations)

    def configurationLabels(self, configuration):
        return collections.OrderedDict((name, self._nodes[name].states()[stateIndex])
                                       for name, stateIndex in zip(self._actionNodes, configuration))

    def mapTarget(self, configuration):
        return self._actionMap[tuple(configuration)]

    def stateWeights(self):
        return dict(self._stateWeights)

    def configurationWeights(self):
        return self._configurationWeights

    def _weightOf(self, configuration):
        weight = 1.0
        for name, label in self.configurationLabels(configuration).items():
            weight *= self._stateWeights.get((name, label), 1.0)
        return weight

    def _validate(self):
        for name in self._actionNodes:
            if not self._nodes[name].parents():
                raise errors.ConfigurationError("Action node %(node)s has no parents" % dict(node=name))
            for parent in self._nodes[name].parents():
                if self._nodes[parent].isAction():
                    raise errors.ConfigurationError(
                        "Action node %(node)s has action node %(parent)s as a parent" %
                        dict(node=name, parent=parent))
        if not self._actionNodes:
            raise errors.ConfigurationError("Net %(net)s declares no action node" % dict(net=self._name))
        for configuration in self._configurations:
            if configuration not in self._actionMap:
                raise errors.ConfigurationError(
                    "Action mapping of net %(net)s does not cover %(config)s" % dict(
                        net=self._name, config=dict(self.configurationLabels(configuration))))
        for weight in self._stateWeights.values():
            if not weight > 0:
                raise errors.ConfigurationError("Mismatch weights must be strictly positive")

    def describe(self):
        lines = ['net "%s" env "%s" (%d nodes)' % (self._name, self._envName, self.nodeCount())]
        for node in self.nodes():
            lines.append("  %s %s states=%s parents=%s" % (
                "action" if node.isAction() else "abstract", node.name(), node.states(), node.parents()))
        for node in self.nodes():
            cpt = self._cpts[node.name()]
            for parentStateIndices, row in cpt.rows():
                given = ", ".join("%s=%s" % (parentName, self._nodes[parentName].states()[index])
                                  for parentName, index in zip(cpt.parentNames(), parentStateIndices))
                lines.append("  P(%s | %s) = %s" % (node.name(), given, list(row)))
        for (name, label), weight in sorted(self._stateWeights.items()):
            lines.append("  weight %s=%s -> %s" % (name, label, weight))
        return "\n".join(lines)

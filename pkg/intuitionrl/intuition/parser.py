"""Reader for the line-oriented Intuition Net language (grammar in docs/formats.md)."""
import collections
import hashlib
import itertools
import logging
import re
import numpy as np
from intuitionrl import errors
from intuitionrl.envs import registry
from intuitionrl.intuition import net as netmodule

_TOKEN = re.compile(r'''
    (?P<space>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<arrow>->)
  | (?P<number>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<string>"[^"\n]*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>[{}\[\](),:|=*])
''', re.VERBOSE)

Token = collections.namedtuple('Token', 'kind value line column')
WILDCARD = "*"


def tokenize(line, lineNumber):
    tokens = []
    position = 0
    while position < len(line):
        match = _TOKEN.match(line, position)
        if match is None:
            raise errors.NetParseError("unexpected character %r" % line[position], lineNumber, position + 1)
        kind = match.lastgroup
        if kind not in ("space", "comment"):
            tokens.append(Token(kind, match.group(kind), lineNumber, position + 1))
        position = match.end()
    return tokens


class _LineParser:
    def __init__(self, tokens, lineNumber, lineLength):
        self._tokens = tokens
        self._position = 0
        self._lineNumber = lineNumber
        self._lineLength = lineLength

    def _error(self, message, token=None):
        if token is None:
            return errors.NetParseError(message, self._lineNumber, self._lineLength + 1)
        return errors.NetParseError(message, token.line, token.column)

    def peek(self):
        if self._position < len(self._tokens):
            return self._tokens[self._position]
        return None

    def next(self):
        token = self.peek()
        if token is None:
            raise self._error("unexpected end of line")
        self._position += 1
        return token

    def expect(self, kind, value=None):
        token = self.next()
        if token.kind != kind or (value is not None and token.value != value):
            expected = value if value is not None else kind
            raise self._error("expected %s, found %r" % (expected, token.value), token)
        return token

    def accept(self, kind, value=None):
        token = self.peek()
        if token is not None and token.kind == kind and (value is None or token.value == value):
            self._position += 1
            return token
        return None

    def expectEnd(self):
        token = self.peek()
        if token is not None:
            raise self._error("unexpected %r" % token.value, token)

    def identifierList(self):
        self.expect("symbol", "[")
        items = [self.expect("ident").value]
        while self.accept("symbol", ","):
            items.append(self.expect("ident").value)
        self.expect("symbol", "]")
        return items

    def numberList(self):
        self.expect("symbol", "[")
        items = [float(self.expect("number").value)]
        while self.accept("symbol", ","):
            items.append(float(self.expect("number").value))
        self.expect("symbol", "]")
        return items

    def assignment(self, allowWildcard=True):
        name = self.expect("ident")
        self.expect("symbol", "=")
        token = self.next()
        if token.kind == "ident" or (allowWildcard and token.kind == "symbol" and token.value == WILDCARD):
            return name, token.value
        raise self._error("expected a state label, found %r" % token.value, token)


class _Statement:
    def __init__(self, kind, token, **fields):
        self.kind = kind
        self.token = token
        self.__dict__.update(fields)


def _parseLine(tokens, lineNumber, lineLength):
    parser = _LineParser(tokens, lineNumber, lineLength)
    first = parser.expect("ident")
    if first.value == "net":
        name = parser.expect("string").value.strip('"')
        parser.expect("ident", "env")
        envName = parser.expect("string").value.strip('"')
        parser.expectEnd()
        return _Statement("net", first, name=name, envName=envName)
    if first.value in ("node", "action"):
        isAction = first.value == "action"
        if isAction:
            parser.expect("ident", "node")
        nameToken = parser.expect("ident")
        parser.expect("symbol", "{")
        fields = dict()
        while True:
            key = parser.expect("ident")
            if key.value not in ("states", "parents"):
                raise parser._error("unknown node attribute %r" % key.value, key)
            if key.value in fields:
                raise parser._error("attribute %r given twice" % key.value, key)
            parser.expect("symbol", ":")
            fields[key.value] = parser.identifierList()
            if not parser.accept("symbol", ","):
                break
        parser.expect("symbol", "}")
        parser.expectEnd()
        if "states" not in fields:
            raise parser._error("node %s declares no states" % nameToken.value, nameToken)
        return _Statement("node", nameToken, name=nameToken.value, states=fields["states"],
                          parents=fields.get("parents", []), isAction=isAction)
    if first.value == "cpt":
        nameToken = parser.expect("ident")
        given = []
        if parser.accept("symbol", "|"):
            given.append(parser.assignment())
            while parser.accept("symbol", ","):
                given.append(parser.assignment())
        parser.expect("arrow")
        probabilities = parser.numberList()
        parser.expectEnd()
        return _Statement("cpt", nameToken, name=nameToken.value, given=given, probabilities=probabilities)
    if first.value == "weight":
        nameToken, label = parser.assignment(allowWildcard=False)
        parser.expect("arrow")
        weight = float(parser.expect("number").value)
        parser.expectEnd()
        return _Statement("weight", nameToken, name=nameToken.value, label=label, weight=weight)
    if first.value == "map":
        parser.expect("symbol", "(")
        given = [parser.assignment()]
        while parser.accept("symbol", ","):
            given.append(parser.assignment())
        parser.expect("symbol", ")")
        parser.expect("arrow")
        if parser.accept("symbol", "{"):
            alternatives = []
            while True:
                nodeToken, label = parser.assignment(allowWildcard=False)
                parser.expect("symbol", ":")
                alternatives.append((nodeToken.value, label, parser.expect("ident").value))
                if not parser.accept("symbol", ","):
                    break
            parser.expect("symbol", "}")
            target = netmodule.MarginalChoice(alternatives)
        else:
            target = parser.expect("ident").value
        parser.expectEnd()
        return _Statement("map", first, given=given, target=target)
    raise parser._error("unknown statement %r" % first.value, first)


class _NetBuilder:
    def __init__(self, statements):
        self._statements = statements
        self._header = None
        self._declarations = collections.OrderedDict()

    def _error(self, message, statement):
        return errors.NetParseError(message, statement.token.line, statement.token.column)

    def build(self):
        for statement in self._statements:
            if statement.kind == "net":
                if self._header is not None:
                    raise self._error("second net header", statement)
                self._header = statement
            elif statement.kind == "node":
                if statement.name in self._declarations:
                    raise self._error("duplicate node %s" % statement.name, statement)
                if len(statement.states) < 2:
                    raise self._error("node %s needs at least two states" % statement.name, statement)
                if len(set(statement.states)) != len(statement.states):
                    raise self._error("node %s has duplicate state labels" % statement.name, statement)
                self._declarations[statement.name] = statement
        if self._header is None:
            raise errors.NetParseError("missing 'net \"<name>\" env \"<env>\"' header", 1, 1)
        envSpec = self._envSpec()
        nodes = [netmodule.IntuitionNode(declaration.name, declaration.states, declaration.parents,
                                         declaration.isAction)
                 for declaration in self._declarations.values()]
        self._checkParentsAndCycles()
        nodesByName = dict((node.name(), node) for node in nodes)
        cpts = self._buildCPTs(nodesByName)
        actionNodes = [node for node in nodes if node.isAction()]
        actionMap = self._buildActionMap(actionNodes, envSpec)
        weights = self._buildWeights(nodesByName)
        return netmodule.IntuitionNet(self._header.name, self._header.envName, nodes, cpts, actionMap,
                                      weights, envSpec)

    def _envSpec(self):
        try:
            return registry.spec(self._header.envName)
        except errors.ConfigurationError as e:
            raise self._error(str(e), self._header)

    def _checkParentsAndCycles(self):
        for declaration in self._declarations.values():
            for parent in declaration.parents:
                if parent not in self._declarations:
                    raise self._error("node %s has unknown parent %s" % (declaration.name, parent),
                                      declaration)
            if len(set(declaration.parents)) != len(declaration.parents):
                raise self._error("node %s lists a parent twice" % declaration.name, declaration)
        remaining = dict((name, set(declaration.parents)) for name, declaration in self._declarations.items())
        while remaining:
            roots = [name for name, parents in remaining.items() if not parents]
            if not roots:
                cyclic = sorted(remaining.keys())
                raise self._error("cycle detected among nodes %s" % ", ".join(cyclic),
                                  self._declarations[cyclic[0]])
            for root in roots:
                del remaining[root]
            for parents in remaining.values():
                parents.difference_update(roots)

    def _rowIndexLists(self, node, parentNodes, given, statement):
        labels = dict()
        for nameToken, label in given:
            if nameToken.value not in node.parents():
                raise errors.NetParseError("%s is not a parent of %s" % (nameToken.value, node.name()),
                                           nameToken.line, nameToken.column)
            if nameToken.value in labels:
                raise errors.NetParseError("parent %s assigned twice" % nameToken.value,
                                           nameToken.line, nameToken.column)
            labels[nameToken.value] = (nameToken, label)
        indexLists = []
        for parent in parentNodes:
            if parent.name() not in labels:
                raise self._error("cpt row for %s does not assign parent %s" % (node.name(), parent.name()),
                                  statement)
            nameToken, label = labels[parent.name()]
            if label == WILDCARD:
                indexLists.append(range(parent.cardinality()))
            elif label in parent.states():
                indexLists.append([parent.states().index(label)])
            else:
                raise errors.NetParseError("node %s has no state %s" % (parent.name(), label),
                                           nameToken.line, nameToken.column)
        return indexLists

    def _buildCPTs(self, nodesByName):
        tables = dict()
        for name, declaration in self._declarations.items():
            node = nodesByName[name]
            parentShape = tuple(nodesByName[parent].cardinality() for parent in node.parents())
            shape = parentShape + (node.cardinality(),)
            tables[name] = np.full(shape, np.nan)
        for statement in self._statements:
            if statement.kind != "cpt":
                continue
            if statement.name not in nodesByName:
                raise self._error("cpt for unknown node %s" % statement.name, statement)
            node = nodesByName[statement.name]
            parentNodes = [nodesByName[parent] for parent in node.parents()]
            probabilities = np.array(statement.probabilities)
            if len(probabilities) != node.cardinality():
                raise self._error("cpt row for %s has %d entries, node has %d states" % (
                    node.name(), len(probabilities), node.cardinality()), statement)
            if np.any(probabilities < 0) or np.any(probabilities > 1):
                raise self._error("cpt row for %s has entries outside [0, 1]" % node.name(), statement)
            total = float(np.sum(probabilities))
            if abs(total - 1.0) > netmodule.ROW_SUM_TOLERANCE:
                raise self._error("cpt row for %s sums to %r, not 1" % (node.name(), total), statement)
            indexLists = self._rowIndexLists(node, parentNodes, statement.given, statement)
            for parentStateIndices in itertools.product(*indexLists):
                tables[node.name()][parentStateIndices] = probabilities
        cpts = dict()
        for name, declaration in self._declarations.items():
            node = nodesByName[name]
            table = tables[name]
            if not node.parents() and not node.isAction() and np.all(np.isnan(table)):
                table[...] = 1.0 / node.cardinality()
            if np.any(np.isnan(table)):
                missing = [index for index in itertools.product(*[range(size) for size in table.shape[:-1]])
                           if np.any(np.isnan(table[index]))][0]
                labels = ", ".join("%s=%s" % (parent, nodesByName[parent].states()[stateIndex])
                                   for parent, stateIndex in zip(node.parents(), missing))
                raise self._error("missing cpt row for %s given (%s)" % (name, labels), declaration)
            cpts[name] = netmodule.CPT(node, [nodesByName[parent] for parent in node.parents()], table)
        return cpts

    def _buildActionMap(self, actionNodes, envSpec):
        actionMap = dict()
        mapStatements = [statement for statement in self._statements if statement.kind == "map"]
        actionNames = set(envSpec.actionNames)
        if not mapStatements and len(actionNodes) == 1 and set(actionNodes[0].states()) <= actionNames:
            for stateIndex, label in enumerate(actionNodes[0].states()):
                actionMap[(stateIndex,)] = label
            return actionMap
        byName = dict((node.name(), node) for node in actionNodes)
        for statement in mapStatements:
            labels = dict()
            for nameToken, label in statement.given:
                if nameToken.value not in byName:
                    raise errors.NetParseError("%s is not an action node" % nameToken.value,
                                               nameToken.line, nameToken.column)
                if label != WILDCARD and label not in byName[nameToken.value].states():
                    raise errors.NetParseError("node %s has no state %s" % (nameToken.value, label),
                                               nameToken.line, nameToken.column)
                labels[nameToken.value] = label
            missing = [node.name() for node in actionNodes if node.name() not in labels]
            if missing:
                raise self._error("map does not assign action nodes %s" % ", ".join(missing), statement)
            self._checkMapTarget(statement, byName, actionNames)
            indexLists = []
            for node in actionNodes:
                label = labels[node.name()]
                indexLists.append(range(node.cardinality()) if label == WILDCARD else
                                  [node.states().index(label)])
            for configuration in itertools.product(*indexLists):
                actionMap[configuration] = statement.target
        return actionMap

    def _checkMapTarget(self, statement, byName, actionNames):
        if isinstance(statement.target, netmodule.MarginalChoice):
            for nodeName, label, actionName in statement.target.alternatives():
                if nodeName not in byName or label not in byName[nodeName].states():
                    raise self._error("unknown alternative %s=%s" % (nodeName, label), statement)
                if actionName not in actionNames:
                    raise self._error("unknown environment action %s" % actionName, statement)
        elif statement.target not in actionNames:
            raise self._error("unknown environment action %s; valid: %s" % (
                statement.target, ", ".join(sorted(actionNames))), statement)

    def _buildWeights(self, nodesByName):
        weights = dict()
        for statement in self._statements:
            if statement.kind != "weight":
                continue
            node = nodesByName.get(statement.name)
            if node is None or not node.isAction():
                raise self._error("weight on %s, which is not an action node" % statement.name, statement)
            if statement.label not in node.states():
                raise self._error("node %s has no state %s" % (statement.name, statement.label), statement)
            if not statement.weight > 0:
                raise self._error("weight must be strictly positive", statement)
            weights[(statement.name, statement.label)] = statement.weight
        return weights


def parseNet(text):
    statements = []
    for lineNumber, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize(line, lineNumber)
        if tokens:
            statements.append(_parseLine(tokens, lineNumber, len(line)))
    net = _NetBuilder(statements).build()
    logging.debug("Parsed net %(name)s for %(env)s with %(count)d nodes",
                  dict(name=net.name(), env=net.envName(), count=net.nodeCount()))
    return net


def netDigest(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def loadNet(path):
    with open(path, encoding="utf-8") as f:
        text = f.read()
    logging.info("Reading intuition net %(path)s", dict(path=path))
    return parseNet(text), netDigest(text)

import numpy as np
from intuitionrl.intuition import inference

MARGIN = 1.0


class IntuitionTargets:
    """Per-sample intuitive environment action, its declared mismatch weight and the
    confidence of the net in it.

    The confidence of a sample is the gap between the posterior mass of its two most likely
    environment actions, so a row the net is unsure about barely pulls on the policy. The
    hinge scales every sample by weight times confidence."""

    def __init__(self, actions, weights, confidences=None):
        self.actions = np.asarray(actions, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        if confidences is None:
            confidences = np.ones(len(self.actions))
        self.confidences = np.asarray(confidences, dtype=np.float64)
        assert self.actions.shape == self.weights.shape == self.confidences.shape

    def __len__(self):
        return len(self.actions)

    def subset(self, indices):
        return IntuitionTargets(self.actions[indices], self.weights[indices], self.confidences[indices])

    def scaled(self, factor):
        return IntuitionTargets(self.actions, self.weights * factor, self.confidences)

    def strengths(self):
        return self.weights * self.confidences


def actionConfidence(net, probabilities):
    """Gap between the posterior mass of the most and second most likely environment action."""
    ordered = np.sort(inference.actionMassBatch(net, probabilities), axis=1)
    return ordered[:, -1] - ordered[:, -2]


def computeTargets(net, encoder, obsBatch, mode=inference.MAP, rng=None):
    encoder.checkCompatible(net)
    parentIndices = encoder.encodeBatch(obsBatch)
    probabilities = inference.posteriorBatch(net, parentIndices)
    actions, chosen = inference.intuitiveActionsBatch(net, probabilities, mode, rng)
    weights = net.configurationWeights()[chosen]
    return IntuitionTargets(actions, np.asarray(weights, dtype=np.float64),
                            actionConfidence(net, probabilities))


def _marginsAndRivals(logits, actions):
    rows = np.arange(len(logits))
    others = np.array(logits, dtype=np.float64)
    others[rows, actions] = -np.inf
    rivals = np.argmax(others, axis=1)
    return logits[rows, actions] - others[rows, rivals], rivals


def intuitionLoss(logits, targets, margin=MARGIN):
    logits = np.asarray(logits, dtype=np.float64)
    assert len(logits) >= 1
    margins, unused = _marginsAndRivals(logits, targets.actions)
    return float(np.mean(targets.strengths() * np.maximum(0.0, margin - margins)))


def intuitionLossGradient(logits, targets, margin=MARGIN):
    """Subgradient with respect to the logits; zero at the hinge point."""
    logits = np.asarray(logits, dtype=np.float64)
    n = len(logits)
    rows = np.arange(n)
    margins, rivals = _marginsAndRivals(logits, targets.actions)
    active = (margin - margins) > 0
    scale = np.where(active, targets.strengths() / n, 0.0)
    gradient = np.zeros_like(logits)
    gradient[rows, targets.actions] -= scale
    gradient[rows, rivals] += scale
    return gradient


def mismatchVector(actions, targets):
    return np.where(np.asarray(actions) == targets.actions, 1, -1)


def agreementRate(actions, targets):
    if len(targets) == 0:
        return float("nan")
    return float(np.mean(mismatchVector(actions, targets) == 1))

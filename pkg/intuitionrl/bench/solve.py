from intuitionrl import config
from intuitionrl import errors
from intuitionrl.envs import registry

SSR = "SSR"
BBR = "BBR"


class SolveCriterion:
    def __init__(self, kind, threshold, evalEpisodes=None):
        assert kind in (SSR, BBR), kind
        if evalEpisodes is None:
            evalEpisodes = config.EVAL_EPISODES
        assert evalEpisodes >= 1
        self._kind = kind
        self._threshold = float(threshold)
        self._evalEpisodes = evalEpisodes

    def kind(self):
        return self._kind

    def threshold(self):
        return self._threshold

    def evalEpisodes(self):
        return self._evalEpisodes

    def isMet(self, meanEvalReward):
        return meanEvalReward >= self._threshold

    def asDict(self):
        return dict(kind=self._kind, threshold=self._threshold, evalEpisodes=self._evalEpisodes)

    def __repr__(self):
        return "%s>=%s" % (self._kind, self._threshold)


def _solvingRow(curve, criterion):
    if not curve:
        raise errors.UsageError("Cannot detect a solve on an empty learning curve")
    previousStep = None
    for row in curve:
        assert previousStep is None or row.step >= previousStep, "curve rows out of step order"
        previousStep = row.step
        if criterion.isMet(row.meanEvalReward):
            return row
    return None


def stepsToSolve(curve, criterion):
    """First cumulative step count whose evaluation mean meets the criterion, None when unsolved."""
    row = _solvingRow(curve, criterion)
    return None if row is None else row.step


def secondsToSolve(curve, criterion):
    row = _solvingRow(curve, criterion)
    return None if row is None else row.wallClockSeconds


def gainPercent(baseline, shire):
    assert baseline > 0
    return 100.0 * (baseline - shire) / baseline


def bbrThreshold(baselineCurve, target=None):
    """Best baseline evaluation mean, capped at a published target the baseline reaches."""
    if not baselineCurve:
        raise errors.UsageError("Cannot derive a best-baseline threshold from an empty learning curve")
    best = max(row.meanEvalReward for row in baselineCurve)
    if target is not None and best >= target:
        return float(target)
    return float(best)


def ssrCriterion(envName, evalEpisodes=None):
    spec = registry.spec(envName)
    if not spec.isSolvable():
        return None
    return SolveCriterion(SSR, spec.ssr, evalEpisodes)


def bbrCriterion(envName, baselineCurve, evalEpisodes=None):
    return SolveCriterion(BBR, bbrThreshold(baselineCurve, registry.spec(envName).bbrTarget), evalEpisodes)

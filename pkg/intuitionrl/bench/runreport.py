import collections
from intuitionrl.bench import solve

CURVE_CSV_COLUMNS = ["step", "mean_eval_reward", "loss_policy", "loss_value", "loss_entropy",
                     "loss_intuition", "agreement_rate"]

BASELINE = "baseline"
SHIRE = "shire"

_CURVE_ROW_FIELDS = ('step meanEvalReward stdEvalReward lossPolicy lossValue lossEntropy lossIntuition '
                     'agreementRate wallClockSeconds')


class CurveRow(collections.namedtuple('CurveRow', _CURVE_ROW_FIELDS)):
    def csvValues(self):
        return [self.step, self.meanEvalReward, self.lossPolicy, self.lossValue, self.lossEntropy,
                self.lossIntuition, "" if self.agreementRate is None else self.agreementRate]


def curveRow(step, meanEvalReward, stdEvalReward=0.0, lossPolicy=0.0, lossValue=0.0, lossEntropy=0.0,
             lossIntuition=0.0, agreementRate=None, wallClockSeconds=0.0):
    return CurveRow(step, meanEvalReward, stdEvalReward, lossPolicy, lossValue, lossEntropy, lossIntuition,
                    agreementRate, wallClockSeconds)


class RunReport:
    """Outcome of one training run: learning curve, solve point, timing and final evaluation."""

    def __init__(self, envName, seed, arm, config, curve, criterion=None, stepsToSolve=None,
                 secondsToSolve=None, wallClockSeconds=0.0, overheadMicrosecondsPerSample=None,
                 finalEvalMean=None, finalEvalStd=None, totalSteps=0, netName=None, netDigest=None):
        assert arm in (BASELINE, SHIRE), arm
        assert stepsToSolve is None or stepsToSolve <= totalSteps
        self.envName = envName
        self.seed = seed
        self.arm = arm
        self.config = config
        self.curve = list(curve)
        self.criterion = criterion
        self.stepsToSolve = stepsToSolve
        self.secondsToSolve = secondsToSolve
        self.wallClockSeconds = wallClockSeconds
        self.overheadMicrosecondsPerSample = overheadMicrosecondsPerSample
        self.finalEvalMean = finalEvalMean
        self.finalEvalStd = finalEvalStd
        self.totalSteps = totalSteps
        self.netName = netName
        self.netDigest = netDigest

    def solved(self):
        return self.stepsToSolve is not None

    def bestEvalMean(self):
        if not self.curve:
            return None
        return max(row.meanEvalReward for row in self.curve)

    def asDict(self):
        return dict(
            envName=self.envName, seed=self.seed, arm=self.arm, config=self.config,
            curve=[row._asdict() for row in self.curve],
            criterion=None if self.criterion is None else self.criterion.asDict(),
            stepsToSolve=self.stepsToSolve, secondsToSolve=self.secondsToSolve,
            wallClockSeconds=self.wallClockSeconds,
            overheadMicrosecondsPerSample=self.overheadMicrosecondsPerSample,
            finalEvalMean=self.finalEvalMean, finalEvalStd=self.finalEvalStd, totalSteps=self.totalSteps,
            netName=self.netName, netDigest=self.netDigest)

    @classmethod
    def fromDict(cls, data):
        criterion = data.get("criterion")
        if criterion is not None:
            criterion = solve.SolveCriterion(criterion["kind"], criterion["threshold"],
                                             criterion["evalEpisodes"])
        return cls(envName=data["envName"], seed=data["seed"], arm=data["arm"], config=data["config"],
                   curve=[CurveRow(**row) for row in data["curve"]], criterion=criterion,
                   stepsToSolve=data["stepsToSolve"], secondsToSolve=data["secondsToSolve"],
                   wallClockSeconds=data["wallClockSeconds"],
                   overheadMicrosecondsPerSample=data["overheadMicrosecondsPerSample"],
                   finalEvalMean=data["finalEvalMean"], finalEvalStd=data["finalEvalStd"],
                   totalSteps=data["totalSteps"], netName=data["netName"], netDigest=data["netDigest"])

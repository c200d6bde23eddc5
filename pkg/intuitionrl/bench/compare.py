import logging
import multiprocessing.pool
import numpy as np
from intuitionrl import errors
from intuitionrl.bench import solve
from intuitionrl.envs import registry
from intuitionrl.ppo import trainer

OK = "ok"
INCONCLUSIVE = "inconclusive"
BASELINE_UNSOLVED = "baseline-unsolved"
SHIRE_UNSOLVED = "shire-unsolved"


class ComparisonReport:
    """Matched-seed baseline and intuition-augmented runs of one environment and net."""

    def __init__(self, baseline, shire, criterion):
        assert baseline.seed == shire.seed
        self.baseline = baseline
        self.shire = shire
        self.criterion = criterion
        self.sampleEfficiencyGain = None
        self.wallClockGain = None
        if baseline.solved() and shire.solved():
            self.status = OK
            self.sampleEfficiencyGain = solve.gainPercent(baseline.stepsToSolve, shire.stepsToSolve)
            if baseline.secondsToSolve:
                self.wallClockGain = solve.gainPercent(baseline.secondsToSolve, shire.secondsToSolve)
        elif not baseline.solved() and not shire.solved():
            self.status = INCONCLUSIVE
        elif baseline.solved():
            self.status = SHIRE_UNSOLVED
        else:
            self.status = BASELINE_UNSOLVED

    def envName(self):
        return self.shire.envName

    def netName(self):
        return self.shire.netName

    def seed(self):
        return self.shire.seed

    def asDict(self):
        return dict(envName=self.envName(), netName=self.netName(), seed=self.seed(), status=self.status,
                    criterion=None if self.criterion is None else self.criterion.asDict(),
                    sampleEfficiencyGain=self.sampleEfficiencyGain, wallClockGain=self.wallClockGain,
                    baseline=self.baseline.asDict(), shire=self.shire.asDict())


def _median(values):
    values = [value for value in values if value is not None]
    if not values:
        return None
    return float(np.median(values))


def aggregate(reports):
    """Median over seeds of the gains and solve points of one net's comparisons."""
    assert reports
    solvedBoth = [report for report in reports if report.status == OK]
    return dict(
        envName=reports[0].envName(), netName=reports[0].netName(),
        seeds=[report.seed() for report in reports],
        conclusiveSeeds=[report.seed() for report in reports if report.status != INCONCLUSIVE],
        medianSampleEfficiencyGain=_median([report.sampleEfficiencyGain for report in solvedBoth]),
        medianWallClockGain=_median([report.wallClockGain for report in solvedBoth]),
        medianBaselineSteps=_median([report.baseline.stepsToSolve for report in solvedBoth]),
        medianShireSteps=_median([report.shire.stepsToSolve for report in solvedBoth]),
        medianBaselineSeconds=_median([report.baseline.secondsToSolve for report in solvedBoth]),
        medianShireSeconds=_median([report.shire.secondsToSolve for report in solvedBoth]),
        inconclusive=all(report.status == INCONCLUSIVE for report in reports))


def _withCriterion(report, criterion):
    report.criterion = criterion
    report.stepsToSolve = solve.stepsToSolve(report.curve, criterion) if report.curve else None
    report.secondsToSolve = solve.secondsToSolve(report.curve, criterion) if report.curve else None
    return report


def compareSeed(envName, nets, config, seed):
    """Trains one baseline for the seed and one intuition-augmented run per net against it.

    nets is a list of (net, digest) pairs. Environments without a solved-state reward run the
    baseline for its whole budget first and take the best-baseline threshold from its curve."""
    seedConfig = config.replace(seed=seed)
    criterion = solve.ssrCriterion(envName, seedConfig.evalEpisodes)
    if criterion is not None:
        unused, baseline = trainer.train(envName, seedConfig.baselineArm(), criterion=criterion)
    else:
        unused, baseline = trainer.train(envName, seedConfig.baselineArm())
        criterion = None
        if baseline.curve:
            criterion = solve.bbrCriterion(envName, baseline.curve, seedConfig.evalEpisodes)
        if criterion is not None:
            _withCriterion(baseline, criterion)
            logging.info("%(env)s seed %(seed)s: best-baseline threshold %(threshold).3f", dict(
                env=envName, seed=seed, threshold=criterion.threshold()))
    comparisons = []
    for net, digest in nets:
        unused, shire = trainer.train(envName, seedConfig.replace(intuitionEnabled=True), net=net,
                                      criterion=criterion, netDigest=digest)
        comparison = ComparisonReport(baseline, shire, criterion)
        logging.info("%(env)s seed %(seed)s net %(net)s: %(status)s, baseline %(baseline)s steps, "
                     "shire %(shire)s steps, gain %(gain)s%%", dict(
                         env=envName, seed=seed, net=net.name(), status=comparison.status,
                         baseline=baseline.stepsToSolve, shire=shire.stepsToSolve,
                         gain=comparison.sampleEfficiencyGain))
        comparisons.append(comparison)
    return comparisons


def compareVariants(envName, nets, config, seeds, workers=1):
    """Per-seed comparisons for every net plus the per-net median aggregate.

    Returns (reports, aggregates): reports holds one list of ComparisonReport per net, in seed order."""
    if not seeds:
        raise errors.UsageError("At least one seed is required for a comparison")
    if not nets:
        raise errors.UsageError("At least one intuition net is required for a comparison")
    registry.spec(envName)
    for net, unused in nets:
        if net.envName() != envName:
            raise errors.ConfigurationError("Net %(net)s is written for %(netEnv)s, not %(env)s" % dict(
                net=net.name(), netEnv=net.envName(), env=envName))

    def job(seed):
        try:
            return compareSeed(envName, nets, config, seed)
        except Exception:
            logging.exception("Comparison of %(env)s seed %(seed)s failed", dict(env=envName, seed=seed))
            raise

    if workers <= 1:
        perSeed = [job(seed) for seed in seeds]
    else:
        pool = multiprocessing.pool.ThreadPool(min(workers, len(seeds)))
        try:
            perSeed = pool.map(job, seeds)
        finally:
            pool.close()
            pool.join()
    reports = [[comparisons[index] for comparisons in perSeed] for index in range(len(nets))]
    aggregates = [aggregate(netReports) for netReports in reports]
    for summary in aggregates:
        logging.info("%(env)s net %(net)s over seeds %(seeds)s: median gain %(gain)s%%, median time gain "
                     "%(timeGain)s%%", dict(env=envName, net=summary["netName"], seeds=summary["seeds"],
                                           gain=summary["medianSampleEfficiencyGain"],
                                           timeGain=summary["medianWallClockGain"]))
    return reports, aggregates


def compare(envName, net, config, seeds, workers=1, netDigest=None):
    reports, aggregates = compareVariants(envName, [(net, netDigest)], config, seeds, workers)
    return reports[0], aggregates[0]

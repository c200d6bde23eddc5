import argparse
import collections
from intuitionrl import artifacts
from intuitionrl.bench import compare
from intuitionrl.bench import reports
from intuitionrl.bench import runreport
from intuitionrl.bench import solve


def pairRuns(directories):
    """Groups completed runs by (environment, seed) into a baseline and its intuition runs."""
    groups = collections.defaultdict(lambda: dict(baseline=None, shire=[]))
    for directory in directories:
        report = artifacts.readRun(directory)
        group = groups[(report.envName, report.seed)]
        if report.arm == runreport.BASELINE:
            group["baseline"] = report
        else:
            group["shire"].append(report)
    return groups


def comparisons(groups):
    byNet = collections.defaultdict(list)
    for (envName, seed), group in sorted(groups.items()):
        if group["baseline"] is None:
            print("No baseline run for %s seed %s; skipped" % (envName, seed))
            continue
        criterion = group["baseline"].criterion
        if criterion is None and group["baseline"].curve:
            criterion = solve.bbrCriterion(envName, group["baseline"].curve)
        for shire in group["shire"]:
            baseline = group["baseline"]
            if criterion is not None:
                baseline.stepsToSolve = solve.stepsToSolve(baseline.curve, criterion)
                baseline.secondsToSolve = solve.secondsToSolve(baseline.curve, criterion)
                shire.stepsToSolve = solve.stepsToSolve(shire.curve, criterion) if shire.curve else None
                shire.secondsToSolve = solve.secondsToSolve(shire.curve, criterion) if shire.curve else None
            byNet[(envName, shire.netName)].append(compare.ComparisonReport(baseline, shire, criterion))
    return [byNet[key] for key in sorted(byNet)]


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Rebuild the comparison table from completed train runs")
    parser.add_argument("runDirectories", nargs="+")
    parser.add_argument("--out", default="summary.csv")
    args = parser.parse_args()
    netReports = comparisons(pairRuns(args.runDirectories))
    aggregates = [compare.aggregate(items) for items in netReports]
    reports.writeCsv(args.out, reports.SUMMARY_CSV_COLUMNS, reports.summaryRows(netReports, aggregates))
    print("Wrote %s" % args.out)

import csv
import os
import logging
import simplejson

SUMMARY_CSV_COLUMNS = ["environment", "net", "seed", "criterion", "baseline_steps", "shire_steps",
                       "gain_percent", "baseline_minutes", "shire_minutes", "time_gain_percent"]
OVERHEAD_CSV_COLUMNS = ["environment", "net", "net_size", "us_per_sample"]


def writeJson(path, data):
    with open(path, "w") as f:
        simplejson.dump(data, f, sort_keys=True, indent=2, ignore_nan=True)
        f.write("\n")


def readJson(path):
    with open(path) as f:
        return simplejson.load(f)


def _blank(value):
    return "" if value is None else value


def _minutes(seconds):
    return None if seconds is None else seconds / 60.0


def _criterionLabel(criterion):
    if criterion is None:
        return ""
    return "%s=%g" % (criterion.kind(), criterion.threshold())


def summaryRows(reports, aggregates):
    """One row per seed and a median row per net, with the columns of SUMMARY_CSV_COLUMNS."""
    rows = []
    for netReports, summary in zip(reports, aggregates):
        for report in netReports:
            rows.append([report.envName(), report.netName(), report.seed(), _criterionLabel(report.criterion),
                         _blank(report.baseline.stepsToSolve), _blank(report.shire.stepsToSolve),
                         _blank(report.sampleEfficiencyGain),
                         _blank(_minutes(report.baseline.secondsToSolve)),
                         _blank(_minutes(report.shire.secondsToSolve)), _blank(report.wallClockGain)])
        rows.append([summary["envName"], summary["netName"], "median", "",
                     _blank(summary["medianBaselineSteps"]), _blank(summary["medianShireSteps"]),
                     _blank(summary["medianSampleEfficiencyGain"]),
                     _blank(_minutes(summary["medianBaselineSeconds"])),
                     _blank(_minutes(summary["medianShireSeconds"])), _blank(summary["medianWallClockGain"])])
    return rows


def writeCsv(path, columns, rows):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)


def writeComparison(directory, reports, aggregates):
    jsonPath = os.path.join(directory, "comparison.json")
    csvPath = os.path.join(directory, "summary.csv")
    comparisons = [[report.asDict() for report in netReports] for netReports in reports]
    writeJson(jsonPath, dict(aggregates=aggregates, comparisons=comparisons))
    writeCsv(csvPath, SUMMARY_CSV_COLUMNS, summaryRows(reports, aggregates))
    logging.info("Wrote comparison reports %(json)s and %(csv)s", dict(json=jsonPath, csv=csvPath))
    return jsonPath, csvPath


def writeOverheadTable(path, rows):
    writeCsv(path, OVERHEAD_CSV_COLUMNS, [[row.envName, row.netName, row.size, row.microsecondsPerSample]
                                          for row in rows])
    logging.info("Wrote overhead table %(path)s", dict(path=path))

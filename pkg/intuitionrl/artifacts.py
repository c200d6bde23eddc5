import logging
import os
import time
from intuitionrl import checkpoint
from intuitionrl import errors
from intuitionrl.bench import reports
from intuitionrl.bench import runreport

MANIFEST = "manifest.json"
CURVE_CSV = "curve.csv"
POLICY = "policy.bin"
RUN_FILES = (MANIFEST, CURVE_CSV, POLICY)


def runDirectoryName(seed, now=None):
    if now is None:
        now = time.localtime()
    return "run-%s-seed%s" % (time.strftime("%Y%m%d-%H%M%S", now), seed)


def createRunDirectory(outputDirectory, seed, now=None):
    """Creates a fresh run directory; completed runs are never written to again."""
    path = os.path.join(outputDirectory, runDirectoryName(seed, now))
    if os.path.exists(path):
        raise errors.CheckpointError("Run directory %(path)s already exists; completed runs are immutable" %
                                     dict(path=path))
    os.makedirs(path)
    return path


def writeCurveCsv(path, curve):
    reports.writeCsv(path, runreport.CURVE_CSV_COLUMNS, [row.csvValues() for row in curve])


def manifest(report, netPath=None):
    result = report.asDict()
    result["netPath"] = netPath
    result["files"] = list(RUN_FILES)
    return result


def writeRun(directory, params, report, netPath=None):
    reports.writeJson(os.path.join(directory, MANIFEST), manifest(report, netPath))
    writeCurveCsv(os.path.join(directory, CURVE_CSV), report.curve)
    checkpoint.saveCheckpoint(params, os.path.join(directory, POLICY))
    logging.info("Wrote run %(directory)s", dict(directory=directory))


def isCompletedRun(directory):
    return all(os.path.exists(os.path.join(directory, name)) for name in RUN_FILES)


def readRun(directory):
    if not isCompletedRun(directory):
        raise errors.CheckpointError("%(directory)s is not a completed run directory" %
                                     dict(directory=directory))
    return runreport.RunReport.fromDict(reports.readJson(os.path.join(directory, MANIFEST)))


def createBenchDirectory(outputDirectory, envName, now=None):
    if now is None:
        now = time.localtime()
    path = os.path.join(outputDirectory, "bench-%s-%s" % (envName, time.strftime("%Y%m%d-%H%M%S", now)))
    if os.path.exists(path):
        raise errors.CheckpointError("Bench directory %(path)s already exists" % dict(path=path))
    os.makedirs(path)
    return path

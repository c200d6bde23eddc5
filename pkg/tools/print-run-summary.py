import argparse
import glob
import os
from intuitionrl import artifacts


def summarize(directory):
    report = artifacts.readRun(directory)
    solved = "solved at %d" % report.stepsToSolve if report.solved() else "unsolved"
    finalEval = "n/a" if report.finalEvalMean is None else "%.2f +- %.2f" % (report.finalEvalMean,
                                                                            report.finalEvalStd)
    return "%-40s %-12s %-9s seed %-4s %-18s steps %-8d eval %s" % (
        os.path.basename(directory.rstrip("/")), report.envName, report.arm, report.seed, solved,
        report.totalSteps, finalEval)


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Print one line per completed run directory")
    parser.add_argument("runsDirectory", nargs="?", default="runs")
    args = parser.parse_args()
    for directory in sorted(glob.glob(os.path.join(args.runsDirectory, "run-*"))):
        if artifacts.isCompletedRun(directory):
            print(summarize(directory))
        else:
            print("%s: incomplete" % directory)

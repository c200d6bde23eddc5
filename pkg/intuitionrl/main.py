import argparse
import logging
import os
import sys
from intuitionrl import logconfig
from intuitionrl import artifacts
from intuitionrl import checkpoint
from intuitionrl import config
from intuitionrl import errors
from intuitionrl.bench import compare
from intuitionrl.bench import evaluate
from intuitionrl.bench import overhead
from intuitionrl.bench import reports
from intuitionrl.bench import solve
from intuitionrl.envs import registry
from intuitionrl.intuition import inference
from intuitionrl.intuition import parser as netparser
from intuitionrl.ppo import ppoconfig
from intuitionrl.ppo import trainer


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise errors.UsageError("%s\n%s" % (message, self.format_usage().strip()))


def _seeds(text):
    try:
        seeds = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("seeds must be a comma-separated list of integers, got '%s'" % text)
    if not seeds or min(seeds) < 0:
        raise argparse.ArgumentTypeError("seeds must be non-negative integers, got '%s'" % text)
    return seeds


def _nonNegativeInt(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer, got %s" % text)
    return value


def _addTrainingFlags(subparser):
    subparser.add_argument("--env", required=True, choices=registry.names())
    subparser.add_argument("--steps", type=_nonNegativeInt, help="total environment steps budget")
    subparser.add_argument("--intuitionCoef", type=float, help="intuition loss scaling coefficient")
    subparser.add_argument("--targetMode", choices=inference.TARGET_MODES)
    subparser.add_argument("--evalEpisodes", type=int)
    subparser.add_argument("--out", default=config.RUNS_DIRECTORY)


def _buildParser():
    parser = _ArgumentParser(prog="intuitionrl",
                             description="Intuition-augmented PPO training and benchmarks")
    parser.add_argument("--configurationFile", help="YAML file overriding the built-in defaults")
    parser.add_argument("--verbose", action="store_true")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    train = subparsers.add_parser("train", help="train one policy and write a run directory")
    _addTrainingFlags(train)
    train.add_argument("--seed", type=_nonNegativeInt, default=0)
    train.add_argument("--shire", action="store_true", help="add the intuition loss")
    train.add_argument("--net", help="intuition net file or shipped net name; implies --shire")
    train.add_argument("--resume", metavar="RUN_DIRECTORY", help="refused: completed runs are immutable")

    evalParser = subparsers.add_parser("eval", help="evaluate a policy checkpoint with greedy actions")
    evalParser.add_argument("--checkpoint", required=True)
    evalParser.add_argument("--env", required=True, choices=registry.names())
    evalParser.add_argument("--episodes", type=int, default=None)
    evalParser.add_argument("--seed", type=_nonNegativeInt, default=0)

    bench = subparsers.add_parser("bench", help="matched-seed baseline versus intuition comparison")
    _addTrainingFlags(bench)
    bench.add_argument("--net", action="append", help="may be repeated to compare several nets")
    bench.add_argument("--seeds", type=_seeds, default=list(config.DEFAULT_SEEDS))
    bench.add_argument("--workers", type=int, default=1)

    overheadParser = subparsers.add_parser("overhead", help="time the intuition pipeline per sample")
    overheadParser.add_argument("--env", choices=registry.names())
    overheadParser.add_argument("--net", help="defaults to every shipped net (of --env, if given)")
    overheadParser.add_argument("--samples", type=int, default=None)
    overheadParser.add_argument("--seed", type=_nonNegativeInt, default=0)
    overheadParser.add_argument("--out", help="CSV file for the overhead table")

    inspect = subparsers.add_parser("inspect-net", help="print a parsed net and an optional posterior")
    inspect.add_argument("--net", required=True)
    inspect.add_argument("--given", help="parent assignment, e.g. a=positive,theta=q2")
    return parser


def parseArgs(argv):
    args = _buildParser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        raise errors.UsageError("--workers must be at least 1")
    if getattr(args, "episodes", None) is not None and args.episodes < 1:
        raise errors.UsageError("--episodes must be at least 1")
    if getattr(args, "evalEpisodes", None) is not None and args.evalEpisodes < 1:
        raise errors.UsageError("--evalEpisodes must be at least 1")
    if getattr(args, "samples", None) is not None and args.samples < 1:
        raise errors.UsageError("--samples must be at least 1")
    return args


def netSearchPath():
    directories = []
    extra = os.environ.get(config.NET_PATH_ENVIRONMENT_VARIABLE, "")
    directories.extend(directory for directory in extra.split(os.pathsep) if directory)
    directories.append(config.NETS_DIRECTORY)
    return directories


def resolveNetPath(name):
    if os.path.isfile(name):
        return name
    candidates = [name] if name.endswith(".net") else [name, name + ".net"]
    for directory in netSearchPath():
        for candidate in candidates:
            path = os.path.join(directory, candidate)
            if os.path.isfile(path):
                return path
    raise errors.ConfigurationError("Intuition net '%(name)s' not found in %(path)s" % dict(
        name=name, path=", ".join(netSearchPath())))


def defaultNetName(envName):
    return config.DEFAULT_NETS[envName]


def _loadNet(name):
    path = resolveNetPath(name)
    net, digest = netparser.loadNet(path)
    return net, digest, path


def _configFor(args, seed=0, intuitionEnabled=False):
    return ppoconfig.defaultConfig(args.env, seed=seed, intuitionEnabled=intuitionEnabled,
                                   totalSteps=args.steps, intuitionCoef=args.intuitionCoef,
                                   targetMode=args.targetMode, evalEpisodes=args.evalEpisodes)


def _runTrain(args):
    if args.resume:
        raise errors.UsageError("Refusing to resume %(run)s: completed runs are immutable; start a new run" %
                                dict(run=args.resume))
    intuitionEnabled = args.shire or args.net is not None
    net = digest = netPath = None
    if intuitionEnabled:
        net, digest, netPath = _loadNet(args.net or defaultNetName(args.env))
    trainingConfig = _configFor(args, seed=args.seed, intuitionEnabled=intuitionEnabled)
    directory = artifacts.createRunDirectory(args.out, args.seed)
    criterion = solve.ssrCriterion(args.env, trainingConfig.evalEpisodes)
    params, report = trainer.train(args.env, trainingConfig, net=net, criterion=criterion, netDigest=digest)
    artifacts.writeRun(directory, params, report, netPath)
    print("%s: %s after %d steps, final eval %s" % (
        directory, "solved at step %d" % report.stepsToSolve if report.solved() else "not solved",
        report.totalSteps, "n/a" if report.finalEvalMean is None else "%.2f +- %.2f" % (
            report.finalEvalMean, report.finalEvalStd)))
    return errors.EXIT_OK


def _runEval(args):
    params = checkpoint.loadCheckpoint(args.checkpoint, registry.spec(args.env))
    episodes = config.EVAL_EPISODES if args.episodes is None else args.episodes
    mean, std = evaluate.evaluate(params, args.env, episodes, args.seed)
    print("%s over %d episodes: %.3f +- %.3f" % (args.env, episodes, mean, std))
    return errors.EXIT_OK


def _runBench(args):
    names = args.net or [defaultNetName(args.env)]
    nets = []
    for name in names:
        net, digest, unused = _loadNet(name)
        nets.append((net, digest))
    benchConfig = _configFor(args)
    directory = artifacts.createBenchDirectory(args.out, args.env)
    comparisons, aggregates = compare.compareVariants(args.env, nets, benchConfig, args.seeds, args.workers)
    jsonPath, csvPath = reports.writeComparison(directory, comparisons, aggregates)
    for row in reports.summaryRows(comparisons, aggregates):
        print(",".join(str(value) for value in row))
    print("Wrote %s and %s" % (jsonPath, csvPath))
    return errors.EXIT_OK


def _runOverhead(args):
    if args.net is not None:
        nets = [_loadNet(args.net)[0]]
    else:
        nets = [_loadNet(name)[0] for name in config.SHIPPED_NETS]
    if args.env is not None:
        nets = [net for net in nets if net.envName() == args.env]
        if not nets:
            raise errors.ConfigurationError("No intuition net for environment %(env)s" % dict(env=args.env))
    rows = overhead.measureNets(nets, args.samples, args.seed)
    for row in rows:
        print("%-12s %-22s %2d nodes  %10.3f us/sample" % (row.envName, row.netName, row.size,
                                                           row.microsecondsPerSample))
    if args.out:
        reports.writeOverheadTable(args.out, rows)
    return errors.EXIT_OK


def parseGiven(text):
    assignment = dict()
    for part in text.split(","):
        if part.count("=") != 1 or not all(side.strip() for side in part.split("=")):
            raise errors.UsageError("Malformed --given entry '%(part)s'; expected node=state" %
                                    dict(part=part))
        name, label = [side.strip() for side in part.split("=")]
        assignment[name] = label
    return assignment


def _runInspectNet(args):
    net, digest, path = _loadNet(args.net)
    print(net.describe())
    print("Intuition net size: %d nodes" % net.nodeCount())
    print("sha256: %s" % digest)
    if args.given:
        assignment = parseGiven(args.given)
        unknown = set(assignment) - set(net.parentNodes())
        if unknown:
            raise errors.UsageError("Not parent nodes of %(net)s: %(unknown)s" % dict(
                net=net.name(), unknown=", ".join(sorted(unknown))))
        posterior = inference.inferActionPosterior(net, assignment)
        print("Posterior given %s:" % args.given)
        for configuration, probability in zip(posterior.configurations(), posterior.probabilities()):
            labels = net.configurationLabels(configuration)
            print("  %s: %.6f" % (", ".join("%s=%s" % item for item in labels.items()), probability))
        action = inference.intuitiveAction(net, posterior, inference.MAP)
        print("Intuitive action: %s" % net.envSpec().actionNames[action])
    return errors.EXIT_OK


_COMMANDS = {
    "train": _runTrain,
    "eval": _runEval,
    "bench": _runBench,
    "overhead": _runOverhead,
    "inspect-net": _runInspectNet,
}


def runCommand(args):
    if args.configurationFile:
        ppoconfig.loadConfigurationFile(args.configurationFile)
    logconfig.setVerbosity(args.verbose)
    return _COMMANDS[args.command](args)


def main(argv):
    try:
        return runCommand(parseArgs(argv))
    except Exception as e:
        try:
            exitCode = errors.exitCodeFor(e)
        except Exception:
            logging.exception("Unexpected failure")
            raise
        logging.error("%(kind)s: %(message)s", dict(kind=e.__class__.__name__, message=str(e)))
        return exitCode


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

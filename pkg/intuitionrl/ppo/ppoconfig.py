import logging
import yaml
from intuitionrl import config
from intuitionrl import errors
from intuitionrl.intuition import inference

_FIELDS = ["gamma", "gaeLambda", "clipEps", "lr", "nSteps", "minibatchSize", "nEpochs", "entropyCoef",
           "valueCoef", "maxGradNorm", "targetMode", "adamBeta1", "adamBeta2", "adamEps",
           "intuitionEnabled", "intuitionCoef", "intuitionDecaySteps", "intuitionSaturation",
           "intuitionSaturationDecay", "seed", "totalSteps", "evalEpisodes", "hiddenSizes"]
_INTEGER_FIELDS = ["nSteps", "minibatchSize", "nEpochs", "seed", "totalSteps", "evalEpisodes",
                   "intuitionDecaySteps"]
_PER_ENVIRONMENT_KEYS = ["INTUITION_COEF", "INTUITION_DECAY_STEPS", "STEP_BUDGETS"]
_CONFIGURATION_FILE_KEYS = ["PPO"] + _PER_ENVIRONMENT_KEYS + ["EVAL_EPISODES"]


class PPOConfig:
    def __init__(self, **fields):
        unknown = set(fields) - set(_FIELDS)
        if unknown:
            raise errors.ConfigurationError("Unknown PPO configuration fields: %s" %
                                            ", ".join(sorted(unknown)))
        missing = set(_FIELDS) - set(fields)
        if missing:
            raise errors.ConfigurationError("Missing PPO configuration fields: %s" %
                                            ", ".join(sorted(missing)))
        for name in _FIELDS:
            setattr(self, name, fields[name])
        self.hiddenSizes = tuple(self.hiddenSizes)
        self.validate()

    def validate(self):
        for name in _INTEGER_FIELDS:
            if int(getattr(self, name)) != getattr(self, name):
                raise errors.ConfigurationError("%(field)s must be an integer, got %(value)r" %
                                                dict(field=name, value=getattr(self, name)))
        checks = [
            (0 < self.gamma <= 1, "gamma must lie in (0, 1]"),
            (0 <= self.gaeLambda <= 1, "gaeLambda must lie in [0, 1]"),
            (self.clipEps > 0, "clipEps must be positive"),
            (self.lr > 0, "lr must be positive"),
            (self.nSteps >= 1 and self.minibatchSize >= 1 and self.nEpochs >= 1,
             "nSteps, minibatchSize and nEpochs must be positive"),
            (self.entropyCoef >= 0 and self.valueCoef >= 0, "entropyCoef and valueCoef must be non-negative"),
            (self.maxGradNorm > 0, "maxGradNorm must be positive"),
            (self.intuitionCoef >= 0, "intuitionCoef must be non-negative"),
            (self.intuitionDecaySteps >= 0, "intuitionDecaySteps must be non-negative"),
            (0 < self.intuitionSaturation <= 1, "intuitionSaturation must lie in (0, 1]"),
            (0 <= self.intuitionSaturationDecay <= 1, "intuitionSaturationDecay must lie in [0, 1]"),
            (self.targetMode in inference.TARGET_MODES,
             "targetMode must be one of %s" % ", ".join(inference.TARGET_MODES)),
            (self.totalSteps >= 0, "totalSteps must be non-negative"),
            (self.evalEpisodes >= 1, "evalEpisodes must be at least 1"),
            (len(self.hiddenSizes) >= 1 and all(size >= 1 for size in self.hiddenSizes),
             "hiddenSizes must list positive layer widths")]
        for ok, message in checks:
            if not ok:
                raise errors.ConfigurationError(message)
        if self.nSteps % self.minibatchSize != 0:
            raise errors.ConfigurationError(
                "minibatchSize %(minibatch)d does not divide nSteps %(steps)d" %
                dict(minibatch=self.minibatchSize, steps=self.nSteps))

    def asDict(self):
        result = dict((name, getattr(self, name)) for name in _FIELDS)
        result["hiddenSizes"] = list(self.hiddenSizes)
        return result

    def replace(self, **changes):
        fields = self.asDict()
        fields.update(changes)
        return PPOConfig(**fields)

    def baselineArm(self):
        return self.replace(intuitionEnabled=False)

    def __eq__(self, other):
        return isinstance(other, PPOConfig) and self.asDict() == other.asDict()

    def __repr__(self):
        return "PPOConfig(%s)" % ", ".join("%s=%r" % (name, getattr(self, name)) for name in _FIELDS)


def defaultConfig(envName, seed=0, intuitionEnabled=False, **overrides):
    if envName not in config.ENV_NAMES:
        raise errors.ConfigurationError("Unknown environment '%(name)s'; valid names: %(valid)s" %
                                        dict(name=envName, valid=", ".join(config.ENV_NAMES)))
    fields = dict(config.PPO)
    fields.update(intuitionEnabled=intuitionEnabled, intuitionCoef=config.INTUITION_COEF[envName],
                  intuitionDecaySteps=config.INTUITION_DECAY_STEPS[envName], seed=seed,
                  totalSteps=config.STEP_BUDGETS[envName], evalEpisodes=config.EVAL_EPISODES,
                  hiddenSizes=config.HIDDEN_SIZES)
    fields.update(dict((key, value) for key, value in overrides.items() if value is not None))
    return PPOConfig(**fields)


def loadConfigurationFile(path):
    """Overrides the module defaults in config from a YAML file."""
    logging.info("Reading %(file)s", dict(file=path))
    with open(path) as f:
        conf = yaml.safe_load(f.read())
    if conf is None:
        return
    if not isinstance(conf, dict):
        raise errors.ConfigurationError("%(file)s: expected a mapping at top level" % dict(file=path))
    unknown = set(conf) - set(_CONFIGURATION_FILE_KEYS)
    if unknown:
        raise errors.ConfigurationError("%(file)s: unknown keys %(keys)s; valid: %(valid)s" % dict(
            file=path, keys=", ".join(sorted(unknown)), valid=", ".join(_CONFIGURATION_FILE_KEYS)))
    for key in ["PPO"] + _PER_ENVIRONMENT_KEYS:
        if conf.get(key) is None:
            continue
        if not isinstance(conf[key], dict):
            raise errors.ConfigurationError("%(file)s: %(section)s must be a mapping, got %(value)r" %
                                            dict(file=path, section=key, value=conf[key]))
        current = getattr(config, key)
        for name, value in conf[key].items():
            if name not in current:
                raise errors.ConfigurationError("%(file)s: unknown %(section)s key '%(name)s'" %
                                                dict(file=path, section=key, name=name))
            try:
                current[name] = type(current[name])(value)
            except (TypeError, ValueError):
                raise errors.ConfigurationError("%(file)s: %(section)s.%(name)s has invalid value %(value)r" %
                                                dict(file=path, section=key, name=name, value=value))
    if "EVAL_EPISODES" in conf:
        try:
            config.EVAL_EPISODES = int(conf["EVAL_EPISODES"])
        except (TypeError, ValueError):
            raise errors.ConfigurationError("%(file)s: EVAL_EPISODES has invalid value %(value)r" %
                                            dict(file=path, value=conf["EVAL_EPISODES"]))
    config.CONFIGURATION_FILE = path

import os.path

REPOSITORY_ROOT = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
NETS_DIRECTORY = os.path.join(REPOSITORY_ROOT, "configs")
NET_PATH_ENVIRONMENT_VARIABLE = "SHIRE_NET_PATH"
EXAMPLE_CONF_YAML = os.path.join(REPOSITORY_ROOT, "etc.intuitionrl.conf.yaml.example")
CONFIGURATION_FILE = None
RUNS_DIRECTORY = "runs"

ENV_NAMES = ["cartpole", "mountaincar", "lander", "taxi"]

PPO = dict(
    gamma=0.99,
    gaeLambda=0.95,
    clipEps=0.2,
    lr=3e-4,
    nSteps=2048,
    minibatchSize=64,
    nEpochs=10,
    entropyCoef=0.0,
    valueCoef=0.5,
    maxGradNorm=0.5,
    targetMode="map",
    adamBeta1=0.9,
    adamBeta2=0.999,
    adamEps=1e-8,
    intuitionSaturation=0.9,
    intuitionSaturationDecay=0.5)

INTUITION_COEF = dict(cartpole=0.5, mountaincar=1.0, lander=0.5, taxi=0.5)
INTUITION_DECAY_STEPS = dict(cartpole=10240, mountaincar=163840, lander=102400, taxi=409600)
STEP_BUDGETS = dict(cartpole=200000, mountaincar=600000, lander=400000, taxi=1500000)
DEFAULT_NETS = dict(cartpole="cartpole.net", mountaincar="mountaincar.net", lander="lander_basic.net",
                    taxi="taxi.net")
SHIPPED_NETS = ["cartpole.net", "mountaincar.net", "lander_basic.net", "lander_antiparallel.net", "taxi.net"]

EVAL_EPISODES = 100
DEFAULT_SEEDS = [1, 2, 3, 4, 5]
OVERHEAD_SAMPLES = 20000
OVERHEAD_WARMUP_SAMPLES = 2048
HIDDEN_SIZES = (64, 64)

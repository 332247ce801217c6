"""
hyperparameters
    IMAGENET_* : settings of the image scale pipeline (imagenet source), kept for reference
    DEFAULT_* : desk scale values used by the config objects and the command line
"""

# ------------------------------ optimizer (all trainings)
IMAGENET_MOMENTUM = 0.9
IMAGENET_WEIGHT_DECAY = 1e-4
IMAGENET_DECAY_FACTOR = 0.1

DEFAULT_MOMENTUM = IMAGENET_MOMENTUM
DEFAULT_WEIGHT_DECAY = IMAGENET_WEIGHT_DECAY
DEFAULT_DECAY_FACTOR = IMAGENET_DECAY_FACTOR

# ------------------------------ task pair
DEFAULT_DIM = 16
DEFAULT_SOURCE_CLASSES = 20
DEFAULT_TARGET_CLASSES = 8
DEFAULT_SOURCE_PER_CLASS = 500
DEFAULT_TARGET_TRAIN = 200
DEFAULT_TARGET_TEST = 400
DEFAULT_SIGMA_ALIGN = 0.
DEFAULT_RADIUS = 4.0
DEFAULT_EIGEN_RANGE = (0.2, 1.0)
DEFAULT_MIXING_SUPPORT = 2
DEFAULT_ALIGNMENT_LADDER = [0., 0.25, 0.5, 1.0, 2.0]

# ------------------------------ architectures (A_s != A_t)
DEFAULT_SOURCE_HIDDEN = [128]
DEFAULT_TARGET_HIDDEN = [64, 64]

# ------------------------------ source classifier
DEFAULT_SOURCE_EPOCHS = 30
DEFAULT_SOURCE_BATCH = 64
DEFAULT_SOURCE_LR = 0.05
DEFAULT_SOURCE_DECAY_EPOCHS = [20]

# ------------------------------ generator
DEFAULT_GENERATOR_MODE = "interpolate"
DEFAULT_COV_EPSILON = 1e-6

# ------------------------------ pseudo pre-training
IMAGENET_PP_STEPS = 1000000
IMAGENET_PP_BATCH = 128
IMAGENET_PP_LR = 0.1
IMAGENET_PP_OFFLINE_SIZE = 1280000  # fixed training set of the offline baseline

DEFAULT_PP_STEPS = 2000
DEFAULT_PP_BATCH = 64
DEFAULT_PP_LR = IMAGENET_PP_LR
DEFAULT_PP_DECAY_FRACTION = 0.6
DEFAULT_PP_STRATEGY = "uniform"
# share of the online draws held by the offline dataset
DEFAULT_PP_OFFLINE_FRACTION = IMAGENET_PP_OFFLINE_SIZE / float(IMAGENET_PP_STEPS * IMAGENET_PP_BATCH)
DEFAULT_INIT_SCALE = 0.01

# ------------------------------ target training
IMAGENET_TARGET_EPOCHS = 300
IMAGENET_TARGET_DECAY_EPOCHS = [150, 250]
IMAGENET_SUP_BATCH = 16
IMAGENET_LR_SCRATCH = 0.05
IMAGENET_LR_PRETRAINED = 0.005

DEFAULT_TARGET_EPOCHS = 60
DEFAULT_TARGET_DECAY_EPOCHS = [30, 50]
DEFAULT_SUP_BATCH = IMAGENET_SUP_BATCH
DEFAULT_LR_SCRATCH = IMAGENET_LR_SCRATCH
DEFAULT_LR_PRETRAINED = IMAGENET_LR_PRETRAINED
DEFAULT_VALIDATION_FRACTION = 0.1

# ------------------------------ pseudo conditional sampling
IMAGENET_N_PSEUDO = 50000
DEFAULT_N_PSEUDO = 5000
DEFAULT_N_PSEUDO_SWEEP = [1000, 5000, 10000, 50000]
DEFAULT_LABEL_FUNCTION = "softmax"
DEFAULT_LABEL_TEMPERATURE = 0.4
PCS_SHARD_SIZE = 1024

# ------------------------------ pseudo semi supervised learning
IMAGENET_LAMBDA = 1.0
IMAGENET_BETA = 0.5
IMAGENET_TAU = 0.4
IMAGENET_UNSUP_BATCH = 112

DEFAULT_SSL_METHOD = "uda"
DEFAULT_LAMBDA = IMAGENET_LAMBDA
DEFAULT_BETA = IMAGENET_BETA
DEFAULT_TAU = IMAGENET_TAU
DEFAULT_UNSUP_BATCH = 64
DEFAULT_AUGMENT_STRENGTH = 0.5

# ------------------------------ knowledge distillation
IMAGENET_KD_TEMPERATURE = 4.0
DEFAULT_KD_TEMPERATURE = IMAGENET_KD_TEMPERATURE
DEFAULT_KD_LAMBDA = 1.0
DEFAULT_KD_METHOD = "soft_target"

# ------------------------------ diagnostics
IMAGENET_FILTER_THRESHOLD = 0.001
DEFAULT_FILTER_THRESHOLD = IMAGENET_FILTER_THRESHOLD

# ------------------------------ harness
IMAGENET_NSEEDS = 3
DEFAULT_SEEDS = [0, 1, 2, 3, 4]
DEFAULT_MASTER_SEED = 20240
DEFAULT_METHODS = ["scratch", "pp", "pssl", "pp_pssl",
                   "kd_logit_matching", "kd_soft_target", "pseudo_supervised"]
ALL_METHODS = DEFAULT_METHODS + ["ft_teacher", "rssl", "rssl_filtered"]

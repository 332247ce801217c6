from __future__ import print_function
import os
import json
import hashlib
from pseudotrans.errors import ValidationError
from pseudotrans.numerics.mlp import arch_id
from pseudotrans.synthetics.taskpair import TaskPairSpec
from pseudotrans.synthetics.generator import GENERATOR_MODES
from pseudotrans.synthetics.source import default_source_config
from pseudotrans.transfer.training import TrainConfig
from pseudotrans.transfer.pretrain import PretrainConfig, PP_STRATEGIES
from pseudotrans.transfer.pssl import SslConfig
from pseudotrans.transfer.distill import KdConfig
from pseudotrans.transfer.labelfunctions import LABEL_FUNCTIONS
from pseudotrans.defaults import \
    DEFAULT_SOURCE_HIDDEN, DEFAULT_TARGET_HIDDEN, DEFAULT_PP_STRATEGY, DEFAULT_LR_PRETRAINED, \
    DEFAULT_LABEL_FUNCTION, DEFAULT_LABEL_TEMPERATURE, DEFAULT_N_PSEUDO, DEFAULT_FILTER_THRESHOLD, \
    DEFAULT_GENERATOR_MODE, DEFAULT_METHODS, ALL_METHODS, DEFAULT_SEEDS, DEFAULT_MASTER_SEED, \
    DEFAULT_VALIDATION_FRACTION

SEED_OVERRIDE_VARIABLE = "SEED_OVERRIDE"

# fields that do not change the result of a (method, seed) cell,
# the method list only selects the cells
NON_SEMANTIC_FIELDS = ["output_dir", "nworkers", "verbose", "methods"]


def seed_override(seeds):
    """seed list from the SEED_OVERRIDE environment variable (comma separated integers) if set"""
    value = os.environ.get(SEED_OVERRIDE_VARIABLE, "").strip()
    if not value:
        return list(seeds)
    try:
        override = [int(s) for s in value.split(',') if len(s.strip())]
    except ValueError:
        raise ValidationError('{} must be a comma separated list of integers, got "{}"'.format(
            SEED_OVERRIDE_VARIABLE, value))
    if not len(override):
        raise ValidationError('{} is empty'.format(SEED_OVERRIDE_VARIABLE))
    return override


class ExperimentConfig(object):

    def __init__(self, task=None, source_hidden=DEFAULT_SOURCE_HIDDEN, target_hidden=DEFAULT_TARGET_HIDDEN,
                 source_train=None, pretrain=None, pp_strategy=DEFAULT_PP_STRATEGY,
                 target_train=None, lr_pretrained=DEFAULT_LR_PRETRAINED,
                 ssl=None, kd=None, label_function=DEFAULT_LABEL_FUNCTION,
                 label_tau=DEFAULT_LABEL_TEMPERATURE, n_pseudo=DEFAULT_N_PSEUDO,
                 filter_threshold=DEFAULT_FILTER_THRESHOLD, generator_mode=DEFAULT_GENERATOR_MODE,
                 methods=DEFAULT_METHODS, seeds=DEFAULT_SEEDS, master_seed=DEFAULT_MASTER_SEED,
                 validation_fraction=DEFAULT_VALIDATION_FRACTION,
                 output_dir="results", nworkers=1, verbose=False):
        """
        :param task: TaskPairSpec
        :param source_hidden, target_hidden: hidden widths of A_s and A_t, must differ
        :param source_train: TrainConfig of the source classifier
        :param pretrain: PretrainConfig of the pseudo pre-training
        :param target_train: TrainConfig of the target trainings from scratch
        :param lr_pretrained: initial learning rate of the target trainings starting from a pre-trained body
        :param methods: list of methods to run, see ALL_METHODS
        :param seeds: list of seeds, one run per (method, seed)
        :param master_seed: int, root of every random stream
        """
        self.task = TaskPairSpec() if task is None else task
        self.source_hidden = [int(w) for w in source_hidden]
        self.target_hidden = [int(w) for w in target_hidden]
        self.source_train = default_source_config() if source_train is None else source_train
        self.pretrain = PretrainConfig() if pretrain is None else pretrain
        self.pp_strategy = pp_strategy
        self.target_train = TrainConfig() if target_train is None else target_train
        self.lr_pretrained = float(lr_pretrained)
        self.ssl = SslConfig() if ssl is None else ssl
        self.kd = KdConfig() if kd is None else kd
        self.label_function = label_function
        self.label_tau = float(label_tau)
        self.n_pseudo = int(n_pseudo)
        self.filter_threshold = float(filter_threshold)
        self.generator_mode = generator_mode
        self.methods = list(methods)
        self.seeds = [int(s) for s in seeds]
        self.master_seed = int(master_seed)
        self.validation_fraction = float(validation_fraction)
        self.output_dir = output_dir
        self.nworkers = nworkers
        self.verbose = bool(verbose)

        # architecture inconsistency
        if arch_id(self.source_widths) == arch_id(self.target_source_widths):
            raise ValidationError('source and target architectures must differ, both are {}'.format(
                arch_id(self.source_widths)))
        if not len(self.seeds):
            raise ValidationError('the seed list is empty')
        if not len(self.methods):
            raise ValidationError('the method list is empty')
        for method in self.methods:
            if method not in ALL_METHODS:
                raise ValidationError('unknown method {}, use some of {}'.format(method, ALL_METHODS))
        if len(set(self.methods)) != len(self.methods):
            raise ValidationError('duplicated methods in {}'.format(self.methods))
        if self.pp_strategy not in PP_STRATEGIES:
            raise ValidationError('unknown pp strategy {}, use one of {}'.format(self.pp_strategy, PP_STRATEGIES))
        if self.label_function not in LABEL_FUNCTIONS:
            raise ValidationError('unknown label function {}, use one of {}'.format(
                self.label_function, LABEL_FUNCTIONS))
        if self.generator_mode not in GENERATOR_MODES:
            raise ValidationError('unknown generator mode {}, use one of {}'.format(
                self.generator_mode, GENERATOR_MODES))
        if self.n_pseudo < 1:
            raise ValidationError('n_pseudo must be >= 1, got {}'.format(self.n_pseudo))
        if not 0. <= self.validation_fraction < 1.:
            raise ValidationError('validation_fraction must be in [0, 1), got {}'.format(self.validation_fraction))

    def __str__(self):
        return "ExperimentConfig(task={}, methods={}, seeds={}, hash={})".format(
            self.task, self.methods, self.seeds, self.config_hash())

    # ------------------------------ architectures
    @property
    def source_widths(self):
        """A_s with the source head"""
        return [self.task.dim] + self.source_hidden + [self.task.source_classes]

    @property
    def target_source_widths(self):
        """A_t with the source head (pseudo pre-training)"""
        return [self.task.dim] + self.target_hidden + [self.task.source_classes]

    @property
    def target_widths(self):
        """A_t with the target head"""
        return [self.task.dim] + self.target_hidden + [self.task.target_classes]

    @property
    def finetune_train(self):
        """target training settings when starting from a pre-trained body"""
        return self.target_train.copy(lr=self.lr_pretrained)

    # ------------------------------
    def copy(self, **kwargs):
        d = self.to_dict()
        d.update({k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in kwargs.items()})
        return ExperimentConfig.from_dict(d)

    def with_seed_override(self):
        seeds = seed_override(self.seeds)
        if seeds == self.seeds:
            return self
        return self.copy(seeds=seeds)

    def to_dict(self):
        return {"task": self.task.to_dict(),
                "source_hidden": list(self.source_hidden),
                "target_hidden": list(self.target_hidden),
                "source_train": self.source_train.to_dict(),
                "pretrain": self.pretrain.to_dict(),
                "pp_strategy": self.pp_strategy,
                "target_train": self.target_train.to_dict(),
                "lr_pretrained": self.lr_pretrained,
                "ssl": self.ssl.to_dict(),
                "kd": self.kd.to_dict(),
                "label_function": self.label_function,
                "label_tau": self.label_tau,
                "n_pseudo": self.n_pseudo,
                "filter_threshold": self.filter_threshold,
                "generator_mode": self.generator_mode,
                "methods": list(self.methods),
                "seeds": list(self.seeds),
                "master_seed": self.master_seed,
                "validation_fraction": self.validation_fraction,
                "output_dir": self.output_dir,
                "nworkers": self.nworkers,
                "verbose": self.verbose}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        subconfigs = {"task": TaskPairSpec, "source_train": TrainConfig, "pretrain": PretrainConfig,
                      "target_train": TrainConfig, "ssl": SslConfig, "kd": KdConfig}
        for key, subcls in subconfigs.items():
            if isinstance(d.get(key), dict):
                d[key] = subcls.from_dict(d[key])
        unknown = [k for k in d.keys() if k not in cls().to_dict().keys()]
        if len(unknown):
            raise ValidationError('unknown configuration keys {}'.format(unknown))
        return cls(**d)

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid, indent=2, sort_keys=True)

    def config_hash(self):
        """sha1 of the canonical json of the fields that change the results"""
        d = self.to_dict()
        for key in NON_SEMANTIC_FIELDS:
            d.pop(key)
        canonical = json.dumps(d, sort_keys=True, separators=(',', ':'))
        return hashlib.sha1(canonical.encode('utf-8')).hexdigest()


def load_config(filename):
    with open(filename, 'r') as fid:
        return ExperimentConfig.from_dict(json.load(fid))

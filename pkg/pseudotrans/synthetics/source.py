from __future__ import print_function
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.transfer.training import TrainConfig, train_supervised
from pseudotrans.defaults import \
    DEFAULT_SOURCE_EPOCHS, DEFAULT_SOURCE_BATCH, DEFAULT_SOURCE_LR, DEFAULT_SOURCE_DECAY_EPOCHS


def default_source_config():
    return TrainConfig(epochs=DEFAULT_SOURCE_EPOCHS, batch_size=DEFAULT_SOURCE_BATCH,
                       lr=DEFAULT_SOURCE_LR, decay_epochs=DEFAULT_SOURCE_DECAY_EPOCHS)


def train_source_classifier(D_s, arch, rng, config=None, verbose=False):
    """
    train the source classifier on the labeled source data
    :param D_s: LabeledDataset
    :param arch: list of widths [d, h1, ..., K_s]
    :param rng: numpy.random.Generator, used for initialization then batch order
    :param config: TrainConfig, default_source_config() if None
    :return: MlpClassifier
    """
    arch = list(arch)
    if arch[-1] != D_s.K:
        raise ValidationError('output width {} does not match the {} source classes'.format(arch[-1], D_s.K))
    if arch[0] != D_s.dim:
        raise DimensionError('input width {} does not match the feature dimension {}'.format(arch[0], D_s.dim))
    if config is None:
        config = default_source_config()

    init = MlpClassifier(arch, rng=rng)
    return train_supervised(init, D_s, config, rng, method="source", verbose=verbose)

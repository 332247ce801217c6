from pseudotrans.numerics.mlp import MlpClassifier, load_classifier, forward, backward, swap_final_layer
from pseudotrans.numerics.optimizers import OptimizerState, sgd_step
from pseudotrans.numerics.linalg import matrix_sqrt_psd, fit_gaussian
from pseudotrans.synthetics.taskpair import LabeledDataset, UnlabeledDataset, TaskPairSpec, \
    make_task_pair, load_dataset
from pseudotrans.synthetics.generator import ConditionalGenerator, fit_source_generator, \
    sample_generator, sample_generator_batch, load_generator
from pseudotrans.synthetics.source import train_source_classifier
from pseudotrans.transfer.labelfunctions import LabelDistribution, apply_label_function
from pseudotrans.transfer.pcs import pseudo_labels, pseudo_conditional_sampling, build_pseudo_dataset
from pseudotrans.transfer.pretrain import PretrainConfig, pseudo_pretrain, target_initialization
from pseudotrans.transfer.training import TrainConfig, train_supervised
from pseudotrans.transfer.pssl import SslConfig, train_pssl
from pseudotrans.transfer.distill import KdConfig, kd_train, finetune_teacher
from pseudotrans.diagnostics.metrics import frechet_distance, confidence_filter, accuracy, spearman, pearson
from pseudotrans.harness.config import ExperimentConfig, load_config
from pseudotrans.harness.experiment import run_experiment
from pseudotrans.harness.studies import alignment_study, sweep, distribution_gaps
from pseudotrans.utils import Timer
from pseudotrans.version import __version__

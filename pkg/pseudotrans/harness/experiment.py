from __future__ import print_function
import os
import json
import time
import numpy as np
from pseudotrans.errors import ValidationError
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.synthetics.taskpair import make_task_pair, UnlabeledDataset
from pseudotrans.synthetics.generator import fit_source_generator
from pseudotrans.synthetics.source import train_source_classifier
from pseudotrans.transfer.training import train_supervised
from pseudotrans.transfer.pcs import pseudo_conditional_sampling, pseudo_pairs
from pseudotrans.transfer.pretrain import pseudo_pretrain, target_initialization
from pseudotrans.transfer.pssl import train_pssl, train_pseudo_supervised
from pseudotrans.transfer.distill import finetune_teacher, kd_train
from pseudotrans.diagnostics.metrics import accuracy, frechet_distance, confidence_filter
from pseudotrans.harness.seeding import rng_for
from pseudotrans.harness.records import RunRecord, ResultsFile, write_summary
from pseudotrans.standalone.multipro import Job, WorkerError, mapper
from pseudotrans.standalone.printcolors import printred
from pseudotrans.PseudoTL.files import RESULTSFILE, SUMMARYFILE, CONFIGCOPYFILE, ERRORSFILE

"""
experiment grid : every requested method for every seed

the task pair, the source classifier C_s and the generator G_s are built once per configuration,
artifacts shared by several methods (pseudo dataset, pseudo pre-trained body, fine-tuned teacher)
are built once per seed, each from its own stream, so that a method never changes the
random numbers seen by another one
"""

# artifacts needed by each method
METHOD_ARTIFACTS = {
    "scratch": [],
    "pp": ["pp"],
    "pssl": ["pcs"],
    "pp_pssl": ["pp", "pcs"],
    "kd_logit_matching": ["teacher"],
    "kd_soft_target": ["teacher"],
    "pseudo_supervised": ["pcs"],
    "ft_teacher": [],
    "rssl": [],
    "rssl_filtered": []}


# ------------------------------
def context_key(config):
    """the configuration fields the shared context depends on"""
    d = config.to_dict()
    return json.dumps({k: d[k] for k in ["task", "source_hidden", "source_train", "generator_mode",
                                         "filter_threshold", "validation_fraction", "master_seed"]},
                      sort_keys=True)


class ExperimentContext(object):
    """data and source models shared by all the cells of an experiment"""

    def __init__(self, config, verbose=False):
        self.key = context_key(config)
        task = config.task
        self.D_s, D_t_full, self.D_t_test, self.truth = make_task_pair(task)
        self.D_t, self.D_val = D_t_full.split(config.validation_fraction, rng_for(config.master_seed, "validation"))
        if verbose:
            print("task : {}".format(task))
            print("source {} / target train {} / validation {} / test {}".format(
                self.D_s, self.D_t, self.D_val, self.D_t_test))

        self.C_s = train_source_classifier(self.D_s, config.source_widths, rng_for(config.master_seed, "source"),
                                           config=config.source_train, verbose=verbose)
        self.source_accuracy = accuracy(self.C_s, self.D_s)
        if verbose:
            print("source classifier {} : train accuracy {:.4f}".format(self.C_s, self.source_accuracy))

        # after this point, only the reference methods may read D_s
        self.G_s = fit_source_generator(self.D_s, mode=config.generator_mode)
        self.filtered_classes = confidence_filter(self.C_s, self.D_t, config.filter_threshold)
        self.artifacts = {}


class ArtifactError(Exception):
    pass


def build_artifact(ctx, config, kind, seed, verbose=False):
    """build (or return the cached) shared artifact kind in {pcs, pp, teacher} for seed"""
    key = (kind, seed, config.config_hash())
    if key in ctx.artifacts:
        if isinstance(ctx.artifacts[key], ArtifactError):
            raise ctx.artifacts[key]
        return ctx.artifacts[key]

    rng = rng_for(config.master_seed, kind, seed)
    try:
        if kind == "pcs":
            start = time.time()
            D_pseudo, Y = pseudo_conditional_sampling(
                ctx.C_s, ctx.G_s, ctx.D_t, config.n_pseudo, rng, g=config.label_function,
                tau=config.label_tau, nworkers=config.nworkers)
            art = {"D_pseudo": D_pseudo, "Y": Y,
                   "fd": frechet_distance(D_pseudo.features, ctx.D_t.features),
                   "seconds": time.time() - start}

        elif kind == "pp":
            start = time.time()
            pseudo = None
            if config.pp_strategy == "pcs":
                pseudo = build_artifact(ctx, config, "pcs", seed)["Y"]
            model = pseudo_pretrain(config.target_source_widths, ctx.G_s, config.task.source_classes,
                                    config.pretrain, config.pp_strategy, rng,
                                    classes=ctx.filtered_classes, pseudo=pseudo, verbose=verbose)
            art = {"model": model, "seconds": time.time() - start}

        elif kind == "teacher":
            start = time.time()
            model = finetune_teacher(ctx.C_s, ctx.D_t, config.finetune_train, rng,
                                     init_scale=config.pretrain.init_scale, verbose=verbose)
            art = {"model": model, "seconds": time.time() - start}

        else:
            raise ValidationError('unknown artifact {}'.format(kind))

    except Exception as e:
        ctx.artifacts[key] = ArtifactError('artifact {} (seed {}) failed : {}'.format(kind, seed, e))
        raise ctx.artifacts[key]

    ctx.artifacts[key] = art
    return art


# ------------------------------ methods, each returns (classifier, fd_pseudo_target)
def _scratch_init(ctx, config, rng):
    return MlpClassifier(config.target_widths, rng=rng)


def _pp_init(ctx, config, rng, seed):
    pretrained = build_artifact(ctx, config, "pp", seed)["model"]
    return target_initialization(pretrained, config.task.target_classes, config.pretrain, rng)


def run_scratch(ctx, config, rng, seed, verbose):
    return train_supervised(_scratch_init(ctx, config, rng), ctx.D_t, config.target_train, rng,
                            method="scratch", verbose=verbose), None


def run_pp(ctx, config, rng, seed, verbose):
    return train_supervised(_pp_init(ctx, config, rng, seed), ctx.D_t, config.finetune_train, rng,
                            method="pp", verbose=verbose), None


def run_pssl(ctx, config, rng, seed, verbose):
    pcs = build_artifact(ctx, config, "pcs", seed)
    model = train_pssl(_scratch_init(ctx, config, rng), ctx.D_t, pcs['D_pseudo'], config.ssl,
                       config.target_train, rng, verbose=verbose)
    return model, pcs['fd']


def run_pp_pssl(ctx, config, rng, seed, verbose):
    pcs = build_artifact(ctx, config, "pcs", seed)
    model = train_pssl(_pp_init(ctx, config, rng, seed), ctx.D_t, pcs['D_pseudo'], config.ssl,
                       config.finetune_train, rng, verbose=verbose)
    return model, pcs['fd']


def _run_kd(method):
    def run(ctx, config, rng, seed, verbose):
        teacher = build_artifact(ctx, config, "teacher", seed)["model"]
        model = kd_train(_scratch_init(ctx, config, rng), teacher, ctx.D_t, config.kd.copy(method=method),
                         config.target_train, rng, verbose=verbose)
        return model, None
    return run


def run_pseudo_supervised(ctx, config, rng, seed, verbose):
    pcs = build_artifact(ctx, config, "pcs", seed)
    model = train_pseudo_supervised(_scratch_init(ctx, config, rng), ctx.D_t,
                                    pseudo_pairs(pcs['D_pseudo'], ctx.D_t),
                                    config.target_train, rng, verbose=verbose)
    return model, pcs['fd']


def run_ft_teacher(ctx, config, rng, seed, verbose):
    return finetune_teacher(ctx.C_s, ctx.D_t, config.finetune_train, rng,
                            init_scale=config.pretrain.init_scale, verbose=verbose), None


def run_rssl(ctx, config, rng, seed, verbose):
    # reference method : reads the real source features
    real = UnlabeledDataset(ctx.D_s.features)
    return train_pssl(_scratch_init(ctx, config, rng), ctx.D_t, real, config.ssl,
                      config.target_train, rng, verbose=verbose), None


def run_rssl_filtered(ctx, config, rng, seed, verbose):
    keep = np.isin(ctx.D_s.labels, ctx.filtered_classes)
    if not keep.any():
        raise ValidationError('confidence filtering kept no source class')
    real = UnlabeledDataset(ctx.D_s.features[keep])
    return train_pssl(_scratch_init(ctx, config, rng), ctx.D_t, real, config.ssl,
                      config.target_train, rng, verbose=verbose), None


METHOD_RUNNERS = {
    "scratch": run_scratch,
    "pp": run_pp,
    "pssl": run_pssl,
    "pp_pssl": run_pp_pssl,
    "kd_logit_matching": _run_kd("logit_matching"),
    "kd_soft_target": _run_kd("soft_target"),
    "pseudo_supervised": run_pseudo_supervised,
    "ft_teacher": run_ft_teacher,
    "rssl": run_rssl,
    "rssl_filtered": run_rssl_filtered}


def run_cell(ctx, config, method, seed, verbose=False):
    """run one (method, seed) cell, returns a RunRecord"""
    rng = rng_for(config.master_seed, method, seed)
    start = time.time()
    model, fd = METHOD_RUNNERS[method](ctx, config, rng, seed, verbose)
    seconds = time.time() - start
    val = accuracy(model, ctx.D_val) if ctx.D_val is not None else None
    return RunRecord(method, seed, accuracy(model, ctx.D_t_test), fd_pseudo_target=fd,
                     seconds=seconds, config_hash=config.config_hash(), val_accuracy=val)


# ------------------------------
def prepare_artifacts(ctx, config, verbose=False):
    """build the shared artifacts needed by the requested methods, failures are kept for the cells"""
    kinds = []
    for method in config.methods:
        for kind in METHOD_ARTIFACTS[method]:
            if kind == "pp" and config.pp_strategy == "pcs" and "pcs" not in kinds:
                kinds.append("pcs")
            if kind not in kinds:
                kinds.append(kind)
    for seed in config.seeds:
        for kind in kinds:
            try:
                build_artifact(ctx, config, kind, seed, verbose=verbose)
            except ArtifactError as e:
                printred(str(e))


def run_experiment(config, context=None, verbose=None):
    """
    :param config: ExperimentConfig
    :param context: ExperimentContext to reuse, ignored if built from other task or source settings
    :param verbose: overrides config.verbose
    :return: list of RunRecord in cell order (seed major, methods in config order)
    """
    config = config.with_seed_override()
    verbose = config.verbose if verbose is None else verbose
    outdir = config.output_dir
    if not os.path.isdir(outdir):
        os.makedirs(outdir)
    config.write(CONFIGCOPYFILE.format(outdir=outdir))
    config_hash = config.config_hash()
    errorsfile = ERRORSFILE.format(outdir=outdir)
    if os.path.exists(errorsfile):
        os.remove(errorsfile)

    ctx = context
    if ctx is None or ctx.key != context_key(config):
        ctx = ExperimentContext(config, verbose=verbose)
    prepare_artifacts(ctx, config, verbose=verbose)

    cells = [(method, seed) for seed in config.seeds for method in config.methods]
    # waitbars of parallel workers would overwrite each other
    cellverbose = verbose and config.nworkers == 1

    def gen():
        for method, seed in cells:
            yield Job(method, seed)

    # workers are forked, the context is inherited rather than sent with every job
    def fun(method, seed):
        return run_cell(ctx, config, method, seed, verbose=cellverbose)

    records = []
    with ResultsFile(RESULTSFILE.format(outdir=outdir)) as rf:
        with mapper(config.nworkers)(fun, gen(), Nworkers=config.nworkers, RaiseIfError=False) as ma:
            for jobid, answer, _, _ in ma:
                method, seed = cells[jobid]
                if isinstance(answer, WorkerError):
                    printred("{} seed {} failed".format(method, seed))
                    with open(errorsfile, 'a') as fid:
                        fid.write("# {} seed {}\n{}\n".format(method, seed, answer.message))
                    record = RunRecord(method, seed, np.nan, seconds=0., config_hash=config_hash,
                                       error=answer.message)
                else:
                    record = answer
                    if verbose:
                        print(record)
                rf.write(record)
                records.append(record)

    write_summary(SUMMARYFILE.format(outdir=outdir), records, config_hash)
    return records

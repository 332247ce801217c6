from __future__ import print_function

import os
import json
import hashlib
import numpy as np
from pseudotrans.utils import parse_widths, Timer
from pseudotrans.numerics.mlp import MlpClassifier, load_classifier, swap_final_layer
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.transfer.training import TrainConfig
from pseudotrans.transfer.pssl import SslConfig, train_pssl, SSL_METHODS
from pseudotrans.diagnostics.metrics import accuracy, frechet_distance
from pseudotrans.harness.records import RunRecord, ResultsFile
from pseudotrans.PseudoTL.files import PSEUDODATAFILE, PSSLFILE, TARGETTRAINFILE, TARGETTESTFILE
from pseudotrans.defaults import \
    DEFAULT_TARGET_HIDDEN, DEFAULT_SSL_METHOD, DEFAULT_LAMBDA, DEFAULT_BETA, DEFAULT_TAU, \
    DEFAULT_AUGMENT_STRENGTH, DEFAULT_TARGET_EPOCHS, DEFAULT_LR_SCRATCH, DEFAULT_LR_PRETRAINED, \
    DEFAULT_INIT_SCALE

# ------------------------------ defaults
default_arch = ",".join([str(w) for w in DEFAULT_TARGET_HIDDEN])
default_method = DEFAULT_SSL_METHOD
default_lambda = DEFAULT_LAMBDA
default_beta = DEFAULT_BETA
default_tau = DEFAULT_TAU
default_strength = DEFAULT_AUGMENT_STRENGTH
default_epochs = DEFAULT_TARGET_EPOCHS
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-init", "-arch", "-target", "-pseudo", "-method", "-lambda", "-beta", "-tau",
                   "-strength", "-epochs", "-lr", "-seed", "-out", "-test", "-metrics", "-h", "-help"]

# ------------------------------ help messages
short_help = "--pssl       semi supervised target training on the pseudo unlabeled dataset"

long_help = """\
--pssl               train a target classifier with L_sup(D_t) + lambda * L_unsup(pseudo data)
    -init    s       initial checkpoint (e.g. from --pp), its head is replaced by a target head
                     if needed, default : random initialization of -arch
    -arch    s       hidden widths of the target architecture, default {default_arch}
    -target  s       labeled target data file, default {target}
    -pseudo  s       unlabeled data file, default {pseudo}
    -method  s       one of {methods}, default {default_method}
    -lambda  f       weight of the unsupervised term, default {default_lambda}
    -beta    f       confidence threshold, default {default_beta}
    -tau     f       sharpening temperature, default {default_tau}
    -strength f      augmentation strength, default {default_strength}
    -epochs  i       training epochs, default {default_epochs}
    -lr      f       initial learning rate, default {lr_scratch} ({lr_pretrained} with -init)
    -seed    i       seed, default {default_seed}
    -out     s       output checkpoint, default {out}
    -test    s       report the accuracy on this labeled data file, default {test}
    -metrics s       write the run (test accuracy, frechet distance of the unlabeled data
                     to the target data, seconds, settings hash) to this csv file,
                     needs the -test file
    -h, -help        display the help message for this plugin
""".format(default_arch=default_arch, target=TARGETTRAINFILE, pseudo=PSEUDODATAFILE,
           methods=SSL_METHODS, default_method=default_method, default_lambda=default_lambda,
           default_beta=default_beta, default_tau=default_tau, default_strength=default_strength,
           default_epochs=default_epochs, lr_scratch=DEFAULT_LR_SCRATCH,
           lr_pretrained=DEFAULT_LR_PRETRAINED, default_seed=default_seed,
           out=PSSLFILE.replace("{seed:d}", "{seed}"), test=TARGETTESTFILE)

# ------------------------------ example usage
example = """\
## PSSL
# uda on the pseudo dataset from a random initialization

PseudoTL --pssl -method uda -lambda 1.0 -beta 0.5 -tau 0.4

# fixmatch from a pseudo pre-trained checkpoint

PseudoTL --pssl -init _PseudoTL.pp.uniform.seed0.json -method fixmatch -beta 0.95

# keep the metrics of the run

PseudoTL --pssl -method uda -seed 1 -metrics pssl_metrics.csv
"""


def pssl(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    D_t = load_dataset(argv['-target'][0] if "-target" in argv.keys() else TARGETTRAINFILE)
    D_pseudo = load_dataset(argv['-pseudo'][0] if "-pseudo" in argv.keys() else PSEUDODATAFILE)
    seed = int(argv['-seed'][0]) if "-seed" in argv.keys() else default_seed
    rng = np.random.default_rng(seed)

    cfg = SslConfig(
        method=argv['-method'][0] if "-method" in argv.keys() else default_method,
        lam=float(argv['-lambda'][0]) if "-lambda" in argv.keys() else default_lambda,
        beta=float(argv['-beta'][0]) if "-beta" in argv.keys() else default_beta,
        tau=float(argv['-tau'][0]) if "-tau" in argv.keys() else default_tau,
        strength=float(argv['-strength'][0]) if "-strength" in argv.keys() else default_strength)

    if "-init" in argv.keys():
        init = load_classifier(argv['-init'][0])
        if init.output_dim != D_t.K:
            init = swap_final_layer(init, D_t.K, DEFAULT_INIT_SCALE, rng)
        lr = DEFAULT_LR_PRETRAINED
    else:
        hidden = parse_widths(",".join([str(w) for w in argv['-arch']])) if "-arch" in argv.keys() \
            else parse_widths(default_arch)
        init = MlpClassifier([D_t.dim] + hidden + [D_t.K], rng=rng)
        lr = DEFAULT_LR_SCRATCH

    config = TrainConfig(
        epochs=int(argv['-epochs'][0]) if "-epochs" in argv.keys() else default_epochs,
        lr=float(argv['-lr'][0]) if "-lr" in argv.keys() else lr)

    testfile = argv['-test'][0] if "-test" in argv.keys() else TARGETTESTFILE
    metricsfile = argv['-metrics'][0] if "-metrics" in argv.keys() else None
    if metricsfile is not None and not os.path.exists(testfile):
        raise Exception('-metrics needs the labeled test file {}'.format(testfile))

    with Timer("pssl", verbose=verbose) as timer:
        model = train_pssl(init, D_t, D_pseudo, cfg, config, rng, verbose=verbose)

    outfile = argv['-out'][0] if "-out" in argv.keys() else PSSLFILE.format(method=cfg.method, seed=seed)
    model.write(outfile)
    if verbose:
        print("{} => {}".format(model, outfile))

    if os.path.exists(testfile):
        acc = accuracy(model, load_dataset(testfile))
        print("{} accuracy on {} : {:.4f}".format(cfg.method, testfile, acc))

    if metricsfile is not None:
        settings = {"ssl": cfg.to_dict(), "train": config.to_dict(), "seed": seed,
                    "init": argv['-init'][0] if "-init" in argv.keys() else init.widths}
        canonical = json.dumps(settings, sort_keys=True, separators=(',', ':'))
        record = RunRecord("pssl_" + cfg.method, seed, acc,
                           fd_pseudo_target=frechet_distance(D_pseudo.features, D_t.features),
                           seconds=timer.elapsed,
                           config_hash=hashlib.sha1(canonical.encode('utf-8')).hexdigest())
        with ResultsFile(metricsfile) as rf:
            rf.write(record)
        if verbose:
            print("{} => {}".format(record, metricsfile))

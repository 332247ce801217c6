from __future__ import print_function

import numpy as np
from pseudotrans.utils import parse_widths, Timer
from pseudotrans.numerics.mlp import load_classifier
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.synthetics.generator import load_generator
from pseudotrans.transfer.pretrain import PretrainConfig, pseudo_pretrain, PP_STRATEGIES
from pseudotrans.transfer.pcs import load_pseudo_labels
from pseudotrans.diagnostics.metrics import confidence_filter
from pseudotrans.PseudoTL.files import \
    GENERATORFILE, PRETRAINEDFILE, PSEUDOLABELFILE, SOURCECLASSIFIERFILE, TARGETTRAINFILE
from pseudotrans.defaults import \
    DEFAULT_TARGET_HIDDEN, DEFAULT_PP_STRATEGY, DEFAULT_PP_STEPS, DEFAULT_PP_BATCH, DEFAULT_PP_LR, \
    DEFAULT_PP_OFFLINE_FRACTION, DEFAULT_FILTER_THRESHOLD

# ------------------------------ defaults
default_arch = ",".join([str(w) for w in DEFAULT_TARGET_HIDDEN])
default_strategy = DEFAULT_PP_STRATEGY
default_steps = DEFAULT_PP_STEPS
default_batch = DEFAULT_PP_BATCH
default_lr = DEFAULT_PP_LR
default_threshold = DEFAULT_FILTER_THRESHOLD
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-arch", "-generator", "-strategy", "-steps", "-batch", "-lr", "-size", "-seed", "-out",
                   "-classes", "-classifier", "-target", "-threshold", "-labels", "-h", "-help"]

# ------------------------------ help messages
short_help = "--pp         pseudo pre-training of the target architecture on synthetic source batches"

long_help = """\
--pp                 pre-train the target architecture (with a source head) on batches
                     synthesized by the generator
    -arch    s       hidden widths of the target architecture, default {default_arch}
    -generator s     generator file, default {generator}
    -strategy s      one of {strategies}, default {default_strategy}
    -steps   i       number of steps, default {default_steps}
    -batch   i       batch size, default {default_batch}
    -lr      f       initial learning rate (x0.1 at 60% of the steps), default {default_lr}
    -size    i       number of samples of the offline dataset,
                     default {default_fraction:.0%} of steps x batch
    -seed    i       seed, default {default_seed}
    -out     s       output checkpoint, default {out}
    -classes i [i..] source classes for the filtered strategy,
                     computed by confidence filtering if not provided, see below
    -classifier s    source classifier file for the filtering, default {classifier}
    -target  s       labeled target data file for the filtering, default {target}
    -threshold f     filtering threshold, default {default_threshold}
    -labels  s       pseudo label file for the pcs strategy, default {labels}
    -h, -help        display the help message for this plugin
""".format(default_arch=default_arch, generator=GENERATORFILE, strategies=PP_STRATEGIES,
           default_strategy=default_strategy, default_steps=default_steps,
           default_batch=default_batch, default_lr=default_lr, default_fraction=DEFAULT_PP_OFFLINE_FRACTION,
           default_seed=default_seed,
           out=PRETRAINEDFILE.format(strategy="{strategy}", seed=0).replace("seed0", "seed{seed}"),
           classifier=SOURCECLASSIFIERFILE, target=TARGETTRAINFILE,
           default_threshold=default_threshold, labels=PSEUDOLABELFILE)

# ------------------------------ example usage
example = """\
## PP
# pre-train a 64,64 network for 2000 steps with uniform source labels

PseudoTL --pp -arch 64,64 -strategy uniform -steps 2000 -seed 0

# same with the source classes selected by confidence filtering

PseudoTL --pp -arch 64,64 -strategy filtered -threshold 0.001 -seed 0
"""


def pp(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    G_s = load_generator(argv['-generator'][0] if "-generator" in argv.keys() else GENERATORFILE)
    hidden = parse_widths(",".join([str(w) for w in argv['-arch']])) if "-arch" in argv.keys() \
        else parse_widths(default_arch)
    strategy = argv['-strategy'][0] if "-strategy" in argv.keys() else default_strategy
    seed = int(argv['-seed'][0]) if "-seed" in argv.keys() else default_seed
    outfile = argv['-out'][0] if "-out" in argv.keys() else PRETRAINEDFILE.format(strategy=strategy, seed=seed)
    config = PretrainConfig(
        steps=int(argv['-steps'][0]) if "-steps" in argv.keys() else default_steps,
        batch_size=int(argv['-batch'][0]) if "-batch" in argv.keys() else default_batch,
        lr=float(argv['-lr'][0]) if "-lr" in argv.keys() else default_lr,
        offline_size=int(argv['-size'][0]) if "-size" in argv.keys() else None)

    classes, pseudo = None, None
    if strategy == "filtered":
        if "-classes" in argv.keys():
            classes = [int(c) for c in argv['-classes']]
        else:
            C_s = load_classifier(argv['-classifier'][0] if "-classifier" in argv.keys() else SOURCECLASSIFIERFILE)
            D_t = load_dataset(argv['-target'][0] if "-target" in argv.keys() else TARGETTRAINFILE)
            threshold = float(argv['-threshold'][0]) if "-threshold" in argv.keys() else default_threshold
            classes = confidence_filter(C_s, D_t, threshold)
        if verbose:
            print("source classes : {}".format(classes))
    elif strategy == "pcs":
        pseudo = load_pseudo_labels(argv['-labels'][0] if "-labels" in argv.keys() else PSEUDOLABELFILE)

    with Timer("pp", verbose=verbose):
        model = pseudo_pretrain([G_s.dim] + hidden + [G_s.K], G_s, G_s.K, config, strategy,
                                np.random.default_rng(seed), classes=classes, pseudo=pseudo, verbose=verbose)
    model.write(outfile)
    if verbose:
        print("{} => {}".format(model, outfile))

from __future__ import print_function

import os
import json
from pseudotrans.synthetics.taskpair import TaskPairSpec, make_task_pair
from pseudotrans.harness.config import load_config
from pseudotrans.PseudoTL.files import SOURCEDATAFILE, TARGETTRAINFILE, TARGETTESTFILE, TASKSPECFILE
from pseudotrans.defaults import \
    DEFAULT_DIM, DEFAULT_SOURCE_CLASSES, DEFAULT_TARGET_CLASSES, DEFAULT_SOURCE_PER_CLASS, \
    DEFAULT_TARGET_TRAIN, DEFAULT_TARGET_TEST, DEFAULT_SIGMA_ALIGN

# ------------------------------ defaults
default_dim = DEFAULT_DIM
default_ks = DEFAULT_SOURCE_CLASSES
default_kt = DEFAULT_TARGET_CLASSES
default_nsource = DEFAULT_SOURCE_PER_CLASS
default_ntrain = DEFAULT_TARGET_TRAIN
default_ntest = DEFAULT_TARGET_TEST
default_sigma = DEFAULT_SIGMA_ALIGN
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-config", "-d", "-ks", "-kt", "-nsource", "-ntrain", "-ntest",
                   "-sigma", "-seed", "-ot", "-h", "-help"]

# ------------------------------ help messages
short_help = "--task       build a synthetic source/target task pair with disjoint label spaces"

long_help = """\
--task               build the source data, the labeled target data and the target test data
                     files written : {source}, {train}, {test}, {spec}
    -config  s       read the task settings from an experiment configuration file
                     (the options below override it)
    -d       i       feature dimension, default {default_dim}
    -ks      i       number of source classes, default {default_ks}
    -kt      i       number of target classes, default {default_kt}
    -nsource i       samples per source class, default {default_nsource}
    -ntrain  i       labeled target samples, default {default_ntrain}
    -ntest   i       target test samples, default {default_ntest}
    -sigma   f       alignment noise scale, default {default_sigma}
    -seed    i       task seed, default {default_seed}
    -ot              force overwriting the output files if exist
    -h, -help        display the help message for this plugin
""".format(source=SOURCEDATAFILE, train=TARGETTRAINFILE, test=TARGETTESTFILE, spec=TASKSPECFILE,
           default_dim=default_dim, default_ks=default_ks, default_kt=default_kt,
           default_nsource=default_nsource, default_ntrain=default_ntrain,
           default_ntest=default_ntest, default_sigma=default_sigma, default_seed=default_seed)

# ------------------------------ example usage
example = """\
## TASK
# build the default task pair with a misaligned target

PseudoTL --task -sigma 0.5 -seed 1 -ot
"""


def task(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    if "-ot" not in argv.keys():
        for filename in [SOURCEDATAFILE, TARGETTRAINFILE, TARGETTESTFILE, TASKSPECFILE]:
            if os.path.exists(filename):
                raise Exception('file {} exists already, use -ot to overwrite'.format(filename))

    spec = TaskPairSpec() if "-config" not in argv.keys() else load_config(argv['-config'][0]).task
    overrides = {"-d": ("dim", int), "-ks": ("source_classes", int), "-kt": ("target_classes", int),
                 "-nsource": ("source_per_class", int), "-ntrain": ("target_train", int),
                 "-ntest": ("target_test", int), "-sigma": ("sigma_align", float), "-seed": ("seed", int)}
    changes = {}
    for key, (field, cast) in overrides.items():
        if key in argv.keys():
            changes[field] = cast(argv[key][0])
    spec = spec.copy(**changes)

    D_s, D_t_train, D_t_test, truth = make_task_pair(spec)
    D_s.write(SOURCEDATAFILE)
    D_t_train.write(TARGETTRAINFILE)
    D_t_test.write(TARGETTESTFILE)
    with open(TASKSPECFILE, 'w') as fid:
        d = spec.to_dict()
        d['mixing'] = truth.mixing.tolist()
        json.dump(d, fid, indent=2)

    if verbose:
        print(spec)
        for filename, D in zip([SOURCEDATAFILE, TARGETTRAINFILE, TARGETTESTFILE], [D_s, D_t_train, D_t_test]):
            print("{:<40s} {}".format(filename, D))

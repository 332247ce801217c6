from __future__ import print_function

import os
import numpy as np
from pseudotrans.utils import parse_widths, Timer
from pseudotrans.numerics.mlp import MlpClassifier, load_classifier
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.transfer.training import TrainConfig, split_streams
from pseudotrans.transfer.distill import KdConfig, kd_train, finetune_teacher, KD_METHODS
from pseudotrans.diagnostics.metrics import accuracy
from pseudotrans.PseudoTL.files import SOURCECLASSIFIERFILE, TARGETTRAINFILE, TARGETTESTFILE, DISTILLFILE
from pseudotrans.defaults import \
    DEFAULT_TARGET_HIDDEN, DEFAULT_KD_METHOD, DEFAULT_KD_LAMBDA, DEFAULT_KD_TEMPERATURE, \
    DEFAULT_TARGET_EPOCHS, DEFAULT_LR_SCRATCH, DEFAULT_LR_PRETRAINED

# ------------------------------ defaults
default_arch = ",".join([str(w) for w in DEFAULT_TARGET_HIDDEN])
default_method = DEFAULT_KD_METHOD
default_temp = DEFAULT_KD_TEMPERATURE
default_lambda = DEFAULT_KD_LAMBDA
default_epochs = DEFAULT_TARGET_EPOCHS
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-teacher", "-target", "-arch", "-method", "-temp", "-lambda",
                   "-epochs", "-seed", "-out", "-test", "-h", "-help"]

# ------------------------------ help messages
short_help = "--distill    knowledge distillation baseline from the source classifier"

long_help = """\
--distill            train a target classifier with L_sup + lambda_d * L_KD
                     the teacher is fine-tuned on the target data first if its head
                     does not match the number of target classes
    -teacher s       teacher checkpoint, default {teacher}
    -target  s       labeled target data file, default {target}
    -arch    s       hidden widths of the student, default {default_arch}
    -method  s       one of {methods}, default {default_method}
    -temp    f       softmax temperature of soft_target, default {default_temp}
    -lambda  f       weight of the distillation term, default {default_lambda}
    -epochs  i       training epochs, default {default_epochs}
    -seed    i       seed, default {default_seed}
    -out     s       output checkpoint, default {out}
    -test    s       report the accuracy on this labeled data file, default {test}
    -h, -help        display the help message for this plugin
""".format(teacher=SOURCECLASSIFIERFILE, target=TARGETTRAINFILE, default_arch=default_arch,
           methods=KD_METHODS, default_method=default_method, default_temp=default_temp,
           default_lambda=default_lambda, default_epochs=default_epochs, default_seed=default_seed,
           out=DISTILLFILE.replace("{seed:d}", "{seed}"), test=TARGETTESTFILE)

# ------------------------------ example usage
example = """\
## DISTILL
# soft target distillation at temperature 4

PseudoTL --distill -method soft_target -temp 4 -lambda 1
"""


def distill(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    teacher = load_classifier(argv['-teacher'][0] if "-teacher" in argv.keys() else SOURCECLASSIFIERFILE)
    D_t = load_dataset(argv['-target'][0] if "-target" in argv.keys() else TARGETTRAINFILE)
    hidden = parse_widths(",".join([str(w) for w in argv['-arch']])) if "-arch" in argv.keys() \
        else parse_widths(default_arch)
    seed = int(argv['-seed'][0]) if "-seed" in argv.keys() else default_seed
    epochs = int(argv['-epochs'][0]) if "-epochs" in argv.keys() else default_epochs
    kd_cfg = KdConfig(
        method=argv['-method'][0] if "-method" in argv.keys() else default_method,
        lam=float(argv['-lambda'][0]) if "-lambda" in argv.keys() else default_lambda,
        temperature=float(argv['-temp'][0]) if "-temp" in argv.keys() else default_temp)

    teacher_rng, student_rng = split_streams(np.random.default_rng(seed))
    if teacher.output_dim != D_t.K:
        with Timer("teacher fine-tuning", verbose=verbose):
            teacher = finetune_teacher(teacher, D_t, TrainConfig(epochs=epochs, lr=DEFAULT_LR_PRETRAINED),
                                       teacher_rng, verbose=verbose)

    init = MlpClassifier([D_t.dim] + hidden + [D_t.K], rng=student_rng)
    with Timer("distill", verbose=verbose):
        model = kd_train(init, teacher, D_t, kd_cfg, TrainConfig(epochs=epochs, lr=DEFAULT_LR_SCRATCH),
                         student_rng, verbose=verbose)

    outfile = argv['-out'][0] if "-out" in argv.keys() else DISTILLFILE.format(method=kd_cfg.method, seed=seed)
    model.write(outfile)
    if verbose:
        print("{} => {}".format(model, outfile))

    testfile = argv['-test'][0] if "-test" in argv.keys() else TARGETTESTFILE
    if os.path.exists(testfile):
        D_test = load_dataset(testfile)
        print("teacher accuracy on {} : {:.4f}".format(testfile, accuracy(teacher, D_test)))
        print("student accuracy on {} : {:.4f}".format(testfile, accuracy(model, D_test)))

from __future__ import print_function

import numpy as np
from pseudotrans.numerics.mlp import load_classifier
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.synthetics.generator import load_generator
from pseudotrans.transfer.pcs import pseudo_conditional_sampling
from pseudotrans.transfer.labelfunctions import LABEL_FUNCTIONS
from pseudotrans.diagnostics.metrics import frechet_distance
from pseudotrans.PseudoTL.files import \
    SOURCECLASSIFIERFILE, TARGETTRAINFILE, GENERATORFILE, PSEUDODATAFILE, PSEUDOLABELFILE
from pseudotrans.defaults import DEFAULT_LABEL_FUNCTION, DEFAULT_LABEL_TEMPERATURE, DEFAULT_N_PSEUDO

# ------------------------------ defaults
default_labelfn = DEFAULT_LABEL_FUNCTION
default_tau = DEFAULT_LABEL_TEMPERATURE
default_n = DEFAULT_N_PSEUDO
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-classifier", "-target", "-generator", "-labelfn", "-tau", "-n",
                   "-seed", "-out", "-labels", "-h", "-help"]

# ------------------------------ help messages
short_help = "--pcs        pseudo conditional sampling, build the pseudo unlabeled dataset"

long_help = """\
--pcs                label the target samples with the source classifier, then sample
                     the source generator conditioned on these pseudo labels
    -classifier s    source classifier file, default {classifier}
    -target  s       labeled target data file, default {target}
    -generator s     generator file, default {generator}
    -labelfn s       output label function in {labelfns}, default {default_labelfn}
    -tau     f       temperature of temp_softmax, default {default_tau}
    -n       i       number of samples to generate, default {default_n}
    -seed    i       seed, default {default_seed}
    -out     s       pseudo dataset file, default {out}
    -labels  s       pseudo label file, default {labels}
    -h, -help        display the help message for this plugin
""".format(classifier=SOURCECLASSIFIERFILE, target=TARGETTRAINFILE, generator=GENERATORFILE,
           labelfns=LABEL_FUNCTIONS, default_labelfn=default_labelfn, default_tau=default_tau,
           default_n=default_n, default_seed=default_seed, out=PSEUDODATAFILE, labels=PSEUDOLABELFILE)

# ------------------------------ example usage
example = """\
## PCS
# generate 5000 pseudo source samples with sparsemax labels, use 4 workers

PseudoTL -w 4 --pcs -labelfn sparsemax -n 5000 -seed 3
"""


def pcs(argv, verbose, mapkwargs):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    C_s = load_classifier(argv['-classifier'][0] if "-classifier" in argv.keys() else SOURCECLASSIFIERFILE)
    D_t = load_dataset(argv['-target'][0] if "-target" in argv.keys() else TARGETTRAINFILE)
    G_s = load_generator(argv['-generator'][0] if "-generator" in argv.keys() else GENERATORFILE)
    labelfn = argv['-labelfn'][0] if "-labelfn" in argv.keys() else default_labelfn
    tau = float(argv['-tau'][0]) if "-tau" in argv.keys() else default_tau
    n = int(argv['-n'][0]) if "-n" in argv.keys() else default_n
    seed = int(argv['-seed'][0]) if "-seed" in argv.keys() else default_seed
    outfile = argv['-out'][0] if "-out" in argv.keys() else PSEUDODATAFILE
    labelfile = argv['-labels'][0] if "-labels" in argv.keys() else PSEUDOLABELFILE

    D_pseudo, Y = pseudo_conditional_sampling(C_s, G_s, D_t, n, np.random.default_rng(seed),
                                              g=labelfn, tau=tau, nworkers=mapkwargs['Nworkers'])
    D_pseudo.write(outfile)
    Y.write(labelfile)

    if verbose:
        print("{} => {}".format(D_pseudo, outfile))
        print("{} => {}".format(Y, labelfile))
        print("FD(pseudo, target) = {:.6f}".format(frechet_distance(D_pseudo.features, D_t.features)))

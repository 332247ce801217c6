from __future__ import print_function

import numpy as np
from pseudotrans.utils import parse_widths
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.synthetics.source import train_source_classifier, default_source_config
from pseudotrans.synthetics.generator import fit_source_generator, GENERATOR_MODES
from pseudotrans.diagnostics.metrics import accuracy
from pseudotrans.PseudoTL.files import SOURCEDATAFILE, SOURCECLASSIFIERFILE, GENERATORFILE
from pseudotrans.defaults import DEFAULT_SOURCE_HIDDEN, DEFAULT_GENERATOR_MODE

# ------------------------------ defaults
default_arch = ",".join([str(w) for w in DEFAULT_SOURCE_HIDDEN])
default_mode = DEFAULT_GENERATOR_MODE
default_seed = 0

# ------------------------------ autorized_keys
authorized_keys = ["-data", "-arch", "-epochs", "-lr", "-mode", "-seed", "-h", "-help"]

# ------------------------------ help messages
short_help = "--source     train the source classifier and fit the conditional generator"

long_help = """\
--source             train C_s on the source data, fit the class conditional generator G_s
                     files written : {classifier}, {generator}
    -data    s       source data file, default {data}
    -arch    s       hidden widths of the source architecture, default {default_arch}
    -epochs  i       training epochs, default {default_epochs}
    -lr      f       initial learning rate, default {default_lr}
    -mode    s       generator conditioning mode in {modes}, default {default_mode}
    -seed    i       seed, default {default_seed}
    -h, -help        display the help message for this plugin
""".format(classifier=SOURCECLASSIFIERFILE, generator=GENERATORFILE, data=SOURCEDATAFILE,
           default_arch=default_arch, default_epochs=default_source_config().epochs,
           default_lr=default_source_config().lr, modes=GENERATOR_MODES,
           default_mode=default_mode, default_seed=default_seed)

# ------------------------------ example usage
example = """\
## SOURCE
# train a 128 unit source classifier, fit the generator in mixture mode

PseudoTL --source -arch 128 -mode mixture -seed 0
"""


def source(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    D_s = load_dataset(argv['-data'][0] if "-data" in argv.keys() else SOURCEDATAFILE)
    hidden = parse_widths(",".join([str(w) for w in argv['-arch']])) if "-arch" in argv.keys() \
        else parse_widths(default_arch)
    seed = int(argv['-seed'][0]) if "-seed" in argv.keys() else default_seed
    mode = argv['-mode'][0] if "-mode" in argv.keys() else default_mode

    config = default_source_config()
    if "-epochs" in argv.keys():
        config = config.copy(epochs=int(argv['-epochs'][0]))
    if "-lr" in argv.keys():
        config = config.copy(lr=float(argv['-lr'][0]))

    C_s = train_source_classifier(D_s, [D_s.dim] + hidden + [D_s.K], np.random.default_rng(seed),
                                  config=config, verbose=verbose)
    G_s = fit_source_generator(D_s, mode=mode)
    C_s.write(SOURCECLASSIFIERFILE)
    G_s.write(GENERATORFILE)

    if verbose:
        print("{} train accuracy {:.4f} => {}".format(C_s, accuracy(C_s, D_s), SOURCECLASSIFIERFILE))
        print("{} => {}".format(G_s, GENERATORFILE))

#!/usr/bin/env python

"""
PseudoTL : transfer learning without source data reuse, through a pseudo source dataset
synthesized by a class conditional generator
This is the main program to be called from command lines with arguments,
this program will call plugins with corresponding arguments
"""
from __future__ import print_function

import sys
from pseudotrans.utils import readargv1
from pseudotrans.PseudoTL.plugins import task, source, pcs, pp, pssl, distill, fid, filter, \
    experiment, alignment, sweep, gaps

# -------------------------------------
from pseudotrans.version import __version__ as version
default_verbose = 1
default_nworkers = 1

PLUGINS = {"task": task, "source": source, "pcs": pcs, "pp": pp, "pssl": pssl, "distill": distill,
           "fid": fid, "filter": filter, "experiment": experiment, "alignment": alignment,
           "sweep": sweep, "gaps": gaps}

# -------------------------------------
# security, do not accept options that are not expected => prevent typos
authorized_keys = \
    ["-help", "-h",
     "-version", "-v",
     "-example", "-ex",
     "-w",
     "-verbose"] + \
    ["--" + name for name in PLUGINS.keys()]

# -------------------------------------
help = '''PseudoTL {version}

# ------- main options (s=string, i=int, f=float)
-version, -v          version number, quit
-help, -h   [s...]    help, provide plugin names for details, quit
-example, -ex s [s..] example usage, provide plugin names for details, quit
-w           i        number of workers, default {default_nworkers}
-verbose     i        reduce verbosity, 0/1, default {default_verbose}

# ------- plugins, for details
#         use PseudoTL -help plugin [plugin ...]
#         or PseudoTL --[plugin] -help
#         or PseudoTL -example plugin [plugin ...]
{task_help}
{source_help}
{pcs_help}
{pp_help}
{pssl_help}
{distill_help}
{fid_help}
{filter_help}
{experiment_help}
{alignment_help}
{sweep_help}
{gaps_help}
'''.format(
    version=version,
    default_nworkers=default_nworkers,
    default_verbose=default_verbose,
    **{"{}_help".format(name): plugin.short_help for name, plugin in PLUGINS.items()})


# -------------------------------------
def main(argv=None):

    argv = readargv1(argv)
    # ------------------------------------- NO ARGUMENT, NAIVE CALL
    if argv == {}:
        # no arguments
        print(help)
        return

    # ------------------------------------- READ ARGUMENTS, CHECK
    # prevent typos in arguments, keep the authorized_keys list up to date
    if len(argv['main']):
        raise Exception('unexpected arguments {} after PseudoTL'.format(argv['main']))

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    # ------------------------------------- VERSION
    if "-v" in argv.keys() or "-version" in argv.keys():
        print("version : %s" % version)
        return

    # ------------------------------------- HELP
    if "-h" in argv.keys() or "-help" in argv.keys():
        key = "-h" if "-h" in argv.keys() else "-help"
        if argv[key] == []:
            print(help)
        else:
            # print specific help for some plugins
            for plugin_name in argv[key]:
                if plugin_name not in PLUGINS.keys():
                    print("%s is not a valid plugin (long_help not found)" % plugin_name)
                    continue
                print(PLUGINS[plugin_name].long_help)
        return

    # ------------------------------------- EXAMPLES USAGE
    if "-ex" in argv.keys() or "-example" in argv.keys():
        key = "-ex" if "-ex" in argv.keys() else "-example"
        if argv[key] == []:
            raise Exception('please the name of a plugin (e.g. -ex task source pcs)')
        for plugin_name in argv[key]:
            if plugin_name not in PLUGINS.keys():
                print("%s is not a valid plugin (example not found)" % plugin_name)
                continue
            print(PLUGINS[plugin_name].example)
        return

    # ------------------------------------- MAIN OPTIONS
    mapkwargs = {"Nworkers": default_nworkers}
    verbose = bool(default_verbose)

    # ------
    if "-w" in argv.keys():
        mapkwargs["Nworkers"] = int(argv['-w'][0])

    # ------
    if "-verbose" in argv.keys():
        verbose = bool(argv['-verbose'][0])

    # ------------------------------------- PLUGINS
    # run in the order of the command line, e.g. --task then --source then --pcs
    for key in argv['_keyorder']:
        if not key.startswith('--'):
            continue
        name = key[2:]
        plugin = getattr(PLUGINS[name], name)
        if name in ["pcs", "experiment", "alignment", "sweep", "gaps"]:
            plugin(argv[key], verbose, mapkwargs)
        else:
            plugin(argv[key], verbose)


if __name__ == "__main__":
    main(sys.argv[1:])

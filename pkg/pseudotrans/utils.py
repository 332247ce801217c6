from __future__ import print_function
import time
import sys


class Timer(object):

    def __init__(self, title, verbose=True):
        self.title = title
        self.verbose = verbose
        self.elapsed = None

    def __enter__(self):
        self.start = time.time()
        return self

    def __exit__(self, *args, **kwargs):
        self.elapsed = time.time() - self.start
        if self.verbose:
            print("elapsed time %s : %fs" % (self.title, self.elapsed))


# --------------------------------------
def parse_widths(s):
    """
    "64,64" => [64, 64], also accepts a number or a list
    """
    if isinstance(s, (list, tuple)):
        return [int(w) for w in s]
    if isinstance(s, int):
        return [s]
    return [int(w) for w in str(s).split(',') if len(w.strip())]


# --------------------------------------
def isnumeric(a):
    try:
        float(a)
        return True
    except (ValueError, TypeError):
        return False


def evalifpossible(a):
    """converts numeric strings to int or float, leaves the rest untouched"""
    if not isnumeric(a):
        return a
    try:
        return int(a)
    except ValueError:
        return float(a)


# --------------------------------------
def readargv1(argv=None):
    """"read sys.argv and store results into a dictionary
    assume the argument list looks like

    -option0 1 \
    --plugin1 a 1.0 -2.0  \
        -option1 ./*json \
        -option2 1 2. kjhkjh \
    --plugin2


    => returns :
        {'main': [],
         '-option0': [1],
         '--plugin1': {'main': ['a', 1.0, -2.0],
                       '-option1': ['./task.json', './source.json'],
                       '-option2': [1, 2.0, 'kjhkjh'],
                       '_keyorder': ['-option1', '-option2']
                      }
         '--plugin2': {'main': [],
                       '_keyorder': []
                      },
         '_keyorder': ['-option0', '--plugin1', '--plugin2']
         }
    """

    # -----
    def isplugin(arg):
        return arg.startswith('--')

    def isoption(arg):
        return not isplugin(arg) \
               and arg.startswith('-') \
               and not isnumeric(arg)

    def readplugin(l, parent=None):
        """recursive function"""
        plugin = {"main": [], "_keyorder": []}
        if not len(l):
            return plugin, l

        while len(l):
            arg = l[0]

            if isplugin(arg):
                if parent is None:  # highest level
                    pluginname = arg
                    plugin[pluginname], l = readplugin(l[1:], parent=plugin)
                    plugin['_keyorder'].append(pluginname)
                else:  # already inside a plugin, just leave the current one
                    break

            elif isoption(arg):
                optionname = arg
                plugin[optionname] = []
                plugin["_keyorder"].append(optionname)
                l = l[1:]
                while len(l):
                    arg = l[0]
                    if isplugin(arg) or isoption(arg):
                        break
                    plugin[optionname].append(evalifpossible(arg))
                    l = l[1:]

            else:
                plugin['main'].append(evalifpossible(arg))
                l = l[1:]
        return plugin, l

    # -----
    if argv is None:
        argv = sys.argv[1:]

    if not len(argv):
        return {}

    D, remain = readplugin(list(argv))
    assert not len(remain)
    return D

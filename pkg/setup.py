import os
import setuptools


# ================ paths and files
version_file = os.path.join('pseudotrans', 'version.py')
packages = setuptools.find_packages(exclude=['examples', 'examples.*'])

# checks
assert os.path.isfile(version_file), "{} not found".format(version_file)


# ================ get version number from version file
# find version string by myself, do not import the package before it is installed
with open(version_file, "r") as fid:
    for line in fid:
        if line.strip('\n').strip().startswith('__version__'):
            __version__ = line.strip('\n').split('=')[-1].split()[0].strip().strip('"').strip("'")
            break
    else:
        raise Exception('could not detect __version__ affectation in {version_file}'.format(version_file=version_file))

# ================ load description
with open("README.md", "r") as fh:
    long_description = fh.read()


setuptools.setup(
    name='pseudotrans',
    version=__version__,
    packages=packages,
    license='',
    description='desk scale transfer learning through pseudo pre-training and pseudo semi supervised learning',
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=['numpy>=1.17', 'scipy'],
    extras_require={"test": ["pytest"]},
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: POSIX :: Linux"],
    scripts=['pseudotrans/bin/PseudoTL'])

import setuptools
import ringlab

with open("README.rst", "r") as fh:
    long_description = fh.read()

PACKAGES = (
    'ringlab',
)

CLASSIFIERS = [
    'Development Status :: 4 - Beta',
    'Intended Audience :: Education',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: MIT License',
    'Operating System :: OS Independent',
    'Programming Language :: Python :: 3.7',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: Implementation :: CPython',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: Software Development :: Libraries :: Python Modules',
]


setuptools.setup(
    name='ringlab',
    version=ringlab.__version__,
    author=ringlab.__author__,
    description="Exact checks of reversibility-type properties of finite rings",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    packages=PACKAGES,
    classifiers=CLASSIFIERS,
    python_requires='>=3.7',
    include_package_data=True,
    package_data={
        'ringlab': ['data/*.table', 'data/*.endo', 'data/goldens/*.json'],
    },
    install_requires=['numpy'],
    extras_require={
        'pandas': ['pandas'],
        'all': ['pandas']
    },
    entry_points={
        'console_scripts': ['ringlab=ringlab.cli:main'],
    }
)

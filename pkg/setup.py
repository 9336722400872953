from setuptools import setup, find_packages

setup(
    name='exoflex',
    version='0.1.0',
    description='Exotic flexible octahedra in the 3-sphere and their oriented volume',
    keywords='flexible polyhedra octahedron sphere bellows elliptic',
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    packages=find_packages(exclude=['examples', 'examples.*']),
    install_requires=['numpy>=1.17', 'scipy>=1.7'],
    extras_require={
        'docs': ['sphinx']
    },
    entry_points={
        'console_scripts': ['exoflex=exoflex.cli:main']
    }
)

from setuptools import find_packages, setup


def get_version(filename):
    import ast
    version = None
    with open(filename) as f:
        for line in f:
            if line.startswith('__version__'):
                version = ast.literal_eval(ast.parse(line).body[0].value)
                break
        else:
            raise ValueError('No version found in %r.' % filename)
    if version is None:
        raise ValueError(filename)
    return version


version = get_version(filename='src/sphere_dubins/__init__.py')

setup(name='sphere-dubins',
      version=version,
      description='Shortest curvature-bounded paths on the unit sphere with free final heading',
      package_dir={'': 'src'},
      packages=find_packages('src'),
      python_requires='>=3.6',
      install_requires=[
          'numpy',
          'scipy>=1.4',
          'ruamel.yaml',
          'PyContracts3',
      ],

      tests_require=[
          'pytest',
      ],

      zip_safe=False,

      include_package_data=True,

      entry_points={
          'console_scripts': [
              'sphere-dubins = sphere_dubins.cli:sphere_dubins_main',
          ]
      }
      )

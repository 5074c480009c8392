from setuptools import setup

setup(name='shiftcert',
      packages = ['shiftcert'],
      data_files=[('./cfg/', ["cfg/defaults.xml"])],
      scripts = ['cli/shiftcert.py'],
      version='0.1',
      description='Finite certificates for amenability, paradoxical subshifts and compressible flows of finitely generated groups.',
      license='GNU General Public License',
      python_requires='>=3.9',
      install_requires=['numpy', 'pandas', 'psutil', 'scipy'],
      extras_require={'test': ['pytest']},
      zip_safe=False)

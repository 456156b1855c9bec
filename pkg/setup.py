from setuptools import find_packages
from setuptools import setup

with open("requirements.txt") as f:
    content = f.readlines()
requirements = [x.strip() for x in content if "git+" not in x]

setup(name='weyl-pregeometry',
      version="0.1.0",
      description="Finite Weyl algebra toolkit and pre-geometry experiments",
      license="MIT",
      author="weyl-team",
      install_requires=requirements,
      packages=find_packages(),
      entry_points={"console_scripts": ["weyl=app.main:main"]},
      # include_package_data: to install data from MANIFEST.in
      include_package_data=True,
      zip_safe=False)

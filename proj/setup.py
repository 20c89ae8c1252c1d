from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "argvar._argvar",
    [
        "src/config.cpp",
        "src/holo.cpp",
        "src/geom.cpp",
        "src/cover.cpp",
        "src/bounds.cpp",
        "src/scenario.cpp",
        "src/report.cpp",
        "src/suite.cpp",
        "src/bindings.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

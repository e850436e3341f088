from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "schreier._core",
    sources=[
        "src/ordinal.cpp",
        "src/finset.cpp",
        "src/family.cpp",
        "src/index.cpp",
        "src/normspace.cpp",
        "src/ramsey.cpp",
        "src/dsl.cpp",
        "src/clirun.cpp",
        "src/selftest.cpp",
        "bindings/module.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

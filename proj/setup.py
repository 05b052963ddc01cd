from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "mvmrfs._core",
        sources=[
            "bindings/py_module.cpp",
            "src/dataset.cpp",
            "src/density.cpp",
            "src/criterion.cpp",
            "src/search.cpp",
            "src/evaluate.cpp",
        ],
        include_dirs=["include"],
        cxx_std=20,
    ),
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})

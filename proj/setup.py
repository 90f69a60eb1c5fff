"""Build the pybind11 extension through the project's CMake configuration.

The wheel contains the pure-python package from python/oscitools plus the
compiled oscitools._core module; everything else (CLI, tests) stays in the
CMake world.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        # self.get_ext_fullpath gives .../oscitools/_core.<abi>.so; CMake
        # drops the module into that directory via LIBRARY_OUTPUT_DIRECTORY.
        ext_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={ext_dir}",
            "-DOSCITOOLS_BUILD_TESTS=OFF",
            "-DOSCITOOLS_BUILD_PYTHON=ON",
            "-DCMAKE_BUILD_TYPE=Release",
        ]
        subprocess.run(configure, check=True)
        jobs = str(os.cpu_count() or 2)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j", jobs],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("oscitools._core")],
    cmdclass={"build_ext": CMakeBuild},
)
